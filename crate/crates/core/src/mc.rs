//! Monte Carlo estimators for the sampling bounds and the numeric inequality suite.
//!
//! Every trial draws from its own stream `(seed, trial)`, so reports are
//! reproducible and independent of evaluation order.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::density::score;
use crate::error::{Error, Result};
use crate::graph::{Color, ColoredGraph, ForbiddenMap, IdSet, Vertex};
use crate::hypergraph::RGraph;
use crate::rainbow::{per_round, uq_reach};
use crate::rng;
use crate::topo::sampled_reach_faces;

/// Outcome of a batch of independent trials.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialReport {
    pub name: String,
    pub trials: usize,
    /// Trials in which the good event held.
    pub successes: usize,
    pub failure_rate: f64,
    /// Theoretical failure bound, clamped into [0, 1].
    pub bound: f64,
    /// 3·sqrt(bound·(1 − bound)/trials) + 10⁻³.
    pub slack: f64,
    pub lambda: f64,
    pub seed: u64,
    /// Whether the instance meets the hypotheses under which `bound` is proved.
    pub hypothesis_ok: bool,
    /// Instance quantities such as μ, K and the thresholds used.
    pub meta: BTreeMap<String, f64>,
    /// Not serialized, so that reports stay byte-identical across runs.
    #[serde(skip)]
    pub wall_ms: u128,
}

impl TrialReport {
    fn new(name: &str, trials: usize, successes: usize, bound: f64, lambda: f64, seed: u64) -> Self {
        let bound = bound.clamp(0.0, 1.0);
        TrialReport {
            name: name.to_string(),
            trials,
            successes,
            failure_rate: if trials == 0 { 0.0 } else { (trials - successes) as f64 / trials as f64 },
            bound,
            slack: sigma_slack(bound, trials),
            lambda,
            seed,
            hypothesis_ok: true,
            meta: BTreeMap::new(),
            wall_ms: 0,
        }
    }

    pub fn failures(&self) -> usize {
        self.trials - self.successes
    }

    /// Empirical failure rate ≤ bound + slack.
    pub fn within_bound(&self) -> bool {
        self.failure_rate <= self.bound + self.slack
    }
}

/// Normal-approximation sampling slack used when comparing a rate to a bound.
pub fn sigma_slack(bound: f64, trials: usize) -> f64 {
    if trials == 0 {
        return 1.0;
    }
    3.0 * (bound * (1.0 - bound) / trials as f64).sqrt() + 1e-3
}

fn check_trials(trials: usize) -> Result<()> {
    if trials == 0 {
        return Err(Error::Parameter {
            name: "trials",
            value: 0.0,
            range: "[1, inf)",
        });
    }
    Ok(())
}

fn check_unit(name: &'static str, v: f64, allow_zero: bool) -> Result<()> {
    let ok = if allow_zero { (0.0..=1.0).contains(&v) } else { v > 0.0 && v <= 1.0 };
    if ok {
        Ok(())
    } else {
        Err(Error::Parameter {
            name,
            value: v,
            range: if allow_zero { "[0, 1]" } else { "(0, 1]" },
        })
    }
}

fn check_lambda(lambda: f64) -> Result<()> {
    if lambda > 1.0 {
        Ok(())
    } else {
        Err(Error::Parameter {
            name: "lambda",
            value: lambda,
            range: "(1, inf)",
        })
    }
}

/// Lower-tail bound for P(X ≤ μ/2) and, when t > 2μ, upper-tail bound for P(X ≥ t).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChernoffBounds {
    pub lower: f64,
    /// `None` when t ≤ 2μ, where the upper-tail form does not apply.
    pub upper: Option<f64>,
}

pub fn chernoff_bounds(mu: f64, t: f64) -> Result<ChernoffBounds> {
    if !(mu >= 0.0) {
        return Err(Error::Parameter {
            name: "mu",
            value: mu,
            range: "[0, inf)",
        });
    }
    Ok(ChernoffBounds {
        lower: (-mu / 8.0).exp().clamp(0.0, 1.0),
        upper: (t > 2.0 * mu).then(|| (-t / 6.0).exp().clamp(0.0, 1.0)),
    })
}

/// Empirical P(X ≤ μ/2) for X a sum of `terms` Bernoulli(μ/terms) variables,
/// against e^{−μ/8}.
pub fn chernoff_lower_check(mu: f64, terms: usize, trials: usize, seed: u64) -> Result<TrialReport> {
    check_trials(trials)?;
    if terms == 0 || !(mu >= 0.0) || mu > terms as f64 {
        return Err(Error::Parameter {
            name: "mu",
            value: mu,
            range: "[0, terms]",
        });
    }
    let start = Instant::now();
    let prob = mu / terms as f64;
    let mut successes = 0;
    for trial in 0..trials {
        let mut r = rng::stream(seed, trial as u64);
        let x = (0..terms).filter(|_| r.gen_bool(prob)).count();
        if x as f64 > mu / 2.0 {
            successes += 1;
        }
    }
    let mut rep = TrialReport::new("chernoff_lower", trials, successes, chernoff_bounds(mu, 0.0)?.lower, 0.0, seed);
    rep.meta.insert("mu".into(), mu);
    rep.meta.insert("terms".into(), terms as f64);
    rep.wall_ms = start.elapsed().as_millis();
    Ok(rep)
}

/// Per-inequality results of [`numeric_inequality_suite`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InequalityRow {
    pub name: String,
    pub checked: usize,
    /// Grid points outside the inequality's hypotheses.
    pub skipped: usize,
    pub violations: usize,
    /// Smallest (right − left) in log space over checked points.
    pub min_margin: f64,
}

impl InequalityRow {
    pub fn pass(&self) -> bool {
        self.violations == 0 && self.checked > 0
    }
}

/// Log-spaced values from `lo` to `hi` inclusive.
fn log_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    if points == 1 {
        return vec![lo];
    }
    let (a, b) = (lo.ln(), hi.ln());
    (0..points).map(|i| (a + (b - a) * i as f64 / (points - 1) as f64).exp()).collect()
}

/// The four elementary inequalities on a `points × points` log-spaced grid,
/// a ∈ [10⁻⁶, 0.999], b ∈ [10⁻³, 10⁶]. Comparisons are made between
/// logarithms, with strictness where the statement is strict:
///
/// - `exp_upper`: (1−a)^b ≤ e^{−ab} for ab < 1
/// - `exp_lower`: e^{−ab} ≤ 1 − ab/2 for ab < 1
/// - `linear_lower`: 1 − 2ab < (1−a)^b for ab < 1, a ≤ 1/2
/// - `root_pair`: (1+a)^{1/(1+a)} > 1 + a/2 and (1+a/2)^{1/(1+a)} ≥ 1 + a/4 for a ∈ (0, 1/2)
pub fn numeric_inequality_suite(points: usize) -> Vec<InequalityRow> {
    let a_grid = log_grid(1e-6, 0.999, points);
    let b_grid = log_grid(1e-3, 1e6, points);
    let mut rows: Vec<InequalityRow> = ["exp_upper", "exp_lower", "linear_lower", "root_pair"]
        .iter()
        .map(|n| InequalityRow {
            name: n.to_string(),
            checked: 0,
            skipped: 0,
            violations: 0,
            min_margin: f64::INFINITY,
        })
        .collect();
    let record = |row: &mut InequalityRow, margin: f64, strict: bool| {
        row.checked += 1;
        row.min_margin = row.min_margin.min(margin);
        if margin < 0.0 || (strict && margin == 0.0) {
            row.violations += 1;
        }
    };
    for &a in &a_grid {
        for &b in &b_grid {
            let ab = a * b;
            if ab >= 1.0 {
                for row in rows.iter_mut().take(3) {
                    row.skipped += 1;
                }
            } else {
                let lhs = b * (-a).ln_1p();
                record(&mut rows[0], -ab - lhs, false);
                record(&mut rows[1], (-ab / 2.0).ln_1p() + ab, false);
                if a <= 0.5 {
                    let left = 1.0 - 2.0 * ab;
                    // A non-positive left side holds trivially.
                    let margin = if left <= 0.0 { f64::INFINITY } else { lhs - left.ln() };
                    record(&mut rows[2], margin, true);
                } else {
                    rows[2].skipped += 1;
                }
            }
            if a < 0.5 {
                let first = a.ln_1p() / (1.0 + a) - (a / 2.0).ln_1p();
                let second = (a / 2.0).ln_1p() / (1.0 + a) - (a / 4.0).ln_1p();
                // Report the tighter of the two, keeping the first one strict.
                if first <= 0.0 {
                    record(&mut rows[3], first, true);
                } else {
                    record(&mut rows[3], first.min(second), false);
                }
            } else {
                rows[3].skipped += 1;
            }
        }
    }
    rows
}

/// Bipartite graph with classes A = 0..a and B = 0..b and an optional proper coloring.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BipartiteInstance {
    pub name: String,
    pub a: usize,
    pub b: usize,
    /// Pairs (x ∈ A, y ∈ B).
    pub edges: Vec<(usize, usize)>,
    pub colors: Option<Vec<Color>>,
}

impl BipartiteInstance {
    pub fn new(name: &str, a: usize, b: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut sorted = edges.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != edges.len() {
            return Err(Error::Invalid("duplicate bipartite edge".into()));
        }
        if let Some(&(x, y)) = edges.iter().find(|&&(x, y)| x >= a || y >= b) {
            return Err(Error::Invalid(format!("edge ({x}, {y}) outside {a} × {b}")));
        }
        Ok(BipartiteInstance {
            name: name.to_string(),
            a,
            b,
            edges: sorted,
            colors: None,
        })
    }

    pub fn complete(a: usize, b: usize) -> Self {
        let edges = (0..a).flat_map(|x| (0..b).map(move |y| (x, y))).collect();
        Self::new(&format!("complete_{a}x{b}"), a, b, edges).expect("valid")
    }

    /// `b` disjoint stars, each B vertex with `leaves` private A neighbours (K = 1).
    pub fn stars(b: usize, leaves: usize) -> Self {
        let edges = (0..b).flat_map(|y| (0..leaves).map(move |k| (y * leaves + k, y))).collect();
        Self::new(&format!("stars_{b}x{leaves}"), b * leaves, b, edges).expect("valid")
    }

    /// Each A vertex picks `k` distinct uniform B neighbours.
    pub fn random_left_regular(a: usize, b: usize, k: usize, seed: u64) -> Self {
        let mut r = rng::stream(seed, 0);
        let mut edges = Vec::with_capacity(a * k);
        for x in 0..a {
            for y in rand::seq::index::sample(&mut r, b, k.min(b)) {
                edges.push((x, y));
            }
        }
        Self::new(&format!("left_regular_{a}x{b}_k{k}"), a, b, edges).expect("valid")
    }

    /// A single A vertex adjacent to all of B plus `pendants` degree-one A vertices on B vertex 0.
    pub fn star_heavy(b: usize, pendants: usize) -> Self {
        let mut edges: Vec<(usize, usize)> = (0..b).map(|y| (0, y)).collect();
        edges.extend((1..=pendants).map(|x| (x, 0)));
        Self::new(&format!("star_heavy_{b}_{pendants}"), pendants + 1, b, edges).expect("valid")
    }

    /// Greedy proper coloring: each edge takes the least color free at both ends.
    pub fn with_greedy_coloring(mut self) -> Self {
        let mut used_a = vec![Vec::<Color>::new(); self.a];
        let mut used_b = vec![Vec::<Color>::new(); self.b];
        let colors = self
            .edges
            .iter()
            .map(|&(x, y)| {
                let c = (0..).find(|c| !used_a[x].contains(c) && !used_b[y].contains(c)).expect("unbounded");
                used_a[x].push(c);
                used_b[y].push(c);
                c
            })
            .collect();
        self.colors = Some(colors);
        self
    }

    /// K = maximum degree in A.
    pub fn max_left_degree(&self) -> usize {
        let mut deg = vec![0; self.a];
        for &(x, _) in &self.edges {
            deg[x] += 1;
        }
        deg.into_iter().max().unwrap_or(0)
    }

    fn right_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.b];
        for &(_, y) in &self.edges {
            deg[y] += 1;
        }
        deg
    }

    /// E|N(U)| for U ⊆ A sampled at rate `q`: Σ_{y∈B} 1 − (1−q)^{deg y}.
    /// With a proper coloring and colors sampled at `p_c`, pass q = p·p_c.
    pub fn expected_neighborhood(&self, q: f64) -> f64 {
        self.right_degrees().into_iter().map(|d| 1.0 - (1.0 - q).powi(d as i32)).sum()
    }

    fn color_count(&self) -> usize {
        self.colors.as_ref().map_or(0, |c| c.iter().max().map_or(0, |m| m + 1))
    }
}

/// Trials in which |N(U)| exceeds μ/(64λ·log₂(λ/p)), U ⊆ A sampled at rate p.
pub fn estimate_neighborhood_sampling(inst: &BipartiteInstance, p: f64, lambda: f64, trials: usize, seed: u64) -> Result<TrialReport> {
    check_unit("p", p, false)?;
    check_lambda(lambda)?;
    check_trials(trials)?;
    let start = Instant::now();
    let mu = inst.expected_neighborhood(p);
    let log = (lambda / p).log2();
    let k = inst.max_left_degree();
    let threshold = mu / (64.0 * lambda * log);
    let mut successes = 0;
    let mut hit = vec![usize::MAX; inst.b];
    for trial in 0..trials {
        let mut r = rng::stream(seed, trial as u64);
        let sampled: Vec<bool> = (0..inst.a).map(|_| r.gen_bool(p)).collect();
        let mut size = 0usize;
        for &(x, y) in &inst.edges {
            if sampled[x] && hit[y] != trial {
                hit[y] = trial;
                size += 1;
            }
        }
        if size as f64 > threshold {
            successes += 1;
        }
    }
    let mut rep = TrialReport::new("neighborhood_sampling", trials, successes, 2.0 * (-lambda).exp(), lambda, seed);
    rep.hypothesis_ok = (k as f64) <= mu / (32.0 * lambda * log);
    rep.meta.insert("mu".into(), mu);
    rep.meta.insert("K".into(), k as f64);
    rep.meta.insert("threshold".into(), threshold);
    rep.meta.insert("p".into(), p);
    rep.wall_ms = start.elapsed().as_millis();
    Ok(rep)
}

/// Colored variant: U ⊆ A at rate p, Q at rate p_c, and y ∈ N_Q(U) when some
/// edge xy has x ∈ U and color in Q. Success means |N_Q(U)| exceeds
/// μ/(64λ·log₂(λ/(p·p_c))); the hypothesis is K + |A| ≤ μ/(128λ·log₂(λ/(p·p_c))).
pub fn estimate_colored_sampling(
    inst: &BipartiteInstance,
    p: f64,
    p_c: f64,
    lambda: f64,
    trials: usize,
    seed: u64,
) -> Result<TrialReport> {
    check_unit("p", p, false)?;
    check_unit("p_c", p_c, false)?;
    check_lambda(lambda)?;
    check_trials(trials)?;
    let colors = inst
        .colors
        .as_ref()
        .ok_or_else(|| Error::Precondition("colored sampling needs an edge coloring".into()))?;
    let start = Instant::now();
    let q = p * p_c;
    let mu = inst.expected_neighborhood(q);
    let log = (lambda / q).log2();
    let k = inst.max_left_degree();
    let threshold = mu / (64.0 * lambda * log);
    let ncol = inst.color_count();
    let mut successes = 0;
    let mut hit = vec![usize::MAX; inst.b];
    for trial in 0..trials {
        let mut r = rng::stream(seed, trial as u64);
        let in_u: Vec<bool> = (0..inst.a).map(|_| r.gen_bool(p)).collect();
        let in_q: Vec<bool> = (0..ncol).map(|_| r.gen_bool(p_c)).collect();
        let mut size = 0usize;
        for (&(x, y), &c) in inst.edges.iter().zip(colors) {
            if in_u[x] && in_q[c] && hit[y] != trial {
                hit[y] = trial;
                size += 1;
            }
        }
        if size as f64 > threshold {
            successes += 1;
        }
    }
    let mut rep = TrialReport::new("colored_sampling", trials, successes, 2.0 * (-lambda).exp(), lambda, seed);
    rep.hypothesis_ok = (k + inst.a) as f64 <= mu / (128.0 * lambda * log);
    rep.meta.insert("mu".into(), mu);
    rep.meta.insert("K".into(), k as f64);
    rep.meta.insert("threshold".into(), threshold);
    rep.meta.insert("p".into(), p);
    rep.meta.insert("p_c".into(), p_c);
    rep.wall_ms = start.elapsed().as_millis();
    Ok(rep)
}

/// The ten instances used by the bound check: five structures, each at λ = 2 and λ = 3,
/// all with p = 1/2. Every one meets the uncolored hypothesis.
pub fn standard_instances(seed: u64) -> Vec<(BipartiteInstance, f64, f64)> {
    let structures = vec![
        BipartiteInstance::stars(400, 2),
        BipartiteInstance::stars(300, 4),
        BipartiteInstance::random_left_regular(2000, 1000, 1, seed),
        BipartiteInstance::random_left_regular(2000, 1000, 2, seed.wrapping_add(1)),
        BipartiteInstance::random_left_regular(4000, 2000, 3, seed.wrapping_add(2)),
    ];
    structures
        .into_iter()
        .flat_map(|inst| [2.0, 3.0].map(|lambda| (inst.clone(), 0.5, lambda)))
        .collect()
}

/// Sampling parameters for [`estimate_master`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MasterConfig {
    pub p: f64,
    pub p_c: f64,
    pub alpha: f64,
    pub lambda: f64,
}

/// Trials in which |N_{Q,φ}(U) ∖ B| reaches
/// |B|/4 · min{d·p·p_c·α/(64λ⁵), (n/(2|B|))^{α/(1+α)} − 1}, U ⊆ B at rate p and Q at rate p_c.
///
/// The hypotheses (d ≥ λ³/(α·p·p_c), |φ(v)| ≤ dα/32, 2λ⁶/(p·p_c) < |B| < n/2,
/// λ > 10¹⁰·ln(2/(p·p_c))) are evaluated and reported; at desk scale they fail.
pub fn estimate_master(
    g: &ColoredGraph,
    b: &[Vertex],
    phi: &ForbiddenMap,
    cfg: &MasterConfig,
    trials: usize,
    seed: u64,
) -> Result<TrialReport> {
    check_unit("p", cfg.p, false)?;
    check_unit("p_c", cfg.p_c, false)?;
    check_lambda(cfg.lambda)?;
    check_trials(trials)?;
    g.graph().check_ids(b)?;
    if !(cfg.alpha > 0.0 && cfg.alpha < 0.5) {
        return Err(Error::Parameter {
            name: "alpha",
            value: cfg.alpha,
            range: "(0, 1/2)",
        });
    }
    let start = Instant::now();
    let n = g.n();
    let d = g.graph().average_degree();
    let (p, pc, alpha, lambda) = (cfg.p, cfg.p_c, cfg.alpha, cfg.lambda);
    let bs = b.len() as f64;
    let target = bs / 4.0
        * (d * p * pc * alpha / (64.0 * lambda.powi(5))).min((n as f64 / (2.0 * bs)).powf(alpha / (1.0 + alpha)) - 1.0);
    let in_b = IdSet::from_ids(n, b.iter().copied());
    let ncol = g.color_count();
    let mut successes = 0;
    for trial in 0..trials {
        let mut r = rng::stream(seed, trial as u64);
        let u: Vec<Vertex> = b.iter().copied().filter(|_| r.gen_bool(p)).collect();
        let q = IdSet::from_ids(ncol, (0..ncol).filter(|_| r.gen_bool(pc)));
        let reached = g.restricted_neighborhood(&u, &q, phi)?;
        let outside = reached.iter().filter(|&&y| !in_b.contains(y)).count();
        if outside as f64 >= target {
            successes += 1;
        }
    }
    let mut rep = TrialReport::new("master", trials, successes, 2.0 * (-lambda).exp(), lambda, seed);
    let hyps = [
        ("hyp_degree", d >= lambda.powi(3) / (alpha * p * pc)),
        ("hyp_phi", phi.max_size() as f64 <= d * alpha / 32.0),
        ("hyp_b_size", 2.0 * lambda.powi(6) / (p * pc) < bs && bs < n as f64 / 2.0),
        ("hyp_lambda", lambda > 1e10 * (2.0 / (p * pc)).ln()),
    ];
    rep.hypothesis_ok = hyps.iter().all(|h| h.1);
    for (k, v) in hyps {
        rep.meta.insert(k.into(), if v { 1.0 } else { 0.0 });
    }
    rep.meta.insert("d".into(), d);
    rep.meta.insert("target".into(), target);
    rep.meta.insert("score".into(), score(g.graph().edge_count(), n, alpha));
    rep.wall_ms = start.elapsed().as_millis();
    Ok(rep)
}

/// Parameters for [`estimate_reach`] and [`estimate_reach_faces`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReachConfig {
    /// Vertex sample probability, 0 allowed.
    pub p: f64,
    /// Color sample probability, 0 allowed; ignored for hypergraphs.
    pub p_c: f64,
    pub tau: f64,
    pub ell: usize,
    pub lambda: f64,
}

impl ReachConfig {
    fn validate(&self) -> Result<()> {
        check_unit("p", self.p, true)?;
        check_unit("p_c", self.p_c, true)?;
        check_lambda(self.lambda)?;
        if !(self.tau > 0.0 && self.tau < 0.5) {
            return Err(Error::Parameter {
                name: "tau",
                value: self.tau,
                range: "(0, 1/2)",
            });
        }
        if self.ell == 0 {
            return Err(Error::Parameter {
                name: "ell",
                value: 0.0,
                range: "[1, inf)",
            });
        }
        Ok(())
    }
}

fn sprinkle_or_empty(universe: usize, rounds: usize, prob: f64, r: &mut rng::Rng) -> Vec<IdSet> {
    let q = per_round(prob, rounds);
    (0..rounds)
        .map(|_| {
            if q <= 0.0 {
                IdSet::empty(universe)
            } else {
                IdSet::from_ids(universe, (0..universe).filter(|_| r.gen_bool(q.min(1.0))))
            }
        })
        .collect()
}

/// Trials in which a uniformly random source reaches at least n^{1−τ} vertices
/// (itself included) by sampled rainbow paths of length ≤ ℓ. Vertices are
/// sprinkled over ℓ−1 rounds and colors over ℓ rounds.
///
/// The bound reported is ℓ·2e^{−λ}, one failure chance per level.
pub fn estimate_reach(g: &ColoredGraph, cfg: &ReachConfig, trials: usize, seed: u64) -> Result<TrialReport> {
    cfg.validate()?;
    check_trials(trials)?;
    let n = g.n();
    if n == 0 {
        return Err(Error::Precondition("reach needs a nonempty graph".into()));
    }
    let start = Instant::now();
    let target = (n as f64).powf(1.0 - cfg.tau);
    let ncol = g.color_count();
    let mut successes = 0;
    for trial in 0..trials {
        let mut r = rng::stream(seed, trial as u64);
        let v = r.gen_range(0..n);
        let u_rounds = sprinkle_or_empty(n, cfg.ell.saturating_sub(1), cfg.p, &mut r);
        let q_rounds = sprinkle_or_empty(ncol, cfg.ell, cfg.p_c, &mut r);
        let reach = uq_reach(g, v, &u_rounds, &q_rounds, cfg.ell)?;
        if reach.reached().len() as f64 >= target {
            successes += 1;
        }
    }
    let mut rep = TrialReport::new("reach", trials, successes, cfg.ell as f64 * 2.0 * (-cfg.lambda).exp(), cfg.lambda, seed);
    rep.hypothesis_ok = false;
    rep.meta.insert("target".into(), target);
    rep.meta.insert("p".into(), cfg.p);
    rep.meta.insert("p_c".into(), cfg.p_c);
    rep.meta.insert("ell".into(), cfg.ell as f64);
    rep.wall_ms = start.elapsed().as_millis();
    Ok(rep)
}

/// Hypergraph form: from a uniformly random face, at least p(G)^{1−τ} faces
/// reached by proper sampled paths of length ℓ (cumulative levels).
pub fn estimate_reach_faces(g: &RGraph, cfg: &ReachConfig, trials: usize, seed: u64) -> Result<TrialReport> {
    cfg.validate()?;
    check_trials(trials)?;
    if g.p() == 0 {
        return Err(Error::Precondition("reach needs at least one face".into()));
    }
    let start = Instant::now();
    let target = (g.p() as f64).powf(1.0 - cfg.tau);
    let steps = (cfg.ell + 1).saturating_sub(g.r());
    let mut successes = 0;
    for trial in 0..trials {
        let mut r = rng::stream(seed, trial as u64);
        let f0 = g.faces()[r.gen_range(0..g.p())].clone();
        let rounds = sprinkle_or_empty(g.n(), steps.max(1), cfg.p, &mut r);
        let reach = sampled_reach_faces(g, &f0, &rounds, cfg.ell)?;
        if reach.reached().len() as f64 >= target {
            successes += 1;
        }
    }
    let mut rep = TrialReport::new("reach_faces", trials, successes, cfg.ell as f64 * 2.0 * (-cfg.lambda).exp(), cfg.lambda, seed);
    rep.hypothesis_ok = false;
    rep.meta.insert("target".into(), target);
    rep.meta.insert("p".into(), cfg.p);
    rep.meta.insert("ell".into(), cfg.ell as f64);
    rep.wall_ms = start.elapsed().as_millis();
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::hypercube_colored;
    use crate::graph::SimpleGraph;

    #[test]
    fn chernoff_examples() {
        let b = chernoff_bounds(8.0, 0.0).unwrap();
        assert!((b.lower - (-1.0f64).exp()).abs() < 1e-12);
        assert!((b.lower - 0.3679).abs() < 1e-4);
        assert_eq!(b.upper, None);
        assert_eq!(chernoff_bounds(0.0, 1.0).unwrap().lower, 1.0);
        assert!((chernoff_bounds(2.0, 6.0).unwrap().upper.unwrap() - (-1.0f64).exp()).abs() < 1e-12);
        assert!(chernoff_bounds(-1.0, 0.0).is_err());
    }

    #[test]
    fn chernoff_fair_coins() {
        // X = sum of 100 fair coins, μ = 50: P(X ≤ 25) ≤ e^{−50/8}.
        let rep = chernoff_lower_check(50.0, 100, 100_000, 11).unwrap();
        assert!(rep.failure_rate <= (-50.0f64 / 8.0).exp());
        for mu in [4.0, 8.0, 16.0] {
            let rep = chernoff_lower_check(mu, 100, 100_000, 3).unwrap();
            assert!(rep.within_bound(), "{rep:?}");
        }
    }

    #[test]
    fn inequality_examples() {
        let (a, b) = (0.1f64, 5.0f64);
        assert!((1.0 - a).powf(b) <= (-a * b).exp() && (-a * b).exp() <= 1.0 - a * b / 2.0);
        assert!(((1.0 - a).powf(b) - 0.5905).abs() < 1e-4);
        let a = 0.4f64;
        assert!(1.4f64.powf(1.0 / 1.4) > 1.0 + a / 2.0);
        for row in numeric_inequality_suite(100) {
            assert!(row.pass(), "{row:?}");
            assert!(row.skipped > 0 || row.name == "exp_upper" || row.name == "exp_lower");
        }
    }

    #[test]
    fn neighborhood_sampling_examples() {
        let complete = BipartiteInstance::complete(30, 40);
        let rep = estimate_neighborhood_sampling(&complete, 0.5, 3.0, 2000, 1).unwrap();
        assert_eq!(rep.failure_rate, 0.0);
        let rep = estimate_neighborhood_sampling(&complete, 1.0, 3.0, 100, 1).unwrap();
        assert_eq!(rep.failure_rate, 0.0);
        let heavy = BipartiteInstance::star_heavy(50, 3);
        let rep = estimate_neighborhood_sampling(&heavy, 0.5, 3.0, 500, 1).unwrap();
        assert!(!rep.hypothesis_ok);
        assert!(estimate_neighborhood_sampling(&complete, 0.5, 1.0, 10, 1).is_err());
    }

    #[test]
    fn expected_neighborhood_matches_simulation() {
        let inst = BipartiteInstance::random_left_regular(60, 40, 2, 9);
        let mu = inst.expected_neighborhood(0.3);
        let trials = 20_000;
        let mut total = 0usize;
        for t in 0..trials {
            let mut r = rng::stream(4, t);
            let u: Vec<bool> = (0..inst.a).map(|_| r.gen_bool(0.3)).collect();
            let hit: std::collections::BTreeSet<usize> = inst.edges.iter().filter(|e| u[e.0]).map(|e| e.1).collect();
            total += hit.len();
        }
        let mean = total as f64 / trials as f64;
        assert!((mean - mu).abs() < 0.05 * mu, "{mean} vs {mu}");
    }

    #[test]
    fn standard_instances_meet_hypothesis() {
        let inst = standard_instances(5);
        assert_eq!(inst.len(), 10);
        for (i, p, lambda) in &inst {
            let rep = estimate_neighborhood_sampling(i, *p, *lambda, 200, 5).unwrap();
            assert!(rep.hypothesis_ok, "{} λ={lambda}: {:?}", i.name, rep.meta);
        }
    }

    #[test]
    fn colored_sampling_examples() {
        let inst = BipartiteInstance::random_left_regular(200, 300, 3, 2).with_greedy_coloring();
        let colored = estimate_colored_sampling(&inst, 0.5, 1.0, 2.0, 3000, 8).unwrap();
        let plain = estimate_neighborhood_sampling(&inst, 0.5, 2.0, 3000, 8).unwrap();
        assert!((colored.failure_rate - plain.failure_rate).abs() <= 3.0 * sigma_slack(0.25, 3000));
        assert_eq!(colored.meta["mu"], plain.meta["mu"]);
        let tiny = estimate_colored_sampling(&inst, 1e-3, 1e-3, 2.0, 200, 8).unwrap();
        assert!(!tiny.hypothesis_ok);
        assert!(estimate_colored_sampling(&BipartiteInstance::complete(2, 2), 0.5, 0.5, 2.0, 10, 1).is_err());
    }

    #[test]
    fn colored_sampling_under_hypothesis() {
        // |A| = K = 1300 and every B vertex has degree one: μ = |A|·K at p = p_c = 1.
        let (a, k) = (1300, 1300);
        let edges: Vec<(usize, usize)> = (0..a).flat_map(|x| (0..k).map(move |j| (x, x * k + j))).collect();
        let mut inst = BipartiteInstance::new("pendant_fans", a, a * k, edges).unwrap();
        // Colors by position within each fan: proper since B degrees are one.
        inst.colors = Some(inst.edges.iter().map(|&(_, y)| y % k).collect());
        let rep = estimate_colored_sampling(&inst, 1.0, 1.0, 3.0, 20, 1).unwrap();
        assert!(rep.hypothesis_ok, "{:?}", rep.meta);
        assert!(rep.within_bound());
    }

    #[test]
    fn master_examples() {
        let k = ColoredGraph::distinct_colors(SimpleGraph::complete(24));
        let b: Vec<usize> = (0..6).collect();
        let cfg = MasterConfig { p: 1.0, p_c: 1.0, alpha: 0.25, lambda: 1.5 };
        let rep = estimate_master(&k, &b, &ForbiddenMap::new(), &cfg, 50, 1).unwrap();
        assert_eq!(rep.failure_rate, 0.0);
        assert!(!rep.hypothesis_ok);

        let q = hypercube_colored(7).unwrap();
        let b: Vec<usize> = (0..40).collect();
        let rates: Vec<f64> = [1.01, 2.0, 3.0]
            .iter()
            .map(|&lambda| {
                let cfg = MasterConfig { p: 0.5, p_c: 0.5, alpha: 0.2, lambda };
                estimate_master(&q, &b, &ForbiddenMap::new(), &cfg, 500, 3).unwrap().failure_rate
            })
            .collect();
        assert!(rates.windows(2).all(|w| w[1] <= w[0]), "{rates:?}");
    }

    #[test]
    fn reach_examples() {
        let k = ColoredGraph::distinct_colors(SimpleGraph::complete(20));
        let full = ReachConfig { p: 1.0, p_c: 1.0, tau: 0.25, ell: 3, lambda: 2.0 };
        assert_eq!(estimate_reach(&k, &full, 50, 1).unwrap().failure_rate, 0.0);
        // With nothing sampled only the source is reached.
        let none = ReachConfig { p: 0.0, p_c: 0.0, ..full.clone() };
        let rep = estimate_reach(&k, &none, 50, 1).unwrap();
        assert_eq!(rep.failure_rate, if rep.meta["target"] <= 1.0 { 0.0 } else { 1.0 });

        let q = hypercube_colored(6).unwrap();
        let trials = 400;
        let rates: Vec<f64> = [0.2, 0.5, 0.8, 1.0]
            .iter()
            .map(|&p| {
                let cfg = ReachConfig { p, p_c: p, tau: 0.3, ell: 4, lambda: 2.0 };
                1.0 - estimate_reach(&q, &cfg, trials, 6).unwrap().failure_rate
            })
            .collect();
        let sigma = 3.0 * (0.25 / trials as f64).sqrt();
        assert!(rates.windows(2).all(|w| w[1] + sigma >= w[0]), "{rates:?}");
    }

    #[test]
    fn reach_faces_examples() {
        let k = RGraph::complete(3, 8);
        let cfg = ReachConfig { p: 1.0, p_c: 1.0, tau: 0.25, ell: 4, lambda: 2.0 };
        let rep = estimate_reach_faces(&k, &cfg, 20, 1).unwrap();
        assert_eq!(rep.failure_rate, 0.0);
    }

    #[test]
    fn reports_are_reproducible() {
        let inst = BipartiteInstance::stars(100, 2);
        let a = estimate_neighborhood_sampling(&inst, 0.5, 2.0, 300, 4).unwrap();
        let b = estimate_neighborhood_sampling(&inst, 0.5, 2.0, 300, 4).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}
