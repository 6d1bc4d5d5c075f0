//! α-maximal subgraph extraction and the expansion properties of α-maximal graphs.
//!
//! A graph is α-maximal when no subgraph beats its score `e(H)/v(H)^{1+α}`.
//! The maximizer over all subgraphs is always an induced subgraph, so both
//! extractors search over vertex subsets.

use std::cmp::Ordering;

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::error::{check_unit_open, Error, Result};
use crate::graph::{IdSet, SimpleGraph, Vertex};
use crate::rng;

/// Largest vertex count accepted by the exhaustive extractor.
pub const EXACT_CAP: usize = 24;

const REL_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityScore {
    pub alpha: f64,
    /// e(H)/v(H)^{1+α}.
    pub score: f64,
    /// The constant c with d(H) = c·v(H)^α; always `2 * score`.
    pub c: f64,
}

impl DensityScore {
    pub fn new(alpha: f64, edges: usize, vertices: usize) -> Self {
        let score = score(edges, vertices, alpha);
        DensityScore {
            alpha,
            score,
            c: 2.0 * score,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtractMode {
    Exact,
    Peel,
}

impl std::str::FromStr for ExtractMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(ExtractMode::Exact),
            "peel" => Ok(ExtractMode::Peel),
            other => Err(Error::Invalid(format!("unknown extraction mode `{other}`"))),
        }
    }
}

/// e/v^{1+α}, zero for v = 0.
pub fn score(edges: usize, vertices: usize, alpha: f64) -> f64 {
    if vertices == 0 {
        0.0
    } else {
        edges as f64 / (vertices as f64).powf(1.0 + alpha)
    }
}

/// `Greater` when `a` beats `b` by more than the relative tolerance.
fn cmp_score(a: f64, b: f64) -> Ordering {
    let tol = REL_TOL * a.abs().max(b.abs());
    if a > b + tol {
        Ordering::Greater
    } else if b > a + tol {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

/// Lexicographic comparison of two equal-size subsets given as masks.
fn mask_lex_less(a: u64, b: u64) -> bool {
    let diff = a ^ b;
    diff != 0 && a & (diff & diff.wrapping_neg()) != 0
}

fn mask_to_vec(mask: u64) -> Vec<Vertex> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

/// Exhaustive maximizer over nonempty vertex subsets of a graph given by adjacency masks.
///
/// Returns `(mask, edge count)`. Ties go to the smaller subset, then the
/// lexicographically least one.
pub(crate) fn exact_mask(adj: &[u64], alpha: f64) -> (u64, usize) {
    let n = adj.len();
    if n == 0 {
        return (0, 0);
    }
    let pow: Vec<f64> = (0..=n).map(|k| (k as f64).powf(1.0 + alpha)).collect();
    let mut best = (1u64, 0usize, 0.0f64);
    let mut mask = 0u64;
    let mut edges = 0usize;
    // Gray-code walk: step i flips the bit at the position of i's lowest set bit.
    for i in 1u64..(1u64 << n) {
        let v = i.trailing_zeros() as usize;
        let bit = 1u64 << v;
        let touching = (adj[v] & mask).count_ones() as usize;
        if mask & bit == 0 {
            mask |= bit;
            edges += touching;
        } else {
            mask &= !bit;
            edges -= touching;
        }
        let k = mask.count_ones() as usize;
        let s = edges as f64 / pow[k];
        let better = match cmp_score(s, best.2) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => {
                let bk = best.0.count_ones() as usize;
                k < bk || (k == bk && mask_lex_less(mask, best.0))
            }
        };
        if better {
            best = (mask, edges, s);
        }
    }
    (best.0, best.1)
}

/// Exact α-maximal subgraph: the vertex set maximizing e(G[S])/|S|^{1+α}.
pub fn alpha_max_subgraph_exact(g: &SimpleGraph, alpha: f64) -> Result<(Vec<Vertex>, DensityScore)> {
    check_unit_open("alpha", alpha)?;
    if g.n() > EXACT_CAP {
        return Err(Error::SizeCap {
            size: g.n(),
            cap: EXACT_CAP,
        });
    }
    if g.n() == 0 {
        return Ok((Vec::new(), DensityScore::new(alpha, 0, 0)));
    }
    let (mask, edges) = exact_mask(&g.adjacency_masks(), alpha);
    let s = mask_to_vec(mask);
    let k = s.len();
    Ok((s, DensityScore::new(alpha, edges, k)))
}

/// Components up to this size restart local search from every peeling prefix.
const RESTART_CAP: usize = 64;
/// Components up to this size also kick the local optimum by dropping vertex pairs.
const PAIR_KICK_CAP: usize = 24;
/// Components up to this size also try swap moves.
const SWAP_CAP: usize = 256;

/// Peeling heuristic followed by local search, run per connected component.
///
/// Never scores below the whole graph. A graph without edges yields the empty set.
pub fn alpha_max_subgraph_peel(g: &SimpleGraph, alpha: f64) -> Result<(Vec<Vertex>, DensityScore)> {
    check_unit_open("alpha", alpha)?;
    let n = g.n();
    if g.edge_count() == 0 {
        return Ok((Vec::new(), DensityScore::new(alpha, 0, 0)));
    }
    // A disjoint union never beats its best part, so components can be handled alone.
    let mut done = IdSet::empty(n);
    let mut best: Option<(IdSet, f64)> = None;
    for v in 0..n {
        if done.contains(v) || g.degree(v) == 0 {
            continue;
        }
        let comp = g.component(v);
        for &w in &comp {
            done.insert(w);
        }
        let (order, scores) = peel_order(g, &comp, alpha);
        let mut starts: Vec<usize> = (0..scores.len()).collect();
        starts.sort_by(|&a, &b| cmp_score(scores[b], scores[a]).then(b.cmp(&a)));
        if comp.len() > RESTART_CAP {
            starts.truncate(1);
        }
        let swaps = comp.len() <= SWAP_CAP;
        let mut seeds: Vec<IdSet> = starts
            .into_iter()
            .map(|start| {
                let mut set = IdSet::from_ids(n, comp.iter().copied());
                for &u in &order[..start] {
                    set.remove(u);
                }
                set
            })
            .collect();
        if comp.len() <= RESTART_CAP {
            // Dense pieces are often found faster growing from a closed neighbourhood or an edge.
            for &u in &comp {
                seeds.push(IdSet::from_ids(n, g.neighbors(u).iter().copied().chain([u])));
                for &w in g.neighbors(u).iter().filter(|&&w| w > u) {
                    seeds.push(IdSet::from_ids(n, [u, w]));
                    if let Some(cycle) = shortest_cycle_through(g, u, w) {
                        seeds.push(IdSet::from_ids(n, cycle));
                    }
                }
            }
        }
        let mut local: Option<(IdSet, f64)> = None;
        for set in seeds {
            let set = local_improve(g, set, alpha, swaps);
            let s = score(g.edges_within(&set), set.len(), alpha);
            if local.as_ref().is_none_or(|(_, b)| cmp_score(s, *b) == Ordering::Greater) {
                local = Some((set, s));
            }
        }
        let (mut set, mut s) = local.expect("component has a seed");
        if comp.len() <= RESTART_CAP {
            // Kick: force one vertex out of (or into) the local optimum and search
            // again, while it helps.
            'kick: loop {
                for u in comp.iter().copied() {
                    let mut trial = set.clone();
                    if trial.contains(u) {
                        trial.remove(u);
                    } else {
                        trial.insert(u);
                    }
                    let trial = local_improve(g, trial, alpha, swaps);
                    let ts = score(g.edges_within(&trial), trial.len(), alpha);
                    if cmp_score(ts, s) == Ordering::Greater {
                        (set, s) = (trial, ts);
                        continue 'kick;
                    }
                }
                if comp.len() <= PAIR_KICK_CAP {
                    let members = set.to_vec();
                    for (i, &a) in members.iter().enumerate() {
                        for &b in &members[i + 1..] {
                            let mut trial = set.clone();
                            trial.remove(a);
                            trial.remove(b);
                            if trial.is_empty() {
                                continue;
                            }
                            let trial = local_improve(g, trial, alpha, swaps);
                            let ts = score(g.edges_within(&trial), trial.len(), alpha);
                            if cmp_score(ts, s) == Ordering::Greater {
                                (set, s) = (trial, ts);
                                continue 'kick;
                            }
                        }
                    }
                }
                break;
            }
        }
        if best.as_ref().is_none_or(|(_, b)| cmp_score(s, *b) == Ordering::Greater) {
            best = Some((set, s));
        }
    }
    let (set, _) = best.expect("graph has an edge");
    let vs = set.to_vec();
    let e = g.edges_within(&set);
    Ok((vs.clone(), DensityScore::new(alpha, e, vs.len())))
}

/// Vertices of a shortest cycle through the edge {u, w}, by BFS from u avoiding that edge.
fn shortest_cycle_through(g: &SimpleGraph, u: Vertex, w: Vertex) -> Option<Vec<Vertex>> {
    let mut parent = vec![usize::MAX; g.n()];
    parent[u] = u;
    let mut queue = std::collections::VecDeque::from([u]);
    while let Some(x) = queue.pop_front() {
        for &y in g.neighbors(x) {
            if (x == u && y == w) || parent[y] != usize::MAX {
                continue;
            }
            parent[y] = x;
            if y == w {
                let mut cycle = vec![w];
                let mut z = w;
                while z != u {
                    z = parent[z];
                    cycle.push(z);
                }
                return Some(cycle);
            }
            queue.push_back(y);
        }
    }
    None
}

/// Removes minimum-degree vertices of `comp` (lowest id first). Returns the
/// removal order and the score left after each number of removals.
fn peel_order(g: &SimpleGraph, comp: &[Vertex], alpha: f64) -> (Vec<Vertex>, Vec<f64>) {
    let n = g.n();
    let inside = IdSet::from_ids(n, comp.iter().copied());
    let mut deg: Vec<usize> = (0..n)
        .map(|v| if inside.contains(v) { g.neighbors(v).iter().filter(|&&w| inside.contains(w)).count() } else { 0 })
        .collect();
    let mut alive = inside;
    let mut edges = g.edges_within(&alive);
    let k = comp.len();
    let mut order = Vec::with_capacity(k);
    let mut scores = vec![score(edges, k, alpha)];
    for step in 1..k {
        let v = comp
            .iter()
            .copied()
            .filter(|&v| alive.contains(v))
            .min_by_key(|&v| (deg[v], v))
            .expect("alive vertex");
        alive.remove(v);
        edges -= deg[v];
        for &w in g.neighbors(v) {
            if alive.contains(w) {
                deg[w] -= 1;
            }
        }
        order.push(v);
        scores.push(score(edges, k - step, alpha));
    }
    (order, scores)
}

/// Best-improvement add, remove and (optionally) swap moves until no move strictly helps.
fn local_improve(g: &SimpleGraph, mut set: IdSet, alpha: f64, swaps: bool) -> IdSet {
    let n = g.n();
    let mut inside_deg: Vec<usize> = (0..n)
        .map(|v| g.neighbors(v).iter().filter(|&&w| set.contains(w)).count())
        .collect();
    let mut k = set.len();
    let mut e = g.edges_within(&set);
    loop {
        let current = score(e, k, alpha);
        // (score, vertex leaving, vertex joining)
        let mut best: Option<(f64, Option<Vertex>, Option<Vertex>)> = None;
        let offer = |best: &mut Option<(f64, Option<Vertex>, Option<Vertex>)>, cand: f64, out, inn| {
            if cmp_score(cand, current) == Ordering::Greater
                && best.is_none_or(|(b, _, _)| cmp_score(cand, b) == Ordering::Greater)
            {
                *best = Some((cand, out, inn));
            }
        };
        for v in 0..n {
            if set.contains(v) {
                if k > 1 {
                    offer(&mut best, score(e - inside_deg[v], k - 1, alpha), Some(v), None);
                }
            } else {
                offer(&mut best, score(e + inside_deg[v], k + 1, alpha), None, Some(v));
            }
        }
        if swaps && best.is_none() {
            for u in set.iter().collect::<Vec<_>>() {
                for v in (0..n).filter(|&v| !set.contains(v)) {
                    let gained = inside_deg[v] - usize::from(g.has_edge(u, v));
                    if gained > inside_deg[u] {
                        offer(&mut best, score(e - inside_deg[u] + gained, k, alpha), Some(u), Some(v));
                    }
                }
            }
        }
        let Some((_, out, inn)) = best else { break };
        if let Some(u) = out {
            set.remove(u);
            e -= inside_deg[u];
            k -= 1;
            for &w in g.neighbors(u) {
                inside_deg[w] -= 1;
            }
        }
        if let Some(v) = inn {
            set.insert(v);
            e += inside_deg[v];
            k += 1;
            for &w in g.neighbors(v) {
                inside_deg[w] += 1;
            }
        }
    }
    set
}

pub fn alpha_max_subgraph(g: &SimpleGraph, alpha: f64, mode: ExtractMode) -> Result<(Vec<Vertex>, DensityScore)> {
    match mode {
        ExtractMode::Exact => alpha_max_subgraph_exact(g, alpha),
        ExtractMode::Peel => alpha_max_subgraph_peel(g, alpha),
    }
}

/// Exact when the graph is small enough, peeling otherwise.
pub fn alpha_max_subgraph_auto(g: &SimpleGraph, alpha: f64) -> Result<(Vec<Vertex>, DensityScore)> {
    if g.n() <= 16 {
        alpha_max_subgraph_exact(g, alpha)
    } else {
        alpha_max_subgraph_peel(g, alpha)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyMode {
    Exact,
    Sampled { samples: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum MaximalityVerdict {
    Maximal,
    Counterexample { subset: Vec<Vertex>, score: f64, host_score: f64 },
}

impl MaximalityVerdict {
    pub fn is_maximal(&self) -> bool {
        matches!(self, MaximalityVerdict::Maximal)
    }
}

/// Checks that no vertex subset of `g` scores above `g` itself.
///
/// Reports the best-scoring violator among the subsets examined.
pub fn verify_alpha_maximal(g: &SimpleGraph, alpha: f64, mode: VerifyMode) -> Result<MaximalityVerdict> {
    check_unit_open("alpha", alpha)?;
    let n = g.n();
    let host = score(g.edge_count(), n, alpha);
    if g.edge_count() == 0 {
        return Ok(MaximalityVerdict::Maximal);
    }
    let (subset, s) = match mode {
        VerifyMode::Exact => {
            if n > EXACT_CAP {
                return Err(Error::SizeCap { size: n, cap: EXACT_CAP });
            }
            let (mask, e) = exact_mask(&g.adjacency_masks(), alpha);
            (mask_to_vec(mask), score(e, mask.count_ones() as usize, alpha))
        }
        VerifyMode::Sampled { samples, seed } => {
            let mut rng = rng::stream(seed, 0);
            let mut best: (Vec<Vertex>, f64) = (Vec::new(), -1.0);
            let mut consider = |set: IdSet| {
                let k = set.len();
                if k == 0 {
                    return;
                }
                let s = score(g.edges_within(&set), k, alpha);
                if cmp_score(s, best.1) == Ordering::Greater {
                    best = (set.to_vec(), s);
                }
            };
            for v in 0..n {
                let mut set = IdSet::full(n);
                set.remove(v);
                consider(set);
            }
            for _ in 0..samples {
                let keep: f64 = rng.gen_range(0.05..1.0);
                consider(IdSet::from_ids(n, (0..n).filter(|_| rng.gen_bool(keep))));
            }
            best
        }
    };
    if cmp_score(s, host) == Ordering::Greater {
        Ok(MaximalityVerdict::Counterexample {
            subset,
            score: s,
            host_score: host,
        })
    } else {
        Ok(MaximalityVerdict::Maximal)
    }
}

/// Outcome of evaluating the edge- and vertex-expansion inequalities for one set X.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExpansionReport {
    pub x_size: usize,
    pub y_size: usize,
    pub c: f64,
    /// e(X, N(X)).
    pub boundary_edges: usize,
    pub edge_bound: f64,
    pub edge_bound_ok: bool,
    pub edge_slack: f64,
    /// |N(X)|.
    pub neighborhood_size: usize,
    pub vertex_bound: f64,
    pub vertex_bound_ok: bool,
    pub vertex_slack: f64,
}

/// Lower bounds on e(X, N(X)) and |N(X)| guaranteed for α-maximal graphs.
///
/// Returns `(edge_bound, vertex_bound)`; the vertex bound is strict.
pub fn expansion_bounds(n: usize, edges: usize, alpha: f64, x: usize) -> (f64, f64) {
    let y = (n - x) as f64;
    let xf = x as f64;
    let c = 2.0 * score(edges, n, alpha);
    let na = (n as f64).powf(alpha);
    let edge = c / 4.0 * na * xf * (1.0 + alpha - (xf / y).powf(alpha));
    let vertex = xf * ((1.0 + alpha / 2.0) * (y / xf).powf(alpha / (1.0 + alpha)) - 1.0);
    (edge, vertex)
}

/// Evaluates the edge and vertex expansion inequalities for `X` with `Y = V ∖ X`.
pub fn check_expansion_bounds(g: &SimpleGraph, alpha: f64, xs: &[Vertex]) -> Result<ExpansionReport> {
    check_unit_open("alpha", alpha)?;
    g.check_ids(xs)?;
    let n = g.n();
    let x = IdSet::from_ids(n, xs.iter().copied());
    let k = x.len();
    if k == 0 || 2 * k > n {
        return Err(Error::Precondition(format!(
            "expansion bounds need 0 < |X| <= n/2, got |X| = {k}, n = {n}"
        )));
    }
    let nx = g.neighborhood(&x.to_vec())?;
    let nset = IdSet::from_ids(n, nx.iter().copied());
    let boundary = g.edges_between(&x, &nset);
    let (edge_bound, vertex_bound) = expansion_bounds(n, g.edge_count(), alpha, k);
    Ok(ExpansionReport {
        x_size: k,
        y_size: n - k,
        c: 2.0 * score(g.edge_count(), n, alpha),
        boundary_edges: boundary,
        edge_bound,
        edge_bound_ok: boundary as f64 + 1e-9 >= edge_bound,
        edge_slack: boundary as f64 - edge_bound,
        neighborhood_size: nx.len(),
        vertex_bound,
        vertex_bound_ok: nx.len() as f64 + 1e-9 > vertex_bound,
        vertex_slack: nx.len() as f64 - vertex_bound,
    })
}

/// Every property violation of an α-maximal graph found by exhaustive checking.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct MaximalPropertyReport {
    pub violations: Vec<String>,
    pub sets_checked: usize,
}

impl MaximalPropertyReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks density c ≥ 1/2, min degree ≥ d/2 and both expansion inequalities for
/// every X with 0 < |X| ≤ n/2. Needs `n <= 24`.
pub fn check_maximal_properties(g: &SimpleGraph, alpha: f64) -> Result<MaximalPropertyReport> {
    check_unit_open("alpha", alpha)?;
    let n = g.n();
    if n > EXACT_CAP {
        return Err(Error::SizeCap { size: n, cap: EXACT_CAP });
    }
    let mut report = MaximalPropertyReport::default();
    let e = g.edge_count();
    if e > 0 {
        let c = 2.0 * score(e, n, alpha);
        if c + 1e-12 < 0.5 {
            report.violations.push(format!("density constant c = {c} below 1/2"));
        }
    }
    let d = g.average_degree();
    if (g.min_degree() as f64) + 1e-9 < d / 2.0 {
        report
            .violations
            .push(format!("min degree {} below d/2 = {}", g.min_degree(), d / 2.0));
    }
    let adj = g.adjacency_masks();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let bounds: Vec<(f64, f64)> = (0..=n / 2)
        .map(|k| if k == 0 { (0.0, 0.0) } else { expansion_bounds(n, e, alpha, k) })
        .collect();
    for mask in 1..=full {
        let k = mask.count_ones() as usize;
        if 2 * k > n {
            continue;
        }
        report.sets_checked += 1;
        let mut nb = 0u64;
        let mut m = mask;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            nb |= adj[v];
            m &= m - 1;
        }
        nb &= !mask;
        let mut boundary = 0usize;
        let mut m = mask;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            boundary += (adj[v] & nb).count_ones() as usize;
            m &= m - 1;
        }
        let (eb, vb) = bounds[k];
        if (boundary as f64) + 1e-9 < eb {
            report.violations.push(format!(
                "edge expansion fails for X = {:?}: e(X,N(X)) = {boundary} < {eb}",
                mask_to_vec(mask)
            ));
        }
        if (nb.count_ones() as f64) + 1e-9 <= vb {
            report.violations.push(format!(
                "vertex expansion fails for X = {:?}: |N(X)| = {} <= {vb}",
                mask_to_vec(mask),
                nb.count_ones()
            ));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Independent oracle: scores every subset through induced_subgraph.
    fn brute_force_best(g: &SimpleGraph, alpha: f64) -> f64 {
        let n = g.n();
        let mut best = 0.0f64;
        for mask in 1u32..(1 << n) {
            let s: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            let (h, _) = g.induced_subgraph(&s).unwrap();
            best = best.max(score(h.edge_count(), h.n(), alpha));
        }
        best
    }

    fn k5_plus(extra: &[(usize, usize)], n: usize) -> SimpleGraph {
        let mut e: Vec<_> = SimpleGraph::complete(5).edges().to_vec();
        e.extend_from_slice(extra);
        SimpleGraph::new(n, e).unwrap()
    }

    #[test]
    fn exact_k4() {
        let (s, sc) = alpha_max_subgraph_exact(&SimpleGraph::complete(4), 0.5).unwrap();
        assert_eq!(s, vec![0, 1, 2, 3]);
        assert!((sc.score - 0.75).abs() < 1e-12);
        assert!((sc.c - 1.5).abs() < 1e-12);
    }

    #[test]
    fn exact_single_edge() {
        let g = SimpleGraph::new(2, [(0, 1)]).unwrap();
        for alpha in [0.1, 0.5, 0.9] {
            let (s, sc) = alpha_max_subgraph_exact(&g, alpha).unwrap();
            assert_eq!(s, vec![0, 1]);
            assert!((sc.score - 1.0 / 2f64.powf(1.0 + alpha)).abs() < 1e-12);
        }
    }

    #[test]
    fn exact_picks_k5_block() {
        let g = SimpleGraph::complete(5).disjoint_union(&SimpleGraph::path(3));
        let (s, _) = alpha_max_subgraph_exact(&g, 0.3).unwrap();
        assert_eq!(s, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn exact_cap_and_alpha_errors() {
        let g = SimpleGraph::empty(25);
        assert!(matches!(alpha_max_subgraph_exact(&g, 0.5), Err(Error::SizeCap { .. })));
        assert!(matches!(
            alpha_max_subgraph_exact(&SimpleGraph::complete(3), 1.0),
            Err(Error::Parameter { .. })
        ));
    }

    #[test]
    fn tie_break_prefers_small_then_lex() {
        // Two disjoint edges: each edge alone beats the union for any α > 0;
        // the lexicographically least one wins.
        let g = SimpleGraph::new(4, [(2, 3), (0, 1)]).unwrap();
        let (s, _) = alpha_max_subgraph_exact(&g, 0.3).unwrap();
        assert_eq!(s, vec![0, 1]);
        let (s, sc) = alpha_max_subgraph_exact(&SimpleGraph::empty(3), 0.3).unwrap();
        assert_eq!((s, sc.score), (vec![0], 0.0));
    }

    #[test]
    fn peel_examples() {
        let g = k5_plus(&[(4, 5)], 6);
        let (s, _) = alpha_max_subgraph_peel(&g, 0.5).unwrap();
        assert_eq!(s, vec![0, 1, 2, 3, 4]);
        let c8 = SimpleGraph::cycle(8);
        let (_, sc) = alpha_max_subgraph_peel(&c8, 0.5).unwrap();
        assert!(sc.score >= score(8, 8, 0.5) - 1e-12);
        // A 5-cycle and a 6-cycle joined by an edge: the shorter cycle wins at α = 1/2.
        let mut edges: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        edges.extend((0..6).map(|i| (5 + i, 5 + (i + 1) % 6)));
        edges.push((0, 5));
        let g = SimpleGraph::new(11, edges).unwrap();
        let (s, sc) = alpha_max_subgraph_peel(&g, 0.5).unwrap();
        assert_eq!(s, vec![0, 1, 2, 3, 4]);
        assert!((sc.score - alpha_max_subgraph_exact(&g, 0.5).unwrap().1.score).abs() < 1e-12);
        let (s, sc) = alpha_max_subgraph_peel(&SimpleGraph::empty(4), 0.5).unwrap();
        assert!(s.is_empty());
        assert_eq!(sc.score, 0.0);
    }

    #[test]
    fn verify_examples() {
        let k4 = SimpleGraph::complete(4);
        let (s, _) = alpha_max_subgraph_exact(&k4, 0.5).unwrap();
        let (h, _) = k4.induced_subgraph(&s).unwrap();
        assert!(verify_alpha_maximal(&h, 0.5, VerifyMode::Exact).unwrap().is_maximal());
        let g = SimpleGraph::complete(5).disjoint_union(&SimpleGraph::path(2));
        match verify_alpha_maximal(&g, 0.3, VerifyMode::Exact).unwrap() {
            MaximalityVerdict::Counterexample { subset, .. } => assert_eq!(subset, vec![0, 1, 2, 3, 4]),
            other => panic!("expected counterexample, got {other:?}"),
        }
        let sampled = verify_alpha_maximal(&g, 0.3, VerifyMode::Sampled { samples: 50, seed: 1 }).unwrap();
        assert!(!sampled.is_maximal());
        assert!(verify_alpha_maximal(&SimpleGraph::empty(3), 0.3, VerifyMode::Exact)
            .unwrap()
            .is_maximal());
    }

    #[test]
    fn expansion_examples() {
        let k4 = SimpleGraph::complete(4);
        for x in [vec![0], vec![1], vec![0, 1], vec![2, 3], vec![0, 3]] {
            let r = check_expansion_bounds(&k4, 0.5, &x).unwrap();
            assert!(r.edge_bound_ok && r.vertex_bound_ok, "{r:?}");
        }
        assert!(matches!(
            check_expansion_bounds(&k4, 0.5, &[0, 1, 2]),
            Err(Error::Precondition(_))
        ));
        assert!(check_maximal_properties(&k4, 0.5).unwrap().ok());
    }

    #[test]
    fn non_maximal_graph_is_reported_not_assumed() {
        // K_5 padded with isolated vertices breaks the min-degree property.
        let g = SimpleGraph::complete(5).disjoint_union(&SimpleGraph::empty(5));
        let report = check_maximal_properties(&g, 0.1).unwrap();
        assert!(!report.ok());
    }

    fn small_graph() -> impl Strategy<Value = SimpleGraph> {
        (1usize..=9).prop_flat_map(|n| {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            let m = pairs.len();
            proptest::collection::vec(any::<bool>(), m).prop_map(move |keep| {
                let e = pairs.iter().zip(&keep).filter(|(_, k)| **k).map(|(p, _)| *p);
                SimpleGraph::new(n, e).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn exact_matches_brute_force(g in small_graph(), ai in 0usize..3) {
            let alpha = [0.1, 0.25, 0.5][ai];
            let (_, sc) = alpha_max_subgraph_exact(&g, alpha).unwrap();
            prop_assert!((sc.score - brute_force_best(&g, alpha)).abs() < 1e-12);
        }

        #[test]
        fn extracted_graph_has_maximal_properties(g in small_graph(), ai in 0usize..3) {
            let alpha = [0.1, 0.25, 0.5][ai];
            let (s, sc) = alpha_max_subgraph_exact(&g, alpha).unwrap();
            let (h, _) = g.induced_subgraph(&s).unwrap();
            prop_assert!(verify_alpha_maximal(&h, alpha, VerifyMode::Exact).unwrap().is_maximal());
            let report = check_maximal_properties(&h, alpha).unwrap();
            prop_assert!(report.ok(), "{:?}", report.violations);
            // Dense host ⇒ dense α-maximal part.
            let n = g.n() as f64;
            let c_host = g.average_degree() / n.powf(alpha);
            prop_assert!(h.average_degree() + 1e-9 >= c_host);
            if g.edge_count() > 0 {
                prop_assert!(sc.c > 0.5);
            }
        }

        #[test]
        fn peel_never_beats_exact_and_never_loses_to_host(g in small_graph(), ai in 0usize..3) {
            let alpha = [0.1, 0.25, 0.5][ai];
            let (_, exact) = alpha_max_subgraph_exact(&g, alpha).unwrap();
            let (_, peel) = alpha_max_subgraph_peel(&g, alpha).unwrap();
            prop_assert!(peel.score <= exact.score + 1e-12);
            prop_assert!(peel.score + 1e-12 >= score(g.edge_count(), g.n(), alpha));
        }
    }
}
