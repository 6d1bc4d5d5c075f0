//! The primary acceptance criteria and the Monte Carlo trend report.
//!
//! Every criterion returns one [`CriterionResult`]; `robsub report
//! acceptance-primary` writes them as CSV and the `acceptance` test target
//! asserts on them.

use std::collections::BTreeSet;
use std::path::Path;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::Rng;
use robsub_core::constructions::{embed_cycle_in_hypercube, hypercube_colored, random_graph, random_rgraph, random_short_cycle_free_3graph};
use robsub_core::density::{
    alpha_max_subgraph_exact, alpha_max_subgraph_peel, check_maximal_properties, verify_alpha_maximal, VerifyMode,
};
use robsub_core::hypergraph::{alpha_max_rgraph, is_alpha_maximal_rgraph, vertex_face_degree_check, verify_hypmax};
use robsub_core::io::{self, FORMAT_VERSION};
use robsub_core::mc::{chernoff_lower_check, estimate_neighborhood_sampling, numeric_inequality_suite, standard_instances, BipartiteInstance};
use robsub_core::rainbow::{
    find_one_subdivision, find_rainbow_cycle, find_rainbow_cycle_exact, validate_subdivision_simple, FinderConfig,
    SearchOutcome,
};
use robsub_core::topo::{
    classify_surface, euler_characteristic, face_cycle_pipeline, find_face_cycle_exact, is_three_partite,
    path_between_face_set, split_cycle, PipelineConfig,
};
use robsub_core::{rng, ColoredGraph, ExtractMode, FaceCycleCert, FacePathCert, FaceSet, FaceWalk, RGraph, SimpleGraph, Surface};
use serde::Serialize;

use crate::artifact::McRow;
use crate::CliError;

/// Violation messages kept per criterion.
const KEEP: usize = 5;

/// One acceptance criterion's verdict. CSV columns are fixed and versioned by `format_version`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriterionResult {
    pub format_version: u32,
    pub id: String,
    pub name: String,
    pub pass: bool,
    pub checked: usize,
    pub violations: usize,
    /// The first few violations, each prefixed by the invariant it breaks.
    pub detail: String,
    #[serde(skip)]
    pub wall_ms: u128,
}

impl CriterionResult {
    /// `C4 PASS cycle topology: 60 checked, 0 violations (12 ms)`.
    pub fn line(&self) -> String {
        let mut s = format!(
            "{} {} {}: {} checked, {} violations ({} ms)",
            self.id,
            if self.pass { "PASS" } else { "FAIL" },
            self.name,
            self.checked,
            self.violations,
            self.wall_ms
        );
        if !self.detail.is_empty() {
            s.push_str(" | ");
            s.push_str(&self.detail);
        }
        s
    }
}

#[derive(Default)]
struct Tally {
    checked: usize,
    violations: usize,
    notes: Vec<String>,
    /// Remarks that are not violations, such as vacuous cases.
    info: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations += 1;
            if self.notes.len() < KEEP {
                self.notes.push(msg());
            }
        }
    }

    fn finish(self, id: &str, name: &str, start: Instant) -> CriterionResult {
        let mut parts = self.notes;
        parts.extend(self.info);
        CriterionResult {
            format_version: FORMAT_VERSION,
            id: id.to_string(),
            name: name.to_string(),
            pass: self.violations == 0 && self.checked > 0,
            checked: self.checked,
            violations: self.violations,
            detail: parts.join("; "),
            wall_ms: start.elapsed().as_millis(),
        }
    }
}

/// Runs CLI arguments (without the program name) and returns the exit code.
pub type Runner = dyn Fn(&[String]) -> Result<u8, String>;

/// Runs the CLI inside this process.
pub fn in_process_runner(args: &[String]) -> Result<u8, String> {
    use clap::Parser;
    let cli = crate::Cli::try_parse_from(std::iter::once("robsub".to_string()).chain(args.iter().cloned()))
        .map_err(|e| e.to_string())?;
    Ok(match crate::run(cli) {
        Ok(s) => s.code(),
        Err(e) => e.code(),
    })
}

/// All ten primary criteria in order.
pub fn acceptance_primary(seed: u64, runner: &Runner) -> Vec<CriterionResult> {
    vec![
        maximal_graphs(),
        maximal_rgraphs(seed),
        rainbow_free_hypercubes(seed),
        cycle_topology(seed),
        face_degrees(seed),
        face_set_paths(seed),
        monte_carlo(seed),
        constructions(seed),
        oracles(seed),
        determinism(seed, runner),
    ]
}

const GRAPH_ALPHAS: [f64; 3] = [0.1, 0.25, 0.5];

/// C1: the exact extractor's output on every labeled graph with at most 7
/// vertices is α-maximal and has the density, degree and expansion properties.
pub fn maximal_graphs() -> CriterionResult {
    let start = Instant::now();
    let mut t = Tally::default();
    for n in 1..=7usize {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        for mask in 0u64..(1u64 << pairs.len()) {
            let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e);
            let g = SimpleGraph::new(n, edges).expect("valid edges");
            for alpha in GRAPH_ALPHAS {
                let verdict: robsub_core::Result<_> = (|| {
                    let (s, _) = alpha_max_subgraph_exact(&g, alpha)?;
                    let (h, _) = g.induced_subgraph(&s)?;
                    let props = check_maximal_properties(&h, alpha)?;
                    let maximal = verify_alpha_maximal(&h, alpha, VerifyMode::Exact)?.is_maximal();
                    Ok((props, maximal))
                })();
                match verdict {
                    Ok((props, maximal)) => t.check(props.ok() && maximal, || {
                        let why = props.violations.first().cloned().unwrap_or_else(|| "output not α-maximal".into());
                        format!("maximal properties: n = {n}, edge mask {mask:#x}, α = {alpha}: {why}")
                    }),
                    Err(e) => t.check(false, || format!("maximal properties: n = {n}, edge mask {mask:#x}: {e}")),
                }
            }
        }
    }
    t.finish("C1", "alpha-maximal graph properties", start)
}

/// Uniformly random 3-graph on `n` vertices with `e` distinct edges.
fn random_3graph_with_edges(n: usize, e: usize, r: &mut rng::Rng) -> RGraph {
    let triples: Vec<Vec<usize>> = (0..n)
        .flat_map(|a| (a + 1..n).flat_map(move |b| (b + 1..n).map(move |c| vec![a, b, c])))
        .collect();
    let chosen: Vec<Vec<usize>> = triples.choose_multiple(r, e.min(triples.len())).cloned().collect();
    RGraph::new(3, n, chosen).expect("distinct triples")
}

/// C2: the exact r-graph extractor's output on 200 random 3-graphs with at
/// most 12 edges is α-maximal and has the density, face-degree and expansion properties.
pub fn maximal_rgraphs(seed: u64) -> CriterionResult {
    let start = Instant::now();
    let mut t = Tally::default();
    let mut r = rng::stream(seed, 2);
    for i in 0..200 {
        let n = r.gen_range(4..=8);
        let e = r.gen_range(1..=12);
        let g = random_3graph_with_edges(n, e, &mut r);
        for alpha in [0.1, 0.25, 0.4] {
            let verdict: robsub_core::Result<_> = (|| {
                let (ids, _) = alpha_max_rgraph(&g, alpha, ExtractMode::Exact)?;
                let h = g.sub_by_edges(&ids);
                let rep = verify_hypmax(&h, alpha, seed)?;
                let maximal = is_alpha_maximal_rgraph(&h, alpha)?;
                Ok((rep, maximal))
            })();
            match verdict {
                Ok((rep, maximal)) => t.check(rep.ok() && maximal, || {
                    let why = rep.violations.first().cloned().unwrap_or_else(|| "output not α-maximal".into());
                    format!("r-graph maximal properties: graph {i}, α = {alpha}: {why}")
                }),
                Err(err) => t.check(false, || format!("r-graph maximal properties: graph {i}: {err}")),
            }
        }
    }
    t.finish("C2", "alpha-maximal r-graph properties", start)
}

/// C3: coordinate-colored Q_2, Q_3, Q_4 have no rainbow cycle, according to
/// both the exact search and the heuristic finder over 32 retries.
pub fn rainbow_free_hypercubes(seed: u64) -> CriterionResult {
    let start = Instant::now();
    let mut t = Tally::default();
    for m in 2..=4 {
        let q = hypercube_colored(m).expect("m in range");
        let exact = find_rainbow_cycle_exact(&q, q.n(), 100_000_000);
        t.check(exact == SearchOutcome::NoneExists, || format!("rainbow-free hypercube: exact search on Q_{m} gave {exact:?}"));
        let cfg = FinderConfig {
            retries: 32,
            ..FinderConfig::with_seed(seed)
        };
        match find_rainbow_cycle(&q, &cfg) {
            Ok(found) => t.check(found.is_none(), || format!("rainbow-free hypercube: heuristic reported {found:?} in Q_{m}")),
            Err(e) => t.check(false, || format!("rainbow-free hypercube: heuristic on Q_{m} failed: {e}")),
        }
    }
    t.finish("C3", "rainbow-free hypercubes", start)
}

/// Renames the vertices of a cycle by an injection into 0..universe.
fn relabel_cycle(c: &FaceCycleCert, universe: usize, r: &mut rng::Rng) -> FaceCycleCert {
    let verts: Vec<usize> = c.walk.vertex_set().into_iter().collect();
    let max = verts.iter().max().map_or(0, |m| m + 1);
    let targets: Vec<usize> = rand::seq::index::sample(r, universe.max(max), max).into_vec();
    let faces = c.walk.faces().iter().map(|f| f.iter().map(|&v| targets[v]).collect()).collect();
    FaceCycleCert::new(FaceWalk::new(c.walk.r(), faces).expect("relabeling keeps the walk")).expect("relabeling keeps the cycle")
}

/// Valid 3-uniform cycles found by the exact finder in small random 3-graphs,
/// spread over lengths 5..=8 and relabeled at random.
pub fn random_cycles(count: usize, seed: u64) -> Vec<FaceCycleCert> {
    let mut r = rng::stream(seed, 4);
    let mut out = Vec::with_capacity(count);
    let mut attempt = 0u64;
    while out.len() < count {
        let ell = 5 + out.len() % 4;
        let g = random_rgraph(3, ell, r.gen_range(0.4..0.8), seed.wrapping_add(attempt)).expect("valid probability");
        attempt += 1;
        if let SearchOutcome::Found(c) = find_face_cycle_exact(&g, ell, 5_000_000) {
            out.push(relabel_cycle(&c, 3 * ell, &mut r));
        }
    }
    out
}

fn tight_cycles() -> Vec<FaceCycleCert> {
    (5..=14)
        .map(|len| FaceCycleCert::new(FaceWalk::tight_cycle(3, len).expect("valid length")).expect("tight cycle"))
        .collect()
}

/// C4: every generated cycle has Euler characteristic 0, splits into two
/// proper internally disjoint paths, and, when 3-partite, has the surface
/// type its length parity forces.
pub fn cycle_topology(seed: u64) -> CriterionResult {
    let start = Instant::now();
    let mut t = Tally::default();
    let mut cycles: Vec<(String, FaceCycleCert)> =
        tight_cycles().into_iter().map(|c| (format!("tight cycle of length {}", c.len()), c)).collect();
    cycles.extend(random_cycles(50, seed).into_iter().enumerate().map(|(i, c)| (format!("random cycle {i} (length {})", c.len()), c)));
    let mut partite = 0;
    for (name, c) in &cycles {
        let chi = euler_characteristic(3, &c.walk.edges());
        t.check(chi == Ok(0), || format!("Euler characteristic: {name} has {chi:?}"));
        match split_cycle(c) {
            Ok((a, b)) => {
                let ends_match = BTreeSet::from([a.start(), a.end()]) == BTreeSet::from([b.start(), b.end()]);
                let disjoint = a.internal().is_disjoint(&b.internal());
                let total = a.walk.len() + b.walk.len() == c.len();
                t.check(a.proper && b.proper && ends_match && disjoint && total, || {
                    format!("cycle split: {name} gave paths that are not proper, internally disjoint halves")
                });
            }
            Err(e) => t.check(false, || format!("cycle split: {name}: {e}")),
        }
        let surface = classify_surface(c);
        if is_three_partite(&c.walk.edges()).is_some() {
            partite += 1;
            let want = Surface::by_parity(c.len());
            t.check(surface.as_ref() == Ok(&want), || format!("surface parity: {name} classified {surface:?}, expected {want:?}"));
        } else {
            t.check(surface.is_ok(), || format!("surface classification: {name}: {surface:?}"));
        }
    }
    t.info.push(format!("{} cycles, {partite} 3-partite", cycles.len()));
    t.finish("C4", "cycle topology", start)
}

/// C5: the cleaned subhypergraph of 200 random r-graphs has minimum face
/// degree at least d(G)/r, and the vertex face-degree bound holds.
pub fn face_degrees(seed: u64) -> CriterionResult {
    let start = Instant::now();
    let mut t = Tally::default();
    let mut r = rng::stream(seed, 5);
    let mut i = 0;
    while i < 200 {
        let uniformity = 3 + i % 2;
        let n = r.gen_range(uniformity + 2..=uniformity + 7);
        let p = r.gen_range(0.2..0.8);
        let g = random_rgraph(uniformity, n, p, r.gen()).expect("valid probability");
        if g.e() == 0 {
            continue;
        }
        i += 1;
        let h = match g.mindeg_subhypergraph() {
            Ok(h) => h,
            Err(e) => {
                t.check(false, || format!("min face degree: graph {i}: {e}"));
                continue;
            }
        };
        let need = g.d() / uniformity as f64;
        t.check(h.e() > 0 && h.min_face_degree() as f64 + 1e-9 >= need, || {
            format!("min face degree: graph {i} cleaned to {} edges with min face degree {} < d/r = {need}", h.e(), h.min_face_degree())
        });
        for (which, host) in [("cleaned", &h), ("input", &g)] {
            let d = host.min_face_degree();
            if d == 0 {
                continue;
            }
            let rep = vertex_face_degree_check(host, d as f64);
            t.check(rep.ok, || {
                format!("vertex face degree: graph {i} ({which}) has a vertex in {} faces > r·p/d = {}", rep.max_vertex_degree, rep.bound)
            });
        }
    }
    t.finish("C5", "face degree bounds", start)
}

/// C6: on 50 seeded cleaned dense 3-graphs with a face set F meeting
/// |F| ≥ 2rℓ·p(G)/d, a proper path of length ℓ ∈ {4, 5} joins two faces of F.
pub fn face_set_paths(seed: u64) -> CriterionResult {
    let start = Instant::now();
    let mut t = Tally::default();
    let mut r = rng::stream(seed, 6);
    for i in 0..50 {
        let ell = 4 + i % 2;
        let g = random_rgraph(3, 56, 0.85, seed.wrapping_add(1000 + i as u64)).expect("valid probability");
        let h = match g.mindeg_subhypergraph() {
            Ok(h) => h,
            Err(e) => {
                t.check(false, || format!("face-set path: graph {i}: {e}"));
                continue;
            }
        };
        let d = h.min_face_degree();
        let required = (2.0 * (3 * ell * h.p()) as f64 / d as f64).ceil() as usize;
        if d == 0 || required > h.p() {
            t.check(false, || format!("face-set path: graph {i} cannot meet the size hypothesis (d = {d})"));
            continue;
        }
        let f: FaceSet = h.faces().choose_multiple(&mut r, required).cloned().collect();
        match path_between_face_set(&h, &f, ell) {
            Ok(out) => {
                let ok = out.hypothesis_ok
                    && out.path.as_ref().is_some_and(|p| {
                        let recheck = FacePathCert::new(p.walk.clone());
                        recheck.is_ok_and(|c| c.proper)
                            && p.walk.len() == ell
                            && p.walk.check_in(&h).is_ok()
                            && f.contains(p.start())
                            && f.contains(p.end())
                    });
                t.check(ok, || format!("face-set path: graph {i}, ℓ = {ell}: no validating proper path with ends in F"));
            }
            Err(e) => t.check(false, || format!("face-set path: graph {i}, ℓ = {ell}: {e}")),
        }
    }
    t.finish("C6", "paths between face sets", start)
}

/// C7: sampling failure rates on the ten standard instances stay within
/// 2e^{−λ} + 3σ at 10⁴ trials, the Chernoff lower tail holds for μ ∈ {4, 8, 16},
/// and the elementary inequalities hold on a 100 × 100 grid.
pub fn monte_carlo(seed: u64) -> CriterionResult {
    let start = Instant::now();
    let mut t = Tally::default();
    for (inst, p, lambda) in standard_instances(seed) {
        match estimate_neighborhood_sampling(&inst, p, lambda, 10_000, seed) {
            Ok(rep) => t.check(rep.hypothesis_ok && rep.within_bound(), || {
                format!(
                    "sampling bound: {} at λ = {lambda}: rate {} vs bound {} + {} (hypothesis {})",
                    inst.name, rep.failure_rate, rep.bound, rep.slack, rep.hypothesis_ok
                )
            }),
            Err(e) => t.check(false, || format!("sampling bound: {}: {e}", inst.name)),
        }
    }
    for mu in [4.0, 8.0, 16.0] {
        match chernoff_lower_check(mu, 64, 10_000, seed) {
            Ok(rep) => t.check(rep.within_bound(), || {
                format!("Chernoff lower tail: μ = {mu}: rate {} vs bound {}", rep.failure_rate, rep.bound)
            }),
            Err(e) => t.check(false, || format!("Chernoff lower tail: μ = {mu}: {e}")),
        }
    }
    for row in numeric_inequality_suite(100) {
        t.check(row.pass(), || format!("inequality grid: {} has {} violations", row.name, row.violations));
    }
    t.finish("C7", "Monte Carlo bounds", start)
}

/// C8: short-cycle-free 3-graphs contain no face cycle on at most ⌊1/α⌋
/// vertices, and hypercube embeddings of 20 cycles are simple 2ℓ-cycles whose
/// edge supports are edges of the cycle.
///
/// A cycle spans at least five vertices (the Möbius strip on five), so the
/// required (n, α) pairs have nothing to destroy; a control pair with
/// ⌊1/α⌋ = 5 exercises the deletions.
pub fn constructions(seed: u64) -> CriterionResult {
    let start = Instant::now();
    let mut t = Tally::default();
    let cases = [(30, 0.34, 10u64), (40, 0.25, 10), (20, 0.18, 2)];
    for (n, alpha, seeds) in cases {
        let mut deleted = 0;
        let mut longest = 0;
        for k in 0..seeds {
            let s = match random_short_cycle_free_3graph(n, alpha, seed.wrapping_add(k)) {
                Ok(s) => s,
                Err(e) => {
                    t.check(false, || format!("short-cycle-free: ({n}, {alpha}) seed offset {k}: {e}"));
                    continue;
                }
            };
            deleted += s.log.len();
            longest = longest.max(s.max_vertices);
            for ell in 5..=s.max_vertices {
                let found = find_face_cycle_exact(&s.graph, ell, 200_000_000);
                t.check(found == SearchOutcome::NoneExists, || {
                    format!("short-cycle-free: ({n}, {alpha}) seed offset {k} rescan at length {ell} gave {:?}", found.is_found())
                });
            }
            t.check(s.graph.r() == 3 && s.graph.n() == n, || format!("short-cycle-free: ({n}, {alpha}) wrong shape"));
        }
        if longest < 5 {
            t.info.push(format!("({n}, {alpha}): ⌊1/α⌋ = {longest} < 5, no cycle to destroy"));
        } else {
            t.check(deleted > 0, || format!("short-cycle-free: ({n}, {alpha}) control deleted nothing"));
            t.info.push(format!("({n}, {alpha}): {deleted} deletions over {seeds} seeds"));
        }
    }
    let mut cycles = tight_cycles();
    cycles.extend(random_cycles(10, seed.wrapping_add(8)));
    for c in &cycles {
        let m = c.walk.vertex_set().into_iter().max().map_or(1, |v| v + 1);
        match embed_cycle_in_hypercube(c, m) {
            Ok(h) => {
                let edges: BTreeSet<Vec<usize>> = c.walk.edges().into_iter().collect();
                let ok = h.is_simple_cycle() && h.vertices.len() == 2 * c.len() && h.supports().iter().all(|s| edges.contains(s));
                t.check(ok, || format!("hypercube embedding: cycle of length {} in Q_{m} is not a valid 2ℓ-cycle", c.len()));
            }
            Err(e) => t.check(false, || format!("hypercube embedding: {e}")),
        }
    }
    t.finish("C8", "construction certification", start)
}

/// Whether `pattern` is a (not necessarily induced) subgraph of `host`, by
/// backtracking over injective vertex maps.
pub fn contains_subgraph(host: &SimpleGraph, pattern: &SimpleGraph) -> bool {
    fn go(host: &SimpleGraph, pattern: &SimpleGraph, map: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let i = map.len();
        if i == pattern.n() {
            return true;
        }
        for x in 0..host.n() {
            if used[x] {
                continue;
            }
            let fits = pattern.neighbors(i).iter().filter(|&&j| j < i).all(|&j| host.has_edge(map[j], x));
            if fits {
                used[x] = true;
                map.push(x);
                if go(host, pattern, map, used) {
                    return true;
                }
                map.pop();
                used[x] = false;
            }
        }
        false
    }
    pattern.n() <= host.n() && go(host, pattern, &mut Vec::new(), &mut vec![false; host.n()])
}

/// The 1-subdivision of K_t: branch vertices 0..t, then one middle vertex per pair.
pub fn one_subdivision_pattern(t: usize) -> SimpleGraph {
    let mut edges = Vec::new();
    let mut next = t;
    for a in 0..t {
        for b in a + 1..t {
            edges.push((a, next));
            edges.push((b, next));
            next += 1;
        }
    }
    SimpleGraph::new(next, edges).expect("valid pattern")
}

/// Fixed structured test graphs on at most 14 vertices.
fn named_test_graphs() -> Vec<(String, SimpleGraph)> {
    let mut out = Vec::new();
    for n in 2..=14 {
        out.push((format!("K_{n}"), SimpleGraph::complete(n)));
        out.push((format!("P_{n}"), SimpleGraph::path(n)));
        if n >= 3 {
            out.push((format!("C_{n}"), SimpleGraph::cycle(n)));
        }
        if n >= 4 {
            // Hub 0 joined to a cycle on 1..n.
            let rim = n - 1;
            let edges = (0..rim).flat_map(|i| [(0, i + 1), (i + 1, (i + 1) % rim + 1)]);
            out.push((format!("W_{n}"), SimpleGraph::new(n, edges).expect("wheel")));
        }
    }
    for a in 1..=7 {
        for b in a..=(14 - a) {
            out.push((format!("K_{a},{b}"), SimpleGraph::complete_bipartite(a, b)));
        }
    }
    out.push(("Petersen".into(), SimpleGraph::petersen()));
    out.push(("Q_3".into(), hypercube_colored(3).expect("m in range").graph().clone()));
    out.push(("K_4 + K_5".into(), SimpleGraph::complete(4).disjoint_union(&SimpleGraph::complete(5))));
    out.push(("K_5 + P_6".into(), SimpleGraph::complete(5).disjoint_union(&SimpleGraph::path(6))));
    out.retain(|(_, g)| g.n() <= 14);
    out
}

/// Seed of the fixed random part of the peel-versus-exact corpus.
const PEEL_CORPUS_SEED: u64 = 0x9ee1;

/// C9: heuristic finders never contradict exact oracles.
pub fn oracles(seed: u64) -> CriterionResult {
    let start = Instant::now();
    let mut t = Tally::default();
    let mut r = rng::stream(seed, 9);

    // 1-subdivision of K_3 against exhaustive subgraph search.
    let pattern = one_subdivision_pattern(3);
    let mut present = 0;
    for i in 0..300 {
        let n = r.gen_range(4..=9);
        let g = random_graph(n, r.gen_range(0.15..0.6), r.gen()).expect("valid probability");
        let found = find_one_subdivision(&g, 3);
        let exists = contains_subgraph(&g, &pattern);
        present += usize::from(exists);
        let valid = found.as_ref().is_none_or(|c| validate_subdivision_simple(&g, c));
        t.check(valid && found.is_some() == exists, || {
            format!("1-subdivision oracle: graph {i} (n = {n}): finder {} vs exhaustive {exists}", found.is_some())
        });
    }
    t.info.push(format!("1-subdivision present in {present}/300"));

    // Pipeline cycle certificates re-validate and never contradict the exact finder.
    let mut pipeline_found = 0;
    for i in 0..40u64 {
        let n = r.gen_range(9..=13);
        let g = random_rgraph(3, n, r.gen_range(0.3..0.7), seed.wrapping_add(900 + i)).expect("valid probability");
        let ell = 5 + (i as usize % 4);
        let cfg = PipelineConfig {
            seed: seed.wrapping_add(i),
            ..PipelineConfig::default()
        };
        match face_cycle_pipeline(&g, ell, &cfg) {
            Ok(run) => {
                if let SearchOutcome::Found(c) = &run.outcome {
                    pipeline_found += 1;
                    let walk = FaceWalk::new(c.walk.r(), c.walk.faces().to_vec());
                    let ok = walk.is_ok_and(|w| FaceCycleCert::new(w).is_ok()) && c.len() == ell && c.walk.check_in(&g).is_ok();
                    t.check(ok, || format!("pipeline certificate: graph {i}, ℓ = {ell} does not re-validate"));
                    let exact = find_face_cycle_exact(&g, ell, 20_000_000);
                    t.check(exact != SearchOutcome::NoneExists, || {
                        format!("pipeline vs exact: graph {i}, ℓ = {ell} found a cycle the exact finder rules out")
                    });
                }
            }
            Err(e) => t.check(false, || format!("pipeline certificate: graph {i}: {e}")),
        }
    }
    t.info.push(format!("pipeline found 40 runs: {pipeline_found}"));

    // Heuristic rainbow cycles against the exact search.
    for i in 0..60 {
        let n = r.gen_range(5..=12);
        let base = random_graph(n, r.gen_range(0.2..0.5), r.gen()).expect("valid probability");
        let g = greedy_colored(&base);
        let exact = find_rainbow_cycle_exact(&g, n, 20_000_000);
        match find_rainbow_cycle(&g, &FinderConfig::with_seed(seed.wrapping_add(i))) {
            Ok(found) => {
                let valid = found.as_ref().is_none_or(|c| c.validate(&g));
                let consistent = !(found.is_some() && exact == SearchOutcome::NoneExists);
                t.check(valid && consistent, || format!("rainbow cycle oracle: graph {i}: heuristic contradicts exact search"));
            }
            Err(e) => t.check(false, || format!("rainbow cycle oracle: graph {i}: {e}")),
        }
    }

    // Peeling reaches the exact optimum on the test graphs with n ≤ 14.
    let mut corpus = named_test_graphs();
    let mut cr = rng::stream(PEEL_CORPUS_SEED, 0);
    for i in 0..300 {
        let n = cr.gen_range(3..=14);
        let p = [0.15, 0.3, 0.5, 0.7][i % 4];
        corpus.push((format!("G({n}, {p}) #{i}"), random_graph(n, p, cr.gen()).expect("valid probability")));
    }
    for (name, g) in &corpus {
        if g.edge_count() == 0 {
            continue;
        }
        for alpha in GRAPH_ALPHAS {
            let exact = alpha_max_subgraph_exact(g, alpha).map(|x| x.1.score);
            let peel = alpha_max_subgraph_peel(g, alpha).map(|x| x.1.score);
            let ok = matches!((&exact, &peel), (Ok(a), Ok(b)) if (a - b).abs() <= 1e-12 * a.abs().max(1.0));
            t.check(ok, || format!("peel vs exact: {name}, α = {alpha}: {peel:?} vs {exact:?}"));
        }
    }
    t.finish("C9", "oracle equivalence", start)
}

/// Proper coloring in which each edge takes the least color free at both ends.
pub fn greedy_colored(g: &SimpleGraph) -> ColoredGraph {
    let mut used: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); g.n()];
    let colors = g
        .edges()
        .iter()
        .map(|&(u, v)| {
            let c = (0..).find(|c| !used[u].contains(c) && !used[v].contains(c)).expect("unbounded");
            used[u].insert(c);
            used[v].insert(c);
            c
        })
        .collect();
    ColoredGraph::new(g.clone(), colors).expect("greedy coloring is proper")
}

/// The randomized commands checked for byte-identical output, writing into `dir`.
pub fn determinism_commands(seed: u64, dir: &Path) -> Vec<Vec<String>> {
    let p = |name: &str| dir.join(name).display().to_string();
    let s = seed.to_string();
    let raw: Vec<Vec<String>> = vec![
        vec!["construct".into(), "girth".into(), "--n".into(), "200".into(), "--ell".into(), "1".into(), "--seed".into(), s.clone(), "-o".into(), p("girth.txt"), "--log".into(), p("girth.json")],
        vec!["construct".into(), "3graph".into(), "--n".into(), "16".into(), "--alpha".into(), "0.25".into(), "--seed".into(), s.clone(), "-o".into(), p("short.txt"), "--log".into(), p("short.json")],
        vec!["rainbow-cycle".into(), "-i".into(), p("colored.txt"), "--seed".into(), s.clone(), "-o".into(), p("cycle.json")],
        vec!["rainbow-subdivision".into(), "-i".into(), p("colored.txt"), "--t".into(), "3".into(), "--seed".into(), s.clone(), "-o".into(), p("subdivision.json")],
        vec!["large-subdivision".into(), "-i".into(), p("colored.txt"), "--t".into(), "3".into(), "--ell".into(), "1".into(), "--seed".into(), s.clone(), "-o".into(), p("large.json")],
        vec!["hcycle".into(), "-i".into(), p("k7.txt"), "--ell".into(), "5".into(), "--mode".into(), "pipeline".into(), "--seed".into(), s.clone(), "-o".into(), p("hcycle.json")],
        vec!["hverify".into(), "-i".into(), p("k7.txt"), "--alpha".into(), "0.25".into(), "--seed".into(), s.clone(), "-o".into(), p("hverify.json")],
        vec!["mc".into(), "neighborhood".into(), "--trials".into(), "200".into(), "--seed".into(), s.clone(), "-o".into(), p("mc_nb.csv"), "--summary".into(), p("mc_nb.json")],
        vec!["mc".into(), "chernoff".into(), "--trials".into(), "500".into(), "--seed".into(), s.clone(), "-o".into(), p("mc_ch.csv"), "--summary".into(), p("mc_ch.json")],
        vec!["mc".into(), "reach".into(), "-i".into(), p("q4.txt"), "--trials".into(), "100".into(), "--seed".into(), s.clone(), "-o".into(), p("mc_reach.csv")],
        vec!["mc".into(), "reach-faces".into(), "-i".into(), p("k7.txt"), "--trials".into(), "100".into(), "--seed".into(), s.clone(), "-o".into(), p("mc_faces.csv")],
        vec!["report".into(), "mc-trends".into(), "--seed".into(), s, "-o".into(), p("trends.csv"), "--summary".into(), p("trends.json")],
    ];
    raw
}

/// Writes the fixed inputs the determinism commands read.
pub fn write_determinism_inputs(dir: &Path) -> Result<(), CliError> {
    let colored = ColoredGraph::distinct_colors(random_graph(40, 0.3, 11)?);
    io::save_text(dir.join("colored.txt"), &io::write_colored_edge_list(&colored))?;
    io::save_text(dir.join("k7.txt"), &io::write_hyperedge_list(&RGraph::complete(3, 7)))?;
    io::save_text(dir.join("q4.txt"), &io::write_colored_edge_list(&hypercube_colored(4)?))?;
    Ok(())
}

/// C10: every randomized command, run three times with the same seed,
/// produces byte-identical artifacts and exit codes.
pub fn determinism(seed: u64, runner: &Runner) -> CriterionResult {
    let start = Instant::now();
    let mut t = Tally::default();
    let dir = match tempfile::tempdir() {
        Ok(d) => d,
        Err(e) => {
            t.check(false, || format!("determinism: no scratch directory: {e}"));
            return t.finish("C10", "determinism", start);
        }
    };
    let runs: Vec<_> = (0..3).map(|k| dir.path().join(format!("run{k}"))).collect();
    for run in &runs {
        if let Err(e) = std::fs::create_dir_all(run).map_err(CliError::from_io).and_then(|_| write_determinism_inputs(run)) {
            t.check(false, || format!("determinism: cannot prepare inputs: {e}"));
            return t.finish("C10", "determinism", start);
        }
    }
    let per_run: Vec<Vec<Vec<String>>> = runs.iter().map(|d| determinism_commands(seed, d)).collect();
    for (ci, cmd) in per_run[0].iter().enumerate() {
        let codes: Vec<Result<u8, String>> = per_run.iter().map(|cmds| runner(&cmds[ci])).collect();
        let label = cmd[..cmd.len().min(2)].join(" ");
        let codes_ok = codes.iter().all(|c| c.as_ref().is_ok_and(|&c| c != 2)) && codes.windows(2).all(|w| w[0] == w[1]);
        t.check(codes_ok, || format!("determinism: `{label}` exit codes {codes:?}"));
        // Every file argument written under run0 must match its twins.
        for (ai, arg) in cmd.iter().enumerate() {
            let is_output = ai > 0 && matches!(cmd[ai - 1].as_str(), "-o" | "--log" | "--summary");
            if !is_output {
                continue;
            }
            let bytes: Vec<Option<Vec<u8>>> = per_run.iter().map(|cmds| std::fs::read(&cmds[ci][ai]).ok()).collect();
            let same = bytes[0].is_some() && bytes.windows(2).all(|w| w[0] == w[1]);
            t.check(same, || format!("determinism: `{label}` output {} differs across runs", Path::new(arg).file_name().map_or(String::new(), |f| f.to_string_lossy().into_owned())));
        }
    }
    t.finish("C10", "determinism", start)
}

/// Failure rates across λ for the neighborhood-sampling and Chernoff checks.
pub fn mc_trends(seed: u64) -> Result<Vec<McRow>, CliError> {
    let mut rows = Vec::new();
    let instances = [BipartiteInstance::stars(300, 4), BipartiteInstance::random_left_regular(2000, 1000, 2, seed)];
    for inst in &instances {
        for lambda in [1.5, 2.0, 2.5, 3.0, 4.0] {
            let rep = estimate_neighborhood_sampling(inst, 0.5, lambda, 2000, seed)?;
            rows.push(McRow::from_report("neighborhood", &inst.name, &rep));
        }
    }
    for mu in [2.0, 4.0, 8.0, 16.0, 32.0] {
        let rep = chernoff_lower_check(mu, 64, 2000, seed)?;
        rows.push(McRow::from_report("chernoff", &format!("mu_{mu}_terms_64"), &rep));
    }
    Ok(rows)
}
