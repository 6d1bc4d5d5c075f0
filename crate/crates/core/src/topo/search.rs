use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use super::paths::{exact_face_reach, extensions, path_between_face_set};
use super::{arcs_meet_only_at_ends, classify_walk, disjoint, FaceCycleCert, FaceWalk, WalkClass};
use crate::density::ExtractMode;
use crate::error::{Error, Result};
use crate::graph::IdSet;
use crate::hypergraph::{alpha_max_rgraph, faces_of, Face, FaceSet, RGraph};
use crate::rainbow::{default_alpha, partition_parts, SearchOutcome};
use crate::rng;

/// How [`find_face_cycle`] searches.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum CycleMode {
    Exact { node_budget: u64 },
    Pipeline(PipelineConfig),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub seed: u64,
    pub retries: usize,
    /// Vertex-partition parts; `None` uses 3.
    pub parts: Option<usize>,
    /// Start faces tried per retry.
    pub sources: usize,
    pub alpha: Option<f64>,
    pub extract: bool,
    /// Node budget of each fallback path search.
    pub dfs_budget: u64,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            seed: rng::DEFAULT_SEED,
            retries: 16,
            parts: None,
            sources: 8,
            alpha: None,
            extract: true,
            dfs_budget: 20_000,
        }
    }
}

/// Pipeline outcome with the number of failed (retry, source) attempts.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineRun {
    pub outcome: SearchOutcome<FaceCycleCert>,
    pub attempts: usize,
    pub failures: usize,
}

/// A cycle of length `ell` in `g`, exact or by the sampling pipeline.
pub fn find_face_cycle(g: &RGraph, ell: usize, mode: &CycleMode) -> Result<SearchOutcome<FaceCycleCert>> {
    match mode {
        CycleMode::Exact { node_budget } => Ok(find_face_cycle_exact(g, ell, *node_budget)),
        CycleMode::Pipeline(cfg) => Ok(face_cycle_pipeline(g, ell, cfg)?.outcome),
    }
}

/// Backtracking over closed face walks, each rooted at its least face.
/// The first cycle found is returned in canonical form.
pub fn find_face_cycle_exact(g: &RGraph, ell: usize, node_budget: u64) -> SearchOutcome<FaceCycleCert> {
    if ell < 2 || g.e() == 0 {
        return SearchOutcome::NoneExists;
    }
    let mut s = ExactSearch {
        g,
        ell,
        budget: node_budget,
        nodes: 0,
        walk: Vec::with_capacity(ell + 1),
        count: BTreeMap::new(),
    };
    for start in 0..g.p() {
        s.push(start);
        let hit = s.dfs(start);
        s.pop(start);
        match hit {
            Step::Found(fs) => {
                let walk = FaceWalk::new(g.r(), fs).expect("search steps through edges");
                let cert = FaceCycleCert::new(walk).expect("search checks the cycle conditions");
                return SearchOutcome::Found(cert.canonical());
            }
            Step::OutOfBudget => return SearchOutcome::Indeterminate,
            Step::Exhausted => {}
        }
    }
    SearchOutcome::NoneExists
}

enum Step {
    Found(Vec<Face>),
    Exhausted,
    OutOfBudget,
}

struct ExactSearch<'a> {
    g: &'a RGraph,
    ell: usize,
    budget: u64,
    nodes: u64,
    walk: Vec<usize>,
    /// Multiplicity of each vertex on the current walk.
    count: BTreeMap<usize, usize>,
}

impl ExactSearch<'_> {
    fn push(&mut self, fid: usize) {
        self.walk.push(fid);
        for &v in &self.g.faces()[fid] {
            *self.count.entry(v).or_default() += 1;
        }
    }

    fn pop(&mut self, fid: usize) {
        self.walk.pop();
        for v in &self.g.faces()[fid] {
            let c = self.count.get_mut(v).expect("on walk");
            *c -= 1;
            if *c == 0 {
                self.count.remove(v);
            }
        }
    }

    fn dfs(&mut self, start: usize) -> Step {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Step::OutOfBudget;
        }
        let cur = *self.walk.last().expect("rooted");
        let placed = self.walk.len();
        for nb in self.g.face_neighbors(cur) {
            if nb < start {
                continue;
            }
            if placed == self.ell {
                if nb == start && self.is_cycle() {
                    let mut fs: Vec<Face> = self.walk.iter().map(|&f| self.g.faces()[f].clone()).collect();
                    fs.push(self.g.faces()[start].clone());
                    return Step::Found(fs);
                }
                continue;
            }
            if self.walk.contains(&nb) {
                continue;
            }
            self.push(nb);
            if self.count.len() <= self.ell {
                match self.dfs(start) {
                    Step::Exhausted => {}
                    other => {
                        self.pop(nb);
                        return other;
                    }
                }
            }
            self.pop(nb);
        }
        Step::Exhausted
    }

    /// Union size ℓ, distinct edges and a disjoint pair splitting the walk
    /// into two arcs that meet only at their ends. Faces are distinct by construction.
    fn is_cycle(&self) -> bool {
        if self.count.len() != self.ell {
            return false;
        }
        let fs = self.g.faces();
        let at = |i: usize| &fs[self.walk[i % self.ell]];
        let edges: BTreeSet<Vec<usize>> = (1..=self.ell)
            .map(|i| {
                let mut e: Vec<usize> = at(i - 1).iter().chain(at(i)).copied().collect();
                e.sort_unstable();
                e.dedup();
                e
            })
            .collect();
        let faces: Vec<Face> = (0..self.ell).map(|i| at(i).clone()).collect();
        edges.len() == self.ell && arcs_meet_only_at_ends(&faces)
    }
}

/// Proper path of `len` steps from `from`, adding only vertices outside
/// `avoid`, ending at a face disjoint from `from`, whose faces `accept` takes.
pub(crate) fn proper_path_dfs(
    g: &RGraph,
    from: &Face,
    len: usize,
    avoid: &BTreeSet<usize>,
    accept: &dyn Fn(&[Face]) -> bool,
    budget: &mut u64,
) -> Option<FaceWalk> {
    fn go(
        g: &RGraph,
        walk: &mut Vec<Face>,
        on: &mut BTreeSet<usize>,
        len: usize,
        avoid: &BTreeSet<usize>,
        accept: &dyn Fn(&[Face]) -> bool,
        budget: &mut u64,
    ) -> bool {
        if *budget == 0 {
            return false;
        }
        *budget -= 1;
        let cur = walk.last().expect("rooted").clone();
        if walk.len() == len + 1 {
            return disjoint(&walk[0], &cur) && accept(walk);
        }
        for y in extensions(g, &cur) {
            if on.contains(&y) || avoid.contains(&y) {
                continue;
            }
            let mut e = cur.clone();
            e.push(y);
            e.sort_unstable();
            on.insert(y);
            for f in faces_of(&e).filter(|f| *f != cur) {
                walk.push(f);
                if go(g, walk, on, len, avoid, accept, budget) {
                    return true;
                }
                walk.pop();
            }
            on.remove(&y);
        }
        false
    }
    let mut walk = vec![from.clone()];
    let mut on: BTreeSet<usize> = from.iter().copied().collect();
    if go(g, &mut walk, &mut on, len, avoid, accept, budget) {
        FaceWalk::new(g.r(), walk).ok()
    } else {
        None
    }
}

fn pipeline_hosts(g: &RGraph, cfg: &PipelineConfig) -> Result<Vec<RGraph>> {
    let mut hosts = Vec::new();
    if cfg.extract && g.e() > 0 {
        let alpha = cfg.alpha.unwrap_or_else(|| default_alpha(g.n()));
        let (ids, _) = alpha_max_rgraph(g, alpha, ExtractMode::Peel)?;
        let h = g.sub_by_edges(&ids);
        if h.e() > 0 {
            let h = h.mindeg_subhypergraph()?;
            if h.e() > 0 && h.e() < g.e() {
                hosts.push(h);
            }
        }
    }
    if g.e() > 0 {
        hosts.push(g.mindeg_subhypergraph()?);
        hosts.push(g.clone());
    }
    Ok(hosts)
}

/// Arm lengths (a, b) and middle-path length m with a + m + b = ℓ. Odd ℓ
/// uses two arms of ⌊(ℓ−r−1)/2⌋ and a middle path once that is long enough,
/// otherwise two arms of lengths ⌊ℓ/2⌋ and ⌈ℓ/2⌉.
fn split_lengths(r: usize, ell: usize) -> (usize, usize, usize) {
    if ell % 2 == 1 && ell > r {
        let arm = (ell - r - 1) / 2;
        let mid = ell - 2 * arm;
        if arm + 1 >= r && mid > r {
            return (arm, mid, arm);
        }
    }
    (ell / 2, 0, ell - ell / 2)
}

/// The sampling pipeline: α-maximal extraction and cleaning, a random vertex
/// partition, exact-length face reach per part, good pairs reached in two
/// parts, an optional middle path, and assembly. Retries are counted.
pub fn face_cycle_pipeline(g: &RGraph, ell: usize, cfg: &PipelineConfig) -> Result<PipelineRun> {
    let r = g.r();
    if ell < r + 2 || ell < 2 * r - 2 {
        return Err(Error::Precondition(format!(
            "pipeline needs ℓ ≥ max(r + 2, 2r − 2), got ℓ = {ell} for r = {r}"
        )));
    }
    let (arm_a, mid, arm_b) = split_lengths(r, ell);
    let s = cfg.parts.unwrap_or(3).max(2);
    let mut run = PipelineRun {
        outcome: SearchOutcome::Indeterminate,
        attempts: 0,
        failures: 0,
    };
    for (hi, h) in pipeline_hosts(g, cfg)?.iter().enumerate() {
        for retry in 0..cfg.retries {
            let mut rng = rng::substream(cfg.seed, hi as u64, retry as u64);
            let parts = partition_parts(h.n(), s, &mut rng);
            let mut starts: Vec<&Face> = h.faces().iter().collect();
            starts.shuffle(&mut rng);
            for f0 in starts.into_iter().take(cfg.sources.max(1)) {
                run.attempts += 1;
                let mut budget = cfg.dfs_budget;
                let found = if mid == 0 {
                    two_arms(h, f0, &parts, arm_a, arm_b, &mut budget)
                } else {
                    with_middle(h, f0, &parts, arm_a, mid, cfg.dfs_budget)
                };
                match found.and_then(|w| certify(g, w)) {
                    Some(c) => {
                        run.outcome = SearchOutcome::Found(c);
                        return Ok(run);
                    }
                    None => run.failures += 1,
                }
            }
        }
    }
    Ok(run)
}

fn certify(g: &RGraph, w: FaceWalk) -> Option<FaceCycleCert> {
    if classify_walk(&w) != WalkClass::Cycle || w.check_in(g).is_err() {
        return None;
    }
    FaceCycleCert::new(w).ok()
}

fn internal(w: &FaceWalk) -> BTreeSet<usize> {
    let fs = w.faces();
    let (a, b) = (&fs[0], &fs[fs.len() - 1]);
    w.vertex_set().into_iter().filter(|v| !a.contains(v) && !b.contains(v)).collect()
}

/// Arms that meet beyond their end faces pinch the complex; such an assembly
/// is skipped in favour of the next good pair.
fn is_cycle_walk(w: &FaceWalk) -> bool {
    classify_walk(w) == WalkClass::Cycle
}

fn two_arms(h: &RGraph, f0: &Face, parts: &[IdSet], a: usize, b: usize, budget: &mut u64) -> Option<FaceWalk> {
    let reach_a: Vec<BTreeMap<Face, FaceWalk>> = parts.iter().map(|u| exact_face_reach(h, f0, u, a)).collect();
    let reach_b: Vec<BTreeMap<Face, FaceWalk>> = if a == b {
        reach_a.clone()
    } else {
        parts.iter().map(|u| exact_face_reach(h, f0, u, b)).collect()
    };
    // Good pair: the same end face reached within two different parts.
    for (i, ra) in reach_a.iter().enumerate() {
        for (end, wa) in ra {
            for (j, rb) in reach_b.iter().enumerate() {
                if i == j {
                    continue;
                }
                if let Some(wb) = rb.get(end) {
                    if internal(wa).is_disjoint(&internal(wb)) {
                        if let Some(w) = wa.concat(&wb.reversed()).ok().filter(is_cycle_walk) {
                            return Some(w);
                        }
                        // The stored arms pinch; look for another first arm to the same end.
                        let back = wb.reversed();
                        let avoid = internal(wb);
                        let accept = |fs: &[Face]| {
                            fs.last() == Some(end)
                                && FaceWalk::new(h.r(), fs.to_vec()).is_ok_and(|p| p.concat(&back).is_ok_and(|w| is_cycle_walk(&w)))
                        };
                        if let Some(w) = proper_path_dfs(h, f0, a, &avoid, &accept, budget).and_then(|p| p.concat(&back).ok()) {
                            return Some(w);
                        }
                    }
                }
            }
        }
    }
    None
}

fn with_middle(h: &RGraph, f0: &Face, parts: &[IdSet], arm: usize, mid: usize, budget: u64) -> Option<FaceWalk> {
    let reach: Vec<BTreeMap<Face, FaceWalk>> = parts.iter().map(|u| exact_face_reach(h, f0, u, arm)).collect();
    let rest: RGraph = {
        let ids: Vec<usize> = (0..h.e()).filter(|&i| disjoint(&h.edges()[i], f0)).collect();
        h.sub_by_edges(&ids)
    };
    if rest.e() == 0 {
        return None;
    }
    let ends: FaceSet = reach.iter().flat_map(|m| m.keys().cloned()).filter(|f| rest.contains_face(f)).collect();
    let assemble = |p: &FaceWalk| -> Option<FaceWalk> {
        let (a, b) = (&p.faces()[0], p.faces().last().expect("path"));
        let mid_v = p.vertex_set();
        for (i, ri) in reach.iter().enumerate() {
            let Some(wa) = ri.get(a) else { continue };
            if !internal(wa).is_disjoint(&mid_v) {
                continue;
            }
            for (j, rj) in reach.iter().enumerate() {
                let Some(wb) = rj.get(b) else { continue };
                if i == j || !internal(wb).is_disjoint(&mid_v) {
                    continue;
                }
                if let Some(w) = wa.concat(p).and_then(|x| x.concat(&wb.reversed())).ok().filter(is_cycle_walk) {
                    return Some(w);
                }
            }
        }
        None
    };
    if let Ok(res) = path_between_face_set(&rest, &ends, mid) {
        if let Some(w) = res.path.as_ref().and_then(|p| assemble(&p.walk)) {
            return Some(w);
        }
    }
    // Fallback: search the middle path directly from each reached end face.
    let mut left = budget;
    for a in &ends {
        for (i, ri) in reach.iter().enumerate() {
            let Some(wa) = ri.get(a) else { continue };
            let avoid = internal(wa);
            let accept = |fs: &[Face]| {
                let b = fs.last().expect("rooted");
                reach.iter().enumerate().any(|(j, rj)| j != i && rj.contains_key(b))
                    && FaceWalk::new(h.r(), fs.to_vec()).ok().and_then(|p| assemble(&p)).is_some()
            };
            if let Some(p) = proper_path_dfs(&rest, a, mid, &avoid, &accept, &mut left) {
                if let Some(w) = assemble(&p) {
                    return Some(w);
                }
            }
            if left == 0 {
                return None;
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::Rng as _;

    /// Independent oracle: every closed walk of `ell` steps from every face,
    /// checked with the definition directly.
    fn brute_has_cycle(g: &RGraph, ell: usize) -> bool {
        fn rec(g: &RGraph, ell: usize, walk: &mut Vec<Face>) -> bool {
            if walk.len() == ell + 1 {
                return walk[0] == walk[ell]
                    && FaceWalk::new(g.r(), walk.clone()).is_ok_and(|w| classify_walk(&w) == WalkClass::Cycle);
            }
            let cur = walk.last().unwrap().clone();
            for e in g.edges() {
                if cur.iter().all(|v| e.contains(v)) {
                    for f in faces_of(e).filter(|f| *f != cur) {
                        walk.push(f);
                        if rec(g, ell, walk) {
                            return true;
                        }
                        walk.pop();
                    }
                }
            }
            false
        }
        g.faces().iter().any(|f| rec(g, ell, &mut vec![f.clone()]))
    }

    fn random_3graph(n: usize, p: f64, seed: u64) -> RGraph {
        let mut r = rng::stream(seed, 3);
        let edges: Vec<Vec<usize>> = RGraph::complete(3, n).edges().iter().filter(|_| r.gen_bool(p)).cloned().collect();
        RGraph::new(3, n, edges).unwrap()
    }

    #[test]
    fn exact_examples() {
        for len in 5..10 {
            let g = RGraph::tight_cycle(3, len).unwrap();
            let c = find_face_cycle_exact(&g, len, 1_000_000).found().unwrap();
            assert_eq!(c.len(), len);
            c.walk.check_in(&g).unwrap();
        }
        let k7 = RGraph::complete(3, 7);
        let c = find_face_cycle_exact(&k7, 5, 1_000_000).found().unwrap();
        assert_eq!(classify_walk(&c.walk), WalkClass::Cycle);
        // The tetrahedron boundary is a sphere, so no 3-graph has a length-4 cycle.
        let k4 = RGraph::complete(3, 4);
        assert_eq!(find_face_cycle_exact(&k4, 4, 1_000_000), SearchOutcome::NoneExists);
        assert_eq!(find_face_cycle_exact(&k4, 3, 1_000_000), SearchOutcome::NoneExists);
        assert_eq!(find_face_cycle_exact(&k7, 6, 1), SearchOutcome::Indeterminate);
        let path = RGraph::new(3, 6, vec![vec![0, 1, 2], vec![1, 2, 3], vec![2, 3, 4], vec![3, 4, 5]]).unwrap();
        assert_eq!(find_face_cycle_exact(&path, 5, 1_000_000), SearchOutcome::NoneExists);
    }

    #[test]
    fn exact_matches_brute_force() {
        let mut checked = 0;
        for seed in 0..120u64 {
            let n = 5 + (seed % 4) as usize;
            let g = random_3graph(n, 0.18 + 0.02 * (seed % 5) as f64, seed);
            for ell in 4..=6 {
                let exact = find_face_cycle_exact(&g, ell, u64::MAX);
                assert_eq!(exact.is_found(), brute_has_cycle(&g, ell), "seed {seed} n {n} ell {ell}");
                if let SearchOutcome::Found(c) = exact {
                    c.walk.check_in(&g).unwrap();
                    assert_eq!(c.len(), ell);
                }
                checked += 1;
            }
        }
        assert_eq!(checked, 360);
    }

    #[test]
    fn split_lengths_add_up() {
        for r in 3..6 {
            for ell in (r + 2).max(2 * r - 2)..30 {
                let (a, m, b) = split_lengths(r, ell);
                assert_eq!(a + m + b, ell);
                assert!(a + 1 >= r && b + 1 >= r);
                assert!(m == 0 || m > r);
            }
        }
    }

    #[test]
    fn pipeline_finds_cycles_in_dense_graphs() {
        let k9 = RGraph::complete(3, 9);
        for ell in [5, 6, 7, 8, 9] {
            let run = face_cycle_pipeline(&k9, ell, &PipelineConfig::default()).unwrap();
            let c = run.outcome.found().unwrap_or_else(|| panic!("ell {ell}"));
            assert_eq!(c.len(), ell);
            c.walk.check_in(&k9).unwrap();
        }
        let k12 = RGraph::complete(3, 12);
        let c = face_cycle_pipeline(&k12, 11, &PipelineConfig::default()).unwrap().outcome.found().unwrap();
        assert_eq!(c.len(), 11);
        assert!(face_cycle_pipeline(&k9, 4, &PipelineConfig::default()).is_err());
    }

    #[test]
    fn pipeline_reports_failures_on_sparse_graphs() {
        let path = RGraph::new(3, 6, vec![vec![0, 1, 2], vec![1, 2, 3], vec![2, 3, 4], vec![3, 4, 5]]).unwrap();
        let run = face_cycle_pipeline(&path, 6, &PipelineConfig { retries: 2, ..Default::default() }).unwrap();
        assert_eq!(run.outcome, SearchOutcome::Indeterminate);
        assert_eq!(run.failures, run.attempts);
        assert!(run.attempts > 0);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn pipeline_certificates_validate(seed in any::<u64>(), ell in 5usize..9) {
            let g = random_3graph(10, 0.5, seed);
            let cfg = PipelineConfig { seed, retries: 2, ..Default::default() };
            if let SearchOutcome::Found(c) = face_cycle_pipeline(&g, ell, &cfg).unwrap() .outcome {
                prop_assert_eq!(c.len(), ell);
                prop_assert!(c.walk.check_in(&g).is_ok());
                prop_assert_eq!(classify_walk(&c.walk), WalkClass::Cycle);
            }
        }

        #[test]
        fn exact_cycles_are_surfaces(seed in any::<u64>(), ell in 5usize..9, p in 0.3f64..0.9) {
            let g = random_3graph(ell, p, seed);
            if let SearchOutcome::Found(c) = find_face_cycle_exact(&g, ell, 2_000_000) {
                prop_assert_eq!(crate::topo::euler_characteristic(3, &c.walk.edges()), Ok(0));
                prop_assert!(crate::topo::classify_surface(&c).is_ok());
            }
        }
    }
}
