use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use super::{FacePathCert, FaceWalk};
use crate::error::{Error, Result};
use crate::graph::IdSet;
use crate::hypergraph::{face_set_vertex_degrees, faces_of, Face, FaceSet, RGraph};
use crate::rng::Rng;

/// Vertices `y` with `f ∪ {y}` an edge, ascending.
pub(crate) fn extensions(g: &RGraph, f: &[usize]) -> Vec<usize> {
    let Some(fid) = g.face_id(f) else {
        return Vec::new();
    };
    let mut out: Vec<usize> = g
        .face_edges(fid)
        .iter()
        .map(|&e| *g.edges()[e].iter().find(|v| f.binary_search(v).is_err()).expect("edge extends face"))
        .collect();
    out.sort_unstable();
    out
}

fn sorted(v: &[usize]) -> Vec<usize> {
    let mut v = v.to_vec();
    v.sort_unstable();
    v
}

fn check_start(g: &RGraph, start: &[usize]) -> Result<()> {
    if start.len() + 1 != g.r() {
        return Err(Error::BadEdgeSize(start.to_vec(), g.r() - 1));
    }
    let f = sorted(start);
    if !g.contains_face(&f) {
        return Err(Error::FaceNotInComplex(f));
    }
    Ok(())
}

fn tight_path_with(g: &RGraph, start: &[usize], len: usize, mut pick: impl FnMut(&[usize]) -> Option<usize>) -> Option<Vec<usize>> {
    let r = g.r();
    let mut seq = start.to_vec();
    for _ in 0..len {
        let window = sorted(&seq[seq.len() + 1 - r..]);
        let cands: Vec<usize> = extensions(g, &window).into_iter().filter(|y| !seq.contains(y)).collect();
        seq.push(pick(&cands)?);
    }
    Some(seq)
}

/// Tight path v_1..v_{len+r−1} starting with the ordered face `start`,
/// always taking the lowest admissible vertex. `None` when greedy gets stuck.
pub fn tight_path_greedy(g: &RGraph, start: &[usize], len: usize) -> Result<Option<Vec<usize>>> {
    check_start(g, start)?;
    Ok(tight_path_with(g, start, len, |c| c.first().copied()))
}

/// [`tight_path_greedy`] with uniformly random choices and up to `restarts` attempts.
pub fn tight_path_randomized(g: &RGraph, start: &[usize], len: usize, rng: &mut Rng, restarts: usize) -> Result<Option<Vec<usize>>> {
    check_start(g, start)?;
    for _ in 0..restarts.max(1) {
        if let Some(seq) = tight_path_with(g, start, len, |c| c.choose(rng).copied()) {
            return Ok(Some(seq));
        }
    }
    Ok(None)
}

/// Outcome of [`path_between_face_set`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FaceSetPath {
    pub path: Option<FacePathCert>,
    /// 1 when built from edges with exactly one face in F, 2 for edges with at least two.
    pub case: Option<u8>,
    /// Whether |F| ≥ 2rℓ·p(G)/d held, d being the minimum face degree.
    pub hypothesis_ok: bool,
    pub required: f64,
    pub min_face_degree: usize,
}

/// A proper path of length `ell` with both end faces in `f`.
///
/// Splits the edges meeting F by how many faces they have in F, keeps the
/// larger class, cleans it to face degree ≥ ℓ and grows a tight path there,
/// attaching end faces from F. Runs even when the size hypothesis fails and
/// reports that in `hypothesis_ok`.
pub fn path_between_face_set(g: &RGraph, f: &FaceSet, ell: usize) -> Result<FaceSetPath> {
    let r = g.r();
    if r < 3 {
        return Err(Error::Parameter {
            name: "r",
            value: r as f64,
            range: "[3, inf)",
        });
    }
    if ell <= r {
        return Err(Error::Parameter {
            name: "ell",
            value: ell as f64,
            range: "(r, inf)",
        });
    }
    g.check_faces(f)?;
    let d = g.min_face_degree();
    let required = if d == 0 {
        f64::INFINITY
    } else {
        2.0 * (r * ell * g.p()) as f64 / d as f64
    };
    let mut out = FaceSetPath {
        path: None,
        case: None,
        hypothesis_ok: f.len() as f64 >= required,
        required,
        min_face_degree: d,
    };
    let in_f = |e: &[usize]| faces_of(e).filter(|x| f.contains(x)).count();
    let (mut e1, mut e2) = (Vec::new(), Vec::new());
    for (i, e) in g.edges().iter().enumerate() {
        match in_f(e) {
            0 => {}
            1 => e1.push(i),
            _ => e2.push(i),
        }
    }
    let order: [(u8, &Vec<usize>); 2] = if e1.len() >= e2.len() { [(1, &e1), (2, &e2)] } else { [(2, &e2), (1, &e1)] };
    for (case, ids) in order {
        let h = g.sub_by_edges(ids).clean_min_face_degree(ell as f64);
        if h.e() == 0 {
            continue;
        }
        let walk = if case == 1 {
            case_one(&h, f, ell)
        } else {
            case_two(&h, f, ell)
        };
        if let Some(walk) = walk {
            let cert = FacePathCert::new(walk)?;
            debug_assert!(cert.proper && cert.walk.check_in(g).is_ok());
            out.path = Some(cert);
            out.case = Some(case);
            break;
        }
    }
    Ok(out)
}

fn windows(seq: &[usize], k: usize) -> Vec<Face> {
    seq.windows(k).map(sorted).collect()
}

fn case_one(h: &RGraph, f: &FaceSet, ell: usize) -> Option<FaceWalk> {
    let r = h.r();
    for start in f.iter().filter(|x| h.contains_face(x)) {
        let Some(seq) = tight_path_with(h, start, ell - 1, |c| c.first().copied()) else {
            continue;
        };
        let mut faces = windows(&seq, r - 1);
        // faces = f_0..f_{ℓ−1}; the last edge is e_{ℓ−1} = f_{ℓ−2} ∪ f_{ℓ−1}.
        let last_edge = sorted(&seq[seq.len() - r..]);
        faces.pop();
        let prev = faces.last().expect("ℓ ≥ 2").clone();
        for turn in faces_of(&last_edge).filter(|x| *x != prev && !f.contains(x)) {
            let Some(w) = extensions(h, &turn).into_iter().find(|y| !seq.contains(y)) else {
                continue;
            };
            let mut e = turn.clone();
            e.push(w);
            e.sort_unstable();
            let Some(end) = faces_of(&e).find(|x| f.contains(x)) else {
                continue;
            };
            let mut walk = faces.clone();
            walk.push(turn);
            walk.push(end);
            let walk = FaceWalk::new(r, walk).ok()?;
            if matches!(super::classify_walk(&walk), super::WalkClass::Path { proper: true }) {
                return Some(walk);
            }
        }
    }
    None
}

fn case_two(h: &RGraph, f: &FaceSet, ell: usize) -> Option<FaceWalk> {
    let r = h.r();
    for start in h.faces() {
        let Some(seq) = tight_path_with(h, start, ell, |c| c.first().copied()) else {
            continue;
        };
        // e_i = seq[i−1 .. i−1+r] for i = 1..ℓ; f_i = seq[i .. i+r−1] for i = 1..ℓ−1.
        let inner: Vec<Face> = (1..ell).map(|i| sorted(&seq[i..i + r - 1])).collect();
        let first_edge = sorted(&seq[..r]);
        let last_edge = sorted(&seq[ell - 1..ell - 1 + r]);
        let f0 = faces_of(&first_edge).find(|x| f.contains(x) && *x != inner[0]);
        let fl = faces_of(&last_edge).find(|x| f.contains(x) && x != inner.last().expect("ℓ ≥ 2"));
        if let (Some(f0), Some(fl)) = (f0, fl) {
            let mut walk = vec![f0];
            walk.extend(inner);
            walk.push(fl);
            let walk = FaceWalk::new(r, walk).ok()?;
            if matches!(super::classify_walk(&walk), super::WalkClass::Path { proper: true }) {
                return Some(walk);
            }
        }
    }
    None
}

/// Faces reachable from `f0` by the fan of proper paths of length r−1.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FanPaths {
    pub faces: FaceSet,
    pub paths: BTreeMap<Face, FacePathCert>,
    /// Number of vertex sequences generated, d(d−1)…(d−r+2).
    pub sequences: usize,
    /// ⌈(d/r)^{r−1}⌉.
    pub size_bound: usize,
    /// r·d^{r−2}.
    pub degree_bound: f64,
    pub max_vertex_degree: usize,
}

impl FanPaths {
    pub fn size_ok(&self) -> bool {
        self.faces.len() >= self.size_bound
    }

    pub fn degree_ok(&self) -> bool {
        self.max_vertex_degree as f64 <= self.degree_bound + 1e-9
    }
}

/// Grows y_1..y_{r−1} from f0 = {v_1..v_{r−1}}: y_{i+1} extends
/// {v_{i+1}..v_{r−1}, y_1..y_i} and avoids v_1..v_i, taking the d−i lowest
/// choices at depth i. Requires every face degree ≥ d > r.
pub fn fan_paths(g: &RGraph, f0: &[usize], d: usize) -> Result<FanPaths> {
    let r = g.r();
    let f0 = sorted(f0);
    if !g.contains_face(&f0) {
        return Err(Error::FaceNotInComplex(f0));
    }
    if d <= r {
        return Err(Error::Precondition(format!("fan degree d = {d} must exceed r = {r}")));
    }
    if g.min_face_degree() < d {
        return Err(Error::Precondition(format!(
            "minimum face degree {} is below d = {d}",
            g.min_face_degree()
        )));
    }
    let mut out = FanPaths {
        faces: FaceSet::new(),
        paths: BTreeMap::new(),
        sequences: 0,
        size_bound: ((d as f64 / r as f64).powi(r as i32 - 1) - 1e-9).ceil() as usize,
        degree_bound: r as f64 * (d as f64).powi(r as i32 - 2),
        max_vertex_degree: 0,
    };
    let mut ys = Vec::with_capacity(r - 1);
    fan_rec(g, &f0, d, &mut ys, &mut out)?;
    out.max_vertex_degree = face_set_vertex_degrees(&out.faces).values().copied().max().unwrap_or(0);
    Ok(out)
}

fn fan_rec(g: &RGraph, v: &[usize], d: usize, ys: &mut Vec<usize>, out: &mut FanPaths) -> Result<()> {
    let i = ys.len();
    let face_at = |k: usize, ys: &[usize]| sorted(&[&v[k..], &ys[..k]].concat());
    if i == v.len() {
        out.sequences += 1;
        let end = sorted(ys);
        if !out.faces.contains(&end) {
            let walk = FaceWalk::new(g.r(), (0..=i).map(|k| face_at(k, ys)).collect())?;
            out.paths.insert(end.clone(), FacePathCert::new(walk)?);
            out.faces.insert(end);
        }
        return Ok(());
    }
    let cur = face_at(i, ys);
    let choices: Vec<usize> = extensions(g, &cur).into_iter().filter(|y| !v[..i].contains(y)).take(d - i).collect();
    debug_assert_eq!(choices.len(), d - i);
    for y in choices {
        ys.push(y);
        fan_rec(g, v, d, ys, out)?;
        ys.pop();
    }
    Ok(())
}

/// One step of face reachability: from each face of `frontier`, move through
/// an edge to another face, dropping a vertex accepted by `drop_ok` and adding
/// a vertex not on the stored walk. Keeps the first walk found per face.
pub(crate) fn extend_frontier(
    g: &RGraph,
    frontier: &BTreeMap<Face, FaceWalk>,
    drop_ok: impl Fn(usize) -> bool,
    skip: impl Fn(&Face) -> bool,
) -> BTreeMap<Face, FaceWalk> {
    let mut next: BTreeMap<Face, FaceWalk> = BTreeMap::new();
    for (fp, walk) in frontier {
        let on_walk = walk.vertex_set();
        for y in extensions(g, fp) {
            if on_walk.contains(&y) {
                continue;
            }
            let mut e = fp.clone();
            e.push(y);
            e.sort_unstable();
            for f in faces_of(&e) {
                if f == *fp || skip(&f) || next.contains_key(&f) {
                    continue;
                }
                let dropped = *fp.iter().find(|v| f.binary_search(v).is_err()).expect("distinct faces");
                if !drop_ok(dropped) {
                    continue;
                }
                let mut faces = walk.faces().to_vec();
                faces.push(f.clone());
                next.insert(f, FaceWalk::new(g.r(), faces).expect("one-vertex step"));
            }
        }
    }
    next
}

/// Faces reached from a source face by proper paths with sampled internal vertices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FaceReach {
    pub source: Face,
    /// Cumulative levels B_0 ⊆ B_1 ⊆ …; B_0 is the fan of the source.
    pub levels: Vec<FaceSet>,
    witness: BTreeMap<Face, FaceWalk>,
}

impl FaceReach {
    pub fn reached(&self) -> &FaceSet {
        self.levels.last().expect("B_0 present")
    }

    /// The stored proper path to `f`; its length is r−1 plus the level at which `f` entered.
    pub fn path_to(&self, f: &[usize]) -> Option<FacePathCert> {
        let w = self.witness.get(f)?;
        FacePathCert::new(w.clone()).ok()
    }

    /// Vertices on the stored path of each reached face.
    pub fn forbidden(&self) -> crate::hypergraph::FaceForbidden {
        self.witness
            .iter()
            .map(|(f, w)| (f.clone(), w.vertex_set()))
            .collect()
    }
}

/// Level recursion B_i ⊆ N_φ(B_{i−1}, U_i) starting from the fan of `f0`.
///
/// Level i drops a vertex of `u_rounds[i−1]`; φ(f) is the vertex set of the
/// path stored for f. Levels are cumulative, so with empty rounds every level
/// equals B_0. `ell` is the final path length; ℓ − r + 1 rounds are used.
pub fn sampled_reach_faces(g: &RGraph, f0: &[usize], u_rounds: &[IdSet], ell: usize) -> Result<FaceReach> {
    let r = g.r();
    if ell + 1 < r {
        return Err(Error::Parameter {
            name: "ell",
            value: ell as f64,
            range: "[r-1, inf)",
        });
    }
    let steps = ell + 1 - r;
    if u_rounds.len() < steps {
        return Err(Error::Precondition(format!("{steps} vertex rounds needed, got {}", u_rounds.len())));
    }
    let fan = fan_paths(g, f0, g.min_face_degree())?;
    let mut witness: BTreeMap<Face, FaceWalk> = fan.paths.into_iter().map(|(f, p)| (f, p.walk)).collect();
    let mut levels = vec![fan.faces];
    for round in u_rounds.iter().take(steps) {
        let prev = levels.last().expect("level").clone();
        let frontier: BTreeMap<Face, FaceWalk> = prev.iter().map(|f| (f.clone(), witness[f].clone())).collect();
        let fresh = extend_frontier(g, &frontier, |v| round.contains(v), |f| prev.contains(f));
        let mut next = prev;
        for (f, w) in fresh {
            next.insert(f.clone());
            witness.insert(f, w);
        }
        levels.push(next);
    }
    Ok(FaceReach {
        source: sorted(f0),
        levels,
        witness,
    })
}

/// All faces at the end of proper paths of exactly `len` steps from `f0`
/// whose internal vertices come from `u`, one path each.
pub(crate) fn exact_face_reach(g: &RGraph, f0: &Face, u: &IdSet, len: usize) -> BTreeMap<Face, FaceWalk> {
    let r = g.r();
    let mut frontier = BTreeMap::from([(f0.clone(), FaceWalk::new(r, vec![f0.clone()]).expect("face"))]);
    let source: BTreeSet<usize> = f0.iter().copied().collect();
    for step in 1..=len {
        // The first r−1 steps shed the source face so the end stays disjoint from it.
        frontier = if step < r {
            extend_frontier(g, &frontier, |v| source.contains(&v), |_| false)
        } else {
            extend_frontier(g, &frontier, |v| u.contains(v), |_| false)
        };
    }
    frontier
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;
    use crate::topo::{classify_walk, WalkClass};
    use proptest::prelude::*;
    use rand::Rng as _;

    fn random_3graph(n: usize, p: f64, seed: u64) -> RGraph {
        let mut r = rng::stream(seed, 0);
        let edges: Vec<Vec<usize>> = RGraph::complete(3, n).edges().iter().filter(|_| r.gen_bool(p)).cloned().collect();
        RGraph::new(3, n, edges).unwrap()
    }

    #[test]
    fn tight_path_examples() {
        let k6 = RGraph::complete(3, 6);
        for f in k6.faces() {
            let seq = tight_path_greedy(&k6, f, 3).unwrap().unwrap();
            assert_eq!(seq.len(), 5);
            assert!(seq.windows(3).all(|w| k6.has_edge(&sorted(w))));
        }
        let single = RGraph::new(3, 3, vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(tight_path_greedy(&single, &[0, 1], 2).unwrap(), None);
        assert!(tight_path_greedy(&single, &[0, 5], 1).is_err());
    }

    #[test]
    fn tight_path_on_cleaned_random_graphs() {
        let (mut ok, trials) = (0, 100);
        for seed in 0..trials {
            let g = random_3graph(14, 0.6, seed).mindeg_subhypergraph().unwrap();
            let len = (g.d() / 3.0).floor() as usize;
            let start = g.faces()[0].clone();
            if tight_path_greedy(&g, &start, len).unwrap().is_some() {
                ok += 1;
            }
        }
        assert!(ok >= 95, "greedy succeeded {ok}/{trials}");
    }

    #[test]
    fn path_between_examples() {
        let k7 = RGraph::complete(3, 7);
        let all: FaceSet = k7.faces().iter().cloned().collect();
        let res = path_between_face_set(&k7, &all, 4).unwrap();
        let p = res.path.unwrap();
        assert!(p.proper && all.contains(p.start()) && all.contains(p.end()));
        assert_eq!(p.walk.len(), 4);

        let one: FaceSet = [vec![0, 1]].into_iter().collect();
        let res = path_between_face_set(&k7, &one, 4).unwrap();
        assert!(!res.hypothesis_ok);
        assert!(res.path.is_none());
        assert!(path_between_face_set(&k7, &all, 3).is_err());
    }

    #[test]
    fn fan_examples() {
        let k6 = RGraph::complete(3, 6);
        let fan = fan_paths(&k6, &[0, 1], 4).unwrap();
        // Oracle: ends of all proper length-2 paths from {0,1}.
        let oracle: FaceSet = exact_face_reach(&k6, &vec![0, 1], &IdSet::empty(6), 2).into_keys().collect();
        assert_eq!(fan.faces, oracle);
        assert_eq!(fan.faces.len(), 6);
        assert_eq!(fan.size_bound, 2);
        assert!(fan.size_ok() && fan.degree_ok());
        for p in fan.paths.values() {
            assert!(p.proper);
            assert_eq!(p.walk.len(), 2);
            p.walk.check_in(&k6).unwrap();
        }
        let single = RGraph::new(3, 3, vec![vec![0, 1, 2]]).unwrap();
        assert!(fan_paths(&single, &[0, 1], 1).is_err());
        for n in [6, 7] {
            let k = RGraph::complete(3, n);
            let fan = fan_paths(&k, &[0, 1], n - 2).unwrap();
            assert!(fan.size_ok() && fan.degree_ok());
        }
    }

    #[test]
    fn sampled_reach_examples() {
        let k6 = RGraph::complete(3, 6);
        let none = vec![IdSet::empty(6); 3];
        let reach = sampled_reach_faces(&k6, &[0, 1], &none, 5).unwrap();
        assert!(reach.levels.iter().all(|l| *l == reach.levels[0]));

        let all = vec![IdSet::full(6); 2];
        let reach = sampled_reach_faces(&k6, &[0, 1], &all, 4).unwrap();
        for f in reach.reached() {
            let p = reach.path_to(f).unwrap();
            assert!(p.proper);
            p.walk.check_in(&k6).unwrap();
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn reach_levels_match_conditional_neighborhood(seed in any::<u64>()) {
            let g = random_3graph(9, 0.8, seed).mindeg_subhypergraph().unwrap();
            prop_assume!(g.min_face_degree() > 3);
            let mut r = rng::stream(seed, 1);
            let rounds: Vec<IdSet> = (0..3).map(|_| IdSet::from_ids(9, (0..9).filter(|_| r.gen_bool(0.6)))).collect();
            let f0 = g.faces()[r.gen_range(0..g.p())].clone();
            let reach = sampled_reach_faces(&g, &f0, &rounds, 5).unwrap();
            for i in 1..reach.levels.len() {
                let prev = &reach.levels[i - 1];
                let phi = reach.forbidden();
                let expected = g.conditional_neighborhood(prev, &rounds[i - 1], &phi).unwrap();
                let fresh: FaceSet = reach.levels[i].difference(prev).cloned().collect();
                prop_assert_eq!(&fresh, &expected);
            }
            for f in reach.reached() {
                let p = reach.path_to(f).unwrap();
                prop_assert!(p.proper);
                prop_assert!(p.walk.check_in(&g).is_ok());
                prop_assert!(p.internal().iter().all(|&v| rounds.iter().any(|u| u.contains(v))));
                prop_assert_eq!(classify_walk(&p.walk), WalkClass::Path { proper: true });
            }
        }
    }
}
