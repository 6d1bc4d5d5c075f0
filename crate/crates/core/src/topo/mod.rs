//! Higher-order walks, paths and cycles of (r−1)-faces.
//!
//! A walk of length ℓ is a face sequence f_0..f_ℓ whose consecutive unions are
//! edges. It is a path when it uncovers a new vertex at every step
//! (|∪f_i| = ℓ + r − 1), and a cycle when it is closed, |∪f_i| = ℓ, and two of
//! f_1..f_ℓ are disjoint.
//!
//! Those conditions alone admit closed walks whose complex is not a surface:
//! f = 2·11, 9·11, 4·11, 2·4, 2·6 puts the side {2, 11} in three triangles.
//! A cycle must therefore also split at some disjoint pair f_i, f_j into two
//! arcs that share no simplex beyond f_i and f_j; see [`arcs_meet_only_at_ends`].

mod paths;
mod search;
mod surface;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{Face, RGraph};

pub use paths::{
    fan_paths, path_between_face_set, sampled_reach_faces, tight_path_greedy, tight_path_randomized, FaceReach,
    FaceSetPath, FanPaths,
};
pub use search::{face_cycle_pipeline, find_face_cycle, find_face_cycle_exact, CycleMode, PipelineConfig, PipelineRun};
pub use surface::{classify_surface, euler_characteristic, is_three_partite, Surface};

/// A sequence of (r−1)-faces in which consecutive faces differ in one vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FaceWalk {
    r: usize,
    faces: Vec<Face>,
}

impl FaceWalk {
    /// Sorts each face and checks sizes and the one-vertex-change rule.
    pub fn new(r: usize, faces: Vec<Face>) -> Result<Self> {
        if r < 2 {
            return Err(Error::Invalid(format!("uniformity must be at least 2, got {r}")));
        }
        if faces.is_empty() {
            return Err(Error::Invalid("a walk needs at least one face".into()));
        }
        let mut out = Vec::with_capacity(faces.len());
        for mut f in faces {
            f.sort_unstable();
            if f.len() != r - 1 || f.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::BadEdgeSize(f, r - 1));
            }
            out.push(f);
        }
        for (i, w) in out.windows(2).enumerate() {
            if union_len(&w[0], &w[1]) != r {
                return Err(Error::Invalid(format!(
                    "faces {:?} and {:?} at step {} do not span an r-set",
                    w[0],
                    w[1],
                    i + 1
                )));
            }
        }
        Ok(FaceWalk { r, faces: out })
    }

    /// The closed walk around the tight cycle on `0..len`: f_i = {i, …, i+r−2} mod len.
    pub fn tight_cycle(r: usize, len: usize) -> Result<Self> {
        if len < r + 1 {
            return Err(Error::Invalid(format!("tight cycle of length {len} needs more than {r} vertices")));
        }
        let faces = (0..=len).map(|i| (0..r - 1).map(|j| (i + j) % len).collect()).collect();
        FaceWalk::new(r, faces)
    }

    /// The path along the tight path `vertices`: f_i is the window of r−1 vertices at i.
    pub fn from_tight_path(r: usize, vertices: &[usize]) -> Result<Self> {
        if vertices.len() < r - 1 {
            return Err(Error::Invalid("tight path shorter than one face".into()));
        }
        FaceWalk::new(r, vertices.windows(r - 1).map(<[usize]>::to_vec).collect())
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    /// ℓ, the number of steps.
    pub fn len(&self) -> usize {
        self.faces.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_closed(&self) -> bool {
        self.faces.first() == self.faces.last()
    }

    /// e_i = f_{i−1} ∪ f_i for i = 1..ℓ.
    pub fn edges(&self) -> Vec<Vec<usize>> {
        self.faces
            .windows(2)
            .map(|w| {
                let mut e: Vec<usize> = w[0].iter().chain(&w[1]).copied().collect();
                e.sort_unstable();
                e.dedup();
                e
            })
            .collect()
    }

    pub fn vertex_set(&self) -> BTreeSet<usize> {
        self.faces.iter().flatten().copied().collect()
    }

    /// Checks every step edge belongs to `host`.
    pub fn check_in(&self, host: &RGraph) -> Result<()> {
        if host.r() != self.r {
            return Err(Error::Invalid(format!("walk is {}-uniform, host is {}-uniform", self.r, host.r())));
        }
        for e in self.edges() {
            if !host.has_edge(&e) {
                return Err(Error::Invalid(format!("step edge {e:?} is not in the host")));
            }
        }
        Ok(())
    }

    /// The sub-walk f_i..f_j.
    fn slice(&self, i: usize, j: usize) -> FaceWalk {
        FaceWalk {
            r: self.r,
            faces: self.faces[i..=j].to_vec(),
        }
    }

    pub fn reversed(&self) -> FaceWalk {
        FaceWalk {
            r: self.r,
            faces: self.faces.iter().rev().cloned().collect(),
        }
    }

    /// Joins `other` onto the end of `self`; the end faces must agree.
    pub fn concat(&self, other: &FaceWalk) -> Result<FaceWalk> {
        if self.faces.last() != other.faces.first() {
            return Err(Error::Invalid("walks do not meet".into()));
        }
        let mut faces = self.faces.clone();
        faces.extend(other.faces.iter().skip(1).cloned());
        Ok(FaceWalk { r: self.r, faces })
    }
}

fn union_len(a: &[usize], b: &[usize]) -> usize {
    a.len() + b.iter().filter(|v| a.binary_search(v).is_err()).count()
}

pub(crate) fn disjoint(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|v| b.binary_search(v).is_err())
}

/// What a walk is under the three definitions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum WalkClass {
    Walk,
    Path { proper: bool },
    Cycle,
    /// Closed, but not a cycle.
    ClosedWalk,
}

/// Faces f_0..f_{ℓ−1} pairwise distinct and edges e_1..e_ℓ pairwise distinct.
/// Without this a closed walk that backtracks through one short arc passes
/// the union and disjointness tests while spanning only a disk.
fn distinct_steps(w: &FaceWalk) -> bool {
    let l = w.len();
    let faces: BTreeSet<&Face> = w.faces[..l].iter().collect();
    let edges: BTreeSet<Vec<usize>> = w.edges().into_iter().collect();
    faces.len() == l && edges.len() == l
}

/// Whether the closed walk f_0..f_{ℓ−1} splits at some disjoint pair f_i, f_j
/// into arcs f_i..f_j and f_j..f_i whose edges share no simplex meeting both
/// f_i and f_j. The arcs are proper paths, so the complex is then two balls
/// glued along two disjoint boundary faces: a cylinder or a Möbius strip.
pub(crate) fn arcs_meet_only_at_ends(fs: &[Face]) -> bool {
    let l = fs.len();
    let edge = |k: usize| -> BTreeSet<usize> { fs[(k + l - 1) % l].iter().chain(&fs[k % l]).copied().collect() };
    // Pairs (a, b) with a ∈ f_i, b ∈ f_j lying together in one of the edges e_k.
    let crossing = |ks: &mut dyn Iterator<Item = usize>, fi: &Face, fj: &Face| -> BTreeSet<(usize, usize)> {
        let mut out = BTreeSet::new();
        for k in ks {
            let e = edge(k);
            for &a in fi.iter().filter(|a| e.contains(a)) {
                for &b in fj.iter().filter(|b| e.contains(b)) {
                    out.insert((a, b));
                }
            }
        }
        out
    };
    (0..l).any(|i| {
        (i + 1..l).any(|j| {
            let (fi, fj) = (&fs[i], &fs[j]);
            if !disjoint(fi, fj) {
                return false;
            }
            let inner = crossing(&mut (i + 1..=j), fi, fj);
            let outer = crossing(&mut (j + 1..=l + i), fi, fj);
            inner.is_disjoint(&outer)
        })
    })
}

/// Applies the path and cycle tests to a walk.
pub fn classify_walk(w: &FaceWalk) -> WalkClass {
    let l = w.len();
    let union = w.vertex_set().len();
    if l >= 1 && w.is_closed() {
        let fs = &w.faces;
        let has_disjoint = (1..=l).any(|i| (i + 1..=l).any(|j| disjoint(&fs[i], &fs[j])));
        return if union == l && has_disjoint && distinct_steps(w) && arcs_meet_only_at_ends(&fs[..l]) {
            WalkClass::Cycle
        } else {
            WalkClass::ClosedWalk
        };
    }
    if union == l + w.r - 1 {
        WalkClass::Path {
            proper: disjoint(&w.faces[0], &w.faces[l]),
        }
    } else {
        WalkClass::Walk
    }
}

/// A walk known to be a path.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacePathCert {
    pub walk: FaceWalk,
    pub proper: bool,
}

impl FacePathCert {
    pub fn new(walk: FaceWalk) -> Result<Self> {
        match classify_walk(&walk) {
            WalkClass::Path { proper } => Ok(FacePathCert { walk, proper }),
            other => Err(Error::Invalid(format!("walk is not a path ({other:?})"))),
        }
    }

    pub fn start(&self) -> &Face {
        &self.walk.faces[0]
    }

    pub fn end(&self) -> &Face {
        self.walk.faces.last().expect("nonempty")
    }

    /// Vertices outside both end faces.
    pub fn internal(&self) -> BTreeSet<usize> {
        let (a, b) = (self.start(), self.end());
        self.walk
            .vertex_set()
            .into_iter()
            .filter(|v| !a.contains(v) && !b.contains(v))
            .collect()
    }
}

/// A walk known to be a cycle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceCycleCert {
    pub walk: FaceWalk,
}

impl FaceCycleCert {
    pub fn new(walk: FaceWalk) -> Result<Self> {
        match classify_walk(&walk) {
            WalkClass::Cycle => Ok(FaceCycleCert { walk }),
            other => Err(Error::Invalid(format!("walk is not a cycle ({other:?})"))),
        }
    }

    pub fn len(&self) -> usize {
        self.walk.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walk.is_empty()
    }

    /// The lexicographically least rotation or reflection of the face sequence.
    pub fn canonical(&self) -> FaceCycleCert {
        let l = self.len();
        let base = &self.walk.faces[..l];
        let mut best: Option<Vec<Face>> = None;
        for rev in [false, true] {
            for s in 0..l {
                let seq: Vec<Face> = (0..=l)
                    .map(|k| {
                        let idx = if rev { (s + l - k % l) % l } else { (s + k) % l };
                        base[idx].clone()
                    })
                    .collect();
                if best.as_ref().is_none_or(|b| seq < *b) {
                    best = Some(seq);
                }
            }
        }
        FaceCycleCert {
            walk: FaceWalk {
                r: self.walk.r,
                faces: best.expect("cycle has length ≥ 1"),
            },
        }
    }
}

/// The vertex order of a proper path: vertices of f_0 by when they leave,
/// then the rest by when they arrive.
pub fn vertex_order(p: &FacePathCert) -> Result<Vec<usize>> {
    if !p.proper {
        return Err(Error::Precondition("vertex order is defined for proper paths only".into()));
    }
    let fs = p.walk.faces();
    let last = |v: usize| fs.iter().rposition(|f| f.contains(&v)).expect("vertex of f_0");
    let mut head: Vec<usize> = fs[0].clone();
    head.sort_by_key(|&v| last(v));
    let mut tail = Vec::new();
    for f in &fs[1..] {
        for &v in f {
            if !head.contains(&v) && !tail.contains(&v) {
                tail.push(v);
            }
        }
    }
    head.extend(tail);
    Ok(head)
}

/// Splits a cycle at its most balanced disjoint face pair into two proper
/// paths that share only their end faces.
pub fn split_cycle(c: &FaceCycleCert) -> Result<(FacePathCert, FacePathCert)> {
    let l = c.len();
    let fs = c.walk.faces();
    let mut best: Option<(usize, usize)> = None;
    for i in 1..=l {
        for j in i + 1..=l {
            if disjoint(&fs[i], &fs[j]) {
                let gap = |(a, b): (usize, usize)| (2 * (b - a)).abs_diff(l);
                if best.is_none_or(|b| gap((i, j)) < gap(b)) {
                    best = Some((i, j));
                }
            }
        }
    }
    let (i, j) = best.ok_or_else(|| Error::Invalid("cycle has no disjoint face pair".into()))?;
    let first = c.walk.slice(i, j);
    // f_j .. f_ℓ = f_0 .. f_i
    let second = c.walk.slice(j, l).concat(&c.walk.slice(0, i))?;
    let a = FacePathCert::new(first)?;
    let b = FacePathCert::new(second)?;
    if !a.proper || !b.proper {
        return Err(Error::Invalid("split arcs are not proper".into()));
    }
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn figure_path() -> FaceWalk {
        let faces = [[1, 2], [2, 3], [3, 4], [4, 5], [4, 6], [6, 7], [6, 8], [6, 9], [9, 10], [9, 11]];
        FaceWalk::new(3, faces.iter().map(|f| f.to_vec()).collect()).unwrap()
    }

    #[test]
    fn backtracking_walks_are_not_cycles() {
        // Union 4 and f_2 ∩ f_4 = ∅, but only two distinct edges: a disk.
        let w = FaceWalk::new(3, vec![vec![0, 10], vec![10, 11], vec![1, 11], vec![10, 11], vec![0, 10]]).unwrap();
        assert_eq!(classify_walk(&w), WalkClass::ClosedWalk);
        let w = FaceWalk::new(3, vec![vec![0, 10], vec![10, 11], vec![8, 11], vec![9, 11], vec![10, 11], vec![0, 10]]).unwrap();
        assert_eq!(classify_walk(&w), WalkClass::ClosedWalk);
    }

    #[test]
    fn walks_that_pinch_a_side_are_not_cycles() {
        // Union 5, f_1 ∩ f_3 = ∅ and distinct edges, yet {2, 11} lies in three triangles.
        let w = FaceWalk::new(3, vec![vec![2, 11], vec![9, 11], vec![4, 11], vec![2, 4], vec![2, 6], vec![2, 11]]).unwrap();
        assert_eq!(classify_walk(&w), WalkClass::ClosedWalk);
        assert_eq!(surface::euler_characteristic(3, &w.edges()), Ok(1));
    }

    #[test]
    fn classify_examples() {
        let graph_path = FaceWalk::new(2, vec![vec![1], vec![2], vec![3]]).unwrap();
        assert_eq!(classify_walk(&graph_path), WalkClass::Path { proper: true });

        assert_eq!(classify_walk(&figure_path()), WalkClass::Path { proper: true });

        let four = FaceWalk::new(3, vec![vec![1, 2], vec![2, 3], vec![3, 4], vec![1, 4], vec![1, 2]]).unwrap();
        assert_eq!(classify_walk(&four), WalkClass::ClosedWalk);
        assert_eq!(classify_walk(&FaceWalk::tight_cycle(3, 5).unwrap()), WalkClass::Cycle);

        let back = FaceWalk::new(3, vec![vec![1, 2], vec![2, 3], vec![1, 2]]).unwrap();
        assert_eq!(classify_walk(&back), WalkClass::ClosedWalk);

        let revisit = FaceWalk::new(3, vec![vec![1, 2], vec![2, 3], vec![1, 3], vec![1, 4]]).unwrap();
        assert_eq!(classify_walk(&revisit), WalkClass::Walk);

        assert!(FaceWalk::new(3, vec![vec![1, 2, 3]]).is_err());
        assert!(FaceWalk::new(3, vec![vec![1, 2], vec![3, 4]]).is_err());
    }

    #[test]
    fn vertex_order_examples() {
        let p = FacePathCert::new(figure_path()).unwrap();
        assert_eq!(vertex_order(&p).unwrap(), (1..=11).collect::<Vec<_>>());

        let tight = FacePathCert::new(FaceWalk::from_tight_path(4, &[5, 3, 8, 1, 0, 7]).unwrap()).unwrap();
        assert_eq!(vertex_order(&tight).unwrap(), vec![5, 3, 8, 1, 0, 7]);

        let short = FacePathCert::new(FaceWalk::new(3, vec![vec![1, 2], vec![2, 3]]).unwrap()).unwrap();
        assert!(vertex_order(&short).is_err());
    }

    #[test]
    fn split_examples() {
        let six = FaceCycleCert::new(FaceWalk::tight_cycle(3, 6).unwrap()).unwrap();
        let (a, b) = split_cycle(&six).unwrap();
        assert_eq!((a.walk.len(), b.walk.len()), (3, 3));
        assert!(disjoint(a.start(), a.end()));
        assert!(a.internal().is_disjoint(&b.internal()));

        for len in 5..15 {
            let c = FaceCycleCert::new(FaceWalk::tight_cycle(3, len).unwrap()).unwrap();
            let (a, b) = split_cycle(&c).unwrap();
            assert_eq!(a.walk.len() + b.walk.len(), len);
            assert!(a.proper && b.proper);
            assert!(a.internal().is_disjoint(&b.internal()));
        }
    }

    #[test]
    fn canonical_is_rotation_invariant() {
        let c = FaceCycleCert::new(FaceWalk::tight_cycle(3, 7).unwrap()).unwrap();
        let mut faces = c.walk.faces()[3..7].to_vec();
        faces.extend_from_slice(&c.walk.faces()[0..4]);
        let rotated = FaceCycleCert::new(FaceWalk::new(3, faces).unwrap()).unwrap();
        assert_eq!(rotated.canonical(), c.canonical());
        let reflected = FaceCycleCert::new(c.walk.reversed()).unwrap();
        assert_eq!(reflected.canonical(), c.canonical());
        assert_eq!(classify_walk(&c.canonical().walk), WalkClass::Cycle);
    }
}
