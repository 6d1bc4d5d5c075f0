//! r-uniform hypergraphs viewed as pure simplicial complexes.
//!
//! Edges are sorted `r`-element vertex lists, faces are their sorted
//! `(r−1)`-element subsets. `P(G)` is the set of all faces.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::seq::SliceRandom;
use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::IdSet;
use crate::rng;

/// An `(r−1)`-face: sorted, distinct vertex ids.
pub type Face = Vec<usize>;
pub type FaceSet = BTreeSet<Face>;

/// Per-face forbidden vertex sets used by the restricted face neighborhood.
pub type FaceForbidden = HashMap<Face, BTreeSet<usize>>;

/// Largest edge count accepted by the exhaustive α-maximal extractor.
pub const EXACT_EDGE_CAP: usize = 20;

const REL_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RGraph {
    r: usize,
    n: usize,
    edges: Vec<Vec<usize>>,
    faces: Vec<Face>,
    face_index: HashMap<Face, usize>,
    /// Edge ids through each face.
    face_edges: Vec<Vec<usize>>,
    /// Face ids of each edge, in the order of the omitted vertex.
    edge_faces: Vec<Vec<usize>>,
}

/// The `(r−1)`-subsets of a sorted edge, omitting position 0, 1, ... in turn.
pub fn faces_of(edge: &[usize]) -> impl Iterator<Item = Face> + '_ {
    (0..edge.len()).map(move |skip| {
        edge.iter()
            .enumerate()
            .filter(|(i, _)| *i != skip)
            .map(|(_, &v)| v)
            .collect()
    })
}

fn canon(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

impl RGraph {
    /// Builds an r-graph on vertex ids `0..n`; duplicates are rejected.
    pub fn new(r: usize, n: usize, edges: impl IntoIterator<Item = Vec<usize>>) -> Result<Self> {
        if r < 2 {
            return Err(Error::Invalid(format!("uniformity must be at least 2, got {r}")));
        }
        let mut list = Vec::new();
        for e in edges {
            let e = canon(e);
            if e.len() != r || e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::BadEdgeSize(e, r));
            }
            if let Some(&v) = e.iter().find(|&&v| v >= n) {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            list.push(e);
        }
        list.sort();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Invalid(format!("duplicate hyperedge {:?}", w[0])));
        }
        Ok(Self::from_sorted(r, n, list))
    }

    /// Like [`RGraph::new`] but drops repeated edges.
    pub fn new_dedup(r: usize, n: usize, edges: impl IntoIterator<Item = Vec<usize>>) -> Result<Self> {
        let set: BTreeSet<Vec<usize>> = edges.into_iter().map(canon).collect();
        Self::new(r, n, set)
    }

    fn from_sorted(r: usize, n: usize, edges: Vec<Vec<usize>>) -> Self {
        let mut face_set: BTreeSet<Face> = BTreeSet::new();
        for e in &edges {
            face_set.extend(faces_of(e));
        }
        let faces: Vec<Face> = face_set.into_iter().collect();
        let face_index: HashMap<Face, usize> = faces.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
        let mut face_edges = vec![Vec::new(); faces.len()];
        let mut edge_faces = Vec::with_capacity(edges.len());
        for (ei, e) in edges.iter().enumerate() {
            let ids: Vec<usize> = faces_of(e).map(|f| face_index[&f]).collect();
            for &fi in &ids {
                face_edges[fi].push(ei);
            }
            edge_faces.push(ids);
        }
        RGraph {
            r,
            n,
            edges,
            faces,
            face_index,
            face_edges,
            edge_faces,
        }
    }

    /// Complete r-graph on `n` vertices.
    pub fn complete(r: usize, n: usize) -> Self {
        let mut edges = Vec::new();
        let mut cur = Vec::with_capacity(r);
        fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == r {
                out.push(cur.clone());
                return;
            }
            for v in start..n {
                cur.push(v);
                rec(v + 1, n, r, cur, out);
                cur.pop();
            }
        }
        rec(0, n, r, &mut cur, &mut edges);
        Self::from_sorted(r, n, edges)
    }

    /// Tight cycle on `0..len`: edges are the cyclic windows of `r` consecutive vertices.
    pub fn tight_cycle(r: usize, len: usize) -> Result<Self> {
        if len <= r {
            return Err(Error::Invalid(format!("tight cycle of length {len} needs more than {r} vertices")));
        }
        Self::new_dedup(r, len, (0..len).map(|i| (0..r).map(|j| (i + j) % len).collect()))
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Size of the vertex id universe.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    /// e(G).
    pub fn e(&self) -> usize {
        self.edges.len()
    }

    /// p(G) = |P(G)|.
    pub fn p(&self) -> usize {
        self.faces.len()
    }

    /// Vertices covered by at least one edge.
    pub fn vertices(&self) -> Vec<usize> {
        let mut s = IdSet::empty(self.n);
        for e in &self.edges {
            for &v in e {
                s.insert(v);
            }
        }
        s.to_vec()
    }

    /// v(G), counting covered vertices only.
    pub fn v(&self) -> usize {
        self.vertices().len()
    }

    /// d(G) = r·e(G)/p(G); zero without edges.
    pub fn d(&self) -> f64 {
        if self.faces.is_empty() {
            0.0
        } else {
            (self.r * self.edges.len()) as f64 / self.faces.len() as f64
        }
    }

    pub fn face_id(&self, f: &[usize]) -> Option<usize> {
        self.face_index.get(f).copied()
    }

    pub fn contains_face(&self, f: &[usize]) -> bool {
        self.face_index.contains_key(f)
    }

    pub fn has_edge(&self, e: &[usize]) -> bool {
        let e = canon(e.to_vec());
        self.edges.binary_search(&e).is_ok()
    }

    pub fn face_degree(&self, fid: usize) -> usize {
        self.face_edges[fid].len()
    }

    pub fn face_edges(&self, fid: usize) -> &[usize] {
        &self.face_edges[fid]
    }

    pub fn edge_faces(&self, eid: usize) -> &[usize] {
        &self.edge_faces[eid]
    }

    pub fn min_face_degree(&self) -> usize {
        self.face_edges.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// deg_{P(G)}(v): number of faces containing `v`.
    pub fn vertex_face_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for f in &self.faces {
            for &v in f {
                deg[v] += 1;
            }
        }
        deg
    }

    /// Faces sharing an edge with `f` (excluding `f`), sorted by face id.
    pub fn face_neighbors(&self, fid: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.face_edges[fid]
            .iter()
            .flat_map(|&e| self.edge_faces[e].iter().copied())
            .filter(|&g| g != fid)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Checks each face is an (r−1)-face of the host.
    pub fn check_faces<'a>(&self, faces: impl IntoIterator<Item = &'a Face>) -> Result<()> {
        for f in faces {
            if !self.contains_face(f) {
                return Err(Error::FaceNotInComplex(f.clone()));
            }
        }
        Ok(())
    }

    /// The sub-r-graph formed by the given edge ids, on the same vertex universe.
    pub fn sub_by_edges(&self, ids: &[usize]) -> RGraph {
        let mut edges: Vec<Vec<usize>> = ids.iter().map(|&i| self.edges[i].clone()).collect();
        edges.sort();
        edges.dedup();
        Self::from_sorted(self.r, self.n, edges)
    }

    /// G[X]: edges all of whose (r−1)-subsets lie in `x`.
    pub fn induced_on_faces(&self, x: &FaceSet) -> RGraph {
        let ids: Vec<usize> = (0..self.edges.len())
            .filter(|&e| self.edge_faces[e].iter().all(|&f| x.contains(&self.faces[f])))
            .collect();
        self.sub_by_edges(&ids)
    }

    /// N(X) = {f ∈ P(G) ∖ X : ∃f′ ∈ X, f ∪ f′ ∈ E(G)}.
    pub fn face_neighborhood(&self, x: &FaceSet) -> Result<FaceSet> {
        self.check_faces(x)?;
        let mut out = FaceSet::new();
        for f0 in x {
            let fid = self.face_index[f0];
            for &e in &self.face_edges[fid] {
                for &g in &self.edge_faces[e] {
                    let f = &self.faces[g];
                    if !x.contains(f) {
                        out.insert(f.clone());
                    }
                }
            }
        }
        Ok(out)
    }

    /// N_φ(X, U): faces f ∉ X with some f′ ∈ X such that f ∪ f′ ∈ E(G),
    /// f′ ∖ f ⊆ U and f ∖ f′ avoids φ(f′).
    pub fn conditional_neighborhood(&self, x: &FaceSet, u: &IdSet, phi: &FaceForbidden) -> Result<FaceSet> {
        self.check_faces(x)?;
        let mut out = FaceSet::new();
        for f0 in x {
            let fid = self.face_index[f0];
            let forbidden = phi.get(f0);
            for &e in &self.face_edges[fid] {
                let edge = &self.edges[e];
                let new_vertex = *edge.iter().find(|v| f0.binary_search(v).is_err()).expect("edge extends face");
                if forbidden.is_some_and(|s| s.contains(&new_vertex)) {
                    continue;
                }
                for &g in &self.edge_faces[e] {
                    let f = &self.faces[g];
                    if x.contains(f) {
                        continue;
                    }
                    // f′ ∖ f is the single vertex of f0 dropped by f.
                    let left = f0.iter().find(|v| f.binary_search(v).is_err()).expect("distinct faces");
                    if u.contains(*left) {
                        out.insert(f.clone());
                    }
                }
            }
        }
        Ok(out)
    }

    /// Repeatedly deletes all edges through faces of degree below `threshold`.
    pub fn clean_min_face_degree(&self, threshold: f64) -> RGraph {
        let mut alive = vec![true; self.edges.len()];
        let mut deg: Vec<usize> = self.face_edges.iter().map(Vec::len).collect();
        let mut queue: Vec<usize> = (0..self.faces.len())
            .filter(|&f| deg[f] > 0 && (deg[f] as f64) < threshold)
            .collect();
        while let Some(f) = queue.pop() {
            for &e in &self.face_edges[f] {
                if !alive[e] {
                    continue;
                }
                alive[e] = false;
                for &g in &self.edge_faces[e] {
                    deg[g] -= 1;
                    if deg[g] > 0 && (deg[g] as f64) < threshold && (deg[g] + 1) as f64 >= threshold {
                        queue.push(g);
                    }
                }
            }
        }
        let ids: Vec<usize> = (0..self.edges.len()).filter(|&e| alive[e]).collect();
        self.sub_by_edges(&ids)
    }

    /// Subhypergraph in which every face has degree at least d(G)/r.
    pub fn mindeg_subhypergraph(&self) -> Result<RGraph> {
        if self.edges.is_empty() {
            return Err(Error::Precondition("mindeg cleaning needs at least one edge".into()));
        }
        let threshold = self.d() / self.r as f64;
        let h = self.clean_min_face_degree(threshold - 1e-9);
        assert!(h.e() > 0, "degree cleaning at d(G)/r left no edges");
        Ok(h)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FaceDegreeReport {
    pub precondition_ok: bool,
    pub d: f64,
    /// r·p(G)/d.
    pub bound: f64,
    pub max_vertex_degree: usize,
    pub slack: f64,
    pub ok: bool,
}

/// Checks deg_{P(G)}(v) ≤ r·p(G)/d for every vertex, given min face degree ≥ d.
pub fn vertex_face_degree_check(g: &RGraph, d: f64) -> FaceDegreeReport {
    let precondition_ok = d > 0.0 && g.faces.iter().enumerate().all(|(i, _)| g.face_degree(i) as f64 + 1e-9 >= d);
    let bound = if d > 0.0 { (g.r * g.p()) as f64 / d } else { f64::INFINITY };
    let max_vertex_degree = g.vertex_face_degrees().into_iter().max().unwrap_or(0);
    let slack = bound - max_vertex_degree as f64;
    FaceDegreeReport {
        precondition_ok,
        d,
        bound,
        max_vertex_degree,
        slack,
        ok: precondition_ok && slack >= -1e-9,
    }
}

/// Real binomial coefficient C(x, k) = x(x−1)…(x−k+1)/k!.
pub fn binom_real(x: f64, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (x - i as f64) / (i + 1) as f64)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShadowReport {
    /// Real x ≥ r with C(x, r) = e(G).
    pub x: f64,
    pub d: f64,
    /// x − r + 1.
    pub bound: f64,
    pub ok: bool,
}

/// Lovász form of the shadow bound: e(G) = C(x, r) implies d(G) ≤ x − r + 1.
pub fn shadow_bound_check(g: &RGraph) -> Result<ShadowReport> {
    if g.e() == 0 {
        return Err(Error::Precondition("shadow bound needs at least one edge".into()));
    }
    let r = g.r;
    let target = g.e() as f64;
    let (mut lo, mut hi) = (r as f64, (r + g.e()) as f64);
    while hi - lo > 1e-9 {
        let mid = 0.5 * (lo + hi);
        if binom_real(mid, r) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let x = 0.5 * (lo + hi);
    let bound = x - r as f64 + 1.0;
    let d = g.d();
    Ok(ShadowReport {
        x,
        d,
        bound,
        ok: d <= bound + 1e-6,
    })
}

/// α-maximality score d(H)/p(H)^α = r·e/p^{1+α}.
pub fn hyp_score(r: usize, e: usize, p: usize, alpha: f64) -> f64 {
    if p == 0 {
        0.0
    } else {
        (r * e) as f64 / (p as f64).powf(1.0 + alpha)
    }
}

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

fn check_hyp_alpha(r: usize, alpha: f64) -> Result<()> {
    let upper = 1.0 / (r as f64 - 1.0);
    if alpha > 0.0 && alpha < upper {
        Ok(())
    } else {
        Err(Error::Parameter {
            name: "alpha",
            value: alpha,
            range: "(0, 1/(r-1))",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HypScore {
    pub alpha: f64,
    /// d(H)/p(H)^α.
    pub score: f64,
    pub e: usize,
    pub p: usize,
}

/// Exhaustive maximizer over edge subsets. Ties: fewer edges, then lexicographically least ids.
fn alpha_max_rgraph_exact(g: &RGraph, alpha: f64) -> Result<(Vec<usize>, HypScore)> {
    let m = g.e();
    if m > EXACT_EDGE_CAP {
        return Err(Error::SizeCap { size: m, cap: EXACT_EDGE_CAP });
    }
    let mut count = vec![0u32; g.p()];
    let mut p = 0usize;
    let mut mask = 0u64;
    let mut best: (u64, usize, f64) = (0, 0, 0.0);
    for i in 1u64..(1u64 << m) {
        let e = i.trailing_zeros() as usize;
        let bit = 1u64 << e;
        if mask & bit == 0 {
            mask |= bit;
            for &f in &g.edge_faces[e] {
                count[f] += 1;
                if count[f] == 1 {
                    p += 1;
                }
            }
        } else {
            mask &= !bit;
            for &f in &g.edge_faces[e] {
                count[f] -= 1;
                if count[f] == 0 {
                    p -= 1;
                }
            }
        }
        let k = mask.count_ones() as usize;
        let s = hyp_score(g.r, k, p, alpha);
        let better = best.0 == 0
            || match cmp_score(s, best.2) {
                Ordering::Greater => true,
                Ordering::Less => false,
                Ordering::Equal => {
                    let bk = best.0.count_ones() as usize;
                    let diff = mask ^ best.0;
                    k < bk || (k == bk && mask & (diff & diff.wrapping_neg()) != 0)
                }
            };
        if better {
            best = (mask, p, s);
        }
    }
    let ids: Vec<usize> = (0..m).filter(|i| best.0 >> i & 1 == 1).collect();
    let e = ids.len();
    Ok((
        ids,
        HypScore {
            alpha,
            score: best.2,
            e,
            p: best.1,
        },
    ))
}

/// Greedy edge deletion keeping the best-scoring prefix.
fn alpha_max_rgraph_peel(g: &RGraph, alpha: f64) -> (Vec<usize>, HypScore) {
    let m = g.e();
    let mut count: Vec<usize> = g.face_edges.iter().map(Vec::len).collect();
    let mut alive = vec![true; m];
    let mut p = g.p();
    let mut e = m;
    let mut removed = Vec::new();
    let mut best = (0usize, hyp_score(g.r, e, p, alpha));
    while e > 1 {
        let mut choice: Option<(f64, usize, usize)> = None;
        for ei in (0..m).filter(|&i| alive[i]) {
            let lost = g.edge_faces[ei].iter().filter(|&&f| count[f] == 1).count();
            let s = hyp_score(g.r, e - 1, p - lost, alpha);
            if choice.is_none_or(|(b, _, _)| cmp_score(s, b) == Ordering::Greater) {
                choice = Some((s, ei, lost));
            }
        }
        let (s, ei, lost) = choice.expect("alive edge");
        alive[ei] = false;
        for &f in &g.edge_faces[ei] {
            count[f] -= 1;
        }
        p -= lost;
        e -= 1;
        removed.push(ei);
        if cmp_score(s, best.1) != Ordering::Less {
            best = (removed.len(), s);
        }
    }
    let dropped: BTreeSet<usize> = removed[..best.0].iter().copied().collect();
    let ids: Vec<usize> = (0..m).filter(|i| !dropped.contains(i)).collect();
    let h = g.sub_by_edges(&ids);
    let score = HypScore {
        alpha,
        score: hyp_score(g.r, h.e(), h.p(), alpha),
        e: h.e(),
        p: h.p(),
    };
    (ids, score)
}

/// α-maximal sub-r-graph over edge subsets. Returns the selected edge ids of `g`.
pub fn alpha_max_rgraph(g: &RGraph, alpha: f64, mode: crate::density::ExtractMode) -> Result<(Vec<usize>, HypScore)> {
    check_hyp_alpha(g.r, alpha)?;
    if g.e() == 0 {
        return Ok((Vec::new(), HypScore { alpha, score: 0.0, e: 0, p: 0 }));
    }
    match mode {
        crate::density::ExtractMode::Exact => alpha_max_rgraph_exact(g, alpha),
        crate::density::ExtractMode::Peel => Ok(alpha_max_rgraph_peel(g, alpha)),
    }
}

/// True iff no edge subset of `g` beats `g`'s own score (exhaustive).
pub fn is_alpha_maximal_rgraph(g: &RGraph, alpha: f64) -> Result<bool> {
    let (_, best) = alpha_max_rgraph(g, alpha, crate::density::ExtractMode::Exact)?;
    let own = hyp_score(g.r, g.e(), g.p(), alpha);
    Ok(cmp_score(best.score, own) != Ordering::Greater)
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct HypmaxReport {
    pub c: f64,
    pub density_ok: bool,
    pub min_face_degree: usize,
    pub degree_bound: f64,
    pub degree_ok: bool,
    /// Largest |X| covered by the expansion inequality.
    pub expansion_size_limit: f64,
    pub expansion_sets_checked: usize,
    pub expansion_exhaustive: bool,
    pub expansion_ok: bool,
    pub violations: Vec<String>,
}

impl HypmaxReport {
    pub fn ok(&self) -> bool {
        self.density_ok && self.degree_ok && self.expansion_ok
    }
}

/// Checks the density, face-degree and face-expansion properties of an α-maximal r-graph.
///
/// The expansion inequality is checked exhaustively when p(G) ≤ 20 and on
/// random sets otherwise (`seed` drives the sampling).
pub fn verify_hypmax(g: &RGraph, alpha: f64, seed: u64) -> Result<HypmaxReport> {
    check_hyp_alpha(g.r, alpha)?;
    let mut rep = HypmaxReport {
        density_ok: true,
        degree_ok: true,
        expansion_ok: true,
        ..Default::default()
    };
    if g.e() == 0 {
        rep.expansion_exhaustive = true;
        return Ok(rep);
    }
    let n = g.p() as f64;
    let r = g.r as f64;
    let d = g.d();
    rep.c = d / n.powf(alpha);
    if rep.c <= 0.5 {
        rep.density_ok = false;
        rep.violations.push(format!("c = {} not above 1/2", rep.c));
    }
    rep.min_face_degree = g.min_face_degree();
    rep.degree_bound = d / r;
    if (rep.min_face_degree as f64) + 1e-9 < rep.degree_bound {
        rep.degree_ok = false;
        rep.violations.push(format!(
            "face degree {} below d/r = {}",
            rep.min_face_degree, rep.degree_bound
        ));
    }
    rep.expansion_size_limit = (1.0 / (2.0 * r)).powf((1.0 + alpha) / alpha) * n;
    let limit = rep.expansion_size_limit.floor() as usize;
    let check = |x: &FaceSet, rep: &mut HypmaxReport| -> Result<()> {
        let k = x.len() as f64;
        let nx = g.face_neighborhood(x)?.len() as f64;
        let bound = k / (2.0 * r) * (n / k).powf(alpha / (1.0 + alpha));
        rep.expansion_sets_checked += 1;
        if nx + 1e-9 < bound {
            rep.expansion_ok = false;
            rep.violations.push(format!("|N(X)| = {nx} below {bound} for |X| = {k}"));
        }
        Ok(())
    };
    if limit == 0 {
        rep.expansion_exhaustive = true;
    } else if g.p() <= 20 {
        rep.expansion_exhaustive = true;
        for mask in 1u32..(1u32 << g.p()) {
            if mask.count_ones() as usize > limit {
                continue;
            }
            let x: FaceSet = (0..g.p()).filter(|i| mask >> i & 1 == 1).map(|i| g.faces[i].clone()).collect();
            check(&x, &mut rep)?;
        }
    } else {
        let mut rng = rng::stream(seed, 0);
        let ids: Vec<usize> = (0..g.p()).collect();
        for _ in 0..2000 {
            let k = rng.gen_range(1..=limit);
            let x: FaceSet = ids.choose_multiple(&mut rng, k).map(|&i| g.faces[i].clone()).collect();
            check(&x, &mut rep)?;
        }
    }
    Ok(rep)
}

/// Serializable mirror of an [`RGraph`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RGraphDoc {
    pub format_version: u32,
    pub r: usize,
    pub n: usize,
    pub edges: Vec<Vec<usize>>,
}

impl From<&RGraph> for RGraphDoc {
    fn from(g: &RGraph) -> Self {
        RGraphDoc {
            format_version: crate::io::FORMAT_VERSION,
            r: g.r,
            n: g.n,
            edges: g.edges.clone(),
        }
    }
}

impl TryFrom<RGraphDoc> for RGraph {
    type Error = Error;

    fn try_from(d: RGraphDoc) -> Result<Self> {
        RGraph::new(d.r, d.n, d.edges)
    }
}

/// Counts faces by vertex for a face set; used by degree bounds on face families.
pub fn face_set_vertex_degrees(x: &FaceSet) -> BTreeMap<usize, usize> {
    let mut deg = BTreeMap::new();
    for f in x {
        for &v in f {
            *deg.entry(v).or_insert(0) += 1;
        }
    }
    deg
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::ExtractMode;
    use proptest::prelude::*;

    fn fs(faces: &[&[usize]]) -> FaceSet {
        faces.iter().map(|f| f.to_vec()).collect()
    }

    fn edge123() -> RGraph {
        RGraph::new(3, 4, [vec![1, 2, 3]]).unwrap()
    }

    /// Definition-level oracle for N(X,U) with φ, iterating over all face pairs.
    fn neighborhood_oracle(g: &RGraph, x: &FaceSet, u: &IdSet, phi: &FaceForbidden) -> FaceSet {
        let mut out = FaceSet::new();
        for f in g.faces() {
            if x.contains(f) {
                continue;
            }
            for f0 in x {
                let union: BTreeSet<usize> = f.iter().chain(f0.iter()).copied().collect();
                if union.len() != g.r() || !g.has_edge(&union.iter().copied().collect::<Vec<_>>()) {
                    continue;
                }
                let left_ok = f0.iter().filter(|v| !f.contains(v)).all(|&v| u.contains(v));
                let fresh_ok = f
                    .iter()
                    .filter(|v| !f0.contains(v))
                    .all(|v| !phi.get(f0).is_some_and(|s| s.contains(v)));
                if left_ok && fresh_ok {
                    out.insert(f.clone());
                }
            }
        }
        out
    }

    #[test]
    fn face_neighborhood_examples() {
        let g = edge123();
        assert_eq!(g.face_neighborhood(&fs(&[&[1, 2]])).unwrap(), fs(&[&[1, 3], &[2, 3]]));
        let all: FaceSet = g.faces().iter().cloned().collect();
        assert!(g.face_neighborhood(&all).unwrap().is_empty());
        let k4 = RGraph::complete(3, 5);
        let nb = k4.face_neighborhood(&fs(&[&[1, 2]])).unwrap();
        // Every other pair meeting {1,2} in one vertex, inside K_5^(3) on 0..5.
        let expected: FaceSet = k4
            .faces()
            .iter()
            .filter(|f| f.as_slice() != [1, 2] && (f.contains(&1) || f.contains(&2)))
            .cloned()
            .collect();
        assert_eq!(nb, expected);
        assert!(matches!(
            g.face_neighborhood(&fs(&[&[0, 1]])),
            Err(Error::FaceNotInComplex(_))
        ));
    }

    #[test]
    fn conditional_neighborhood_examples() {
        let g = edge123();
        let x = fs(&[&[1, 2]]);
        let none = FaceForbidden::new();
        assert_eq!(
            g.conditional_neighborhood(&x, &IdSet::full(4), &none).unwrap(),
            g.face_neighborhood(&x).unwrap()
        );
        assert!(g.conditional_neighborhood(&x, &IdSet::empty(4), &none).unwrap().is_empty());
        let u = IdSet::from_ids(4, [1]);
        let got = g.conditional_neighborhood(&x, &u, &none).unwrap();
        assert_eq!(got, neighborhood_oracle(&g, &x, &u, &none));
        assert_eq!(got, fs(&[&[2, 3]]));
        let mut phi = FaceForbidden::new();
        phi.insert(vec![1, 2], [3].into());
        assert!(g.conditional_neighborhood(&x, &IdSet::full(4), &phi).unwrap().is_empty());
    }

    #[test]
    fn mindeg_examples() {
        let g = edge123();
        assert_eq!(g.mindeg_subhypergraph().unwrap(), g);
        let k5 = RGraph::complete(3, 5);
        assert_eq!(k5.mindeg_subhypergraph().unwrap(), k5);
        // With K_4^(3) the threshold e/p stays below 1 and a pendant edge survives;
        // K_6^(3) pushes it above 1 so the pendant faces are stripped.
        let mut edges: Vec<Vec<usize>> = RGraph::complete(3, 4).edges().to_vec();
        edges.push(vec![0, 1, 4]);
        let g = RGraph::new(3, 5, edges).unwrap();
        assert_eq!(g.mindeg_subhypergraph().unwrap(), g);
        let mut edges: Vec<Vec<usize>> = RGraph::complete(3, 6).edges().to_vec();
        edges.push(vec![0, 1, 6]);
        let g = RGraph::new(3, 7, edges).unwrap();
        let h = g.mindeg_subhypergraph().unwrap();
        assert_eq!(h.edges(), RGraph::complete(3, 6).edges());
    }

    #[test]
    fn face_degree_check_examples() {
        let k5 = RGraph::complete(3, 5);
        let rep = vertex_face_degree_check(&k5, 3.0);
        assert!(rep.ok);
        assert!((rep.bound - 10.0).abs() < 1e-12);
        assert_eq!(rep.max_vertex_degree, 4);
        let rep = vertex_face_degree_check(&edge123(), 1.0);
        assert!(rep.ok);
        assert!(!vertex_face_degree_check(&edge123(), 2.0).precondition_ok);
    }

    #[test]
    fn shadow_examples() {
        for (r, n) in [(3, 6), (4, 7), (2, 5)] {
            let rep = shadow_bound_check(&RGraph::complete(r, n)).unwrap();
            assert!((rep.x - n as f64).abs() < 1e-6 && rep.ok, "{rep:?}");
            assert!((rep.d - rep.bound).abs() < 1e-6);
        }
        let rep = shadow_bound_check(&edge123()).unwrap();
        assert!((rep.bound - 1.0).abs() < 1e-6 && rep.ok);
    }

    #[test]
    fn alpha_max_examples() {
        let (ids, sc) = alpha_max_rgraph(&edge123(), 0.3, ExtractMode::Exact).unwrap();
        assert_eq!(ids, vec![0]);
        assert!((sc.score - 1.0 / 3f64.powf(0.3)).abs() < 1e-12);
        let k4 = RGraph::complete(3, 4);
        let (ids, _) = alpha_max_rgraph(&k4, 0.3, ExtractMode::Exact).unwrap();
        assert_eq!(ids, vec![0, 1, 2, 3]);
        // K_5^(3) on 0..5 plus a far edge.
        let mut edges = RGraph::complete(3, 5).edges().to_vec();
        edges.push(vec![5, 6, 7]);
        let g = RGraph::new(3, 8, edges).unwrap();
        let (ids, _) = alpha_max_rgraph(&g, 0.3, ExtractMode::Exact).unwrap();
        assert_eq!(ids, (0..10).collect::<Vec<_>>());
        assert!(matches!(
            alpha_max_rgraph(&k4, 0.5, ExtractMode::Exact),
            Err(Error::Parameter { .. })
        ));
    }

    #[test]
    fn verify_hypmax_examples() {
        let rep = verify_hypmax(&RGraph::new(3, 3, Vec::<Vec<usize>>::new()).unwrap(), 0.3, 0).unwrap();
        assert!(rep.ok());
        let k5 = RGraph::complete(3, 5);
        assert!(is_alpha_maximal_rgraph(&k5, 0.3).unwrap());
        assert!(verify_hypmax(&k5, 0.3, 0).unwrap().ok());
    }

    #[test]
    fn tight_cycle_edges() {
        let c = RGraph::tight_cycle(3, 6).unwrap();
        assert_eq!(c.e(), 6);
        assert_eq!(c.p(), 12);
        assert!(RGraph::tight_cycle(3, 3).is_err());
    }

    fn small_rgraph(r: usize, max_n: usize, max_e: usize) -> impl Strategy<Value = RGraph> {
        (r + 1..=max_n).prop_flat_map(move |n| {
            proptest::collection::vec(proptest::sample::subsequence((0..n).collect::<Vec<_>>(), r), 1..=max_e)
                .prop_map(move |es| RGraph::new_dedup(r, n, es).unwrap())
        })
    }

    proptest! {
        #[test]
        fn conditional_matches_oracle(g in small_rgraph(3, 7, 10), useed in any::<u64>()) {
            let mut rng = rng::stream(useed, 0);
            let x: FaceSet = g.faces().iter().filter(|_| rng.gen_bool(0.3)).cloned().collect();
            let u = IdSet::from_ids(g.n(), (0..g.n()).filter(|_| rng.gen_bool(0.5)));
            let mut phi = FaceForbidden::new();
            for f in &x {
                phi.insert(f.clone(), (0..g.n()).filter(|_| rng.gen_bool(0.2)).collect());
            }
            prop_assert_eq!(g.conditional_neighborhood(&x, &u, &phi).unwrap(), neighborhood_oracle(&g, &x, &u, &phi));
            prop_assert_eq!(
                g.conditional_neighborhood(&x, &IdSet::full(g.n()), &FaceForbidden::new()).unwrap(),
                g.face_neighborhood(&x).unwrap()
            );
        }

        #[test]
        fn mindeg_and_shadow_hold(g in small_rgraph(3, 8, 25)) {
            let h = g.mindeg_subhypergraph().unwrap();
            prop_assert!(h.e() > 0);
            prop_assert!(h.min_face_degree() as f64 + 1e-9 >= g.d() / 3.0);
            prop_assert!(shadow_bound_check(&g).unwrap().ok);
        }

        #[test]
        fn exact_output_is_hypmax(g in small_rgraph(3, 7, 12), ai in 0usize..3) {
            let alpha = [0.1, 0.25, 0.4][ai];
            let (ids, _) = alpha_max_rgraph(&g, alpha, ExtractMode::Exact).unwrap();
            let h = g.sub_by_edges(&ids);
            prop_assert!(is_alpha_maximal_rgraph(&h, alpha).unwrap());
            let rep = verify_hypmax(&h, alpha, 1).unwrap();
            prop_assert!(rep.ok(), "{:?}", rep.violations);
            let (_, peel) = alpha_max_rgraph(&g, alpha, ExtractMode::Peel).unwrap();
            let (_, exact) = alpha_max_rgraph(&g, alpha, ExtractMode::Exact).unwrap();
            prop_assert!(peel.score <= exact.score + 1e-12);
        }
    }
}
