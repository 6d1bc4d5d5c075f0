//! Extremal constructions and the hypercube representation of face cycles.

use std::collections::{BTreeSet, VecDeque};

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, SimpleGraph, Vertex};
use crate::hypergraph::RGraph;
use crate::rainbow::SearchOutcome;
use crate::rng;
use crate::topo::{find_face_cycle_exact, FaceCycleCert, FaceWalk};

/// Q_m with vertex x ↔ bit-string x, and the edge flipping bit i colored i.
pub fn hypercube_colored(m: usize) -> Result<ColoredGraph> {
    if !(1..=20).contains(&m) {
        return Err(Error::Parameter {
            name: "m",
            value: m as f64,
            range: "[1, 20]",
        });
    }
    let triples = (0..1usize << m).flat_map(|x| (0..m).filter(move |i| x >> i & 1 == 0).map(move |i| (x, x | 1 << i, i)));
    ColoredGraph::from_triples(1 << m, triples)
}

/// G(n, p) with a seeded stream.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Result<SimpleGraph> {
    check_prob(p)?;
    let mut rng = rng::stream(seed, 0);
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    SimpleGraph::new(n, edges)
}

/// Binomial r-graph on n vertices: each r-set is an edge with probability p.
pub fn random_rgraph(r: usize, n: usize, p: f64, seed: u64) -> Result<RGraph> {
    check_prob(p)?;
    if r < 2 || r > n {
        return Err(Error::Parameter {
            name: "r",
            value: r as f64,
            range: "[2, n]",
        });
    }
    let mut rng = rng::stream(seed, 0);
    let mut edges = Vec::new();
    let mut cur: Vec<usize> = (0..r).collect();
    loop {
        if rng.gen_bool(p) {
            edges.push(cur.clone());
        }
        // Next r-subset in lexicographic order.
        let Some(i) = (0..r).rev().find(|&i| cur[i] < n - r + i) else {
            break;
        };
        cur[i] += 1;
        for j in i + 1..r {
            cur[j] = cur[j - 1] + 1;
        }
    }
    RGraph::new(r, n, edges)
}

fn check_prob(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::Parameter {
            name: "p",
            value: p,
            range: "[0, 1]",
        })
    }
}

/// A sampled graph with every cycle of length ≤ `max_cycle` broken.
#[derive(Clone, Debug)]
pub struct HighGirthGraph {
    pub graph: SimpleGraph,
    pub p: f64,
    pub max_cycle: usize,
    pub sampled_edges: usize,
    pub deleted: Vec<(Vertex, Vertex)>,
}

/// BFS distance from `s` to `t` up to `limit`, ignoring the edge {s, t}.
fn bounded_distance(adj: &[BTreeSet<usize>], s: usize, t: usize, limit: usize) -> Option<usize> {
    let mut dist = vec![usize::MAX; adj.len()];
    dist[s] = 0;
    let mut queue = VecDeque::from([s]);
    while let Some(x) = queue.pop_front() {
        if dist[x] == limit {
            continue;
        }
        for &y in &adj[x] {
            if x == s && y == t {
                continue;
            }
            if dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                if y == t {
                    return Some(dist[y]);
                }
                queue.push_back(y);
            }
        }
    }
    None
}

/// G(n, p) with p = ½·n^{1/k − 1}, k = 3ℓ+3, followed by one pass over the
/// edges deleting every edge that still closes a cycle of length ≤ k.
/// The output has girth > 3ℓ+3.
pub fn random_high_girth_graph(n: usize, ell: usize, seed: u64) -> Result<HighGirthGraph> {
    if ell == 0 {
        return Err(Error::Parameter {
            name: "ell",
            value: 0.0,
            range: "[1, inf)",
        });
    }
    let k = 3 * ell + 3;
    let p = if n < 2 {
        0.0
    } else {
        (0.5 * (n as f64).powf(1.0 / k as f64 - 1.0)).min(1.0)
    };
    let sampled = random_graph(n, p, seed)?;
    let mut adj: Vec<BTreeSet<usize>> = (0..n).map(|v| sampled.neighbors(v).iter().copied().collect()).collect();
    let mut deleted = Vec::new();
    for &(u, v) in sampled.edges() {
        // A kept edge closes no short cycle now, and later deletions cannot create one.
        if bounded_distance(&adj, u, v, k - 1).is_some() {
            adj[u].remove(&v);
            adj[v].remove(&u);
            deleted.push((u, v));
        }
    }
    let kept: Vec<(usize, usize)> = (0..n).flat_map(|u| adj[u].iter().filter(move |&&v| v > u).map(move |&v| (u, v))).collect();
    Ok(HighGirthGraph {
        graph: SimpleGraph::new(n, kept)?,
        p,
        max_cycle: k,
        sampled_edges: sampled.edge_count(),
        deleted,
    })
}

/// Length of a shortest cycle, `None` for forests.
pub fn girth(g: &SimpleGraph) -> Option<usize> {
    let mut best: Option<usize> = None;
    for s in 0..g.n() {
        let mut dist = vec![usize::MAX; g.n()];
        let mut parent = vec![usize::MAX; g.n()];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &y in g.neighbors(x) {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    parent[y] = x;
                    queue.push_back(y);
                } else if parent[x] != y {
                    let len = dist[x] + dist[y] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
    }
    best
}

/// One destroyed short cycle and the edge removed to destroy it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Deletion {
    pub cycle: FaceCycleCert,
    pub removed: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct ShortCycleFree {
    pub graph: RGraph,
    pub alpha: f64,
    pub p: f64,
    /// ⌊1/α⌋: cycles on at most this many vertices were destroyed.
    pub max_vertices: usize,
    pub sampled_edges: usize,
    /// n^{2+α}, recorded for comparison only.
    pub expected_edges: f64,
    pub log: Vec<Deletion>,
}

/// Binomial 3-graph with p = min(1, 12·n^{α−1}), then every face cycle on at
/// most ⌊1/α⌋ vertices is destroyed by deleting its lexicographically least
/// edge.
///
/// A cycle of length ℓ spans exactly ℓ ≥ 5 vertices, so vertex subsets are
/// scanned by size and then lexicographically, each with the exact finder at
/// length |S|, until none is left. Deletions only remove edges, so subsets
/// already scanned stay clean.
pub fn random_short_cycle_free_3graph(n: usize, alpha: f64, seed: u64) -> Result<ShortCycleFree> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Parameter {
            name: "alpha",
            value: alpha,
            range: "(0, 1)",
        });
    }
    let p = if n == 0 { 0.0 } else { (12.0 * (n as f64).powf(alpha - 1.0)).min(1.0) };
    let sampled = if n < 3 { RGraph::new(3, n, Vec::<Vec<usize>>::new())? } else { random_rgraph(3, n, p, seed)? };
    let max_vertices = (1.0 / alpha + 1e-9).floor() as usize;
    let mut edges: BTreeSet<Vec<usize>> = sampled.edges().iter().cloned().collect();
    let mut log = Vec::new();
    for size in 5..=max_vertices.min(n) {
        let mut subset: Vec<usize> = (0..size).collect();
        loop {
            while let Some(cycle) = cycle_spanning(&edges, &subset)? {
                let removed = cycle.walk.edges().into_iter().min().expect("cycle has edges");
                edges.remove(&removed);
                log.push(Deletion { cycle, removed });
            }
            let Some(i) = (0..size).rev().find(|&i| subset[i] < n - size + i) else {
                break;
            };
            subset[i] += 1;
            for j in i + 1..size {
                subset[j] = subset[j - 1] + 1;
            }
        }
    }
    Ok(ShortCycleFree {
        graph: RGraph::new(3, n, edges)?,
        alpha,
        p,
        max_vertices,
        sampled_edges: sampled.e(),
        expected_edges: (n as f64).powf(2.0 + alpha),
        log,
    })
}

/// A cycle of length |S| using only edges inside S, in host labels.
fn cycle_spanning(edges: &BTreeSet<Vec<usize>>, s: &[usize]) -> Result<Option<FaceCycleCert>> {
    let k = s.len();
    let mut local = Vec::new();
    for a in 0..k {
        for b in a + 1..k {
            for c in b + 1..k {
                if edges.contains(&vec![s[a], s[b], s[c]]) {
                    local.push(vec![a, b, c]);
                }
            }
        }
    }
    // A cycle of length k needs k edges.
    if local.len() < k {
        return Ok(None);
    }
    let h = RGraph::new(3, k, local)?;
    match find_face_cycle_exact(&h, k, u64::MAX) {
        SearchOutcome::Found(c) => {
            let faces = c.walk.faces().iter().map(|f| f.iter().map(|&v| s[v]).collect()).collect();
            Ok(Some(FaceCycleCert::new(FaceWalk::new(3, faces)?)?.canonical()))
        }
        _ => Ok(None),
    }
}

/// A cycle of Q_m given by its vertices in order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypercubeCycle {
    pub m: usize,
    pub vertices: Vec<u64>,
}

impl HypercubeCycle {
    pub fn edges(&self) -> Vec<(u64, u64)> {
        let k = self.vertices.len();
        (0..k).map(|i| (self.vertices[i], self.vertices[(i + 1) % k])).collect()
    }

    /// A simple cycle of Q_m of length ≥ 4: distinct vertices inside [2^m],
    /// neighbours at Hamming distance 1.
    pub fn is_simple_cycle(&self) -> bool {
        let distinct: BTreeSet<u64> = self.vertices.iter().copied().collect();
        self.vertices.len() >= 4
            && distinct.len() == self.vertices.len()
            && self.vertices.iter().all(|&x| self.m >= 64 || x >> self.m == 0)
            && self.edges().iter().all(|(a, b)| (a ^ b).count_ones() == 1)
    }

    /// For each Q_m edge, the support of its {0,1,*} word: the ones plus the flip bit.
    pub fn supports(&self) -> Vec<Vec<usize>> {
        self.edges()
            .into_iter()
            .map(|(a, b)| {
                let w = a | b;
                (0..self.m).filter(|i| w >> i & 1 == 1).collect()
            })
            .collect()
    }
}

/// Represents a face cycle f_0 … f_ℓ as the 2ℓ-cycle of characteristic
/// vectors f_0, f_0 ∪ f_1, f_1, f_1 ∪ f_2, … in Q_m.
pub fn embed_cycle_in_hypercube(c: &FaceCycleCert, m: usize) -> Result<HypercubeCycle> {
    if m == 0 || m > 63 {
        return Err(Error::Parameter {
            name: "m",
            value: m as f64,
            range: "[1, 63]",
        });
    }
    let fs = c.walk.faces();
    if let Some(v) = c.walk.vertex_set().into_iter().find(|&v| v >= m) {
        return Err(Error::Invalid(format!("cycle vertex {v} outside [{m}]")));
    }
    let bits = |s: &[usize]| s.iter().fold(0u64, |acc, &v| acc | 1 << v);
    let mut vertices = Vec::with_capacity(2 * c.len());
    for i in 0..c.len() {
        vertices.push(bits(&fs[i]));
        vertices.push(bits(&fs[i]) | bits(&fs[i + 1]));
    }
    let out = HypercubeCycle { m, vertices };
    if !out.is_simple_cycle() {
        return Err(Error::Invalid("face/edge alternation repeats a vector".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::check_proper_coloring;
    use crate::rainbow::find_rainbow_cycle_exact;

    #[test]
    fn hypercube_examples() {
        let q1 = hypercube_colored(1).unwrap();
        assert_eq!(q1.graph().edge_count(), 1);
        assert_eq!(q1.colors(), &[0]);
        for m in 1..=10 {
            let q = hypercube_colored(m).unwrap();
            assert_eq!(q.n(), 1 << m);
            assert_eq!(q.graph().edge_count(), m << (m - 1));
            assert_eq!(q.color_count(), m);
            assert!(check_proper_coloring(&q));
        }
        assert_eq!(find_rainbow_cycle_exact(&hypercube_colored(4).unwrap(), 16, u64::MAX), SearchOutcome::NoneExists);
        assert!(hypercube_colored(0).is_err() && hypercube_colored(21).is_err());
    }

    #[test]
    fn random_rgraph_counts() {
        assert_eq!(random_rgraph(3, 7, 1.0, 1).unwrap().e(), 35);
        assert_eq!(random_rgraph(4, 7, 0.0, 1).unwrap().e(), 0);
        let g = random_rgraph(3, 20, 0.3, 5).unwrap();
        let expected = 1140.0 * 0.3;
        let sd = (1140.0 * 0.3 * 0.7f64).sqrt();
        assert!((g.e() as f64 - expected).abs() < 4.0 * sd);
        assert_eq!(g, random_rgraph(3, 20, 0.3, 5).unwrap());
    }

    #[test]
    fn girth_examples() {
        assert_eq!(girth(&SimpleGraph::cycle(7)), Some(7));
        assert_eq!(girth(&SimpleGraph::petersen()), Some(5));
        assert_eq!(girth(&SimpleGraph::path(5)), None);
        assert_eq!(girth(&SimpleGraph::complete_bipartite(3, 3)), Some(4));
    }

    #[test]
    fn high_girth_outputs() {
        for seed in 0..5 {
            let out = random_high_girth_graph(60, 1, seed).unwrap();
            assert!(girth(&out.graph).is_none_or(|g| g > 6));
            assert_eq!(out.graph.edge_count() + out.deleted.len(), out.sampled_edges);
        }
        for seed in 0..20 {
            let out = random_high_girth_graph(200, 2, seed).unwrap();
            assert!(out.graph.edge_count() > 0);
            assert!(girth(&out.graph).is_none_or(|g| g > 9));
        }
    }

    #[test]
    fn short_cycle_free_examples() {
        let out = random_short_cycle_free_3graph(30, 0.5, 3).unwrap();
        assert_eq!(out.max_vertices, 2);
        assert!(out.log.is_empty());
        assert_eq!(out.graph.e(), out.sampled_edges);

        let out = random_short_cycle_free_3graph(12, 0.2, 3).unwrap();
        assert_eq!(out.max_vertices, 5);
        assert_eq!(out.graph.e() + out.log.len(), out.sampled_edges);
        for d in &out.log {
            assert!(!out.graph.has_edge(&d.removed));
            assert!(d.cycle.len() <= 5);
        }
        for len in 4..=5 {
            assert!(!find_face_cycle_exact(&out.graph, len, u64::MAX).is_found());
        }
    }

    #[test]
    fn embedding_examples() {
        let six = FaceCycleCert::new(FaceWalk::tight_cycle(3, 6).unwrap()).unwrap();
        let q = embed_cycle_in_hypercube(&six, 6).unwrap();
        assert_eq!(q.vertices.len(), 12);
        assert!(q.is_simple_cycle());
        let edges: BTreeSet<Vec<usize>> = six.walk.edges().into_iter().collect();
        assert!(q.supports().iter().all(|s| edges.contains(s)));
        assert!(q.vertices.iter().all(|x| matches!(x.count_ones(), 2 | 3)));

        let five = FaceCycleCert::new(FaceWalk::tight_cycle(3, 5).unwrap()).unwrap();
        assert_eq!(embed_cycle_in_hypercube(&five, 5).unwrap().vertices.len(), 10);
        assert!(embed_cycle_in_hypercube(&five, 4).is_err());
    }
}
