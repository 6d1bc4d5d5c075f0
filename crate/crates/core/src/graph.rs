//! Simple graphs, proper edge colorings and neighborhood primitives.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = usize;
pub type Color = usize;

/// Membership bitmap over a dense id universe `0..len`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IdSet {
    bits: Vec<bool>,
}

impl IdSet {
    pub fn empty(len: usize) -> Self {
        IdSet { bits: vec![false; len] }
    }

    pub fn full(len: usize) -> Self {
        IdSet { bits: vec![true; len] }
    }

    pub fn from_ids(len: usize, ids: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(len);
        for i in ids {
            s.insert(i);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    #[inline]
    pub fn contains(&self, id: usize) -> bool {
        self.bits.get(id).copied().unwrap_or(false)
    }

    pub fn insert(&mut self, id: usize) {
        if id >= self.bits.len() {
            self.bits.resize(id + 1, false);
        }
        self.bits[id] = true;
    }

    pub fn remove(&mut self, id: usize) {
        if id < self.bits.len() {
            self.bits[id] = false;
        }
    }

    pub fn len(&self) -> usize {
        self.bits.iter().filter(|b| **b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.bits.iter().any(|b| *b)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits
            .iter()
            .enumerate()
            .filter_map(|(i, b)| b.then_some(i))
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

/// Undirected simple graph on vertices `0..n`.
///
/// Edges are kept both as a sorted list of `(u, v)` pairs with `u < v` and as
/// sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    adj: Vec<Vec<Vertex>>,
}

impl SimpleGraph {
    /// Builds a graph, rejecting self-loops, duplicates and out-of-range ids.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let mut list = Vec::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(Self::from_sorted(n, list))
    }

    /// Like [`SimpleGraph::new`] but silently drops duplicate edges.
    pub fn new_dedup(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let set: BTreeSet<(usize, usize)> = edges
            .into_iter()
            .map(|(u, v)| (u.min(v), u.max(v)))
            .collect();
        Self::new(n, set)
    }

    fn from_sorted(n: usize, edges: Vec<(Vertex, Vertex)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        SimpleGraph { n, edges, adj }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted(n, Vec::new())
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Self::from_sorted(n, edges)
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        Self::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid cycle")
    }

    pub fn path(n: usize) -> Self {
        Self::new(n, (1..n).map(|i| (i - 1, i))).expect("valid path")
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let edges = (0..a).flat_map(|u| (0..b).map(move |v| (u, a + v))).collect();
        Self::from_sorted(a + b, edges)
    }

    pub fn petersen() -> Self {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((5 + i, 5 + (i + 2) % 5));
        }
        Self::new(10, e).expect("valid petersen")
    }

    /// Vertex-disjoint union; the second graph's vertices are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &SimpleGraph) -> Self {
        let off = self.n;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(u, v)| (u + off, v + off)));
        Self::new(self.n + other.n, edges).expect("union of valid graphs")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Index of edge `{u, v}` in [`SimpleGraph::edges`].
    pub fn edge_index(&self, u: Vertex, v: Vertex) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    /// d(G) = 2e(G)/v(G); zero for the graph without vertices.
    pub fn average_degree(&self) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            2.0 * self.edges.len() as f64 / self.n as f64
        }
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn check_ids(&self, xs: &[Vertex]) -> Result<()> {
        match xs.iter().find(|&&x| x >= self.n) {
            Some(&x) => Err(Error::VertexOutOfRange { vertex: x, n: self.n }),
            None => Ok(()),
        }
    }

    /// Adjacency rows as bitmasks; only valid for `n <= 64`.
    pub fn adjacency_masks(&self) -> Vec<u64> {
        assert!(self.n <= 64, "bitmask adjacency needs n <= 64");
        self.adj
            .iter()
            .map(|a| a.iter().fold(0u64, |m, &v| m | (1u64 << v)))
            .collect()
    }

    /// N(X) = {y ∉ X : ∃x ∈ X, xy ∈ E}, sorted.
    pub fn neighborhood(&self, xs: &[Vertex]) -> Result<Vec<Vertex>> {
        self.check_ids(xs)?;
        let inside = IdSet::from_ids(self.n, xs.iter().copied());
        let mut out = IdSet::empty(self.n);
        for &x in xs {
            for &y in &self.adj[x] {
                if !inside.contains(y) {
                    out.insert(y);
                }
            }
        }
        Ok(out.to_vec())
    }

    /// G[S] re-indexed to `0..|S|`, together with the map new id -> old id.
    pub fn induced_subgraph(&self, s: &[Vertex]) -> Result<(SimpleGraph, Vec<Vertex>)> {
        self.check_ids(s)?;
        let mut map: Vec<Vertex> = s.to_vec();
        map.sort_unstable();
        map.dedup();
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in map.iter().enumerate() {
            pos[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|(u, v)| pos[*u] != usize::MAX && pos[*v] != usize::MAX)
            .map(|&(u, v)| (pos[u], pos[v]))
            .collect::<Vec<_>>();
        let mut edges = edges;
        edges.sort_unstable();
        Ok((SimpleGraph::from_sorted(map.len(), edges), map))
    }

    /// Number of edges with both ends in `s`.
    pub fn edges_within(&self, s: &IdSet) -> usize {
        self.edges
            .iter()
            .filter(|(u, v)| s.contains(*u) && s.contains(*v))
            .count()
    }

    /// e(X, Y) for disjoint X, Y.
    pub fn edges_between(&self, x: &IdSet, y: &IdSet) -> usize {
        self.edges
            .iter()
            .filter(|(u, v)| (x.contains(*u) && y.contains(*v)) || (x.contains(*v) && y.contains(*u)))
            .count()
    }

    /// Checks that the sorted edge list and the adjacency lists describe the same graph.
    pub fn views_agree(&self) -> bool {
        let from_adj: usize = self.adj.iter().map(Vec::len).sum();
        from_adj == 2 * self.edges.len()
            && self
                .edges
                .iter()
                .all(|&(u, v)| self.adj[u].binary_search(&v).is_ok() && self.adj[v].binary_search(&u).is_ok())
    }

    /// Connected component containing `v`, sorted.
    pub fn component(&self, v: Vertex) -> Vec<Vertex> {
        let mut seen = IdSet::empty(self.n);
        let mut stack = vec![v];
        seen.insert(v);
        while let Some(x) = stack.pop() {
            for &y in &self.adj[x] {
                if !seen.contains(y) {
                    seen.insert(y);
                    stack.push(y);
                }
            }
        }
        seen.to_vec()
    }
}

/// Per-vertex forbidden vertices and colors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ForbiddenMap {
    vertices: HashMap<Vertex, BTreeSet<Vertex>>,
    colors: HashMap<Vertex, BTreeSet<Color>>,
}

impl ForbiddenMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn forbid_vertex(&mut self, at: Vertex, v: Vertex) {
        self.vertices.entry(at).or_default().insert(v);
    }

    pub fn forbid_color(&mut self, at: Vertex, c: Color) {
        self.colors.entry(at).or_default().insert(c);
    }

    pub fn vertex_forbidden(&self, at: Vertex, v: Vertex) -> bool {
        self.vertices.get(&at).is_some_and(|s| s.contains(&v))
    }

    pub fn color_forbidden(&self, at: Vertex, c: Color) -> bool {
        self.colors.get(&at).is_some_and(|s| s.contains(&c))
    }

    /// |φ(v)|, counting vertices and colors together.
    pub fn size_at(&self, at: Vertex) -> usize {
        self.vertices.get(&at).map_or(0, BTreeSet::len) + self.colors.get(&at).map_or(0, BTreeSet::len)
    }

    pub fn max_size(&self) -> usize {
        self.vertices
            .keys()
            .chain(self.colors.keys())
            .map(|&v| self.size_at(v))
            .max()
            .unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.values().all(BTreeSet::is_empty) && self.colors.values().all(BTreeSet::is_empty)
    }

    pub fn validate(&self, n: usize, color_count: usize) -> Result<()> {
        for (&at, set) in &self.vertices {
            for &v in std::iter::once(&at).chain(set.iter()) {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
        }
        for (&at, set) in &self.colors {
            if at >= n {
                return Err(Error::VertexOutOfRange { vertex: at, n });
            }
            if let Some(&c) = set.iter().find(|&&c| c >= color_count) {
                return Err(Error::ColorOutOfRange { color: c, count: color_count });
            }
        }
        Ok(())
    }
}

/// A simple graph with a total edge coloring, proper unless explicitly built unchecked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredGraph {
    graph: SimpleGraph,
    /// Aligned with `graph.edges()`.
    colors: Vec<Color>,
    color_count: usize,
}

impl ColoredGraph {
    /// Builds a colored graph and rejects improper colorings.
    pub fn new(graph: SimpleGraph, colors: Vec<Color>) -> Result<Self> {
        let g = Self::new_unchecked(graph, colors)?;
        g.first_conflict().map_or(Ok(()), Err)?;
        Ok(g)
    }

    /// Builds a colored graph without checking properness (lengths are still checked).
    pub fn new_unchecked(graph: SimpleGraph, colors: Vec<Color>) -> Result<Self> {
        if colors.len() != graph.edge_count() {
            return Err(Error::ColoringLength {
                expected: graph.edge_count(),
                got: colors.len(),
            });
        }
        let color_count = colors.iter().max().map_or(0, |&c| c + 1);
        Ok(ColoredGraph {
            graph,
            colors,
            color_count,
        })
    }

    /// Builds from `(u, v, color)` triples.
    pub fn from_triples(n: usize, triples: impl IntoIterator<Item = (Vertex, Vertex, Color)>) -> Result<Self> {
        let triples: Vec<_> = triples.into_iter().collect();
        let graph = SimpleGraph::new(n, triples.iter().map(|&(u, v, _)| (u, v)))?;
        let mut colors = vec![0; graph.edge_count()];
        for &(u, v, c) in &triples {
            colors[graph.edge_index(u, v).expect("edge just inserted")] = c;
        }
        Self::new(graph, colors)
    }

    /// Every edge gets its own color; trivially proper.
    pub fn distinct_colors(graph: SimpleGraph) -> Self {
        let colors = (0..graph.edge_count()).collect();
        Self::new_unchecked(graph, colors).expect("lengths match")
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    /// Size of the color id universe (max id + 1).
    pub fn color_count(&self) -> usize {
        self.color_count
    }

    pub fn color(&self, u: Vertex, v: Vertex) -> Option<Color> {
        self.graph.edge_index(u, v).map(|i| self.colors[i])
    }

    fn first_conflict(&self) -> Option<Error> {
        let mut seen: HashMap<(Vertex, Color), (Vertex, Vertex)> = HashMap::new();
        for (i, &(u, v)) in self.graph.edges().iter().enumerate() {
            let c = self.colors[i];
            for w in [u, v] {
                if let Some(&other) = seen.get(&(w, c)) {
                    return Some(Error::ImproperColoring {
                        first: other,
                        second: (u, v),
                        color: c,
                    });
                }
                seen.insert((w, c), (u, v));
            }
        }
        None
    }

    /// True iff no two edges sharing a vertex carry the same color.
    pub fn is_proper(&self) -> bool {
        self.first_conflict().is_none()
    }

    /// N_{Q,φ}(X) = {y ∉ X : ∃x ∈ X, xy ∈ E, y ∉ φ(x), f(xy) ∈ Q ∖ φ(x)}, sorted.
    pub fn restricted_neighborhood(&self, xs: &[Vertex], q: &IdSet, phi: &ForbiddenMap) -> Result<Vec<Vertex>> {
        self.graph.check_ids(xs)?;
        let n = self.n();
        let inside = IdSet::from_ids(n, xs.iter().copied());
        let mut out = IdSet::empty(n);
        for &x in xs {
            for &y in self.graph.neighbors(x) {
                if inside.contains(y) || phi.vertex_forbidden(x, y) {
                    continue;
                }
                let c = self.color(x, y).expect("adjacent");
                if q.contains(c) && !phi.color_forbidden(x, c) {
                    out.insert(y);
                }
            }
        }
        Ok(out.to_vec())
    }

    /// Induced colored subgraph with the same color ids.
    pub fn induced_subgraph(&self, s: &[Vertex]) -> Result<(ColoredGraph, Vec<Vertex>)> {
        let (h, map) = self.graph.induced_subgraph(s)?;
        let colors = h
            .edges()
            .iter()
            .map(|&(u, v)| self.color(map[u], map[v]).expect("edge of induced subgraph"))
            .collect();
        let mut out = ColoredGraph::new_unchecked(h, colors)?;
        out.color_count = out.color_count.max(self.color_count);
        Ok((out, map))
    }
}

/// Standalone form of the properness check.
pub fn check_proper_coloring(g: &ColoredGraph) -> bool {
    g.is_proper()
}

/// Serializable mirror of a (possibly colored) graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDoc {
    pub format_version: u32,
    pub n: usize,
    pub edges: Vec<(Vertex, Vertex)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub colors: Option<Vec<Color>>,
}
