use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::reach::{independent_parts, partition_parts, reach_exact_length, uq_reach_fixed, ReachSet, Witness};
use super::{finder_hosts, FinderConfig, PartMode};
use crate::error::{Error, Result};
use crate::graph::{Color, ColoredGraph, IdSet, SimpleGraph, Vertex};
use crate::rng::{self, Rng};

/// Above this many candidate branch sets the 1-subdivision search goes greedy.
const EXACT_BRANCH_SETS: f64 = 2e6;
/// Skeletons tried per retry before resampling.
const SKELETONS_PER_RETRY: usize = 256;
/// Node budget of each fallback path search.
const PATH_BUDGET: u64 = 50_000;
/// Node budget of the distinct-part assignment backtracking.
const ASSIGN_BUDGET: u64 = 200_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubdivisionPath {
    /// Indices into `branch` of the two ends, `ends.0 < ends.1`.
    pub ends: (usize, usize),
    /// Full vertex sequence from `branch[ends.0]` to `branch[ends.1]`.
    pub vertices: Vec<Vertex>,
}

impl SubdivisionPath {
    pub fn internal(&self) -> &[Vertex] {
        let k = self.vertices.len();
        if k <= 2 {
            &[]
        } else {
            &self.vertices[1..k - 1]
        }
    }
}

/// A subdivision of K_t: branch vertices plus one path per branch pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubdivisionCert {
    pub t: usize,
    pub branch: Vec<Vertex>,
    pub paths: Vec<SubdivisionPath>,
    /// Required number of internal vertices on every path, if uniform.
    pub internal_per_path: Option<usize>,
    /// Whether the whole union is claimed to use distinct colors.
    pub rainbow: bool,
}

impl SubdivisionCert {
    fn trivial(branch: Vec<Vertex>) -> Self {
        SubdivisionCert {
            t: branch.len(),
            branch,
            paths: Vec::new(),
            internal_per_path: None,
            rainbow: true,
        }
    }

    fn relabel(mut self, map: &[Vertex]) -> Self {
        for b in &mut self.branch {
            *b = map[*b];
        }
        for p in &mut self.paths {
            for v in &mut p.vertices {
                *v = map[*v];
            }
        }
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.branch.len() + self.paths.iter().map(|p| p.internal().len()).sum::<usize>()
    }
}

fn check(
    n: usize,
    color: impl Fn(Vertex, Vertex) -> Option<Option<Color>>,
    cert: &SubdivisionCert,
    rainbow: bool,
) -> std::result::Result<(), String> {
    let t = cert.t;
    if cert.branch.len() != t {
        return Err(format!("{} branch vertices for t = {t}", cert.branch.len()));
    }
    let mut seen = vec![false; n];
    for &b in &cert.branch {
        if b >= n {
            return Err(format!("branch vertex {b} out of range"));
        }
        if std::mem::replace(&mut seen[b], true) {
            return Err(format!("branch vertex {b} repeated"));
        }
    }
    let pairs = t * t.saturating_sub(1) / 2;
    if cert.paths.len() != pairs {
        return Err(format!("{} paths, expected {pairs}", cert.paths.len()));
    }
    let mut covered = vec![false; t * t];
    let mut colors = Vec::new();
    for p in &cert.paths {
        let (a, b) = p.ends;
        if a >= b || b >= t {
            return Err(format!("bad path ends {:?}", p.ends));
        }
        if std::mem::replace(&mut covered[a * t + b], true) {
            return Err(format!("pair {:?} has two paths", p.ends));
        }
        let vs = &p.vertices;
        if vs.len() < 2 || vs[0] != cert.branch[a] || vs[vs.len() - 1] != cert.branch[b] {
            return Err(format!("path for {:?} does not join its branch vertices", p.ends));
        }
        if let Some(l) = cert.internal_per_path {
            if vs.len() != l + 2 {
                return Err(format!("path for {:?} has {} internal vertices, expected {l}", p.ends, vs.len() - 2));
            }
        }
        for &x in p.internal() {
            if x >= n {
                return Err(format!("vertex {x} out of range"));
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(format!("vertex {x} used twice"));
            }
        }
        for w in vs.windows(2) {
            match color(w[0], w[1]) {
                None => return Err(format!("{}-{} is not an edge", w[0], w[1])),
                Some(c) => colors.extend(c),
            }
        }
    }
    if rainbow {
        colors.sort_unstable();
        let total = colors.len();
        colors.dedup();
        if colors.len() != total {
            return Err("a color repeats".into());
        }
    }
    Ok(())
}

/// Why `cert` is not a valid subdivision of `g`, or `None` if it is.
pub fn subdivision_defect(g: &ColoredGraph, cert: &SubdivisionCert, rainbow: bool) -> Option<String> {
    let color = |u: Vertex, v: Vertex| {
        if u < g.n() && v < g.n() {
            g.color(u, v).map(Some)
        } else {
            None
        }
    };
    check(g.n(), color, cert, rainbow).err()
}

/// Checks paths exist, are internally disjoint, have the declared uniform
/// length and, with `rainbow`, use pairwise distinct colors.
pub fn validate_subdivision(g: &ColoredGraph, cert: &SubdivisionCert, rainbow: bool) -> bool {
    subdivision_defect(g, cert, rainbow).is_none()
}

/// [`validate_subdivision`] for an uncolored graph.
pub fn validate_subdivision_simple(g: &SimpleGraph, cert: &SubdivisionCert) -> bool {
    let edge = |u: Vertex, v: Vertex| (u < g.n() && v < g.n() && g.has_edge(u, v)).then_some(None);
    check(g.n(), edge, cert, false).is_ok()
}

fn sorted_common(a: &[Vertex], b: &[Vertex]) -> Vec<Vertex> {
    let (mut i, mut j, mut out) = (0, 0, Vec::new());
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Perfect matching of the left side via augmenting paths.
fn match_left(cands: &[Vec<usize>], right: usize) -> Option<Vec<usize>> {
    fn augment(l: usize, cands: &[Vec<usize>], owner: &mut [usize], seen: &mut [bool]) -> bool {
        for &r in &cands[l] {
            if std::mem::replace(&mut seen[r], true) {
                continue;
            }
            if owner[r] == usize::MAX || augment(owner[r], cands, owner, seen) {
                owner[r] = l;
                return true;
            }
        }
        false
    }
    let mut owner = vec![usize::MAX; right];
    for l in 0..cands.len() {
        let mut seen = vec![false; right];
        if !augment(l, cands, &mut owner, &mut seen) {
            return None;
        }
    }
    let mut out = vec![0; cands.len()];
    for (r, &l) in owner.iter().enumerate() {
        if l != usize::MAX {
            out[l] = r;
        }
    }
    Some(out)
}

fn branch_pairs(t: usize) -> Vec<(usize, usize)> {
    (0..t).flat_map(|a| (a + 1..t).map(move |b| (a, b))).collect()
}

fn skeleton_for(g: &SimpleGraph, branch: &[Vertex]) -> Option<SubdivisionCert> {
    let pairs = branch_pairs(branch.len());
    let cands: Vec<Vec<Vertex>> = pairs
        .iter()
        .map(|&(a, b)| {
            sorted_common(g.neighbors(branch[a]), g.neighbors(branch[b]))
                .into_iter()
                .filter(|m| !branch.contains(m))
                .collect()
        })
        .collect();
    let middles = match_left(&cands, g.n())?;
    Some(SubdivisionCert {
        t: branch.len(),
        branch: branch.to_vec(),
        paths: pairs
            .iter()
            .zip(&middles)
            .map(|(&(a, b), &m)| SubdivisionPath {
                ends: (a, b),
                vertices: vec![branch[a], m, branch[b]],
            })
            .collect(),
        internal_per_path: Some(1),
        rainbow: false,
    })
}

fn binom(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Calls `visit` on 1-subdivisions of K_t (t ≥ 2) until it returns true or
/// `limit` skeletons were offered. Returns whether `visit` accepted one.
fn one_subdivisions(
    g: &SimpleGraph,
    t: usize,
    exact: Option<bool>,
    limit: usize,
    mut visit: impl FnMut(SubdivisionCert) -> bool,
) -> bool {
    let n = g.n();
    if t < 2 || n < t + t * (t - 1) / 2 {
        return false;
    }
    let cands: Vec<Vertex> = (0..n).filter(|&v| g.degree(v) >= t - 1).collect();
    let exact = exact.unwrap_or(binom(cands.len(), t) <= EXACT_BRANCH_SETS);
    let mut offered = 0usize;
    if exact {
        let mut chosen = Vec::with_capacity(t);
        return choose(g, t, &cands, 0, &mut chosen, &mut offered, limit, &mut visit);
    }
    let mut seeds = cands.clone();
    seeds.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    for &seed in seeds.iter().take(64) {
        let mut set = vec![seed];
        while set.len() < t {
            let best = cands
                .iter()
                .filter(|v| !set.contains(v))
                .map(|&v| {
                    let score = set
                        .iter()
                        .map(|&a| {
                            sorted_common(g.neighbors(a), g.neighbors(v))
                                .iter()
                                .filter(|m| !set.contains(m) && **m != v)
                                .count()
                        })
                        .min()
                        .unwrap_or(0);
                    (score, std::cmp::Reverse(v))
                })
                .max();
            match best {
                Some((score, std::cmp::Reverse(v))) if score > 0 => set.push(v),
                _ => break,
            }
        }
        if set.len() < t {
            continue;
        }
        set.sort_unstable();
        if let Some(cert) = skeleton_for(g, &set) {
            offered += 1;
            if visit(cert) {
                return true;
            }
            if offered >= limit {
                return false;
            }
        }
    }
    false
}

#[allow(clippy::too_many_arguments)]
fn choose(
    g: &SimpleGraph,
    t: usize,
    cands: &[Vertex],
    from: usize,
    chosen: &mut Vec<Vertex>,
    offered: &mut usize,
    limit: usize,
    visit: &mut impl FnMut(SubdivisionCert) -> bool,
) -> bool {
    if chosen.len() == t {
        if let Some(cert) = skeleton_for(g, chosen) {
            *offered += 1;
            return visit(cert);
        }
        return false;
    }
    for i in from..cands.len() {
        if *offered >= limit || cands.len() - i < t - chosen.len() {
            break;
        }
        let v = cands[i];
        let ok = chosen.iter().all(|&a| {
            sorted_common(g.neighbors(a), g.neighbors(v))
                .iter()
                .any(|m| !chosen.contains(m) && *m != v)
        });
        if !ok {
            continue;
        }
        chosen.push(v);
        if choose(g, t, cands, i + 1, chosen, offered, limit, visit) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Finds a 1-subdivision of K_t (every edge subdivided once).
///
/// Exhaustive over branch sets while their count stays below a cap, greedy
/// on common neighborhoods above it. `t ≤ 1` gives a certificate with no paths.
pub fn find_one_subdivision(g: &SimpleGraph, t: usize) -> Option<SubdivisionCert> {
    one_subdivision_with(g, t, None)
}

/// [`find_one_subdivision`] forced to the exhaustive search.
pub fn find_one_subdivision_exact(g: &SimpleGraph, t: usize) -> Option<SubdivisionCert> {
    one_subdivision_with(g, t, Some(true))
}

fn one_subdivision_with(g: &SimpleGraph, t: usize, exact: Option<bool>) -> Option<SubdivisionCert> {
    if t <= 1 {
        return (g.n() >= t).then(|| SubdivisionCert::trivial((0..t).collect()));
    }
    let mut out = None;
    one_subdivisions(g, t, exact, usize::MAX, |c| {
        out = Some(c);
        true
    });
    out
}

enum PathLen {
    Exact(usize),
    AtMost(usize),
}

/// Depth-first search for a simple path with constrained internals and colors.
struct PathSearch<'a> {
    g: &'a ColoredGraph,
    internal_ok: &'a dyn Fn(Vertex) -> bool,
    color_ok: &'a dyn Fn(Color) -> bool,
    rainbow: bool,
    budget: u64,
}

impl PathSearch<'_> {
    /// Path from `from` to `to` (or to any vertex when `to` is `None`).
    fn find(&mut self, from: Vertex, to: Option<Vertex>, len: PathLen) -> Option<Witness> {
        let lens = match len {
            PathLen::Exact(k) => k..=k,
            PathLen::AtMost(k) => 1..=k,
        };
        for k in lens {
            let mut w = Witness {
                vertices: vec![from],
                colors: Vec::new(),
            };
            if self.dfs(&mut w, to, k) {
                return Some(w);
            }
            if self.budget == 0 {
                break;
            }
        }
        None
    }

    fn dfs(&mut self, w: &mut Witness, to: Option<Vertex>, k: usize) -> bool {
        if self.budget == 0 {
            return false;
        }
        self.budget -= 1;
        let x = w.end();
        let last = w.colors.len() + 1 == k;
        for &y in self.g.graph().neighbors(x) {
            if w.vertices.contains(&y) {
                continue;
            }
            if last {
                if to.is_some_and(|t| t != y) {
                    continue;
                }
            } else if Some(y) == to || !(self.internal_ok)(y) {
                continue;
            }
            let c = self.g.color(x, y).expect("adjacent");
            if !(self.color_ok)(c) || (self.rainbow && w.colors.contains(&c)) {
                continue;
            }
            w.vertices.push(y);
            w.colors.push(c);
            if last || self.dfs(w, to, k) {
                return true;
            }
            w.vertices.pop();
            w.colors.pop();
        }
        false
    }
}

fn reversed(w: &Witness) -> Witness {
    Witness {
        vertices: w.vertices.iter().rev().copied().collect(),
        colors: w.colors.iter().rev().copied().collect(),
    }
}

fn sample_parts(n: usize, colors: usize, s: usize, mode: PartMode, monochrome: bool, r: &mut Rng) -> (Vec<IdSet>, Vec<IdSet>) {
    let colors = colors.max(1);
    let (us, qs) = match mode {
        PartMode::Partition => (partition_parts(n, s, r), partition_parts(colors, s, r)),
        PartMode::Independent { p, p_c } => (independent_parts(n, s, p, r), independent_parts(colors, s, p_c, r)),
    };
    if monochrome {
        (us, vec![IdSet::full(colors); s])
    } else {
        (us, qs)
    }
}

fn check_part_mode(mode: PartMode) -> Result<()> {
    if let PartMode::Independent { p, p_c } = mode {
        for (name, v) in [("p", p), ("p_c", p_c)] {
            if !(v > 0.0 && v <= 1.0) {
                return Err(Error::Parameter { name, value: v, range: "(0, 1]" });
            }
        }
    }
    Ok(())
}

fn lowest_edge_cert(g: &ColoredGraph) -> Option<SubdivisionCert> {
    let &(u, v) = g.graph().edges().first()?;
    Some(SubdivisionCert {
        t: 2,
        branch: vec![u, v],
        paths: vec![SubdivisionPath {
            ends: (0, 1),
            vertices: vec![u, v],
        }],
        internal_per_path: None,
        rainbow: true,
    })
}

/// Randomized search for a rainbow subdivision of K_t.
///
/// Per retry: split vertices and colors into `s` random parts, grow a reach
/// set from every vertex inside every part, join pairs reachable in enough
/// parts into an auxiliary graph, find a 1-subdivision of K_t there and
/// replace its edges by stored witness paths (or a fresh search) while keeping
/// vertices and colors unused. Path lengths are not uniform.
pub fn find_rainbow_subdivision(g: &ColoredGraph, t: usize, cfg: &FinderConfig) -> Result<Option<SubdivisionCert>> {
    check_part_mode(cfg.part_mode)?;
    if t <= 1 {
        return Ok((g.n() >= t).then(|| SubdivisionCert::trivial((0..t).collect())));
    }
    if t == 2 {
        return Ok(lowest_edge_cert(g));
    }
    let min_edges = t * (t - 1);
    if g.graph().edge_count() < min_edges {
        return Ok(None);
    }
    for (hi, (h, map)) in finder_hosts(g, cfg, min_edges)?.iter().enumerate() {
        let n = h.n();
        let s = cfg
            .parts
            .unwrap_or_else(|| ((n.max(2) as f64).log2().ceil() as usize).clamp(2, 8))
            .max(1);
        let threshold = cfg.threshold.max(s.div_ceil(6));
        let max_len = cfg.max_len.unwrap_or(n);
        for retry in 0..cfg.retries {
            let mut r = rng::substream(cfg.seed, hi as u64, retry as u64);
            let (us, qs) = sample_parts(n, h.color_count(), s, cfg.part_mode, false, &mut r);
            let reach: Vec<Vec<ReachSet>> = (0..n)
                .map(|x| {
                    (0..s)
                        .map(|i| uq_reach_fixed(h, x, &us[i], &qs[i], max_len))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<_>>()?;
            let mut edges = Vec::new();
            for x in 0..n {
                for y in x + 1..n {
                    if (0..s).filter(|&i| reach[x][i].contains(y)).count() >= threshold {
                        edges.push((x, y));
                    }
                }
            }
            let aux = SimpleGraph::new(n, edges)?;
            let mut found = None;
            one_subdivisions(&aux, t, None, SKELETONS_PER_RETRY, |skel| {
                found = substitute_rainbow(h, &skel, &reach, max_len);
                found.is_some()
            });
            if let Some(cert) = found {
                let cert = cert.relabel(map);
                if validate_subdivision(g, &cert, true) {
                    return Ok(Some(cert));
                }
            }
        }
    }
    Ok(None)
}

fn substitute_rainbow(h: &ColoredGraph, skel: &SubdivisionCert, reach: &[Vec<ReachSet>], max_len: usize) -> Option<SubdivisionCert> {
    let mut used = vec![false; h.n()];
    for p in &skel.paths {
        for &v in &p.vertices {
            used[v] = true;
        }
    }
    let mut colors = IdSet::empty(h.color_count().max(1));
    let mut paths = Vec::with_capacity(skel.paths.len());
    for p in &skel.paths {
        let mut full = vec![p.vertices[0]];
        for half in p.vertices.windows(2) {
            let (x, y) = (half[0], half[1]);
            let fits = |w: &Witness| {
                w.internal().iter().all(|&v| !used[v]) && {
                    let mut cs = w.colors.clone();
                    cs.sort_unstable();
                    cs.dedup();
                    cs.len() == w.colors.len() && cs.iter().all(|&c| !colors.contains(c))
                }
            };
            let stored = reach[x]
                .iter()
                .filter_map(|rs| rs.path_to(y).cloned())
                .chain(reach[y].iter().filter_map(|rs| rs.path_to(x).map(reversed)))
                .find(|w| fits(w));
            let w = match stored {
                Some(w) => w,
                None => {
                    let internal_ok = |v: Vertex| !used[v];
                    let color_ok = |c: Color| !colors.contains(c);
                    PathSearch {
                        g: h,
                        internal_ok: &internal_ok,
                        color_ok: &color_ok,
                        rainbow: true,
                        budget: PATH_BUDGET,
                    }
                    .find(x, Some(y), PathLen::AtMost(max_len))?
                }
            };
            for &v in w.internal() {
                used[v] = true;
            }
            for &c in &w.colors {
                colors.insert(c);
            }
            full.extend(&w.vertices[1..]);
        }
        paths.push(SubdivisionPath {
            ends: p.ends,
            vertices: full,
        });
    }
    Some(SubdivisionCert {
        t: skel.t,
        branch: skel.branch.clone(),
        paths,
        internal_per_path: None,
        rainbow: true,
    })
}

/// Randomized search for a subdivision of K_t with exactly `ell` internal
/// vertices on every path, rainbow unless `cfg.monochrome`.
///
/// Per retry: split vertices (and colors) into `s` parts, record for every
/// pair and part whether a sampled path of half the target length joins them,
/// keep pairs seen in at least `cfg.threshold` parts, find a 1-subdivision of
/// K_t among those pairs and give its 2·C(t,2) half-edges distinct parts. The
/// middle vertices of the 1-subdivision become the hubs where halves meet;
/// odd path lengths split as ⌊·/2⌋ + ⌈·/2⌉.
pub fn find_large_subdivision(g: &ColoredGraph, t: usize, ell: usize, cfg: &FinderConfig) -> Result<Option<SubdivisionCert>> {
    check_part_mode(cfg.part_mode)?;
    if ell == 0 {
        return Err(Error::Parameter {
            name: "ell",
            value: 0.0,
            range: "[1, inf)",
        });
    }
    let rainbow = !cfg.monochrome;
    if t <= 1 {
        return Ok((g.n() >= t).then(|| SubdivisionCert::trivial((0..t).collect())));
    }
    let halves = t * (t - 1);
    let s = cfg.parts.unwrap_or(2 * halves);
    if s < halves {
        return Err(Error::Precondition(format!("{s} parts cannot give {halves} half-paths distinct parts")));
    }
    if t == 2 {
        return Ok(single_path(g, ell, rainbow));
    }
    let total = ell + 1;
    let (h1, h2) = (total / 2, total - total / 2);
    let lens: Vec<usize> = if h1 == h2 { vec![h1] } else { vec![h1, h2] };
    for (hi, (h, map)) in finder_hosts(g, cfg, halves)?.iter().enumerate() {
        let n = h.n();
        for retry in 0..cfg.retries {
            let mut r = rng::substream(cfg.seed, hi as u64, retry as u64);
            let (us, qs) = sample_parts(n, h.color_count(), s, cfg.part_mode, cfg.monochrome, &mut r);
            // ends[(x, part, length index)] maps endpoints to one witness each.
            let mut ends: HashMap<(Vertex, usize, usize), HashMap<Vertex, Witness>> = HashMap::new();
            let mut support: HashMap<(Vertex, Vertex), Vec<Vec<usize>>> = HashMap::new();
            for x in 0..n {
                for i in 0..s {
                    for (li, &len) in lens.iter().enumerate() {
                        let found = reach_exact_length(h, x, &us[i], &qs[i], len, cfg.monochrome);
                        for (y, _) in &found {
                            let key = (x.min(*y), x.max(*y));
                            let entry = support.entry(key).or_insert_with(|| vec![Vec::new(); lens.len()]);
                            if entry[li].last() != Some(&i) {
                                entry[li].push(i);
                            }
                        }
                        ends.insert((x, i, li), found.into_iter().collect());
                    }
                }
            }
            let mut edges: Vec<(Vertex, Vertex)> = support
                .iter()
                .filter(|(_, per_len)| per_len.iter().any(|parts| parts.len() >= cfg.threshold.max(1)))
                .map(|(&k, _)| k)
                .collect();
            edges.sort_unstable();
            let aux = SimpleGraph::new(n, edges)?;
            let ctx = HalfContext {
                h,
                us: &us,
                qs: &qs,
                ends: &ends,
                lens: &lens,
                rainbow,
            };
            let mut found = None;
            one_subdivisions(&aux, t, None, SKELETONS_PER_RETRY, |skel| {
                found = ctx.assign(&skel, h1, h2, ell);
                found.is_some()
            });
            if let Some(cert) = found {
                let cert = cert.relabel(map);
                if validate_subdivision(g, &cert, rainbow) {
                    return Ok(Some(cert));
                }
            }
        }
    }
    Ok(None)
}

fn single_path(g: &ColoredGraph, ell: usize, rainbow: bool) -> Option<SubdivisionCert> {
    let yes_v = |_: Vertex| true;
    let yes_c = |_: Color| true;
    for x in 0..g.n() {
        let mut search = PathSearch {
            g,
            internal_ok: &yes_v,
            color_ok: &yes_c,
            rainbow,
            budget: PATH_BUDGET,
        };
        if let Some(w) = search.find(x, None, PathLen::Exact(ell + 1)) {
            let (a, b) = (w.vertices[0], w.end());
            let mut vertices = w.vertices;
            if a > b {
                vertices.reverse();
            }
            return Some(SubdivisionCert {
                t: 2,
                branch: vec![a.min(b), a.max(b)],
                paths: vec![SubdivisionPath { ends: (0, 1), vertices }],
                internal_per_path: Some(ell),
                rainbow,
            });
        }
    }
    None
}

struct HalfContext<'a> {
    h: &'a ColoredGraph,
    us: &'a [IdSet],
    qs: &'a [IdSet],
    ends: &'a HashMap<(Vertex, usize, usize), HashMap<Vertex, Witness>>,
    lens: &'a [usize],
    rainbow: bool,
}

impl HalfContext<'_> {
    /// Candidate (part, path) choices for a half from `x` to `y` of length `len`
    /// whose internal vertices avoid the skeleton.
    fn candidates(&self, x: Vertex, y: Vertex, len: usize, skeleton: &[bool]) -> Vec<(usize, Witness)> {
        let li = self.lens.iter().position(|&l| l == len).expect("length index");
        let mut out = Vec::new();
        for i in 0..self.us.len() {
            let stored = self
                .ends
                .get(&(x, i, li))
                .and_then(|m| m.get(&y).cloned())
                .or_else(|| self.ends.get(&(y, i, li)).and_then(|m| m.get(&x)).map(reversed));
            let avoids = |w: &Witness| w.internal().iter().all(|&v| !skeleton[v]);
            match stored {
                Some(w) if avoids(&w) => out.push((i, w)),
                Some(_) => {
                    let internal_ok = |v: Vertex| self.us[i].contains(v) && !skeleton[v];
                    let color_ok = |c: Color| self.qs[i].contains(c);
                    let mut search = PathSearch {
                        g: self.h,
                        internal_ok: &internal_ok,
                        color_ok: &color_ok,
                        rainbow: self.rainbow,
                        budget: PATH_BUDGET / 10,
                    };
                    if let Some(w) = search.find(x, Some(y), PathLen::Exact(len)) {
                        out.push((i, w));
                    }
                }
                None => {}
            }
        }
        out
    }

    fn assign(&self, skel: &SubdivisionCert, h1: usize, h2: usize, ell: usize) -> Option<SubdivisionCert> {
        let n = self.h.n();
        let mut skeleton = vec![false; n];
        for p in &skel.paths {
            for &v in &p.vertices {
                skeleton[v] = true;
            }
        }
        let mut halves = Vec::new();
        for p in &skel.paths {
            let (a, m, b) = (p.vertices[0], p.vertices[1], p.vertices[2]);
            halves.push(self.candidates(a, m, h1, &skeleton));
            halves.push(self.candidates(m, b, h2, &skeleton));
        }
        if halves.iter().any(Vec::is_empty) {
            return None;
        }
        // Most constrained halves first.
        let mut order: Vec<usize> = (0..halves.len()).collect();
        order.sort_by_key(|&k| (halves[k].len(), k));
        let mut state = AssignState {
            used_parts: vec![false; self.us.len()],
            used_vertices: vec![false; n],
            used_colors: IdSet::empty(self.h.color_count().max(1)),
            pick: vec![usize::MAX; halves.len()],
            budget: ASSIGN_BUDGET,
            rainbow: self.rainbow,
        };
        if !state.search(&halves, &order, 0) {
            return None;
        }
        let paths = skel
            .paths
            .iter()
            .enumerate()
            .map(|(k, p)| {
                let first = &halves[2 * k][state.pick[2 * k]].1;
                let second = &halves[2 * k + 1][state.pick[2 * k + 1]].1;
                let mut vertices = first.vertices.clone();
                vertices.extend(&second.vertices[1..]);
                SubdivisionPath { ends: p.ends, vertices }
            })
            .collect();
        Some(SubdivisionCert {
            t: skel.t,
            branch: skel.branch.clone(),
            paths,
            internal_per_path: Some(ell),
            rainbow: self.rainbow,
        })
    }
}

struct AssignState {
    used_parts: Vec<bool>,
    used_vertices: Vec<bool>,
    used_colors: IdSet,
    pick: Vec<usize>,
    budget: u64,
    rainbow: bool,
}

impl AssignState {
    fn search(&mut self, halves: &[Vec<(usize, Witness)>], order: &[usize], depth: usize) -> bool {
        if depth == order.len() {
            return true;
        }
        let k = order[depth];
        for (ci, (part, w)) in halves[k].iter().enumerate() {
            if self.budget == 0 {
                return false;
            }
            self.budget -= 1;
            if self.used_parts[*part]
                || w.internal().iter().any(|&v| self.used_vertices[v])
                || (self.rainbow && w.colors.iter().any(|&c| self.used_colors.contains(c)))
            {
                continue;
            }
            self.used_parts[*part] = true;
            for &v in w.internal() {
                self.used_vertices[v] = true;
            }
            if self.rainbow {
                for &c in &w.colors {
                    self.used_colors.insert(c);
                }
            }
            self.pick[k] = ci;
            if self.search(halves, order, depth + 1) {
                return true;
            }
            self.used_parts[*part] = false;
            for &v in w.internal() {
                self.used_vertices[v] = false;
            }
            if self.rainbow {
                for &c in &w.colors {
                    self.used_colors.remove(c);
                }
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::Rng as _;

    fn hypercube(m: usize) -> ColoredGraph {
        let n = 1usize << m;
        let triples = (0..n).flat_map(|x| (0..m).filter(move |&i| x >> i & 1 == 0).map(move |i| (x, x | 1 << i, i)));
        ColoredGraph::from_triples(n, triples).unwrap()
    }

    /// Hubs `0..t`, and `copies` internally disjoint paths with `ell` internal
    /// vertices between every hub pair; every edge gets a fresh color.
    fn planted(t: usize, ell: usize, copies: usize) -> ColoredGraph {
        let mut next = t;
        let mut triples = Vec::new();
        for a in 0..t {
            for b in a + 1..t {
                for _ in 0..copies {
                    let mut prev = a;
                    for _ in 0..ell {
                        triples.push((prev, next, triples.len()));
                        prev = next;
                        next += 1;
                    }
                    triples.push((prev, b, triples.len()));
                }
            }
        }
        ColoredGraph::from_triples(next, triples).unwrap()
    }

    /// Independent oracle for t = 3: a 1-subdivision of K_3 is a 6-cycle.
    fn has_six_cycle(g: &SimpleGraph) -> bool {
        fn go(g: &SimpleGraph, path: &mut Vec<Vertex>) -> bool {
            let x = *path.last().unwrap();
            if path.len() == 6 {
                return g.has_edge(x, path[0]);
            }
            for &y in g.neighbors(x) {
                if y > path[0] && !path.contains(&y) {
                    path.push(y);
                    if go(g, path) {
                        return true;
                    }
                    path.pop();
                }
            }
            false
        }
        (0..g.n()).any(|s| go(g, &mut vec![s]))
    }

    #[test]
    fn one_subdivision_examples() {
        let c6 = SimpleGraph::cycle(6);
        let cert = find_one_subdivision(&c6, 3).unwrap();
        assert!(validate_subdivision_simple(&c6, &cert));
        assert!(find_one_subdivision(&SimpleGraph::complete(4), 3).is_none());
        let k33 = SimpleGraph::complete_bipartite(3, 3);
        let cert = find_one_subdivision(&k33, 3).unwrap();
        assert!(validate_subdivision_simple(&k33, &cert));
        let trivial = find_one_subdivision(&k33, 1).unwrap();
        assert!(trivial.paths.is_empty());
        assert!(validate_subdivision_simple(&k33, &trivial));
    }

    #[test]
    fn greedy_mode_finds_planted_skeleton() {
        let g = planted(4, 1, 3);
        let cert = one_subdivision_with(g.graph(), 4, Some(false)).unwrap();
        assert!(validate_subdivision_simple(g.graph(), &cert));
    }

    #[test]
    fn validator_examples() {
        let c6 = ColoredGraph::distinct_colors(SimpleGraph::cycle(6));
        let cert = find_one_subdivision(c6.graph(), 3).unwrap();
        assert!(validate_subdivision(&c6, &cert, true));

        let mut shared = cert.clone();
        shared.paths[1].vertices[1] = shared.paths[0].vertices[1];
        assert!(!validate_subdivision(&c6, &shared, false));

        let repeated = ColoredGraph::new_unchecked(c6.graph().clone(), vec![0, 1, 2, 3, 4, 0]).unwrap();
        assert!(!validate_subdivision(&repeated, &cert, true));
        assert!(validate_subdivision(&repeated, &cert, false));

        let mut wrong_len = cert.clone();
        wrong_len.internal_per_path = Some(2);
        assert!(subdivision_defect(&c6, &wrong_len, false).unwrap().contains("internal"));
    }

    #[test]
    fn rainbow_subdivision_examples() {
        let mut triples: Vec<_> = planted(3, 1, 1).graph().edges().iter().enumerate().map(|(i, &(u, v))| (u, v, i)).collect();
        // Noise: a pendant path hanging off hub 0.
        triples.push((0, 6, 10));
        triples.push((6, 7, 11));
        let g = ColoredGraph::from_triples(8, triples).unwrap();
        let cfg = FinderConfig {
            parts: Some(2),
            ..FinderConfig::default()
        };
        let cert = find_rainbow_subdivision(&g, 3, &cfg).unwrap().unwrap();
        assert!(validate_subdivision(&g, &cert, true));

        let two = find_rainbow_subdivision(&g, 2, &cfg).unwrap().unwrap();
        assert_eq!(two.paths.len(), 1);
        assert!(validate_subdivision(&g, &two, true));

        assert_eq!(find_rainbow_subdivision(&hypercube(3), 3, &FinderConfig::default()).unwrap(), None);
    }

    #[test]
    fn large_subdivision_with_single_internal_vertex() {
        let g = planted(3, 1, 1);
        let cert = find_large_subdivision(&g, 3, 1, &FinderConfig::default()).unwrap().unwrap();
        assert_eq!(cert.internal_per_path, Some(1));
        assert!(validate_subdivision(&g, &cert, true));
    }

    #[test]
    fn large_subdivision_planted_gadget() {
        let (t, ell) = (3, 3);
        let g = planted(t, ell, t * t);
        let cfg = FinderConfig {
            parts: Some(t * (t - 1)),
            part_mode: PartMode::Independent { p: 0.9, p_c: 0.9 },
            extract: false,
            ..FinderConfig::default()
        };
        let cert = find_large_subdivision(&g, t, ell, &cfg).unwrap().unwrap();
        assert_eq!(cert.internal_per_path, Some(ell));
        assert!(validate_subdivision(&g, &cert, true));

        let mono = FinderConfig { monochrome: true, ..cfg };
        let cert = find_large_subdivision(&g, t, ell, &mono).unwrap().unwrap();
        assert!(!cert.rainbow);
        assert!(validate_subdivision(&g, &cert, false));
    }

    #[test]
    fn large_subdivision_degenerate_cases() {
        let g = planted(3, 2, 1);
        let two = find_large_subdivision(&g, 2, 2, &FinderConfig::default()).unwrap().unwrap();
        assert_eq!(two.paths[0].vertices.len(), 4);
        assert!(validate_subdivision(&g, &two, true));
        assert!(find_large_subdivision(&g, 3, 0, &FinderConfig::default()).is_err());

        // K_{3,3} has no odd cycle; three paths with an odd edge count each would close one.
        let k33 = SimpleGraph::complete_bipartite(3, 3);
        let colors = k33.edges().iter().map(|&(u, v)| (u + v) % 3).collect();
        let k33 = ColoredGraph::new(k33, colors).unwrap();
        assert_eq!(find_large_subdivision(&k33, 3, 2, &FinderConfig::default()).unwrap(), None);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]
        #[test]
        fn one_subdivision_matches_six_cycle_oracle(seed in any::<u64>(), n in 3usize..=9, dens in 0.15f64..0.7) {
            let mut r = rng::stream(seed, 0);
            let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| r.gen_bool(dens)).collect();
            let g = SimpleGraph::new(n, edges).unwrap();
            let found = find_one_subdivision(&g, 3);
            prop_assert_eq!(found.is_some(), has_six_cycle(&g));
            if let Some(cert) = found {
                prop_assert!(validate_subdivision_simple(&g, &cert));
            }
        }
    }
}
