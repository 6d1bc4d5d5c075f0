use rand::Rng as _;

use crate::error::{Error, Result};
use crate::graph::{Color, ColoredGraph, IdSet, Vertex};
use crate::rng::Rng;

/// `rounds` independent Bernoulli(`prob`) samples of `0..universe`.
pub fn sprinkle(universe: usize, rounds: usize, prob: f64, rng: &mut Rng) -> Result<Vec<IdSet>> {
    if rounds == 0 {
        return Err(Error::Parameter {
            name: "rounds",
            value: 0.0,
            range: "[1, inf)",
        });
    }
    if !(prob > 0.0 && prob <= 1.0) {
        return Err(Error::Parameter {
            name: "per_round_prob",
            value: prob,
            range: "(0, 1]",
        });
    }
    Ok((0..rounds)
        .map(|_| IdSet::from_ids(universe, (0..universe).filter(|_| prob >= 1.0 || rng.gen_bool(prob))))
        .collect())
}

/// Splits `0..universe` into `parts` disjoint random parts.
pub fn partition_parts(universe: usize, parts: usize, rng: &mut Rng) -> Vec<IdSet> {
    let mut out = vec![IdSet::empty(universe); parts];
    for x in 0..universe {
        out[rng.gen_range(0..parts)].insert(x);
    }
    out
}

/// `parts` independent Bernoulli(`prob`) samples; parts may overlap.
pub fn independent_parts(universe: usize, parts: usize, prob: f64, rng: &mut Rng) -> Vec<IdSet> {
    (0..parts)
        .map(|_| IdSet::from_ids(universe, (0..universe).filter(|_| rng.gen_bool(prob.clamp(0.0, 1.0)))))
        .collect()
}

/// One stored path: vertices from the source and the colors of its edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub vertices: Vec<Vertex>,
    pub colors: Vec<Color>,
}

impl Witness {
    fn start(v: Vertex) -> Self {
        Witness {
            vertices: vec![v],
            colors: Vec::new(),
        }
    }

    fn extend(&self, y: Vertex, c: Color) -> Self {
        let mut w = self.clone();
        w.vertices.push(y);
        w.colors.push(c);
        w
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn internal(&self) -> &[Vertex] {
        let k = self.vertices.len();
        if k <= 2 {
            &[]
        } else {
            &self.vertices[1..k - 1]
        }
    }

    pub fn end(&self) -> Vertex {
        *self.vertices.last().expect("nonempty witness")
    }
}

/// Vertices reachable from a source by sampled rainbow paths, level by level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReachSet {
    pub source: Vertex,
    /// `levels[k]` is B_k (cumulative, sorted); `levels[0] = [source]`.
    pub levels: Vec<Vec<Vertex>>,
    witness: Vec<Option<Witness>>,
}

impl ReachSet {
    /// Every vertex reached, including the source.
    pub fn reached(&self) -> &[Vertex] {
        self.levels.last().expect("level 0 always present")
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.witness.get(v).is_some_and(Option::is_some)
    }

    /// The stored path from the source to `v`.
    pub fn path_to(&self, v: Vertex) -> Option<&Witness> {
        self.witness.get(v).and_then(Option::as_ref)
    }
}

fn reach_impl(
    g: &ColoredGraph,
    v: Vertex,
    max_len: usize,
    internal_ok: impl Fn(usize, Vertex) -> bool,
    color_ok: impl Fn(usize, Color) -> bool,
) -> ReachSet {
    let n = g.n();
    let mut witness: Vec<Option<Witness>> = vec![None; n];
    witness[v] = Some(Witness::start(v));
    let mut levels = vec![vec![v]];
    for k in 1..=max_len {
        let prev = levels.last().expect("level").clone();
        let mut added = Vec::new();
        for &x in &prev {
            // x becomes internal unless it is the source; step k may use U_{k−1} only.
            if x != v && !(k >= 2 && internal_ok(k - 2, x)) {
                continue;
            }
            let wx = witness[x].clone().expect("reached vertex has a witness");
            for &y in g.graph().neighbors(x) {
                if witness[y].is_some() || wx.vertices.contains(&y) {
                    continue;
                }
                let c = g.color(x, y).expect("adjacent");
                if !color_ok(k - 1, c) || wx.colors.contains(&c) {
                    continue;
                }
                witness[y] = Some(wx.extend(y, c));
                added.push(y);
            }
        }
        let mut next = prev;
        next.extend(added);
        next.sort_unstable();
        levels.push(next);
    }
    ReachSet {
        source: v,
        levels,
        witness,
    }
}

/// Level recursion of the sprinkled reach argument.
///
/// Step `k` (1-based) extends from the source or from vertices of B_{k−1}
/// lying in `u_rounds[k−2]`, along edges with colors in `q_rounds[k−1]`,
/// skipping vertices and colors already on the extended vertex's witness.
pub fn uq_reach(g: &ColoredGraph, v: Vertex, u_rounds: &[IdSet], q_rounds: &[IdSet], max_len: usize) -> Result<ReachSet> {
    g.graph().check_ids(&[v])?;
    if q_rounds.len() < max_len || u_rounds.len() + 1 < max_len {
        return Err(Error::Precondition(format!(
            "max_len {max_len} needs {max_len} color rounds and {} vertex rounds, got {} and {}",
            max_len.saturating_sub(1),
            q_rounds.len(),
            u_rounds.len()
        )));
    }
    Ok(reach_impl(
        g,
        v,
        max_len,
        |i, x| u_rounds[i].contains(x),
        |i, c| q_rounds[i].contains(c),
    ))
}

/// [`uq_reach`] with the same `U` and `Q` in every round.
pub fn uq_reach_fixed(g: &ColoredGraph, v: Vertex, u: &IdSet, q: &IdSet, max_len: usize) -> Result<ReachSet> {
    g.graph().check_ids(&[v])?;
    Ok(reach_impl(g, v, max_len, |_, x| u.contains(x), |_, c| q.contains(c)))
}

/// Endpoints of `(U,Q)`-paths with exactly `len` edges from `v`, one witness each.
///
/// With `monochrome` the paths only need to be simple, not rainbow.
pub fn reach_exact_length(
    g: &ColoredGraph,
    v: Vertex,
    u: &IdSet,
    q: &IdSet,
    len: usize,
    monochrome: bool,
) -> Vec<(Vertex, Witness)> {
    let n = g.n();
    let mut frontier: Vec<Option<Witness>> = vec![None; n];
    frontier[v] = Some(Witness::start(v));
    for k in 1..=len {
        let mut next: Vec<Option<Witness>> = vec![None; n];
        for x in 0..n {
            let Some(wx) = &frontier[x] else { continue };
            if k >= 2 && !u.contains(x) {
                continue;
            }
            for &y in g.graph().neighbors(x) {
                if next[y].is_some() || wx.vertices.contains(&y) {
                    continue;
                }
                let c = g.color(x, y).expect("adjacent");
                if !q.contains(c) || (!monochrome && wx.colors.contains(&c)) {
                    continue;
                }
                next[y] = Some(wx.extend(y, c));
            }
        }
        frontier = next;
    }
    frontier
        .into_iter()
        .enumerate()
        .filter_map(|(y, w)| w.map(|w| (y, w)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::SimpleGraph;
    use crate::rng;
    use proptest::prelude::*;

    fn c5() -> ColoredGraph {
        ColoredGraph::distinct_colors(SimpleGraph::cycle(5))
    }

    #[test]
    fn sprinkle_examples() {
        let mut r = rng::stream(1, 0);
        let rounds = sprinkle(10, 3, 1.0, &mut r).unwrap();
        assert!(rounds.iter().all(|s| s.len() == 10));
        assert_eq!(sprinkle(10, 1, 0.5, &mut r).unwrap().len(), 1);
        assert!(sprinkle(10, 0, 0.5, &mut r).is_err());
        assert!(sprinkle(10, 2, 0.0, &mut r).is_err());
    }

    #[test]
    fn sprinkle_union_frequency() {
        let (q, rounds, trials) = (0.2f64, 3usize, 100_000usize);
        let target = 1.0 - (1.0 - q).powi(rounds as i32);
        let mut r = rng::stream(7, 0);
        let mut hits = 0usize;
        for _ in 0..trials {
            let s = sprinkle(1, rounds, q, &mut r).unwrap();
            if s.iter().any(|x| x.contains(0)) {
                hits += 1;
            }
        }
        let freq = hits as f64 / trials as f64;
        let sigma = (target * (1.0 - target) / trials as f64).sqrt();
        assert!((freq - target).abs() <= 3.0 * sigma, "freq {freq} vs {target}");
    }

    #[test]
    fn reach_examples() {
        let g = c5();
        let all_v = IdSet::full(5);
        let all_c = IdSet::full(5);
        let r = uq_reach_fixed(&g, 0, &all_v, &all_c, 2).unwrap();
        assert_eq!(r.reached(), &[0, 1, 2, 3, 4]);
        let none = uq_reach_fixed(&g, 0, &all_v, &IdSet::empty(5), 4).unwrap();
        assert_eq!(none.reached(), &[0]);
        let r = uq_reach_fixed(&g, 0, &all_v, &all_c, 1).unwrap();
        assert_eq!(r.reached(), &[0, 1, 4]);
        // Internal vertices outside U block longer paths.
        let r = uq_reach_fixed(&g, 0, &IdSet::empty(5), &all_c, 4).unwrap();
        assert_eq!(r.reached(), &[0, 1, 4]);
    }

    #[test]
    fn reach_needs_enough_rounds() {
        let g = c5();
        let q = vec![IdSet::full(5); 2];
        let u = vec![IdSet::full(5); 1];
        assert!(uq_reach(&g, 0, &u, &q, 2).is_ok());
        assert!(uq_reach(&g, 0, &u, &q, 3).is_err());
    }

    #[test]
    fn exact_length_on_cycle() {
        let g = c5();
        let ends: Vec<_> = reach_exact_length(&g, 0, &IdSet::full(5), &IdSet::full(5), 2, false)
            .into_iter()
            .map(|(y, _)| y)
            .collect();
        assert_eq!(ends, vec![2, 3]);
    }

    fn colored_random(n: usize, p: f64, seed: u64) -> ColoredGraph {
        let mut r = rng::stream(seed, 0);
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|_| r.gen_bool(p))
            .collect();
        // Greedy proper coloring with a few colors so that rainbow checks matter.
        let g = SimpleGraph::new(n, edges).unwrap();
        let mut colors = vec![usize::MAX; g.edge_count()];
        for (i, &(u, v)) in g.edges().iter().enumerate() {
            let used: Vec<usize> = g
                .edges()
                .iter()
                .enumerate()
                .filter(|(j, &(a, b))| colors[*j] != usize::MAX && (a == u || a == v || b == u || b == v))
                .map(|(j, _)| colors[j])
                .collect();
            colors[i] = (0..).find(|c| !used.contains(c)).unwrap();
        }
        ColoredGraph::new(g, colors).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn witnesses_are_sampled_rainbow_paths(seed in any::<u64>(), n in 3usize..12) {
            let g = colored_random(n, 0.4, seed);
            let mut r = rng::stream(seed, 1);
            let len = 4;
            let u = sprinkle(n, len - 1, 0.6, &mut r).unwrap();
            let q = sprinkle(g.color_count().max(1), len, 0.6, &mut r).unwrap();
            let reach = uq_reach(&g, 0, &u, &q, len).unwrap();
            let mut union_u = IdSet::empty(n);
            for s in &u { for x in s.iter() { union_u.insert(x); } }
            let mut union_q = IdSet::empty(g.color_count().max(1));
            for s in &q { for c in s.iter() { union_q.insert(c); } }
            for w in reach.levels.windows(2) {
                prop_assert!(w[0].iter().all(|x| w[1].contains(x)));
            }
            for &y in reach.reached() {
                let w = reach.path_to(y).unwrap();
                prop_assert_eq!(w.vertices[0], 0);
                prop_assert_eq!(w.end(), y);
                let mut vs = w.vertices.clone();
                vs.sort_unstable();
                vs.dedup();
                prop_assert_eq!(vs.len(), w.vertices.len());
                let mut cs = w.colors.clone();
                cs.sort_unstable();
                cs.dedup();
                prop_assert_eq!(cs.len(), w.colors.len());
                for (i, pair) in w.vertices.windows(2).enumerate() {
                    prop_assert_eq!(g.color(pair[0], pair[1]), Some(w.colors[i]));
                }
                prop_assert!(w.internal().iter().all(|&x| union_u.contains(x)));
                prop_assert!(w.colors.iter().all(|&c| union_q.contains(c)));
            }
        }
    }
}
