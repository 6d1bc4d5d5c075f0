use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use super::reach::{partition_parts, uq_reach_fixed};
use super::{finder_hosts, path_colors, FinderConfig, SearchOutcome};
use crate::error::{Error, Result};
use crate::graph::{Color, ColoredGraph, IdSet, Vertex};
use crate::rng;

/// A simple cycle `vertices[0] → … → vertices[k−1] → vertices[0]` with its edge colors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RainbowCycle {
    pub vertices: Vec<Vertex>,
    /// `colors[i]` is the color of the edge from `vertices[i]` to `vertices[i + 1]` (cyclically).
    pub colors: Vec<Color>,
}

impl RainbowCycle {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// True if this is a simple cycle of `g` whose edges carry distinct colors.
    pub fn validate(&self, g: &ColoredGraph) -> bool {
        let k = self.vertices.len();
        if k < 3 || self.colors.len() != k || self.vertices.iter().any(|&v| v >= g.n()) {
            return false;
        }
        let mut vs = self.vertices.clone();
        vs.sort_unstable();
        vs.dedup();
        if vs.len() != k {
            return false;
        }
        for i in 0..k {
            if g.color(self.vertices[i], self.vertices[(i + 1) % k]) != Some(self.colors[i]) {
                return false;
            }
        }
        let mut cs = self.colors.clone();
        cs.sort_unstable();
        cs.dedup();
        cs.len() == k
    }
}

/// Pulls a simple cycle out of a closed walk whose edges have distinct colors.
///
/// `walk` lists the vertices with `walk[0] == walk[last]`. The cycle returned
/// is the segment between the first vertex repeat found scanning left to right.
pub fn extract_cycle_from_circuit(g: &ColoredGraph, walk: &[Vertex]) -> Result<RainbowCycle> {
    if walk.len() < 2 || walk.first() != walk.last() {
        return Err(Error::Invalid("circuit is not a closed walk".into()));
    }
    g.graph().check_ids(walk)?;
    let colors = path_colors(g, walk).ok_or_else(|| Error::Invalid("circuit uses a non-edge".into()))?;
    let mut sorted = colors.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != colors.len() {
        return Err(Error::Invalid("circuit repeats a color".into()));
    }
    let mut seen = vec![usize::MAX; g.n()];
    for (j, &v) in walk.iter().enumerate() {
        if seen[v] != usize::MAX {
            let i = seen[v];
            if j - i < 3 {
                return Err(Error::Invalid("circuit backtracks along an edge".into()));
            }
            return Ok(RainbowCycle {
                vertices: walk[i..j].to_vec(),
                colors: colors[i..j].to_vec(),
            });
        }
        seen[v] = j;
    }
    unreachable!("closed walk always repeats its first vertex")
}

/// Randomized search following the four-part color partition argument.
///
/// Runs on the α-maximal part of `g` (α from `cfg.alpha`, default 1/log₂ n).
/// Each retry splits the colors into four random parts, grows a rainbow reach
/// set inside every part from a few random sources and joins two color-disjoint
/// paths meeting at a common vertex. `None` only means the retry budget ran out.
pub fn find_rainbow_cycle(g: &ColoredGraph, cfg: &FinderConfig) -> Result<Option<RainbowCycle>> {
    let n = g.n();
    if n < 3 || g.graph().edge_count() < 3 {
        return Ok(None);
    }
    let hosts = finder_hosts(g, cfg, 3)?;
    for (hi, (h, map)) in hosts.iter().enumerate() {
        let sources: Vec<Vertex> = (0..h.n()).filter(|&v| h.graph().degree(v) >= 2).collect();
        if sources.is_empty() {
            continue;
        }
        let max_len = cfg.max_len.unwrap_or(h.n());
        let all = IdSet::full(h.n());
        for retry in 0..cfg.retries {
            let mut r = rng::substream(cfg.seed, hi as u64, retry as u64);
            let parts = partition_parts(h.color_count().max(1), 4, &mut r);
            let mut order = sources.clone();
            order.shuffle(&mut r);
            for &v in order.iter().take(8) {
                if let Some(c) = cycle_through_parts(h, v, &all, &parts, max_len)? {
                    let cycle = RainbowCycle {
                        vertices: c.vertices.iter().map(|&x| map[x]).collect(),
                        colors: c.colors,
                    };
                    debug_assert!(cycle.validate(g));
                    return Ok(Some(cycle));
                }
            }
        }
    }
    Ok(None)
}

fn cycle_through_parts(
    h: &ColoredGraph,
    v: Vertex,
    all: &IdSet,
    parts: &[IdSet],
    max_len: usize,
) -> Result<Option<RainbowCycle>> {
    let reach = parts
        .iter()
        .map(|q| uq_reach_fixed(h, v, all, q, max_len))
        .collect::<Result<Vec<_>>>()?;
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            let Some(w) = reach[i]
                .reached()
                .iter()
                .copied()
                .find(|&w| w != v && reach[j].contains(w))
            else {
                continue;
            };
            let there = reach[i].path_to(w).expect("reached");
            let back = reach[j].path_to(w).expect("reached");
            let mut walk = there.vertices.clone();
            walk.extend(back.vertices.iter().rev().skip(1));
            return extract_cycle_from_circuit(h, &walk).map(Some);
        }
    }
    Ok(None)
}

/// Exhaustive backtracking over rainbow cycles of length at most `max_len`.
///
/// Each cycle is rooted at its smallest vertex. `node_budget` bounds the
/// number of search nodes; running out yields [`SearchOutcome::Indeterminate`].
pub fn find_rainbow_cycle_exact(g: &ColoredGraph, max_len: usize, node_budget: u64) -> SearchOutcome<RainbowCycle> {
    let n = g.n();
    let mut search = ExactSearch {
        g,
        max_len,
        budget: node_budget,
        nodes: 0,
        on_path: vec![false; n],
        used: IdSet::empty(g.color_count().max(1)),
        path: Vec::new(),
        colors: Vec::new(),
    };
    for s in 0..n {
        search.path = vec![s];
        search.on_path[s] = true;
        match search.extend(s) {
            Step::Found(c) => return SearchOutcome::Found(c),
            Step::OutOfBudget => return SearchOutcome::Indeterminate,
            Step::Done => {}
        }
        search.on_path[s] = false;
    }
    SearchOutcome::NoneExists
}

enum Step {
    Found(RainbowCycle),
    OutOfBudget,
    Done,
}

struct ExactSearch<'a> {
    g: &'a ColoredGraph,
    max_len: usize,
    budget: u64,
    nodes: u64,
    on_path: Vec<bool>,
    used: IdSet,
    path: Vec<Vertex>,
    colors: Vec<Color>,
}

impl ExactSearch<'_> {
    fn extend(&mut self, start: Vertex) -> Step {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Step::OutOfBudget;
        }
        let x = *self.path.last().expect("path starts at root");
        for &y in self.g.graph().neighbors(x) {
            let c = self.g.color(x, y).expect("adjacent");
            if self.used.contains(c) {
                continue;
            }
            if y == start {
                if self.path.len() >= 3 {
                    let mut colors = self.colors.clone();
                    colors.push(c);
                    return Step::Found(RainbowCycle {
                        vertices: self.path.clone(),
                        colors,
                    });
                }
                continue;
            }
            if y < start || self.on_path[y] || self.path.len() >= self.max_len {
                continue;
            }
            self.on_path[y] = true;
            self.used.insert(c);
            self.path.push(y);
            self.colors.push(c);
            let step = self.extend(start);
            self.path.pop();
            self.colors.pop();
            self.used.remove(c);
            self.on_path[y] = false;
            if !matches!(step, Step::Done) {
                return step;
            }
        }
        Step::Done
    }
}
