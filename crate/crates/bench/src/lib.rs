//! Fixed inputs shared by the benchmarks.

use robsub_core::constructions::{hypercube_colored, random_graph, random_rgraph};
use robsub_core::{ColoredGraph, RGraph, SimpleGraph};

pub const SEED: u64 = 7;

pub fn sparse_graph(n: usize) -> SimpleGraph {
    random_graph(n, 4.0 / n as f64, SEED).expect("valid probability")
}

pub fn dense_graph(n: usize) -> SimpleGraph {
    random_graph(n, 0.5, SEED).expect("valid probability")
}

/// Random graph with every edge in its own color.
pub fn rainbow_graph(n: usize, p: f64) -> ColoredGraph {
    ColoredGraph::distinct_colors(random_graph(n, p, SEED).expect("valid probability"))
}

pub fn hypercube(m: usize) -> ColoredGraph {
    hypercube_colored(m).expect("m in range")
}

pub fn dense_3graph(n: usize, p: f64) -> RGraph {
    random_rgraph(3, n, p, SEED).expect("valid probability")
}
