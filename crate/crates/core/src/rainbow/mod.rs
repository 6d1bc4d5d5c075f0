//! Sprinkled sampling, `(U,Q)`-path reachability and the rainbow finders.
//!
//! A `(U,Q)`-path is a rainbow path whose internal vertices lie in `U` and
//! whose edge colors lie in `Q`.

mod cycle;
mod reach;
mod subdivision;

use serde::{Deserialize, Serialize};

use crate::density::alpha_max_subgraph_auto;
use crate::error::{Error, Result};
use crate::graph::{Color, ColoredGraph, Vertex};

pub use cycle::{extract_cycle_from_circuit, find_rainbow_cycle, find_rainbow_cycle_exact, RainbowCycle};
pub use reach::{
    independent_parts, partition_parts, reach_exact_length, sprinkle, uq_reach, uq_reach_fixed, ReachSet, Witness,
};
pub use subdivision::{
    find_large_subdivision, find_one_subdivision, find_one_subdivision_exact, find_rainbow_subdivision,
    subdivision_defect, validate_subdivision, validate_subdivision_simple, SubdivisionCert, SubdivisionPath,
};

/// Sampling parameters of the reachability estimates.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleConfig {
    /// Vertex sample probability.
    pub p: f64,
    /// Color sample probability.
    pub p_c: f64,
    pub lambda: f64,
    /// Path-length budget.
    pub ell: usize,
    pub tau: f64,
    /// Sprinkling rounds for colors; vertices use one round fewer.
    pub rounds: usize,
    pub seed: u64,
}

impl SampleConfig {
    pub fn new(p: f64, p_c: f64, lambda: f64, ell: usize, tau: f64, seed: u64) -> Result<Self> {
        let cfg = SampleConfig {
            p,
            p_c,
            lambda,
            ell,
            tau,
            rounds: ell,
            seed,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let unit = |name, v: f64| {
            if v > 0.0 && v <= 1.0 {
                Ok(())
            } else {
                Err(Error::Parameter { name, value: v, range: "(0, 1]" })
            }
        };
        unit("p", self.p)?;
        unit("p_c", self.p_c)?;
        if self.lambda <= 1.0 {
            return Err(Error::Parameter {
                name: "lambda",
                value: self.lambda,
                range: "(1, inf)",
            });
        }
        if self.ell < 1 {
            return Err(Error::Parameter {
                name: "ell",
                value: self.ell as f64,
                range: "[1, inf)",
            });
        }
        if !(self.tau > 0.0 && self.tau < 0.5) {
            return Err(Error::Parameter {
                name: "tau",
                value: self.tau,
                range: "(0, 1/2)",
            });
        }
        Ok(())
    }

    /// Per-round vertex probability q with p = 1 − (1 − q)^{ℓ−1}.
    pub fn q(&self) -> f64 {
        per_round(self.p, self.ell.saturating_sub(1))
    }

    /// Per-round color probability q_c with p_c = 1 − (1 − q_c)^ℓ.
    pub fn q_c(&self) -> f64 {
        per_round(self.p_c, self.ell)
    }
}

/// Solves p = 1 − (1 − q)^rounds for q; a single round (or none) keeps p.
pub fn per_round(p: f64, rounds: usize) -> f64 {
    if rounds <= 1 || p >= 1.0 {
        p
    } else {
        1.0 - (1.0 - p).powf(1.0 / rounds as f64)
    }
}

/// Result of an exhaustive search with a node budget.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", content = "value", rename_all = "snake_case")]
pub enum SearchOutcome<T> {
    Found(T),
    NoneExists,
    /// The node budget ran out before the search space was exhausted.
    Indeterminate,
}

impl<T> SearchOutcome<T> {
    pub fn found(self) -> Option<T> {
        match self {
            SearchOutcome::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }
}

/// How vertices and colors are split into the `s` sampling parts.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PartMode {
    /// Each element lands in exactly one uniformly random part.
    Partition,
    /// Each element joins each part independently with the given probabilities.
    Independent { p: f64, p_c: f64 },
}

/// Knobs shared by the randomized finders.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FinderConfig {
    pub seed: u64,
    pub retries: usize,
    /// Number of sampling parts `s`; `None` picks a default from the input size.
    pub parts: Option<usize>,
    pub part_mode: PartMode,
    /// Longest witness path used by reach computations; `None` means unbounded.
    pub max_len: Option<usize>,
    /// Minimum number of parts a pair needs to become an auxiliary edge.
    pub threshold: usize,
    /// Density exponent used for the α-maximal extraction; `None` uses 1/log₂ n.
    pub alpha: Option<f64>,
    /// Run on the α-maximal part first (falling back to the whole graph).
    pub extract: bool,
    /// Sample vertices only; paths need not be rainbow.
    pub monochrome: bool,
}

impl Default for FinderConfig {
    fn default() -> Self {
        FinderConfig {
            seed: crate::rng::DEFAULT_SEED,
            retries: 32,
            parts: None,
            part_mode: PartMode::Partition,
            max_len: None,
            threshold: 1,
            alpha: None,
            extract: true,
            monochrome: false,
        }
    }
}

impl FinderConfig {
    pub fn with_seed(seed: u64) -> Self {
        FinderConfig {
            seed,
            ..Default::default()
        }
    }
}

/// α = 1/log₂ n, clamped into (0, 1).
pub fn default_alpha(n: usize) -> f64 {
    let a = 1.0 / (n.max(3) as f64).log2();
    a.clamp(1e-6, 0.99)
}

/// Graphs a finder runs on, in order: the α-maximal part (when enabled and
/// non-trivial) and then `g` itself, each with its map back to `g`'s ids.
pub(crate) fn finder_hosts(g: &ColoredGraph, cfg: &FinderConfig, min_edges: usize) -> Result<Vec<(ColoredGraph, Vec<Vertex>)>> {
    let n = g.n();
    let mut hosts = Vec::new();
    if cfg.extract && n > 0 {
        let alpha = cfg.alpha.unwrap_or_else(|| default_alpha(n));
        let (keep, _) = alpha_max_subgraph_auto(g.graph(), alpha)?;
        let (h, map) = g.induced_subgraph(&keep)?;
        if h.graph().edge_count() >= min_edges && h.n() < n {
            hosts.push((h, map));
        }
    }
    hosts.push((g.clone(), (0..n).collect()));
    Ok(hosts)
}

/// Colors along a vertex path, or `None` if some step is not an edge.
pub(crate) fn path_colors(g: &ColoredGraph, path: &[Vertex]) -> Option<Vec<Color>> {
    path.windows(2).map(|w| g.color(w[0], w[1])).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn per_round_inverts_sprinkling() {
        let cfg = SampleConfig::new(0.3, 0.6, 2.0, 5, 0.25, 1).unwrap();
        assert!((1.0 - (1.0 - cfg.q()).powi(4) - 0.3).abs() < 1e-12);
        assert!((1.0 - (1.0 - cfg.q_c()).powi(5) - 0.6).abs() < 1e-12);
        assert_eq!(per_round(1.0, 7), 1.0);
    }

    #[test]
    fn config_ranges() {
        assert!(SampleConfig::new(0.0, 0.5, 2.0, 3, 0.2, 0).is_err());
        assert!(SampleConfig::new(0.5, 0.5, 1.0, 3, 0.2, 0).is_err());
        assert!(SampleConfig::new(0.5, 0.5, 2.0, 0, 0.2, 0).is_err());
        assert!(SampleConfig::new(0.5, 0.5, 2.0, 3, 0.5, 0).is_err());
    }
}
