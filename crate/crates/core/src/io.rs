//! Text and JSON formats for graphs and hypergraphs.
//!
//! Edge lists hold one edge per line as `u v [color]`; hyperedge lists hold one
//! edge per line as space-separated vertex ids. `#` starts a comment. The
//! writers emit a `# vertices N` pragma so isolated vertices survive a round
//! trip, and `# uniformity R` for hyperedge lists.

use std::collections::HashMap;
use std::path::Path;

use serde::{de::DeserializeOwned, Serialize};

use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, GraphDoc, SimpleGraph};
use crate::hypergraph::{RGraph, RGraphDoc};

pub const FORMAT_VERSION: u32 = 1;

/// A graph read from an edge list, with the original label of each dense id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoadedGraph {
    pub graph: SimpleGraph,
    pub colors: Option<Vec<usize>>,
    pub labels: Vec<String>,
}

impl LoadedGraph {
    /// Colored view; rejects improper colorings unless `allow_improper`.
    pub fn colored(&self, allow_improper: bool) -> Result<ColoredGraph> {
        let colors = match &self.colors {
            Some(cs) => cs.clone(),
            None if self.graph.edge_count() == 0 => Vec::new(),
            None => return Err(Error::Invalid("edge list has no colors".into())),
        };
        if allow_improper {
            ColoredGraph::new_unchecked(self.graph.clone(), colors)
        } else {
            ColoredGraph::new(self.graph.clone(), colors)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoadedRGraph {
    pub graph: RGraph,
    pub labels: Vec<String>,
}

struct Lines {
    rows: Vec<(usize, Vec<String>)>,
    pragmas: HashMap<String, usize>,
}

fn tokenize(text: &str) -> Result<Lines> {
    let mut rows = Vec::new();
    let mut pragmas = HashMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if let Some(rest) = line.strip_prefix('#') {
            let mut it = rest.split_whitespace();
            if let (Some(key @ ("vertices" | "uniformity")), Some(val)) = (it.next(), it.next()) {
                let v = val.parse().map_err(|_| Error::Parse {
                    line: i + 1,
                    msg: format!("bad {key} pragma `{val}`"),
                })?;
                pragmas.insert(key.to_string(), v);
            }
            continue;
        }
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        rows.push((i + 1, body.split_whitespace().map(str::to_string).collect()));
    }
    Ok(Lines { rows, pragmas })
}

/// Maps labels to dense ids. All-integer labels are used directly; otherwise
/// labels are numbered in order of first appearance.
fn relabel<'a>(tokens: impl Iterator<Item = &'a String> + Clone, declared: Option<usize>) -> (HashMap<String, usize>, Vec<String>) {
    let numeric: Option<Vec<usize>> = tokens.clone().map(|t| t.parse::<usize>().ok()).collect();
    let mut map = HashMap::new();
    let mut labels = Vec::new();
    match numeric {
        Some(ids) => {
            let n = ids.iter().map(|&v| v + 1).max().unwrap_or(0).max(declared.unwrap_or(0));
            labels = (0..n).map(|v| v.to_string()).collect();
            for t in tokens {
                let v: usize = t.parse().expect("numeric");
                map.insert(t.clone(), v);
            }
        }
        None => {
            for t in tokens {
                if !map.contains_key(t) {
                    map.insert(t.clone(), labels.len());
                    labels.push(t.clone());
                }
            }
            if let Some(n) = declared {
                while labels.len() < n {
                    labels.push(format!("_{}", labels.len()));
                }
            }
        }
    }
    (map, labels)
}

pub fn parse_edge_list(text: &str) -> Result<LoadedGraph> {
    let lines = tokenize(text)?;
    let mut colored = None;
    for (line, row) in &lines.rows {
        if row.len() != 2 && row.len() != 3 {
            return Err(Error::Parse {
                line: *line,
                msg: format!("expected `u v [color]`, got {} fields", row.len()),
            });
        }
        let has = row.len() == 3;
        if *colored.get_or_insert(has) != has {
            return Err(Error::Parse {
                line: *line,
                msg: "either every edge or no edge may carry a color".into(),
            });
        }
    }
    let (map, labels) = relabel(lines.rows.iter().flat_map(|(_, r)| r[..2].iter()), lines.pragmas.get("vertices").copied());
    let colors_raw: Vec<&String> = lines.rows.iter().filter_map(|(_, r)| r.get(2)).collect();
    let (cmap, _) = relabel(colors_raw.iter().copied(), None);
    let mut edges = Vec::new();
    let mut triples = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for (line, r) in &lines.rows {
        let (u, v) = (map[&r[0]], map[&r[1]]);
        let msg = if u == v {
            Some(format!("self-loop at {}", r[0]))
        } else if !seen.insert((u.min(v), u.max(v))) {
            Some(format!("duplicate edge {}-{}", r[0], r[1]))
        } else {
            None
        };
        if let Some(msg) = msg {
            return Err(Error::Parse { line: *line, msg });
        }
        edges.push((u, v));
        if let Some(c) = r.get(2) {
            triples.push((u, v, cmap[c]));
        }
    }
    let graph = SimpleGraph::new(labels.len(), edges).map_err(|e| Error::Parse { line: 0, msg: e.to_string() })?;
    let colors = if colored == Some(true) {
        let mut cs = vec![0; graph.edge_count()];
        for (u, v, c) in triples {
            cs[graph.edge_index(u, v).expect("edge present")] = c;
        }
        Some(cs)
    } else {
        None
    };
    Ok(LoadedGraph { graph, colors, labels })
}

pub fn parse_hyperedge_list(text: &str, uniformity: Option<usize>) -> Result<LoadedRGraph> {
    let lines = tokenize(text)?;
    let r = uniformity
        .or_else(|| lines.pragmas.get("uniformity").copied())
        .or_else(|| lines.rows.first().map(|(_, row)| row.len()))
        .ok_or_else(|| Error::Parse {
            line: 0,
            msg: "cannot infer uniformity of an empty hyperedge list".into(),
        })?;
    for (line, row) in &lines.rows {
        if row.len() != r {
            return Err(Error::Parse {
                line: *line,
                msg: format!("expected {r} vertices, got {}", row.len()),
            });
        }
    }
    let (map, labels) = relabel(lines.rows.iter().flat_map(|(_, r)| r.iter()), lines.pragmas.get("vertices").copied());
    let mut seen = std::collections::BTreeSet::new();
    let mut edges: Vec<Vec<usize>> = Vec::with_capacity(lines.rows.len());
    for (line, row) in &lines.rows {
        let mut e: Vec<usize> = row.iter().map(|t| map[t]).collect();
        e.sort_unstable();
        let msg = if e.windows(2).any(|w| w[0] == w[1]) {
            Some("hyperedge repeats a vertex")
        } else if !seen.insert(e.clone()) {
            Some("duplicate hyperedge")
        } else {
            None
        };
        if let Some(msg) = msg {
            return Err(Error::Parse { line: *line, msg: msg.into() });
        }
        edges.push(e);
    }
    let graph = RGraph::new(r, labels.len(), edges).map_err(|e| Error::Parse { line: 0, msg: e.to_string() })?;
    Ok(LoadedRGraph { graph, labels })
}

pub fn write_edge_list(g: &SimpleGraph, colors: Option<&[usize]>) -> String {
    let mut out = format!("# vertices {}\n", g.n());
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        match colors {
            Some(cs) => out.push_str(&format!("{u} {v} {}\n", cs[i])),
            None => out.push_str(&format!("{u} {v}\n")),
        }
    }
    out
}

pub fn write_colored_edge_list(g: &ColoredGraph) -> String {
    write_edge_list(g.graph(), Some(g.colors()))
}

pub fn write_hyperedge_list(g: &RGraph) -> String {
    let mut out = format!("# uniformity {}\n# vertices {}\n", g.r(), g.n());
    for e in g.edges() {
        let row: Vec<String> = e.iter().map(usize::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn load_edge_list(path: impl AsRef<Path>) -> Result<LoadedGraph> {
    parse_edge_list(&std::fs::read_to_string(path)?)
}

pub fn load_hyperedge_list(path: impl AsRef<Path>, uniformity: Option<usize>) -> Result<LoadedRGraph> {
    parse_hyperedge_list(&std::fs::read_to_string(path)?, uniformity)
}

pub fn save_text(path: impl AsRef<Path>, text: &str) -> Result<()> {
    std::fs::write(path, text)?;
    Ok(())
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    Ok(serde_json::from_str(text)?)
}

pub fn graph_doc(g: &SimpleGraph, colors: Option<&[usize]>) -> GraphDoc {
    GraphDoc {
        format_version: FORMAT_VERSION,
        n: g.n(),
        edges: g.edges().to_vec(),
        colors: colors.map(<[usize]>::to_vec),
    }
}

pub fn graph_from_doc(doc: &GraphDoc) -> Result<(SimpleGraph, Option<Vec<usize>>)> {
    let g = SimpleGraph::new(doc.n, doc.edges.iter().copied())?;
    if let Some(cs) = &doc.colors {
        // Re-align colors with the canonical edge order.
        let mut aligned = vec![0; g.edge_count()];
        if cs.len() != doc.edges.len() {
            return Err(Error::ColoringLength {
                expected: doc.edges.len(),
                got: cs.len(),
            });
        }
        for (&(u, v), &c) in doc.edges.iter().zip(cs) {
            aligned[g.edge_index(u, v).expect("edge present")] = c;
        }
        return Ok((g, Some(aligned)));
    }
    Ok((g, None))
}

pub fn rgraph_doc(g: &RGraph) -> RGraphDoc {
    RGraphDoc::from(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_comments_colors_and_pragmas() {
        let text = "# a triangle\n# vertices 5\n0 1 7\n1 2 3 # trailing\n\n0 2 9\n";
        let g = parse_edge_list(text).unwrap();
        assert_eq!(g.graph.n(), 5);
        assert_eq!(g.graph.edge_count(), 3);
        let cg = g.colored(false).unwrap();
        assert_eq!(cg.color(0, 1), Some(7));
        assert_eq!(cg.color(1, 2), Some(3));
    }

    #[test]
    fn remaps_string_labels() {
        let g = parse_edge_list("a b\nb c\n").unwrap();
        assert_eq!(g.labels, vec!["a", "b", "c"]);
        assert_eq!(g.graph.edges(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn rejects_malformed_lines() {
        assert!(matches!(parse_edge_list("0 1 2 3\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_edge_list("0 1\n1 2 5\n"), Err(Error::Parse { line: 2, .. })));
        assert!(parse_edge_list("0 0\n").is_err());
        assert!(parse_hyperedge_list("0 1 2\n0 1\n", None).is_err());
    }

    #[test]
    fn improper_coloring_needs_opt_in() {
        let g = parse_edge_list("0 1 0\n0 2 0\n").unwrap();
        assert!(matches!(g.colored(false), Err(Error::ImproperColoring { .. })));
        assert!(!g.colored(true).unwrap().is_proper());
    }

    #[test]
    fn hyperedge_round_trip() {
        let g = RGraph::complete(3, 5);
        let text = write_hyperedge_list(&g);
        let back = parse_hyperedge_list(&text, None).unwrap();
        assert_eq!(back.graph, g);
        assert_eq!(write_hyperedge_list(&back.graph), text);
        let doc = to_json(&rgraph_doc(&g)).unwrap();
        let g2: RGraph = from_json::<RGraphDoc>(&doc).unwrap().try_into().unwrap();
        assert_eq!(g2, g);
    }

    proptest! {
        #[test]
        fn edge_list_round_trip(n in 1usize..12, raw in proptest::collection::vec((0usize..12, 0usize..12), 0..30)) {
            let edges: Vec<_> = raw.into_iter().filter(|(u, v)| u < &n && v < &n && u != v).collect();
            let g = SimpleGraph::new_dedup(n, edges).unwrap();
            let cg = ColoredGraph::distinct_colors(g.clone());
            let text = write_colored_edge_list(&cg);
            let back = parse_edge_list(&text).unwrap();
            prop_assert_eq!(&back.graph, &g);
            prop_assert_eq!(back.colored(false).unwrap(), cg.clone());
            prop_assert_eq!(write_colored_edge_list(&back.colored(false).unwrap()), text);
            let json = to_json(&graph_doc(&g, Some(cg.colors()))).unwrap();
            let (g2, c2) = graph_from_doc(&from_json(&json).unwrap()).unwrap();
            prop_assert_eq!(g2, g);
            prop_assert_eq!(c2.as_deref(), Some(cg.colors()));
        }
    }
}
