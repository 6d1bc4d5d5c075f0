use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("color {color} out of range ({count} colors)")]
    ColorOutOfRange { color: usize, count: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("edge coloring is not proper: edges {first:?} and {second:?} share vertex and color {color}")]
    ImproperColoring {
        first: (usize, usize),
        second: (usize, usize),
        color: usize,
    },
    #[error("coloring has {got} entries but the graph has {expected} edges")]
    ColoringLength { expected: usize, got: usize },
    #[error("hyperedge {0:?} does not have the declared uniformity {1}")]
    BadEdgeSize(Vec<usize>, usize),
    #[error("face {0:?} is not an (r-1)-face of the host hypergraph")]
    FaceNotInComplex(Vec<usize>),
    #[error("parameter {name} = {value} outside {range}")]
    Parameter {
        name: &'static str,
        value: f64,
        range: &'static str,
    },
    #[error("input of size {size} exceeds the exact-mode cap {cap}; use peel mode")]
    SizeCap { size: usize, cap: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse {
            line: e.line(),
            msg: e.to_string(),
        }
    }
}

pub(crate) fn check_unit_open(name: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value < 1.0 {
        Ok(())
    } else {
        Err(Error::Parameter {
            name,
            value,
            range: "(0, 1)",
        })
    }
}
