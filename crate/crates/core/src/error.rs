use thiserror::Error;

use crate::poly::MultiPoly;

#[derive(Debug, Error)]
pub enum Error {
    #[error("graph has {edges} edges, above the enumeration cap of {cap}; use a family closed form or raise the cap")]
    CapExceeded { edges: usize, cap: usize },

    #[error("{colorings} colorings exceed the oracle cap of {cap}")]
    ColoringCapExceeded { colorings: u128, cap: u128 },

    #[error("graph contains a loop; Z is only defined here for loopless graphs")]
    LoopyGraph,

    #[error("invalid size {n} for family `{kind}`")]
    BadSize { kind: String, n: usize },

    #[error("edge ({u}, {v}) has an endpoint outside 0..{n}")]
    InvalidEdge { u: usize, v: usize, n: usize },

    #[error("edge index {index} out of range ({edges} edges)")]
    InvalidEdgeIndex { index: usize, edges: usize },

    #[error("substitution produced a non-integer coefficient")]
    NonIntegerResult,

    #[error("polynomial is not expressible in q, t, v, w")]
    NotExpressible,

    #[error("degree {found} in {var} exceeds the vertex count {n}")]
    DegreeTooHigh { var: char, found: u32, n: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("expected degree {expected} in q, found {found}")]
    DegreeMismatch { expected: usize, found: u32 },

    #[error("bad decomposition: {0}")]
    BadDecomposition(String),

    #[error("specialization is the zero polynomial")]
    ZeroPolynomial,

    #[error("root finder did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("degenerate denominator in closed-form roots")]
    DegenerateDenominator,

    #[error("identity `{name}` failed; residual {residual}")]
    IdentityFailed { name: String, residual: Box<MultiPoly> },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("missing binding for {0}")]
    MissingBinding(char),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
