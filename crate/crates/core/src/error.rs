use core::fmt;

use crate::graph::{Edge, Vertex};

/// Errors raised by graph construction, validation and the exact searches.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    EmptyGraph,
    SelfLoop(Vertex),
    DuplicateEdge(Edge),
    VertexOutOfRange {
        vertex: Vertex,
        vertex_count: usize,
    },
    IsolatedVertex(Vertex),
    NotAnEdge(Edge),
    /// A weight or probability outside `[0, 1]`.
    WeightOutOfRange(Edge),
    /// Incident weights at a vertex sum to more than 1.
    OverloadedVertex(Vertex),
    NotPerfect,
    EvenCyclePresent,
    /// The edge sets handed over do not partition the support of the matching.
    NotAPartition,
    InvalidDelta(usize),
    InvalidAlpha(usize),
    NotDivisible {
        value: usize,
        divisor: usize,
    },
    SearchBoundExceeded {
        vertices: usize,
        bound: usize,
    },
    /// A probability distribution of the named player is malformed.
    InvalidDistribution(&'static str, usize),
    NoPerfectMatching,
    TooFewDefenders {
        delta: usize,
        beta_prime: usize,
    },
    /// A constructor's precondition failed.
    Precondition(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyGraph => write!(f, "graph has no vertices"),
            Error::SelfLoop(v) => write!(f, "self-loop at vertex {v}"),
            Error::DuplicateEdge(e) => write!(f, "duplicate edge {e}"),
            Error::VertexOutOfRange { vertex, vertex_count } => {
                write!(f, "vertex {vertex} out of range for {vertex_count} vertices")
            }
            Error::IsolatedVertex(v) => write!(f, "vertex {v} is isolated"),
            Error::NotAnEdge(e) => write!(f, "{e} is not an edge of the graph"),
            Error::WeightOutOfRange(e) => write!(f, "weight on {e} is outside [0, 1]"),
            Error::OverloadedVertex(v) => {
                write!(f, "weights incident to vertex {v} sum to more than 1")
            }
            Error::NotPerfect => write!(f, "fractional matching is not perfect"),
            Error::EvenCyclePresent => write!(f, "support contains an even cycle"),
            Error::NotAPartition => write!(f, "edge sets do not partition the support"),
            Error::InvalidDelta(d) => write!(f, "invalid number of defenders {d}"),
            Error::InvalidAlpha(a) => write!(f, "invalid number of attackers {a}"),
            Error::NotDivisible { value, divisor } => {
                write!(f, "{divisor} does not divide {value}")
            }
            Error::SearchBoundExceeded { vertices, bound } => write!(
                f,
                "exact search on {vertices} vertices exceeds the bound of {bound}"
            ),
            Error::InvalidDistribution(player, index) => {
                write!(
                    f,
                    "{player} {index} does not have a valid probability distribution"
                )
            }
            Error::NoPerfectMatching => write!(f, "graph has no perfect matching"),
            Error::TooFewDefenders { delta, beta_prime } => write!(
                f,
                "{delta} defenders cannot cover the graph (minimum edge cover has {beta_prime} edges)"
            ),
            Error::Precondition(what) => write!(f, "precondition violated: {what}"),
        }
    }
}

impl core::error::Error for Error {}
