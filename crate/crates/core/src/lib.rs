//! Attacker-defender games on graphs.
//!
//! In the game `AD(alpha, delta)` on a graph `G`, `alpha` attackers each pick a
//! vertex and `delta` defenders each pick an edge. An attacker scores 1 when no
//! defender's edge touches its vertex; a defender collects a fair share of the
//! attackers sitting on the endpoints of its edge.
//!
//! The crate is organised bottom-up:
//!
//! - [`graph`]: simple undirected graphs, cycles and covers.
//! - [`matching`]: maximum matchings, edge covers and fractional perfect
//!   matchings over exact rationals.
//! - [`reduce`]: the two support-shrinking reductions that bring a fractional
//!   perfect matching to single edges and isolated odd cycles.
//! - [`partition`]: delta-partitionable fractional perfect matchings and the
//!   exact searches around them.
//! - [`game`]: profiles, hitting probabilities, utilities and exact Nash
//!   equilibrium verification.
//! - [`construct`]: regime classification and Defense-Optimal equilibrium
//!   builders.
//!
//! All probabilities and weights are [`Rational`]s; no floating point is used
//! anywhere.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod construct;
mod error;
pub mod game;
pub mod graph;
pub mod matching;
pub mod partition;
pub mod reduce;

pub use error::Error;
pub use graph::{Cycle, Edge, EdgeSet, Graph, Vertex, VertexSet};

/// Arbitrary-precision rational number used for every weight and probability.
pub type Rational = num_rational::BigRational;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Vertex-count limits for the exponential exact searches.
///
/// Exceeding a limit is a hard [`Error::SearchBoundExceeded`], never a silent
/// approximation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    /// Minimum vertex cover and minimum dominating-style searches.
    pub vertex_cover: usize,
    /// Delta-partition and triangle-partition searches.
    pub partition: usize,
}

impl SearchLimits {
    pub const DEFAULT_VERTEX_COVER: usize = 20;
    pub const DEFAULT_PARTITION: usize = 16;

    /// Same bound for every search.
    pub fn uniform(bound: usize) -> Self {
        SearchLimits {
            vertex_cover: bound,
            partition: bound,
        }
    }
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            vertex_cover: Self::DEFAULT_VERTEX_COVER,
            partition: Self::DEFAULT_PARTITION,
        }
    }
}

pub(crate) fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(numer.into(), denom.into())
}

pub(crate) fn integer(value: usize) -> Rational {
    Rational::from_integer(value.into())
}
