//! Constructive packing primitives: 1-factorizations, clique-to-side packings
//! and maximum packings of complete graphs.

mod clique;
mod factorization;
mod side;

use thiserror::Error;

use crate::graph::{Edge, GraphError};

pub use clique::{
    base_packing, feder_count, leave, pack_clique, pack_clique_leaving, pack_clique_minus_edge,
    pack_clique_with_limit, CliquePackingCount, DEFAULT_MAX_CLIQUE,
};
pub use factorization::{near_one_factorization, one_factorization, Factorization};
pub use side::{pack_between, pack_side, side_bound, BetweenPacking};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PackingError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("a 1-factorization needs a positive even number of vertices, got {0}")]
    OddFactorization(usize),
    #[error("a near-1-factorization needs an odd number of vertices, got {0}")]
    EvenNearFactorization(usize),
    #[error("vertex {0} listed twice")]
    RepeatedVertex(usize),
    #[error("vertex set is not a clique: {0} is missing")]
    NotClique(Edge),
    #[error("vertex {s} is not adjacent to {k}")]
    NotComplete { s: usize, k: usize },
    #[error("vertex {0} lies in both sets")]
    Overlap(usize),
    #[error("clique order {n} exceeds the supported maximum {max}")]
    UnsupportedOrder { n: usize, max: usize },
    #[error("maximum packing of K_{n} covers every pair")]
    NoFreeEdge { n: usize },
    #[error("pair {0} is not inside the vertex set")]
    PairOutsideSet(Edge),
}
