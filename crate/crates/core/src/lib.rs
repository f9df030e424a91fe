//! Constructive triangle hitting sets and packings for co-chain graphs whose
//! two sides have even size, with exact oracles to check them.

pub mod graph;
pub mod packing;
pub mod oracle;
pub mod recognize;
pub mod certify;
pub mod search;
pub mod io;
pub mod fuzz;
