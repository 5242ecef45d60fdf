//! Hall-Littlewood branching graphs, finite-field counting oracles and
//! invariant measures, all in exact arithmetic.

pub mod error;
pub mod exactalg;
pub mod fflab;
pub mod graphs;
pub mod hallittlewood;
pub mod measures;
pub mod partitions;

pub use error::{Error, Result};
pub use partitions::Partition;
