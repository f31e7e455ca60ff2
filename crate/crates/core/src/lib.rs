//! Exact arithmetic on the Calkin-Wilf tree, its continued-fraction
//! addressing, left diagonals and Minkowski's question-mark function.

pub mod arith;
pub mod cf;
pub mod diagonal;
pub mod error;
pub mod golden;
pub mod qmark;
pub mod tree;
pub mod verify;

pub use arith::{Dyadic, Fraction};
pub use cf::ContinuedFraction;
pub use error::{Error, Result};
pub use tree::{Direction, NodeAddress, Path};
