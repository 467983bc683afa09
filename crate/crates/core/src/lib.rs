//! Proof-complexity workbench: hard tautology generators, proof checkers for
//! sequent calculi and refutation systems, and feasible-interpolation
//! extractors whose outputs are verified against exhaustive oracles.

pub mod bits;
pub mod circuit;
pub mod classical;
pub mod dp;
pub mod error;
pub mod fo;
pub mod formula;
pub mod generators;
pub mod kernel;
pub mod nonclassical;
pub mod sexpr;

pub use bits::Limits;
pub use circuit::{Circuit, CircuitBuilder, Gate};
pub use error::{Error, Result};
pub use formula::{Assignment, AtomId, AtomName, AtomTable, Formula, Sequent};
