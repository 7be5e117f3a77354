//! Exact construction of contractors and connectors for the number of
//! B-flows of a graph over a finite Abelian group, with brute-force
//! verification oracles.
//!
//! The pipeline: pick a group Γ and a symmetric subset B (0 ∉ B = -B), take
//! the Cayley graph's adjacency spectrum exactly, and assemble a quantum
//! graph Z — a rational combination of parallel-edge gadgets — such that
//! gluing Z between two independent labelled vertices acts like identifying
//! them, for the B-flow counting parameter. Everything is integer or
//! cyclotomic arithmetic; no floats are used outside of test oracles.

pub mod abelian;
pub mod contractor;
pub mod error;
pub mod exactpoly;
pub mod graphs;
pub mod homflow;
pub mod verify;

pub use error::{Error, Result};
