//! Finite multigraphs, 2-labelled graphs, quantum graphs, and the algebraic
//! operations on them.

mod canon;
mod labelled;
pub(crate) mod multigraph;
mod quantum;

pub use labelled::Labelled2Graph;
pub use multigraph::{IncidenceMatrix, MultiGraph};
pub use quantum::QuantumGraph2;
