//! Reductions from grid-graph Hamiltonian path down to empty-board 1-D puzzles.

pub mod grid;
pub mod ham;
pub mod linear;
pub mod pipeline;

pub use grid::{ham_oracle, GridGraphInstance, Vertex};
pub use ham::{extract_ham_path, reduce_ham_to_cfp, witness_from_ham_path, ReductionLayout};
pub use linear::{normalize_start_leftmost, reduce_1d_to_empty, reduce_2d_to_1d, StageOutput};
pub use pipeline::{reduce_full, FullReduction, Provenance, StageRecord};
