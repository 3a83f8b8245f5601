//! Crazy Frog Puzzle: instances, a solver, gadget generators and reductions
//! down to permutation reconstruction from differences.

pub mod board;
pub mod error;
pub mod gadgets;
pub mod generate;
pub mod io;
pub mod prd;
pub mod reduce;
pub mod solver;

pub use board::{Board2D, Cell, Cfp1dInstance, CfpInstance, Jump, Sign, SignVector, Trace};
pub use error::{Error, Result};
pub use solver::{solve, SearchLimits, SolveResult};
