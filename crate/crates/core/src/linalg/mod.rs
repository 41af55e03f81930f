//! Exact sparse linear algebra over `Q(ζ_r)`.
//!
//! Reduced row echelon forms are canonical, so the elimination is free to
//! split a matrix into independent blocks (connected components of its
//! row/column incidence graph) and process them in parallel: the assembled
//! result is identical to the one produced by plain sequential elimination.

mod echelon;
mod op;
mod subspace;
mod svec;

pub use echelon::{rref_rows, Echelon};
pub use op::LinOp;
pub use subspace::Subspace;
pub use svec::SVec;

/// Result of [`LinOp::solve`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Found(SVec),
    NoSolution,
}

impl Solution {
    pub fn found(self) -> Option<SVec> {
        match self {
            Solution::Found(v) => Some(v),
            Solution::NoSolution => None,
        }
    }
}
