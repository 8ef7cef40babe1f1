//! Exact linear algebra over the rationals and the Gaussian rationals.

mod echelon;
mod field;
mod sparse;

pub use echelon::{
    inertia, inverse, kernel_basis, kernel_basis_reduced, rank, rank_with, solve_in_span,
    solve_sparse, Echelon, LinalgConfig, Reduction,
};
pub use field::{
    int, parse_scalar, primitive_integer_vector, ratio, scalar_to_string, Field, Gaussian, Scalar,
};
pub use sparse::{Matrix, SparseVec};
