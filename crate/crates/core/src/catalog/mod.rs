//! The classical symmetric pairs and curated tables for `H^*(BK; ℤ)` and
//! `H^*(K; ℝ)`.

mod groups;
pub mod models;
mod presentation;

pub use groups::{
    bk_presentation, builtin_group, exterior_betti, k_cohomology_crosscheck, parse_family, Coefficients,
    Crosscheck, Family, GroupSpec,
};
pub use presentation::{monomial_basis, GradedRingPresentation, Monomial, SquareRelation};
