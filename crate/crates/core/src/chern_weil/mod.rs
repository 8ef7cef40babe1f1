//! Invariant polynomials on `k` and the algebraic Chern–Weil map into
//! relative cohomology.

mod cw;
mod epsilon;
mod generators;
mod polynomial;

pub use cw::{curvature, cw, ChernWeil};
pub use epsilon::{epsilon_rank, epsilon_with, monomial_form, EpsilonResult, MonomialVerdict};
pub use generators::{
    chern_forms, generators_for, invariant_generators, perfect_matchings, pfaffian_form, pontryagin_forms,
    power_trace, symplectic_forms, CompactKind, CompactModel,
};
pub use polynomial::{
    check_morphism, multisets, poly_product, restrict_polynomial, InvarianceWitness, InvariantPolynomial,
};

#[cfg(test)]
mod tests;
