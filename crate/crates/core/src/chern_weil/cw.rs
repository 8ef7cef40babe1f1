use rayon::prelude::*;

use crate::ce::{Cochain, ComputeConfig, RelativeComplex};
use crate::error::{Error, Result};
use crate::exterior::{elements, mask_of, ExteriorBasis};
use crate::lie::{CartanDecomposition, CoefficientModule};
use crate::linalg::{int, ratio, Field, Scalar, SparseVec};

use super::generators::perfect_matchings;
use super::polynomial::InvariantPolynomial;

/// `Ω(x, y) = ½ π_k[π_p x, π_p y]` in `k`-coordinates; `x`, `y` in parent
/// coordinates.
pub fn curvature(dec: &CartanDecomposition, x: &SparseVec<Scalar>, y: &SparseVec<Scalar>) -> SparseVec<Scalar> {
    let nk = dec.k_dim();
    let keep_p = |v: SparseVec<Scalar>| SparseVec::from_pairs(v.into_entries().into_iter().filter(|(i, _)| *i >= nk).collect());
    let xp = keep_p(dec.to_adapted(x));
    let yp = keep_p(dec.to_adapted(y));
    let br = dec.adapted().bracket_sparse(&xp, &yp);
    SparseVec::from_pairs(br.into_entries().into_iter().filter(|(i, _)| *i < nk).collect()).scale(&ratio(1, 2))
}

/// Chern–Weil data for one decomposition: the relative complex (quotient
/// coordinates along `p`) and the curvature on pairs of `p` basis vectors.
pub struct ChernWeil {
    dec: CartanDecomposition,
    complex: RelativeComplex,
    /// `omega[a][b]` for `a < b`, in `k`-coordinates.
    omega: Vec<Vec<SparseVec<Scalar>>>,
}

impl ChernWeil {
    pub fn new(dec: &CartanDecomposition) -> Result<Self> {
        Self::with_config(dec, ComputeConfig::from_env())
    }

    pub fn with_config(dec: &CartanDecomposition, config: ComputeConfig) -> Result<Self> {
        let g = dec.parent();
        if !g.is_semisimple() {
            return Err(Error::NotSemisimple);
        }
        let complex = RelativeComplex::from_decomposition(dec, &CoefficientModule::trivial(g, 1))?.with_config(config);
        let nk = dec.k_dim();
        let q = dec.p_dim();
        let ad = dec.adapted();
        let half = ratio(1, 2);
        let omega = (0..q)
            .map(|a| {
                (0..q)
                    .map(|b| {
                        let br = ad.bracket_basis(nk + a, nk + b);
                        SparseVec::from_pairs(br.iter().filter(|(i, _)| *i < nk).map(|(i, c)| (*i, c * &half)).collect())
                    })
                    .collect()
            })
            .collect();
        Ok(Self { dec: dec.clone(), complex, omega })
    }

    pub fn decomposition(&self) -> &CartanDecomposition {
        &self.dec
    }

    pub fn complex(&self) -> &RelativeComplex {
        &self.complex
    }

    /// `CW(P)` as a relative cochain in quotient coordinates, with closedness
    /// and invariance certified.
    ///
    /// On basis vectors of `p`:
    /// `CW(P)(x_1, …, x_2m) = m! Σ_M sgn(M) P(Ω(x_a1, x_b1), …, Ω(x_am, x_bm))`
    /// over perfect matchings `M`, which is `2^-m Σ_σ sgn(σ) P(Ω(x_σ1, x_σ2), …)`.
    pub fn cw(&self, p: &InvariantPolynomial) -> Result<Cochain<Scalar>> {
        let k = self.dec.k_algebra();
        if **p.algebra() != k {
            return Err(Error::AlgebraMismatch);
        }
        let omega = self.cw_unchecked(p);
        if !self.complex.apply_d(&omega).is_zero() {
            return Err(Error::Internal(format!("CW({}) is not closed", p.name())));
        }
        if !self.complex.is_invariant(&omega) {
            return Err(Error::Internal(format!("CW({}) is not k-invariant", p.name())));
        }
        Ok(omega)
    }

    pub(crate) fn cw_unchecked(&self, p: &InvariantPolynomial) -> Cochain<Scalar> {
        let m = p.degree();
        let q = self.dec.p_dim();
        if 2 * m > q {
            return Cochain::zero(q, 1, 2 * m);
        }
        let fact: Scalar = (1..=m as i64).fold(int(1), |a, b| a * int(b));
        let basis = ExteriorBasis::new(q, 2 * m);
        let values: Vec<(u64, usize, Scalar)> = basis
            .subsets()
            .par_iter()
            .filter_map(|&mask| {
                let pts: Vec<usize> = elements(mask).collect();
                let mut acc = Scalar::zero();
                for (sign, matching) in perfect_matchings(&pts) {
                    let args: Vec<SparseVec<Scalar>> = matching.iter().map(|(a, b)| self.omega[*a][*b].clone()).collect();
                    if args.iter().any(SparseVec::is_zero) {
                        continue;
                    }
                    let v = p.eval(&args);
                    if !v.is_zero() {
                        acc += v * int(sign);
                    }
                }
                if acc.is_zero() {
                    None
                } else {
                    Some((mask, 0, acc * &fact))
                }
            })
            .collect();
        Cochain::from_values(q, 1, 2 * m, values)
    }

    /// Value of a quotient-coordinate cochain on `p` basis vectors given by
    /// their position in `p`.
    pub fn value_on(omega: &Cochain<Scalar>, p_indices: &[usize]) -> Scalar {
        let mut sorted = p_indices.to_vec();
        sorted.sort_unstable();
        let sign = crate::exterior::sort_sign(p_indices);
        omega.value(mask_of(&sorted), 0) * int(sign)
    }
}

/// One-shot `CW(P)` on `dec`.
pub fn cw(p: &InvariantPolynomial, dec: &CartanDecomposition) -> Result<Cochain<Scalar>> {
    ChernWeil::new(dec)?.cw(p)
}
