use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::{monomial_basis, GroupSpec, Monomial};
use crate::ce::RelativeCohomology;
use crate::error::{Error, Result};
use crate::linalg::{int, kernel_basis, rank, scalar_to_string, Field, Matrix, Scalar, SparseVec};

use super::cw::ChernWeil;
use super::polynomial::{poly_product, InvariantPolynomial};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialVerdict {
    pub monomial: String,
    pub nonzero: bool,
    /// Coordinates of the class in the relative representative basis.
    pub class: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpsilonResult {
    pub degree: usize,
    pub rank: usize,
    pub relative_betti: usize,
    /// Odd degrees vanish by Hopf's theorem; nothing is computed.
    pub hopf_vanishing: bool,
    pub monomials: Vec<MonomialVerdict>,
    pub nonzero_monomials: Vec<String>,
    /// Integer relations among the monomial classes.
    pub kernel: Vec<String>,
}

/// Realizes a monomial as a product of generator forms.
pub fn monomial_form(spec: &GroupSpec, forms: &[(usize, InvariantPolynomial)], m: &Monomial) -> Result<InvariantPolynomial> {
    let model = spec.k_model.as_ref().ok_or_else(|| Error::UnknownGroup(spec.name.clone()))?;
    let mut acc = InvariantPolynomial::constant(model.algebra.clone(), int(1));
    for g in m.factors() {
        let (_, f) = forms
            .iter()
            .find(|(i, _)| *i == g)
            .ok_or_else(|| Error::Internal(format!("no form for generator {}", spec.bk_presentation.generators[g].0)))?;
        acc = poly_product(&acc, f)?;
    }
    Ok(acc.with_name(&m.name(&spec.bk_presentation)))
}

/// `ε^n` on the monomials of degree `n` in the BK generators.
pub fn epsilon_rank(spec: &GroupSpec, n: usize) -> Result<EpsilonResult> {
    let cw = ChernWeil::new(&spec.dec)?;
    let rel = cw.complex().cohomology(n)?;
    epsilon_with(spec, &cw, &rel, n)
}

/// As [`epsilon_rank`] with precomputed Chern–Weil data and relative
/// cohomology through at least degree `n`.
pub fn epsilon_with(spec: &GroupSpec, cw: &ChernWeil, rel: &RelativeCohomology, n: usize) -> Result<EpsilonResult> {
    let betti = rel.betti().get(n).copied().unwrap_or(0);
    let pres = &spec.bk_presentation;
    let monomials = monomial_basis(pres, n);
    if n % 2 == 1 {
        return Ok(EpsilonResult {
            degree: n,
            rank: 0,
            relative_betti: betti,
            hopf_vanishing: true,
            monomials: Vec::new(),
            nonzero_monomials: Vec::new(),
            kernel: Vec::new(),
        });
    }
    let forms = spec.generator_forms(n)?;
    let classes: Vec<Vec<Scalar>> = monomials
        .par_iter()
        .map(|m| {
            if n > rel.max_degree() || betti == 0 {
                return Ok(vec![Scalar::zero(); betti]);
            }
            let p = monomial_form(spec, &forms, m)?;
            let omega = cw.cw(&p)?;
            rel.class_of(&omega)
        })
        .collect::<Result<_>>()?;
    let cols: Vec<SparseVec<Scalar>> = classes.iter().map(|c| SparseVec::from_dense(c)).collect();
    let mat = Matrix::from_columns(betti, &cols);
    let r = rank(&mat);
    let names: Vec<String> = monomials.iter().map(|m| m.name(pres)).collect();
    let kernel = kernel_basis(&mat).iter().map(|v| render_combination(v, &names)).collect();
    let verdicts: Vec<MonomialVerdict> = names
        .iter()
        .zip(&classes)
        .map(|(name, c)| MonomialVerdict {
            monomial: name.clone(),
            nonzero: c.iter().any(|x| !x.is_zero()),
            class: c.iter().map(scalar_to_string).collect(),
        })
        .collect();
    Ok(EpsilonResult {
        degree: n,
        rank: r,
        relative_betti: betti,
        hopf_vanishing: false,
        nonzero_monomials: verdicts.iter().filter(|v| v.nonzero).map(|v| v.monomial.clone()).collect(),
        monomials: verdicts,
        kernel,
    })
}

/// Writes an integer relation with its last coefficient positive, highest
/// index first, e.g. `2C_2 - C_1^2`.
fn render_combination(v: &SparseVec<Scalar>, names: &[String]) -> String {
    let flip = v.entries().last().is_some_and(|(_, c)| c < &Scalar::zero());
    let mut out = String::new();
    for (i, c) in v.entries().iter().rev() {
        let c = if flip { -c } else { c.clone() };
        let neg = c < Scalar::zero();
        let a = if neg { -c } else { c };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if a != int(1) {
            out.push_str(&if a.is_integer() { a.numer().to_string() } else { scalar_to_string(&a) });
        }
        out.push_str(&names[*i]);
    }
    out
}
