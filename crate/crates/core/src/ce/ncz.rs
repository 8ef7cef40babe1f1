use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie::{CartanDecomposition, CoefficientModule, LieAlgebra};
use crate::linalg::{rank, Field, Gaussian, Matrix, Scalar, SparseVec};

use super::cochain::Cochain;
use super::cohomology::{ComputeConfig, FullCohomology, FullComplex};
use super::relative::{RelativeCohomology, RelativeComplex};

/// The map `κ^n: H^n((g,h); a) → H^n(g; a)` in representative bases.
#[derive(Clone, Debug)]
pub struct Kappa {
    pub degree: usize,
    /// Column `j` holds the class of the `j`-th relative representative.
    pub matrix: Matrix<Gaussian>,
    pub rank: usize,
    pub injective: bool,
}

/// Includes relative representatives into the full complex and reads off
/// their classes.
pub fn kappa(rel: &RelativeCohomology, full: &FullCohomology, n: usize) -> Result<Kappa> {
    let complex = rel.complex();
    let reps = rel.representatives(n);
    let full_betti = *full
        .betti()
        .get(n)
        .ok_or_else(|| Error::Internal(format!("full cohomology not computed in degree {n}")))?;
    let mut cols = Vec::with_capacity(reps.len());
    for r in &reps {
        let parent = complex.to_parent(r);
        let coords = full.class_of(&parent)?;
        cols.push(SparseVec::from_dense(&coords));
    }
    let matrix = Matrix::from_columns(full_betti, &cols);
    let r = rank(&matrix);
    Ok(Kappa { degree: n, rank: r, injective: r == reps.len(), matrix })
}

/// `μ`: a horizontal cochain on `(g, k)` in the adapted basis, read as a
/// cochain on the compact dual. Coordinates are unchanged; invariance is
/// re-checked in the dual.
pub fn mu_transport(dec: &CartanDecomposition, omega: &Cochain<Scalar>) -> Result<Cochain<Scalar>> {
    let trivial = CoefficientModule::trivial(dec.parent(), omega.module_dim());
    let rel = RelativeComplex::from_decomposition(&dec.adapted_decomposition(), &trivial)?;
    let quotient = rel.from_adapted(omega)?;
    let dual = dec.dual_decomposition()?;
    let dual_rel = RelativeComplex::from_decomposition(&dual, &CoefficientModule::trivial(dual.parent(), omega.module_dim()))?;
    if rel.is_invariant(&quotient) && !dual_rel.is_invariant(&quotient) {
        return Err(Error::Internal("k-invariance did not transfer to the compact dual".into()));
    }
    Ok(dual_rel.to_adapted(&quotient))
}

/// Graded cohomology with representatives and a class solver.
pub trait RepresentedCohomology<F: Field> {
    fn betti(&self) -> Vec<usize>;
    fn representatives(&self, n: usize) -> Vec<Cochain<F>>;
    fn class_of(&self, omega: &Cochain<F>) -> Result<Vec<F>>;
}

impl RepresentedCohomology<Scalar> for RelativeCohomology {
    fn betti(&self) -> Vec<usize> {
        RelativeCohomology::betti(self)
    }
    fn representatives(&self, n: usize) -> Vec<Cochain<Scalar>> {
        RelativeCohomology::representatives(self, n)
    }
    fn class_of(&self, omega: &Cochain<Scalar>) -> Result<Vec<Scalar>> {
        RelativeCohomology::class_of(self, omega)
    }
}

impl RepresentedCohomology<Gaussian> for FullCohomology {
    fn betti(&self) -> Vec<usize> {
        FullCohomology::betti(self)
    }
    fn representatives(&self, n: usize) -> Vec<Cochain<Gaussian>> {
        FullCohomology::representatives(self, n)
    }
    fn class_of(&self, omega: &Cochain<Gaussian>) -> Result<Vec<Gaussian>> {
        self.class_of_frame(omega)
    }
}

/// Whether `1` and the odd-degree classes generate `H^n` for all
/// `n ≤ top_degree`, tested by spanning with products of distinct odd
/// representatives (odd classes square to zero).
pub fn odd_generation_check<F: Field>(h: &impl RepresentedCohomology<F>, top_degree: usize) -> Result<bool> {
    let betti = h.betti();
    let top = top_degree.min(betti.len() - 1);
    let mut odd: Vec<Cochain<F>> = Vec::new();
    for n in (1..=top).step_by(2) {
        odd.extend(h.representatives(n));
    }
    for n in (2..=top).step_by(2) {
        if betti[n] == 0 {
            continue;
        }
        let mut span = Vec::new();
        products(&odd, 0, None, n, &mut span)?;
        let mut rows = Vec::with_capacity(span.len());
        for p in &span {
            rows.push(SparseVec::from_dense(&h.class_of(p)?));
        }
        let r = rank(&Matrix::from_rows(betti[n], rows));
        if r < betti[n] {
            return Ok(false);
        }
    }
    Ok(true)
}

fn products<F: Field>(
    odd: &[Cochain<F>],
    start: usize,
    acc: Option<Cochain<F>>,
    remaining: usize,
    out: &mut Vec<Cochain<F>>,
) -> Result<()> {
    if remaining == 0 {
        if let Some(a) = acc {
            out.push(a);
        }
        return Ok(());
    }
    for i in start..odd.len() {
        let d = odd[i].degree();
        if d > remaining {
            continue;
        }
        let next = match &acc {
            None => odd[i].clone(),
            Some(a) => a.cup(&odd[i])?,
        };
        products(odd, i + 1, Some(next), remaining - d, out)?;
    }
    Ok(())
}

/// Per-degree outcome of the n.c.z. test.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct NczDegree {
    pub degree: usize,
    pub relative_betti: usize,
    pub full_betti: Option<usize>,
    pub kappa_rank: usize,
    pub injective: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct NczReport {
    pub max_degree: usize,
    pub degrees: Vec<NczDegree>,
    /// κ injective in every degree up to `max_degree`.
    pub kappa_verdict: bool,
    /// The odd-generation test (trivial scalar coefficients only).
    pub odd_generation: Option<bool>,
    pub ncz: bool,
    /// First degree where κ fails to be injective.
    pub first_failure: Option<usize>,
}

/// Tests whether `h ≤ g` is non-cohomologous to zero through `max_degree`.
pub fn is_ncz(
    g: &LieAlgebra,
    h_basis: &[SparseVec<Scalar>],
    module: &CoefficientModule,
    max_degree: usize,
    config: &ComputeConfig,
) -> Result<NczReport> {
    let rel = RelativeComplex::new(g, h_basis, module)?.with_config(config.clone());
    ncz_from_relative(&rel, max_degree, config)
}

/// As [`is_ncz`] on a prepared relative complex.
pub fn ncz_from_relative(rel: &RelativeComplex, max_degree: usize, config: &ComputeConfig) -> Result<NczReport> {
    let rel_h = rel.cohomology(max_degree)?;
    let betti = rel_h.betti();
    let needed = (0..betti.len()).rev().find(|&n| betti[n] > 0).unwrap_or(0);
    let full = FullComplex::with_config(rel.parent(), rel.module(), config.clone()).cohomology(needed)?;
    ncz_from_results(&rel_h, &full, max_degree)
}

/// The n.c.z. verdict from relative and full cohomology. `full` must reach
/// every degree where the relative cohomology is nonzero.
pub fn ncz_from_results(rel_h: &RelativeCohomology, full: &FullCohomology, max_degree: usize) -> Result<NczReport> {
    let module = rel_h.complex().module();
    let betti = rel_h.betti();
    let full_betti = full.betti();
    let mut degrees = Vec::new();
    for n in 0..betti.len() {
        let (kappa_rank, injective) = if betti[n] == 0 {
            (0, true)
        } else {
            let k = kappa(rel_h, full, n)?;
            (k.rank, k.injective)
        };
        degrees.push(NczDegree {
            degree: n,
            relative_betti: betti[n],
            full_betti: full_betti.get(n).copied(),
            kappa_rank,
            injective,
        });
    }
    let first_failure = degrees.iter().find(|d| !d.injective).map(|d| d.degree);
    let kappa_verdict = first_failure.is_none();
    let odd_generation = if module.is_trivial() && module.dim() == 1 {
        let odd = odd_generation_check(rel_h, max_degree)?;
        if odd != kappa_verdict {
            return Err(Error::NczPathsDisagree { kappa: kappa_verdict, odd });
        }
        Some(odd)
    } else {
        None
    };
    Ok(NczReport {
        max_degree: betti.len() - 1,
        degrees,
        kappa_verdict,
        odd_generation,
        ncz: kappa_verdict,
        first_failure,
    })
}
