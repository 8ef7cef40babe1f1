//! Toral elements with spectrum in ℚ(i) and the joint eigenbasis they induce.
//!
//! A cochain complex with trivial coefficients splits into weight spaces for
//! such a torus, and only weight zero carries cohomology, so large full
//! complexes are reduced to their weight-zero part.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use crate::linalg::{inverse, kernel_basis_reduced, rank, Field, Gaussian, Matrix, Scalar, SparseVec};

use super::LieAlgebra;

/// Eigenvalues of a rational matrix if it is diagonalizable over ℚ(i).
pub fn gaussian_spectrum(a: &Matrix<Scalar>) -> Option<Vec<(Gaussian, usize)>> {
    let n = a.rows();
    if n == 0 {
        return Some(Vec::new());
    }
    let mut lcm = BigInt::one();
    for r in a.row_vectors() {
        for (_, x) in r.iter() {
            lcm = lcm.lcm(x.denom());
        }
    }
    let scale = Scalar::from_integer(lcm);
    let scaled = a.scale(&scale);
    // eigenvalues of an integer matrix lying in ℚ(i) are Gaussian integers
    // bounded by the largest absolute row sum
    let bound = scaled
        .row_vectors()
        .iter()
        .map(|r| r.iter().fold(Scalar::from_i64(0), |acc, (_, x)| acc + x.abs()))
        .max()
        .unwrap_or_else(|| Scalar::from_i64(0))
        .to_integer()
        .to_i64()?;
    let g = scaled.map(|x| Gaussian::real(x.clone()));
    let mut found = Vec::new();
    let mut total = 0;
    for re in -bound..=bound {
        for im in 0..=bound {
            if re * re + im * im > bound * bound {
                continue;
            }
            let lambda = Gaussian::from_ints(re, im);
            let shifted = g.add(&Matrix::identity(n).scale(&lambda.neg()));
            let nullity = n - rank(&shifted);
            if nullity == 0 {
                continue;
            }
            total += nullity;
            found.push((lambda.clone(), nullity));
            if im != 0 {
                // a real matrix has conjugate eigenvalues with equal multiplicity
                total += nullity;
                found.push((lambda.conj(), nullity));
            }
        }
    }
    if total != n {
        return None;
    }
    let inv = Gaussian::real(scale.inv());
    Some(found.into_iter().map(|(l, m)| (l.mul(&inv), m)).collect())
}

/// A commuting family of ad-semisimple elements with a joint eigenbasis.
#[derive(Clone, Debug)]
pub struct WeightFrame {
    /// Torus elements in algebra coordinates.
    pub torus: Vec<SparseVec<Scalar>>,
    /// Joint eigenvectors, in algebra coordinates.
    pub basis: Vec<SparseVec<Gaussian>>,
    /// `weights[j][r]` is the eigenvalue of `ad torus[r]` on `basis[j]`.
    pub weights: Vec<Vec<Gaussian>>,
    /// Brackets of the eigenvectors, in eigenvector coordinates.
    pub table: Vec<Vec<SparseVec<Gaussian>>>,
}

impl WeightFrame {
    pub fn rank(&self) -> usize {
        self.torus.len()
    }

    /// Whether the weights of the basis vectors in `mask` sum to zero.
    pub fn is_weight_zero(&self, mask: u64) -> bool {
        let r = self.rank();
        (0..r).all(|k| {
            crate::exterior::elements(mask)
                .fold(Gaussian::zero(), |acc, j| acc.add(&self.weights[j][k]))
                .is_zero()
        })
    }
}

/// Searches basis elements for the largest commuting family of toral elements
/// (greedily, from every starting element) and refines to a joint eigenbasis.
/// Returns `None` when no element acts nontrivially and semisimply.
pub fn find_weight_frame(g: &LieAlgebra) -> Option<WeightFrame> {
    let n = g.dim();
    let spectra: Vec<Option<Vec<(Gaussian, usize)>>> = (0..n)
        .map(|i| {
            let ad = g.ad_basis(i);
            if ad.is_zero() {
                None
            } else {
                gaussian_spectrum(&ad)
            }
        })
        .collect();
    let commute = |a: usize, b: usize| g.bracket_basis(a, b).is_zero();
    let mut best: Vec<usize> = Vec::new();
    for start in 0..n {
        if spectra[start].is_none() {
            continue;
        }
        let mut chosen = vec![start];
        for i in 0..n {
            if i != start && spectra[i].is_some() && chosen.iter().all(|&c| commute(c, i)) {
                chosen.push(i);
            }
        }
        // drop elements whose ad is a combination of earlier ones
        let mut independent = Vec::new();
        let mut span: Vec<SparseVec<Scalar>> = Vec::new();
        for &c in &chosen {
            let flat = flatten(&g.ad_basis(c));
            span.push(flat);
            let m = Matrix::from_rows(n * n, span.clone());
            if rank(&m) == span.len() {
                independent.push(c);
            } else {
                span.pop();
            }
        }
        if independent.len() > best.len() {
            best = independent;
        }
    }
    if best.is_empty() {
        return None;
    }
    let mut blocks: Vec<(Vec<Gaussian>, Vec<SparseVec<Gaussian>>)> =
        vec![(Vec::new(), (0..n).map(SparseVec::unit).collect())];
    for &t in &best {
        let ad = g.ad_basis(t).map(|x| Gaussian::real(x.clone()));
        let spectrum = spectra[t].as_ref().unwrap();
        let mut next = Vec::new();
        for (weight, vectors) in blocks {
            let w = Matrix::from_columns(n, &vectors);
            let mut count = 0;
            for (lambda, _) in spectrum {
                let shifted = ad.add(&Matrix::identity(n).scale(&lambda.neg()));
                let kernel = kernel_basis_reduced(&shifted.mul(&w));
                if kernel.is_empty() {
                    continue;
                }
                count += kernel.len();
                let vs: Vec<SparseVec<Gaussian>> = kernel.iter().map(|c| w.mul_vec(c)).collect();
                let mut wt = weight.clone();
                wt.push(lambda.clone());
                next.push((wt, vs));
            }
            assert_eq!(count, vectors.len(), "torus elements are not simultaneously diagonalizable");
        }
        blocks = next;
    }
    let mut basis = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for (w, vs) in blocks {
        for v in vs {
            basis.push(v);
            weights.push(w.clone());
        }
    }
    let b = Matrix::from_columns(n, &basis);
    let binv = inverse(&b).expect("joint eigenvectors form a basis");
    let table = (0..n)
        .map(|a| {
            (0..n)
                .map(|c| {
                    let mut acc = SparseVec::new();
                    for (i, x) in basis[a].iter() {
                        for (j, y) in basis[c].iter() {
                            let br = g.bracket_basis(*i, *j);
                            if !br.is_zero() {
                                acc = acc.axpy(&x.mul(y), &br.map(|q| Gaussian::real(q.clone())));
                            }
                        }
                    }
                    binv.mul_vec(&acc)
                })
                .collect()
        })
        .collect();
    Some(WeightFrame { torus: best.into_iter().map(SparseVec::unit).collect(), basis, weights, table })
}

fn flatten(m: &Matrix<Scalar>) -> SparseVec<Scalar> {
    let n = m.cols();
    let mut pairs = Vec::new();
    for (r, row) in m.row_vectors().iter().enumerate() {
        for (c, x) in row.iter() {
            pairs.push((r * n + c, x.clone()));
        }
    }
    SparseVec::from_pairs(pairs)
}

/// Histogram of weights, for diagnostics.
pub fn weight_multiplicities(frame: &WeightFrame) -> HashMap<Vec<Gaussian>, usize> {
    let mut h = HashMap::new();
    for w in &frame.weights {
        *h.entry(w.clone()).or_insert(0) += 1;
    }
    h
}
