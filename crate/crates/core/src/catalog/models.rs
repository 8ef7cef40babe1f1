//! Matrix models of the classical real forms. Every split model lists a
//! basis of `k` first, then a basis of `p`.

use crate::error::Result;
use crate::lie::{ComplexMatrix, MatrixLieAlgebra};
use crate::linalg::{Field, Gaussian};

fn e(n: usize, i: usize, j: usize) -> ComplexMatrix {
    ComplexMatrix::unit(n, i, j, Gaussian::one())
}

fn ie(n: usize, i: usize, j: usize) -> ComplexMatrix {
    ComplexMatrix::unit(n, i, j, Gaussian::i())
}

fn times_i(m: &ComplexMatrix) -> ComplexMatrix {
    m.scale(&Gaussian::i())
}

/// A matrix basis split as `k` then `p`, plus the representation of `k`
/// used for trace forms.
#[derive(Clone, Debug)]
pub struct SplitModel {
    pub labels: Vec<String>,
    pub matrices: Vec<ComplexMatrix>,
    pub k_dim: usize,
    /// Images of the `k` basis in some `u_N`.
    pub k_rep: Vec<ComplexMatrix>,
}

impl SplitModel {
    fn compact(labels: Vec<String>, matrices: Vec<ComplexMatrix>) -> Self {
        let k_dim = matrices.len();
        Self { k_rep: matrices.clone(), labels, matrices, k_dim }
    }

    pub fn build(&self) -> Result<MatrixLieAlgebra> {
        MatrixLieAlgebra::new(self.labels.clone(), self.matrices.clone())
    }
}

/// `E_jk - E_kj`, labelled `E_jk` (1-based).
fn antisymmetric_units(n: usize) -> (Vec<String>, Vec<ComplexMatrix>) {
    let mut labels = Vec::new();
    let mut mats = Vec::new();
    for j in 0..n {
        for k in j + 1..n {
            labels.push(format!("E_{}{}", j + 1, k + 1));
            mats.push(e(n, j, k).sub(&e(n, k, j)));
        }
    }
    (labels, mats)
}

fn symmetric_units(n: usize, prefix: &str) -> (Vec<String>, Vec<ComplexMatrix>) {
    let mut labels = Vec::new();
    let mut mats = Vec::new();
    for j in 0..n {
        for k in j + 1..n {
            labels.push(format!("{prefix}_{}{}", j + 1, k + 1));
            mats.push(e(n, j, k).add(&e(n, k, j)));
        }
    }
    (labels, mats)
}

fn cartan_diagonals(n: usize) -> Vec<ComplexMatrix> {
    (0..n.saturating_sub(1)).map(|j| e(n, j, j).sub(&e(n, j + 1, j + 1))).collect()
}

/// `so_n`: real antisymmetric matrices.
pub fn so(n: usize) -> SplitModel {
    let (labels, mats) = antisymmetric_units(n);
    SplitModel::compact(labels, mats)
}

/// `su_n`: `i·H_j`, `E_jk - E_kj`, `i(E_jk + E_kj)`.
pub fn su(n: usize) -> SplitModel {
    let mut labels = Vec::new();
    let mut mats = Vec::new();
    for (j, h) in cartan_diagonals(n).iter().enumerate() {
        labels.push(format!("D_{}", j + 1));
        mats.push(times_i(h));
    }
    let (l, m) = antisymmetric_units(n);
    labels.extend(l);
    mats.extend(m);
    let (l, m) = symmetric_units(n, "S");
    labels.extend(l);
    mats.extend(m.iter().map(times_i));
    SplitModel::compact(labels, mats)
}

/// `u_n = su_n ⊕ ℝ·iI`.
pub fn u(n: usize) -> SplitModel {
    let mut m = su(n);
    m.labels.insert(0, "Z".into());
    m.matrices.insert(0, ComplexMatrix::identity(n).scale(&Gaussian::i()));
    m.k_dim += 1;
    m.k_rep = m.matrices.clone();
    m
}

/// Compact `sp_n` as quaternionic `[[A, -conj B], [B, conj A]]` inside
/// `u_{2n}`, with `A ∈ u_n` and `B` complex symmetric.
pub fn sp_compact(n: usize) -> SplitModel {
    let (labels, mats) = sp_compact_parts(n);
    SplitModel::compact(labels, mats)
}

fn quaternionic(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let conj = |m: &ComplexMatrix| m.conj_transpose().transpose();
    ComplexMatrix::blocks(a, &conj(b).scale(&Gaussian::from_ints(-1, 0)), b, &conj(a))
}

fn sp_compact_parts(n: usize) -> (Vec<String>, Vec<ComplexMatrix>) {
    let z = ComplexMatrix::zeros(n);
    let mut labels = Vec::new();
    let mut mats = Vec::new();
    let u_n = u_basis_diagonal_first(n);
    for (l, a) in u_n {
        labels.push(format!("A:{l}"));
        mats.push(quaternionic(&a, &z));
    }
    for j in 0..n {
        for k in j..n {
            let b = if j == k { e(n, j, j) } else { e(n, j, k).add(&e(n, k, j)) };
            labels.push(format!("B_{}{}", j + 1, k + 1));
            mats.push(quaternionic(&z, &b));
            labels.push(format!("iB_{}{}", j + 1, k + 1));
            mats.push(quaternionic(&z, &times_i(&b)));
        }
    }
    (labels, mats)
}

/// `u_n` with the diagonal `iE_jj` first.
fn u_basis_diagonal_first(n: usize) -> Vec<(String, ComplexMatrix)> {
    let mut out = Vec::new();
    for j in 0..n {
        out.push((format!("iE_{}{}", j + 1, j + 1), ie(n, j, j)));
    }
    let (l, m) = antisymmetric_units(n);
    out.extend(l.into_iter().zip(m));
    let (l, m) = symmetric_units(n, "S");
    out.extend(l.into_iter().zip(m.iter().map(times_i)));
    out
}

/// `sl_n(ℝ)`: `k = so_n`, `p` = traceless symmetric.
pub fn sl_real(n: usize) -> SplitModel {
    let (mut labels, mut mats) = antisymmetric_units(n);
    let k_rep = mats.clone();
    let k_dim = mats.len();
    let (l, m) = symmetric_units(n, "S");
    labels.extend(l);
    mats.extend(m);
    for (j, h) in cartan_diagonals(n).into_iter().enumerate() {
        labels.push(format!("H_{}", j + 1));
        mats.push(h);
    }
    SplitModel { labels, matrices: mats, k_dim, k_rep }
}

/// `sl_n(ℂ)` as a real algebra: `k = su_n`, `p = i·su_n`.
pub fn sl_complex(n: usize) -> SplitModel {
    let k = su(n);
    let mut labels = k.labels.clone();
    let mut mats = k.matrices.clone();
    for (l, m) in k.labels.iter().zip(&k.matrices) {
        labels.push(format!("i{l}"));
        mats.push(times_i(m));
    }
    SplitModel { labels, matrices: mats, k_dim: k.k_dim, k_rep: k.matrices }
}

/// `sp_2n(ℝ)`: `k = [[A,B],[-B,A]] ≅ u_n` via `A + iB`, `p = [[A,B],[B,-A]]`
/// with `A`, `B` symmetric.
pub fn sp_real(n: usize) -> SplitModel {
    let z = ComplexMatrix::zeros(n);
    let neg = |m: &ComplexMatrix| m.scale(&Gaussian::from_ints(-1, 0));
    let sym = |j: usize, k: usize| if j == k { e(n, j, j) } else { e(n, j, k).add(&e(n, k, j)) };
    let mut labels = Vec::new();
    let mut mats = Vec::new();
    let mut k_rep = Vec::new();
    for j in 0..n {
        labels.push(format!("K_{}{}", j + 1, j + 1));
        let b = sym(j, j);
        mats.push(ComplexMatrix::blocks(&z, &b, &neg(&b), &z));
        k_rep.push(times_i(&b));
    }
    for j in 0..n {
        for k in j + 1..n {
            let a = e(n, j, k).sub(&e(n, k, j));
            labels.push(format!("A_{}{}", j + 1, k + 1));
            mats.push(ComplexMatrix::blocks(&a, &z, &z, &a));
            k_rep.push(a);
            let b = sym(j, k);
            labels.push(format!("K_{}{}", j + 1, k + 1));
            mats.push(ComplexMatrix::blocks(&z, &b, &neg(&b), &z));
            k_rep.push(times_i(&b));
        }
    }
    let k_dim = mats.len();
    for j in 0..n {
        for k in j..n {
            let a = sym(j, k);
            labels.push(format!("P_{}{}", j + 1, k + 1));
            mats.push(ComplexMatrix::blocks(&a, &z, &z, &neg(&a)));
            labels.push(format!("Q_{}{}", j + 1, k + 1));
            mats.push(ComplexMatrix::blocks(&z, &a, &a, &z));
        }
    }
    SplitModel { labels, matrices: mats, k_dim, k_rep }
}

/// `su*_{2n}` as quaternionic `[[A, -conj B], [B, conj A]]` with
/// `Re tr A = 0`: `k = sp_n` (compact), `p` = Hermitian members.
pub fn su_star(n: usize) -> SplitModel {
    let (mut labels, mut mats) = sp_compact_parts(n);
    let k_rep = mats.clone();
    let k_dim = mats.len();
    let z = ComplexMatrix::zeros(n);
    for (j, h) in cartan_diagonals(n).into_iter().enumerate() {
        labels.push(format!("A:H_{}", j + 1));
        mats.push(quaternionic(&h, &z));
    }
    let (l, m) = symmetric_units(n, "A:S");
    for (l, a) in l.into_iter().zip(m) {
        labels.push(l);
        mats.push(quaternionic(&a, &z));
    }
    for j in 0..n {
        for k in j + 1..n {
            let a = ie(n, j, k).sub(&ie(n, k, j));
            labels.push(format!("A:iE_{}{}", j + 1, k + 1));
            mats.push(quaternionic(&a, &z));
            let b = e(n, j, k).sub(&e(n, k, j));
            labels.push(format!("C_{}{}", j + 1, k + 1));
            mats.push(quaternionic(&z, &b));
            labels.push(format!("iC_{}{}", j + 1, k + 1));
            mats.push(quaternionic(&z, &times_i(&b)));
        }
    }
    SplitModel { labels, matrices: mats, k_dim, k_rep }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn skew_hermitian(m: &ComplexMatrix) -> bool {
        m.conj_transpose().add(m).is_zero()
    }

    fn hermitian(m: &ComplexMatrix) -> bool {
        m.conj_transpose().sub(m).is_zero()
    }

    #[test]
    fn dimensions() {
        assert_eq!(so(4).matrices.len(), 6);
        assert_eq!(su(3).matrices.len(), 8);
        assert_eq!(u(2).matrices.len(), 4);
        assert_eq!(sp_compact(2).matrices.len(), 10);
        let s = sl_real(3);
        assert_eq!((s.matrices.len(), s.k_dim), (8, 3));
        let c = sl_complex(2);
        assert_eq!((c.matrices.len(), c.k_dim), (6, 3));
        let p = sp_real(2);
        assert_eq!((p.matrices.len(), p.k_dim), (10, 4));
        let q = su_star(2);
        assert_eq!((q.matrices.len(), q.k_dim), (15, 10));
    }

    #[test]
    fn k_is_skew_and_p_is_hermitian() {
        for m in [sl_real(3), sl_complex(2), sp_real(2), su_star(2)] {
            for (i, x) in m.matrices.iter().enumerate() {
                if i < m.k_dim {
                    assert!(skew_hermitian(x), "{}", m.labels[i]);
                } else {
                    assert!(hermitian(x), "{}", m.labels[i]);
                }
            }
            assert!(m.k_rep.iter().all(skew_hermitian));
        }
    }

    #[test]
    fn models_close_under_brackets() {
        for m in [so(4), su(3), u(2), sp_compact(2), sl_real(3), sl_complex(2), sp_real(2), su_star(2)] {
            m.build().unwrap();
        }
    }

    #[test]
    fn compact_models_are_compact() {
        for m in [so(3), so(4), su(3), sp_compact(2)] {
            assert!(m.build().unwrap().algebra().is_compact_semisimple());
        }
    }
}
