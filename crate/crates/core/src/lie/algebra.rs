use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{inertia, inverse, parse_scalar, rank, scalar_to_string, Field, Matrix, Scalar, SparseVec};

/// A finite-dimensional real Lie algebra given by rational structure
/// constants `[x_i, x_j] = Σ_k c_ij^k x_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra {
    dim: usize,
    labels: Vec<String>,
    table: Vec<Vec<SparseVec<Scalar>>>,
}

impl LieAlgebra {
    /// Builds and validates an algebra from bracket entries `(i, j, [x_i, x_j])`.
    ///
    /// Entries with `i > j` are accepted as long as they agree with the
    /// antisymmetric completion of the `i < j` ones. Missing pairs are zero.
    pub fn new(
        labels: Vec<String>,
        brackets: impl IntoIterator<Item = (usize, usize, SparseVec<Scalar>)>,
    ) -> Result<Self> {
        let algebra = Self::new_unchecked(labels, brackets)?;
        algebra.check_jacobi()?;
        Ok(algebra)
    }

    /// Like [`LieAlgebra::new`] but without the Jacobi check.
    pub fn new_unchecked(
        labels: Vec<String>,
        brackets: impl IntoIterator<Item = (usize, usize, SparseVec<Scalar>)>,
    ) -> Result<Self> {
        let dim = labels.len();
        if dim > crate::exterior::MAX_DIM {
            return Err(Error::InvalidStructure(format!(
                "dimension {dim} exceeds {}",
                crate::exterior::MAX_DIM
            )));
        }
        let mut table: Vec<Vec<Option<SparseVec<Scalar>>>> = vec![vec![None; dim]; dim];
        for (i, j, v) in brackets {
            if i >= dim || j >= dim {
                return Err(Error::InvalidStructure(format!("bracket index ({i}, {j}) out of range")));
            }
            if v.max_index().is_some_and(|m| m >= dim) {
                return Err(Error::InvalidStructure(format!("bracket ({i}, {j}) has result index out of range")));
            }
            if i == j {
                if !v.is_zero() {
                    return Err(Error::NotAntisymmetric { i, j });
                }
                continue;
            }
            if let Some(prev) = &table[i][j] {
                if prev != &v {
                    return Err(Error::NotAntisymmetric { i, j });
                }
            }
            if let Some(other) = &table[j][i] {
                if other.neg() != v {
                    return Err(Error::NotAntisymmetric { i, j });
                }
            }
            table[j][i] = Some(v.neg());
            table[i][j] = Some(v);
        }
        let table = table
            .into_iter()
            .map(|row| row.into_iter().map(Option::unwrap_or_default).collect())
            .collect();
        Ok(Self { dim, labels, table })
    }

    pub fn abelian(dim: usize) -> Self {
        let labels = (0..dim).map(|i| format!("x{i}")).collect();
        Self::new_unchecked(labels, []).expect("abelian algebra")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.dim);
        self.labels = labels;
        self
    }

    /// `[x_i, x_j]` for basis elements.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &SparseVec<Scalar> {
        &self.table[i][j]
    }

    pub fn bracket_sparse(&self, x: &SparseVec<Scalar>, y: &SparseVec<Scalar>) -> SparseVec<Scalar> {
        let mut acc = SparseVec::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                let c = &self.table[*i][*j];
                if !c.is_zero() {
                    acc = acc.axpy(&a.mul(b), c);
                }
            }
        }
        acc
    }

    /// Bracket of two coordinate vectors.
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
        for v in [x, y] {
            if v.len() != self.dim {
                return Err(Error::DimensionMismatch { expected: self.dim, found: v.len() });
            }
        }
        Ok(self
            .bracket_sparse(&SparseVec::from_dense(x), &SparseVec::from_dense(y))
            .to_dense(self.dim))
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().all(|row| row.iter().all(SparseVec::is_zero))
    }

    fn jacobi_residual(&self, i: usize, j: usize, k: usize) -> SparseVec<Scalar> {
        let e = |n: usize| SparseVec::unit(n);
        let t1 = self.bracket_sparse(&e(i), self.bracket_basis(j, k));
        let t2 = self.bracket_sparse(&e(j), self.bracket_basis(k, i));
        let t3 = self.bracket_sparse(&e(k), self.bracket_basis(i, j));
        t1.add(&t2).add(&t3)
    }

    /// Checks the Jacobi identity on every basis triple.
    pub fn check_jacobi(&self) -> Result<()> {
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for k in j + 1..self.dim {
                    let r = self.jacobi_residual(i, j, k);
                    if !r.is_zero() {
                        return Err(Error::JacobiViolation { i, j, k, residual: r.to_dense(self.dim) });
                    }
                }
            }
        }
        Ok(())
    }

    /// Matrix of `ad x_i` (column `j` holds `[x_i, x_j]`).
    pub fn ad_basis(&self, i: usize) -> Matrix<Scalar> {
        Matrix::from_columns(self.dim, &self.table[i])
    }

    pub fn ad(&self, x: &SparseVec<Scalar>) -> Matrix<Scalar> {
        let cols: Vec<SparseVec<Scalar>> =
            (0..self.dim).map(|j| self.bracket_sparse(x, &SparseVec::unit(j))).collect();
        Matrix::from_columns(self.dim, &cols)
    }

    /// `B(x_i, x_j) = tr(ad x_i ∘ ad x_j)`.
    pub fn killing_form(&self) -> Matrix<Scalar> {
        let ads: Vec<Matrix<Scalar>> = (0..self.dim).map(|i| self.ad_basis(i)).collect();
        let mut rows = Vec::with_capacity(self.dim);
        for i in 0..self.dim {
            let mut row = Vec::with_capacity(self.dim);
            for j in 0..self.dim {
                row.push(ads[i].mul(&ads[j]).trace());
            }
            rows.push(row);
        }
        Matrix::from_dense(&rows)
    }

    pub fn is_semisimple(&self) -> bool {
        rank(&self.killing_form()) == self.dim
    }

    /// Inertia `(positive, negative, zero)` of the Killing form.
    pub fn killing_signature(&self) -> (usize, usize, usize) {
        inertia(&self.killing_form())
    }

    pub fn is_compact_semisimple(&self) -> bool {
        self.dim == 0 || self.killing_signature() == (0, self.dim, 0)
    }

    /// The same algebra in the basis given by the columns of `basis`.
    pub fn change_basis(&self, basis: &Matrix<Scalar>, labels: Vec<String>) -> Result<Self> {
        if basis.rows() != self.dim || basis.cols() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: basis.cols() });
        }
        let inv = inverse(basis).ok_or_else(|| Error::NotComplementary("basis matrix is singular".into()))?;
        let cols = basis.columns();
        let mut entries = Vec::new();
        for a in 0..self.dim {
            for b in a + 1..self.dim {
                let br = self.bracket_sparse(&cols[a], &cols[b]);
                let coords = inv.mul_vec(&br);
                if !coords.is_zero() {
                    entries.push((a, b, coords));
                }
            }
        }
        Self::new_unchecked(labels, entries)
    }

    /// Negates every structure constant (an isomorphic algebra via `x ↦ -x`).
    pub fn direct_sum(&self, other: &LieAlgebra) -> LieAlgebra {
        let shift = self.dim;
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        let mut entries = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                entries.push((i, j, self.table[i][j].clone()));
            }
        }
        for i in 0..other.dim {
            for j in i + 1..other.dim {
                entries.push((i + shift, j + shift, other.table[i][j].reindex(|k| k + shift)));
            }
        }
        Self::new_unchecked(labels, entries).expect("direct sum of valid algebras")
    }

    pub fn to_document(&self) -> AlgebraDocument {
        let mut brackets = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let v = &self.table[i][j];
                if !v.is_zero() {
                    brackets.push(BracketEntry {
                        i,
                        j,
                        result: v.iter().map(|(k, c)| (*k, scalar_to_string(c))).collect(),
                    });
                }
            }
        }
        AlgebraDocument { dim: self.dim, basis: self.labels.clone(), brackets }
    }

    pub fn from_document(doc: &AlgebraDocument) -> Result<Self> {
        if doc.basis.len() != doc.dim {
            return Err(Error::Parse(format!(
                "basis has {} names but dim is {}",
                doc.basis.len(),
                doc.dim
            )));
        }
        let mut entries = Vec::new();
        for b in &doc.brackets {
            if b.i >= b.j {
                return Err(Error::Parse(format!("bracket entry ({}, {}) must have i < j", b.i, b.j)));
            }
            let mut pairs = Vec::new();
            for (k, s) in &b.result {
                pairs.push((*k, parse_scalar(s).map_err(Error::Parse)?));
            }
            entries.push((b.i, b.j, SparseVec::from_pairs(pairs)));
        }
        Self::new(doc.basis.clone(), entries)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: AlgebraDocument = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_document(&doc)
    }
}

/// Wire format of a Lie algebra.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraDocument {
    pub dim: usize,
    pub basis: Vec<String>,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub result: Vec<(usize, String)>,
}

/// `sl_2` in the basis `(h, e, f)`: `[h,e] = 2e`, `[h,f] = -2f`, `[e,f] = h`.
pub fn sl2() -> LieAlgebra {
    use crate::linalg::int;
    let v = |pairs: &[(usize, i64)]| SparseVec::from_pairs(pairs.iter().map(|(k, c)| (*k, int(*c))).collect());
    LieAlgebra::new(
        vec!["h".into(), "e".into(), "f".into()],
        [(0, 1, v(&[(1, 2)])), (0, 2, v(&[(2, -2)])), (1, 2, v(&[(0, 1)]))],
    )
    .expect("sl2 is a Lie algebra")
}

/// `su_2 ≅ so_3`: `[x_0, x_1] = x_2` and cyclic.
pub fn su2() -> LieAlgebra {
    use crate::linalg::int;
    let v = |k: usize, c: i64| SparseVec::from_pairs(vec![(k, int(c))]);
    LieAlgebra::new(
        vec!["u0".into(), "u1".into(), "u2".into()],
        [(0, 1, v(2, 1)), (1, 2, v(0, 1)), (0, 2, v(1, -1))],
    )
    .expect("su2 is a Lie algebra")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    fn vec_of(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|x| int(*x)).collect()
    }

    #[test]
    fn abelian_is_valid() {
        let a = LieAlgebra::abelian(3);
        a.check_jacobi().unwrap();
        assert!(a.is_abelian());
        assert_eq!(a.killing_form(), Matrix::zeros(3, 3));
        assert!(!a.is_semisimple());
    }

    #[test]
    fn sl2_validates_and_brackets() {
        let g = sl2();
        assert_eq!(g.bracket(&vec_of(&[0, 1, 0]), &vec_of(&[0, 0, 1])).unwrap(), vec_of(&[1, 0, 0]));
        let x = vec_of(&[3, -1, 2]);
        assert_eq!(g.bracket(&x, &x).unwrap(), vec_of(&[0, 0, 0]));
        assert!(matches!(g.bracket(&vec_of(&[1]), &x), Err(Error::DimensionMismatch { .. })));
        assert!(g.is_semisimple());
        assert_eq!(rank(&g.killing_form()), 3);
        assert_eq!(g.killing_signature(), (2, 1, 0));
    }

    #[test]
    fn broken_sl2_violates_jacobi() {
        let v = |pairs: &[(usize, i64)]| SparseVec::from_pairs(pairs.iter().map(|(k, c)| (*k, int(*c))).collect());
        let res = LieAlgebra::new(
            vec!["h".into(), "e".into(), "f".into()],
            [(0, 1, v(&[(1, 2)])), (0, 2, v(&[(2, -2)])), (1, 2, v(&[(1, 1)]))],
        );
        match res {
            Err(Error::JacobiViolation { i: 0, j: 1, k: 2, residual }) => {
                assert!(residual.iter().any(|x| !Field::is_zero(x)));
            }
            other => panic!("expected Jacobi violation, got {other:?}"),
        }
    }

    #[test]
    fn su2_killing_is_negative_definite() {
        let g = su2();
        let b = g.killing_form();
        // leading principal minors alternate in sign: -2, 4, -8
        assert_eq!(b, Matrix::from_dense(&[vec_of(&[-2, 0, 0]), vec_of(&[0, -2, 0]), vec_of(&[0, 0, -2])]));
        assert!(g.is_compact_semisimple());
    }

    #[test]
    fn antisymmetry_is_completed_and_checked() {
        let g = sl2();
        assert_eq!(g.bracket_basis(1, 0), &SparseVec::from_pairs(vec![(1, int(-2))]));
        let bad = LieAlgebra::new(
            vec!["a".into(), "b".into()],
            [(0, 1, SparseVec::unit(0)), (1, 0, SparseVec::unit(0))],
        );
        assert!(matches!(bad, Err(Error::NotAntisymmetric { .. })));
    }

    #[test]
    fn json_round_trip() {
        let g = sl2();
        let back = LieAlgebra::from_json(&g.to_json()).unwrap();
        assert_eq!(back, g);
        let doc = r#"{"dim": 2, "basis": ["a", "b"], "brackets": [{"i": 1, "j": 0, "result": [[0, "1/1"]]}]}"#;
        assert!(matches!(LieAlgebra::from_json(doc), Err(Error::Parse(_))));
    }
}
