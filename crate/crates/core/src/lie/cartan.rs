use serde::{Deserialize, Serialize};

use crate::error::{Error, Inclusion, Result};
use crate::linalg::{inverse, parse_scalar, Field, Matrix, Scalar, SparseVec};

use super::LieAlgebra;

/// A Cartan decomposition `g = k ⊕ p` given by basis vectors in parent
/// coordinates.
#[derive(Clone, Debug)]
pub struct CartanDecomposition {
    parent: LieAlgebra,
    k_basis: Vec<SparseVec<Scalar>>,
    p_basis: Vec<SparseVec<Scalar>>,
    /// Columns: k basis then p basis.
    change: Matrix<Scalar>,
    change_inv: Matrix<Scalar>,
    pi_k: Matrix<Scalar>,
    pi_p: Matrix<Scalar>,
    adapted: LieAlgebra,
}

impl CartanDecomposition {
    /// Checks complementarity and the three bracket inclusions, in the order
    /// `[k,k]⊆k`, `[p,p]⊆k`, `[k,p]⊆p`.
    pub fn new(
        parent: &LieAlgebra,
        k_basis: Vec<SparseVec<Scalar>>,
        p_basis: Vec<SparseVec<Scalar>>,
    ) -> Result<Self> {
        let n = parent.dim();
        if k_basis.len() + p_basis.len() != n {
            return Err(Error::NotComplementary(format!(
                "{} + {} basis vectors for a {n}-dimensional algebra",
                k_basis.len(),
                p_basis.len()
            )));
        }
        if k_basis.iter().chain(&p_basis).any(|v| v.max_index().is_some_and(|m| m >= n)) {
            return Err(Error::NotComplementary("basis vector has out-of-range coordinates".into()));
        }
        let mut columns = k_basis.clone();
        columns.extend(p_basis.iter().cloned());
        let change = Matrix::from_columns(n, &columns);
        let change_inv = inverse(&change)
            .ok_or_else(|| Error::NotComplementary("k and p do not span the algebra".into()))?;
        let nk = k_basis.len();
        let mut keep_k = Matrix::zeros(n, n);
        let mut keep_p = Matrix::zeros(n, n);
        {
            let diag = |lo: usize, hi: usize| {
                let rows: Vec<SparseVec<Scalar>> = (0..n)
                    .map(|i| if i >= lo && i < hi { SparseVec::unit(i) } else { SparseVec::new() })
                    .collect();
                Matrix::from_rows(n, rows)
            };
            keep_k = keep_k.add(&diag(0, nk));
            keep_p = keep_p.add(&diag(nk, n));
        }
        let pi_k = change.mul(&keep_k).mul(&change_inv);
        let pi_p = change.mul(&keep_p).mul(&change_inv);

        let in_k = |v: &SparseVec<Scalar>| change_inv.mul_vec(v).iter().all(|(i, _)| *i < nk);
        let in_p = |v: &SparseVec<Scalar>| change_inv.mul_vec(v).iter().all(|(i, _)| *i >= nk);
        for a in 0..nk {
            for b in a + 1..nk {
                if !in_k(&parent.bracket_sparse(&k_basis[a], &k_basis[b])) {
                    return Err(Error::BracketViolation { inclusion: Inclusion::KK, left: a, right: b });
                }
            }
        }
        for a in 0..p_basis.len() {
            for b in a + 1..p_basis.len() {
                if !in_k(&parent.bracket_sparse(&p_basis[a], &p_basis[b])) {
                    return Err(Error::BracketViolation { inclusion: Inclusion::PP, left: nk + a, right: nk + b });
                }
            }
        }
        for a in 0..nk {
            for b in 0..p_basis.len() {
                if !in_p(&parent.bracket_sparse(&k_basis[a], &p_basis[b])) {
                    return Err(Error::BracketViolation { inclusion: Inclusion::KP, left: a, right: nk + b });
                }
            }
        }
        let labels = adapted_labels(parent, &columns);
        let adapted = parent.change_basis(&change, labels)?;
        Ok(Self { parent: parent.clone(), k_basis, p_basis, change, change_inv, pi_k, pi_p, adapted })
    }

    /// Split along coordinate indices.
    pub fn from_indices(parent: &LieAlgebra, k_indices: &[usize], p_indices: &[usize]) -> Result<Self> {
        let n = parent.dim();
        let mut seen = vec![false; n];
        for &i in k_indices.iter().chain(p_indices) {
            if i >= n || seen[i] {
                return Err(Error::NotComplementary(format!("index {i} is repeated or out of range")));
            }
            seen[i] = true;
        }
        Self::new(
            parent,
            k_indices.iter().map(|&i| SparseVec::unit(i)).collect(),
            p_indices.iter().map(|&i| SparseVec::unit(i)).collect(),
        )
    }

    pub fn parent(&self) -> &LieAlgebra {
        &self.parent
    }

    pub fn k_basis(&self) -> &[SparseVec<Scalar>] {
        &self.k_basis
    }

    pub fn p_basis(&self) -> &[SparseVec<Scalar>] {
        &self.p_basis
    }

    pub fn k_dim(&self) -> usize {
        self.k_basis.len()
    }

    pub fn p_dim(&self) -> usize {
        self.p_basis.len()
    }

    pub fn pi_k(&self) -> &Matrix<Scalar> {
        &self.pi_k
    }

    pub fn pi_p(&self) -> &Matrix<Scalar> {
        &self.pi_p
    }

    /// Columns are the adapted basis (k then p) in parent coordinates.
    pub fn change_of_basis(&self) -> &Matrix<Scalar> {
        &self.change
    }

    pub fn change_of_basis_inverse(&self) -> &Matrix<Scalar> {
        &self.change_inv
    }

    /// The parent algebra rewritten in the adapted basis `k_basis ++ p_basis`.
    pub fn adapted(&self) -> &LieAlgebra {
        &self.adapted
    }

    /// The decomposition of [`CartanDecomposition::adapted`] along the first
    /// `k_dim` coordinates.
    pub fn adapted_decomposition(&self) -> CartanDecomposition {
        let nk = self.k_dim();
        let n = self.parent.dim();
        Self::from_indices(&self.adapted, &(0..nk).collect::<Vec<_>>(), &(nk..n).collect::<Vec<_>>())
            .expect("adapted basis of a valid decomposition")
    }

    /// `k` as an algebra in its own basis.
    pub fn k_algebra(&self) -> LieAlgebra {
        let nk = self.k_dim();
        let mut entries = Vec::new();
        for a in 0..nk {
            for b in a + 1..nk {
                entries.push((a, b, self.adapted.bracket_basis(a, b).clone()));
            }
        }
        LieAlgebra::new_unchecked(self.adapted.labels()[..nk].to_vec(), entries).expect("k is a subalgebra")
    }

    /// Parent coordinates to adapted coordinates.
    pub fn to_adapted(&self, x: &SparseVec<Scalar>) -> SparseVec<Scalar> {
        self.change_inv.mul_vec(x)
    }

    pub fn from_adapted(&self, x: &SparseVec<Scalar>) -> SparseVec<Scalar> {
        self.change.mul_vec(x)
    }

    /// The compact dual `g_u` on the adapted basis: `[p,p]` changes sign.
    pub fn compact_dual(&self) -> Result<LieAlgebra> {
        if !self.parent.is_semisimple() {
            return Err(Error::NotSemisimple);
        }
        let dual = self.sign_flipped()?;
        if let Err(e) = dual.check_jacobi() {
            return Err(Error::Internal(format!("compact dual violates Jacobi: {e}")));
        }
        Ok(dual)
    }

    /// `compact_dual` plus the negative-definiteness certificate.
    pub fn checked_compact_dual(&self) -> Result<LieAlgebra> {
        let dual = self.compact_dual()?;
        if !dual.is_compact_semisimple() {
            return Err(Error::Internal("Killing form of the compact dual is not negative definite".into()));
        }
        Ok(dual)
    }

    /// The decomposition of the compact dual along the same index split.
    pub fn dual_decomposition(&self) -> Result<CartanDecomposition> {
        let dual = self.compact_dual()?;
        let nk = self.k_dim();
        Self::from_indices(&dual, &(0..nk).collect::<Vec<_>>(), &(nk..dual.dim()).collect::<Vec<_>>())
    }

    fn sign_flipped(&self) -> Result<LieAlgebra> {
        let nk = self.k_dim();
        let n = self.adapted.dim();
        let mut entries = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                let v = self.adapted.bracket_basis(a, b);
                let v = if a >= nk { v.neg() } else { v.clone() };
                entries.push((a, b, v));
            }
        }
        LieAlgebra::new_unchecked(self.adapted.labels().to_vec(), entries)
    }

    pub fn from_json(parent: &LieAlgebra, text: &str) -> Result<Self> {
        let doc: DecompositionDocument = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        match doc {
            DecompositionDocument::Indices { k_indices, p_indices } => Self::from_indices(parent, &k_indices, &p_indices),
            DecompositionDocument::Vectors { k_basis, p_basis } => {
                let conv = |vs: &[Vec<String>]| -> Result<Vec<SparseVec<Scalar>>> {
                    vs.iter()
                        .map(|v| {
                            if v.len() != parent.dim() {
                                return Err(Error::DimensionMismatch { expected: parent.dim(), found: v.len() });
                            }
                            let dense: Vec<Scalar> =
                                v.iter().map(|s| parse_scalar(s).map_err(Error::Parse)).collect::<Result<_>>()?;
                            Ok(SparseVec::from_dense(&dense))
                        })
                        .collect()
                };
                Self::new(parent, conv(&k_basis)?, conv(&p_basis)?)
            }
        }
    }
}

fn adapted_labels(parent: &LieAlgebra, columns: &[SparseVec<Scalar>]) -> Vec<String> {
    columns
        .iter()
        .map(|v| {
            let entries = v.entries();
            if entries.len() == 1 && entries[0].1 == Scalar::one() {
                parent.labels()[entries[0].0].clone()
            } else {
                let mut s = String::new();
                for (k, c) in entries {
                    if !s.is_empty() {
                        s.push('+');
                    }
                    if *c == Scalar::one() {
                        s.push_str(&parent.labels()[*k]);
                    } else {
                        s.push_str(&format!("({c}){}", parent.labels()[*k]));
                    }
                }
                s
            }
        })
        .collect()
}

/// Wire format for a decomposition: coordinate indices or explicit vectors.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DecompositionDocument {
    Indices { k_indices: Vec<usize>, p_indices: Vec<usize> },
    Vectors { k_basis: Vec<Vec<String>>, p_basis: Vec<Vec<String>> },
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{sl2, su2};
    use crate::linalg::int;

    fn v(x: &[i64]) -> SparseVec<Scalar> {
        SparseVec::from_dense(&x.iter().map(|a| int(*a)).collect::<Vec<_>>())
    }

    fn sl2_split() -> CartanDecomposition {
        CartanDecomposition::new(&sl2(), vec![v(&[0, 1, -1])], vec![v(&[1, 0, 0]), v(&[0, 1, 1])]).unwrap()
    }

    #[test]
    fn sl2_cartan_split_validates() {
        let dec = sl2_split();
        assert_eq!(dec.pi_k().add(dec.pi_p()), Matrix::identity(3));
        assert_eq!(dec.pi_k().mul(dec.pi_k()), *dec.pi_k());
        assert_eq!(dec.pi_p().mul(dec.pi_p()), *dec.pi_p());
        assert!(dec.pi_k().mul(dec.pi_p()).is_zero());
    }

    #[test]
    fn bad_split_reports_pp_witness() {
        let err = CartanDecomposition::new(&sl2(), vec![v(&[0, 1, 0])], vec![v(&[1, 0, 0]), v(&[0, 0, 1])]).unwrap_err();
        // witness (h, f) in the adapted numbering k = (e), p = (h, f)
        assert!(matches!(err, Error::BracketViolation { inclusion: Inclusion::PP, left: 1, right: 2 }));
        let err = CartanDecomposition::new(&sl2(), vec![v(&[0, 1, 0])], vec![v(&[0, 2, 0]), v(&[0, 0, 1])]).unwrap_err();
        assert!(matches!(err, Error::NotComplementary(_)));
    }

    #[test]
    fn abelian_split_and_dual() {
        let a = LieAlgebra::abelian(3);
        let dec = CartanDecomposition::from_indices(&a, &[0], &[1, 2]).unwrap();
        assert!(matches!(dec.compact_dual(), Err(Error::NotSemisimple)));
    }

    #[test]
    fn dual_of_sl2_is_compact() {
        let dec = sl2_split();
        let dual = dec.checked_compact_dual().unwrap();
        assert!(dual.is_compact_semisimple());
        let back = dec.dual_decomposition().unwrap().compact_dual().unwrap();
        assert_eq!(back, *dec.adapted());
        for a in 0..dec.k_dim() {
            for b in 0..3 {
                assert_eq!(dual.bracket_basis(a, b), dec.adapted().bracket_basis(a, b));
            }
        }
    }

    #[test]
    fn dual_of_compact_pair_stays_compact() {
        // su_2 ⊕ su_2 with the swap involution: k = diagonal, p = antidiagonal
        let g = su2().direct_sum(&su2());
        let k = (0..3).map(|i| SparseVec::unit(i).add(&SparseVec::unit(i + 3))).collect();
        let p = (0..3).map(|i| SparseVec::unit(i).sub(&SparseVec::unit(i + 3))).collect();
        let dec = CartanDecomposition::new(&g, k, p).unwrap();
        assert!(matches!(dec.checked_compact_dual(), Err(Error::Internal(_))));
        let dual = dec.compact_dual().unwrap();
        // the dual of the compact form su_2 ⊕ su_2 along the swap is sl_2(ℂ)
        assert_eq!(dual.killing_signature(), (3, 3, 0));
        // with k = g nothing flips
        let trivial = CartanDecomposition::from_indices(&g, &[0, 1, 2, 3, 4, 5], &[]).unwrap();
        assert!(trivial.checked_compact_dual().unwrap().is_compact_semisimple());
    }

    #[test]
    fn decomposition_json_forms() {
        let g = sl2();
        let dec = CartanDecomposition::from_json(&g, r#"{"k_basis": [["0", "1", "-1"]], "p_basis": [["1","0","0"], ["0","1","1"]]}"#).unwrap();
        assert_eq!(dec.k_dim(), 1);
        let err = CartanDecomposition::from_json(&g, r#"{"k_indices": [1], "p_indices": [0, 2]}"#).unwrap_err();
        assert!(matches!(err, Error::BracketViolation { .. }));
    }
}
