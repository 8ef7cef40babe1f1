use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{parse_scalar, scalar_to_string, Field, Matrix, Scalar};

use super::LieAlgebra;

/// A finite-dimensional representation `ρ: g → gl(a)` with rational matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientModule {
    dim: usize,
    action: Vec<Matrix<Scalar>>,
    trivial: bool,
}

impl CoefficientModule {
    /// The trivial module `ℝ^dim`.
    pub fn trivial(g: &LieAlgebra, dim: usize) -> Self {
        Self { dim, action: vec![Matrix::zeros(dim, dim); g.dim()], trivial: true }
    }

    /// Validates `ρ([x_i, x_j]) = [ρ(x_i), ρ(x_j)]` on all basis pairs.
    pub fn new(g: &LieAlgebra, action: Vec<Matrix<Scalar>>) -> Result<Self> {
        if action.len() != g.dim() {
            return Err(Error::DimensionMismatch { expected: g.dim(), found: action.len() });
        }
        let dim = action.first().map_or(0, Matrix::rows);
        for m in &action {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: m.cols() });
            }
        }
        for i in 0..g.dim() {
            for j in i + 1..g.dim() {
                let lhs = action[i].mul(&action[j]).add(&action[j].mul(&action[i]).scale(&Scalar::from_i64(-1)));
                let mut rhs = Matrix::zeros(dim, dim);
                for (k, c) in g.bracket_basis(i, j).iter() {
                    rhs = rhs.add(&action[*k].scale(c));
                }
                if lhs != rhs {
                    return Err(Error::NotARepresentation { i, j });
                }
            }
        }
        let trivial = action.iter().all(Matrix::is_zero);
        Ok(Self { dim, action, trivial })
    }

    /// The adjoint representation.
    pub fn adjoint(g: &LieAlgebra) -> Self {
        let action = (0..g.dim()).map(|i| g.ad_basis(i)).collect();
        Self::new(g, action).expect("adjoint representation of a valid algebra")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_trivial(&self) -> bool {
        self.trivial
    }

    /// `ρ(x_i)`.
    pub fn action(&self, i: usize) -> &Matrix<Scalar> {
        &self.action[i]
    }

    pub fn actions(&self) -> &[Matrix<Scalar>] {
        &self.action
    }

    pub fn to_json(&self) -> String {
        let doc = ModuleDocument {
            dim: self.dim,
            action: self
                .action
                .iter()
                .map(|m| m.to_dense().iter().map(|r| r.iter().map(scalar_to_string).collect()).collect())
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("serializable")
    }

    pub fn from_json(g: &LieAlgebra, text: &str) -> Result<Self> {
        let doc: ModuleDocument = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if doc.action.is_empty() && g.dim() > 0 {
            return Ok(Self::trivial(g, doc.dim));
        }
        let mut action = Vec::with_capacity(doc.action.len());
        for m in &doc.action {
            if m.len() != doc.dim || m.iter().any(|r| r.len() != doc.dim) {
                return Err(Error::Parse(format!("action matrices must be {0}×{0}", doc.dim)));
            }
            let rows: Vec<Vec<Scalar>> = m
                .iter()
                .map(|r| r.iter().map(|s| parse_scalar(s).map_err(Error::Parse)).collect())
                .collect::<Result<_>>()?;
            action.push(Matrix::from_dense(&rows));
        }
        Self::new(g, action)
    }
}

/// Wire format: one `dim × dim` matrix of `"num/den"` strings per basis element.
/// An empty `action` list means the trivial module.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModuleDocument {
    pub dim: usize,
    #[serde(default)]
    pub action: Vec<Vec<Vec<String>>>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::sl2;
    use crate::linalg::int;

    #[test]
    fn adjoint_and_trivial() {
        let g = sl2();
        let ad = CoefficientModule::adjoint(&g);
        assert_eq!(ad.dim(), 3);
        assert!(!ad.is_trivial());
        assert!(CoefficientModule::trivial(&g, 2).is_trivial());
    }

    #[test]
    fn defining_representation_of_sl2() {
        let g = sl2();
        let m = |a: [[i64; 2]; 2]| Matrix::from_dense(&a.map(|r| r.map(int).to_vec()));
        let action = vec![m([[1, 0], [0, -1]]), m([[0, 1], [0, 0]]), m([[0, 0], [1, 0]])];
        let rho = CoefficientModule::new(&g, action.clone()).unwrap();
        let back = CoefficientModule::from_json(&g, &rho.to_json()).unwrap();
        assert_eq!(back, rho);
        let mut bad = action;
        bad[2] = m([[0, 0], [2, 0]]);
        assert!(matches!(CoefficientModule::new(&g, bad), Err(Error::NotARepresentation { .. })));
    }
}
