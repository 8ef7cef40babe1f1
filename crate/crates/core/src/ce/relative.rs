use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exterior::ExteriorBasis;
use crate::lie::{CartanDecomposition, CoefficientModule, LieAlgebra};
use crate::linalg::{inverse, kernel_basis_reduced, primitive_integer_vector, Echelon, Matrix, Scalar, SparseVec};

use super::cochain::{differential_column, Cochain};
use super::cohomology::{CohomologyTable, Compact, ComputeConfig};
use super::structure::{Action, Structure};

/// The relative complex `C^*((g, h); a)` of cochains that are horizontal and
/// invariant for `h`.
///
/// Cochains are stored in quotient coordinates: as forms on the complement
/// basis `b_{h_dim}, …, b_{dim-1}` of the adapted basis (`h` first).
#[derive(Clone, Debug)]
pub struct RelativeComplex {
    parent: LieAlgebra,
    module: CoefficientModule,
    h_dim: usize,
    /// Adapted basis (h then complement) as columns in parent coordinates.
    change: Matrix<Scalar>,
    change_inv: Matrix<Scalar>,
    adapted: LieAlgebra,
    /// Brackets of complement vectors, projected onto the complement.
    quotient: Structure<Scalar>,
    quotient_action: Action<Scalar>,
    /// `[b_s, y_j]` projected onto the complement, for `y_j` in h.
    h_brackets: Vec<Vec<SparseVec<Scalar>>>,
    h_actions: Vec<Option<Matrix<Scalar>>>,
    config: ComputeConfig,
}

impl RelativeComplex {
    /// Uses the first unit vectors independent of `h` as the complement.
    pub fn new(g: &LieAlgebra, h_basis: &[SparseVec<Scalar>], module: &CoefficientModule) -> Result<Self> {
        let n = g.dim();
        let mut ech = Echelon::new(n);
        for v in h_basis {
            if ech.insert(v).is_none() {
                return Err(Error::InvalidStructure("subalgebra basis is linearly dependent".into()));
            }
        }
        let mut complement = Vec::new();
        for i in 0..n {
            let e = SparseVec::unit(i);
            if ech.insert(&e).is_some() {
                complement.push(e);
            }
        }
        Self::with_complement(g, h_basis, &complement, module)
    }

    /// `h = k` with complement `p`, so the adapted basis is the decomposition's.
    pub fn from_decomposition(dec: &CartanDecomposition, module: &CoefficientModule) -> Result<Self> {
        Self::with_complement(dec.parent(), dec.k_basis(), dec.p_basis(), module)
    }

    pub fn with_complement(
        g: &LieAlgebra,
        h_basis: &[SparseVec<Scalar>],
        complement: &[SparseVec<Scalar>],
        module: &CoefficientModule,
    ) -> Result<Self> {
        let n = g.dim();
        let h_dim = h_basis.len();
        if h_dim + complement.len() != n {
            return Err(Error::NotComplementary(format!("{h_dim} + {} vectors in dimension {n}", complement.len())));
        }
        let mut span = Echelon::with_tracking(n, true);
        for v in h_basis {
            span.insert(v);
        }
        for a in 0..h_dim {
            for b in a + 1..h_dim {
                let br = g.bracket_sparse(&h_basis[a], &h_basis[b]);
                if span.solve(&br).is_none() {
                    return Err(Error::NotASubalgebra { left: a, right: b });
                }
            }
        }
        let mut columns = h_basis.to_vec();
        columns.extend(complement.iter().cloned());
        let change = Matrix::from_columns(n, &columns);
        let change_inv =
            inverse(&change).ok_or_else(|| Error::NotComplementary("h and its complement do not span".into()))?;
        let labels = (0..n).map(|i| format!("b{i}")).collect();
        let adapted = g.change_basis(&change, labels)?;
        let q = n - h_dim;
        let project = |v: &SparseVec<Scalar>| {
            SparseVec::from_pairs(v.iter().filter(|(k, _)| *k >= h_dim).map(|(k, x)| (k - h_dim, x.clone())).collect())
        };
        let table = (0..q)
            .map(|s| (0..q).map(|t| project(adapted.bracket_basis(s + h_dim, t + h_dim))).collect())
            .collect();
        let quotient = Structure::from_table(table);
        // module action in the adapted basis: ρ(b_a) = Σ_i change[i][a] ρ(x_i)
        let adapted_actions: Option<Vec<Matrix<Scalar>>> = (!module.is_trivial()).then(|| {
            (0..n)
                .map(|a| {
                    let mut acc = Matrix::zeros(module.dim(), module.dim());
                    for (i, c) in columns[a].iter() {
                        acc = acc.add(&module.action(*i).scale(c));
                    }
                    acc
                })
                .collect()
        });
        let quotient_action = Action {
            dim: module.dim(),
            matrices: adapted_actions.as_ref().map(|ms| ms[h_dim..].to_vec()),
        };
        let h_brackets = (0..h_dim)
            .map(|j| (0..q).map(|s| project(adapted.bracket_basis(s + h_dim, j))).collect())
            .collect();
        let h_actions = (0..h_dim).map(|j| adapted_actions.as_ref().map(|ms| ms[j].clone())).collect();
        Ok(Self {
            parent: g.clone(),
            module: module.clone(),
            h_dim,
            change,
            change_inv,
            adapted,
            quotient,
            quotient_action,
            h_brackets,
            h_actions,
            config: ComputeConfig::from_env(),
        })
    }

    pub fn with_config(mut self, config: ComputeConfig) -> Self {
        self.config = config;
        self
    }

    pub fn parent(&self) -> &LieAlgebra {
        &self.parent
    }

    pub fn module(&self) -> &CoefficientModule {
        &self.module
    }

    pub fn h_dim(&self) -> usize {
        self.h_dim
    }

    /// Dimension of the complement (the quotient `g/h`).
    pub fn quotient_dim(&self) -> usize {
        self.parent.dim() - self.h_dim
    }

    pub fn adapted(&self) -> &LieAlgebra {
        &self.adapted
    }

    pub fn change_of_basis(&self) -> &Matrix<Scalar> {
        &self.change
    }

    /// Basis of the degree-`n` relative cochains (integer entries).
    pub fn basis(&self, n: usize) -> Vec<SparseVec<Scalar>> {
        let q = self.quotient_dim();
        let m = self.module.dim();
        if n > q {
            return Vec::new();
        }
        let len = Cochain::<Scalar>::space_dim(q, m, n);
        if self.h_dim == 0 {
            return (0..len).map(SparseVec::unit).collect();
        }
        let mut blocks = Vec::with_capacity(self.h_dim);
        for j in 0..self.h_dim {
            let cols: Vec<SparseVec<Scalar>> = (0..len)
                .map(|i| {
                    let c = Cochain::from_coords(q, m, n, SparseVec::unit(i));
                    c.lie_derivative_with(&self.h_brackets[j], self.h_actions[j].as_ref()).into_coords()
                })
                .collect();
            blocks.push(Matrix::from_columns(len, &cols));
        }
        let stacked = blocks.into_iter().reduce(|a, b| a.vstack(&b)).unwrap();
        kernel_basis_reduced(&stacked)
            .into_iter()
            .map(|v| SparseVec::from_dense(&primitive_integer_vector(&v.to_dense(len))))
            .collect()
    }

    /// Dimensions of the relative cochain spaces in degrees `0..=max_degree`.
    pub fn cochain_dims(&self, max_degree: usize) -> Vec<usize> {
        (0..=max_degree).map(|n| self.basis(n).len()).collect()
    }

    /// `d` on quotient-coordinate cochains (valid on relative cochains).
    pub fn apply_d(&self, omega: &Cochain<Scalar>) -> Cochain<Scalar> {
        omega.differential(&self.quotient, &self.quotient_action)
    }

    /// Whether a quotient-coordinate cochain is `h`-invariant.
    pub fn is_invariant(&self, omega: &Cochain<Scalar>) -> bool {
        (0..self.h_dim).all(|j| omega.lie_derivative_with(&self.h_brackets[j], self.h_actions[j].as_ref()).is_zero())
    }

    pub fn cohomology(&self, max_degree: usize) -> Result<RelativeCohomology> {
        let q = self.quotient_dim();
        let m = self.module.dim();
        let max_degree = max_degree.min(q);
        let top = (max_degree + 1).min(q);
        self.config.guard(q, m, top)?;
        let bases: Vec<Vec<SparseVec<Scalar>>> = (0..=top).into_par_iter().map(|n| self.basis(n)).collect();
        let mut compact: Vec<Compact<Scalar>> = bases
            .iter()
            .enumerate()
            .map(|(n, b)| Compact::basis(Cochain::<Scalar>::space_dim(q, m, n), b.clone()))
            .collect();
        let diffs = (0..=max_degree)
            .into_par_iter()
            .map(|n| {
                let space = ExteriorBasis::new(q, n);
                let target = if n < top { Some(&compact[n + 1]) } else { None };
                let mut cols = Vec::with_capacity(bases[n].len());
                for v in &bases[n] {
                    let mut image = SparseVec::new();
                    for (i, c) in v.iter() {
                        let col = differential_column(&self.quotient, &self.quotient_action, n, space.subset(i / m), i % m);
                        image = image.axpy(c, &col);
                    }
                    let coords = match target {
                        Some(t) => t.project(&image).ok_or_else(|| {
                            Error::Internal(format!("d of a relative {n}-cochain is not relative"))
                        })?,
                        None if image.is_zero() => SparseVec::new(),
                        None => return Err(Error::Internal("nonzero differential beyond the top degree".into())),
                    };
                    cols.push(coords);
                }
                let rows = if n < top { bases[n + 1].len() } else { 0 };
                Ok(Matrix::from_columns(rows, &cols))
            })
            .collect::<Result<Vec<_>>>()?;
        compact.truncate(max_degree + 1);
        let table = CohomologyTable::solve(q, m, compact, diffs, self.config.order)?;
        Ok(RelativeCohomology { complex: self.clone(), table })
    }

    /// A quotient-coordinate cochain as a cochain on the whole algebra in the
    /// adapted basis (zero whenever an argument lies in h).
    pub fn to_adapted(&self, omega: &Cochain<Scalar>) -> Cochain<Scalar> {
        let n = self.parent.dim();
        let values = omega
            .values()
            .into_iter()
            .map(|(mask, a, v)| (mask << self.h_dim, a, v))
            .collect::<Vec<_>>();
        Cochain::from_values(n, omega.module_dim(), omega.degree(), values)
    }

    /// The same alternating map in parent coordinates.
    pub fn to_parent(&self, omega: &Cochain<Scalar>) -> Cochain<Scalar> {
        let adapted = self.to_adapted(omega);
        adapted.pullback(&self.change_inv.columns(), |_| true)
    }

    /// Quotient coordinates of a horizontal cochain given in the adapted basis.
    pub fn from_adapted(&self, omega: &Cochain<Scalar>) -> Result<Cochain<Scalar>> {
        let h_mask = (1u64 << self.h_dim) - 1;
        let mut values = Vec::new();
        for (mask, a, v) in omega.values() {
            if mask & h_mask != 0 {
                return Err(Error::NotHorizontal);
            }
            values.push((mask >> self.h_dim, a, v));
        }
        Ok(Cochain::from_values(self.quotient_dim(), omega.module_dim(), omega.degree(), values))
    }

    /// Quotient coordinates of a cochain given in parent coordinates.
    pub fn from_parent(&self, omega: &Cochain<Scalar>) -> Result<Cochain<Scalar>> {
        self.from_adapted(&omega.pullback(&self.change.columns(), |_| true))
    }
}

/// Relative cohomology with quotient-coordinate representatives.
#[derive(Debug)]
pub struct RelativeCohomology {
    complex: RelativeComplex,
    table: CohomologyTable<Scalar>,
}

impl RelativeCohomology {
    pub fn complex(&self) -> &RelativeComplex {
        &self.complex
    }

    pub fn table(&self) -> &CohomologyTable<Scalar> {
        &self.table
    }

    pub fn betti(&self) -> Vec<usize> {
        self.table.betti()
    }

    pub fn max_degree(&self) -> usize {
        self.table.max_degree()
    }

    pub fn representatives(&self, n: usize) -> Vec<Cochain<Scalar>> {
        self.table.representatives(n)
    }

    /// Class coordinates of a relative cocycle (quotient coordinates).
    pub fn class_of(&self, omega: &Cochain<Scalar>) -> Result<Vec<Scalar>> {
        self.table.class_of(omega)
    }

    pub fn is_exact(&self, omega: &Cochain<Scalar>) -> Result<bool> {
        self.table.is_exact(omega)
    }
}
