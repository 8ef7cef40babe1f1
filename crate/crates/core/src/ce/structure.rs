use crate::lie::{CoefficientModule, LieAlgebra};
use crate::linalg::{Field, Matrix, Scalar, SparseVec};

/// Structure constants over an arbitrary field, indexed both ways:
/// `table[a][b] = [x_a, x_b]` and `producing[k] = {(a, b, c^k_ab) : a < b}`.
#[derive(Clone, Debug)]
pub struct Structure<F: Field> {
    dim: usize,
    table: Vec<Vec<SparseVec<F>>>,
    producing: Vec<Vec<(usize, usize, F)>>,
}

impl<F: Field> Structure<F> {
    pub fn from_table(table: Vec<Vec<SparseVec<F>>>) -> Self {
        let dim = table.len();
        let mut producing = vec![Vec::new(); dim];
        for a in 0..dim {
            for b in a + 1..dim {
                for (k, c) in table[a][b].iter() {
                    producing[*k].push((a, b, c.clone()));
                }
            }
        }
        Self { dim, table, producing }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bracket_basis(&self, a: usize, b: usize) -> &SparseVec<F> {
        &self.table[a][b]
    }

    /// Pairs `a < b` whose bracket has an `x_k` component.
    pub fn producing(&self, k: usize) -> &[(usize, usize, F)] {
        &self.producing[k]
    }

    pub fn bracket(&self, x: &SparseVec<F>, y: &SparseVec<F>) -> SparseVec<F> {
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

    /// Drops every bracket component outside `keep` (used for `g/h`).
    pub fn truncated(&self, keep: impl Fn(usize) -> bool) -> Self {
        let table = self
            .table
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| SparseVec::from_pairs(v.iter().filter(|(k, _)| keep(*k)).cloned().collect()))
                    .collect()
            })
            .collect();
        Self::from_table(table)
    }
}

impl Structure<Scalar> {
    pub fn of(g: &LieAlgebra) -> Self {
        let n = g.dim();
        let table = (0..n).map(|a| (0..n).map(|b| g.bracket_basis(a, b).clone()).collect()).collect();
        Self::from_table(table)
    }
}

/// Action matrices of a coefficient module over some field; `None` for a
/// trivial module.
#[derive(Clone, Debug)]
pub struct Action<F: Field> {
    pub dim: usize,
    pub matrices: Option<Vec<Matrix<F>>>,
}

impl<F: Field> Action<F> {
    pub fn trivial(dim: usize) -> Self {
        Self { dim, matrices: None }
    }

    pub fn of(module: &CoefficientModule) -> Self {
        if module.is_trivial() {
            return Self::trivial(module.dim());
        }
        let matrices = module.actions().iter().map(|m| m.map(|x| F::from_scalar(x))).collect();
        Self { dim: module.dim(), matrices: Some(matrices) }
    }

    pub fn is_trivial(&self) -> bool {
        self.matrices.is_none()
    }

    /// `ρ(x_t)[β][α]`.
    pub fn entry(&self, t: usize, beta: usize, alpha: usize) -> F {
        match &self.matrices {
            None => F::zero(),
            Some(ms) => ms[t].get(beta, alpha),
        }
    }

    /// The action of `y = Σ y_t x_t`.
    pub fn of_element(&self, y: &SparseVec<F>) -> Option<Matrix<F>> {
        let ms = self.matrices.as_ref()?;
        let mut acc = Matrix::zeros(self.dim, self.dim);
        for (t, c) in y.iter() {
            acc = acc.add(&ms[*t].scale(c));
        }
        Some(acc)
    }
}
