use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::field::{primitive_integer_vector, Field, Scalar};
use super::sparse::{Matrix, SparseVec};
use crate::error::{Error, Result};

/// Tuning for exact elimination.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinalgConfig {
    /// Matrices denser than this are eliminated in dense storage.
    pub dense_threshold: f64,
}

impl Default for LinalgConfig {
    fn default() -> Self {
        Self { dense_threshold: 0.2 }
    }
}

/// Incrementally built row echelon form.
///
/// Every stored row has its leading entry normalized to one and no entry at
/// the pivot column of an earlier row, so reducing a new vector sweeps its
/// columns left to right exactly once. When `track` is set, each stored row
/// also remembers which combination of inserted vectors produced it.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    width: usize,
    rows: Vec<SparseVec<F>>,
    combos: Vec<SparseVec<F>>,
    pivot_row: Vec<Option<usize>>,
    inserted: usize,
    track: bool,
    scratch: Vec<F>,
}

/// Outcome of reducing one vector against an [`Echelon`].
pub struct Reduction<F: Field> {
    pub residual: SparseVec<F>,
    /// Coefficients `c` over inserted vectors with `v = residual + Σ c_k input_k`
    /// (only when tracking).
    pub combination: SparseVec<F>,
}

impl<F: Field> Echelon<F> {
    pub fn new(width: usize) -> Self {
        Self::with_tracking(width, false)
    }

    pub fn with_tracking(width: usize, track: bool) -> Self {
        Self {
            width,
            rows: Vec::new(),
            combos: Vec::new(),
            pivot_row: vec![None; width],
            inserted: 0,
            track,
            scratch: vec![F::zero(); width],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn inserted(&self) -> usize {
        self.inserted
    }

    pub fn pivots(&self) -> Vec<usize> {
        (0..self.width).filter(|c| self.pivot_row[*c].is_some()).collect()
    }

    pub fn rows(&self) -> &[SparseVec<F>] {
        &self.rows
    }

    /// Reduces `v` against the stored rows without modifying them.
    pub fn reduce(&mut self, v: &SparseVec<F>) -> Reduction<F> {
        assert!(v.max_index().is_none_or(|m| m < self.width), "vector longer than echelon width");
        let mut heap: BinaryHeap<Reverse<usize>> = BinaryHeap::with_capacity(v.nnz() * 2);
        for (i, x) in v.iter() {
            self.scratch[*i] = x.clone();
            heap.push(Reverse(*i));
        }
        let mut residual = Vec::new();
        let mut combo = SparseVec::new();
        let mut last = None;
        while let Some(Reverse(c)) = heap.pop() {
            if last == Some(c) {
                continue;
            }
            last = Some(c);
            if self.scratch[c].is_zero() {
                continue;
            }
            match self.pivot_row[c] {
                Some(r) => {
                    let factor = std::mem::replace(&mut self.scratch[c], F::zero());
                    let row = &self.rows[r];
                    for (j, x) in row.iter().skip(1) {
                        if self.scratch[*j].is_zero() {
                            heap.push(Reverse(*j));
                        }
                        self.scratch[*j].sub_mul_assign(&factor, x);
                    }
                    if self.track {
                        combo = combo.axpy(&factor, &self.combos[r]);
                    }
                }
                None => {
                    residual.push((c, std::mem::replace(&mut self.scratch[c], F::zero())));
                }
            }
        }
        Reduction {
            residual: SparseVec::from_sorted_unchecked(residual),
            combination: combo,
        }
    }

    /// Inserts `v`; returns the new pivot column if `v` was independent.
    pub fn insert(&mut self, v: &SparseVec<F>) -> Option<usize> {
        let index = self.inserted;
        self.inserted += 1;
        let red = self.reduce(v);
        let (pivot, lead) = match red.residual.leading() {
            Some((p, x)) => (*p, x.clone()),
            None => return None,
        };
        let inv = lead.inv();
        let row = red.residual.scale(&inv);
        if self.track {
            // row = (v - Σ c_k input_k) / lead
            let combo = SparseVec::unit(index).sub(&red.combination).scale(&inv);
            self.combos.push(combo);
        }
        self.pivot_row[pivot] = Some(self.rows.len());
        self.rows.push(row);
        Some(pivot)
    }

    /// Brings the stored rows into reduced row echelon form.
    pub fn back_substitute(&mut self) {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|r| Reverse(self.rows[*r].leading().unwrap().0));
        for &r in &order {
            let pivot = self.rows[r].leading().unwrap().0;
            for s in 0..self.rows.len() {
                if s == r {
                    continue;
                }
                let x = self.rows[s].get(pivot);
                if x.is_zero() {
                    continue;
                }
                let neg = x.neg();
                self.rows[s] = self.rows[s].axpy(&neg, &self.rows[r]);
                if self.track {
                    self.combos[s] = self.combos[s].axpy(&neg, &self.combos[r]);
                }
            }
        }
    }

    /// Expresses `v` through the inserted vectors, if it lies in their span.
    pub fn solve(&mut self, v: &SparseVec<F>) -> Option<SparseVec<F>> {
        assert!(self.track, "solve requires combination tracking");
        let red = self.reduce(v);
        red.residual.is_zero().then_some(red.combination)
    }

    pub fn contains(&mut self, v: &SparseVec<F>) -> bool {
        self.reduce(v).residual.is_zero()
    }
}

/// Rank over the field of fractions.
pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    rank_with(m, &LinalgConfig::default())
}

pub fn rank_with<F: Field>(m: &Matrix<F>, config: &LinalgConfig) -> usize {
    if m.rows() == 0 || m.cols() == 0 {
        return 0;
    }
    if m.density() > config.dense_threshold {
        return dense_rank(m.to_dense());
    }
    // Eliminating along the shorter side keeps the echelon small.
    let m = if m.cols() > m.rows() { m.transpose() } else { m.clone() };
    let mut rows: Vec<&SparseVec<F>> = m.row_vectors().iter().filter(|r| !r.is_zero()).collect();
    rows.sort_by_key(|r| r.nnz());
    let mut ech = Echelon::new(m.cols());
    for r in rows {
        ech.insert(r);
        if ech.rank() == m.cols() {
            break;
        }
    }
    ech.rank()
}

fn dense_rank<F: Field>(mut a: Vec<Vec<F>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let pivot = (rank..rows)
            .filter(|r| !a[*r][c].is_zero())
            .min_by_key(|r| a[*r][c].weight());
        let Some(p) = pivot else { continue };
        a.swap(rank, p);
        let inv = a[rank][c].inv();
        for r in rank + 1..rows {
            if a[r][c].is_zero() {
                continue;
            }
            let factor = a[r][c].mul(&inv);
            let (top, bottom) = a.split_at_mut(r);
            let prow = &top[rank];
            for j in c..cols {
                if !prow[j].is_zero() {
                    bottom[0][j].sub_mul_assign(&factor, &prow[j]);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Null space basis in reduced form: one vector per free column, equal to one
/// at that column and zero at the other free columns.
pub fn kernel_basis_reduced<F: Field>(m: &Matrix<F>) -> Vec<SparseVec<F>> {
    let mut ech = Echelon::new(m.cols());
    for r in m.row_vectors() {
        if !r.is_zero() {
            ech.insert(r);
        }
    }
    ech.back_substitute();
    let mut pivot_of = vec![None; m.cols()];
    for row in ech.rows() {
        let p = row.leading().unwrap().0;
        pivot_of[p] = Some(());
    }
    let free: Vec<usize> = (0..m.cols()).filter(|c| pivot_of[*c].is_none()).collect();
    let mut slot = vec![usize::MAX; m.cols()];
    for (k, f) in free.iter().enumerate() {
        slot[*f] = k;
    }
    let mut pairs: Vec<Vec<(usize, F)>> = free.iter().map(|f| vec![(*f, F::one())]).collect();
    for row in ech.rows() {
        let p = row.leading().unwrap().0;
        for (c, x) in row.iter().skip(1) {
            pairs[slot[*c]].push((p, x.neg()));
        }
    }
    pairs.into_iter().map(SparseVec::from_pairs).collect()
}

/// Null space basis with each vector cleared to integer entries of content one.
pub fn kernel_basis(m: &Matrix<Scalar>) -> Vec<SparseVec<Scalar>> {
    kernel_basis_reduced(m)
        .into_iter()
        .map(|v| {
            let dense = v.to_dense(m.cols());
            SparseVec::from_dense(&primitive_integer_vector(&dense))
        })
        .collect()
}

/// Exact coefficients expressing `target` through `generators`, or `None`
/// when the target is not in their span.
pub fn solve_in_span<F: Field>(
    target: &[F],
    generators: &[Vec<F>],
) -> Result<Option<Vec<F>>> {
    let len = target.len();
    if let Some(bad) = generators.iter().find(|g| g.len() != len) {
        return Err(Error::DimensionMismatch { expected: len, found: bad.len() });
    }
    let gens: Vec<SparseVec<F>> = generators.iter().map(|g| SparseVec::from_dense(g)).collect();
    let t = SparseVec::from_dense(target);
    Ok(solve_sparse(&t, &gens, len).map(|c| c.to_dense(generators.len())))
}

/// Sparse form of [`solve_in_span`]; re-substitutes before returning.
pub fn solve_sparse<F: Field>(
    target: &SparseVec<F>,
    generators: &[SparseVec<F>],
    width: usize,
) -> Option<SparseVec<F>> {
    let mut ech = Echelon::with_tracking(width, true);
    for g in generators {
        ech.insert(g);
    }
    let coeffs = ech.solve(target)?;
    let mut check = SparseVec::new();
    for (k, c) in coeffs.iter() {
        check = check.axpy(c, &generators[*k]);
    }
    assert_eq!(&check, target, "span solution failed re-substitution");
    Some(coeffs)
}

/// Inverse of a square matrix, or `None` if singular.
pub fn inverse<F: Field>(m: &Matrix<F>) -> Option<Matrix<F>> {
    assert_eq!(m.rows(), m.cols(), "inverse of non-square matrix");
    let n = m.rows();
    let mut ech = Echelon::with_tracking(n, true);
    for r in m.row_vectors() {
        ech.insert(r);
    }
    if ech.rank() < n {
        return None;
    }
    ech.back_substitute();
    // Each RREF row is e_pivot = Σ combo_k row_k, so combo rows form the inverse
    // of m (acting on rows): inv * m = I with row `pivot` of inv = combo.
    let mut inv_rows = vec![SparseVec::new(); n];
    for (row, combo) in ech.rows.iter().zip(&ech.combos) {
        let p = row.leading().unwrap().0;
        debug_assert_eq!(row.nnz(), 1);
        inv_rows[p] = combo.clone();
    }
    Some(Matrix::from_rows(n, inv_rows))
}

/// Inertia `(positive, negative, zero)` of a symmetric rational matrix,
/// computed by exact congruence diagonalization.
pub fn inertia(m: &Matrix<Scalar>) -> (usize, usize, usize) {
    use num_traits::Signed;
    assert_eq!(m.rows(), m.cols());
    let n = m.rows();
    let mut a = m.to_dense();
    let mut pos = 0;
    let mut neg = 0;
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        let diag = active.iter().copied().find(|&i| !Field::is_zero(&a[i][i]));
        let p = match diag {
            Some(p) => p,
            None => {
                let pair = active.iter().flat_map(|&i| active.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| i != j && !Field::is_zero(&a[i][j]));
                let Some((i, j)) = pair else { break };
                // Replace basis vector i by e_i + e_j; the new diagonal is 2 a_ij.
                for k in 0..n {
                    let v = a[j][k].clone();
                    a[i][k] = a[i][k].add(&v);
                }
                for k in 0..n {
                    let v = a[k][j].clone();
                    a[k][i] = a[k][i].add(&v);
                }
                i
            }
        };
        let d = a[p][p].clone();
        if d.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        active.retain(|&i| i != p);
        let dinv = d.inv();
        for &i in &active {
            if Field::is_zero(&a[i][p]) {
                continue;
            }
            let f = a[i][p].mul(&dinv);
            for &j in &active {
                let v = a[p][j].clone();
                a[i][j].sub_mul_assign(&f, &v);
            }
            a[i][p] = Field::zero();
            a[p][i] = Field::zero();
        }
    }
    (pos, neg, n - pos - neg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::field::{int, ratio, Gaussian};

    fn m(rows: &[&[i64]]) -> Matrix<Scalar> {
        Matrix::from_dense(&rows.iter().map(|r| r.iter().map(|x| int(*x)).collect()).collect::<Vec<_>>())
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&Matrix::<Scalar>::zeros(0, 0)), 0);
        assert_eq!(rank(&Matrix::<Scalar>::identity(3)), 3);
        assert_eq!(rank(&m(&[&[1, 2], &[2, 4]])), 1);
        let sparse = LinalgConfig { dense_threshold: 1.1 };
        assert_eq!(rank_with(&m(&[&[1, 2], &[2, 4]]), &sparse), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&Matrix::identity(3)).is_empty());
        let k = kernel_basis(&m(&[&[1, -1]]));
        assert_eq!(k, vec![SparseVec::from_dense(&[int(1), int(1)])]);
        let k = kernel_basis(&Matrix::zeros(2, 3));
        assert_eq!(k.len(), 3);
        for (i, v) in k.iter().enumerate() {
            assert_eq!(v, &SparseVec::unit(i));
        }
    }

    #[test]
    fn kernel_is_integral_with_unit_content() {
        let k = kernel_basis(&m(&[&[2, 3, 0]]));
        assert_eq!(k[0].to_dense(3), [int(-3), int(2), int(0)].iter().map(|x| -x).collect::<Vec<_>>());
    }

    #[test]
    fn solve_examples() {
        let zero = vec![int(0), int(0)];
        let gens = vec![vec![int(1), int(0)], vec![int(0), int(1)]];
        assert_eq!(solve_in_span(&zero, &gens).unwrap(), Some(vec![int(0), int(0)]));
        assert_eq!(
            solve_in_span(&[int(1), int(1)], &gens).unwrap(),
            Some(vec![int(1), int(1)])
        );
        assert_eq!(solve_in_span(&[int(1), int(0)], &[vec![int(0), int(1)]]).unwrap(), None);
        assert!(matches!(
            solve_in_span(&[int(1)], &gens),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn inverse_and_inertia() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = inverse(&a).unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(2));
        assert!(inverse(&m(&[&[1, 2], &[2, 4]])).is_none());
        assert_eq!(inertia(&m(&[&[0, 1], &[1, 0]])), (1, 1, 0));
        assert_eq!(inertia(&m(&[&[-2, 0, 0], &[0, -1, 0], &[0, 0, 0]])), (0, 2, 1));
        let h = Matrix::from_dense(&[vec![ratio(1, 2), int(3)], vec![int(3), int(19)]]);
        assert_eq!(inertia(&h), (2, 0, 0));
        let degenerate = Matrix::from_dense(&[vec![ratio(1, 2), int(3)], vec![int(3), int(18)]]);
        assert_eq!(inertia(&degenerate), (1, 0, 1));
    }

    #[test]
    fn gaussian_rank() {
        let i = Gaussian::i();
        let one = Gaussian::one();
        let a = Matrix::from_dense(&[vec![one.clone(), i.clone()], vec![i.clone(), one.neg()]]);
        assert_eq!(rank(&a), 1);
    }
}
