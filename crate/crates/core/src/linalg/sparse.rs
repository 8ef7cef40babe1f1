use std::fmt;

use super::field::Field;

/// A sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, PartialEq, Debug)]
pub struct SparseVec<F> {
    entries: Vec<(usize, F)>,
}

impl<F: Field> Default for SparseVec<F> {
    fn default() -> Self {
        Self::new()
    }
}

impl<F: Field> SparseVec<F> {
    pub fn new() -> Self {
        Self { entries: Vec::new() }
    }

    /// Builds from unsorted `(index, value)` pairs, summing duplicates and
    /// dropping zeros.
    pub fn from_pairs(mut pairs: Vec<(usize, F)>) -> Self {
        pairs.sort_by_key(|(i, _)| *i);
        let mut entries: Vec<(usize, F)> = Vec::with_capacity(pairs.len());
        for (i, v) in pairs {
            match entries.last_mut() {
                Some((j, acc)) if *j == i => *acc = acc.add(&v),
                _ => entries.push((i, v)),
            }
        }
        entries.retain(|(_, v)| !v.is_zero());
        Self { entries }
    }

    /// Trusts the caller: indices strictly increasing, values nonzero.
    pub(crate) fn from_sorted_unchecked(entries: Vec<(usize, F)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|(_, v)| !v.is_zero()));
        Self { entries }
    }

    pub fn from_dense(values: &[F]) -> Self {
        Self {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    pub fn unit(index: usize) -> Self {
        Self { entries: vec![(index, F::one())] }
    }

    pub fn to_dense(&self, len: usize) -> Vec<F> {
        let mut out = vec![F::zero(); len];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, F)> + '_ {
        self.entries.iter()
    }

    pub fn entries(&self) -> &[(usize, F)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, F)> {
        self.entries
    }

    pub fn get(&self, index: usize) -> F {
        match self.entries.binary_search_by_key(&index, |(i, _)| *i) {
            Ok(pos) => self.entries[pos].1.clone(),
            Err(_) => F::zero(),
        }
    }

    pub fn leading(&self) -> Option<&(usize, F)> {
        self.entries.first()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::new();
        }
        Self {
            entries: self.entries.iter().map(|(i, v)| (*i, v.mul(c))).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            entries: self.entries.iter().map(|(i, v)| (*i, v.neg())).collect(),
        }
    }

    /// `self + c * other`
    pub fn axpy(&self, c: &F, other: &Self) -> Self {
        if c.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, y.mul(c)));
                        b.next();
                    } else {
                        let v = x.add(&y.mul(c));
                        if !v.is_zero() {
                            out.push((*i, v));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, y.mul(c)));
                    b.next();
                }
                (None, None) => break,
            }
        }
        Self { entries: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.axpy(&F::one(), other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.axpy(&F::one().neg(), other)
    }

    pub fn dot(&self, other: &Self) -> F {
        let mut acc = F::zero();
        let (mut a, mut b) = (0, 0);
        while a < self.entries.len() && b < other.entries.len() {
            let (i, x) = &self.entries[a];
            let (j, y) = &other.entries[b];
            if i < j {
                a += 1;
            } else if j < i {
                b += 1;
            } else {
                acc = acc.add(&x.mul(y));
                a += 1;
                b += 1;
            }
        }
        acc
    }

    pub fn dot_dense(&self, dense: &[F]) -> F {
        let mut acc = F::zero();
        for (i, v) in &self.entries {
            if !dense[*i].is_zero() {
                acc = acc.add(&v.mul(&dense[*i]));
            }
        }
        acc
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> SparseVec<G> {
        SparseVec::from_sorted_unchecked(
            self.entries
                .iter()
                .map(|(i, v)| (*i, f(v)))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        )
    }

    pub fn reindex(&self, f: impl Fn(usize) -> usize) -> Self {
        Self::from_pairs(self.entries.iter().map(|(i, v)| (f(*i), v.clone())).collect())
    }
}

/// Sparse row-major matrix.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec<F>>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![SparseVec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rows: n,
            cols: n,
            data: (0..n).map(SparseVec::unit).collect(),
        }
    }

    pub fn from_rows(cols: usize, data: Vec<SparseVec<F>>) -> Self {
        assert!(
            data.iter().all(|r| r.max_index().is_none_or(|m| m < cols)),
            "row entry out of range"
        );
        Self { rows: data.len(), cols, data }
    }

    pub fn from_columns(rows: usize, columns: &[SparseVec<F>]) -> Self {
        let mut pairs: Vec<Vec<(usize, F)>> = vec![Vec::new(); rows];
        for (c, col) in columns.iter().enumerate() {
            for (r, v) in col.iter() {
                assert!(*r < rows, "column entry out of range");
                pairs[*r].push((c, v.clone()));
            }
        }
        Self {
            rows,
            cols: columns.len(),
            data: pairs.into_iter().map(SparseVec::from_sorted_unchecked).collect(),
        }
    }

    pub fn from_dense(values: &[Vec<F>]) -> Self {
        let cols = values.first().map_or(0, Vec::len);
        assert!(values.iter().all(|r| r.len() == cols), "ragged dense matrix");
        Self {
            rows: values.len(),
            cols,
            data: values.iter().map(|r| SparseVec::from_dense(r)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &SparseVec<F> {
        &self.data[r]
    }

    pub fn row_vectors(&self) -> &[SparseVec<F>] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> F {
        self.data[r].get(c)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(SparseVec::nnz).sum()
    }

    pub fn density(&self) -> f64 {
        if self.rows == 0 || self.cols == 0 {
            return 0.0;
        }
        self.nnz() as f64 / (self.rows as f64 * self.cols as f64)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(SparseVec::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_columns(self.cols, &self.data)
    }

    pub fn columns(&self) -> Vec<SparseVec<F>> {
        self.transpose().data
    }

    pub fn to_dense(&self) -> Vec<Vec<F>> {
        self.data.iter().map(|r| r.to_dense(self.cols)).collect()
    }

    pub fn mul_vec(&self, v: &SparseVec<F>) -> SparseVec<F> {
        let pairs: Vec<(usize, F)> = self
            .data
            .iter()
            .enumerate()
            .map(|(r, row)| (r, row.dot(v)))
            .filter(|(_, x)| !x.is_zero())
            .collect();
        SparseVec::from_sorted_unchecked(pairs)
    }

    pub fn mul(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc = SparseVec::new();
                for (k, v) in row.iter() {
                    acc = acc.axpy(v, &other.data[*k]);
                }
                acc
            })
            .collect();
        Matrix { rows: self.rows, cols: other.cols, data }
    }

    pub fn add(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Matrix<F> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|r| r.scale(c)).collect(),
        }
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G + Copy) -> Matrix<G> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|r| r.map(f)).collect(),
        }
    }

    pub fn trace(&self) -> F {
        let mut acc = F::zero();
        for i in 0..self.rows.min(self.cols) {
            acc = acc.add(&self.get(i, i));
        }
        acc
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }
}

impl<F: Field> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::field::{int, Scalar};

    fn v(pairs: &[(usize, i64)]) -> SparseVec<Scalar> {
        SparseVec::from_pairs(pairs.iter().map(|(i, x)| (*i, int(*x))).collect())
    }

    #[test]
    fn from_pairs_merges_and_drops_zeros() {
        let s = v(&[(3, 1), (1, 2), (3, -1), (0, 0)]);
        assert_eq!(s.entries(), &[(1, int(2))]);
    }

    #[test]
    fn axpy_merges() {
        let a = v(&[(0, 1), (2, 3)]);
        let b = v(&[(1, 1), (2, 1)]);
        assert_eq!(a.axpy(&int(-3), &b), v(&[(0, 1), (1, -3)]));
    }

    #[test]
    fn transpose_round_trip() {
        let m = Matrix::from_dense(&[vec![int(1), int(0), int(2)], vec![int(0), int(3), int(0)]]);
        assert_eq!(m.transpose().transpose(), m);
        assert_eq!(m.transpose().get(2, 0), int(2));
        assert_eq!(m.nnz(), 3);
    }
}
