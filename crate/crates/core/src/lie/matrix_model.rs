use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{Echelon, Field, Gaussian, Scalar, SparseVec};

use super::LieAlgebra;

/// Dense square matrix over the Gaussian rationals.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    n: usize,
    entries: Vec<Gaussian>,
}

impl ComplexMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, entries: vec![Gaussian::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, Gaussian::one());
        }
        m
    }

    /// `E_ij` scaled by `c`.
    pub fn unit(n: usize, i: usize, j: usize, c: Gaussian) -> Self {
        let mut m = Self::zeros(n);
        m.set(i, j, c);
        m
    }

    pub fn from_real(rows: &[Vec<Scalar>]) -> Self {
        let n = rows.len();
        let mut m = Self::zeros(n);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), n);
            for (j, x) in r.iter().enumerate() {
                m.set(i, j, Gaussian::real(x.clone()));
            }
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Gaussian {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Gaussian) {
        self.entries[i * self.n + j] = v;
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n);
        Self { n: self.n, entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n);
        Self { n: self.n, entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale(&self, c: &Gaussian) -> Self {
        Self { n: self.n, entries: self.entries.iter().map(|a| a.mul(c)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n);
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).add(&a.mul(b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn trace(&self) -> Gaussian {
        (0..self.n).fold(Gaussian::zero(), |acc, i| acc.add(self.get(i, i)))
    }

    pub fn conj_transpose(&self) -> Self {
        let mut m = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m.set(j, i, self.get(i, j).conj());
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Field::is_zero)
    }

    pub fn is_real(&self) -> bool {
        self.entries.iter().all(Gaussian::is_real)
    }

    /// Block matrix `[[a, b], [c, d]]`.
    pub fn blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        let n = a.n;
        let mut m = Self::zeros(2 * n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, a.get(i, j).clone());
                m.set(i, j + n, b.get(i, j).clone());
                m.set(i + n, j, c.get(i, j).clone());
                m.set(i + n, j + n, d.get(i, j).clone());
            }
        }
        m
    }

    /// Real coordinates: real parts then imaginary parts, row-major.
    pub fn real_coordinates(&self) -> SparseVec<Scalar> {
        let nn = self.n * self.n;
        let mut pairs = Vec::new();
        for (k, z) in self.entries.iter().enumerate() {
            if !Field::is_zero(&z.re) {
                pairs.push((k, z.re.clone()));
            }
        }
        for (k, z) in self.entries.iter().enumerate() {
            if !Field::is_zero(&z.im) {
                pairs.push((k + nn, z.im.clone()));
            }
        }
        SparseVec::from_pairs(pairs)
    }
}

impl fmt::Display for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// A real Lie algebra spanned by complex matrices, with the structure
/// constants of the matrix commutator.
#[derive(Clone, Debug)]
pub struct MatrixLieAlgebra {
    algebra: LieAlgebra,
    matrices: Vec<ComplexMatrix>,
    solver: Echelon<Scalar>,
}

impl MatrixLieAlgebra {
    /// The matrices must be ℝ-linearly independent and closed under commutators.
    pub fn new(labels: Vec<String>, matrices: Vec<ComplexMatrix>) -> Result<Self> {
        if labels.len() != matrices.len() {
            return Err(Error::DimensionMismatch { expected: matrices.len(), found: labels.len() });
        }
        let n = matrices.first().map_or(0, ComplexMatrix::n);
        let mut solver = Echelon::with_tracking(2 * n * n, true);
        for (i, m) in matrices.iter().enumerate() {
            if m.n() != n {
                return Err(Error::DimensionMismatch { expected: n, found: m.n() });
            }
            if solver.insert(&m.real_coordinates()).is_none() {
                return Err(Error::InvalidStructure(format!("matrix {} is linearly dependent", labels[i])));
            }
        }
        let mut entries = Vec::new();
        for a in 0..matrices.len() {
            for b in a + 1..matrices.len() {
                let c = matrices[a].commutator(&matrices[b]);
                let coords = solver.solve(&c.real_coordinates()).ok_or_else(|| {
                    Error::InvalidStructure(format!("[{}, {}] leaves the span", labels[a], labels[b]))
                })?;
                if !coords.is_zero() {
                    entries.push((a, b, coords));
                }
            }
        }
        let algebra = LieAlgebra::new(labels, entries)?;
        Ok(Self { algebra, matrices, solver })
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn matrices(&self) -> &[ComplexMatrix] {
        &self.matrices
    }

    pub fn into_parts(self) -> (LieAlgebra, Vec<ComplexMatrix>) {
        (self.algebra, self.matrices)
    }

    /// Coordinates of a matrix in the span, if it lies there.
    pub fn coordinates(&mut self, m: &ComplexMatrix) -> Option<SparseVec<Scalar>> {
        self.solver.solve(&m.real_coordinates())
    }

    /// `Σ x_i M_i`.
    pub fn matrix_of(&self, x: &SparseVec<Scalar>) -> ComplexMatrix {
        let n = self.matrices.first().map_or(0, ComplexMatrix::n);
        let mut acc = ComplexMatrix::zeros(n);
        for (i, c) in x.iter() {
            acc = acc.add(&self.matrices[*i].scale(&Gaussian::real(c.clone())));
        }
        acc
    }
}
