use crate::error::{Error, Result};
use crate::exterior::{binom, elements, insertion_sign, lex_rank, mask_of, shuffle_sign, sort_sign, ExteriorBasis};
use crate::linalg::{Field, Matrix, Scalar, SparseVec};

use super::structure::{Action, Structure};

/// An alternating `n`-linear map `Λ^n g → a`, stored by value on increasing
/// basis tuples. Coordinate `lex_rank(S) * module_dim + α` holds the `α`-th
/// component of `ω(x_S)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Cochain<F: Field = Scalar> {
    degree: usize,
    dim: usize,
    module_dim: usize,
    coords: SparseVec<F>,
}

impl<F: Field> Cochain<F> {
    pub fn zero(dim: usize, module_dim: usize, degree: usize) -> Self {
        Self { degree, dim, module_dim, coords: SparseVec::new() }
    }

    pub fn from_coords(dim: usize, module_dim: usize, degree: usize, coords: SparseVec<F>) -> Self {
        let len = Self::space_dim(dim, module_dim, degree);
        assert!(coords.max_index().is_none_or(|m| m < len), "cochain coordinates out of range");
        Self { degree, dim, module_dim, coords }
    }

    /// Builds a cochain from `(subset, component, value)` triples.
    pub fn from_values(
        dim: usize,
        module_dim: usize,
        degree: usize,
        values: impl IntoIterator<Item = (u64, usize, F)>,
    ) -> Self {
        let pairs = values
            .into_iter()
            .map(|(mask, a, v)| {
                assert_eq!(mask.count_ones() as usize, degree);
                (lex_rank(mask, dim) * module_dim + a, v)
            })
            .collect();
        Self::from_coords(dim, module_dim, degree, SparseVec::from_pairs(pairs))
    }

    /// The scalar cochain `x_{i_1}^* ∧ … ∧ x_{i_n}^*` (indices increasing).
    pub fn dual_basis(dim: usize, indices: &[usize]) -> Self {
        assert!(indices.windows(2).all(|w| w[0] < w[1]));
        Self::from_values(dim, 1, indices.len(), [(mask_of(indices), 0, F::one())])
    }

    /// The constant `1` in degree zero.
    pub fn unit(dim: usize) -> Self {
        Self::from_values(dim, 1, 0, [(0, 0, F::one())])
    }

    pub fn space_dim(dim: usize, module_dim: usize, degree: usize) -> usize {
        binom(dim, degree) as usize * module_dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn module_dim(&self) -> usize {
        self.module_dim
    }

    pub fn coords(&self) -> &SparseVec<F> {
        &self.coords
    }

    pub fn into_coords(self) -> SparseVec<F> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }

    pub fn len(&self) -> usize {
        Self::space_dim(self.dim, self.module_dim, self.degree)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `(subset, component, value)` for every nonzero coordinate.
    pub fn values(&self) -> Vec<(u64, usize, F)> {
        let basis = ExteriorBasis::new(self.dim, self.degree);
        self.coords
            .iter()
            .map(|(i, v)| (basis.subset(i / self.module_dim), i % self.module_dim, v.clone()))
            .collect()
    }

    /// Value on an increasing tuple given as a mask.
    pub fn value(&self, mask: u64, component: usize) -> F {
        self.coords.get(lex_rank(mask, self.dim) * self.module_dim + component)
    }

    /// Value on an arbitrary sequence of basis indices.
    pub fn eval(&self, seq: &[usize], component: usize) -> F {
        assert_eq!(seq.len(), self.degree);
        let s = sort_sign(seq);
        if s == 0 {
            return F::zero();
        }
        let v = self.value(mask_of(seq), component);
        if s < 0 {
            v.neg()
        } else {
            v
        }
    }

    fn same_shape(&self, other: &Self) {
        assert_eq!((self.dim, self.module_dim, self.degree), (other.dim, other.module_dim, other.degree));
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_shape(other);
        Self { coords: self.coords.add(&other.coords), ..self.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.same_shape(other);
        Self { coords: self.coords.sub(&other.coords), ..self.clone() }
    }

    pub fn scale(&self, c: &F) -> Self {
        Self { coords: self.coords.scale(c), ..self.clone() }
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Cochain<G> {
        Cochain { degree: self.degree, dim: self.dim, module_dim: self.module_dim, coords: self.coords.map(f) }
    }

    /// Keeps only the coordinates whose subset satisfies `keep`.
    pub fn restrict(&self, keep: impl Fn(u64) -> bool) -> Self {
        let basis = ExteriorBasis::new(self.dim, self.degree);
        let m = self.module_dim;
        let pairs = self.coords.iter().filter(|(i, _)| keep(basis.subset(i / m))).cloned().collect();
        Self { coords: SparseVec::from_sorted_unchecked(pairs), ..self.clone() }
    }

    /// `i_y ω (x_1, …) = ω(y, x_1, …)`.
    pub fn insertion(&self, y: &SparseVec<F>) -> Result<Self> {
        if self.degree == 0 {
            return Err(Error::DegreeZero);
        }
        if y.max_index().is_some_and(|k| k >= self.dim) {
            return Err(Error::DimensionMismatch { expected: self.dim, found: y.max_index().unwrap() + 1 });
        }
        let m = self.module_dim;
        let mut pairs = Vec::new();
        for (mask, a, v) in self.values() {
            for k in elements(mask) {
                let yk = y.get(k);
                if yk.is_zero() {
                    continue;
                }
                let rest = mask & !(1u64 << k);
                let c = yk.mul(&v);
                let c = if insertion_sign(rest, k) < 0 { c.neg() } else { c };
                pairs.push((lex_rank(rest, self.dim) * m + a, c));
            }
        }
        Ok(Self::from_coords(self.dim, m, self.degree - 1, SparseVec::from_pairs(pairs)))
    }

    /// `θ_y ω(x_1, …, x_n) = Σ_i ω(…, [x_i, y], …) + y.ω(x_1, …, x_n)`.
    pub fn lie_derivative(&self, structure: &Structure<F>, action: &Action<F>, y: &SparseVec<F>) -> Self {
        // [x_s, y] = Σ_j y_j [x_s, x_j]
        let ad_y: Vec<SparseVec<F>> = (0..self.dim)
            .map(|s| {
                let mut acc = SparseVec::new();
                for (j, yj) in y.iter() {
                    acc = acc.axpy(yj, structure.bracket_basis(s, *j));
                }
                acc
            })
            .collect();
        self.lie_derivative_with(&ad_y, action.of_element(y).as_ref())
    }

    /// `θ_y` given `bracket_with_y[s] = [x_s, y]` and the matrix of `y` on `a`.
    pub fn lie_derivative_with(&self, bracket_with_y: &[SparseVec<F>], rho_y: Option<&Matrix<F>>) -> Self {
        let m = self.module_dim;
        let mut pairs = Vec::new();
        let values = self.values();
        for (mask, a, v) in &values {
            // contributions to θω(T) where T = (mask \ k) ∪ s and [x_s, y] has an x_k part
            for k in elements(*mask) {
                let rest = mask & !(1u64 << k);
                for s in 0..self.dim {
                    if rest & (1u64 << s) != 0 {
                        continue;
                    }
                    let c = bracket_with_y[s].get(k);
                    if c.is_zero() {
                        continue;
                    }
                    let target = rest | (1u64 << s);
                    let mut seq: Vec<usize> = elements(target).collect();
                    let pos = seq.iter().position(|&t| t == s).unwrap();
                    seq[pos] = k;
                    let sign = sort_sign(&seq);
                    let val = c.mul(v);
                    let val = if sign < 0 { val.neg() } else { val };
                    pairs.push((lex_rank(target, self.dim) * m + a, val));
                }
            }
        }
        if let Some(rho) = rho_y {
            for (mask, a, v) in &values {
                for b in 0..m {
                    let r = rho.get(b, *a);
                    if !r.is_zero() {
                        pairs.push((lex_rank(*mask, self.dim) * m + b, r.mul(v)));
                    }
                }
            }
        }
        Self::from_coords(self.dim, m, self.degree, SparseVec::from_pairs(pairs))
    }

    /// The Chevalley–Eilenberg differential.
    pub fn differential(&self, structure: &Structure<F>, action: &Action<F>) -> Self {
        let mut acc = SparseVec::new();
        for (mask, a, v) in self.values() {
            let col = differential_column(structure, action, self.degree, mask, a);
            acc = acc.axpy(&v, &col);
        }
        Self::from_coords(self.dim, self.module_dim, self.degree + 1, acc)
    }

    /// `(α ∪ β)(x_S) = Σ_{A ⊔ B = S} sgn(A, B) α(x_A) β(x_B)` for scalar cochains.
    pub fn cup(&self, other: &Self) -> Result<Self> {
        if self.module_dim != 1 || other.module_dim != 1 {
            return Err(Error::NonTrivialCoefficients);
        }
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        let mut pairs = Vec::new();
        let right = other.values();
        for (a_mask, _, a) in self.values() {
            for (b_mask, _, b) in &right {
                if a_mask & b_mask != 0 {
                    continue;
                }
                let v = a.mul(b);
                let v = if shuffle_sign(a_mask, *b_mask) < 0 { v.neg() } else { v };
                pairs.push((lex_rank(a_mask | b_mask, self.dim), v));
            }
        }
        Ok(Self::from_coords(self.dim, 1, self.degree + other.degree, SparseVec::from_pairs(pairs)))
    }

    /// `ω'(e_{t_1}, …, e_{t_n}) = ω(M e_{t_1}, …, M e_{t_n})` where column `t`
    /// of `columns` is a new basis vector written in the old basis. Only the
    /// subsets accepted by `keep` are evaluated.
    pub fn pullback(&self, columns: &[SparseVec<F>], keep: impl Fn(u64) -> bool) -> Self {
        let new_dim = columns.len();
        let m = self.module_dim;
        let basis = ExteriorBasis::new(new_dim, self.degree);
        let mut pairs = Vec::new();
        let mut seq = Vec::with_capacity(self.degree);
        let mut out = vec![F::zero(); m];
        for (idx, &target) in basis.subsets().iter().enumerate() {
            if !keep(target) {
                continue;
            }
            let cols: Vec<&SparseVec<F>> = elements(target).map(|t| &columns[t]).collect();
            for o in out.iter_mut() {
                *o = F::zero();
            }
            seq.clear();
            self.expand(&cols, 0, F::one(), &mut seq, &mut out);
            for (a, v) in out.iter().enumerate() {
                if !v.is_zero() {
                    pairs.push((idx * m + a, v.clone()));
                }
            }
        }
        Cochain::from_coords(new_dim, m, self.degree, SparseVec::from_sorted_unchecked(pairs))
    }

    fn expand(&self, cols: &[&SparseVec<F>], depth: usize, coef: F, seq: &mut Vec<usize>, out: &mut [F]) {
        if depth == cols.len() {
            let s = sort_sign(seq);
            if s == 0 {
                return;
            }
            let mask = mask_of(seq);
            let base = lex_rank(mask, self.dim) * self.module_dim;
            for (a, o) in out.iter_mut().enumerate() {
                let v = self.coords.get(base + a);
                if !v.is_zero() {
                    let t = coef.mul(&v);
                    *o = if s < 0 { o.sub(&t) } else { o.add(&t) };
                }
            }
            return;
        }
        for (k, c) in cols[depth].iter() {
            if seq.contains(k) {
                continue;
            }
            seq.push(*k);
            self.expand(cols, depth + 1, coef.mul(c), seq, out);
            seq.pop();
        }
    }
}

/// Column of `d: C^n → C^{n+1}` at the basis cochain `x_S^* ⊗ e_α`.
pub fn differential_column<F: Field>(
    structure: &Structure<F>,
    action: &Action<F>,
    degree: usize,
    source: u64,
    alpha: usize,
) -> SparseVec<F> {
    let dim = structure.dim();
    let m = action.dim;
    let mut pairs = Vec::new();
    // bracket terms: T = R ∪ {a, b} with S = R ∪ {k} and c^k_ab ≠ 0
    for k in elements(source) {
        let rest = source & !(1u64 << k);
        let s_k = insertion_sign(rest, k);
        for (a, b, c) in structure.producing(k) {
            let (a, b) = (*a, *b);
            if rest & ((1u64 << a) | (1u64 << b)) != 0 {
                continue;
            }
            let target = rest | (1u64 << a) | (1u64 << b);
            let i = (target & ((1u64 << a) - 1)).count_ones();
            let j = (target & ((1u64 << b) - 1)).count_ones();
            let sign = s_k * if (i + j).is_multiple_of(2) { 1 } else { -1 };
            let v = if sign < 0 { c.neg() } else { c.clone() };
            pairs.push((lex_rank(target, dim) * m + alpha, v));
        }
    }
    // module terms: T = S ∪ {t}
    if !action.is_trivial() {
        for t in 0..dim {
            if source & (1u64 << t) != 0 {
                continue;
            }
            let target = source | (1u64 << t);
            let pos_sign = insertion_sign(source, t);
            for beta in 0..m {
                let r = action.entry(t, beta, alpha);
                if !r.is_zero() {
                    pairs.push((lex_rank(target, dim) * m + beta, if pos_sign < 0 { r.neg() } else { r }));
                }
            }
        }
    }
    let _ = degree;
    SparseVec::from_pairs(pairs)
}

/// Matrix of `d: C^n → C^{n+1}` (rows: degree `n+1` coordinates).
pub fn differential_matrix<F: Field>(structure: &Structure<F>, action: &Action<F>, degree: usize) -> Matrix<F> {
    let dim = structure.dim();
    let m = action.dim;
    let basis = ExteriorBasis::new(dim, degree);
    let mut columns = Vec::with_capacity(basis.len() * m);
    for &mask in basis.subsets() {
        for alpha in 0..m {
            columns.push(differential_column(structure, action, degree, mask, alpha));
        }
    }
    Matrix::from_columns(Cochain::<F>::space_dim(dim, m, degree + 1), &columns)
}
