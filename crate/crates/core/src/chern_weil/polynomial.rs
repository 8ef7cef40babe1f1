use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::linalg::{int, Field, Matrix, Scalar, SparseVec};

/// A symmetric `m`-linear form on a Lie algebra, stored by its values on
/// sorted multisets of basis indices. Zero values are not stored.
#[derive(Clone, Debug)]
pub struct InvariantPolynomial {
    name: String,
    degree: usize,
    algebra: Arc<LieAlgebra>,
    values: BTreeMap<Vec<usize>, Scalar>,
}

/// First failing `(multiset, y)` pair of an invariance check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvarianceWitness {
    pub multiset: Vec<usize>,
    pub y: usize,
    pub residual: String,
}

/// Nondecreasing sequences of length `m` over `0..dim`.
pub fn multisets(dim: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(m);
    fn rec(dim: usize, m: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for i in start..dim {
            cur.push(i);
            rec(dim, m, i, cur, out);
            cur.pop();
        }
    }
    rec(dim, m, 0, &mut cur, &mut out);
    out
}

fn binomial(n: usize, k: usize) -> Scalar {
    let mut r = int(1);
    for i in 0..k {
        r = r * int((n - i) as i64) / int((i + 1) as i64);
    }
    r
}

impl InvariantPolynomial {
    pub fn zero(algebra: Arc<LieAlgebra>, degree: usize) -> Self {
        Self { name: "0".into(), degree, algebra, values: BTreeMap::new() }
    }

    /// The degree-zero form with value `c`.
    pub fn constant(algebra: Arc<LieAlgebra>, c: Scalar) -> Self {
        let mut values = BTreeMap::new();
        if !c.is_zero() {
            values.insert(Vec::new(), c.clone());
        }
        Self { name: c.to_string(), degree: 0, algebra, values }
    }

    /// Tabulates `f` on every multiset. `f` must be symmetric.
    pub fn from_fn(
        algebra: Arc<LieAlgebra>,
        degree: usize,
        name: &str,
        f: impl Fn(&[usize]) -> Result<Scalar> + Sync,
    ) -> Result<Self> {
        let keys = multisets(algebra.dim(), degree);
        let vals: Vec<Result<(Vec<usize>, Scalar)>> =
            keys.into_par_iter().map(|k| f(&k).map(|v| (k, v))).collect();
        let mut values = BTreeMap::new();
        for r in vals {
            let (k, v) = r?;
            if !v.is_zero() {
                values.insert(k, v);
            }
        }
        Ok(Self { name: name.into(), degree, algebra, values })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.into();
        self
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// Nonzero values keyed by sorted multiset.
    pub fn values(&self) -> &BTreeMap<Vec<usize>, Scalar> {
        &self.values
    }

    /// Value on basis vectors in any order.
    pub fn value(&self, indices: &[usize]) -> Scalar {
        let mut key = indices.to_vec();
        key.sort_unstable();
        self.values.get(&key).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Multilinear evaluation on arbitrary vectors.
    pub fn eval(&self, args: &[SparseVec<Scalar>]) -> Scalar {
        assert_eq!(args.len(), self.degree);
        let mut acc = Scalar::zero();
        let mut idx = Vec::with_capacity(self.degree);
        self.expand(args, &mut idx, int(1), &mut acc);
        acc
    }

    fn expand(&self, args: &[SparseVec<Scalar>], idx: &mut Vec<usize>, coeff: Scalar, acc: &mut Scalar) {
        let k = idx.len();
        if k == args.len() {
            let v = self.value(idx);
            if !v.is_zero() {
                *acc += coeff * v;
            }
            return;
        }
        for (i, c) in args[k].iter() {
            idx.push(*i);
            self.expand(args, idx, &coeff * c, acc);
            idx.pop();
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let values = if c.is_zero() {
            BTreeMap::new()
        } else {
            self.values.iter().map(|(k, v)| (k.clone(), v * c)).collect()
        };
        Self { name: format!("{c}·{}", self.name), degree: self.degree, algebra: self.algebra.clone(), values }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, -1)
    }

    fn combine(&self, other: &Self, sign: i64) -> Result<Self> {
        self.same_algebra(other)?;
        if self.degree != other.degree {
            return Err(Error::DimensionMismatch { expected: self.degree, found: other.degree });
        }
        let mut values = self.values.clone();
        for (k, v) in &other.values {
            let e = values.entry(k.clone()).or_insert_with(Scalar::zero);
            *e += v * int(sign);
        }
        values.retain(|_, v| !v.is_zero());
        let op = if sign > 0 { "+" } else { "-" };
        Ok(Self { name: format!("{} {op} {}", self.name, other.name), degree: self.degree, algebra: self.algebra.clone(), values })
    }

    fn same_algebra(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.algebra, &other.algebra) || *self.algebra == *other.algebra {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    /// Exhaustive check of `Σ_i P(x_1, …, [x_i, y], …, x_m) = 0` on basis
    /// multisets and basis `y`.
    pub fn invariance_check(&self) -> (bool, Option<InvarianceWitness>) {
        let n = self.algebra.dim();
        if self.degree == 0 || self.algebra.is_abelian() {
            return (true, None);
        }
        let keys = multisets(n, self.degree);
        let failure = keys.par_iter().find_map_first(|key| {
            for y in 0..n {
                let r = self.invariance_residual(key, y);
                if !r.is_zero() {
                    return Some(InvarianceWitness { multiset: key.clone(), y, residual: r.to_string() });
                }
            }
            None
        });
        (failure.is_none(), failure)
    }

    fn invariance_residual(&self, key: &[usize], y: usize) -> Scalar {
        let mut acc = Scalar::zero();
        let mut slot = key.to_vec();
        for i in 0..key.len() {
            let br = self.algebra.bracket_basis(key[i], y);
            for (t, c) in br.iter() {
                slot[i] = *t;
                let v = self.value(&slot);
                if !v.is_zero() {
                    acc += c * v;
                }
            }
            slot[i] = key[i];
        }
        acc
    }

    pub fn is_invariant(&self) -> bool {
        self.invariance_check().0
    }

    /// Values along the diagonal: `P(x, …, x)`.
    pub fn on_diagonal(&self, x: &SparseVec<Scalar>) -> Scalar {
        self.eval(&vec![x.clone(); self.degree])
    }
}

/// Symmetrized tensor product; degrees add. The result is re-checked for
/// invariance.
pub fn poly_product(p: &InvariantPolynomial, q: &InvariantPolynomial) -> Result<InvariantPolynomial> {
    let r = poly_product_unchecked(p, q)?;
    if !r.is_invariant() {
        return Err(Error::Internal(format!("product {} is not invariant", r.name)));
    }
    Ok(r)
}

pub(crate) fn poly_product_unchecked(p: &InvariantPolynomial, q: &InvariantPolynomial) -> Result<InvariantPolynomial> {
    p.same_algebra(q)?;
    let (a, b) = (p.degree, q.degree);
    let name = format!("{}·{}", p.name, q.name);
    if p.is_zero() || q.is_zero() {
        return Ok(InvariantPolynomial::zero(p.algebra.clone(), a + b).with_name(&name));
    }
    let norm = binomial(a + b, a).recip();
    InvariantPolynomial::from_fn(p.algebra.clone(), a + b, &name, |key| {
        let mut acc = Scalar::zero();
        for_each_subset(key.len(), a, &mut |mask| {
            let (left, right): (Vec<usize>, Vec<usize>) = {
                let mut l = Vec::with_capacity(a);
                let mut r = Vec::with_capacity(b);
                for (i, k) in key.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        l.push(*k);
                    } else {
                        r.push(*k);
                    }
                }
                (l, r)
            };
            let lv = p.value(&left);
            if !lv.is_zero() {
                let rv = q.value(&right);
                if !rv.is_zero() {
                    acc += lv * rv;
                }
            }
        });
        Ok(acc * &norm)
    })
}

fn for_each_subset(n: usize, k: usize, f: &mut impl FnMut(u64)) {
    fn rec(n: usize, k: usize, start: usize, mask: u64, f: &mut impl FnMut(u64)) {
        if k == 0 {
            f(mask);
            return;
        }
        for i in start..n {
            if n - i < k {
                break;
            }
            rec(n, k - 1, i + 1, mask | 1 << i, f);
        }
    }
    rec(n, k, 0, 0, f);
}

/// Checks that the columns of `inclusion` (small basis in big coordinates)
/// define a Lie algebra morphism `small → big`.
pub fn check_morphism(small: &LieAlgebra, big: &LieAlgebra, inclusion: &Matrix<Scalar>) -> Result<()> {
    if inclusion.rows() != big.dim() || inclusion.cols() != small.dim() {
        return Err(Error::DimensionMismatch { expected: big.dim() * small.dim(), found: inclusion.rows() * inclusion.cols() });
    }
    let cols = inclusion.columns();
    for i in 0..small.dim() {
        for j in i + 1..small.dim() {
            let lhs = inclusion.mul_vec(small.bracket_basis(i, j));
            let rhs = big.bracket_sparse(&cols[i], &cols[j]);
            if lhs != rhs {
                return Err(Error::NotAMorphism { i, j });
            }
        }
    }
    Ok(())
}

/// Pulls `p` back along `small → big`.
pub fn restrict_polynomial(
    p: &InvariantPolynomial,
    small: Arc<LieAlgebra>,
    inclusion: &Matrix<Scalar>,
) -> Result<InvariantPolynomial> {
    check_morphism(&small, p.algebra(), inclusion)?;
    let cols = inclusion.columns();
    let name = format!("i*({})", p.name);
    let r = InvariantPolynomial::from_fn(small, p.degree, &name, |key| {
        let args: Vec<SparseVec<Scalar>> = key.iter().map(|&i| cols[i].clone()).collect();
        Ok(p.eval(&args))
    })?;
    if !r.is_invariant() {
        return Err(Error::Internal(format!("{name} is not invariant")));
    }
    Ok(r)
}
