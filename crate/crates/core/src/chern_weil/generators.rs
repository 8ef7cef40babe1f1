use std::sync::Arc;

use crate::catalog::models::{self, SplitModel};
use crate::error::{Error, Result};
use crate::lie::{ComplexMatrix, LieAlgebra, MatrixLieAlgebra};
use crate::linalg::{int, Field, Gaussian, Scalar};

use super::polynomial::{poly_product_unchecked, InvariantPolynomial};

/// A compact algebra `k` with a faithful representation in some `u_N`,
/// aligned with its basis.
#[derive(Clone, Debug)]
pub struct CompactModel {
    pub name: String,
    pub algebra: Arc<LieAlgebra>,
    pub rep: Vec<ComplexMatrix>,
}

/// Family of a classical compact algebra, parsed from names like `so_4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CompactKind {
    So(usize),
    Su(usize),
    U(usize),
    Sp(usize),
}

impl CompactKind {
    pub fn parse(name: &str) -> Result<Self> {
        let bad = || Error::UnknownAlgebra(name.to_string());
        let (fam, n) = name.split_once('_').ok_or_else(bad)?;
        let n: usize = n.parse().map_err(|_| bad())?;
        let kind = match fam {
            "so" if n >= 2 => CompactKind::So(n),
            "su" if n >= 2 => CompactKind::Su(n),
            "u" if n >= 1 => CompactKind::U(n),
            "sp" if n >= 1 => CompactKind::Sp(n),
            _ => return Err(bad()),
        };
        Ok(kind)
    }

    pub fn name(&self) -> String {
        match self {
            CompactKind::So(n) => format!("so_{n}"),
            CompactKind::Su(n) => format!("su_{n}"),
            CompactKind::U(n) => format!("u_{n}"),
            CompactKind::Sp(n) => format!("sp_{n}"),
        }
    }

    /// Degrees of the primitive generators of `H^*(K; ℝ)`.
    pub fn primitive_degrees(&self) -> Vec<usize> {
        match *self {
            CompactKind::So(n) if n % 2 == 1 => (1..=n / 2).map(|i| 4 * i - 1).collect(),
            CompactKind::So(n) => {
                let q = n / 2;
                let mut d: Vec<usize> = (1..q).map(|i| 4 * i - 1).collect();
                d.push(2 * q - 1);
                d.sort_unstable();
                d
            }
            CompactKind::Su(n) => (2..=n).map(|i| 2 * i - 1).collect(),
            CompactKind::U(n) => (1..=n).map(|i| 2 * i - 1).collect(),
            CompactKind::Sp(n) => (1..=n).map(|i| 4 * i - 1).collect(),
        }
    }

    fn split_model(&self) -> SplitModel {
        match *self {
            CompactKind::So(n) => models::so(n),
            CompactKind::Su(n) => models::su(n),
            CompactKind::U(n) => models::u(n),
            CompactKind::Sp(n) => models::sp_compact(n),
        }
    }
}

impl CompactModel {
    /// The standard matrix model of a classical compact algebra.
    pub fn standard(name: &str) -> Result<Self> {
        let kind = CompactKind::parse(name)?;
        let m = kind.split_model();
        let (algebra, rep) = m.build()?.into_parts();
        Ok(Self { name: kind.name(), algebra: Arc::new(algebra), rep })
    }

    pub fn from_matrices(name: &str, algebra: Arc<LieAlgebra>, rep: Vec<ComplexMatrix>) -> Self {
        Self { name: name.into(), algebra, rep }
    }

    pub fn matrix_algebra(&self) -> Result<MatrixLieAlgebra> {
        MatrixLieAlgebra::new(self.algebra.labels().to_vec(), self.rep.clone())
    }

    pub fn kind(&self) -> Result<CompactKind> {
        CompactKind::parse(&self.name)
    }

    fn rep_size(&self) -> usize {
        self.rep.first().map_or(0, ComplexMatrix::n)
    }
}

fn real_part(z: Gaussian, what: &str) -> Result<Scalar> {
    z.to_real().ok_or_else(|| Error::NotReal(format!("{what}: {z}")))
}

/// Distinct orderings of a sorted multiset, each visited once with a shared
/// running prefix state.
fn arrangements<S: Clone>(
    key: &[usize],
    init: S,
    step: &impl Fn(&S, usize) -> S,
    leaf: &mut impl FnMut(&S),
) -> usize {
    let mut counts: Vec<(usize, usize)> = Vec::new();
    for &k in key {
        match counts.last_mut() {
            Some((v, c)) if *v == k => *c += 1,
            _ => counts.push((k, 1)),
        }
    }
    fn rec<S: Clone>(
        counts: &mut Vec<(usize, usize)>,
        left: usize,
        state: &S,
        step: &impl Fn(&S, usize) -> S,
        leaf: &mut impl FnMut(&S),
    ) -> usize {
        if left == 0 {
            leaf(state);
            return 1;
        }
        let mut n = 0;
        for i in 0..counts.len() {
            if counts[i].1 == 0 {
                continue;
            }
            counts[i].1 -= 1;
            let next = step(state, counts[i].0);
            n += rec(counts, left - 1, &next, step, leaf);
            counts[i].1 += 1;
        }
        n
    }
    let len = key.len();
    rec(&mut counts, len, &init, step, leaf)
}

/// `t_r(x_1, …, x_r)`: the symmetrized trace of `(iX_1)⋯(iX_r)`.
pub fn power_trace(model: &CompactModel, r: usize) -> Result<InvariantPolynomial> {
    let n = model.rep_size();
    let i_rep: Vec<ComplexMatrix> = model.rep.iter().map(|m| m.scale(&Gaussian::i())).collect();
    InvariantPolynomial::from_fn(model.algebra.clone(), r, &format!("t_{r}"), |key| {
        let mut acc = Gaussian::zero();
        let count = arrangements(key, ComplexMatrix::identity(n), &|s, i| s.mul(&i_rep[i]), &mut |s| {
            acc = acc.add(&s.trace());
        });
        let avg = acc.mul(&Gaussian::real(int(count as i64).recip()));
        real_part(avg, "power trace")
    })
}

/// `c_1, …, c_top` with `c_m = e_m` of the spectrum of `iX`, via Newton's
/// identities on the power-trace forms.
pub fn chern_forms(model: &CompactModel, top: usize) -> Result<Vec<InvariantPolynomial>> {
    let traces: Vec<InvariantPolynomial> = (1..=top).map(|r| power_trace(model, r)).collect::<Result<_>>()?;
    let mut e = vec![InvariantPolynomial::constant(model.algebra.clone(), int(1))];
    for m in 1..=top {
        let mut acc = InvariantPolynomial::zero(model.algebra.clone(), m);
        for r in 1..=m {
            let term = poly_product_unchecked(&e[m - r], &traces[r - 1])?;
            acc = if r % 2 == 1 { acc.add(&term)? } else { acc.sub(&term)? };
        }
        e.push(acc.scale(&int(m as i64).recip()).with_name(&format!("C_{m}")));
    }
    Ok(e.split_off(1))
}

/// `P_j = (-1)^j c_{2j}`, equal to `e_{2j}` of the spectrum of `X`.
pub fn pontryagin_forms(model: &CompactModel, top: usize) -> Result<Vec<InvariantPolynomial>> {
    even_chern(model, top, "P")
}

/// Symplectic analogues `Q_j = (-1)^j c_{2j}` of the quaternionic model.
pub fn symplectic_forms(model: &CompactModel, top: usize) -> Result<Vec<InvariantPolynomial>> {
    even_chern(model, top, "Q")
}

fn even_chern(model: &CompactModel, top: usize, letter: &str) -> Result<Vec<InvariantPolynomial>> {
    if top == 0 {
        return Ok(Vec::new());
    }
    let c = chern_forms(model, 2 * top)?;
    Ok((1..=top)
        .map(|j| {
            let sign = if j % 2 == 1 { int(-1) } else { int(1) };
            c[2 * j - 1].scale(&sign).with_name(&format!("{letter}_{j}"))
        })
        .collect())
}

/// Perfect matchings of `0..2q` as pair lists with their signs.
pub fn perfect_matchings(points: &[usize]) -> Vec<(i64, Vec<(usize, usize)>)> {
    if points.is_empty() {
        return vec![(1, Vec::new())];
    }
    let first = points[0];
    let mut out = Vec::new();
    for j in 1..points.len() {
        let rest: Vec<usize> = points[1..].iter().enumerate().filter(|(k, _)| *k + 1 != j).map(|(_, p)| *p).collect();
        // moving points[j] next to points[0] costs j - 1 transpositions
        let sign = if (j - 1) % 2 == 0 { 1 } else { -1 };
        for (s, mut m) in perfect_matchings(&rest) {
            m.insert(0, (first, points[j]));
            out.push((sign * s, m));
        }
    }
    out
}

/// Polarized Pfaffian on `so_{2q}`: `Pf(X_1, …, X_q)`.
pub fn pfaffian_form(model: &CompactModel) -> Result<InvariantPolynomial> {
    let n = model.rep_size();
    if n % 2 == 1 || n == 0 {
        return Err(Error::UnknownAlgebra(format!("Pfaffian needs an even-size model, got {}", model.name)));
    }
    let q = n / 2;
    let matchings = perfect_matchings(&(0..n).collect::<Vec<_>>());
    let entries: Vec<Vec<Scalar>> = model
        .rep
        .iter()
        .map(|m| {
            (0..n * n)
                .map(|t| real_part(m.get(t / n, t % n).clone(), "Pfaffian entry"))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    InvariantPolynomial::from_fn(model.algebra.clone(), q, &format!("E_{q}"), |key| {
        let mut acc = Scalar::zero();
        let count = arrangements(key, Vec::new(), &|s: &Vec<usize>, i| {
            let mut s = s.clone();
            s.push(i);
            s
        }, &mut |order| {
            for (sign, m) in &matchings {
                let mut prod = int(*sign);
                for (slot, (a, b)) in m.iter().enumerate() {
                    let x = &entries[order[slot]][a * n + b];
                    if x.is_zero() {
                        prod = Scalar::zero();
                        break;
                    }
                    prod *= x;
                }
                acc += prod;
            }
        });
        Ok(acc / int(count as i64))
    })
}

/// The classical generators of `(S k*)^k` up to cohomological degree
/// `max_degree` (a form of degree `m` has cohomological degree `2m`).
pub fn invariant_generators(k_name: &str, max_degree: usize) -> Result<Vec<InvariantPolynomial>> {
    let model = CompactModel::standard(k_name)?;
    generators_for(&model, max_degree)
}

pub fn generators_for(model: &CompactModel, max_degree: usize) -> Result<Vec<InvariantPolynomial>> {
    let top = max_degree / 2;
    Ok(match model.kind()? {
        CompactKind::U(n) => chern_forms(model, n.min(top))?,
        CompactKind::Su(n) => chern_forms(model, n.min(top))?.split_off(1.min(n.min(top))),
        CompactKind::So(n) => {
            let q = n / 2;
            let np = if n % 2 == 0 { q - 1 } else { q };
            let mut out = pontryagin_forms(model, np.min(top / 2))?;
            if n % 2 == 0 && q <= top {
                out.push(pfaffian_form(model)?);
            }
            out
        }
        CompactKind::Sp(n) => symplectic_forms(model, n.min(top / 2))?,
    })
}
