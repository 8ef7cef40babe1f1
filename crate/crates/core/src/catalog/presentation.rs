use serde::{Deserialize, Serialize};

/// Free part of `H^*(BK; ℤ)` as a polynomial ring on named generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedRingPresentation {
    /// `(name, cohomological degree)`.
    pub generators: Vec<(String, usize)>,
    /// Rewrite rules `generator² = name`, used only for display.
    pub relations: Vec<SquareRelation>,
    pub provenance: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareRelation {
    pub generator: String,
    pub square: String,
}

/// Exponent vector over the generators of a presentation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Monomial {
    pub exponents: Vec<usize>,
}

impl Monomial {
    pub fn degree(&self, pres: &GradedRingPresentation) -> usize {
        self.exponents.iter().zip(&pres.generators).map(|(e, (_, d))| e * d).sum()
    }

    /// Generator indices with multiplicity, ascending.
    pub fn factors(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (i, e) in self.exponents.iter().enumerate() {
            out.extend(std::iter::repeat_n(i, *e));
        }
        out
    }

    /// Display name, e.g. `P_1^2`, `P_1E_2`, `1`. Declared squares are
    /// rewritten: `E_2^2` prints as `P_2`.
    pub fn name(&self, pres: &GradedRingPresentation) -> String {
        let mut parts: Vec<(String, usize)> = Vec::new();
        for (i, e) in self.exponents.iter().enumerate() {
            if *e == 0 {
                continue;
            }
            let g = &pres.generators[i].0;
            match pres.relations.iter().find(|r| &r.generator == g) {
                Some(r) if *e >= 2 => {
                    parts.push((r.square.clone(), e / 2));
                    if e % 2 == 1 {
                        parts.push((g.clone(), 1));
                    }
                }
                _ => parts.push((g.clone(), *e)),
            }
        }
        if parts.is_empty() {
            return "1".into();
        }
        parts.iter().map(|(g, e)| if *e == 1 { g.clone() } else { format!("{g}^{e}") }).collect()
    }
}

impl GradedRingPresentation {
    pub fn free(generators: Vec<(String, usize)>, provenance: &str) -> Self {
        Self { generators, relations: Vec::new(), provenance: provenance.into() }
    }

    /// Rank of the degree-`n` part.
    pub fn free_rank(&self, n: usize) -> usize {
        monomial_basis(self, n).len()
    }
}

/// All monomials of total degree `n`, in lexicographic exponent order with
/// the first generator's exponent largest first.
pub fn monomial_basis(pres: &GradedRingPresentation, n: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0; pres.generators.len()];
    fill(pres, 0, n, &mut exps, &mut out);
    out
}

fn fill(pres: &GradedRingPresentation, i: usize, remaining: usize, exps: &mut Vec<usize>, out: &mut Vec<Monomial>) {
    if i == exps.len() {
        if remaining == 0 {
            out.push(Monomial { exponents: exps.clone() });
        }
        return;
    }
    let d = pres.generators[i].1;
    let max = if d == 0 { 0 } else { remaining / d };
    for e in (0..=max).rev() {
        exps[i] = e;
        fill(pres, i + 1, remaining - e * d, exps, out);
    }
    exps[i] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bu2() -> GradedRingPresentation {
        GradedRingPresentation::free(vec![("C_1".into(), 2), ("C_2".into(), 4)], "")
    }

    #[test]
    fn degree_zero_is_unit() {
        let b = monomial_basis(&bu2(), 0);
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].name(&bu2()), "1");
    }

    #[test]
    fn bu2_degree_four() {
        let p = bu2();
        let names: Vec<_> = monomial_basis(&p, 4).iter().map(|m| m.name(&p)).collect();
        assert_eq!(names, vec!["C_1^2", "C_2"]);
        assert_eq!(p.free_rank(3), 0);
    }

    #[test]
    fn euler_square_prints_as_pontryagin() {
        let p = GradedRingPresentation {
            generators: vec![("P_1".into(), 4), ("E_2".into(), 4)],
            relations: vec![SquareRelation { generator: "E_2".into(), square: "P_2".into() }],
            provenance: String::new(),
        };
        let names: Vec<_> = monomial_basis(&p, 8).iter().map(|m| m.name(&p)).collect();
        assert_eq!(names, vec!["P_1^2", "P_1E_2", "P_2"]);
    }
}
