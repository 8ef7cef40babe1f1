use std::sync::Arc;

use serde::Serialize;

use crate::ce::{ComputeConfig, FullComplex};
use crate::chern_weil::{generators_for, CompactKind, CompactModel, InvariantPolynomial};
use crate::error::{Error, Result};
use crate::lie::{CartanDecomposition, CoefficientModule, LieAlgebra, MatrixLieAlgebra};

use super::models::{self, SplitModel};
use super::presentation::{GradedRingPresentation, SquareRelation};

/// `Γ = ℤ ⊂ a = ℝ`, `A = a/Γ = U(1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coefficients {
    pub lattice: &'static str,
    pub vector_space: &'static str,
    pub torus: &'static str,
}

impl Default for Coefficients {
    fn default() -> Self {
        Self { lattice: "Z", vector_space: "R", torus: "U(1)" }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Family {
    SlReal(usize),
    SlComplex(usize),
    SuStar(usize),
    SpReal(usize),
    Su(usize),
    So(usize),
    Custom,
}

/// A named pair `(G, K)` with its Cartan decomposition and curated tables.
#[derive(Clone, Debug)]
pub struct GroupSpec {
    pub name: String,
    pub family: Family,
    pub g: LieAlgebra,
    pub dec: CartanDecomposition,
    pub k_name: String,
    pub dual_name: String,
    pub bk_presentation: GradedRingPresentation,
    pub k_primitive_degrees: Vec<usize>,
    pub coefficients: Coefficients,
    /// `k` with a representation used to build invariant forms; absent for
    /// custom pairs.
    pub k_model: Option<CompactModel>,
    /// Torsion of `H^*(BSO_n; ℤ)` is not tracked.
    pub torsion_omitted: bool,
}

impl GroupSpec {
    /// A pair read from files: no presentation, no generator forms.
    pub fn custom(name: &str, g: LieAlgebra, dec: CartanDecomposition) -> Result<Self> {
        let k_dim = dec.k_dim();
        Ok(Self {
            name: name.into(),
            family: Family::Custom,
            g,
            dec,
            k_name: format!("k (dim {k_dim})"),
            dual_name: "compact dual".into(),
            bk_presentation: GradedRingPresentation::free(Vec::new(), "none: custom pair"),
            k_primitive_degrees: Vec::new(),
            coefficients: Coefficients::default(),
            k_model: None,
            torsion_omitted: false,
        })
    }

    pub fn k_kind(&self) -> Option<CompactKind> {
        CompactKind::parse(&self.k_name).ok()
    }

    /// Generator forms of the BK presentation with cohomological degree
    /// `≤ max_degree`, keyed by generator index.
    pub fn generator_forms(&self, max_degree: usize) -> Result<Vec<(usize, InvariantPolynomial)>> {
        let Some(model) = &self.k_model else {
            return Ok(Vec::new());
        };
        let forms = generators_for(model, max_degree)?;
        let mut out = Vec::new();
        for f in forms {
            let idx = self
                .bk_presentation
                .generators
                .iter()
                .position(|(n, _)| n == f.name())
                .ok_or_else(|| Error::Internal(format!("generator {} missing from the presentation", f.name())))?;
            out.push((idx, f));
        }
        Ok(out)
    }
}

/// `H^*(BK; ℤ)` free part for a classical compact `K`.
pub fn bk_presentation(kind: CompactKind) -> GradedRingPresentation {
    let gens = |letter: &str, range: std::ops::RangeInclusive<usize>, step: usize| {
        range.map(|i| (format!("{letter}_{i}"), step * i)).collect::<Vec<_>>()
    };
    match kind {
        CompactKind::So(n) if n % 2 == 1 => GradedRingPresentation::free(gens("P", 1..=n / 2, 4), "H*(BSO_n) free part: Pontryagin classes"),
        CompactKind::So(n) => {
            let q = n / 2;
            let mut g = gens("P", 1..=q - 1, 4);
            g.push((format!("E_{q}"), 2 * q));
            GradedRingPresentation {
                generators: g,
                relations: vec![SquareRelation { generator: format!("E_{q}"), square: format!("P_{q}") }],
                provenance: "H*(BSO_n) free part: Pontryagin classes and Euler class".into(),
            }
        }
        CompactKind::Su(n) => GradedRingPresentation::free(gens("C", 2..=n, 2), "H*(BSU_n): Chern classes"),
        CompactKind::U(n) => GradedRingPresentation::free(gens("C", 1..=n, 2), "H*(BU_n): Chern classes"),
        CompactKind::Sp(n) => GradedRingPresentation::free(gens("Q", 1..=n, 4), "H*(BSp_n): symplectic Pontryagin classes"),
    }
}

fn parse_name(name: &str) -> Option<(String, Vec<String>)> {
    let name = name.trim();
    let open = name.find('(')?;
    let inner = name[open + 1..].strip_suffix(')')?;
    let args = inner.split(',').map(|s| s.trim().to_string()).collect();
    Some((name[..open].trim().to_string(), args))
}

/// Parses `SL(n,R)`, `SL(n,C)`, `SU*(4)`, `Sp(n,R)`, `SU(n)`, `SO(n)`.
pub fn parse_family(name: &str) -> Result<Family> {
    let unknown = || Error::UnknownGroup(name.to_string());
    let (head, args) = parse_name(name).ok_or_else(unknown)?;
    let n: usize = args.first().and_then(|a| a.parse().ok()).ok_or_else(unknown)?;
    let field = args.get(1).map(String::as_str);
    let family = match (head.as_str(), field, args.len()) {
        ("SL", Some("R"), 2) if (2..=6).contains(&n) => Family::SlReal(n),
        ("SL", Some("C"), 2) if (2..=3).contains(&n) => Family::SlComplex(n),
        ("SU*", None, 1) if n == 4 => Family::SuStar(n / 2),
        ("Sp", Some("R"), 2) if (1..=2).contains(&n) => Family::SpReal(n),
        ("SU", None, 1) if (2..=4).contains(&n) => Family::Su(n),
        ("SO", None, 1) if (3..=5).contains(&n) => Family::So(n),
        _ => return Err(unknown()),
    };
    Ok(family)
}

/// Builds a catalog pair and validates the decomposition, the compact dual
/// and the representation of `k`.
pub fn builtin_group(name: &str) -> Result<GroupSpec> {
    let family = parse_family(name)?;
    let (model, kind, dual_name): (SplitModel, CompactKind, String) = match family {
        Family::SlReal(n) => (models::sl_real(n), CompactKind::So(n), format!("SU({n})")),
        Family::SlComplex(n) => (models::sl_complex(n), CompactKind::Su(n), format!("SU({n})×SU({n})")),
        Family::SuStar(n) => (models::su_star(n), CompactKind::Sp(n), format!("SU({})", 2 * n)),
        Family::SpReal(n) => (models::sp_real(n), CompactKind::U(n), format!("Sp({n})")),
        Family::Su(n) => (models::su(n), CompactKind::Su(n), format!("SU({n})")),
        Family::So(n) => (models::so(n), CompactKind::So(n), format!("SO({n})")),
        Family::Custom => unreachable!(),
    };
    let k_dim = model.k_dim;
    let k_rep = model.k_rep.clone();
    let (g, _) = model.build()?.into_parts();
    let n = g.dim();
    let dec = CartanDecomposition::from_indices(&g, &(0..k_dim).collect::<Vec<_>>(), &(k_dim..n).collect::<Vec<_>>())?;
    dec.checked_compact_dual()?;
    let k_algebra = dec.k_algebra();
    let rep_algebra = MatrixLieAlgebra::new(k_algebra.labels().to_vec(), k_rep.clone())?;
    if rep_algebra.algebra() != &k_algebra {
        return Err(Error::Internal(format!("representation of k in {name} is not a homomorphism")));
    }
    let torsion_omitted = matches!(kind, CompactKind::So(m) if m >= 3);
    Ok(GroupSpec {
        name: name.trim().to_string(),
        family,
        g,
        dec,
        k_name: kind.name(),
        dual_name,
        bk_presentation: bk_presentation(kind),
        k_primitive_degrees: kind.primitive_degrees(),
        coefficients: Coefficients::default(),
        k_model: Some(CompactModel::from_matrices(&kind.name(), Arc::new(k_algebra), k_rep)),
        torsion_omitted,
    })
}

/// Betti numbers of an exterior algebra on generators of the given degrees.
pub fn exterior_betti(degrees: &[usize]) -> Vec<usize> {
    let top: usize = degrees.iter().sum();
    let mut b = vec![0usize; top + 1];
    b[0] = 1;
    for &d in degrees {
        for n in (d..=top).rev() {
            b[n] += b[n - d];
        }
    }
    b
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Crosscheck {
    pub k_name: String,
    pub primitive_degrees: Vec<usize>,
    pub expected: Vec<usize>,
    pub computed: Vec<usize>,
    pub passed: bool,
}

/// Compares `H^*(k; ℝ)` from the CE complex with the exterior algebra on the
/// curated primitive degrees.
pub fn k_cohomology_crosscheck(spec: &GroupSpec, config: &ComputeConfig) -> Result<Crosscheck> {
    let k = spec.dec.k_algebra();
    let computed = FullComplex::with_config(&k, &CoefficientModule::trivial(&k, 1), config.clone())
        .cohomology(k.dim())?
        .betti();
    let mut expected = exterior_betti(&spec.k_primitive_degrees);
    expected.resize(computed.len(), 0);
    Ok(Crosscheck {
        k_name: spec.k_name.clone(),
        primitive_degrees: spec.k_primitive_degrees.clone(),
        passed: expected == computed,
        expected,
        computed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::monomial_basis;

    #[test]
    fn names() {
        assert_eq!(parse_family("SL(3,R)").unwrap(), Family::SlReal(3));
        assert_eq!(parse_family("SU*(4)").unwrap(), Family::SuStar(2));
        assert_eq!(parse_family("Sp(2,R)").unwrap(), Family::SpReal(2));
        assert!(matches!(parse_family("SL(7,R)"), Err(Error::UnknownGroup(_))));
        assert!(matches!(parse_family("G2"), Err(Error::UnknownGroup(_))));
        assert!(matches!(parse_family("SU(3,R)"), Err(Error::UnknownGroup(_))));
    }

    #[test]
    fn sl2_and_sl3() {
        let s = builtin_group("SL(2,R)").unwrap();
        assert_eq!((s.g.dim(), s.dec.k_dim()), (3, 1));
        assert_eq!(s.bk_presentation.generators, vec![("E_1".to_string(), 2)]);
        assert!(!s.torsion_omitted);
        let s = builtin_group("SL(3,R)").unwrap();
        assert_eq!((s.g.dim(), s.dec.k_dim(), s.dec.p_dim()), (8, 3, 5));
        assert!(s.torsion_omitted);
        assert_eq!(s.k_primitive_degrees, vec![3]);
    }

    #[test]
    fn su_star_dimensions() {
        let s = builtin_group("SU*(4)").unwrap();
        assert_eq!((s.g.dim(), s.dec.k_dim(), s.dec.p_dim()), (15, 10, 5));
        assert_eq!(s.k_name, "sp_2");
    }

    #[test]
    fn realified_complex_signature() {
        let s = builtin_group("SL(2,C)").unwrap();
        assert_eq!(s.g.dim(), 6);
        assert_eq!(s.g.killing_signature(), (3, 3, 0));
    }

    #[test]
    fn bso4_monomials() {
        let p = bk_presentation(CompactKind::So(4));
        let names: Vec<_> = monomial_basis(&p, 8).iter().map(|m| m.name(&p)).collect();
        assert_eq!(names, vec!["P_1^2", "P_1E_2", "P_2"]);
    }

    #[test]
    fn exterior_betti_numbers() {
        assert_eq!(exterior_betti(&[3]), vec![1, 0, 0, 1]);
        assert_eq!(exterior_betti(&[1, 3]), vec![1, 1, 0, 1, 1]);
        assert_eq!(exterior_betti(&[3, 3]), vec![1, 0, 0, 2, 0, 0, 1]);
    }

    #[test]
    fn crosscheck_small() {
        for name in ["SL(3,R)", "SL(4,R)", "Sp(2,R)", "SU(2)"] {
            let s = builtin_group(name).unwrap();
            let c = k_cohomology_crosscheck(&s, &ComputeConfig::default()).unwrap();
            assert!(c.passed, "{name}: {:?}", c);
        }
    }

    #[test]
    fn generator_forms_match_presentation() {
        let s = builtin_group("SL(4,R)").unwrap();
        let f = s.generator_forms(4).unwrap();
        let names: Vec<_> = f.iter().map(|(_, p)| p.name().to_string()).collect();
        assert_eq!(names, vec!["P_1", "E_2"]);
    }
}
