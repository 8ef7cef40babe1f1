//! `H^n(G; U(1))` assembled from relative cohomology, the n.c.z. test and
//! the characteristic morphisms.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::catalog::{Family, GroupSpec};
use crate::ce::{ncz_from_results, ComputeConfig, FullComplex, NczReport, RelativeCohomology};
use crate::chern_weil::{epsilon_with, ChernWeil, EpsilonResult};
use crate::error::{Error, Result};
use crate::lie::CoefficientModule;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportForm {
    Split,
    Les,
}

/// One degree of `H^n(G; U(1))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeLine {
    pub degree: usize,
    /// κ injective in this degree.
    pub ncz: bool,
    pub relative_betti: usize,
    /// Free rank of `H^{n+1}(BK; ℤ)`.
    pub bk_free_rank_next: usize,
    pub epsilon_rank: usize,
    pub epsilon_rank_next: usize,
    /// `relative_betti - epsilon_rank`.
    pub coker_rank: usize,
    /// `bk_free_rank_next - epsilon_rank_next`.
    pub ker_rank_next: usize,
    pub description: String,
    /// Both ends known and one of them trivial.
    pub determined: bool,
    pub torsion_omitted: bool,
    /// Free rank of `H^n(BK; ℤ)`, for the same-index display of the
    /// complex-group example.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub example_index_rank: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupCohomologyReport {
    pub group: String,
    pub max_degree: usize,
    pub form: ReportForm,
    pub lines: Vec<DegreeLine>,
    pub torsion_omitted: bool,
    pub flags: Vec<String>,
}

/// Everything the reports need, computed once.
pub struct GroupData<'a> {
    pub spec: &'a GroupSpec,
    /// Degrees `0..=max_degree + 1` are covered.
    pub max_degree: usize,
    pub relative: RelativeCohomology,
    pub absolute_betti: Vec<usize>,
    pub absolute_route: &'static str,
    pub ncz: NczReport,
    pub epsilon: BTreeMap<usize, EpsilonResult>,
}

impl<'a> GroupData<'a> {
    pub fn compute(spec: &'a GroupSpec, max_degree: usize, config: &ComputeConfig) -> Result<Self> {
        let top = max_degree + 1;
        let cw = ChernWeil::with_config(&spec.dec, config.clone())?;
        let relative = cw.complex().cohomology(top)?;
        let full_top = top.min(spec.g.dim());
        let full = FullComplex::with_config(&spec.g, &CoefficientModule::trivial(&spec.g, 1), config.clone())
            .cohomology(full_top)?;
        let ncz = ncz_from_results(&relative, &full, top)?;
        let mut epsilon = BTreeMap::new();
        for n in 1..=top {
            epsilon.insert(n, epsilon_with(spec, &cw, &relative, n)?);
        }
        Ok(Self {
            spec,
            max_degree,
            absolute_betti: full.betti(),
            absolute_route: full.route(),
            relative,
            ncz,
            epsilon,
        })
    }

    fn relative_betti(&self, n: usize) -> usize {
        self.relative.betti().get(n).copied().unwrap_or(0)
    }

    fn ncz_at(&self, n: usize) -> bool {
        self.ncz.degrees.get(n).is_none_or(|d| d.injective)
    }

    fn epsilon_rank(&self, n: usize) -> usize {
        self.epsilon.get(&n).map_or(0, |e| e.rank)
    }

    /// First degree `≤ max_degree + 1` where n.c.z. fails.
    pub fn ncz_failure(&self) -> Option<usize> {
        self.ncz.first_failure
    }

    fn base_line(&self, n: usize) -> DegreeLine {
        let spec = self.spec;
        let b = self.relative_betti(n);
        let bk_next = spec.bk_presentation.free_rank(n + 1);
        let e = self.epsilon_rank(n);
        let e_next = self.epsilon_rank(n + 1);
        DegreeLine {
            degree: n,
            ncz: self.ncz_at(n),
            relative_betti: b,
            bk_free_rank_next: bk_next,
            epsilon_rank: e,
            epsilon_rank_next: e_next,
            coker_rank: b - e,
            ker_rank_next: bk_next - e_next,
            description: String::new(),
            determined: true,
            torsion_omitted: spec.torsion_omitted,
            example_index_rank: matches!(spec.family, Family::SlComplex(_)).then(|| spec.bk_presentation.free_rank(n)),
        }
    }

    fn flags(&self) -> Vec<String> {
        let mut flags = Vec::new();
        if self.spec.torsion_omitted {
            flags.push("torsion_omitted: torsion of H*(BSO_n; Z) is not tracked; free parts only".into());
        }
        if matches!(self.spec.family, Family::SlComplex(_)) {
            flags.push(
                "example_index_discrepancy: the BSU summand is taken in degree n+1 (splitting formula); \
                 the complex-group example pairs it with degree n"
                    .into(),
            );
        }
        flags.push("integrality: ranks are computed over Q; the integral normalization of generators is not tracked".into());
        flags
    }
}

fn power(symbol: &str, k: usize) -> String {
    if k == 0 {
        "0".into()
    } else {
        format!("{symbol}^{k}")
    }
}

fn split_description(real: usize, lattice: usize) -> String {
    if real == 0 && lattice == 0 {
        return "0".into();
    }
    format!("{} ⊕ {}", power("ℝ", real), power("ℤ", lattice))
}

/// `ℝ^a ⊕ (ℝ/ℤ)^b`: the image of a rational lattice map is discrete, so the
/// cokernel is a vector group times a torus.
fn coker_description(real: usize, torus: usize) -> String {
    match (real, torus) {
        (0, 0) => "0".into(),
        (r, 0) => power("ℝ", r),
        (0, t) => format!("(ℝ/ℤ)^{t}"),
        (r, t) => format!("ℝ^{r} ⊕ (ℝ/ℤ)^{t}"),
    }
}

/// `H^n(G; A) ≅ H^n((g,K); a) ⊕ H^{n+1}(BG; Γ)` for `1 ≤ n ≤ max_degree`.
pub fn assemble_split(data: &GroupData) -> Result<GroupCohomologyReport> {
    if let Some(d) = data.ncz_failure() {
        return Err(Error::NczFailed(d));
    }
    let lines = (1..=data.max_degree)
        .map(|n| {
            let mut l = data.base_line(n);
            l.description = split_description(l.relative_betti, l.bk_free_rank_next);
            l
        })
        .collect();
    Ok(GroupCohomologyReport {
        group: data.spec.name.clone(),
        max_degree: data.max_degree,
        form: ReportForm::Split,
        lines,
        torsion_omitted: data.spec.torsion_omitted,
        flags: data.flags(),
    })
}

/// `0 → coker(ε^n) → H^n(G; A) → ker(ε^{n+1}) → 0` for `1 ≤ n ≤ max_degree`.
/// Degrees where both ε ranks vanish print the split description.
pub fn les_report(data: &GroupData) -> GroupCohomologyReport {
    let lines = (1..=data.max_degree)
        .map(|n| {
            let mut l = data.base_line(n);
            if l.epsilon_rank == 0 && l.epsilon_rank_next == 0 {
                l.description = split_description(l.relative_betti, l.bk_free_rank_next);
                l.determined = true;
            } else {
                let coker = coker_description(l.coker_rank, l.epsilon_rank);
                let ker = power("ℤ", l.ker_rank_next);
                l.determined = coker == "0" || ker == "0";
                let mut d = format!("0 → coker(ε^{n}) ≅ {coker} → H^{n} → ker(ε^{}) ≅ {ker} → 0", n + 1);
                if l.determined {
                    let value = if coker == "0" { ker } else { coker };
                    let _ = write!(d, "; H^{n} ≅ {value}");
                }
                l.description = d;
            }
            l
        })
        .collect();
    let form = if data.ncz_failure().is_none() { ReportForm::Split } else { ReportForm::Les };
    GroupCohomologyReport {
        group: data.spec.name.clone(),
        max_degree: data.max_degree,
        form,
        lines,
        torsion_omitted: data.spec.torsion_omitted,
        flags: data.flags(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairSummary {
    pub g_dim: usize,
    pub k_name: String,
    pub k_dim: usize,
    pub p_dim: usize,
    pub dual: String,
    pub bk_generators: Vec<(String, usize)>,
    pub k_primitive_degrees: Vec<usize>,
}

/// The bundled document behind `symcoh report`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FullReport {
    pub group: String,
    pub max_degree: usize,
    pub pair: PairSummary,
    pub relative_betti: Vec<usize>,
    pub absolute_betti: Vec<usize>,
    pub absolute_route: String,
    pub ncz: NczReport,
    pub epsilon: BTreeMap<usize, EpsilonResult>,
    pub cohomology: GroupCohomologyReport,
}

pub fn full_report(spec: &GroupSpec, max_degree: usize, config: &ComputeConfig) -> Result<FullReport> {
    let data = GroupData::compute(spec, max_degree, config)?;
    let cohomology = match data.ncz_failure() {
        None => assemble_split(&data)?,
        Some(_) => les_report(&data),
    };
    Ok(FullReport {
        group: spec.name.clone(),
        max_degree,
        pair: PairSummary {
            g_dim: spec.g.dim(),
            k_name: spec.k_name.clone(),
            k_dim: spec.dec.k_dim(),
            p_dim: spec.dec.p_dim(),
            dual: spec.dual_name.clone(),
            bk_generators: spec.bk_presentation.generators.clone(),
            k_primitive_degrees: spec.k_primitive_degrees.clone(),
        },
        relative_betti: data.relative.betti(),
        absolute_betti: data.absolute_betti.clone(),
        absolute_route: data.absolute_route.to_string(),
        ncz: data.ncz.clone(),
        epsilon: data.epsilon.clone(),
        cohomology,
    })
}

impl FullReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let p = &self.pair;
        let _ = writeln!(s, "{}  (dim g = {}, k = {} dim {}, p dim {}, dual {})", self.group, p.g_dim, p.k_name, p.k_dim, p.p_dim, p.dual);
        let _ = writeln!(s, "relative betti: {:?}", self.relative_betti);
        let _ = writeln!(s, "absolute betti: {:?} ({})", self.absolute_betti, self.absolute_route);
        let odd = match self.ncz.odd_generation {
            Some(b) => b.to_string(),
            None => "n/a".into(),
        };
        let _ = writeln!(
            s,
            "n.c.z. through degree {}: {} (kappa: {}, odd generation: {})",
            self.ncz.max_degree, self.ncz.ncz, self.ncz.kappa_verdict, odd
        );
        if let Some(d) = self.ncz.first_failure {
            let _ = writeln!(s, "  kappa fails first in degree {d}");
        }
        let _ = writeln!(s, "epsilon:");
        for (n, e) in &self.epsilon {
            if e.hopf_vanishing {
                let _ = writeln!(s, "  {n:>3}  0 (odd degree)");
                continue;
            }
            let _ = write!(s, "  {n:>3}  rank {}", e.rank);
            if !e.nonzero_monomials.is_empty() {
                let _ = write!(s, "  nonzero on {}", e.nonzero_monomials.join(", "));
            }
            if !e.kernel.is_empty() {
                let _ = write!(s, "  kernel {}", e.kernel.join(", "));
            }
            let _ = writeln!(s);
        }
        let form = match self.cohomology.form {
            ReportForm::Split => "split",
            ReportForm::Les => "long exact sequence",
        };
        let _ = writeln!(s, "H^n({}; U(1)), {form}:", self.group);
        for l in &self.cohomology.lines {
            let _ = writeln!(s, "  {:>3}  {}", l.degree, l.description);
        }
        for f in &self.cohomology.flags {
            let _ = writeln!(s, "note: {f}");
        }
        s
    }
}
