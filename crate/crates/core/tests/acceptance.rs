//! One line per acceptance criterion; exits nonzero if any fails.

mod common;

use std::time::Instant;

use symcoh::catalog::{builtin_group, k_cohomology_crosscheck, GroupSpec};
use symcoh::ce::{mu_transport, ncz_from_relative, ComputeConfig, FullComplex, RelativeComplex};
use symcoh::chern_weil::{
    epsilon_with, poly_product, power_trace, restrict_polynomial, ChernWeil, CompactModel, InvariantPolynomial,
};
use symcoh::lie::CoefficientModule;
use symcoh::linalg::{int, Field, Matrix, Scalar, SparseVec};
use symcoh::reports::{full_report, ReportForm};

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn group(name: &str) -> Result<GroupSpec, String> {
    builtin_group(name).map_err(|e| format!("{name}: {e}"))
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn relative_betti(spec: &GroupSpec, max: usize) -> Result<Vec<usize>, String> {
    let m = CoefficientModule::trivial(&spec.g, 1);
    let rel = RelativeComplex::from_decomposition(&spec.dec, &m).map_err(e)?;
    Ok(rel.cohomology(max).map_err(e)?.betti())
}

fn property_suite() -> Check {
    for seed in 0..50u64 {
        common::check_seed(seed).map_err(|m| format!("seed {seed}: {m}"))?;
    }
    Ok("50 random algebras, trivial and 2-dim modules".into())
}

fn whitehead() -> Check {
    let mut seen = Vec::new();
    for name in ["SL(2,R)", "SU(2)", "SL(3,R)", "SU(3)", "SO(4)", "Sp(2,R)"] {
        let s = group(name)?;
        let b = FullComplex::trivial(&s.g).cohomology(2).map_err(e)?.betti();
        ensure!(b[1] == 0 && b[2] == 0, "{name}: betti {b:?}");
        seen.push(name);
    }
    Ok(format!("H^1 = H^2 = 0 for {}", seen.join(", ")))
}

fn kunneth() -> Check {
    let s = group("SL(2,C)")?;
    let su2 = group("SU(2)")?;
    let compact = FullComplex::trivial(&su2.g).cohomology(3).map_err(e)?.betti();
    let cfg = ComputeConfig::default();
    let rel = RelativeComplex::from_decomposition(&s.dec, &CoefficientModule::trivial(&s.g, 1)).map_err(e)?;
    let r = ncz_from_relative(&rel, 3, &cfg).map_err(e)?;
    let rb: Vec<usize> = r.degrees.iter().map(|d| d.relative_betti).collect();
    ensure!(rb == compact, "relative {rb:?} vs su_2 {compact:?}");
    let k3 = &r.degrees[3];
    ensure!(k3.injective && k3.kappa_rank == 1, "kappa^3 rank {}", k3.kappa_rank);
    Ok(format!("relative betti {rb:?} = H^*(su_2), kappa^3 injective"))
}

fn ncz_verdicts() -> Check {
    let cfg = ComputeConfig::default();
    let mut out = Vec::new();
    for (name, expect, failure) in [("SL(3,R)", true, None), ("SU*(4)", true, None), ("SL(2,R)", false, Some(2))] {
        let s = group(name)?;
        let rel = RelativeComplex::from_decomposition(&s.dec, &CoefficientModule::trivial(&s.g, 1)).map_err(e)?;
        let r = ncz_from_relative(&rel, s.dec.p_dim(), &cfg).map_err(|x| format!("{name}: {x}"))?;
        ensure!(r.ncz == expect && r.first_failure == failure, "{name}: ncz {} first failure {:?}", r.ncz, r.first_failure);
        ensure!(r.odd_generation == Some(r.kappa_verdict), "{name}: paths {:?} / {}", r.odd_generation, r.kappa_verdict);
        out.push(format!("{name} {}", r.ncz));
    }
    Ok(out.join(", "))
}

fn relative_goldens() -> Check {
    let goldens: [(&str, &[usize]); 3] =
        [("SL(3,R)", &[1, 0, 0, 0, 0, 1]), ("Sp(2,R)", &[1, 0, 1, 0, 1, 0, 1]), ("SL(2,R)", &[1, 0, 1])];
    for (name, want) in goldens {
        let s = group(name)?;
        let top = want.len() - 1;
        let got = relative_betti(&s, top)?;
        ensure!(got == want, "{name}: {got:?}");
        // same betti on the compact dual pair, and every representative
        // transports to an invariant closed cochain there
        let dual = s.dec.dual_decomposition().map_err(e)?;
        let dual_rel =
            RelativeComplex::from_decomposition(&dual, &CoefficientModule::trivial(dual.parent(), 1)).map_err(e)?;
        let dual_h = dual_rel.cohomology(top).map_err(e)?;
        ensure!(dual_h.betti() == want, "{name}: dual betti {:?}", dual_h.betti());
        let rel = RelativeComplex::from_decomposition(&s.dec, &CoefficientModule::trivial(&s.g, 1)).map_err(e)?;
        let h = rel.cohomology(top).map_err(e)?;
        for n in 0..=top {
            let mut rows = Vec::new();
            for r in h.representatives(n) {
                let moved = mu_transport(&s.dec, &rel.to_adapted(&r)).map_err(e)?;
                let q = dual_rel.from_adapted(&moved).map_err(e)?;
                ensure!(dual_rel.is_invariant(&q), "{name}: degree {n} not invariant in the dual");
                ensure!(dual_rel.apply_d(&q).is_zero(), "{name}: degree {n} not closed in the dual");
                rows.push(SparseVec::from_dense(&dual_h.class_of(&q).map_err(e)?));
            }
            let rk = symcoh::linalg::rank(&Matrix::from_rows(want[n], rows));
            ensure!(rk == want[n], "{name}: transported classes in degree {n} have rank {rk}");
        }
    }
    Ok("SL(3,R), Sp(2,R), SL(2,R) match and agree with the compact duals".into())
}

fn euler_class() -> Check {
    let s = group("SL(4,R)")?;
    let cw = ChernWeil::new(&s.dec).map_err(e)?;
    let h = cw.complex().cohomology(4).map_err(e)?;
    let forms = s.generator_forms(4).map_err(e)?;
    let (_, pf) = forms.iter().find(|(_, p)| p.name() == "E_2").ok_or("no Euler form")?;
    let class = h.class_of(&cw.cw(pf).map_err(e)?).map_err(e)?;
    ensure!(class.iter().any(|x| !x.is_zero()), "cw(Pf) is exact");
    let r = full_report(&s, 4, &ComputeConfig::default()).map_err(e)?;
    let e4 = r.epsilon.get(&4).ok_or("no epsilon^4")?;
    ensure!(e4.nonzero_monomials.contains(&"E_2".to_string()), "epsilon^4 nonzero on {:?}", e4.nonzero_monomials);
    Ok(format!("cw(Pf) class {:?}, epsilon^4(E_2) != 0", class.iter().map(|x| x.to_string()).collect::<Vec<_>>()))
}

fn restriction_kernel() -> Check {
    let su4 = CompactModel::standard("su_4").map_err(e)?;
    let so4 = CompactModel::standard("so_4").map_err(e)?;
    let mut big = su4.matrix_algebra().map_err(e)?;
    let cols: Vec<SparseVec<Scalar>> =
        so4.rep.iter().map(|m| big.coordinates(m).ok_or("so_4 not in su_4")).collect::<Result<_, _>>()?;
    let inc = Matrix::from_columns(su4.algebra.dim(), &cols);
    let t3 = power_trace(&su4, 3).map_err(e)?;
    ensure!(!t3.is_zero(), "t_3 vanishes on su_4");
    ensure!(restrict_polynomial(&t3, so4.algebra.clone(), &inc).map_err(e)?.is_zero(), "t_3 restricts to nonzero");
    let t2 = restrict_polynomial(&power_trace(&su4, 2).map_err(e)?, so4.algebra.clone(), &inc).map_err(e)?;
    ensure!(!t2.is_zero(), "t_2 restricts to zero");
    Ok("t_3 |so_4 = 0, t_2 |so_4 != 0".into())
}

fn sp_kernel() -> Check {
    let s = group("Sp(2,R)")?;
    let cw = ChernWeil::new(&s.dec).map_err(e)?;
    let h = cw.complex().cohomology(4).map_err(e)?;
    let forms = s.generator_forms(4).map_err(e)?;
    let (c1, c2) = (&forms[0].1, &forms[1].1);
    ensure!(c1.name() == "C_1" && c2.name() == "C_2", "generators {} {}", c1.name(), c2.name());
    let two_c2 = poly_product(c2, &InvariantPolynomial::constant(c2.algebra().clone(), int(2))).map_err(e)?;
    let combo = poly_product(c1, c1).map_err(e)?.sub(&two_c2).map_err(e)?;
    ensure!(h.is_exact(&cw.cw(&combo).map_err(e)?).map_err(e)?, "C_1^2 - 2C_2 not in the kernel");
    ensure!(!h.is_exact(&cw.cw(c2).map_err(e)?).map_err(e)?, "C_2 in the kernel");
    let eps = epsilon_with(&s, &cw, &h, 4).map_err(e)?;
    ensure!(eps.rank == 1, "epsilon^4 rank {}", eps.rank);
    Ok(format!("epsilon^4 rank 1, kernel {:?}", eps.kernel))
}

fn multiplicativity() -> Check {
    let s = group("Sp(2,R)")?;
    let cw = ChernWeil::new(&s.dec).map_err(e)?;
    let h = cw.complex().cohomology(4).map_err(e)?;
    let c1 = &s.generator_forms(2).map_err(e)?[0].1;
    let a = cw.cw(c1).map_err(e)?;
    let lhs = h.class_of(&cw.cw(&poly_product(c1, c1).map_err(e)?).map_err(e)?).map_err(e)?;
    let rhs = h.class_of(&a.cup(&a).map_err(e)?).map_err(e)?;
    ensure!(lhs.iter().any(|x| !x.is_zero()), "cw(C_1^2) is exact");
    ensure!(lhs == rhs, "{lhs:?} vs {rhs:?}");
    Ok("class(cw(C_1 C_1)) = class(cw(C_1)^2), constant 1".into())
}

fn split_goldens() -> Check {
    let cfg = ComputeConfig::default();
    let r = full_report(&group("SL(3,R)")?, 5, &cfg).map_err(e)?.cohomology;
    ensure!(r.form == ReportForm::Split, "SL(3,R) not split");
    ensure!(r.lines[2].description == "0 ⊕ ℤ^1", "SL(3,R) H^3 = {}", r.lines[2].description);
    ensure!(r.lines[4].description == "ℝ^1 ⊕ 0", "SL(3,R) H^5 = {}", r.lines[4].description);
    ensure!(r.torsion_omitted, "torsion flag missing");
    let c = full_report(&group("SL(2,C)")?, 3, &cfg).map_err(e)?.cohomology;
    ensure!(c.form == ReportForm::Split, "SL(2,C) not split");
    ensure!(c.lines[2].description == "ℝ^1 ⊕ ℤ^1", "SL(2,C) H^3 = {}", c.lines[2].description);
    ensure!(c.flags.iter().any(|f| f.starts_with("example_index_discrepancy")), "index flag missing");
    Ok("SL(3,R) H^3 ⊇ ℤ^1, H^5 ⊇ ℝ^1; SL(2,C) H^3 = ℝ^1 ⊕ ℤ^1 (flagged)".into())
}

fn les_ladder() -> Check {
    let r = full_report(&group("SL(2,R)")?, 2, &ComputeConfig::default()).map_err(e)?.cohomology;
    ensure!(r.form == ReportForm::Les, "SL(2,R) not LES");
    let (l1, l2) = (&r.lines[0], &r.lines[1]);
    ensure!(l1.relative_betti == 0 && l1.description.ends_with("H^1 ≅ 0"), "H^1: {}", l1.description);
    ensure!((l2.relative_betti, l2.epsilon_rank) == (1, 1), "coker data ({}, {})", l2.relative_betti, l2.epsilon_rank);
    Ok(format!("H^1 = 0; degree 2: {}", l2.description))
}

fn crosschecks() -> Check {
    let cfg = ComputeConfig::default();
    for name in ["SL(3,R)", "SL(4,R)", "Sp(2,R)", "SU(2)", "SU(3)", "SU*(4)"] {
        let s = group(name)?;
        let c = k_cohomology_crosscheck(&s, &cfg).map_err(e)?;
        ensure!(c.passed, "{}: computed {:?} expected {:?}", c.k_name, c.computed, c.expected);
    }
    let builtins = [
        "SL(2,R)", "SL(3,R)", "SL(4,R)", "SL(5,R)", "SL(6,R)", "SL(2,C)", "SL(3,C)", "SU*(4)", "Sp(1,R)", "Sp(2,R)",
        "SU(2)", "SU(3)", "SU(4)", "SO(3)", "SO(4)", "SO(5)",
    ];
    for name in builtins {
        let s = group(name)?;
        let dual = s.dec.checked_compact_dual().map_err(|x| format!("{name}: {x}"))?;
        ensure!(dual.is_compact_semisimple(), "{name}: dual not negative definite");
        let back = s.dec.dual_decomposition().map_err(e)?.compact_dual().map_err(e)?;
        ensure!(&back == s.dec.adapted(), "{name}: dual is not an involution");
    }
    Ok(format!("so_3 so_4 u_2 su_2 su_3 sp_2 pass; {} duals negative definite", builtins.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 12] = [
        ("property suite", property_suite),
        ("Whitehead vanishing", whitehead),
        ("Künneth check for (sl_2(C), su_2)", kunneth),
        ("n.c.z. verdicts", ncz_verdicts),
        ("relative betti goldens", relative_goldens),
        ("Euler class on SL(4,R)", euler_class),
        ("restriction kernel su_4 -> so_4", restriction_kernel),
        ("Sp kernel combination", sp_kernel),
        ("multiplicativity", multiplicativity),
        ("split assembly goldens", split_goldens),
        ("LES ladder for SL(2,R)", les_ladder),
        ("catalog cross-checks", crosschecks),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = f();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("PASS {:>2} {name}: {msg} ({secs:.2}s)", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {msg} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
