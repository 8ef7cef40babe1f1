use super::*;
use crate::exterior::{binom, mask_of};
use crate::lie::{sl2, su2, CartanDecomposition, CoefficientModule, LieAlgebra};
use crate::linalg::{int, Field, Scalar, SparseVec};

fn v(x: &[i64]) -> SparseVec<Scalar> {
    SparseVec::from_dense(&x.iter().map(|a| int(*a)).collect::<Vec<_>>())
}

fn trivial_action() -> Action<Scalar> {
    Action::trivial(1)
}

#[test]
fn abelian_differential_vanishes() {
    let g = LieAlgebra::abelian(3);
    let c = FullComplex::trivial(&g);
    for n in 0..=3 {
        assert!(c.differential(n).is_zero());
    }
    let h = c.cohomology(3).unwrap();
    assert_eq!(h.betti(), (0..=3).map(|n| binom(3, n) as usize).collect::<Vec<_>>());
}

#[test]
fn sl2_differential_of_h_star() {
    let g = sl2();
    let s = Structure::of(&g);
    let lambda = Cochain::<Scalar>::dual_basis(3, &[0]);
    let d = lambda.differential(&s, &trivial_action());
    assert_eq!(d.value(mask_of(&[1, 2]), 0), int(-1));
    assert_eq!(d.value(mask_of(&[0, 1]), 0), int(0));
}

#[test]
fn insertion_examples() {
    let he = Cochain::<Scalar>::dual_basis(3, &[0, 1]);
    let h = v(&[1, 0, 0]);
    let out = he.insertion(&h).unwrap();
    assert_eq!(out, Cochain::dual_basis(3, &[1]));
    assert!(out.insertion(&h).unwrap().is_zero());
    let y = v(&[2, -1, 3]);
    let w = Cochain::<Scalar>::dual_basis(3, &[0, 1]).add(&Cochain::dual_basis(3, &[1, 2]));
    assert!(w.insertion(&y).unwrap().insertion(&y).unwrap().is_zero());
    assert!(matches!(Cochain::<Scalar>::unit(3).insertion(&h), Err(crate::Error::DegreeZero)));
}

#[test]
fn lie_derivative_of_e_star() {
    let g = sl2();
    let s = Structure::of(&g);
    let e_star = Cochain::<Scalar>::dual_basis(3, &[1]);
    let out = e_star.lie_derivative(&s, &trivial_action(), &v(&[1, 0, 0]));
    assert_eq!(out, e_star.scale(&int(-2)));
    let a = LieAlgebra::abelian(2);
    let w = Cochain::<Scalar>::dual_basis(2, &[0]);
    assert!(w.lie_derivative(&Structure::of(&a), &trivial_action(), &v(&[1, 1])).is_zero());
}

#[test]
fn cartan_rule_on_sl2() {
    let g = sl2();
    let s = Structure::of(&g);
    let act = trivial_action();
    for y in [v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[2, -1, 3])] {
        for n in 1..=3 {
            for mask in crate::exterior::ExteriorBasis::new(3, n).subsets() {
                let w = Cochain::<Scalar>::from_values(3, 1, n, [(*mask, 0, int(1))]);
                let theta = w.lie_derivative(&s, &act, &y);
                let idi = w.differential(&s, &act).insertion(&y).unwrap();
                let did = w.insertion(&y).unwrap().differential(&s, &act);
                assert_eq!(theta, idi.add(&did));
            }
        }
    }
}

#[test]
fn d_squared_vanishes_with_adjoint_coefficients() {
    let g = sl2();
    let module = CoefficientModule::adjoint(&g);
    let c = FullComplex::new(&g, &module);
    for n in 0..3 {
        assert!(c.differential(n + 1).mul(&c.differential(n)).is_zero());
    }
    // H^*(sl_2; ad) vanishes
    assert_eq!(c.cohomology(3).unwrap().betti(), vec![0, 0, 0, 0]);
}

#[test]
fn su2_betti_and_cartan_form() {
    let g = su2();
    let h = FullComplex::trivial(&g).cohomology(3).unwrap();
    assert_eq!(h.betti(), vec![1, 0, 0, 1]);
    let rep = &h.plain().unwrap().representatives(3)[0];
    // the Cartan 3-form B([x,y],z) on (u0,u1,u2) is -2
    assert!(!rep.value(0b111, 0).is_zero());
    let weight = FullComplex::with_config(
        &g,
        &CoefficientModule::trivial(&g, 1),
        ComputeConfig::default().with_route(Route::Weight),
    );
    let hw = weight.cohomology(3).unwrap();
    assert_eq!(hw.route(), "weight-zero");
    assert_eq!(hw.betti(), vec![1, 0, 0, 1]);
    let form = Cochain::<Scalar>::dual_basis(3, &[0, 1, 2]);
    assert!(!hw.is_exact(&form).unwrap());
    assert!(hw.is_exact(&Cochain::zero(3, 1, 3)).unwrap());
}

#[test]
fn relative_sl2_so2() {
    let g = sl2();
    let rel = RelativeComplex::new(&g, &[v(&[0, 1, -1])], &CoefficientModule::trivial(&g, 1)).unwrap();
    assert_eq!(rel.cochain_dims(2), vec![1, 0, 1]);
    let h = rel.cohomology(2).unwrap();
    assert_eq!(h.betti(), vec![1, 0, 1]);
    // h = 0 gives the full complex, h = g leaves only constants
    let full = RelativeComplex::new(&g, &[], &CoefficientModule::trivial(&g, 1)).unwrap();
    assert_eq!(full.cohomology(3).unwrap().betti(), vec![1, 0, 0, 1]);
    let all = RelativeComplex::new(&g, &[v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])], &CoefficientModule::trivial(&g, 1)).unwrap();
    assert_eq!(all.cohomology(3).unwrap().betti(), vec![1]);
    let bad = RelativeComplex::new(&g, &[v(&[0, 1, 0]), v(&[0, 0, 1])], &CoefficientModule::trivial(&g, 1));
    assert!(matches!(bad, Err(crate::Error::NotASubalgebra { .. })));
}

#[test]
fn relative_representatives_round_trip_through_parent() {
    let g = sl2();
    let dec = CartanDecomposition::new(&g, vec![v(&[0, 1, -1])], vec![v(&[1, 0, 0]), v(&[0, 1, 1])]).unwrap();
    let rel = RelativeComplex::from_decomposition(&dec, &CoefficientModule::trivial(&g, 1)).unwrap();
    let h = rel.cohomology(2).unwrap();
    let rep = &h.representatives(2)[0];
    let parent = rel.to_parent(rep);
    assert_eq!(&rel.from_parent(&parent).unwrap(), rep);
    // closed in the full complex
    assert!(FullComplex::trivial(&g).apply_d(&parent).is_zero());
    let full = FullComplex::trivial(&g).cohomology(2).unwrap();
    assert!(full.is_exact(&parent).unwrap());
}

#[test]
fn cup_product_rules() {
    let e = Cochain::<Scalar>::dual_basis(3, &[1]);
    let f = Cochain::<Scalar>::dual_basis(3, &[2]);
    let h = Cochain::<Scalar>::dual_basis(3, &[0]);
    let one = Cochain::<Scalar>::unit(3);
    assert_eq!(one.cup(&e).unwrap(), e);
    assert_eq!(e.cup(&f).unwrap(), f.cup(&e).unwrap().scale(&int(-1)));
    assert_eq!(h.cup(&e).unwrap().cup(&f).unwrap(), h.cup(&e.cup(&f).unwrap()).unwrap());
    let g = sl2();
    let s = Structure::of(&g);
    let a = trivial_action();
    let lhs = h.cup(&e).unwrap().differential(&s, &a);
    let rhs = h.differential(&s, &a).cup(&e).unwrap().sub(&h.cup(&e.differential(&s, &a)).unwrap());
    assert_eq!(lhs, rhs);
    let two = Cochain::<Scalar>::from_values(3, 2, 1, [(1, 0, int(1))]);
    assert!(matches!(two.cup(&e), Err(crate::Error::NonTrivialCoefficients)));
}

#[test]
fn size_guard_trips() {
    let g = su2();
    let config = ComputeConfig { max_exterior_dim: 3, ..ComputeConfig::default() };
    let c = FullComplex::with_config(&g, &CoefficientModule::trivial(&g, 1), config);
    assert!(matches!(c.cohomology(3), Err(crate::Error::SizeLimit { required: 8, limit: 3 })));
}

#[test]
fn reverse_order_gives_same_betti() {
    let g = LieAlgebra::abelian(3);
    let config = ComputeConfig::default().with_order(RepresentativeOrder::Reverse);
    let h = FullComplex::with_config(&g, &CoefficientModule::trivial(&g, 1), config).cohomology(2).unwrap();
    assert_eq!(h.betti(), vec![1, 3, 3]);
    let first = &h.plain().unwrap().representatives(1)[0];
    assert_eq!(first, &Cochain::dual_basis(3, &[2]));
}

#[test]
fn kappa_and_ncz_on_sl2_so2() {
    let g = sl2();
    let module = CoefficientModule::trivial(&g, 1);
    let rel = RelativeComplex::new(&g, &[v(&[0, 1, -1])], &module).unwrap();
    let rh = rel.cohomology(2).unwrap();
    let full = FullComplex::trivial(&g).cohomology(2).unwrap();
    let k0 = kappa(&rh, &full, 0).unwrap();
    assert_eq!((k0.rank, k0.injective), (1, true));
    let k2 = kappa(&rh, &full, 2).unwrap();
    assert_eq!((k2.rank, k2.injective), (0, false));
    let report = ncz_from_relative(&rel, 2, &ComputeConfig::default()).unwrap();
    assert!(!report.ncz);
    assert_eq!(report.first_failure, Some(2));
    assert_eq!(report.odd_generation, Some(false));
    assert!(!odd_generation_check(&rh, 2).unwrap());
}

#[test]
fn odd_generation_on_abelian_plane() {
    let g = LieAlgebra::abelian(2);
    let h = FullComplex::trivial(&g).cohomology(2).unwrap();
    assert!(odd_generation_check(&h, 2).unwrap());
    let su = FullComplex::trivial(&su2()).cohomology(3).unwrap();
    assert!(odd_generation_check(&su, 3).unwrap());
}

#[test]
fn compact_subalgebra_is_ncz() {
    let g = su2();
    let all = [v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])];
    let r = is_ncz(&g, &all, &CoefficientModule::trivial(&g, 1), 3, &ComputeConfig::default()).unwrap();
    assert!(r.ncz);
    assert_eq!(r.degrees.len(), 1);
}

#[test]
fn mu_transport_keeps_coordinates() {
    let g = sl2();
    let dec = CartanDecomposition::new(&g, vec![v(&[0, 1, -1])], vec![v(&[1, 0, 0]), v(&[0, 1, 1])]).unwrap();
    let rel = RelativeComplex::from_decomposition(&dec, &CoefficientModule::trivial(&g, 1)).unwrap();
    let rep = &rel.cohomology(2).unwrap().representatives(2)[0];
    let adapted = rel.to_adapted(rep);
    let moved = mu_transport(&dec, &adapted).unwrap();
    assert_eq!(moved, adapted);
    let vertical = Cochain::<Scalar>::dual_basis(3, &[0, 1]);
    assert!(matches!(mu_transport(&dec, &vertical), Err(crate::Error::NotHorizontal)));
}

#[test]
fn representatives_have_unit_classes() {
    // sl_3 has dependent kernel vectors ahead of its degree-5 class
    let g = crate::catalog::models::sl_real(3).build().unwrap().into_parts().0;
    let h = FullComplex::trivial(&g).cohomology(8).unwrap();
    let t = h.plain().unwrap();
    for n in 0..=8 {
        for (i, r) in t.representatives(n).iter().enumerate() {
            let c = t.class_of(r).unwrap();
            for (j, x) in c.iter().enumerate() {
                assert_eq!(x, &(if i == j { int(1) } else { int(0) }), "degree {n}");
            }
        }
    }
}
