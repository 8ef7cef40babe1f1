use std::sync::Arc;

use super::*;
use crate::catalog::builtin_group;
use crate::linalg::{int, Field, Matrix, Scalar, SparseVec};

fn label(spec_labels: &[String], l: &str) -> usize {
    spec_labels.iter().position(|x| x == l).unwrap()
}

#[test]
fn curvature_on_sl2() {
    let s = builtin_group("SL(2,R)").unwrap();
    let labels = s.g.labels().to_vec();
    let h = SparseVec::unit(label(&labels, "H_1"));
    let ef = SparseVec::unit(label(&labels, "S_12"));
    let k = SparseVec::unit(label(&labels, "E_12"));
    assert_eq!(curvature(&s.dec, &h, &ef), SparseVec::from_pairs(vec![(0, int(1))]));
    assert_eq!(curvature(&s.dec, &ef, &h), SparseVec::from_pairs(vec![(0, int(-1))]));
    assert!(curvature(&s.dec, &k, &h).is_zero());
}

#[test]
fn cw_of_lambda_on_sl2() {
    let s = builtin_group("SL(2,R)").unwrap();
    let cwd = ChernWeil::new(&s.dec).unwrap();
    let e1 = &s.generator_forms(2).unwrap()[0].1;
    let omega = cwd.cw(e1).unwrap();
    // p basis: S_12 then H_1
    assert_eq!(ChernWeil::value_on(&omega, &[1, 0]), int(1));
    let h = cwd.complex().cohomology(2).unwrap();
    assert!(!h.is_exact(&omega).unwrap());
    let zero = InvariantPolynomial::zero(e1.algebra().clone(), 1);
    assert!(cwd.cw(&zero).unwrap().is_zero());
}

#[test]
fn multiplicativity_on_sp2() {
    let s = builtin_group("Sp(2,R)").unwrap();
    let cwd = ChernWeil::new(&s.dec).unwrap();
    let h = cwd.complex().cohomology(4).unwrap();
    let forms = s.generator_forms(4).unwrap();
    let c1 = &forms[0].1;
    assert_eq!(c1.name(), "C_1");
    let a = cwd.cw(c1).unwrap();
    let sq = cwd.cw(&poly_product(c1, c1).unwrap()).unwrap();
    let cup = a.cup(&a).unwrap();
    assert_eq!(h.class_of(&sq).unwrap(), h.class_of(&cup).unwrap());
    assert!(h.class_of(&sq).unwrap().iter().any(|x| !x.is_zero()));
}

#[test]
fn sp2_kernel_combination() {
    let s = builtin_group("Sp(2,R)").unwrap();
    let cwd = ChernWeil::new(&s.dec).unwrap();
    let h = cwd.complex().cohomology(4).unwrap();
    let forms = s.generator_forms(4).unwrap();
    let (c1, c2) = (&forms[0].1, &forms[1].1);
    let combo = poly_product(c2, &InvariantPolynomial::constant(c2.algebra().clone(), int(2)))
        .unwrap()
        .sub(&poly_product(c1, c1).unwrap())
        .unwrap();
    assert!(h.is_exact(&cwd.cw(&combo).unwrap()).unwrap());
    assert!(!h.is_exact(&cwd.cw(c2).unwrap()).unwrap());
    let eps = epsilon_with(&s, &cwd, &h, 4).unwrap();
    assert_eq!(eps.rank, 1);
    assert_eq!(eps.kernel, vec!["2C_2 - C_1^2".to_string()]);
}

#[test]
fn restriction_from_su4_to_so4() {
    let su4 = CompactModel::standard("su_4").unwrap();
    let so4 = CompactModel::standard("so_4").unwrap();
    let mut big = su4.matrix_algebra().unwrap();
    let cols: Vec<SparseVec<Scalar>> = so4.rep.iter().map(|m| big.coordinates(m).unwrap()).collect();
    let inc = Matrix::from_columns(su4.algebra.dim(), &cols);
    let t3 = power_trace(&su4, 3).unwrap();
    assert!(!t3.is_zero());
    assert!(restrict_polynomial(&t3, so4.algebra.clone(), &inc).unwrap().is_zero());
    let t2 = restrict_polynomial(&power_trace(&su4, 2).unwrap(), so4.algebra.clone(), &inc).unwrap();
    assert!(!t2.is_zero());
    assert_eq!(t2.values(), power_trace(&so4, 2).unwrap().values());
    // i*(C_2) = -P_1 and i*(C_1) = i*(C_3) = 0
    let c = chern_forms(&su4, 3).unwrap();
    let p = pontryagin_forms(&so4, 1).unwrap();
    assert!(restrict_polynomial(&c[0], so4.algebra.clone(), &inc).unwrap().is_zero());
    assert!(restrict_polynomial(&c[2], so4.algebra.clone(), &inc).unwrap().is_zero());
    let r2 = restrict_polynomial(&c[1], so4.algebra.clone(), &inc).unwrap();
    assert_eq!(r2.values(), p[0].scale(&int(-1)).values());
}

#[test]
fn restriction_commutes_with_products() {
    let u2 = CompactModel::standard("u_2").unwrap();
    let so2 = Arc::new(crate::lie::LieAlgebra::abelian(1).with_labels(vec!["E_12".into()]));
    let mut big = u2.matrix_algebra().unwrap();
    let so2_rep = CompactModel::standard("so_2").unwrap().rep;
    let inc = Matrix::from_columns(4, &[big.coordinates(&so2_rep[0]).unwrap()]);
    let c = chern_forms(&u2, 2).unwrap();
    let lhs = restrict_polynomial(&poly_product(&c[0], &c[1]).unwrap(), so2.clone(), &inc).unwrap();
    let rhs = poly_product(
        &restrict_polynomial(&c[0], so2.clone(), &inc).unwrap(),
        &restrict_polynomial(&c[1], so2, &inc).unwrap(),
    )
    .unwrap();
    assert_eq!(lhs.values(), rhs.values());
}

#[test]
fn odd_degree_epsilon_is_hopf_zero() {
    let s = builtin_group("SL(2,R)").unwrap();
    let e = epsilon_rank(&s, 3).unwrap();
    assert!(e.hopf_vanishing);
    assert_eq!(e.rank, 0);
    let e = epsilon_rank(&s, 2).unwrap();
    assert_eq!((e.rank, e.nonzero_monomials.clone()), (1, vec!["E_1".to_string()]));
}
