mod common;

use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn complex_identities_on_random_algebras(seed in any::<u64>()) {
        if let Err(e) = common::check_seed(seed) {
            prop_assert!(false, "seed {}: {}", seed, e);
        }
    }

    #[test]
    fn random_algebras_are_small_and_valid(seed in any::<u64>()) {
        let g = common::random_algebra(seed, 6);
        prop_assert!(g.dim() >= 1 && g.dim() <= 6);
        prop_assert!(g.check_jacobi().is_ok());
    }
}

#[test]
fn modules_are_representations() {
    let mut nontrivial = 0;
    for seed in 0..20 {
        let g = common::random_algebra(seed, 6);
        let m = common::random_module(&g, seed);
        assert_eq!(m.dim(), 2);
        // CoefficientModule::new validates the homomorphism property
        assert!(symcoh::lie::CoefficientModule::new(&g, m.actions().to_vec()).is_ok());
        nontrivial += usize::from(!m.is_trivial());
    }
    assert!(nontrivial >= 5, "only {nontrivial} nontrivial modules");
}
