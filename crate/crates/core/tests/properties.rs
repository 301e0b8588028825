mod common;

use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn frobenius_reciprocity(case in reciprocity_cases()) {
        check_reciprocity(case)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 100, ..ProptestConfig::default() })]

    #[test]
    fn eval_is_a_ring_homomorphism(case in eval_cases()) {
        check_eval_homomorphism(case)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 50, ..ProptestConfig::default() })]

    #[test]
    fn base_change_is_transitive(case in subst_cases()) {
        check_subst_transitive(case)?;
    }
}

#[test]
fn complete_homogeneous_generating_function() {
    assert_eq!(check_generating_function(), 36);
}

#[test]
fn orbit_sizes_sum_to_the_index() {
    assert!(check_orbit_sums() > 10_000);
}
