use proptest::prelude::*;
use xoplab_core::classical::{
    exp_partial_sum_residual, hermite_identity_residuals, jacobi, laguerre,
    laguerre_identity_residuals, r_partial_sum_residual,
};
use xoplab_core::poly::{int, rat, Rational};

fn alpha() -> impl Strategy<Value = Rational> {
    (-40i64..40, 1i64..9).prop_map(|(n, d)| rat(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn laguerre_identities_hold_for_any_rational_alpha(n in 1u32..9, a in alpha()) {
        for (name, r) in laguerre_identity_residuals(n, &a) {
            prop_assert!(r.is_zero(), "{} n={} alpha={}: {}", name, n, a, r);
        }
    }

    #[test]
    fn hermite_identities(n in 1u32..14) {
        for (name, r) in hermite_identity_residuals(n) {
            prop_assert!(r.is_zero(), "{} n={}", name, n);
        }
    }

    #[test]
    fn partial_sum_identities(n in 0u32..12, b in alpha()) {
        prop_assert!(exp_partial_sum_residual(n).is_zero());
        prop_assert!(r_partial_sum_residual(n, &b).is_zero());
    }

    #[test]
    fn jacobi_symmetry(n in 0u32..9, a in alpha(), b in alpha()) {
        // P_n^{(α,β)}(-x) = (-1)^n P_n^{(β,α)}(x)
        let lhs = jacobi(n, &a, &b).reflect();
        let rhs = jacobi(n, &b, &a).scale(&int(if n % 2 == 0 { 1 } else { -1 }));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn laguerre_value_at_origin(n in 0u32..10, a in alpha()) {
        let mut expect = Rational::from_integer(1.into());
        for k in 1..=n {
            expect = expect * (&a + int(k as i64)) / int(k as i64);
        }
        prop_assert_eq!(laguerre(n, &a).coeff(0), expect);
    }
}
