use num_complex::Complex64;
use proptest::prelude::*;
use xoplab_core::classical::{jacobi, laguerre};
use xoplab_core::poly::{int, rat, CPoly, Poly};
use xoplab_core::rootfind::{
    all_roots, classical_zeros, zeros_exact, ClassicalFamily, NodeSet, RootOptions,
};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn canonical_order_is_idempotent(
        pts in prop::collection::vec((-50i32..50, -50i32..50), 1..12)
    ) {
        let mut points: Vec<Complex64> =
            pts.iter().map(|&(a, b)| Complex64::new(a as f64 / 4.0, b as f64 / 4.0)).collect();
        points.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        points.dedup();
        let set = NodeSet::new(points.clone(), "p", 1e-13).unwrap();
        prop_assert!(set.is_canonical());
        let again = NodeSet::new(set.points().to_vec(), "p", 1e-13).unwrap();
        prop_assert_eq!(again.points(), set.points());
        let reversed: Vec<Complex64> = set.points().iter().rev().copied().collect();
        let resorted = NodeSet::new(reversed, "p", 1e-13).unwrap();
        prop_assert_eq!(resorted.points(), set.points());
    }

    #[test]
    fn recovers_distinct_integer_roots(roots in prop::collection::btree_set(-12i64..12, 1..9)) {
        let p = roots.iter().fold(Poly::constant(int(3)), |acc, &r| &acc * &Poly::linear(int(1), int(-r)));
        let found = zeros_exact(&p, &RootOptions::default(), "t").unwrap();
        for (z, r) in found.points().iter().zip(&roots) {
            prop_assert!((z - Complex64::new(*r as f64, 0.0)).norm() < 1e-9, "{} vs {}", z, r);
        }
    }

    #[test]
    fn residual_bound_holds(coeffs in prop::collection::vec(-20i32..20, 2..10)) {
        let p: CPoly = Poly::new(coeffs.iter().map(|&c| Complex64::new(c as f64, 0.0)).collect());
        prop_assume!(p.degree().unwrap_or(0) >= 1);
        let opts = RootOptions::default();
        if let Ok(roots) = all_roots(&p, &opts) {
            let deg = p.degree().unwrap() as i32;
            for z in roots {
                let scale = p.max_abs_coeff() * z.norm().max(1.0).powi(deg);
                prop_assert!(p.evaluate(&z).norm() <= opts.tol * scale);
            }
        }
    }

    #[test]
    fn classical_laguerre_zeros_are_positive_and_match(n in 1u32..16, a in (-9i64..30)) {
        let alpha = rat(a, 10);
        let fast = classical_zeros(&ClassicalFamily::Laguerre(alpha.clone()), n).unwrap();
        let general = zeros_exact(&laguerre(n, &alpha), &RootOptions::default(), "").unwrap();
        prop_assert!(fast.points().iter().all(|z| z.im == 0.0 && z.re > 0.0));
        for (x, y) in fast.points().iter().zip(general.points()) {
            prop_assert!((x - y).norm() <= 1e-10 * (1.0 + x.norm()));
        }
    }

    #[test]
    fn classical_jacobi_zeros_are_interior(n in 1u32..13, a in -9i64..30, b in -9i64..30) {
        let (alpha, beta) = (rat(a, 10), rat(b, 10));
        let fast = classical_zeros(&ClassicalFamily::Jacobi(alpha.clone(), beta.clone()), n).unwrap();
        prop_assert!(fast.points().iter().all(|z| z.re > -1.0 && z.re < 1.0));
        let p = jacobi(n, &alpha, &beta).to_complex();
        let scale = p.max_abs_coeff();
        for z in fast.points() {
            prop_assert!(p.evaluate(z).norm() <= 1e-9 * scale);
        }
    }
}
