use proptest::prelude::*;
use xoplab_core::check::Status;
use xoplab_core::poly::{int, rat};
use xoplab_core::xop::{path_agreement_cases, relation_cases, XopSpec};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn type_one_paths_agree(m in 1u32..4, extra in 0u32..8, num in 1i64..60, den in 1i64..9) {
        let spec = XopSpec::lag1(m, m + extra, rat(num, den));
        for case in path_agreement_cases(&spec).into_iter().chain(relation_cases(&spec)) {
            prop_assert_eq!(case.status, Status::Pass, "{:?}", case);
        }
    }

    #[test]
    fn type_two_paths_agree(m in 1u32..4, extra in 0u32..8, num in 1i64..60, den in 1i64..9) {
        let spec = XopSpec::lag2(m, m + extra, rat(num, den) + int(m as i64 - 1));
        for case in path_agreement_cases(&spec).into_iter().chain(relation_cases(&spec)) {
            prop_assert_eq!(case.status, Status::Pass, "{:?}", case);
        }
    }

    #[test]
    fn type_three_paths_agree(m in 1u32..4, extra in 1u32..8, num in 1i64..9) {
        let spec = XopSpec::lag3(m, m + extra, rat(-num, 10));
        for case in path_agreement_cases(&spec).into_iter().chain(relation_cases(&spec)) {
            prop_assert_eq!(case.status, Status::Pass, "{:?}", case);
        }
    }

    #[test]
    fn jacobi_paths_agree(m in 1u32..4, extra in 0u32..7, a in 1i64..40, b in 1i64..20) {
        let spec = XopSpec::jacobi(m, m + extra, rat(a, 4) + int(m as i64 - 1), rat(b, 6));
        prop_assume!(spec.validate().is_ok());
        for case in path_agreement_cases(&spec).into_iter().chain(relation_cases(&spec)) {
            prop_assert_eq!(case.status, Status::Pass, "{:?}", case);
        }
    }
}
