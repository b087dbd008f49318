use xoplab_core::check::{CaseOutcome, Residual, Status};
use xoplab_core::det::{
    det_agreement_case, kernel_case, leading_coefficient_case, resolve_type2_constant,
    DetOptions, Type2Reading, TYPE2_READING,
};
use xoplab_core::xop::{Family, XopGrid, XopSpec};

fn det_specs() -> Vec<XopSpec> {
    let grid = XopGrid::default();
    let mut specs = grid.laguerre_jacobi_specs();
    specs.extend(grid.hermite11_specs());
    specs.retain(|s| !(s.family == Family::LagIII && s.n == 0));
    specs
}

fn worst(cases: &[CaseOutcome]) -> f64 {
    cases
        .iter()
        .filter_map(|c| match c.residual {
            Residual::Float(v) => Some(v),
            _ => None,
        })
        .fold(0.0, f64::max)
}

#[test]
fn determinants_agree_with_exact_paths() {
    let opts = DetOptions::default();
    let cases: Vec<CaseOutcome> = det_specs().iter().map(|s| det_agreement_case(s, &opts)).collect();
    let failed: Vec<&CaseOutcome> = cases.iter().filter(|c| c.status != Status::Pass).collect();
    eprintln!("det agreement: {} cases, worst {:e}", cases.len(), worst(&cases));
    assert!(failed.is_empty(), "{failed:#?}");
}

#[test]
fn leading_coefficient_law_holds() {
    let opts = DetOptions::default();
    let cases: Vec<CaseOutcome> = det_specs()
        .iter()
        .filter(|s| s.n <= 10)
        .map(|s| leading_coefficient_case(s, &opts))
        .collect();
    eprintln!("leading law: {} cases, worst {:e}", cases.len(), worst(&cases));
    let failed: Vec<&CaseOutcome> = cases.iter().filter(|c| c.status != Status::Pass).collect();
    assert!(failed.is_empty(), "{failed:#?}");
}

#[test]
fn node_rows_annihilate_targets() {
    let opts = DetOptions::default();
    let cases: Vec<CaseOutcome> = det_specs().iter().map(|s| kernel_case(s, &opts)).collect();
    eprintln!("kernel: {} cases, worst {:e}", cases.len(), worst(&cases));
    let failed: Vec<&CaseOutcome> = cases.iter().filter(|c| c.status != Status::Pass).collect();
    assert!(failed.is_empty(), "{failed:#?}");
}

#[test]
fn type_two_constant_resolves_to_one_expression() {
    let res = resolve_type2_constant(&det_specs(), &DetOptions::default(), 1e-9).unwrap();
    eprintln!("{}", res.summary());
    assert_eq!(res.resolved(), Some(TYPE2_READING));
    assert!(!res.fits_everywhere(Type2Reading::Literal));
    assert!(!res.fits_everywhere(Type2Reading::Grouped));
}
