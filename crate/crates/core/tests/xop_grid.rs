use xoplab_core::check::Status;
use xoplab_core::xop::{path_agreement_cases, relation_cases, XopGrid};

#[test]
fn default_grid_paths_and_relations_are_exact() {
    let grid = XopGrid::default();
    let specs = grid.all_specs();
    assert!(specs.len() > 300, "{}", specs.len());
    let mut count = 0;
    for spec in &specs {
        for case in path_agreement_cases(spec).into_iter().chain(relation_cases(spec)) {
            assert_eq!(case.status, Status::Pass, "{case:?}");
            count += 1;
        }
    }
    assert!(count > 2 * specs.len());
}
