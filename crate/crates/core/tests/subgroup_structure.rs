use amalgam_core::check::Check;
use amalgam_core::gf64::DEFAULT_MODULUS;
use amalgam_core::grp::reference::ReferenceGroups;
use amalgam_core::psu::Pgu;
use amalgam_core::structure;
use amalgam_core::subgroups::Subgroups;

fn assert_all(checks: &[Check]) {
    for c in checks {
        println!("{} {} {}", if c.passed { "ok  " } else { "FAIL" }, c.name, c.witness);
    }
    assert!(checks.iter().all(|c| c.passed));
}

#[test]
fn subgroup_statements_hold() {
    let sg = Subgroups::build(&Pgu::new(DEFAULT_MODULUS).unwrap()).unwrap();
    let refs = ReferenceGroups::build();
    assert!(refs.all_self_checks_pass());
    assert_all(&structure::orders(&sg));
    assert_all(&structure::commutator_consequences(&sg));
    assert_all(&structure::q_and_first_vertex_groups(&sg, &refs));
    assert_all(&structure::second_vertex_groups(&sg, &refs));
    assert_all(&structure::edge_groups(&sg, &refs));
}
