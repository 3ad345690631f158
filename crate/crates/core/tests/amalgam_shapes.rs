use std::sync::OnceLock;

use amalgam_core::amalgam::{self, Amalgam};
use amalgam_core::check::Check;
use amalgam_core::gf64::DEFAULT_MODULUS;
use amalgam_core::grp::reference::ReferenceGroups;
use amalgam_core::psu::Pgu;
use amalgam_core::subgroups::{Subgroups, Which};

fn fixture() -> &'static (Subgroups, ReferenceGroups) {
    static F: OnceLock<(Subgroups, ReferenceGroups)> = OnceLock::new();
    F.get_or_init(|| (Subgroups::build(&Pgu::new(DEFAULT_MODULUS).unwrap()).unwrap(), ReferenceGroups::build()))
}

fn amalgam_of(which: Which) -> Amalgam<amalgam_core::psu::Pgu> {
    let (g1, g2, _) = fixture().0.amalgam_of(which);
    Amalgam::new(g1.clone(), g2.clone())
}

fn assert_all(checks: &[Check]) {
    for c in checks {
        println!("{} {} {}", if c.passed { "ok  " } else { "FAIL" }, c.name, c.witness);
    }
    assert!(checks.iter().all(|c| c.passed));
}

#[test]
fn invariants_hold_for_both_amalgams() {
    assert_all(&amalgam_of(Which::H).invariant_checks());
    assert_all(&amalgam_of(Which::K).invariant_checks());
}

#[test]
fn generator_identities_hold() {
    assert_all(&amalgam::generator_identities(&fixture().0, Which::H));
    assert_all(&amalgam::generator_identities(&fixture().0, Which::K));
}

#[test]
fn h_amalgam_has_shape_d2_and_not_e2() {
    let refs = &fixture().1;
    let a = amalgam_of(Which::H);
    assert_eq!(a.t2.order(), 54);
    assert!(amalgam::shape_agl23s(&a, refs).holds);
    let d2 = amalgam::shape_d2(&a, refs);
    assert_all(&d2.items);
    assert!(!amalgam::shape_e2(&a, refs).holds);
}

#[test]
fn k_amalgam_has_shape_e2() {
    let refs = &fixture().1;
    let a = amalgam_of(Which::K);
    let e2 = amalgam::shape_e2(&a, refs);
    assert_all(&e2.items);
}
