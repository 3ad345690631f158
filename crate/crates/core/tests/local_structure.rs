use std::sync::OnceLock;

use amalgam_core::arcs::{self, BaseActions};
use amalgam_core::check::Check;
use amalgam_core::coset::{CosetGraph, CosetSpace};
use amalgam_core::gf64::DEFAULT_MODULUS;
use amalgam_core::grp::SplitVerdict;
use amalgam_core::psu::Pgu;
use amalgam_core::subgroups::{Subgroups, Which};

struct Fixture {
    sg: Subgroups,
    space: CosetSpace,
    graph: CosetGraph,
    base: BaseActions,
}

fn fixture() -> &'static Fixture {
    static F: OnceLock<Fixture> = OnceLock::new();
    F.get_or_init(|| {
        let pgu = Pgu::new(DEFAULT_MODULUS).unwrap();
        let sg = Subgroups::build(&pgu).unwrap();
        let space = CosetSpace::new(&sg);
        let graph = space.build_graph().unwrap();
        let base = BaseActions::new(&space, &sg, &graph, 8);
        Fixture { sg, space, graph, base }
    })
}

fn assert_all(checks: &[Check]) {
    for c in checks {
        println!("{} {} {}", if c.passed { "ok  " } else { "FAIL" }, c.name, c.witness);
    }
    let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    assert!(failed.is_empty(), "failed: {failed:?}");
}

#[test]
fn kernels_of_h() {
    assert_all(&arcs::kernel_checks(&fixture().base, Which::H));
}

#[test]
fn kernels_of_k() {
    assert_all(&arcs::kernel_checks(&fixture().base, Which::K));
}

#[test]
fn named_arc_stabilizers() {
    let f = fixture();
    assert_all(&arcs::named_arc_checks(&f.space, &f.sg, &f.graph, &f.base));
    assert_all(&arcs::arc_stabilizer_checks(&f.space, &f.sg, &f.graph, &f.base, Which::K));
    assert_all(&arcs::arc_stabilizer_checks(&f.space, &f.sg, &f.graph, &f.base, Which::H));
}

#[test]
fn arc_orbit_tables() {
    let f = fixture();
    let rows = f.base.orbit_tables(&f.graph, 8);
    print!("{}", arcs::orbit_table_csv(&rows));
    assert!(rows.iter().all(|r| r.orbit_stabilizer));
    for r in &rows {
        let (d0, d1) = if r.side == 1 { (4, 3) } else { (3, 4) };
        assert_eq!(r.arcs, arcs::arc_count_formula(d0, d1, r.s));
    }
    assert_eq!(arcs::max_local_s(&rows, Which::K), 5);
    assert_eq!(arcs::max_local_s(&rows, Which::H), 5);
}

#[test]
fn kernel_one_agrees_with_canonical_forms() {
    let f = fixture();
    for which in [Which::H, Which::K] {
        assert!(arcs::kernel_one_by_canon(&f.space, &f.graph, &f.base.x1, which));
        assert!(arcs::kernel_one_by_canon(&f.space, &f.graph, &f.base.x2, which));
    }
}

#[test]
fn local_characteristic_and_pushing_up() {
    let f = fixture();
    for which in [Which::H, Which::K] {
        let lc = arcs::local_characteristic(&f.space, &f.sg, &f.graph, &f.base, which, 100);
        println!("{which:?} {lc:?}");
        assert!(lc.holds());
        assert!(arcs::pushing_up_containment(&f.base, which));
    }
}

#[test]
fn split_cases() {
    let f = fixture();
    for which in [Which::H, Which::K] {
        let cases = arcs::split_cases(&f.base, which);
        println!("{cases:?}");
        assert!(cases.iter().all(|c| c.verdict != SplitVerdict::Inconclusive));
        assert!(cases.iter().any(|c| c.verdict == SplitVerdict::NonSplit));
    }
}

#[test]
fn kernels_as_generated_subgroups() {
    let f = fixture();
    assert_all(&arcs::kernel_identities(&f.sg, &f.base, Which::H));
    assert_all(&arcs::kernel_identities(&f.sg, &f.base, Which::K));
}
