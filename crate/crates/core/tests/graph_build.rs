use std::sync::OnceLock;

use amalgam_core::coset::{CosetGraph, CosetSpace, GraphError, Side};
use amalgam_core::gf64::DEFAULT_MODULUS;
use amalgam_core::psu::{GroupElement, Pgu};
use amalgam_core::subgroups::Subgroups;
use proptest::prelude::*;

struct Fixture {
    space: CosetSpace,
    graph: CosetGraph,
    gens: Vec<GroupElement>,
}

fn fixture() -> &'static Fixture {
    static F: OnceLock<Fixture> = OnceLock::new();
    F.get_or_init(|| {
        let pgu = Pgu::new(DEFAULT_MODULUS).unwrap();
        let sg = Subgroups::build(&pgu).unwrap();
        let space = CosetSpace::new(&sg);
        let graph = space.build_graph().unwrap();
        let gens = sg.el.k_generators().into_iter().map(|(_, g)| g).collect();
        Fixture { space, graph, gens }
    })
}

fn word_element(f: &Fixture, word: &[usize]) -> GroupElement {
    let pgu = f.space.pgu();
    word.iter().fold(pgu.identity_elem(), |acc, &i| pgu.compose(&acc, &f.gens[i % f.gens.len()]))
}

#[test]
fn default_graph_counts() {
    let g = &fixture().graph;
    assert_eq!(g.side_count(Side::One), 25_536);
    assert_eq!(g.side_count(Side::Two), 34_048);
    assert_eq!(g.num_edges(), 102_144);
    let s = g.summary();
    assert!(s.bipartite && s.connected && s.simple);
    assert_eq!((s.side1_degrees, s.side2_degrees), (vec![4], vec![3]));
}

#[test]
fn rebuild_is_deterministic() {
    let f = fixture();
    let again = f.space.build_graph().unwrap();
    assert_eq!(again.edges(), f.graph.edges());
    assert_eq!(again.vertices().iter().map(|v| v.key).collect::<Vec<_>>(), f.graph.vertices().iter().map(|v| v.key).collect::<Vec<_>>());
}

#[test]
fn cache_round_trip_and_rejection() {
    let f = fixture();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("nested/graph.bin");
    f.graph.save(&path).unwrap();
    let back = CosetGraph::load(&path, DEFAULT_MODULUS, f.space.group_hash()).unwrap();
    assert_eq!(back.edges(), f.graph.edges());
    assert_eq!(back.summary(), f.graph.summary());

    assert!(matches!(CosetGraph::load(&path, 0b100_0011, f.space.group_hash()), Err(GraphError::CacheMismatch(_))));
    assert!(matches!(CosetGraph::load(&path, DEFAULT_MODULUS, [0; 8]), Err(GraphError::CacheMismatch(_))));
    let mut raw = std::fs::read(&path).unwrap();
    raw.truncate(raw.len() - 3);
    assert!(matches!(CosetGraph::read_cache(&raw, DEFAULT_MODULUS, f.space.group_hash()), Err(GraphError::Malformed(_))));
    raw[0] ^= 1;
    assert!(matches!(CosetGraph::read_cache(&raw, DEFAULT_MODULUS, f.space.group_hash()), Err(GraphError::Malformed(_))));
}

#[test]
fn edge_list_export() {
    let mut out = Vec::new();
    fixture().graph.write_edge_list(&mut out).unwrap();
    let text = String::from_utf8(out).unwrap();
    let pairs: Vec<(u32, u32)> =
        text.lines().map(|l| l.split_once(' ').map(|(a, b)| (a.parse().unwrap(), b.parse().unwrap())).unwrap()).collect();
    assert_eq!(pairs.len(), 102_144);
    assert!(pairs.iter().all(|(a, b)| a < b));
    assert!(pairs.windows(2).all(|w| w[0] < w[1]));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn action_is_a_right_action_by_automorphisms(v in 0u32..59_584, w1 in prop::collection::vec(0usize..8, 0..12), w2 in prop::collection::vec(0usize..8, 0..12)) {
        let f = fixture();
        let pgu = f.space.pgu();
        let (g, h) = (word_element(f, &w1), word_element(f, &w2));
        let vg = f.space.act(&f.graph, v, &g).unwrap();
        let vgh = f.space.act(&f.graph, vg, &h).unwrap();
        prop_assert_eq!(f.space.act(&f.graph, v, &pgu.compose(&g, &h)).unwrap(), vgh);
        prop_assert_eq!(f.graph.vertex(vg).side, f.graph.vertex(v).side);
        for &u in f.graph.neighbours(v) {
            prop_assert!(f.graph.adjacent(vg, f.space.act(&f.graph, u, &g).unwrap()));
        }
    }

    #[test]
    fn canonical_key_names_the_coset(v in 0u32..59_584, k in prop::collection::vec(0usize..8, 0..10)) {
        let f = fixture();
        let vert = f.graph.vertex(v);
        let side = vert.side;
        let inside: Vec<GroupElement> = f.space.subgroup_elements(side).to_vec();
        let x = inside[k.iter().sum::<usize>() % inside.len()];
        let moved = f.space.pgu().compose(&x, &vert.rep());
        prop_assert_eq!(f.space.canon_key(&moved, side), vert.key);
    }
}
