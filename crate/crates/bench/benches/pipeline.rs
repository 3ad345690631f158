use std::hint::black_box;
use std::time::Duration;

use amalgam_core::arcs::BaseActions;
use amalgam_core::grp::iso_check;
use amalgam_core::grp::reference::ReferenceGroups;
use amalgam_core::psu::Pgu;
use amalgam_core::subgroups::Subgroups;
use amalgam_core::{CosetSpace, Gf64, Which, DEFAULT_MODULUS};
use criterion::{criterion_group, criterion_main, Criterion};

fn field(c: &mut Criterion) {
    let f = Gf64::new(DEFAULT_MODULUS).unwrap();
    let xs: Vec<_> = (1..64).map(|k| f.antilog(k)).collect();
    c.bench_function("gf64 mul 63x63", |b| {
        b.iter(|| {
            let mut acc = f.antilog(0);
            for &x in &xs {
                for &y in &xs {
                    acc += f.mul(x, y);
                }
            }
            black_box(acc)
        })
    });
}

fn groups(c: &mut Criterion) {
    let pgu = Pgu::new(DEFAULT_MODULUS).unwrap();
    c.bench_function("named subgroups", |b| b.iter(|| black_box(Subgroups::build(&pgu).unwrap())));
    let sg = Subgroups::build(&pgu).unwrap();
    let refs = ReferenceGroups::build();
    c.bench_function("iso H1 vs AGL(2,3)", |b| b.iter(|| black_box(iso_check(&sg.h1, &refs.affine.agl23))));
}

fn graph(c: &mut Criterion) {
    let pgu = Pgu::new(DEFAULT_MODULUS).unwrap();
    let sg = Subgroups::build(&pgu).unwrap();
    let space = CosetSpace::new(&sg);
    let mut g = c.benchmark_group("graph");
    g.sample_size(10).measurement_time(Duration::from_secs(60));
    g.bench_function("coset graph build", |b| b.iter(|| black_box(space.build_graph().unwrap())));
    let graph = space.build_graph().unwrap();
    g.bench_function("local actions to radius 8", |b| b.iter(|| black_box(BaseActions::new(&space, &sg, &graph, 8))));
    let base = BaseActions::new(&space, &sg, &graph, 8);
    g.bench_function("K_x2 orbits on 6-arcs", |b| b.iter(|| black_box(base.x2.arc_orbits(Which::K, 6, &graph))));
    g.finish();
}

criterion_group!(benches, field, groups, graph);
criterion_main!(benches);
