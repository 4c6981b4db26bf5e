use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use maxab_core::corpus::eval_expression;
use maxab_core::{
    run_all, LatticeCaps, MoebiusTable, SubgroupLattice, VerifyOptions, DEFAULT_ORDER_CAP,
};

const GROUPS: [(&str, &str); 4] = [
    ("Q8", "genquat(8)"),
    ("E64", "elemab(2,6)"),
    ("D8xD8", "dihedral(4) x dihedral(4)"),
    ("He3xE9", "heisenberg(3) x elemab(3,2)"),
];

fn lattice_build(c: &mut Criterion) {
    let mut group = c.benchmark_group("lattice_build");
    group.sample_size(10);
    for (name, expr) in GROUPS {
        let g = eval_expression(expr, DEFAULT_ORDER_CAP).unwrap();
        group.bench_function(name, |b| {
            b.iter(|| SubgroupLattice::build(black_box(&g), LatticeCaps::default()).unwrap())
        });
    }
    group.finish();
}

fn moebius_materialize(c: &mut Criterion) {
    let mut group = c.benchmark_group("moebius_materialize");
    group.sample_size(10);
    for (name, expr) in &GROUPS[..3] {
        let g = eval_expression(expr, DEFAULT_ORDER_CAP).unwrap();
        let lattice = SubgroupLattice::build(&g, LatticeCaps::default()).unwrap();
        group.bench_function(*name, |b| {
            b.iter(|| {
                let mut table = MoebiusTable::new(black_box(&lattice));
                for s in 0..lattice.len() {
                    black_box(table.row(s).unwrap());
                }
            })
        });
    }
    group.finish();
}

fn verify_all(c: &mut Criterion) {
    let mut group = c.benchmark_group("run_all");
    group.sample_size(10);
    for (name, expr) in [GROUPS[0], GROUPS[2]] {
        let g = eval_expression(expr, DEFAULT_ORDER_CAP).unwrap();
        group.bench_function(name, |b| {
            b.iter(|| run_all(black_box(&g), &VerifyOptions::default()))
        });
    }
    group.finish();
}

criterion_group!(benches, lattice_build, moebius_materialize, verify_all);
criterion_main!(benches);
