//! Representation route vs direct eigensolve on growing cyclic lifts.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use liftspec_core::{
    spectrum_direct, spectrum_via_reps, BaseGraph, Coeffs, EngineOptions, FiniteGroup, IrrepSet,
    Subgroup, VoltageAssignment,
};

/// Base graph: 4-vertex cycle plus a voltage-carrying loop, over Z_n.
fn instance(n: usize) -> (BaseGraph, VoltageAssignment, IrrepSet) {
    let mut base = BaseGraph::new();
    for u in 0..4 {
        base.add_vertex(&format!("v{u}")).unwrap();
    }
    base.add_edge("a", 0, 1);
    base.add_edge("b", 1, 2);
    base.add_edge("c", 2, 3);
    base.add_edge("d", 3, 0);
    base.add_edge("e", 0, 0);
    let group = FiniteGroup::cyclic(n).unwrap();
    let sub = Subgroup::trivial(&group);
    let gen = group
        .elements()
        .iter()
        .find(|g| g.order() == n)
        .unwrap()
        .clone();
    let mut assignment = VoltageAssignment::identity(&base, group.clone(), sub);
    assignment.set_edge_voltage(&base, 0, gen.clone());
    assignment.set_edge_voltage(&base, 8, gen.compose(&gen).unwrap());
    let irreps = IrrepSet::cyclic(&group).unwrap();
    (base, assignment, irreps)
}

fn bench_routes(c: &mut Criterion) {
    let mut group = c.benchmark_group("spectrum");
    for n in [4usize, 8, 16, 32] {
        let (base, assignment, irreps) = instance(n);
        let options = EngineOptions::default();
        group.bench_with_input(BenchmarkId::new("reps", n), &n, |b, _| {
            b.iter(|| {
                spectrum_via_reps(&base, &assignment, Coeffs::LAPLACIAN, &irreps, &options)
                    .unwrap()
            })
        });
        group.bench_with_input(BenchmarkId::new("direct", n), &n, |b, _| {
            b.iter(|| spectrum_direct(&base, &assignment, Coeffs::LAPLACIAN).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_routes);
criterion_main!(benches);
