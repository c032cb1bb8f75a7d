//! Whole-space work: axiom checking, transition graphs, condensation,
//! and equilibrium enumeration. Sizes sit just under the default caps.

use std::hint::black_box;

use beliefnet::{
    build_transition_graph, check_all, condense, enumerate_equilibria, fixtures, Limits,
};
use beliefnet_bench::majority;
use criterion::{criterion_group, criterion_main, Criterion};

fn axiom_suite(c: &mut Criterion) {
    // 8 agents is the largest size the default isomorphism cap admits,
    // which the congruence check runs through.
    let limits = Limits::default();
    let net = fixtures::complete_bipartite(4, 4);
    let fam = majority(&net);
    c.bench_function("axioms/check-all/bipartite-4x4", |b| {
        b.iter(|| check_all(black_box(&net), &fam, &limits).unwrap())
    });
}

fn transition_graphs(c: &mut Criterion) {
    let limits = Limits::default();
    let net = fixtures::complete_bipartite(6, 6);
    let fam = majority(&net);
    c.bench_function("graph/build/bipartite-6x6", |b| {
        b.iter(|| build_transition_graph(black_box(&net), &fam, &limits).unwrap())
    });
    let g = build_transition_graph(&net, &fam, &limits).unwrap();
    c.bench_function("graph/condense/bipartite-6x6", |b| {
        b.iter(|| condense(black_box(&g)))
    });
}

fn equilibrium_enumeration(c: &mut Criterion) {
    let limits = Limits::default();
    for (label, net) in [
        ("complete-16", fixtures::complete(16)),
        ("cycle-16", fixtures::cycle(16)),
    ] {
        let fam = majority(&net);
        c.bench_function(&format!("equilibria/{label}"), |b| {
            b.iter(|| enumerate_equilibria(black_box(&net), &fam, &limits).unwrap())
        });
    }
}

criterion_group!(benches, axiom_suite, transition_graphs, equilibrium_enumeration);
criterion_main!(benches);
