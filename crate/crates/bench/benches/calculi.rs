use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use sigmax_bench::{distributions, ellipse_triple, relation_chain};
use sigmax_core::{compose, enumerate_events, exact_union_possibility, poss_event, prob_event, sample, MeasureKind};

fn event_measures(c: &mut Criterion) {
    let mut group = c.benchmark_group("all_event_measures");
    for n in [4usize, 8] {
        let (p, q) = distributions(n);
        let events = enumerate_events(p.space()).unwrap();
        group.bench_with_input(BenchmarkId::new("sigma", n), &events, |b, ev| {
            b.iter(|| ev.iter().map(|e| prob_event(&p, e).unwrap()).collect::<Vec<_>>())
        });
        let events = enumerate_events(q.space()).unwrap();
        group.bench_with_input(BenchmarkId::new("max", n), &events, |b, ev| {
            b.iter(|| ev.iter().map(|e| poss_event(&q, e).unwrap()).collect::<Vec<_>>())
        });
    }
    group.finish();
}

fn union_possibility(c: &mut Criterion) {
    let mut group = c.benchmark_group("exact_union_possibility");
    for side in [64u32, 256] {
        let [fx, fi, fj] = ellipse_triple(side);
        group.bench_function(BenchmarkId::from_parameter(side), |b| {
            b.iter(|| exact_union_possibility(black_box(&fx), &fi, &fj).unwrap())
        });
    }
    group.finish();
}

fn composition(c: &mut Criterion) {
    let mut group = c.benchmark_group("compose");
    for (name, kind) in [("sum_product", MeasureKind::Probability), ("max_product", MeasureKind::Possibility)] {
        let (first, second) = relation_chain(kind, 8);
        group.bench_function(name, |b| b.iter(|| compose(black_box(&first), &second).unwrap()));
    }
    group.finish();
}

fn sampler(c: &mut Criterion) {
    let (p, _) = distributions(6);
    c.bench_function("sample_100k", |b| b.iter(|| sample(black_box(&p), 100_000, 42)));
}

criterion_group!(benches, event_measures, union_possibility, composition, sampler);
criterion_main!(benches);
