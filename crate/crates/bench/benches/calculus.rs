use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use qcalc_core::complex::build_d;
use qcalc_core::{Calculus, CycField, Model};

fn differentials(c: &mut Criterion) {
    for r in [3u32, 5] {
        let calc = Calculus::new(CycField::get(r).unwrap());
        c.bench_function(&format!("build d_1 r={r}"), |b| b.iter(|| build_d(&calc, 1)));
    }
}

fn linear_algebra(c: &mut Criterion) {
    let m = Model::new(3).unwrap();
    let d1 = m.complex().d(1).clone();
    c.bench_function("rank d_1 r=3", |b| b.iter(|| d1.rank()));
    c.bench_function("kernel d_1 r=3", |b| b.iter(|| d1.kernel().dim()));
}

fn maxwell(c: &mut Criterion) {
    let mut g = c.benchmark_group("maxwell");
    g.sample_size(10);
    g.bench_function("gauge analysis r=3", |b| {
        b.iter_batched(|| Model::new(3).unwrap(), |m| m.maxwell().gauge_analysis(), BatchSize::PerIteration)
    });
    let m = Model::new(3).unwrap();
    let j = m.maxwell().named_source("theta").unwrap();
    g.bench_function("solve theta r=3", |b| b.iter(|| m.maxwell().solve_source(&j, None).unwrap()));
    g.finish();
}

criterion_group!(benches, differentials, linear_algebra, maxwell);
criterion_main!(benches);
