use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use symdyn::catalog;
use symdyn::freegroup::cancellation_bound_estimate;
use symdyn::Presentation;

fn languages(c: &mut Criterion) {
    let mut group = c.benchmark_group("language");
    let full = catalog::full_two_shift();
    let doubled_image =
        Presentation::image(full.clone(), catalog::sigma_ii(full.alphabet())).unwrap();
    let cases = [
        ("golden-mean", catalog::golden_mean_shift()),
        ("fibonacci", catalog::fibonacci_subshift()),
        ("sigma-ii-image", doubled_image),
    ];
    for (name, x) in &cases {
        for n in [8usize, 16] {
            group.bench_with_input(BenchmarkId::new(*name, n), &n, |b, &n| {
                b.iter(|| x.language(black_box(n)).unwrap())
            });
        }
    }
    group.finish();
}

fn tables(c: &mut Criterion) {
    let fib = catalog::fibonacci_subshift();
    c.bench_function("fibonacci table 1..=64", |b| {
        b.iter(|| fib.complexity_table(black_box(64)).unwrap())
    });
}

fn cancellation(c: &mut Criterion) {
    let (phi, _) = catalog::fibonacci_squared_pair();
    c.bench_function("cancellation estimate L=5", |b| {
        b.iter(|| cancellation_bound_estimate(&phi, black_box(5)))
    });
}

criterion_group!(benches, languages, tables, cancellation);
criterion_main!(benches);
