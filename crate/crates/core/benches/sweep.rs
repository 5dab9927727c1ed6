//! Corpus sweep, parallel against sequential, on a mid-sized slice of the
//! bundled algebras. Build with `--no-default-features` to see `sweep` fall
//! back to the sequential loop.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use gentle::verify::{sweep, sweep_sequential};
use gentle::{corpus, Algebra, Field, Rat};

fn bench_sweep(c: &mut Criterion) {
    let mut g = c.benchmark_group("sweep");
    g.sample_size(10);
    for name in ["A", "B"] {
        let q = corpus::algebra(name).unwrap();
        let alg = Algebra::new(q.clone()).unwrap();
        let objs = corpus::objects::<Rat>(&q, 3, 2, 2, &[Rat::from_i64(2)]);
        g.bench_with_input(BenchmarkId::new("parallel", name), &objs, |b, objs| b.iter(|| sweep(&alg, name, objs, 3, 1)));
        g.bench_with_input(BenchmarkId::new("sequential", name), &objs, |b, objs| b.iter(|| sweep_sequential(&alg, name, objs, 3, 1)));
    }
    g.finish();
}

fn bench_cone(c: &mut Criterion) {
    let q = corpus::algebra("B").unwrap();
    let alg = Algebra::new(q.clone()).unwrap();
    let s = gentle::Object::<Rat>::parse(&q, "~e ~d c b @scalar=2").unwrap();
    let t = gentle::Object::<Rat>::parse(&q, "~j ~i ~g f c (b*a) @scalar=3").unwrap();
    let m = gentle::hom::standard_basis(&alg, &s, &t).unwrap().remove(0);
    c.bench_function("symbolic band cone", |b| b.iter(|| gentle::cone::cone(&alg, &s, &t, &m).unwrap()));
    c.bench_function("oracle band cone", |b| b.iter(|| gentle::verify::oracle_cone(&alg, &s, &t, &m).unwrap()));
}

criterion_group!(benches, bench_sweep, bench_cone);
criterion_main!(benches);
