use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use quiverlab_bench::{bouquet, calogero_moser};
use quiverlab_core::forms::enumerate_roots;
use quiverlab_core::lab::{jacobian_rank, newton_sample, NewtonConfig};
use quiverlab_core::necklace::{bracket, bracket_elements};
use quiverlab_core::sigma::{decide, enumerate_types};
use quiverlab_core::{DimVector, FormsContext, LieElement, NecklaceWord, SigmaQuery, Weights};

fn necklaces(c: &mut Criterion) {
    let dq = bouquet(2).double();
    let w = |s: &str| NecklaceWord::parse(&dq, s).unwrap();
    let (x, y, z) = (w("a0 a0 a1 a0*"), w("a1* a0* a1 a0"), w("a0 a0* a1 a1*"));
    c.bench_function("bracket/length4", |b| {
        b.iter(|| bracket(&dq, black_box(&x), black_box(&y)))
    });
    let (ex, ey, ez) = (LieElement::basis(x), LieElement::basis(y), LieElement::basis(z));
    c.bench_function("bracket/jacobi", |b| {
        b.iter(|| {
            let t1 = bracket_elements(&dq, &ex, &bracket_elements(&dq, &ey, &ez));
            let t2 = bracket_elements(&dq, &ey, &bracket_elements(&dq, &ez, &ex));
            let t3 = bracket_elements(&dq, &ez, &bracket_elements(&dq, &ex, &ey));
            black_box(&(&t1 + &t2) + &t3)
        })
    });
}

fn roots_and_types(c: &mut Criterion) {
    let q = bouquet(2);
    let cm = calogero_moser();
    let cm_ctx = FormsContext::new(&cm);
    c.bench_function("roots/calogero_moser_box_6_3", |b| {
        b.iter(|| enumerate_roots(&cm_ctx, black_box(&DimVector(vec![6, 3]))))
    });
    let mut group = c.benchmark_group("types/two_loops");
    for n in [2u64, 4, 6] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| {
                let query = SigmaQuery::new(q.clone(), Weights::zero(1), DimVector(vec![n])).unwrap();
                enumerate_types(&query)
            })
        });
    }
    group.finish();
    c.bench_function("decide/calogero_moser_3", |b| {
        b.iter(|| {
            let query = SigmaQuery::new(cm.clone(), Weights::from_integers(&[1, -3]), DimVector(vec![3, 1])).unwrap();
            decide(&query).unwrap()
        })
    });
}

fn moment_lab(c: &mut Criterion) {
    let dq = calogero_moser().double();
    let alpha = DimVector(vec![2, 1]);
    let lambda = Weights::from_integers(&[1, -2]);
    let config = NewtonConfig::default();
    c.bench_function("newton/calogero_moser_2_1", |b| {
        b.iter(|| newton_sample(&dq, &alpha, &lambda, black_box(0), &config).unwrap())
    });
    let point = newton_sample(&dq, &alpha, &lambda, 0, &config).unwrap().point;
    c.bench_function("jacobian_rank/calogero_moser_2_1", |b| {
        b.iter(|| jacobian_rank(&dq, black_box(&point), 1e-8).unwrap())
    });
}

criterion_group!(benches, necklaces, roots_and_types, moment_lab);
criterion_main!(benches);
