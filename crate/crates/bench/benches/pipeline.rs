use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use curve_ideal::approx::svd;
use curve_ideal::border::{border_basis_approx, border_basis_exact, ApproxOptions};
use curve_ideal::eval::{evaluation_matrix, exact_points_from_integers};
use curve_ideal::minimize::minimal_basis_approx;
use curve_ideal::sampler::sample_roots_of_unity;
use curve_ideal::{MonomialSet, DEFAULT_TOL};
use curve_ideal_bench::{normal_curve_points, sextic};

fn sextic_approx(c: &mut Criterion) {
    let mut group = c.benchmark_group("sextic_approx");
    group.sample_size(10);
    for h in [31usize, 62, 124] {
        let points = sample_roots_of_unity(&sextic(), h).unwrap();
        group.bench_with_input(BenchmarkId::new("border", h), &points, |b, pts| {
            b.iter(|| border_basis_approx(black_box(pts), 5, &ApproxOptions::default()).unwrap())
        });
    }
    let points = sample_roots_of_unity(&sextic(), 31).unwrap();
    let run = border_basis_approx(&points, 5, &ApproxOptions::default()).unwrap();
    group.bench_function("minimize", |b| {
        b.iter(|| minimal_basis_approx(black_box(&run.complement), &run.generators, DEFAULT_TOL).unwrap())
    });
    group.finish();
}

fn evaluation_svd(c: &mut Criterion) {
    let points = sample_roots_of_unity(&sextic(), 31).unwrap();
    let mut group = c.benchmark_group("evaluation_svd");
    for k in [3usize, 4, 5] {
        let m = evaluation_matrix(&points, &MonomialSet::enumerate(3, k).unwrap()).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(k), &m, |b, m| b.iter(|| svd(black_box(m)).unwrap()));
    }
    group.finish();
}

fn exact_normal_curves(c: &mut Criterion) {
    let mut group = c.benchmark_group("exact_normal_curve");
    for n in [3usize, 4, 5] {
        let pts = exact_points_from_integers(&normal_curve_points(n, 2 * n + 1)).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &pts, |b, pts| {
            b.iter(|| border_basis_exact(black_box(pts), 2).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, sextic_approx, evaluation_svd, exact_normal_curves);
criterion_main!(benches);
