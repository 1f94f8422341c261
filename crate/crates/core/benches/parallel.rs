use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use qtomo_core::exec;
use qtomo_core::grid::Sweep;
use qtomo_core::quadrature::QuadratureSpec;
use qtomo_core::states::{DoubleDeltaState, Parity, SingleDeltaState};
use qtomo_core::tomography::{tomogram_from_wigner, SymplecticFrame};
use qtomo_core::wigner::{negativity_scan, wigner_double, wigner_numeric, PhasePoint};

fn scan(c: &mut Criterion) {
    let state = DoubleDeltaState::figure_convention(1.0, 0.5, Parity::Antisymmetric).unwrap();
    let axis = Sweep::new(-3.0, 3.0, 121).unwrap();
    let w = |q, p| wigner_double(&state, PhasePoint::new(q, p));

    let mut group = c.benchmark_group("negativity_scan_121x121");
    group.bench_function("parallel", |b| b.iter(|| negativity_scan(w, axis, axis)));
    group.bench_function("sequential", |b| {
        b.iter(|| exec::sequential(|| negativity_scan(w, axis, axis)))
    });
    group.finish();
}

fn numeric_grid(c: &mut Criterion) {
    let state = DoubleDeltaState::new(2.0, 0.5, Parity::Symmetric).unwrap().unwrap();
    let spec = QuadratureSpec::with_tolerances(1e-8, 1e-8);
    let points: Vec<PhasePoint> = Sweep::new(-2.0, 2.0, 7)
        .unwrap()
        .points()
        .iter()
        .flat_map(|&q| {
            Sweep::new(-2.0, 2.0, 7)
                .unwrap()
                .points()
                .into_iter()
                .map(move |p| PhasePoint::new(q, p))
        })
        .collect();
    let fill = || -> Vec<f64> { exec::map(&points, |pt| wigner_numeric(&state, *pt, &spec).unwrap().value.re) };

    let mut group = c.benchmark_group("wigner_numeric_7x7");
    group.sample_size(10);
    group.bench_function("parallel", |b| b.iter(fill));
    group.bench_function("sequential", |b| b.iter(|| exec::sequential(fill)));
    group.finish();
}

fn radon(c: &mut Criterion) {
    let state = SingleDeltaState::new(1.0).unwrap();
    let spec = QuadratureSpec::with_tolerances(1e-8, 1e-8);
    let mut group = c.benchmark_group("radon_of_wigner");
    group.sample_size(10);
    for (x, mu, nu) in [(0.3, 0.8, 0.6), (1.5, -1.2, 2.0)] {
        let frame = SymplecticFrame::new(x, mu, nu).unwrap();
        let label = format!("{x},{mu},{nu}");
        group.bench_with_input(BenchmarkId::new("parallel", &label), &frame, |b, f| {
            b.iter(|| tomogram_from_wigner(&state, f, &spec).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("sequential", &label), &frame, |b, f| {
            b.iter(|| exec::sequential(|| tomogram_from_wigner(&state, f, &spec).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, scan, numeric_grid, radon);
criterion_main!(benches);
