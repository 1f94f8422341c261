//! The same physical quantity computed through different representations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qtomo_core::grid::Sweep;
use qtomo_core::quadrature::QuadratureSpec;
use qtomo_core::states::{DoubleDeltaState, Parity, SingleDeltaState};
use qtomo_core::tomography::{
    check_normalization, tomogram_double, tomogram_fresnel, tomogram_from_wigner, tomogram_single_closed,
    SymplecticFrame,
};
use qtomo_core::transitions::{
    survival_tomographic, survival_wavefunction, survival_wavefunction_quadrature, survival_wigner, ShakeScenario,
};
use qtomo_core::wigner::{position_marginal, wigner_double, wigner_numeric, PhasePoint};

fn random_frame(rng: &mut ChaCha8Rng, x_range: f64) -> SymplecticFrame {
    let sign = |rng: &mut ChaCha8Rng| if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    let mu = sign(rng) * rng.gen_range(0.1..3.0);
    let nu = sign(rng) * rng.gen_range(0.1..3.0);
    let x = if x_range > 0.0 {
        rng.gen_range(-x_range..x_range)
    } else {
        0.0
    };
    SymplecticFrame::new(x, mu, nu).unwrap()
}

#[test]
fn tomogram_three_ways() {
    let state = SingleDeltaState::new(1.0).unwrap();
    let spec = QuadratureSpec::with_tolerances(1e-9, 1e-9);
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..20 {
        let frame = random_frame(&mut rng, 3.0);
        let closed = tomogram_single_closed(&state, &frame).unwrap();
        let radon = tomogram_from_wigner(&state, &frame, &spec).unwrap().value;
        let fresnel = tomogram_fresnel(&state, &frame, &spec).unwrap().value;
        assert!(
            (closed - radon).abs() < 1e-7,
            "{frame:?}: closed {closed} radon {radon}"
        );
        assert!(
            (closed - fresnel).abs() < 1e-7,
            "{frame:?}: closed {closed} fresnel {fresnel}"
        );
    }
}

#[test]
fn tomograms_are_normalized_in_random_frames() {
    let spec = QuadratureSpec::with_tolerances(1e-9, 1e-9);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for chi in [0.5, 1.0, 2.0] {
        let state = SingleDeltaState::new(chi).unwrap();
        for _ in 0..10 {
            let frame = random_frame(&mut rng, 0.0);
            let total = check_normalization(
                |x| tomogram_single_closed(&state, &frame.with_x(x)).unwrap(),
                &frame,
                &spec,
            )
            .unwrap();
            assert!((total.value - 1.0).abs() < 1e-8, "chi {chi} {frame:?}: {}", total.value);
        }
    }
}

#[test]
fn double_well_wigner_against_wave_function() {
    let spec = QuadratureSpec::with_tolerances(1e-10, 1e-10);
    let grid = Sweep::new(-2.0, 2.0, 7).unwrap().points();
    for parity in [Parity::Symmetric, Parity::Antisymmetric] {
        let state = DoubleDeltaState::new(2.0, 0.5, parity).unwrap().unwrap();
        for &q in &grid {
            for &p in &grid {
                let pt = PhasePoint::new(q, p);
                let closed = wigner_double(&state, pt);
                let numeric = wigner_numeric(&state, pt, &spec).unwrap().value;
                assert!(
                    (closed - numeric.re).abs() < 1e-7,
                    "{parity} ({q}, {p}): {closed} vs {numeric}"
                );
                assert!(numeric.im.abs() < 1e-9);
            }
        }
    }
}

#[test]
fn double_well_marginal_and_tomogram_limits() {
    let spec = QuadratureSpec::with_tolerances(1e-9, 1e-9);
    for parity in [Parity::Symmetric, Parity::Antisymmetric] {
        let state = DoubleDeltaState::new(2.0, 0.5, parity).unwrap().unwrap();
        for x in [-1.3, -0.5, -0.2, 0.0, 0.35, 0.5, 0.9] {
            let density = state.psi(x).powi(2);
            let marginal = position_marginal(&state, x, &spec).unwrap().value;
            assert!(
                (marginal - density).abs() < 1e-7,
                "{parity} x = {x}: {marginal} vs {density}"
            );
            let frame = SymplecticFrame::new(x, 1.0, 0.0).unwrap();
            let m = tomogram_double(&state, &frame, &spec).unwrap().value;
            assert!((m - density).abs() < 1e-12);
        }
    }
}

#[test]
fn survival_routes_agree() {
    let wigner_spec = QuadratureSpec::with_tolerances(1e-7, 1e-7);
    let tomo_spec = QuadratureSpec::with_tolerances(1e-5, 1e-5);
    for (a, b) in [(1.0, 1.0), (1.0, 2.0), (1.0, 3.0), (0.5, 4.0)] {
        let s = ShakeScenario::new(a, b).unwrap();
        let exact = survival_wavefunction(&s);
        let quad = survival_wavefunction_quadrature(&s, &QuadratureSpec::default())
            .unwrap()
            .value;
        let wigner = survival_wigner(&s, &wigner_spec).unwrap().value;
        let tomo = survival_tomographic(&s, &tomo_spec).unwrap();
        assert!((quad - exact).abs() < 1e-9);
        assert!((wigner - exact).abs() < 1e-6, "({a}, {b}) wigner {wigner} vs {exact}");
        assert!(
            (tomo.value - exact).abs() < 1e-4,
            "({a}, {b}) tomogram {} vs {exact}",
            tomo.value
        );
        assert!((tomo.value - exact).abs() <= tomo.error);
        for p in [quad, wigner, tomo.value] {
            assert!((-1e-6..=1.0 + 1e-6).contains(&p));
        }
    }
}

#[test]
fn survival_is_symmetric_and_scale_free_numerically() {
    let spec = QuadratureSpec::with_tolerances(1e-7, 1e-7);
    let base = survival_wigner(&ShakeScenario::new(1.0, 3.0).unwrap(), &spec)
        .unwrap()
        .value;
    let swapped = survival_wigner(&ShakeScenario::new(3.0, 1.0).unwrap(), &spec)
        .unwrap()
        .value;
    assert!((base - swapped).abs() < 1e-6);
    for lambda in [0.5, 2.0] {
        let scaled = survival_wigner(&ShakeScenario::new(lambda, 3.0 * lambda).unwrap(), &spec)
            .unwrap()
            .value;
        assert!((base - scaled).abs() < 1e-6, "lambda {lambda}: {scaled} vs {base}");
    }
    let tomo_spec = QuadratureSpec::with_tolerances(1e-5, 1e-5);
    let forward = survival_tomographic(&ShakeScenario::new(1.0, 2.0).unwrap(), &tomo_spec)
        .unwrap()
        .value;
    let backward = survival_tomographic(&ShakeScenario::new(2.0, 1.0).unwrap(), &tomo_spec)
        .unwrap()
        .value;
    assert!((forward - backward).abs() < 1e-4);
}
