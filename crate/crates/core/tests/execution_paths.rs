//! Parallel and sequential execution give bit-identical results.

use qtomo_core::exec;
use qtomo_core::grid::Sweep;
use qtomo_core::quadrature::{FourierRule, QuadratureSpec};
use qtomo_core::states::{DoubleDeltaState, Parity, SingleDeltaState};
use qtomo_core::transitions::{survival_wigner, ShakeScenario};
use qtomo_core::wigner::{negativity_scan, wigner_double, wigner_norm, PhasePoint};

#[test]
fn negativity_scan_is_path_independent() {
    let state = DoubleDeltaState::figure_convention(1.0, 0.5, Parity::Antisymmetric).unwrap();
    let axis = Sweep::new(-3.0, 3.0, 61).unwrap();
    let w = |q, p| wigner_double(&state, PhasePoint::new(q, p));
    let par = negativity_scan(w, axis, axis);
    let seq = exec::sequential(|| negativity_scan(w, axis, axis));
    assert_eq!(par.0.to_bits(), seq.0.to_bits());
    assert_eq!(par.1, seq.1);
    assert!(par.0 < -1e-3);
}

#[test]
fn fourier_rule_is_path_independent() {
    let f = |x: f64| (-x.abs()).exp();
    let par = FourierRule::new(f, 30.0, 0.5);
    let seq = exec::sequential(|| FourierRule::new(f, 30.0, 0.5));
    for k in [0.0, 1.0, 17.0] {
        assert_eq!(par.transform(k), seq.transform(k));
    }
}

#[test]
fn plane_integrals_are_path_independent() {
    let spec = QuadratureSpec::with_tolerances(1e-7, 1e-7);
    let state = SingleDeltaState::new(1.0).unwrap();
    let par = wigner_norm(&state, &spec).unwrap();
    let seq = exec::sequential(|| wigner_norm(&state, &spec).unwrap());
    assert_eq!(par.value.to_bits(), seq.value.to_bits());

    let s = ShakeScenario::new(1.0, 2.0).unwrap();
    let par = survival_wigner(&s, &spec).unwrap();
    let seq = exec::sequential(|| survival_wigner(&s, &spec).unwrap());
    assert_eq!(par.value.to_bits(), seq.value.to_bits());
}
