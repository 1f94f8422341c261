//! Wigner functions of the delta-well bound states.
//!
//! `W(q, p) = int du exp(-i p u) psi*(q + u/2) psi(q - u/2)`, without a
//! `1/(2 pi)` prefactor; marginals and norms divide by `2 pi` instead.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exec;
use crate::grid::Sweep;
use crate::quadrature::{integrate, integrate_plane_with, Axis, Estimate, QuadratureError, QuadratureSpec};
use crate::states::{DoubleDeltaState, Parity, SingleDeltaState, WaveFunction};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhasePoint {
    pub q: f64,
    pub p: f64,
}

impl PhasePoint {
    pub fn new(q: f64, p: f64) -> Self {
        PhasePoint { q, p }
    }
}

/// Below this `|2 p q|` the `sin(t)/t` factor comes from its series.
const SERIES_THRESHOLD: f64 = 1e-4;

/// `sin(t) / t`, finite at zero.
fn sinc(t: f64) -> f64 {
    if t.abs() < SERIES_THRESHOLD {
        let t2 = t * t;
        1.0 - t2 / 6.0 + t2 * t2 / 120.0
    } else {
        t.sin() / t
    }
}

/// Closed-form Wigner function of the single-well state:
/// `2 chi^2 exp(-2 chi |q|) / (p^2 + chi^2) [cos(2p|q|) + (chi/p) sin(2p|q|)]`.
pub fn wigner_single(state: &SingleDeltaState, pt: PhasePoint) -> f64 {
    let chi = state.chi();
    let aq = pt.q.abs();
    let t = 2.0 * pt.p * aq;
    let bracket = t.cos() + 2.0 * chi * aq * sinc(t);
    2.0 * chi * chi * (-2.0 * chi * aq).exp() / (pt.p * pt.p + chi * chi) * bracket
}

/// `F(p, q) = int du exp(-i p u) exp(-beta|q + u/2|) exp(-beta|q - u/2|)`.
///
/// `beta` must be positive.
pub fn f_kernel(beta: f64, pt: PhasePoint) -> f64 {
    let PhasePoint { q, p } = pt;
    let aq = q.abs();
    let t = 2.0 * p * aq;
    let (s, c) = t.sin_cos();
    let bracket = 2.0 * aq * sinc(t) + (beta * c - p * s) / (p * p + beta * beta);
    2.0 * (-2.0 * beta * aq).exp() * bracket
}

/// `C^2 (F(p, q - a) +- 2 cos(2 p a) F(p, q) + F(p, q + a))`.
pub fn wigner_double(state: &DoubleDeltaState, pt: PhasePoint) -> f64 {
    let beta = state.beta();
    let a = state.a();
    let PhasePoint { q, p } = pt;
    let outer = f_kernel(beta, PhasePoint::new(q - a, p)) + f_kernel(beta, PhasePoint::new(q + a, p));
    let cross = 2.0 * (2.0 * p * a).cos() * f_kernel(beta, pt);
    let c2 = state.norm_c() * state.norm_c();
    match state.parity() {
        Parity::Symmetric => c2 * (outer + cross),
        Parity::Antisymmetric => c2 * (outer - cross),
    }
}

/// Wigner function by direct quadrature over `u`.
///
/// The imaginary part vanishes for real wave functions and is returned as a
/// check.
pub fn wigner_numeric(psi: &impl WaveFunction, pt: PhasePoint, spec: &QuadratureSpec) -> Result<Estimate<Complex64>> {
    let PhasePoint { q, p } = pt;
    if !(q.is_finite() && p.is_finite()) {
        return Err(Error::NonFinite("phase point"));
    }
    let reach = psi.support(1e-3 * spec.abs_tol * psi.decay_rate().min(1.0));
    let u_max = 2.0 * (q.abs() + reach);
    let mut breaks = vec![0.0];
    for k in psi.kinks() {
        breaks.push(2.0 * (k - q));
        breaks.push(2.0 * (q - k));
    }
    let mut spec = *spec;
    if p != 0.0 {
        spec = spec.with_oscillation_scale(2.0 * PI / p.abs());
    }
    let axis = Axis::new(-u_max, u_max)
        .with_breaks(breaks)
        .with_panel_width(1.0 / psi.decay_rate());
    let est = integrate(
        |u| Complex64::from_polar(psi.psi(q + 0.5 * u) * psi.psi(q - 0.5 * u), -p * u),
        &axis,
        &spec,
    )?;
    Ok(est)
}

/// Kinks and decay of the wave function behind a phase-space function.
#[derive(Debug, Clone, PartialEq)]
pub struct Envelope {
    /// Positions where the wave function has kinks.
    pub kinks: Vec<f64>,
    /// Exponential decay rate of the wave function.
    pub decay_rate: f64,
}

impl Envelope {
    fn extent(&self) -> f64 {
        self.kinks.iter().fold(0.0f64, |m, k| m.max(k.abs()))
    }

    /// Positions `q` where `W(q, p)` is not smooth: kinks and their midpoints.
    fn q_breaks(&self) -> Vec<f64> {
        let mut out = Vec::new();
        for (i, a) in self.kinks.iter().enumerate() {
            for b in &self.kinks[i..] {
                out.push(0.5 * (a + b));
            }
        }
        out
    }
}

/// A Wigner function together with what the integrators need to know about
/// its shape.
pub trait PhaseSpaceDensity: Sync {
    fn wigner(&self, q: f64, p: f64) -> f64;
    fn envelope(&self) -> Envelope;
}

impl PhaseSpaceDensity for SingleDeltaState {
    fn wigner(&self, q: f64, p: f64) -> f64 {
        wigner_single(self, PhasePoint::new(q, p))
    }

    fn envelope(&self) -> Envelope {
        Envelope {
            kinks: vec![0.0],
            decay_rate: self.chi(),
        }
    }
}

impl PhaseSpaceDensity for DoubleDeltaState {
    fn wigner(&self, q: f64, p: f64) -> f64 {
        wigner_double(self, PhasePoint::new(q, p))
    }

    fn envelope(&self) -> Envelope {
        Envelope {
            kinks: vec![-self.a(), self.a()],
            decay_rate: self.beta(),
        }
    }
}

/// Wigner function given as a closure `(q, p) -> W`.
pub struct WignerFn<F> {
    f: F,
    envelope: Envelope,
}

impl<F: Fn(f64, f64) -> f64 + Sync> WignerFn<F> {
    pub fn new(f: F, envelope: Envelope) -> Self {
        WignerFn { f, envelope }
    }
}

impl<F: Fn(f64, f64) -> f64 + Sync> PhaseSpaceDensity for WignerFn<F> {
    fn wigner(&self, q: f64, p: f64) -> f64 {
        (self.f)(q, p)
    }

    fn envelope(&self) -> Envelope {
        self.envelope.clone()
    }
}

const MARGINAL_LEVELS: usize = 10;

/// `(1/2pi) int W(x, p) dp`, the position density at `x`.
///
/// At fixed `x` the Wigner functions here fall off only like `1/p^2` with
/// oscillations, so the integral is taken with a Gaussian damping
/// `exp(-(eps p)^2)` for a halving sequence of `eps` and extrapolated to
/// `eps = 0`. The damped integral is a power series in `eps` as long as
/// `eps` stays well below the distance to the nearest kink, which fixes the
/// starting width.
pub fn position_marginal(density: &impl PhaseSpaceDensity, x: f64, spec: &QuadratureSpec) -> Result<Estimate<f64>> {
    if !x.is_finite() {
        return Err(Error::NonFinite("x"));
    }
    let env = density.envelope();
    let beta = env.decay_rate;
    let scale = 1.0 / beta;
    // The smoothed function of u has kinks at u = 2 (k - x).
    let nearest = env
        .kinks
        .iter()
        .map(|k| 2.0 * (k - x).abs())
        .filter(|d| *d > 1e-9 * scale)
        .fold(f64::INFINITY, f64::min);
    let widest = env.kinks.iter().map(|k| 2.0 * (k - x).abs()).fold(0.0f64, f64::max);
    let mut eps = (0.25 * scale).min(nearest / 12.0);
    let period = 2.0 * PI / (widest + beta);
    let inner_spec = spec.scaled(0.05).with_oscillation_scale(period);

    let mut table: Vec<Vec<f64>> = Vec::new();
    let mut evaluations = 0;
    let mut quad_error = 0.0f64;
    let mut last: Option<f64> = None;
    for level in 0..MARGINAL_LEVELS {
        let reach = 6.5 / eps;
        let axis = Axis::new(-reach, reach).with_breaks([0.0]);
        let damped = integrate(
            |p: f64| density.wigner(x, p) * (-(eps * p) * (eps * p)).exp(),
            &axis,
            &inner_spec,
        )?;
        evaluations += damped.evaluations;
        quad_error = quad_error.max(damped.error);

        let mut row = vec![damped.value];
        for j in 1..=level {
            let factor = 2f64.powi(j as i32);
            let prev = &table[level - 1];
            row.push(row[j - 1] + (row[j - 1] - prev[j - 1]) / (factor - 1.0));
        }
        let best = row[level];
        table.push(row);

        if let Some(prev) = last {
            let change = (best - prev).abs();
            let tol = (2.0 * PI) * spec.abs_tol.max(spec.rel_tol * best.abs() / (2.0 * PI));
            if level >= 3 && change <= tol {
                return Ok(Estimate {
                    value: best / (2.0 * PI),
                    error: (change + quad_error) / (2.0 * PI),
                    evaluations,
                });
            }
        }
        last = Some(best);
        eps *= 0.5;
    }
    let best = last.unwrap_or(0.0);
    Err(Error::Quadrature(QuadratureError::NonConvergence {
        estimate: Complex64::new(best / (2.0 * PI), 0.0),
        error: f64::NAN,
        subdivisions: MARGINAL_LEVELS,
    }))
}

/// `(1/2pi) int W dq dp`; 1 for normalized states.
pub fn wigner_norm(density: &impl PhaseSpaceDensity, spec: &QuadratureSpec) -> Result<Estimate<f64>> {
    let env = density.envelope();
    let shape = PlaneShape {
        q_breaks: env.q_breaks(),
        probes: env.kinks.clone(),
        extent: env.extent(),
        q_decay: 2.0 * env.decay_rate,
        p_scale: env.decay_rate,
    };
    plane_integral(|q, p| density.wigner(q, p), &shape, spec)
}

/// What [`plane_integral`] needs to know about its integrand `f(q, p)`.
pub(crate) struct PlaneShape {
    /// Lines `q = const` where `f` has kinks.
    pub q_breaks: Vec<f64>,
    /// Positions where `|f(., p)|` is largest, used to size the `q` range.
    pub probes: Vec<f64>,
    /// `|f|` decays like `exp(-q_decay (|q| - extent))`.
    pub extent: f64,
    pub q_decay: f64,
    /// Momentum scale of the core region.
    pub p_scale: f64,
}

/// `(1/2pi) int f(q, p) dq dp` for integrands that oscillate in `q` with
/// period about `pi / |p|` and whose `q` integral falls off like `1/p^4`.
///
/// The inner integral runs over `q`. The outer range is cut where the tail
/// fitted to that decay drops below the tolerance; half the fitted tail is
/// added to the value and half to the error bound (the fit is exact for a
/// pure `1/p^4` tail and twice the mean when the tail carries a `cos^2`
/// modulation).
pub(crate) fn plane_integral(
    f: impl Fn(f64, f64) -> f64 + Sync,
    shape: &PlaneShape,
    spec: &QuadratureSpec,
) -> Result<Estimate<f64>> {
    spec.validate()?;
    let inner_tol = 1e-2 * spec.abs_tol;
    let core = 2.0 / shape.q_decay;

    let q_axis = |p: f64| {
        let mut peak = f(0.0, p).abs();
        for q in &shape.probes {
            peak = peak.max(f(*q, p).abs());
        }
        let reach = shape.extent + (100.0 * peak.max(inner_tol) / inner_tol).ln() / shape.q_decay + 2.0 * core;
        let width = if p == 0.0 { core } else { (PI / p.abs()).min(core) };
        Axis::new(-reach, reach)
            .with_breaks(shape.q_breaks.iter().copied())
            .with_panel_width(width)
    };
    let q_integral = |p: f64| -> Result<f64> {
        let est = integrate(|q| f(q, p), &q_axis(p), &spec.scaled(1e-2))?;
        Ok(est.value)
    };

    // Fit A / p^4 to the q integral just past the core.
    let start = 20.0 * shape.p_scale + 4.0 * shape.extent;
    let mut amplitude = 0.0f64;
    for j in 0..6 {
        let p = start * (1.0 + 0.1 * j as f64);
        for sign in [1.0, -1.0] {
            amplitude = amplitude.max(q_integral(sign * p)?.abs() * p.powi(4));
        }
    }
    let target = 2.0 * PI * spec.abs_tol;
    let reach = (2.0 * amplitude / (3.0 * target))
        .cbrt()
        .clamp(start, 1e4 * shape.p_scale);
    let tail = 2.0 * amplitude / (3.0 * reach.powi(3));

    let mut breaks = vec![0.0];
    let mut b = shape.p_scale;
    while b < reach {
        breaks.push(b);
        breaks.push(-b);
        b *= 2.0;
    }
    let outer = Axis::new(-reach, reach).with_breaks(breaks);
    let est = integrate_plane_with(|p, q| f(q, p), &outer, q_axis, &spec.scaled(2.0 * PI))?;
    Ok(Estimate {
        value: (est.value + 0.5 * tail) / (2.0 * PI),
        error: (est.error + 0.5 * tail) / (2.0 * PI),
        evaluations: est.evaluations,
    })
}

/// Minimum of `w` over a grid and where it is attained; ties go to the
/// first point in row-major `(q, p)` order.
pub fn negativity_scan(w: impl Fn(f64, f64) -> f64 + Sync, q: Sweep, p: Sweep) -> (f64, PhasePoint) {
    let values = exec::map_range(q.n * p.n, |k| {
        let pt = PhasePoint::new(q.point(k / p.n), p.point(k % p.n));
        (w(pt.q, pt.p), pt)
    });
    values
        .into_iter()
        .fold((f64::INFINITY, PhasePoint::new(f64::NAN, f64::NAN)), |best, (v, pt)| {
            if v < best.0 {
                (v, pt)
            } else {
                best
            }
        })
}
