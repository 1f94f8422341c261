//! Symplectic and optical tomograms.
//!
//! `M(X, mu, nu)` is the probability density of `mu q + nu p`. Every route
//! here first rescales the frame to unit length with
//! `M(X, mu, nu) = M(X / l, mu / l, nu / l) / l`, `l = |(mu, nu)|`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{finite, Error, Result};
use crate::quadrature::{integrate, oscillation_breaks, Axis, Estimate, QuadratureSpec};
use crate::special::erfcx;
use crate::states::{DoubleDeltaState, SingleDeltaState, WaveFunction};
use crate::wigner::{f_kernel, position_marginal, PhasePoint, PhaseSpaceDensity};

/// Below this, `mu` or `nu` of a unit frame is treated as zero.
pub const LIMIT_THRESHOLD: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymplecticFrame {
    pub x: f64,
    pub mu: f64,
    pub nu: f64,
}

impl SymplecticFrame {
    pub fn new(x: f64, mu: f64, nu: f64) -> Result<Self> {
        finite("X", x)?;
        finite("mu", mu)?;
        finite("nu", nu)?;
        if mu == 0.0 && nu == 0.0 {
            return Err(Error::DegenerateFrame);
        }
        Ok(SymplecticFrame { x, mu, nu })
    }

    pub fn length(&self) -> f64 {
        self.mu.hypot(self.nu)
    }

    /// Frame rescaled to `|(mu, nu)| = 1`, with the factor `l` that divides the density.
    pub fn unit(&self) -> (SymplecticFrame, f64) {
        let l = self.length();
        (
            SymplecticFrame {
                x: self.x / l,
                mu: self.mu / l,
                nu: self.nu / l,
            },
            l,
        )
    }

    pub fn with_x(&self, x: f64) -> Self {
        SymplecticFrame { x, ..*self }
    }
}

/// Homodyne frame `mu = cos(theta)`, `nu = sin(theta)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OpticalFrame {
    pub x: f64,
    pub theta: f64,
}

impl OpticalFrame {
    pub fn new(x: f64, theta: f64) -> Result<Self> {
        Ok(OpticalFrame {
            x: finite("X", x)?,
            theta: finite("theta", theta)?,
        })
    }

    pub fn to_symplectic(&self) -> SymplecticFrame {
        let (s, c) = self.theta.sin_cos();
        SymplecticFrame {
            x: self.x,
            mu: c,
            nu: s,
        }
    }
}

/// Where a unit frame sits relative to the two limiting directions.
enum Direction {
    Position { mu: f64 },
    Momentum { nu: f64 },
    Generic,
}

fn direction(unit: &SymplecticFrame) -> Direction {
    if unit.nu.abs() < LIMIT_THRESHOLD {
        Direction::Position { mu: unit.mu }
    } else if unit.mu.abs() < LIMIT_THRESHOLD {
        Direction::Momentum { nu: unit.nu }
    } else {
        Direction::Generic
    }
}

/// Closed-form tomogram of the single-well state.
///
/// With `s = sqrt(-i mu / (2 nu))` (principal root, so `Re s > 0`) and
/// `w1,2 = (chi +- i X / nu) / (2 s)`,
/// `M = chi / (4 |mu|) |erfcx(w1) + erfcx(w2)|^2`. Each term is bounded by
/// `2 |s| / (sqrt(pi) chi)`, so nothing overflows for any `X` or sign of
/// `mu` and `nu`. Frames within [`LIMIT_THRESHOLD`] of the axes use the
/// position and momentum densities.
pub fn tomogram_single_closed(state: &SingleDeltaState, frame: &SymplecticFrame) -> Result<f64> {
    let (unit, l) = frame.unit();
    let chi = state.chi();
    let x = unit.x;
    let value = match direction(&unit) {
        Direction::Position { mu } => state.psi(x / mu).powi(2) / mu.abs(),
        Direction::Momentum { nu } => state.psi_momentum(x / nu).powi(2) / nu.abs(),
        Direction::Generic => {
            let (mu, nu) = (unit.mu, unit.nu);
            let s = Complex64::new(0.0, -mu / (2.0 * nu)).sqrt();
            let w1 = Complex64::new(chi, x / nu) / (2.0 * s);
            let w2 = Complex64::new(chi, -x / nu) / (2.0 * s);
            let sum = erfcx(w1)? + erfcx(w2)?;
            chi / (4.0 * mu.abs()) * sum.norm_sqr()
        }
    };
    Ok(value / l)
}

/// `w(X, theta)`: the single-well tomogram at `mu = cos(theta)`, `nu = sin(theta)`.
pub fn optical_tomogram(state: &SingleDeltaState, frame: &OpticalFrame) -> Result<f64> {
    tomogram_single_closed(state, &frame.to_symplectic())
}

/// Tomogram of any real wave function from the Fresnel-type integral
/// `M = |int psi(y) exp(i mu y^2 / (2 nu) - i X y / nu) dy|^2 / (2 pi |nu|)`.
///
/// Needs `nu` away from zero; the kernel degenerates there.
pub fn tomogram_fresnel(
    psi: &impl WaveFunction,
    frame: &SymplecticFrame,
    spec: &QuadratureSpec,
) -> Result<Estimate<f64>> {
    let (unit, l) = frame.unit();
    if unit.nu.abs() < LIMIT_THRESHOLD {
        return Err(Error::InvalidParameter {
            name: "nu",
            value: frame.nu,
            reason: "the Fresnel kernel needs nu away from zero",
        });
    }
    let SymplecticFrame { x, mu, nu } = unit;
    let decay = psi.decay_rate();
    let reach = psi.support(1e-2 * spec.abs_tol * decay.min(1.0));
    let mut breaks = oscillation_breaks(-reach, reach, 1.0 / decay, |y| (mu * y - x) / nu);
    breaks.extend(psi.kinks());
    let axis = Axis::new(-reach, reach).with_breaks(breaks);
    let amplitude = integrate(
        |y| Complex64::from_polar(psi.psi(y), (0.5 * mu * y * y - x * y) / nu),
        &axis,
        &spec.scaled(0.1),
    )?;
    let norm = 2.0 * PI * nu.abs() * l;
    let a = amplitude.value.norm();
    Ok(Estimate {
        value: a * a / norm,
        error: (2.0 * a * amplitude.error + amplitude.error * amplitude.error) / norm,
        evaluations: amplitude.evaluations,
    })
}

/// Radon transform `M = (1/(2 pi |nu|)) int W(q, (X - mu q) / nu) dq`.
///
/// Near `nu = 0` the line turns vertical and the position marginal
/// `(1/(2 pi |mu|)) int W(X / mu, p) dp` is used instead.
pub fn tomogram_from_wigner(
    density: &impl PhaseSpaceDensity,
    frame: &SymplecticFrame,
    spec: &QuadratureSpec,
) -> Result<Estimate<f64>> {
    let (unit, l) = frame.unit();
    let SymplecticFrame { x, mu, nu } = unit;
    if let Direction::Position { mu } = direction(&unit) {
        let est = position_marginal(density, x / mu, spec)?;
        let scale = 1.0 / (mu.abs() * l);
        return Ok(Estimate {
            value: est.value * scale,
            error: est.error * scale,
            evaluations: est.evaluations,
        });
    }
    let env = density.envelope();
    let beta = env.decay_rate;
    let extent = env.kinks.iter().fold(0.0f64, |m, k| m.max(k.abs()));
    let line = |q: f64| density.wigner(q, (x - mu * q) / nu);

    let mut peak = line(0.0).abs();
    for k in &env.kinks {
        peak = peak.max(line(*k).abs());
    }
    let tol = 1e-2 * spec.abs_tol;
    let reach = extent + (100.0 * peak.max(tol) / tol).ln() / (2.0 * beta) + 2.0 / beta;
    let slope = (mu / nu).abs();
    let mut breaks = oscillation_breaks(-reach, reach, 1.0 / beta, |q| {
        2.0 * ((x - mu * q) / nu).abs() + 2.0 * (q.abs() + 2.0 * extent) * slope
    });
    for (i, a) in env.kinks.iter().enumerate() {
        for b in &env.kinks[i..] {
            breaks.push(0.5 * (a + b));
        }
    }
    if mu != 0.0 {
        breaks.push(x / mu);
    }
    let axis = Axis::new(-reach, reach).with_breaks(breaks);
    let norm = 2.0 * PI * nu.abs() * l;
    let est = integrate(line, &axis, &spec.scaled(norm))?;
    Ok(Estimate {
        value: est.value / norm,
        error: est.error / norm,
        evaluations: est.evaluations,
    })
}

/// Tomogram of a double-well state as the sum of three line integrals of
/// [`f_kernel`]:
/// `C^2/(2 pi |nu|) [int F(p(q + a), q) dq +- 2 int cos(2 a p(q)) F(p(q), q) dq + int F(p(q - a), q) dq]`
/// with `p(q) = (X - mu q) / nu`.
pub fn tomogram_double(
    state: &DoubleDeltaState,
    frame: &SymplecticFrame,
    spec: &QuadratureSpec,
) -> Result<Estimate<f64>> {
    let (unit, l) = frame.unit();
    let SymplecticFrame { x, mu, nu } = unit;
    match direction(&unit) {
        Direction::Position { mu } => {
            return Ok(Estimate {
                value: state.psi(x / mu).powi(2) / (mu.abs() * l),
                error: 0.0,
                evaluations: 1,
            })
        }
        Direction::Momentum { nu } => {
            return Ok(Estimate {
                value: state.psi_momentum(x / nu).norm_sqr() / (nu.abs() * l),
                error: 0.0,
                evaluations: 1,
            })
        }
        Direction::Generic => {}
    }
    let beta = state.beta();
    let a = state.a();
    let sign = state.parity().sign();
    let p_of = |q: f64| (x - mu * q) / nu;
    let integrand = |q: f64| {
        let outer = f_kernel(beta, PhasePoint::new(q, p_of(q + a))) + f_kernel(beta, PhasePoint::new(q, p_of(q - a)));
        let p = p_of(q);
        outer + sign * 2.0 * (2.0 * a * p).cos() * f_kernel(beta, PhasePoint::new(q, p))
    };

    let c2 = state.norm_c() * state.norm_c();
    let norm = 2.0 * PI * nu.abs() * l / c2;
    let tol = 1e-2 * spec.abs_tol * norm;
    let peak = integrand(0.0).abs().max(4.0 / beta);
    let reach = (100.0 * peak / tol).ln() / (2.0 * beta) + 2.0 / beta;
    let slope = (mu / nu).abs();
    let mut breaks = oscillation_breaks(-reach, reach, 1.0 / beta, |q| {
        2.0 * p_of(q).abs() + 2.0 * (q.abs() + 2.0 * a) * slope + 2.0 * a * slope
    });
    breaks.push(0.0);
    let axis = Axis::new(-reach, reach).with_breaks(breaks);
    let est = integrate(integrand, &axis, &spec.scaled(norm))?;
    Ok(Estimate {
        value: (est.value / norm).max(0.0),
        error: est.error / norm,
        evaluations: est.evaluations,
    })
}

/// `int M(X) dX` for a tomogram at a fixed `(mu, nu)`; 1 for normalized states.
///
/// The range doubles until the mass beyond it, fitted as `A / X^4`, is
/// below a tenth of `abs_tol`. Half the fitted tail goes into the value and
/// half into the error bound.
pub fn check_normalization(
    tomogram: impl Fn(f64) -> f64 + Sync,
    frame: &SymplecticFrame,
    spec: &QuadratureSpec,
) -> Result<Estimate<f64>> {
    let l = frame.length();
    let mut reach = 8.0 * l;
    let mut tail;
    loop {
        tail = (tomogram(reach).abs() + tomogram(-reach).abs()) * reach / 3.0;
        if tail <= 0.1 * spec.abs_tol || reach >= 1e6 * l {
            break;
        }
        reach *= 2.0;
    }
    let mut breaks = vec![0.0];
    let mut b = l / 16.0;
    while b < reach {
        breaks.push(b);
        breaks.push(-b);
        b *= 2.0;
    }
    let axis = Axis::new(-reach, reach).with_breaks(breaks);
    let est = integrate(tomogram, &axis, spec)?;
    Ok(Estimate {
        value: est.value + 0.5 * tail,
        error: est.error + 0.5 * tail,
        evaluations: est.evaluations,
    })
}

/// Second moments from the limiting tomograms, and `<x^2><p^2>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moments {
    pub mean_x2: f64,
    pub mean_p2: f64,
    pub uncertainty_product: f64,
    /// Bound on the error of the product.
    pub error: f64,
}

/// `<p^2> = int X^2 M(X, 0, 1) dX` and `<x^2> = int X^2 M(X, 1, 0) dX`.
///
/// First moments vanish by parity, so the product is the uncertainty product.
pub fn moments(state: &SingleDeltaState, spec: &QuadratureSpec) -> Result<Moments> {
    let chi = state.chi();
    let momentum = SymplecticFrame::new(0.0, 0.0, 1.0)?;
    let position = SymplecticFrame::new(0.0, 1.0, 0.0)?;
    let second = |frame: SymplecticFrame, scale: f64| -> Result<Estimate<f64>> {
        let axis = Axis::real_line()
            .with_breaks([-scale, 0.0, scale])
            .with_tail_scale(scale);
        let failed = std::sync::Mutex::new(None);
        let est = integrate(
            |x: f64| match tomogram_single_closed(state, &frame.with_x(x)) {
                Ok(m) => x * x * m,
                Err(e) => {
                    failed.lock().unwrap().get_or_insert(e);
                    0.0
                }
            },
            &axis,
            spec,
        )?;
        match failed.into_inner().unwrap() {
            Some(e) => Err(e),
            None => Ok(est),
        }
    };
    let p2 = second(momentum, chi)?;
    let x2 = second(position, 0.5 / chi)?;
    Ok(Moments {
        mean_x2: x2.value,
        mean_p2: p2.value,
        uncertainty_product: x2.value * p2.value,
        error: x2.error * p2.value + p2.error * x2.value + x2.error * p2.error,
    })
}
