//! Probability to stay bound when the well strength jumps from `kappa1` to
//! `kappa2`, by wave-function, Wigner and tomogram overlaps.

use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::Mutex;

use num_complex::Complex64;

use crate::error::{positive, Error, Result};
use crate::quadrature::{integrate, Axis, Estimate, FourierRule, QuadratureSpec};
use crate::special;
use crate::states::SingleDeltaState;
use crate::tomography::{optical_tomogram, OpticalFrame, SymplecticFrame};
use crate::wigner::{plane_integral, wigner_single, PhasePoint, PlaneShape};

/// Largest radius in the `(mu, nu)` plane used by [`survival_tomographic`].
pub const MAX_RADIUS: f64 = 200.0;

/// Sudden change of the well strength.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShakeScenario {
    kappa1: f64,
    kappa2: f64,
}

impl ShakeScenario {
    pub fn new(kappa1: f64, kappa2: f64) -> Result<Self> {
        Ok(ShakeScenario {
            kappa1: positive("kappa1", kappa1)?,
            kappa2: positive("kappa2", kappa2)?,
        })
    }

    pub fn kappa1(&self) -> f64 {
        self.kappa1
    }

    pub fn kappa2(&self) -> f64 {
        self.kappa2
    }

    pub fn initial(&self) -> SingleDeltaState {
        SingleDeltaState::new(self.kappa1).expect("validated")
    }

    pub fn final_state(&self) -> SingleDeltaState {
        SingleDeltaState::new(self.kappa2).expect("validated")
    }
}

/// `|<psi_1|psi_2>|^2 = 4 k1 k2 / (k1 + k2)^2`.
pub fn survival_wavefunction(s: &ShakeScenario) -> f64 {
    let sum = s.kappa1 + s.kappa2;
    4.0 * s.kappa1 * s.kappa2 / (sum * sum)
}

/// The same overlap by quadrature of `psi_1 psi_2`.
pub fn survival_wavefunction_quadrature(s: &ShakeScenario, spec: &QuadratureSpec) -> Result<Estimate<f64>> {
    let (a, b) = (s.initial(), s.final_state());
    let decay = s.kappa1 + s.kappa2;
    let axis = Axis::real_line().with_breaks([0.0]).with_tail_scale(1.0 / decay);
    let est = integrate(|x: f64| a.psi(x) * b.psi(x), &axis, spec)?;
    Ok(Estimate {
        value: est.value * est.value,
        error: est.error * (2.0 * est.value.abs() + est.error),
        evaluations: est.evaluations,
    })
}

/// `(1/2pi) int W_1 W_2 dq dp`.
pub fn survival_wigner(s: &ShakeScenario, spec: &QuadratureSpec) -> Result<Estimate<f64>> {
    let (a, b) = (s.initial(), s.final_state());
    let shape = PlaneShape {
        q_breaks: vec![0.0],
        probes: vec![0.0],
        extent: 0.0,
        q_decay: 2.0 * (s.kappa1 + s.kappa2),
        p_scale: s.kappa1.min(s.kappa2),
    };
    plane_integral(
        |q, p| {
            let pt = PhasePoint { q, p };
            wigner_single(&a, pt) * wigner_single(&b, pt)
        },
        &shape,
        spec,
    )
}

/// `int M(X) exp(iX) dX` for a tomogram taken at one frame direction.
///
/// `frame` only sets the length scale; its `x` is ignored. The range grows
/// until the tomogram mass left outside is below the tolerance, and that
/// bound is added to the error.
pub fn characteristic_from_tomogram(
    tomogram: impl Fn(f64) -> f64 + Sync,
    frame: &SymplecticFrame,
    spec: &QuadratureSpec,
) -> Result<Estimate<Complex64>> {
    spec.validate()?;
    let l = frame.length();
    let mut reach = 8.0 * l;
    let mut tail;
    loop {
        tail = (tomogram(reach).abs() + tomogram(-reach).abs()) * reach / 3.0;
        if tail <= 0.1 * spec.abs_tol || reach >= 1e6 * l.max(1.0) {
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
    let axis = Axis::new(-reach, reach).with_breaks(breaks).with_panel_width(PI);
    let est = integrate(|x: f64| Complex64::from_polar(tomogram(x), x), &axis, spec)?;
    Ok(Estimate {
        value: est.value,
        error: est.error + tail,
        evaluations: est.evaluations,
    })
}

/// Characteristic function of a single well at `(mu, nu)`.
pub fn characteristic_single(
    state: &SingleDeltaState,
    mu: f64,
    nu: f64,
    spec: &QuadratureSpec,
) -> Result<Estimate<Complex64>> {
    let frame = SymplecticFrame::new(0.0, mu, nu)?;
    let failed = Mutex::new(None);
    let est = characteristic_from_tomogram(
        |x| match crate::tomography::tomogram_single_closed(state, &frame.with_x(x)) {
            Ok(m) => m,
            Err(e) => {
                failed.lock().unwrap().get_or_insert(e);
                0.0
            }
        },
        &frame,
        spec,
    )?;
    match failed.into_inner().unwrap() {
        Some(e) => Err(e),
        None => Ok(est),
    }
}

/// Overlap of two tomograms, reduced to the `(mu, nu)` plane.
///
/// With `(mu, nu) = r (cos t, sin t)` and `w(Y, t)` the optical tomogram,
/// the characteristic function is `phi(r, t) = int w(Y, t) exp(irY) dY`,
/// and for even states
/// `P = (2/pi) int_0^{pi/2} dt int_0^inf r phi_1 phi_2 dr`.
/// Each angle samples `w` once and reuses the samples for every `r`.
///
/// Away from `t = 0` the integrand dies within `r ~ 40 / (k sin t)`; along
/// `t = 0` it falls only like `1/r^3`. The radius is doubled in annuli, each
/// covering just the angles that still reach it, until an annulus adds less
/// than `abs_tol` or [`MAX_RADIUS`] is reached. The rest is extrapolated
/// from the last annulus, and half of it is counted in the error bound.
pub fn survival_tomographic(s: &ShakeScenario, spec: &QuadratureSpec) -> Result<Estimate<f64>> {
    spec.validate()?;
    let kappas = [s.kappa1, s.kappa2];
    let k_sum = s.kappa1 + s.kappa2;
    let k_max = s.kappa1.max(s.kappa2);
    let states = [s.initial(), s.final_state()];
    let failed = Mutex::new(None);
    let fail = |e: Error| {
        failed.lock().unwrap().get_or_insert(e);
        0.0
    };

    // Mass of w allowed outside the sampled range.
    let drop = 1e-2 * spec.abs_tol;
    let cutoff = |sin_t: f64| {
        if sin_t == 0.0 {
            f64::INFINITY
        } else {
            40.0 / (k_sum * sin_t)
        }
    };

    // int_{r_lo}^{min(r_hi, cutoff)} r phi_1 phi_2 dr at angle t.
    let radial = |t: f64, r_lo: f64, r_hi: f64| -> Result<f64> {
        let (sin_t, cos_t) = t.sin_cos();
        let r_hi = r_hi.min(cutoff(sin_t));
        if r_hi <= r_lo {
            return Ok(0.0);
        }
        // Width of w is about cos/(2k) + k sin; it is exponential in the
        // first part and falls like 1/Y^4 in the second. Cutting the power
        // tail at L moves phi only for r below about 1/L, which shifts P by
        // about (k sin)^3 / L^5.
        let mut half_width = 0.0f64;
        let mut narrowest = f64::INFINITY;
        let mut widest = 0.0f64;
        for k in kappas {
            let exp_part = cos_t * (1.0 / drop).ln() / (2.0 * k);
            let power_part = ((sin_t * k).powi(3) / drop).powf(0.2);
            half_width = half_width.max(exp_part + power_part + 1.0 / k);
            let spread = 0.5 * cos_t / k + sin_t * k;
            narrowest = narrowest.min(spread);
            widest = widest.max(spread);
        }
        let panel = 0.5 * narrowest;
        let rules: Vec<FourierRule> = states
            .iter()
            .map(|state| {
                FourierRule::even(
                    |y| match OpticalFrame::new(y, t).and_then(|f| optical_tomogram(state, &f)) {
                        Ok(m) => m,
                        Err(e) => fail(e),
                    },
                    half_width,
                    panel,
                )
            })
            .collect();
        let axis = Axis::new(r_lo, r_hi).with_panel_width(4.0 * PI / widest);
        let est = integrate(
            |r: f64| r * rules[0].transform(r).re * rules[1].transform(r).re,
            &axis,
            &spec.scaled(1e-2),
        )?;
        Ok(est.value)
    };

    let annulus = |r_lo: f64, r_hi: f64| -> Result<Estimate<f64>> {
        let t_max = if r_lo == 0.0 {
            FRAC_PI_2
        } else {
            (40.0 / (k_sum * r_lo)).min(1.0).asin()
        };
        let mut breaks = Vec::new();
        let mut b = 0.5 * t_max;
        let floor = 0.1 / (k_max * r_hi);
        while b > floor {
            breaks.push(b);
            b *= 0.5;
        }
        let axis = Axis::new(0.0, t_max).with_breaks(breaks);
        let est = integrate(
            |t: f64| match radial(t, r_lo, r_hi) {
                Ok(v) => v,
                Err(e) => fail(e),
            },
            &axis,
            &spec.scaled(PI / 2.0 * 0.25),
        )?;
        Ok(est.map(|v| 2.0 / PI * v))
    };

    let mut r_hi = 8.0 * k_sum;
    let first = annulus(0.0, r_hi)?;
    let mut value = first.value;
    let mut error = first.error;
    let mut evaluations = first.evaluations;
    let mut tail = 0.0;
    while r_hi < MAX_RADIUS {
        let r_lo = r_hi;
        r_hi = (2.0 * r_hi).min(MAX_RADIUS);
        let ring = annulus(r_lo, r_hi)?;
        value += ring.value;
        error += ring.error;
        evaluations += ring.evaluations;
        // Rings shrink like 1/R^3: fit c/r^4 to this one and extrapolate.
        let c = 3.0 * ring.value / (r_lo.powi(-3) - r_hi.powi(-3));
        tail = c / (3.0 * r_hi.powi(3));
        if ring.value.abs() < spec.abs_tol {
            break;
        }
    }
    if let Some(e) = failed.into_inner().unwrap() {
        return Err(e);
    }
    Ok(Estimate {
        value: value + tail,
        error: error + 0.5 * tail.abs(),
        evaluations,
    })
}

/// Integrand of the four-fold tomogram overlap for `kappa1 = kappa2 = chi`,
/// written with explicit `erfc` factors:
/// `chi^2/(16 mu^2) |A(X)|^2 |A(Y)|^2 exp(i(X+Y)) / 2pi` with
/// `A(X) = exp(-chi X/mu) erfc((-X + i chi nu)/r) + exp(chi X/mu) erfc((X + i chi nu)/r)`
/// and `r = sqrt(2 i mu nu)`.
///
/// `A` is the closed form for `mu > 0`; negative `mu` goes through
/// `M(X, mu, nu) = M(-X, -mu, -nu)` and the evenness of `A`. The raw
/// exponentials overflow for `|X| chi / |mu|` past about 700, so this is only
/// a pointwise check.
pub fn overlap_integrand_explicit(chi: f64, x: f64, y: f64, mu: f64, nu: f64) -> Result<Complex64> {
    let chi = positive("chi", chi)?;
    if mu == 0.0 || nu == 0.0 {
        return Err(Error::InvalidParameter {
            name: "mu nu",
            value: mu * nu,
            reason: "explicit form needs mu and nu both nonzero",
        });
    }
    let (mu, nu) = if mu < 0.0 { (-mu, -nu) } else { (mu, nu) };
    let r = (Complex64::new(0.0, 2.0 * mu * nu)).sqrt();
    let a = |x: f64| -> Result<Complex64> {
        let shift = Complex64::new(0.0, chi * nu);
        let left = special::erfc((shift - x) / r)?;
        let right = special::erfc((shift + x) / r)?;
        Ok((-chi * x / mu).exp() * left + (chi * x / mu).exp() * right)
    };
    let weight = chi * chi / (16.0 * mu * mu) * a(x)?.norm_sqr() * a(y)?.norm_sqr() / (2.0 * PI);
    let value = Complex64::from_polar(weight, x + y);
    if value.re.is_finite() && value.im.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite("explicit overlap integrand"))
    }
}

/// `M_1(X, mu, nu) M_2(Y, -mu, -nu) exp(i(X+Y)) / 2pi` from the closed-form
/// tomograms.
pub fn overlap_integrand(s: &ShakeScenario, x: f64, y: f64, mu: f64, nu: f64) -> Result<Complex64> {
    let m1 = crate::tomography::tomogram_single_closed(&s.initial(), &SymplecticFrame::new(x, mu, nu)?)?;
    let m2 = crate::tomography::tomogram_single_closed(&s.final_state(), &SymplecticFrame::new(y, -mu, -nu)?)?;
    Ok(Complex64::from_polar(m1 * m2 / (2.0 * PI), x + y))
}
