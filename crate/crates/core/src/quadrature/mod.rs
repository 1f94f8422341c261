//! Adaptive Gauss-Kronrod integration.
//!
//! All integrals in the crate go through [`integrate`]: an [`Axis`] describes
//! the domain (finite or infinite ends, interior breakpoints where the
//! integrand has kinks, and an optional maximum panel width for oscillatory
//! integrands), and a [`QuadratureSpec`] fixes tolerances. Infinite ends are
//! mapped onto (0, 1] with `x = b + s (1 - t) / t`.
//!
//! Refinement works in batches: each round bisects the panels carrying the
//! largest errors until the rest fit in half the tolerance, and evaluates
//! the new panels together (in parallel with the `parallel` feature).
//! Panels are kept in domain order and summed left to right, so results do
//! not depend on scheduling.

mod adaptive;
mod fourier;
mod kronrod;

use std::f64::consts::PI;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use thiserror::Error;

pub use fourier::FourierRule;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadratureError {
    #[error("no convergence after {subdivisions} panels: estimate {estimate}, error bound {error:e}")]
    NonConvergence {
        estimate: Complex64,
        error: f64,
        subdivisions: usize,
    },
    #[error("invalid interval [{lo}, {hi}]")]
    InvalidInterval { lo: f64, hi: f64 },
    #[error("integrand is not finite near x = {at}")]
    NonFinite { at: f64 },
    #[error("invalid quadrature spec: {0}")]
    InvalidSpec(&'static str),
}

/// Tolerances and truncation policy for an integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Upper bound on the number of panels.
    pub max_subdivisions: usize,
    /// Decay rate used to truncate half-line integrals, in inverse units of
    /// the integration variable.
    pub tail_decay_rate: f64,
    /// Shortest expected oscillation period; panels are capped at half of it.
    pub oscillation_scale: Option<f64>,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            abs_tol: 1e-10,
            rel_tol: 1e-9,
            max_subdivisions: 200_000,
            tail_decay_rate: 1.0,
            oscillation_scale: None,
        }
    }
}

impl QuadratureSpec {
    pub fn with_tolerances(abs_tol: f64, rel_tol: f64) -> Self {
        QuadratureSpec {
            abs_tol,
            rel_tol,
            ..Default::default()
        }
    }

    /// Looser tolerances for figure data.
    pub fn relaxed() -> Self {
        Self::with_tolerances(1e-7, 1e-7)
    }

    /// Same policy with both tolerances multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        QuadratureSpec {
            abs_tol: self.abs_tol * factor,
            rel_tol: self.rel_tol * factor,
            ..*self
        }
    }

    pub fn with_oscillation_scale(mut self, period: f64) -> Self {
        self.oscillation_scale = Some(period);
        self
    }

    pub fn with_tail_decay_rate(mut self, rate: f64) -> Self {
        self.tail_decay_rate = rate;
        self
    }

    pub fn validate(&self) -> Result<(), QuadratureError> {
        if !(self.abs_tol > 0.0) || !(self.rel_tol > 0.0) {
            return Err(QuadratureError::InvalidSpec("tolerances must be positive"));
        }
        if self.max_subdivisions == 0 {
            return Err(QuadratureError::InvalidSpec("max_subdivisions must be positive"));
        }
        if !(self.tail_decay_rate > 0.0) {
            return Err(QuadratureError::InvalidSpec("tail_decay_rate must be positive"));
        }
        if matches!(self.oscillation_scale, Some(p) if !(p > 0.0)) {
            return Err(QuadratureError::InvalidSpec("oscillation_scale must be positive"));
        }
        Ok(())
    }

    /// Panel width cap implied by `oscillation_scale`.
    fn panel_cap(&self) -> Option<f64> {
        self.oscillation_scale.map(|p| 0.5 * p)
    }
}

/// Result of a quadrature together with its error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate<T> {
    pub value: T,
    pub error: f64,
    pub evaluations: usize,
}

impl<T> Estimate<T> {
    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Estimate<U> {
        Estimate {
            value: f(self.value),
            error: self.error,
            evaluations: self.evaluations,
        }
    }
}

/// Values the integrator can accumulate.
pub trait QuadValue: Copy + Send + Sync + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    const ZERO: Self;
    fn magnitude(&self) -> f64;
    fn is_finite(&self) -> bool;
    fn as_complex(&self) -> Complex64;
}

impl QuadValue for f64 {
    const ZERO: Self = 0.0;
    fn magnitude(&self) -> f64 {
        self.abs()
    }
    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }
    fn as_complex(&self) -> Complex64 {
        Complex64::new(*self, 0.0)
    }
}

impl QuadValue for Complex64 {
    const ZERO: Self = Complex64::new(0.0, 0.0);
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn is_finite(&self) -> bool {
        Complex64::is_finite(*self)
    }
    fn as_complex(&self) -> Complex64 {
        *self
    }
}

/// A value carried along with the error of the inner integral that produced
/// it. Only `value` drives adaptivity; `inner_error` is integrated alongside
/// so a nested integral reports `outer error + integral of inner errors`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Tracked<T> {
    value: T,
    inner_error: f64,
}

impl<T: QuadValue> Add for Tracked<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Tracked {
            value: self.value + rhs.value,
            inner_error: self.inner_error + rhs.inner_error,
        }
    }
}

impl<T: QuadValue> Sub for Tracked<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Tracked {
            value: self.value - rhs.value,
            inner_error: self.inner_error + rhs.inner_error,
        }
    }
}

impl<T: QuadValue> Mul<f64> for Tracked<T> {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        Tracked {
            value: self.value * rhs,
            inner_error: self.inner_error * rhs.abs(),
        }
    }
}

impl<T: QuadValue> QuadValue for Tracked<T> {
    const ZERO: Self = Tracked {
        value: T::ZERO,
        inner_error: 0.0,
    };
    fn magnitude(&self) -> f64 {
        self.value.magnitude()
    }
    fn is_finite(&self) -> bool {
        self.value.is_finite() && self.inner_error.is_finite()
    }
    fn as_complex(&self) -> Complex64 {
        self.value.as_complex()
    }
}

/// Integration domain along one variable.
#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    lo: f64,
    hi: f64,
    breaks: Vec<f64>,
    panel_width: Option<f64>,
    tail_scale: f64,
}

impl Axis {
    /// `lo` and `hi` may be infinite.
    pub fn new(lo: f64, hi: f64) -> Self {
        Axis {
            lo,
            hi,
            breaks: Vec::new(),
            panel_width: None,
            tail_scale: 1.0,
        }
    }

    pub fn real_line() -> Self {
        Self::new(f64::NEG_INFINITY, f64::INFINITY)
    }

    /// Interior points where the integrand is not smooth. Points outside the
    /// domain are ignored.
    pub fn with_breaks(mut self, points: impl IntoIterator<Item = f64>) -> Self {
        self.breaks.extend(points);
        self
    }

    /// Split finite stretches into panels no wider than `width`.
    pub fn with_panel_width(mut self, width: f64) -> Self {
        self.panel_width = Some(width);
        self
    }

    /// Length scale of the map used on infinite ends.
    pub fn with_tail_scale(mut self, scale: f64) -> Self {
        self.tail_scale = scale;
        self
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    fn segments(&self, spec: &QuadratureSpec) -> Result<Vec<adaptive::Segment>, QuadratureError> {
        use adaptive::{Map, Segment};

        if self.lo.is_nan() || self.hi.is_nan() || !(self.lo < self.hi) {
            return Err(QuadratureError::InvalidInterval {
                lo: self.lo,
                hi: self.hi,
            });
        }
        let mut points: Vec<f64> = self
            .breaks
            .iter()
            .copied()
            .filter(|p| p.is_finite() && *p > self.lo && *p < self.hi)
            .collect();
        if self.lo.is_finite() {
            points.push(self.lo);
        }
        if self.hi.is_finite() {
            points.push(self.hi);
        }
        if points.is_empty() {
            points.push(0.0);
        }
        points.sort_by(f64::total_cmp);
        points.dedup();

        let width = match (self.panel_width, spec.panel_cap()) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };

        let mut segments = Vec::new();
        let scale = self.tail_scale;
        if self.lo == f64::NEG_INFINITY {
            segments.push(Segment::new(0.0, 1.0, Map::Lower { at: points[0], scale }));
        }
        for pair in points.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            let pieces = match width {
                Some(w) if w > 0.0 => ((b - a) / w).ceil().clamp(1.0, 1e7) as usize,
                _ => 1,
            };
            for k in 0..pieces {
                let lo = a + (b - a) * k as f64 / pieces as f64;
                let hi = if k + 1 == pieces {
                    b
                } else {
                    a + (b - a) * (k + 1) as f64 / pieces as f64
                };
                segments.push(Segment::new(lo, hi, Map::Identity));
            }
        }
        if self.hi == f64::INFINITY {
            let at = *points.last().unwrap();
            segments.push(Segment::new(0.0, 1.0, Map::Upper { at, scale }));
        }
        Ok(segments)
    }
}

/// Integrate `f` over `axis` to the tolerances in `spec`.
pub fn integrate<T, F>(f: F, axis: &Axis, spec: &QuadratureSpec) -> Result<Estimate<T>, QuadratureError>
where
    T: QuadValue,
    F: Fn(f64) -> T + Sync,
{
    spec.validate()?;
    let segments = axis.segments(spec)?;
    adaptive::integrate_segments(&f, segments, spec)
}

/// Integral over `[lo, hi]`.
pub fn integrate_line<T, F>(f: F, lo: f64, hi: f64, spec: &QuadratureSpec) -> Result<Estimate<T>, QuadratureError>
where
    T: QuadValue,
    F: Fn(f64) -> T + Sync,
{
    if !(lo.is_finite() && hi.is_finite()) {
        return Err(QuadratureError::InvalidInterval { lo, hi });
    }
    integrate(f, &Axis::new(lo, hi), spec)
}

/// Integral over `[0, inf)` of a function bounded by `K exp(-decay x)`.
///
/// `K` is estimated from samples on the first few decay lengths and the
/// domain truncated where the tail bound `K exp(-decay x) / decay` drops
/// below a tenth of `abs_tol`.
pub fn integrate_halfline_decaying<T, F>(
    f: F,
    decay: f64,
    spec: &QuadratureSpec,
) -> Result<Estimate<T>, QuadratureError>
where
    T: QuadValue,
    F: Fn(f64) -> T + Sync,
{
    if !(decay > 0.0 && decay.is_finite()) {
        return Err(QuadratureError::InvalidSpec("decay must be positive"));
    }
    let cutoff = halfline_cutoff(&f, decay, spec.abs_tol);
    integrate(f, &Axis::new(0.0, cutoff), spec)
}

pub(crate) fn halfline_cutoff<T: QuadValue>(f: &impl Fn(f64) -> T, decay: f64, abs_tol: f64) -> f64 {
    let envelope = (0..=8)
        .map(|j| {
            let x = 0.5 * j as f64 / decay;
            f(x).magnitude() * (decay * x).exp()
        })
        .fold(0.0f64, f64::max)
        .max(f64::MIN_POSITIVE);
    let cutoff = (10.0 * envelope / (abs_tol * decay)).ln() / decay;
    cutoff.max(1.0 / decay)
}

/// Iterated integral `int_outer dx int_inner dy f(x, y)`.
///
/// The inner integrals run with tolerances a hundred times tighter; the
/// reported error adds the outer error and the integral of inner errors.
pub fn integrate_plane<T, F>(
    f: F,
    outer: &Axis,
    inner: &Axis,
    spec: &QuadratureSpec,
) -> Result<Estimate<T>, QuadratureError>
where
    T: QuadValue,
    F: Fn(f64, f64) -> T + Sync,
{
    integrate_plane_with(f, outer, |_| inner.clone(), spec)
}

/// Like [`integrate_plane`], with the inner domain chosen per outer point.
pub fn integrate_plane_with<T, F, G>(
    f: F,
    outer: &Axis,
    inner: G,
    spec: &QuadratureSpec,
) -> Result<Estimate<T>, QuadratureError>
where
    T: QuadValue,
    F: Fn(f64, f64) -> T + Sync,
    G: Fn(f64) -> Axis + Sync,
{
    use std::sync::atomic::{AtomicUsize, Ordering};
    use std::sync::Mutex;

    spec.validate()?;
    let inner_spec = spec.scaled(1e-2);
    let evaluations = AtomicUsize::new(0);
    let failure: Mutex<Option<QuadratureError>> = Mutex::new(None);

    let outer_est = integrate(
        |x| {
            let axis = inner(x);
            match integrate(|y| f(x, y), &axis, &inner_spec) {
                Ok(est) => {
                    evaluations.fetch_add(est.evaluations, Ordering::Relaxed);
                    Tracked {
                        value: est.value,
                        inner_error: est.error,
                    }
                }
                Err(err) => {
                    failure.lock().unwrap().get_or_insert(err);
                    Tracked {
                        value: T::ZERO,
                        inner_error: f64::NAN,
                    }
                }
            }
        },
        outer,
        spec,
    );
    if let Some(err) = failure.into_inner().unwrap() {
        return Err(err);
    }
    let outer_est = outer_est?;
    Ok(Estimate {
        value: outer_est.value.value,
        error: outer_est.error + outer_est.value.inner_error.abs(),
        evaluations: evaluations.into_inner(),
    })
}

/// Breakpoints on `[lo, hi]` such that an integrand whose phase advances at
/// `rate(x)` radians per unit turns by at most `pi` across each panel.
///
/// Panels never exceed `max_width`.
pub fn oscillation_breaks(lo: f64, hi: f64, max_width: f64, rate: impl Fn(f64) -> f64) -> Vec<f64> {
    let mut out = vec![lo];
    let mut x = lo;
    while x < hi {
        // Look at both ends of the tentative step so chirps are not overshot.
        let mut step = max_width;
        for _ in 0..2 {
            let r = rate(x).abs().max(rate((x + step).min(hi)).abs());
            step = max_width.min(PI / r.max(f64::MIN_POSITIVE));
        }
        x = (x + step).min(hi);
        if hi - x < 1e-9 * step {
            x = hi;
        }
        out.push(x);
    }
    out
}
