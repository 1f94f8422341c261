//! Bound states of one well `V = -chi delta(x)` and of the symmetric pair
//! `V = -chi [delta(x - a) + delta(x + a)]`.

use std::f64::consts::{FRAC_2_PI, PI};

use num_complex::Complex64;

use crate::error::{positive, Error, Result};

/// Real wave function with known non-smooth points and exponential tails,
/// enough for the numerical transforms to place breakpoints and truncate.
pub trait WaveFunction: Sync {
    fn psi(&self, x: f64) -> f64;

    /// Points where `psi` has a kink.
    fn kinks(&self) -> Vec<f64>;

    /// `|psi(x)|` decays like `exp(-decay_rate * |x|)` outside `[-extent, extent]`.
    fn decay_rate(&self) -> f64;

    fn extent(&self) -> f64 {
        0.0
    }

    /// Half-width outside which `|psi|` stays below `tol` times its peak,
    /// with a margin.
    fn support(&self, tol: f64) -> f64 {
        self.extent() + (1.0 / tol).ln() / self.decay_rate() + 2.0 / self.decay_rate()
    }
}

/// Bound state `psi(y) = sqrt(chi) exp(-chi |y|)` of a single well.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingleDeltaState {
    chi: f64,
}

impl SingleDeltaState {
    pub fn new(chi: f64) -> Result<Self> {
        Ok(SingleDeltaState {
            chi: positive("chi", chi)?,
        })
    }

    pub fn chi(&self) -> f64 {
        self.chi
    }

    pub fn energy(&self) -> f64 {
        -0.5 * self.chi * self.chi
    }

    pub fn psi(&self, y: f64) -> f64 {
        self.chi.sqrt() * (-self.chi * y.abs()).exp()
    }

    /// Momentum-space wave function (unitary transform), `sqrt(2/pi) chi^{3/2} / (chi^2 + p^2)`.
    pub fn psi_momentum(&self, p: f64) -> f64 {
        FRAC_2_PI.sqrt() * self.chi.powf(1.5) / (self.chi * self.chi + p * p)
    }

    /// Exact `<x^2>`.
    pub fn mean_x2(&self) -> f64 {
        0.5 / (self.chi * self.chi)
    }

    /// Exact `<p^2>`.
    pub fn mean_p2(&self) -> f64 {
        self.chi * self.chi
    }
}

impl WaveFunction for SingleDeltaState {
    fn psi(&self, x: f64) -> f64 {
        SingleDeltaState::psi(self, x)
    }

    fn kinks(&self) -> Vec<f64> {
        vec![0.0]
    }

    fn decay_rate(&self) -> f64 {
        self.chi
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Symmetric,
    Antisymmetric,
}

impl Parity {
    pub fn sign(self) -> f64 {
        match self {
            Parity::Symmetric => 1.0,
            Parity::Antisymmetric => -1.0,
        }
    }
}

impl std::fmt::Display for Parity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Parity::Symmetric => "symmetric",
            Parity::Antisymmetric => "antisymmetric",
        })
    }
}

/// `chi - beta / (1 +- exp(-2 beta a))`: zero at a bound-state decay constant.
pub fn beta_residual(chi: f64, a: f64, parity: Parity, beta: f64) -> f64 {
    chi - beta / (1.0 + parity.sign() * (-2.0 * beta * a).exp())
}

/// Decay constant `beta` of the double-well state with the given parity.
///
/// The symmetric root lies in `(chi, 2 chi]` and always exists. The
/// antisymmetric root exists only for `chi > 1 / (2a)`; otherwise `None`.
pub fn solve_beta(chi: f64, a: f64, parity: Parity) -> Result<Option<f64>> {
    let chi = positive("chi", chi)?;
    let a = positive("a", a)?;
    match parity {
        Parity::Symmetric => {
            // beta - chi (1 + exp(-2 beta a)), increasing in beta.
            let g = |beta: f64| beta - chi * (1.0 + (-2.0 * beta * a).exp());
            bracketed_root(g, chi, 2.0 * chi, "symmetric decay constant").map(Some)
        }
        Parity::Antisymmetric => {
            if 2.0 * a * chi <= 1.0 {
                return Ok(None);
            }
            // beta - chi (1 - exp(-2 beta a)): zero at 0, dips below zero,
            // and crosses once more at the root, which lies below chi.
            let h = |beta: f64| beta + chi * (-2.0 * beta * a).exp_m1();
            let mut lo = 0.5 * chi;
            let mut steps = 0;
            while h(lo) >= 0.0 {
                lo *= 0.5;
                steps += 1;
                if steps > 2000 || lo == 0.0 {
                    return Err(Error::Bracketing("antisymmetric decay constant"));
                }
            }
            bracketed_root(h, lo, chi, "antisymmetric decay constant").map(Some)
        }
    }
}

/// Root of an increasing function on `[lo, hi]` with `f(lo) <= 0 <= f(hi)`.
///
/// False-position steps (Illinois variant) with a bisection fallback.
fn bracketed_root(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, what: &'static str) -> Result<f64> {
    let mut f_lo = f(lo);
    let mut f_hi = f(hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if !(f_lo < 0.0 && f_hi > 0.0) {
        return Err(Error::Bracketing(what));
    }
    let mut side = 0i8;
    for _ in 0..400 {
        let mut x = (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
        if !(x > lo && x < hi) {
            x = 0.5 * (lo + hi);
        }
        let fx = f(x);
        if fx == 0.0 {
            return Ok(x);
        }
        if fx < 0.0 {
            lo = x;
            f_lo = fx;
            if side == -1 {
                f_hi *= 0.5;
            }
            side = -1;
        } else {
            hi = x;
            f_hi = fx;
            if side == 1 {
                f_lo *= 0.5;
            }
            side = 1;
        }
        if hi - lo <= 4.0 * f64::EPSILON * hi.abs() {
            break;
        }
    }
    if hi - lo > 1e-10 * hi.abs() {
        return Err(Error::Bracketing(what));
    }
    // Return whichever end has the smaller residual.
    Ok(if f(lo).abs() <= f(hi).abs() { lo } else { hi })
}

/// Normalization `C` of `C (exp(-beta|x - a|) +- exp(-beta|x + a|))`.
///
/// `1/C^2 = 2/beta +- 2 exp(-2 beta a) (2a + 1/beta)`.
pub fn normalization_constant(a: f64, parity: Parity, beta: f64) -> Result<f64> {
    let a = positive("a", a)?;
    let beta = positive("beta", beta)?;
    let overlap = (-2.0 * beta * a).exp() * (2.0 * a + 1.0 / beta);
    let inverse_square = match parity {
        Parity::Symmetric => 2.0 / beta + 2.0 * overlap,
        // 2/beta (1 - exp(-2 beta a)) - 4a exp(-2 beta a)
        Parity::Antisymmetric => -2.0 / beta * (-2.0 * beta * a).exp_m1() - 4.0 * a * (-2.0 * beta * a).exp(),
    };
    positive("1/C^2", inverse_square).map(|v| v.sqrt().recip())
}

/// Bound state `C (exp(-beta|x - a|) +- exp(-beta|x + a|))` of two wells.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DoubleDeltaState {
    chi: f64,
    a: f64,
    parity: Parity,
    beta: f64,
    norm_c: f64,
}

impl DoubleDeltaState {
    /// Normalized state, or `None` when the antisymmetric state is not bound.
    pub fn new(chi: f64, a: f64, parity: Parity) -> Result<Option<Self>> {
        let Some(beta) = solve_beta(chi, a, parity)? else {
            return Ok(None);
        };
        let norm_c = normalization_constant(a, parity, beta)?;
        Ok(Some(DoubleDeltaState {
            chi,
            a,
            parity,
            beta,
            norm_c,
        }))
    }

    /// Unnormalized `C = 1` state used for plotting.
    ///
    /// Uses the bound-state `beta` when it exists and falls back to
    /// `beta = chi` otherwise (the antisymmetric state at `chi <= 1/(2a)`).
    pub fn figure_convention(chi: f64, a: f64, parity: Parity) -> Result<Self> {
        let beta = solve_beta(chi, a, parity)?.unwrap_or(chi);
        Self::from_parts(chi, a, parity, beta, 1.0)
    }

    /// State with explicitly given `beta` and `C`; only positivity is checked.
    pub fn from_parts(chi: f64, a: f64, parity: Parity, beta: f64, norm_c: f64) -> Result<Self> {
        Ok(DoubleDeltaState {
            chi: positive("chi", chi)?,
            a: positive("a", a)?,
            parity,
            beta: positive("beta", beta)?,
            norm_c: positive("C", norm_c)?,
        })
    }

    /// Same state with the normalization replaced by the true `C`.
    pub fn normalized(&self) -> Result<Self> {
        Ok(DoubleDeltaState {
            norm_c: normalization_constant(self.a, self.parity, self.beta)?,
            ..*self
        })
    }

    pub fn chi(&self) -> f64 {
        self.chi
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn norm_c(&self) -> f64 {
        self.norm_c
    }

    pub fn energy(&self) -> f64 {
        -0.5 * self.beta * self.beta
    }

    /// `int |psi|^2 dx` in closed form; 1 for normalized states.
    pub fn norm_squared(&self) -> f64 {
        let c = normalization_constant(self.a, self.parity, self.beta).unwrap_or(f64::NAN);
        (self.norm_c / c).powi(2)
    }

    pub fn psi(&self, x: f64) -> f64 {
        let left = (-self.beta * (x - self.a).abs()).exp();
        let right = (-self.beta * (x + self.a).abs()).exp();
        self.norm_c * (left + self.parity.sign() * right)
    }

    /// Unitary Fourier transform of [`psi`](Self::psi).
    pub fn psi_momentum(&self, p: f64) -> Complex64 {
        let lorentz = (2.0 / PI).sqrt() * self.beta / (self.beta * self.beta + p * p);
        let (s, c) = (p * self.a).sin_cos();
        self.norm_c
            * lorentz
            * match self.parity {
                Parity::Symmetric => Complex64::new(2.0 * c, 0.0),
                Parity::Antisymmetric => Complex64::new(0.0, -2.0 * s),
            }
    }
}

impl WaveFunction for DoubleDeltaState {
    fn psi(&self, x: f64) -> f64 {
        DoubleDeltaState::psi(self, x)
    }

    fn kinks(&self) -> Vec<f64> {
        vec![-self.a, self.a]
    }

    fn decay_rate(&self) -> f64 {
        self.beta
    }

    fn extent(&self) -> f64 {
        self.a
    }

    fn support(&self, tol: f64) -> f64 {
        let peak = 2.0 * self.norm_c;
        self.a + (peak.max(1.0) / tol).ln() / self.beta + 2.0 / self.beta
    }
}

/// Wave function given as a closure, for the numerical transforms.
pub struct CustomWave<F> {
    f: F,
    kinks: Vec<f64>,
    decay_rate: f64,
    extent: f64,
}

impl<F: Fn(f64) -> f64 + Sync> CustomWave<F> {
    pub fn new(f: F, kinks: Vec<f64>, decay_rate: f64, extent: f64) -> Self {
        CustomWave {
            f,
            kinks,
            decay_rate,
            extent,
        }
    }
}

impl<F: Fn(f64) -> f64 + Sync> WaveFunction for CustomWave<F> {
    fn psi(&self, x: f64) -> f64 {
        (self.f)(x)
    }

    fn kinks(&self) -> Vec<f64> {
        self.kinks.clone()
    }

    fn decay_rate(&self) -> f64 {
        self.decay_rate
    }

    fn extent(&self) -> f64 {
        self.extent
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{integrate, Axis, QuadratureSpec};
    use proptest::prelude::*;

    fn norm_by_quadrature(state: &impl WaveFunction) -> f64 {
        let axis = Axis::real_line().with_breaks(state.kinks());
        integrate(|x| state.psi(x).powi(2), &axis, &QuadratureSpec::default())
            .unwrap()
            .value
    }

    /// Plain bisection to full precision, independent of the library root finder.
    fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if f(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn single_well_values() {
        assert_eq!(SingleDeltaState::new(1.0).unwrap().psi(0.0), 1.0);
        assert_eq!(SingleDeltaState::new(4.0).unwrap().psi(0.0), 2.0);
        let s = SingleDeltaState::new(0.7).unwrap();
        assert!((norm_by_quadrature(&s) - 1.0).abs() < 1e-10);
        assert!(SingleDeltaState::new(0.0).is_err());
        assert!(SingleDeltaState::new(-1.0).is_err());
        assert!(SingleDeltaState::new(f64::NAN).is_err());
    }

    #[test]
    fn momentum_wave_function() {
        let s = SingleDeltaState::new(1.0).unwrap();
        assert!((s.psi_momentum(0.0) - 0.797_884_560_802_865_4).abs() < 1e-15);
        assert!(s.psi_momentum(1e8) < 1e-16);

        let s = SingleDeltaState::new(2.0).unwrap();
        let spec = QuadratureSpec::default();
        let p2 = integrate(|p| (p * s.psi_momentum(p)).powi(2), &Axis::real_line(), &spec).unwrap();
        assert!((p2.value - 4.0).abs() < 1e-9);

        // Unitary Fourier transform of psi, by quadrature.
        for &p in &[0.0, 0.3, 1.7, 5.0] {
            let axis = Axis::new(0.0, 60.0).with_panel_width(1.0);
            let ft = 2.0 * integrate(|x| s.psi(x) * (p * x).cos(), &axis, &spec).unwrap().value / (2.0 * PI).sqrt();
            assert!((ft - s.psi_momentum(p)).abs() < 1e-9, "p = {p}");
        }
    }

    #[test]
    fn derivative_jump_matches_well_strength() {
        let s = SingleDeltaState::new(1.3).unwrap();
        let h = 1e-6;
        let right = (s.psi(2.0 * h) - s.psi(h)) / h;
        let left = (s.psi(-h) - s.psi(-2.0 * h)) / h;
        let jump = right - left;
        assert!((jump + 2.0 * s.chi() * s.psi(0.0)).abs() < 1e-4);
    }

    #[test]
    fn symmetric_root_matches_bisection() {
        let beta = solve_beta(1.0, 0.5, Parity::Symmetric).unwrap().unwrap();
        let oracle = bisect(|b| b - 1.0 - (-b).exp(), 1.0, 2.0);
        assert!((beta - oracle).abs() < 1e-14);
        assert!((beta - 1.278_46).abs() < 1e-5);
        assert!(beta_residual(1.0, 0.5, Parity::Symmetric, beta).abs() < 1e-12);
    }

    #[test]
    fn antisymmetric_root_matches_bisection() {
        let beta = solve_beta(2.0, 0.5, Parity::Antisymmetric).unwrap().unwrap();
        let oracle = bisect(|b| b - 2.0 * (1.0 - (-b).exp()), 0.5, 2.0);
        assert!((beta - oracle).abs() < 1e-14);
        assert!((beta - 1.593_62).abs() < 1e-5);
        assert!(beta_residual(2.0, 0.5, Parity::Antisymmetric, beta).abs() < 1e-12);
    }

    #[test]
    fn antisymmetric_threshold() {
        assert_eq!(solve_beta(1.0, 0.5, Parity::Antisymmetric).unwrap(), None);
        assert_eq!(solve_beta(0.3, 0.5, Parity::Antisymmetric).unwrap(), None);
        assert!(DoubleDeltaState::new(1.0, 0.5, Parity::Antisymmetric)
            .unwrap()
            .is_none());
        // Just above threshold the root is small but found.
        let beta = solve_beta(1.0 + 1e-6, 0.5, Parity::Antisymmetric).unwrap().unwrap();
        assert!(beta > 0.0 && beta < 1e-5);
        assert!(beta_residual(1.0 + 1e-6, 0.5, Parity::Antisymmetric, beta).abs() < 1e-12);
    }

    #[test]
    fn beta_limits() {
        // Far apart: both roots approach chi.
        for parity in [Parity::Symmetric, Parity::Antisymmetric] {
            let beta = solve_beta(1.5, 40.0, parity).unwrap().unwrap();
            assert!((beta - 1.5).abs() < 1e-12);
        }
        // Merged wells: strength doubles.
        let beta = solve_beta(1.5, 1e-9, Parity::Symmetric).unwrap().unwrap();
        assert!((beta - 3.0).abs() < 1e-7);
    }

    #[test]
    fn normalization_constants() {
        let beta = solve_beta(1.0, 0.5, Parity::Symmetric).unwrap().unwrap();
        let c = normalization_constant(0.5, Parity::Symmetric, beta).unwrap();
        assert!((c - 0.625_375_205_088_992_9).abs() < 1e-14);
        let analytic = 2.0 * (1.0 / beta + (-beta).exp() * (1.0 + 1.0 / beta));
        assert!((c.powi(-2) - analytic).abs() < 1e-14);

        let beta = solve_beta(2.0, 0.5, Parity::Antisymmetric).unwrap().unwrap();
        let c = normalization_constant(0.5, Parity::Antisymmetric, beta).unwrap();
        assert!((c - 1.297_908_807_060_933_3).abs() < 1e-13);

        // Well separated: C -> sqrt(beta / 2).
        let beta = solve_beta(1.0, 50.0, Parity::Symmetric).unwrap().unwrap();
        let c = normalization_constant(50.0, Parity::Symmetric, beta).unwrap();
        assert!((c - (beta / 2.0).sqrt()).abs() < 1e-14);
    }

    #[test]
    fn double_well_norm_and_parity() {
        for parity in [Parity::Symmetric, Parity::Antisymmetric] {
            let s = DoubleDeltaState::new(2.0, 0.5, parity).unwrap().unwrap();
            assert!((norm_by_quadrature(&s) - 1.0).abs() < 1e-10, "{parity}");
            assert!((s.norm_squared() - 1.0).abs() < 1e-14);
        }
        let s = DoubleDeltaState::new(2.0, 0.5, Parity::Antisymmetric).unwrap().unwrap();
        assert_eq!(s.psi(0.0), 0.0);
        let s = DoubleDeltaState::new(1.0, 0.5, Parity::Symmetric).unwrap().unwrap();
        let want = 2.0 * s.norm_c() * (-s.beta() * 0.5).exp();
        assert!((s.psi(0.0) - want).abs() < 1e-15);
    }

    #[test]
    fn figure_convention_states() {
        let s = DoubleDeltaState::figure_convention(1.0, 0.5, Parity::Symmetric).unwrap();
        assert_eq!(s.norm_c(), 1.0);
        assert!((s.norm_squared() - 2.556_929_085_522_147_6).abs() < 1e-12);
        let s = DoubleDeltaState::figure_convention(1.0, 0.5, Parity::Antisymmetric).unwrap();
        assert_eq!(s.beta(), 1.0);
        let n = s.normalized().unwrap();
        assert!((norm_by_quadrature(&n) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn double_well_momentum_transform() {
        let spec = QuadratureSpec::default();
        for parity in [Parity::Symmetric, Parity::Antisymmetric] {
            let s = DoubleDeltaState::new(2.0, 0.5, parity).unwrap().unwrap();
            for &p in &[0.0, 0.8, 3.1] {
                let axis = Axis::new(-40.0, 40.0).with_breaks(s.kinks()).with_panel_width(1.0);
                let re = integrate(|x| s.psi(x) * (p * x).cos(), &axis, &spec).unwrap().value;
                let im = -integrate(|x| s.psi(x) * (p * x).sin(), &axis, &spec).unwrap().value;
                let ft = Complex64::new(re, im) / (2.0 * PI).sqrt();
                assert!((ft - s.psi_momentum(p)).norm() < 1e-9, "{parity} p = {p}");
            }
        }
    }

    proptest! {
        #[test]
        fn double_well_parity_is_exact(x in -10.0f64..10.0, chi in 1.1f64..5.0, a in 0.5f64..3.0) {
            let sym = DoubleDeltaState::new(chi, a, Parity::Symmetric).unwrap().unwrap();
            prop_assert_eq!(sym.psi(x), sym.psi(-x));
            let anti = DoubleDeltaState::new(chi, a, Parity::Antisymmetric).unwrap().unwrap();
            prop_assert_eq!(anti.psi(x), -anti.psi(-x));
        }

        #[test]
        fn roots_satisfy_their_equations(chi in 0.05f64..20.0, a in 0.01f64..10.0) {
            let beta = solve_beta(chi, a, Parity::Symmetric).unwrap().unwrap();
            prop_assert!(beta >= chi && beta <= 2.0 * chi);
            prop_assert!(beta_residual(chi, a, Parity::Symmetric, beta).abs() < 1e-12 * chi.max(1.0));
            match solve_beta(chi, a, Parity::Antisymmetric).unwrap() {
                Some(beta) => {
                    prop_assert!(2.0 * a * chi > 1.0);
                    prop_assert!(beta > 0.0 && beta <= chi);
                    prop_assert!(beta_residual(chi, a, Parity::Antisymmetric, beta).abs() < 1e-12 * chi.max(1.0));
                }
                None => prop_assert!(2.0 * a * chi <= 1.0),
            }
        }
    }
}
