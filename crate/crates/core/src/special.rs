//! Complex complementary error function.
//!
//! Everything is built on the Faddeeva function `w(z) = exp(-z^2) erfc(-iz)`:
//!
//! * `erfcx(z) = exp(z^2) erfc(z) = w(iz)`
//! * `erfc(z)  = exp(-z^2) w(iz)` for `Re z >= 0`, and `2 - erfc(-z)` otherwise.
//!
//! `w` is evaluated with the Laplace continued fraction far from the origin
//! and with an exponentially convergent sampling series (ACM TOMS Algorithm
//! 916) near it. Relative accuracy is a few ulp over the
//! plane, except close to zeros of the result.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quadrature::{self, Axis, Estimate, QuadratureSpec};

const FRAC_1_SQRT_PI: f64 = 0.564_189_583_547_756_286_948_079_451_56;

// Sampling step of the series, pi / sqrt(-ln(eps / 2)), and derived constants.
const A: f64 = 0.518_321_480_430_085_929_872;
const A2: f64 = 0.268_657_157_075_235_951_582;
const C: f64 = 0.329_973_702_884_629_072_537;

/// `exp(-a^2 n^2)` for the series terms.
fn series_weights() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| (1..=80).map(|n| (-A2 * (n * n) as f64).exp()).collect())
}

/// `exp(x^2)` with the square split so that the argument is exact.
fn exp_square(x: f64) -> f64 {
    let hi = f64::from_bits(x.to_bits() & 0xFFFF_FFFF_F800_0000);
    let lo = x - hi;
    (hi * hi).exp() * (lo * (2.0 * hi + lo)).exp()
}

/// `exp(-x^2)` with the same argument splitting.
fn exp_neg_square(x: f64) -> f64 {
    let hi = f64::from_bits(x.to_bits() & 0xFFFF_FFFF_F800_0000);
    let lo = x - hi;
    (-hi * hi).exp() * (-lo * (2.0 * hi + lo)).exp()
}

/// Laplace continued fraction for `erfcx(x)`, `x` large and positive.
fn erfcx_continued_fraction(x: f64) -> f64 {
    let mut tail = x;
    for k in (1..=40).rev() {
        tail = x + 0.5 * k as f64 / tail;
    }
    FRAC_1_SQRT_PI / tail
}

/// Scaled complementary error function of a real argument.
///
/// Returns `+inf` once `exp(x^2)` overflows (x below about -26.6).
pub fn erfcx_real(x: f64) -> f64 {
    if x.is_nan() {
        return x;
    }
    if x >= 26.0 {
        if x > 5e7 {
            return FRAC_1_SQRT_PI / x;
        }
        return erfcx_continued_fraction(x);
    }
    if x >= 0.0 {
        return exp_square(x) * libm::erfc(x);
    }
    if x < -26.7 {
        return f64::INFINITY;
    }
    2.0 * exp_square(x) - erfcx_real(-x)
}

fn sinc(x: f64, sin_x: f64) -> f64 {
    if x.abs() < 1e-4 {
        1.0 - x * x / 6.0
    } else {
        sin_x / x
    }
}

/// Faddeeva function `w(z) = exp(-z^2) erfc(-iz)`, unchecked.
///
/// In the lower half plane the result grows like `exp(y^2 - x^2)` and
/// may overflow to infinity; callers decide how to report that.
pub(crate) fn faddeeva_unchecked(z: Complex64) -> Complex64 {
    let x = z.re.abs();
    let y = z.im;
    let ya = y.abs();

    if z.re == 0.0 {
        return Complex64::new(erfcx_real(y), z.re);
    }

    let far = ya > 7.0 || (x > 6.0 && (ya > 0.1 || (x > 8.0 && ya > 1e-10) || x > 28.0));
    if far {
        let xs = if y < 0.0 { -z.re } else { z.re };
        let w_upper = if x + ya > 1e7 {
            // Two terms of the asymptotic series; avoids overflow in |z|^2.
            let zz = Complex64::new(xs, ya);
            Complex64::i() * FRAC_1_SQRT_PI / (zz - 0.5 / zz)
        } else {
            let rho = ((x / 6.3).powi(2) + (ya / 4.4).powi(2)).sqrt();
            let terms = (3.0 + 1442.0 / (26.0 * rho + 77.0)).ceil() as usize + 4;
            let (mut wr, mut wi) = (xs, ya);
            for k in (1..terms).rev() {
                let denom = 0.5 * k as f64 / (wr * wr + wi * wi);
                wr = xs - wr * denom;
                wi = ya + wi * denom;
            }
            let denom = FRAC_1_SQRT_PI / (wr * wr + wi * wi);
            Complex64::new(denom * wi, denom * wr)
        };
        if y < 0.0 {
            // w(z) = 2 exp(-z^2) - w(-z)
            let minus_z2 = Complex64::new((ya - xs) * (xs + ya), 2.0 * xs * y);
            return 2.0 * minus_z2.exp() - w_upper;
        }
        return w_upper;
    }

    // Sampling series. sum1 collects exp(-a^2 n^2 - x^2) / (a^2 n^2 + y^2),
    // sum23 the cosh(2anx) weighted terms and sum54 the sinh(2anx) weighted
    // ones (these are sum2 + sum3 and sum5 - sum4 of the original method).
    let expx2 = exp_neg_square(x);
    let (mut sum1, mut sum23, mut sum54) = (0.0, 0.0, 0.0);
    let n_max = ((x + 7.0) / A).ceil() as usize;
    if x < 5.0 {
        let weights = series_weights();
        let (sh1, ch1) = ((2.0 * A * x).sinh(), (2.0 * A * x).cosh());
        let (mut sh, mut ch) = (sh1, ch1);
        for n in 1..=n_max {
            let an = A * n as f64;
            let coef = weights[n - 1] * expx2 / (an * an + y * y);
            sum1 += coef;
            sum23 += 2.0 * coef * ch;
            sum54 += 2.0 * an * coef * sh;
            let next_sh = sh * ch1 + ch * sh1;
            ch = ch * ch1 + sh * sh1;
            sh = next_sh;
        }
    } else {
        for n in 1..=n_max {
            let an = A * n as f64;
            let denom = an * an + y * y;
            let d = an - x;
            let core = (-d * d).exp() / denom;
            let decay = (-4.0 * an * x).exp();
            sum1 += (-an * an - x * x).exp() / denom;
            sum23 += core * (1.0 + decay);
            sum54 += an * core * (-(-4.0 * an * x).exp_m1());
        }
    }

    let expx2_erfcxy = if y > -6.0 {
        expx2 * erfcx_real(y)
    } else {
        2.0 * (y * y - x * x).exp()
    };
    let xs = z.re;
    let sin_xy = (xs * y).sin();
    let (sin_2xy, cos_2xy) = (2.0 * xs * y).sin_cos();
    let coef1 = expx2_erfcxy - C * y * sum1;
    let coef2 = C * xs * expx2;
    let re = coef1 * cos_2xy + coef2 * sin_xy * sinc(xs * y, sin_xy) + 0.5 * C * y * sum23;
    let im = coef2 * sinc(2.0 * xs * y, sin_2xy) - coef1 * sin_2xy + 0.5 * C * sum54.copysign(xs);
    Complex64::new(re, im)
}

fn check_finite(function: &'static str, z: Complex64) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite(function))
    }
}

fn representable(function: &'static str, z: Complex64, value: Complex64) -> Result<Complex64> {
    if value.re.is_finite() && value.im.is_finite() {
        Ok(value)
    } else {
        Err(Error::Overflow {
            function,
            re: z.re,
            im: z.im,
        })
    }
}

/// Faddeeva function `w(z) = exp(-z^2) erfc(-iz)`.
pub fn faddeeva(z: Complex64) -> Result<Complex64> {
    check_finite("faddeeva", z)?;
    representable("faddeeva", z, faddeeva_unchecked(z))
}

/// Scaled complementary error function `erfcx(z) = exp(z^2) erfc(z)`.
///
/// Bounded by 1 in modulus on the closed right half plane. Far into the
/// left half plane it grows like `2 exp(z^2)` and reports
/// [`Error::Overflow`] once that is no longer representable.
pub fn erfcx(z: Complex64) -> Result<Complex64> {
    check_finite("erfcx", z)?;
    representable("erfcx", z, faddeeva_unchecked(Complex64::new(-z.im, z.re)))
}

/// Complementary error function of a complex argument.
///
/// Returns [`Error::Overflow`] when `|erfc(z)|` exceeds the `f64` range;
/// `erfcx` stays finite in that situation and is what the tomogram code
/// uses.
pub fn erfc(z: Complex64) -> Result<Complex64> {
    check_finite("erfc", z)?;
    if z.re < 0.0 {
        return erfc(-z).map(|e| 2.0 - e);
    }
    if z.im == 0.0 {
        return Ok(Complex64::new(libm::erfc(z.re), z.im));
    }
    let (x, y) = (z.re, z.im);
    let w = faddeeva_unchecked(Complex64::new(-y, x));
    let log_scale = (y - x) * (x + y);
    let phase = Complex64::from_polar(1.0, -2.0 * x * y);
    if log_scale + w.norm().ln() > 709.7 {
        return Err(Error::Overflow {
            function: "erfc",
            re: x,
            im: y,
        });
    }
    // Split the exponential so exp(-z^2) alone may exceed f64::MAX.
    let half = (0.5 * log_scale).exp();
    Ok(half * (half * (phase * w)))
}

/// Real complementary error function.
pub fn erfc_real(x: f64) -> f64 {
    libm::erfc(x)
}

/// Closed form of `int_0^inf erfc(a x) erfc(b x) dx`.
///
/// Written as `2 / (sqrt(pi) (a + b + sqrt(a^2 + b^2)))`, which equals
/// `(a + b - sqrt(a^2 + b^2)) / (a b sqrt(pi))` without the cancellation.
pub fn erfc_product_integral(a: f64, b: f64) -> Result<f64> {
    let a = crate::error::positive("a", a)?;
    let b = crate::error::positive("b", b)?;
    Ok(2.0 / (PI.sqrt() * (a + b + a.hypot(b))))
}

/// Quadrature evaluation of `int_0^inf erfc(a x) erfc(b x) dx`.
pub fn erfc_product_integral_quadrature(a: f64, b: f64, spec: &QuadratureSpec) -> Result<Estimate<f64>> {
    let a = crate::error::positive("a", a)?;
    let b = crate::error::positive("b", b)?;
    // erfc(t) < 1e-17 beyond t = 6.
    let cutoff = 6.0 / a.min(b);
    let axis = Axis::new(0.0, cutoff).with_panel_width(0.5 / a.max(b));
    Ok(quadrature::integrate(
        |x| libm::erfc(a * x) * libm::erfc(b * x),
        &axis,
        spec,
    )?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rel_err(got: Complex64, want: Complex64) -> f64 {
        (got - want).norm() / want.norm()
    }

    // 40-digit values from an arbitrary-precision reference (erfc, erfcx).
    const REFERENCE: &[(f64, f64, [f64; 2], [f64; 2])] = &[
        (
            0.3,
            0.7,
            [0.478_838_995_139_850_31, -0.830_910_976_368_351_62],
            [0.520_191_968_973_015_12, -0.377_687_819_618_546_64],
        ),
        (
            3.9,
            0.2,
            [-1.357_299_381_353_319_7e-9, -3.614_656_626_419_916_8e-8],
            [0.139_995_127_734_479_03, -0.006_771_037_817_080_326],
        ),
        (
            -2.5,
            1.5,
            [2.000_484_414_574_574_7, -0.003_403_500_308_727_940_5],
            [37.686_158_361_863_047, -102.515_348_726_129_62],
        ),
        (
            5.5,
            6.5,
            [-10_735.796_316_979_702, 1_132.198_854_028_710_9],
            [0.043_189_745_236_171_011, -0.050_340_415_002_617_358],
        ),
        (
            0.01,
            6.9,
            [-5.343_447_865_759_058e18, -3.889_735_696_729_110_2e19],
            [0.000_122_447_587_512_657_62, -0.082_653_726_175_736_821],
        ),
        (
            6.2,
            0.05,
            [1.473_838_966_097_538_7e-18, -1.069_790_349_991_449_4e-18],
            [0.089_852_612_041_127_215, -0.000_706_888_944_262_900_72],
        ),
        (
            10.0,
            -3.0,
            [-1.340_511_843_847_457_2e-41, -9.145_738_843_473_024_9e-42],
            [0.051_601_916_830_885_527, 0.015_341_309_830_777_658],
        ),
        (
            -4.0,
            -12.0,
            [1.720_838_247_769_185_1e54, 2.464_104_178_385_566_5e53],
            [-0.014_220_662_349_140_316, 0.042_393_495_032_666_248],
        ),
        (
            2.0,
            -2.0,
            [-0.151_310_866_398_069_02, 0.127_291_629_463_140_79],
            [0.147_952_759_512_015_82, 0.131_179_717_084_217_85],
        ),
        (
            7.5,
            0.3,
            [-5.228_510_989_932_899e-27, 2.990_467_809_533_722_8e-26],
            [0.074_459_525_694_132_661, -0.002_927_715_190_758_194_5],
        ),
        (
            15.0,
            15.0,
            [-0.000_910_969_119_024_882_87, 0.026_580_464_098_804_054],
            [0.018_827_145_325_136_757, -0.018_785_354_277_995_647],
        ),
        (
            -1.0,
            4.5,
            [17_462_633.312_147_699, 22_750_052.133_988_775],
            [-0.028_515_298_423_418_65, -0.121_849_399_560_048_1],
        ),
    ];

    #[test]
    fn matches_reference_values() {
        for &(re, im, e, x) in REFERENCE {
            let z = c(re, im);
            let got = erfc(z).unwrap();
            assert!(rel_err(got, c(e[0], e[1])) < 1e-12, "erfc({z}) = {got}");
            let got = erfcx(z).unwrap();
            assert!(rel_err(got, c(x[0], x[1])) < 1e-12, "erfcx({z}) = {got}");
        }
    }

    /// Maclaurin series of erf, summed until terms stop contributing.
    fn erfc_maclaurin(z: Complex64) -> Complex64 {
        let z2 = z * z;
        let mut term = z;
        let mut sum = z;
        for n in 1..200 {
            term = -term * z2 / n as f64;
            let contribution = term / (2 * n + 1) as f64;
            sum += contribution;
            if contribution.norm() < 1e-18 * sum.norm() {
                break;
            }
        }
        1.0 - 2.0 * FRAC_1_SQRT_PI * sum
    }

    #[test]
    fn small_arguments_match_maclaurin_series() {
        assert_eq!(erfc(c(0.0, 0.0)).unwrap(), c(1.0, 0.0));
        let one = erfc(c(1.0, 0.0)).unwrap();
        assert!((one.re - erfc_maclaurin(c(1.0, 0.0)).re).abs() < 1e-15);
        assert!((one.re - 0.157_299_207_050_285_13).abs() < 1e-16);
        for &(re, im) in &[(0.2, 0.1), (-0.5, 0.9), (1.1, -0.4), (0.0, 1.0), (0.7, 0.7)] {
            let z = c(re, im);
            assert!(rel_err(erfc(z).unwrap(), erfc_maclaurin(z)) < 1e-13, "{z}");
        }
    }

    #[test]
    fn erfcx_named_values() {
        assert_eq!(erfcx(c(0.0, 0.0)).unwrap(), c(1.0, 0.0));
        let ten = erfcx(c(10.0, 0.0)).unwrap();
        assert!((ten.re - 0.056_140_992_743_822_586).abs() < 1e-16);
        // Approaches the 1 / (x sqrt(pi)) asymptote from below.
        assert!(ten.re < 1.0 / (10.0 * PI.sqrt()));
        let i = erfcx(c(0.0, 1.0)).unwrap();
        assert!((i.re - (-1.0f64).exp()).abs() < 1e-16);
        assert!((i.im + 0.607_157_705_841_393_73).abs() < 1e-15);
        let big = erfcx_real(1e4) * 1e4 * PI.sqrt();
        assert!((big - 1.0).abs() < 1e-8);
    }

    #[test]
    fn overflow_is_reported() {
        assert!(matches!(erfc(c(-1.0, 30.0)), Err(Error::Overflow { .. })));
        assert!(matches!(erfcx(c(-30.0, 0.0)), Err(Error::Overflow { .. })));
        assert!(matches!(erfc(c(f64::NAN, 0.0)), Err(Error::NonFinite(_))));
        // Far right half plane underflows to zero instead.
        assert_eq!(erfc(c(40.0, 0.0)).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn real_erfcx_is_monotone_and_continuous_at_switches() {
        let mut prev = f64::INFINITY;
        for k in 0..4000 {
            let x = k as f64 * 0.01;
            let v = erfcx_real(x);
            assert!(v <= prev && v > 0.0, "x = {x}");
            prev = v;
        }
        // Continuous across the switch to the asymptotic branch.
        let edge = 26.0f64;
        let below = erfcx_real(edge - 1e-12);
        let above = erfcx_real(edge);
        assert!(((below - above) / above).abs() < 1e-13);
    }

    #[test]
    fn faddeeva_continuous_across_region_boundaries() {
        // The region tests switch algorithms on these lines.
        for &(x, y) in &[
            (6.0, 0.5),
            (8.0, 1e-10),
            (28.0, 1e-12),
            (3.0, 7.0),
            (5.0, 0.3),
            (5.0, -2.0),
        ] {
            let below = faddeeva(c(x - 1e-9, y - 1e-9)).unwrap();
            let above = faddeeva(c(x + 1e-9, y + 1e-9)).unwrap();
            assert!(rel_err(below, above) < 1e-8, "({x}, {y}): {below} vs {above}");
        }
    }

    #[test]
    fn erfc_product_integral_values() {
        let v = erfc_product_integral(1.0, 1.0).unwrap();
        assert!((v - (2.0 - 2f64.sqrt()) / PI.sqrt()).abs() < 1e-15);
        assert!((v - 0.330_495).abs() < 1e-6);
        let spec = QuadratureSpec::default();
        let q = erfc_product_integral_quadrature(0.5, 2.0, &spec).unwrap();
        assert!((q.value - erfc_product_integral(0.5, 2.0).unwrap()).abs() < 1e-9);
        // b -> infinity sends the integral to zero.
        let q = erfc_product_integral_quadrature(1.0, 1e6, &spec).unwrap();
        assert!(q.value.abs() < 1e-6);
        assert!(erfc_product_integral(0.0, 1.0).is_err());
        assert!(erfc_product_integral(1.0, -2.0).is_err());
    }

    proptest! {
        #[test]
        fn parity_identity(re in -20.0f64..20.0, im in -20.0f64..20.0) {
            let z = c(re, im);
            prop_assume!(z.norm() <= 20.0);
            let a = erfc(z).unwrap();
            let b = erfc(-z).unwrap();
            let scale = 2f64.max(a.norm()).max(b.norm());
            prop_assert!((a + b - 2.0).norm() <= 1e-12 * scale);
        }

        #[test]
        fn conjugate_symmetry(re in -20.0f64..20.0, im in -20.0f64..20.0) {
            let z = c(re, im);
            prop_assume!(z.norm() <= 20.0);
            let a = erfc(z.conj()).unwrap();
            let b = erfc(z).unwrap().conj();
            prop_assert!((a - b).norm() <= 1e-13 * a.norm().max(1e-300));
        }

        #[test]
        fn erfcx_consistent_with_erfc(re in -5.0f64..25.0, im in -20.0f64..20.0) {
            let z = c(re, im);
            let scale = (-z * z).exp();
            prop_assume!(scale.norm() > 1e-300 && scale.norm() < 1e300);
            let want = erfc(z).unwrap();
            let got = erfcx(z).unwrap() * scale;
            prop_assert!((got - want).norm() <= 1e-11 * want.norm().max(1e-300));
        }

        #[test]
        fn real_range(x in 0.0f64..30.0) {
            let v = erfc(c(x, 0.0)).unwrap().re;
            prop_assert!((0.0..=1.0).contains(&v));
        }

        #[test]
        fn erfcx_bounded_in_right_half_plane(re in 0.0f64..100.0, im in -100.0f64..100.0) {
            prop_assert!(erfcx(c(re, im)).unwrap().norm() <= 1.0 + 1e-15);
        }
    }
}
