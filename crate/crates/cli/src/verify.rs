//! Verification suites behind `verify`, reported as JSON.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use qtomo_core::grid::Sweep;
use qtomo_core::quadrature::QuadratureSpec;
use qtomo_core::special::{erfc, erfc_product_integral, erfc_product_integral_quadrature, erfcx};
use qtomo_core::states::{beta_residual, solve_beta, DoubleDeltaState, Parity, SingleDeltaState};
use qtomo_core::tomography::{
    check_normalization, moments, optical_tomogram, tomogram_double, tomogram_fresnel, tomogram_from_wigner,
    tomogram_single_closed, OpticalFrame, SymplecticFrame,
};
use qtomo_core::transitions::{
    overlap_integrand, overlap_integrand_explicit, survival_tomographic, survival_wavefunction,
    survival_wavefunction_quadrature, survival_wigner, ShakeScenario,
};
use qtomo_core::wigner::{
    negativity_scan, position_marginal, wigner_double, wigner_norm, wigner_numeric, wigner_single, PhasePoint,
};
use qtomo_core::{exec, Result};

use crate::args::Suite;
use crate::output::{PROGRAM, VERSION};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    /// `|achieved - target| <= tolerance`
    Within,
    /// `achieved < target`
    Below,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub target: f64,
    pub achieved: f64,
    pub tolerance: f64,
    pub relation: Relation,
    pub pass: bool,
    pub note: Option<String>,
}

impl Check {
    pub fn within(name: impl Into<String>, target: f64, achieved: Result<f64>, tolerance: f64) -> Self {
        let (achieved, note) = split(achieved);
        let pass = (achieved - target).abs() <= tolerance;
        Check {
            name: name.into(),
            target,
            achieved,
            tolerance,
            relation: Relation::Within,
            pass,
            note,
        }
    }

    pub fn below(name: impl Into<String>, bound: f64, achieved: Result<f64>) -> Self {
        let (achieved, note) = split(achieved);
        Check {
            name: name.into(),
            target: bound,
            achieved,
            tolerance: 0.0,
            relation: Relation::Below,
            pass: achieved < bound,
            note,
        }
    }

    fn to_json(&self) -> Value {
        let mut v = json!({
            "name": self.name,
            "target": self.target,
            "achieved": self.achieved,
            "tolerance": self.tolerance,
            "relation": match self.relation {
                Relation::Within => "within",
                Relation::Below => "below",
            },
            "pass": self.pass,
        });
        if let Some(note) = &self.note {
            v["note"] = json!(note);
        }
        v
    }
}

fn split(r: Result<f64>) -> (f64, Option<String>) {
    match r {
        Ok(v) => (v, None),
        Err(e) => (f64::NAN, Some(e.to_string())),
    }
}

/// Largest value of `f` over `items`, stopping at the first error.
fn max_over<T>(items: &[T], f: impl Fn(&T) -> Result<f64> + Sync + Send) -> Result<f64>
where
    T: Sync,
{
    let values = exec::map(items, f);
    let mut worst = 0.0f64;
    for v in values {
        worst = worst.max(v?);
    }
    Ok(worst)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub suite: &'static str,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> String {
        let doc = json!({
            "program": PROGRAM,
            "version": VERSION,
            "suite": self.suite,
            "passed": self.passed(),
            "checks": self.checks.iter().map(Check::to_json).collect::<Vec<_>>(),
        });
        let mut text = serde_json::to_string_pretty(&doc).expect("reports serialize");
        text.push('\n');
        text
    }
}

/// Options shared by the suites.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Options {
    pub quick: bool,
    /// Well strength for the moments suite; 1 and 2 when absent.
    pub chi: Option<f64>,
}

pub fn run(suite: Suite, opts: Options) -> Report {
    let (name, checks) = match suite {
        Suite::Special => ("special", special(opts)),
        Suite::Wigner => ("wigner", wigner(opts)),
        Suite::Tomogram => ("tomogram", tomogram(opts)),
        Suite::Transitions => ("transitions", transitions(opts)),
        Suite::Moments => ("moments", moments_suite(opts)),
        Suite::All => {
            let mut all = special(opts);
            all.extend(wigner(opts));
            all.extend(tomogram(opts));
            all.extend(transitions(opts));
            all.extend(moments_suite(opts));
            ("all", all)
        }
    };
    Report { suite: name, checks }
}

fn random_frame(rng: &mut ChaCha8Rng, x_range: f64) -> Result<SymplecticFrame> {
    let signed = |rng: &mut ChaCha8Rng| {
        let m = rng.gen_range(0.1..3.0);
        if rng.gen_bool(0.5) {
            m
        } else {
            -m
        }
    };
    let mu = signed(rng);
    let nu = signed(rng);
    let x = if x_range > 0.0 {
        rng.gen_range(-x_range..x_range)
    } else {
        0.0
    };
    SymplecticFrame::new(x, mu, nu)
}

fn special(opts: Options) -> Vec<Check> {
    let mut out = vec![
        Check::within(
            "erfcx(10)",
            0.056_140_992_743_822_586,
            erfcx(Complex64::new(10.0, 0.0)).map(|v| v.re),
            1e-15,
        ),
        Check::within(
            "erfc(1)",
            0.157_299_207_050_285_13,
            erfc(Complex64::new(1.0, 0.0)).map(|v| v.re),
            1e-15,
        ),
    ];
    let spec = QuadratureSpec::default();
    for a in [0.5, 1.0, 2.0] {
        for b in [0.5, 1.0, 2.0] {
            let achieved = erfc_product_integral_quadrature(a, b, &spec).map(|e| e.value);
            let target = erfc_product_integral(a, b).unwrap_or(f64::NAN);
            out.push(Check::within(
                format!("erfc product integral a={a} b={b}"),
                target,
                achieved,
                1e-9,
            ));
        }
    }

    let count = if opts.quick { 25 } else { 100 };
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let points: Vec<Complex64> = (0..count)
        .map(|_| {
            let r = 20.0 * rng.gen::<f64>().sqrt();
            Complex64::from_polar(r, rng.gen_range(-PI..PI))
        })
        .collect();
    let parity = max_over(&points, |&z| {
        let (plus, minus) = (erfc(z)?, erfc(-z)?);
        Ok((plus + minus - 2.0).norm() / plus.norm().max(minus.norm()).max(1.0))
    });
    out.push(Check::within("erfc(z) + erfc(-z) = 2, |z| <= 20", 0.0, parity, 1e-12));
    let conjugate = max_over(&points, |&z| {
        let w = erfc(z)?;
        Ok((erfc(z.conj())? - w.conj()).norm() / w.norm())
    });
    out.push(Check::within(
        "erfc(conj z) = conj erfc(z), |z| <= 20",
        0.0,
        conjugate,
        1e-12,
    ));
    out
}

fn wigner(opts: Options) -> Vec<Check> {
    let mut out = Vec::new();
    let one = SingleDeltaState::new(1.0).expect("valid");
    out.push(Check::within(
        "single well W(0, 0) at chi=1",
        2.0,
        Ok(wigner_single(&one, PhasePoint::new(0.0, 0.0))),
        1e-15,
    ));

    let oracle = QuadratureSpec::with_tolerances(1e-10, 1e-10);
    let side = if opts.quick { 3 } else { 7 };
    let grid: Vec<PhasePoint> = {
        let axis = Sweep::new(-2.0, 2.0, side).expect("valid sweep").points();
        axis.iter()
            .flat_map(|&q| axis.iter().map(move |&p| PhasePoint::new(q, p)))
            .collect()
    };
    let dev = max_over(&grid, |pt| {
        Ok((wigner_numeric(&one, *pt, &oracle)?.value.re - wigner_single(&one, *pt)).abs())
    });
    out.push(Check::within(
        format!("single well closed form vs wave-function integral ({side}x{side})"),
        0.0,
        dev,
        1e-8,
    ));
    for parity in [Parity::Symmetric, Parity::Antisymmetric] {
        let state = DoubleDeltaState::new(2.0, 0.5, parity).expect("valid").expect("exists");
        let dev = max_over(&grid, |pt| {
            Ok((wigner_numeric(&state, *pt, &oracle)?.value.re - wigner_double(&state, *pt)).abs())
        });
        out.push(Check::within(
            format!("{parity} double well closed form vs wave-function integral ({side}x{side})"),
            0.0,
            dev,
            1e-7,
        ));
    }

    // Roots of the double-well conditions.
    let sym = solve_beta(1.0, 0.5, Parity::Symmetric);
    out.push(Check::within(
        "symmetric beta at chi=1 a=0.5",
        1.278_464_542_761_074,
        sym.clone().map(|b| b.unwrap_or(f64::NAN)),
        1e-12,
    ));
    out.push(Check::within(
        "symmetric beta residual",
        0.0,
        sym.map(|b| b.map_or(f64::NAN, |b| beta_residual(1.0, 0.5, Parity::Symmetric, b))),
        1e-12,
    ));
    out.push(Check::within(
        "antisymmetric root absent at chi = 1/(2a)",
        1.0,
        solve_beta(1.0, 0.5, Parity::Antisymmetric).map(|b| if b.is_none() { 1.0 } else { 0.0 }),
        0.0,
    ));
    out.push(Check::within(
        "antisymmetric beta residual at chi=2 a=0.5",
        0.0,
        solve_beta(2.0, 0.5, Parity::Antisymmetric)
            .map(|b| b.map_or(f64::NAN, |b| beta_residual(2.0, 0.5, Parity::Antisymmetric, b))),
        1e-12,
    ));

    // Wells merging as a -> 0.
    let merged = DoubleDeltaState::new(2.0, 1e-6, Parity::Symmetric)
        .expect("valid")
        .expect("exists");
    let single_beta = SingleDeltaState::new(merged.beta()).expect("valid");
    let anti = DoubleDeltaState::figure_convention(2.0, 1e-6, Parity::Antisymmetric).expect("valid");
    let dev = max_over(&grid, |pt| {
        Ok((wigner_double(&merged, *pt) - wigner_single(&single_beta, *pt)).abs())
    });
    out.push(Check::within(
        "symmetric wells at a=1e-6 vs single well with decay beta",
        0.0,
        dev,
        1e-4,
    ));
    let dev = max_over(&grid, |pt| Ok(wigner_double(&anti, *pt).abs()));
    out.push(Check::within("antisymmetric W at a=1e-6 vanishes", 0.0, dev, 1e-4));

    // Marginals and norms.
    let spec = QuadratureSpec::with_tolerances(1e-9, 1e-9);
    let xs = [-0.7, 0.0, 0.45];
    let dev = max_over(&xs, |&x| {
        Ok((position_marginal(&one, x, &spec)?.value - one.psi(x).powi(2)).abs())
    });
    out.push(Check::within(
        "single well position marginal vs |psi|^2",
        0.0,
        dev,
        1e-7,
    ));
    let norm_spec = QuadratureSpec::with_tolerances(1e-7, 1e-7);
    out.push(Check::within(
        "single well norm",
        1.0,
        wigner_norm(&one, &norm_spec).map(|e| e.value),
        1e-6,
    ));
    for parity in [Parity::Symmetric, Parity::Antisymmetric] {
        let state = DoubleDeltaState::new(2.0, 0.5, parity).expect("valid").expect("exists");
        let dev = max_over(&xs, |&x| {
            Ok((position_marginal(&state, x, &spec)?.value - state.psi(x).powi(2)).abs())
        });
        out.push(Check::within(
            format!("{parity} double well position marginal vs |psi|^2"),
            0.0,
            dev,
            1e-7,
        ));
        out.push(Check::within(
            format!("{parity} double well norm"),
            1.0,
            wigner_norm(&state, &norm_spec).map(|e| e.value),
            1e-6,
        ));
    }

    // Negative values of the antisymmetric figure state.
    let n = if opts.quick { 31 } else { 121 };
    let axis = Sweep::new(-3.0, 3.0, n).expect("valid sweep");
    let fig = DoubleDeltaState::figure_convention(1.0, 0.5, Parity::Antisymmetric).expect("valid");
    let (min, _) = negativity_scan(|q, p| wigner_double(&fig, PhasePoint::new(q, p)), axis, axis);
    out.push(Check::below(
        "antisymmetric figure state minimum over [-3,3]^2",
        -1e-3,
        Ok(min),
    ));
    out
}

fn tomogram(opts: Options) -> Vec<Check> {
    let mut out = Vec::new();
    let spec = QuadratureSpec::with_tolerances(1e-9, 1e-9);
    let mut rng = ChaCha8Rng::seed_from_u64(7);

    let frames_per_chi = if opts.quick { 3 } else { 10 };
    for chi in [0.5, 1.0, 2.0] {
        let state = SingleDeltaState::new(chi).expect("valid");
        let frames: Vec<Result<SymplecticFrame>> = (0..frames_per_chi).map(|_| random_frame(&mut rng, 0.0)).collect();
        let dev = max_over(&frames, |frame| {
            let frame = frame.clone()?;
            let total = check_normalization(
                |x| tomogram_single_closed(&state, &frame.with_x(x)).unwrap_or(f64::NAN),
                &frame,
                &spec,
            )?;
            Ok((total.value - 1.0).abs())
        });
        out.push(Check::within(
            format!("tomogram normalization chi={chi} ({frames_per_chi} frames)"),
            0.0,
            dev,
            1e-7,
        ));
    }

    let one = SingleDeltaState::new(1.0).expect("valid");
    let count = if opts.quick { 5 } else { 20 };
    let frames: Vec<Result<SymplecticFrame>> = (0..count).map(|_| random_frame(&mut rng, 3.0)).collect();
    let triples = exec::map(&frames, |frame| -> Result<[f64; 3]> {
        let frame = frame.clone()?;
        Ok([
            tomogram_single_closed(&one, &frame)?,
            tomogram_from_wigner(&one, &frame, &spec)?.value,
            tomogram_fresnel(&one, &frame, &spec)?.value,
        ])
    });
    let pair = |i: usize, j: usize| -> Result<f64> {
        let mut worst = 0.0f64;
        for t in &triples {
            let t = t.clone()?;
            worst = worst.max((t[i] - t[j]).abs());
        }
        Ok(worst)
    };
    out.push(Check::within(
        format!("closed form vs Radon of W ({count} frames)"),
        0.0,
        pair(0, 1),
        1e-6,
    ));
    out.push(Check::within(
        format!("closed form vs Fresnel integral ({count} frames)"),
        0.0,
        pair(0, 2),
        1e-6,
    ));
    out.push(Check::within(
        format!("Radon of W vs Fresnel integral ({count} frames)"),
        0.0,
        pair(1, 2),
        1e-6,
    ));

    let frames = [(0.4, 0.8, 0.6), (-1.1, -0.5, 1.7), (0.9, 1.3, -0.4)];
    for parity in [Parity::Symmetric, Parity::Antisymmetric] {
        let state = DoubleDeltaState::new(2.0, 0.5, parity).expect("valid").expect("exists");
        let dev = max_over(&frames, |&(x, mu, nu)| {
            let frame = SymplecticFrame::new(x, mu, nu)?;
            let three_term = tomogram_double(&state, &frame, &spec)?.value;
            let fresnel = tomogram_fresnel(&state, &frame, &spec)?.value;
            let radon = tomogram_from_wigner(&state, &frame, &spec)?.value;
            Ok((three_term - fresnel).abs().max((three_term - radon).abs()))
        });
        out.push(Check::within(
            format!("{parity} double well tomogram, three routes"),
            0.0,
            dev,
            1e-7,
        ));
    }

    let five = SingleDeltaState::new(5.0).expect("valid");
    let at = |theta| OpticalFrame::new(0.0, theta).and_then(|f| optical_tomogram(&five, &f));
    out.push(Check::within(
        "optical tomogram w(0, theta=0) at chi=5",
        5.0,
        at(0.0),
        1e-12,
    ));
    out.push(Check::within(
        "optical tomogram w(0, theta=pi/2) at chi=5",
        2.0 / (5.0 * PI),
        at(FRAC_PI_2),
        1e-12,
    ));
    out
}

fn transitions(opts: Options) -> Vec<Check> {
    let mut out = Vec::new();
    let exact = |a: f64, b: f64| 4.0 * a * b / ((a + b) * (a + b));
    let s12 = ShakeScenario::new(1.0, 2.0).expect("valid");
    out.push(Check::within(
        "closed form P(1, 2) = 8/9",
        8.0 / 9.0,
        Ok(survival_wavefunction(&s12)),
        0.0,
    ));

    let quad_spec = QuadratureSpec::default();
    let wigner_spec = QuadratureSpec::with_tolerances(1e-7, 1e-7);
    let tomo_spec = if opts.quick {
        QuadratureSpec::with_tolerances(1e-5, 1e-5)
    } else {
        QuadratureSpec::with_tolerances(1e-6, 1e-6)
    };
    for (i, (a, b)) in [(1.0, 2.0), (1.0, 1.0), (1.0, 3.0), (0.5, 4.0)].into_iter().enumerate() {
        let s = ShakeScenario::new(a, b).expect("valid");
        let target = exact(a, b);
        out.push(Check::within(
            format!("P({a}, {b}) wave-function quadrature"),
            target,
            survival_wavefunction_quadrature(&s, &quad_spec).map(|e| e.value),
            1e-9,
        ));
        out.push(Check::within(
            format!("P({a}, {b}) Wigner overlap"),
            target,
            survival_wigner(&s, &wigner_spec).map(|e| e.value),
            1e-6,
        ));
        if !opts.quick || i < 2 {
            out.push(Check::within(
                format!("P({a}, {b}) tomogram overlap"),
                target,
                survival_tomographic(&s, &tomo_spec).map(|e| e.value),
                1e-4,
            ));
        }
    }

    let s22 = ShakeScenario::new(2.0, 2.0).expect("valid");
    let points = [
        (0.3, -0.2, 0.7, 0.5),
        (0.1, 0.4, 1.3, -0.6),
        (-0.5, 0.2, 0.4, 1.1),
        (1.2, 0.9, -0.8, 0.3),
    ];
    let dev = max_over(&points, |&(x, y, mu, nu)| {
        Ok((overlap_integrand_explicit(2.0, x, y, mu, nu)? - overlap_integrand(&s22, x, y, mu, nu)?).norm())
    });
    out.push(Check::within(
        "explicit erfc overlap integrand vs tomograms",
        0.0,
        dev,
        1e-8,
    ));
    out
}

fn moments_suite(opts: Options) -> Vec<Check> {
    let chis = match opts.chi {
        Some(chi) => vec![chi],
        None => vec![1.0, 2.0],
    };
    let spec = QuadratureSpec::default();
    let mut out = Vec::new();
    for chi in chis {
        let m = SingleDeltaState::new(chi).and_then(|s| moments(&s, &spec));
        out.push(Check::within(
            format!("<p^2> at chi={chi}"),
            chi * chi,
            m.clone().map(|m| m.mean_p2),
            1e-9,
        ));
        out.push(Check::within(
            format!("<x^2> at chi={chi}"),
            0.5 / (chi * chi),
            m.clone().map(|m| m.mean_x2),
            1e-9,
        ));
        out.push(Check::within(
            format!("<x^2><p^2> at chi={chi}"),
            0.5,
            m.map(|m| m.uncertainty_product),
            1e-9,
        ));
    }
    out
}
