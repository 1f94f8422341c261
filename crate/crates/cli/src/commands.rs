//! Subcommand implementations producing [`Table`]s.

use std::f64::consts::FRAC_PI_2;

use qtomo_core::exec;
use qtomo_core::grid::Sweep;
use qtomo_core::quadrature::QuadratureSpec;
use qtomo_core::states::{DoubleDeltaState, Parity, SingleDeltaState};
use qtomo_core::tomography::{moments, tomogram_double, tomogram_single_closed, OpticalFrame, SymplecticFrame};
use qtomo_core::transitions::{
    survival_tomographic, survival_wavefunction, survival_wavefunction_quadrature, survival_wigner, ShakeScenario,
};
use qtomo_core::wigner::{wigner_double, wigner_single, PhasePoint};

use crate::args::{Cli, Method, MomentsArgs, OverlapArgs, StateArgs, TomogramArgs, WignerArgs};
use crate::error::CliError;
use crate::figures::{quick_points, Preset, Well, FULL_POINTS};
use crate::output::{format_value, range_param, Table};

/// Angles closer than this to a multiple of pi/2 count as on an axis.
const AXIS_TOLERANCE: f64 = 1e-12;

type CliResult<T> = Result<T, CliError>;

/// A resolved bound state.
#[derive(Debug, Clone, Copy)]
pub enum State {
    Single(SingleDeltaState),
    Double(DoubleDeltaState),
}

impl State {
    fn params(&self) -> Vec<(String, String)> {
        match self {
            State::Single(s) => vec![("chi".into(), s.chi().to_string())],
            State::Double(d) => vec![
                ("chi".into(), d.chi().to_string()),
                ("a".into(), d.a().to_string()),
                ("parity".into(), d.parity().to_string()),
                ("beta".into(), format_value(d.beta())),
                ("C".into(), format_value(d.norm_c())),
            ],
        }
    }

    fn wigner(&self, q: f64, p: f64) -> f64 {
        let pt = PhasePoint::new(q, p);
        match self {
            State::Single(s) => wigner_single(s, pt),
            State::Double(d) => wigner_double(d, pt),
        }
    }

    fn tomogram(&self, frame: &SymplecticFrame, spec: &QuadratureSpec) -> qtomo_core::Result<f64> {
        match self {
            State::Single(s) => tomogram_single_closed(s, frame),
            State::Double(d) => Ok(tomogram_double(d, frame, spec)?.value),
        }
    }
}

fn absent(chi: f64, a: f64) -> CliError {
    CliError::Absent(format!(
        "no antisymmetric bound state at chi = {chi}, a = {a}: it needs chi > 1/(2a) = {}",
        0.5 / a
    ))
}

fn resolve_well(well: Well, normalized: bool, figure: bool) -> CliResult<State> {
    match well {
        Well::Single { chi } => Ok(State::Single(SingleDeltaState::new(chi)?)),
        Well::Double { chi, a, parity } => {
            if figure && !normalized {
                Ok(State::Double(DoubleDeltaState::figure_convention(chi, a, parity)?))
            } else {
                DoubleDeltaState::new(chi, a, parity)?
                    .map(State::Double)
                    .ok_or_else(|| absent(chi, a))
            }
        }
    }
}

fn state_from_flags(args: &StateArgs) -> CliResult<State> {
    let well = match args.a {
        None => Well::Single { chi: args.chi },
        Some(a) => Well::Double {
            chi: args.chi,
            a,
            parity: Parity::from(args.parity),
        },
    };
    resolve_well(well, true, false)
}

/// Quadrature tolerances: `default` with any command-line overrides.
pub fn spec(cli: &Cli, default: QuadratureSpec) -> CliResult<QuadratureSpec> {
    let mut spec = default;
    if let Some(t) = cli.tol_abs {
        spec.abs_tol = t;
    }
    if let Some(t) = cli.tol_rel {
        spec.rel_tol = t;
    }
    spec.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(spec)
}

fn points(cli: &Cli, n: usize) -> usize {
    if cli.quick {
        quick_points(n)
    } else {
        n
    }
}

fn sweep(lo: f64, hi: f64, n: usize) -> CliResult<Sweep> {
    Ok(Sweep::new(lo, hi, n)?)
}

pub fn wigner(cli: &Cli, args: &WignerArgs) -> CliResult<Table> {
    let mut params = Vec::new();
    let (state, q_axis, p_axis) = match args.state.figure {
        Some(fig) => {
            let Preset::Wigner { well, half } = fig.preset() else {
                return Err(CliError::Usage(format!(
                    "{} is a tomogram figure; use `tomogram`",
                    fig.name()
                )));
            };
            params.push(("figure".to_string(), fig.name().to_string()));
            let n = points(cli, FULL_POINTS);
            let axis = sweep(-half, half, n)?;
            (resolve_well(well, args.state.normalized, true)?, axis, axis)
        }
        None => (
            state_from_flags(&args.state)?,
            sweep(args.q_min, args.q_max, points(cli, args.q_points))?,
            sweep(args.p_min, args.p_max, points(cli, args.p_points))?,
        ),
    };
    params.extend(state.params());

    let mut table = Table::new("wigner", Vec::new(), &["q", "p", "W"]);
    if let (Some(q), Some(p)) = (args.q, args.p) {
        table.params = params;
        table.push(vec![q.into(), p.into(), state.wigner(q, p).into()]);
        return Ok(table);
    }
    params.push(("q".into(), range_param(q_axis.lo, q_axis.hi, q_axis.n)));
    params.push(("p".into(), range_param(p_axis.lo, p_axis.hi, p_axis.n)));
    table.params = params;
    let values = exec::map_range(q_axis.n * p_axis.n, |i| {
        let (q, p) = (q_axis.point(i / p_axis.n), p_axis.point(i % p_axis.n));
        (q, p, state.wigner(q, p))
    });
    for (q, p, w) in values {
        table.push(vec![q.into(), p.into(), w.into()]);
    }
    Ok(table)
}

fn on_axis(theta: f64) -> bool {
    let r = theta / FRAC_PI_2;
    (r - r.round()).abs() * FRAC_PI_2 < AXIS_TOLERANCE
}

fn check_angle(theta: f64, allow: bool) -> CliResult<()> {
    if on_axis(theta) && !allow {
        return Err(CliError::Usage(format!(
            "theta = {theta} lies on an axis; pass --theta-limit to use the position or momentum limit"
        )));
    }
    Ok(())
}

fn tabulate<T: Sync>(
    table: &mut Table,
    items: &[T],
    row: impl Fn(&T) -> qtomo_core::Result<Vec<f64>> + Sync + Send,
) -> CliResult<()> {
    for values in exec::map(items, row) {
        table.push(values?.into_iter().map(Into::into).collect());
    }
    Ok(())
}

pub fn tomogram(cli: &Cli, args: &TomogramArgs) -> CliResult<Table> {
    let spec = spec(cli, QuadratureSpec::relaxed())?;
    let mut params = Vec::new();

    if let Some(fig) = args.state.figure {
        let Preset::Tomogram { chi, theta, half } = fig.preset() else {
            return Err(CliError::Usage(format!(
                "{} is a Wigner figure; use `wigner`",
                fig.name()
            )));
        };
        params.push(("figure".to_string(), fig.name().to_string()));
        let state = State::Single(SingleDeltaState::new(chi)?);
        params.extend(state.params());
        let xs = sweep(-half, half, points(cli, FULL_POINTS))?;
        params.push(("theta".into(), theta.to_string()));
        params.push(("x".into(), range_param(xs.lo, xs.hi, xs.n)));
        let mut table = Table::new("tomogram", params, &["x", "theta", "w"]);
        tabulate(&mut table, &xs.points(), |&x| {
            let frame = OpticalFrame::new(x, theta)?.to_symplectic();
            Ok(vec![x, theta, state.tomogram(&frame, &spec)?])
        })?;
        return Ok(table);
    }

    let state = state_from_flags(&args.state)?;
    params.extend(state.params());
    let xs = match args.x {
        Some(x) => vec![x],
        None => {
            let s = sweep(args.x_min, args.x_max, points(cli, args.x_points))?;
            params.push(("x".into(), range_param(s.lo, s.hi, s.n)));
            s.points()
        }
    };
    if let Some(x) = args.x {
        params.push(("x".into(), x.to_string()));
    }

    if let (Some(mu), Some(nu)) = (args.mu, args.nu) {
        SymplecticFrame::new(0.0, mu, nu)?;
        params.push(("mu".into(), mu.to_string()));
        params.push(("nu".into(), nu.to_string()));
        let mut table = Table::new("tomogram", params, &["x", "mu", "nu", "M"]);
        tabulate(&mut table, &xs, |&x| {
            Ok(vec![
                x,
                mu,
                nu,
                state.tomogram(&SymplecticFrame::new(x, mu, nu)?, &spec)?,
            ])
        })?;
        return Ok(table);
    }

    if let Some(theta) = args.theta {
        check_angle(theta, args.theta_limit)?;
        params.push(("theta".into(), theta.to_string()));
        let mut table = Table::new("tomogram", params, &["x", "theta", "w"]);
        tabulate(&mut table, &xs, |&x| {
            let frame = OpticalFrame::new(x, theta)?.to_symplectic();
            Ok(vec![x, theta, state.tomogram(&frame, &spec)?])
        })?;
        return Ok(table);
    }

    if let (Some(lo), Some(hi)) = (args.theta_min, args.theta_max) {
        let thetas = sweep(lo, hi, points(cli, args.theta_points))?;
        for theta in thetas.points() {
            check_angle(theta, args.theta_limit)?;
        }
        params.push(("theta".into(), range_param(thetas.lo, thetas.hi, thetas.n)));
        let grid: Vec<(f64, f64)> = thetas
            .points()
            .into_iter()
            .flat_map(|t| xs.iter().map(move |&x| (t, x)))
            .collect();
        let mut table = Table::new("tomogram", params, &["theta", "x", "w"]);
        tabulate(&mut table, &grid, |&(theta, x)| {
            let frame = OpticalFrame::new(x, theta)?.to_symplectic();
            Ok(vec![theta, x, state.tomogram(&frame, &spec)?])
        })?;
        return Ok(table);
    }

    Err(CliError::Usage(
        "give a frame: --mu and --nu, --theta, or --theta-min and --theta-max".into(),
    ))
}

pub fn overlap(cli: &Cli, args: &OverlapArgs) -> CliResult<Table> {
    let k1 = args
        .k1
        .or(args.kappa1)
        .ok_or_else(|| CliError::Usage("missing kappa1".into()))?;
    let k2 = args
        .k2
        .or(args.kappa2)
        .ok_or_else(|| CliError::Usage("missing kappa2".into()))?;
    let scenario = ShakeScenario::new(k1, k2)?;
    let params = vec![("kappa1".into(), k1.to_string()), ("kappa2".into(), k2.to_string())];
    let mut table = Table::new("overlap", params, &["method", "probability", "error_bound"]);

    let exact = survival_wavefunction(&scenario);
    let wigner_spec = || spec(cli, QuadratureSpec::with_tolerances(1e-7, 1e-7));
    let tomo_spec = || spec(cli, QuadratureSpec::with_tolerances(1e-6, 1e-6));
    match args.method {
        Method::Wavefunction => table.push(vec!["wavefunction".into(), exact.into(), 0.0.into()]),
        Method::Wigner => {
            let e = survival_wigner(&scenario, &wigner_spec()?)?;
            table.push(vec!["wigner".into(), e.value.into(), e.error.into()]);
        }
        Method::Tomogram => {
            let e = survival_tomographic(&scenario, &tomo_spec()?)?;
            table.push(vec!["tomogram".into(), e.value.into(), e.error.into()]);
        }
        Method::All => {
            let routes = [
                (
                    "wavefunction_quadrature",
                    survival_wavefunction_quadrature(&scenario, &spec(cli, QuadratureSpec::default())?)?,
                ),
                ("wigner", survival_wigner(&scenario, &wigner_spec()?)?),
                ("tomogram", survival_tomographic(&scenario, &tomo_spec()?)?),
            ];
            table.push(vec!["wavefunction".into(), exact.into(), 0.0.into()]);
            let mut deviation = 0.0f64;
            let mut bound = 0.0f64;
            for (name, e) in routes {
                table.push(vec![name.into(), e.value.into(), e.error.into()]);
                deviation = deviation.max((e.value - exact).abs());
                bound = bound.max(e.error);
            }
            table.push(vec!["max_deviation".into(), deviation.into(), bound.into()]);
        }
    }
    Ok(table)
}

pub fn moments_table(cli: &Cli, args: &MomentsArgs) -> CliResult<Table> {
    let state = SingleDeltaState::new(args.chi)?;
    let m = moments(&state, &spec(cli, QuadratureSpec::default())?)?;
    let chi = args.chi;
    let mut table = Table::new(
        "moments",
        vec![("chi".into(), chi.to_string())],
        &["quantity", "value", "exact", "deviation"],
    );
    for (name, value, exact) in [
        ("x2", m.mean_x2, 0.5 / (chi * chi)),
        ("p2", m.mean_p2, chi * chi),
        ("x2_p2", m.uncertainty_product, 0.5),
    ] {
        table.push(vec![
            name.into(),
            value.into(),
            exact.into(),
            (value - exact).abs().into(),
        ]);
    }
    Ok(table)
}
