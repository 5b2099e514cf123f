//! Subcommand drivers: merge flags with file config, run the library, and
//! emit the results.

use entdyn::ensemble::{bell_state, superposition_state, EnsembleSeries, Observable};
use entdyn::geometry::{
    check_identities, metric_density_ratio_spread, sample_interior_point, IdentityReport,
    RatioReport,
};
use entdyn::linalg::{partial_trace, Density4, Qubit, Vec4};
use entdyn::measures::{entropy, page_mean_entropy, EntropyKind};
use entdyn::quenched::{
    averaged_linear_entropy_analytic, averaged_rho_analytic, run_quenched_ensemble,
    QuenchedEnsembleConfig,
};
use entdyn::su4::{density_from_angles, group_volume_mc, haar_volume, reference_state,
    sample_haar_angles};
use entdyn::temporal::{
    averaged_linear_entropy_temporal, averaged_rho_temporal_analytic, run_temporal_ensemble,
    PhiState, TemporalEnsembleConfig, TemporalParams,
};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cli::{
    resolve_observable, AnalyticArgs, GeometryArgs, HaarArgs, ModeArg, ObservableArg,
    OutputArgs, QuenchedArgs, StartArg, TemporalArgs,
};
use crate::config::{
    load_config, require_seed, AnalyticFileConfig, GeometryFileConfig, HaarFileConfig,
    QuenchedFileConfig, TemporalFileConfig,
};
use crate::curves::curve_value;
use crate::error::CliError;
use crate::output::{write_baseline_csv, write_json_doc, write_series_csv, BaselineRow, Row};
use crate::spec::Spec;
use crate::svg;

/// Largest volume-density spread the chart is allowed before the geometry
/// check is declared failed; matches the library's measured roundoff scale
/// with a wide margin.
const RATIO_SPREAD_LIMIT: f64 = 1e-3;

/// An inclusive uniform grid: `steps` points from 0 to `max`.
fn build_grid(max: f64, steps: usize) -> Result<Vec<f64>, CliError> {
    if max <= 0.0 || !max.is_finite() {
        return Err(CliError::Validation(format!(
            "grid maximum {max} must be positive and finite"
        )));
    }
    if steps < 2 {
        return Err(CliError::Validation(format!(
            "a grid needs at least 2 points, got {steps}"
        )));
    }
    Ok((0..steps)
        .map(|i| max * i as f64 / (steps - 1) as f64)
        .collect())
}

fn series_rows(series: &EnsembleSeries) -> Vec<Row> {
    series
        .grid
        .iter()
        .zip(&series.mean)
        .zip(&series.stderr)
        .map(|((&time, &mean), &stderr)| Row { time, mean, stderr, n: series.n })
        .collect()
}

fn emit_series(
    output: &OutputArgs,
    spec: &Spec,
    time_label: &str,
    value_label: &str,
    rows: &[Row],
    overlay: Option<Vec<(f64, f64)>>,
) -> Result<(), CliError> {
    write_series_csv(output.out.as_ref(), spec, output.no_timestamp, time_label, rows)?;
    if let Some(path) = &output.svg {
        let series: Vec<(f64, f64)> = rows.iter().map(|r| (r.time, r.mean)).collect();
        let body = svg::render(time_label, value_label, &series, overlay.as_deref());
        std::fs::write(path, body)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

/// Closed-form companion of a quenched series, where one exists: the exact
/// averaged-state measure in entanglement-of-average mode, and the exact
/// averaged linear entropy for the |11⟩ start in average-of-entanglement
/// mode.
fn quenched_overlay(
    mode: ModeArg,
    observable: &Observable,
    obs_arg: ObservableArg,
    c: f64,
    initial: &Vec4,
    grid: &[f64],
) -> Result<Option<Vec<(f64, f64)>>, CliError> {
    match mode {
        ModeArg::EntanglementOfAverage => {
            let rho0 = Density4::pure(initial)?;
            let mut pts = Vec::with_capacity(grid.len());
            for &tau in grid {
                let avg = averaged_rho_analytic(tau, &rho0)?;
                pts.push((tau, observable.evaluate(&avg)?));
            }
            Ok(Some(pts))
        }
        ModeArg::AverageOfEntanglement if obs_arg == ObservableArg::Linear && c == 0.0 => Ok(
            Some(grid.iter().map(|&t| (t, averaged_linear_entropy_analytic(t))).collect()),
        ),
        ModeArg::AverageOfEntanglement => Ok(None),
    }
}

/// Closed-form companion of a temporal series, where one exists.
fn temporal_overlay(
    mode: ModeArg,
    observable: &Observable,
    obs_arg: ObservableArg,
    d: f64,
    initial: &Vec4,
    grid: &[f64],
) -> Result<Option<Vec<(f64, f64)>>, CliError> {
    let rho0 = Density4::pure(initial)?;
    match mode {
        ModeArg::EntanglementOfAverage => {
            let mut pts = Vec::with_capacity(grid.len());
            for &t in grid {
                let avg = averaged_rho_temporal_analytic(t, d, &rho0)?;
                pts.push((t, observable.evaluate(&avg)?));
            }
            Ok(Some(pts))
        }
        ModeArg::AverageOfEntanglement if obs_arg == ObservableArg::Linear => {
            let l0 = entropy(&partial_trace(&rho0, Qubit::First), EntropyKind::Linear)?;
            let mut pts = Vec::with_capacity(grid.len());
            for &t in grid {
                pts.push((t, averaged_linear_entropy_temporal(t, d, l0)?));
            }
            Ok(Some(pts))
        }
        ModeArg::AverageOfEntanglement => Ok(None),
    }
}

pub fn run_quenched(args: QuenchedArgs) -> Result<(), CliError> {
    let file: QuenchedFileConfig = load_config(args.config.as_deref())?;
    let c = args.c.or(file.c).unwrap_or(0.0);
    let tau_max = args.tau_max.or(file.tau_max).unwrap_or(5.0);
    let tau_steps = args.tau_steps.or(file.tau_steps).unwrap_or(101);
    let trajectories = args.trajectories.or(file.trajectories).unwrap_or(4096);
    let seed = require_seed(args.seed.or(file.seed))?;
    let mode = args.mode.or(file.mode).unwrap_or(ModeArg::AverageOfEntanglement);
    let obs_arg = args.observable.or(file.observable).unwrap_or(ObservableArg::Linear);
    let q = args.q.or(file.q);
    let observable = resolve_observable(obs_arg, q)?;

    let grid = build_grid(tau_max, tau_steps)?;
    let initial = superposition_state(c)?;
    let cfg = QuenchedEnsembleConfig {
        initial,
        grid: grid.clone(),
        trajectories,
        seed,
        mode: mode.into(),
        observable,
    };
    let out = run_quenched_ensemble(&cfg)?;
    let overlay = if args.output.svg.is_some() {
        quenched_overlay(mode, &observable, obs_arg, c, &initial, &grid)?
    } else {
        None
    };
    let spec = Spec::Quenched {
        c,
        tau_max,
        tau_steps,
        trajectories,
        seed,
        mode,
        observable: obs_arg,
        q,
    };
    emit_series(
        &args.output,
        &spec,
        "tau",
        &obs_arg.label(q),
        &series_rows(&out.series),
        overlay,
    )
}

fn start_state(start: StartArg, phi: Option<f64>) -> Result<Vec4, CliError> {
    match start {
        StartArg::Phi => {
            let phi = phi.ok_or_else(|| {
                CliError::Validation("--start phi needs an angle: pass --phi".into())
            })?;
            Ok(PhiState::new(phi)?.state())
        }
        StartArg::Bell | StartArg::Unentangled => {
            if phi.is_some() {
                return Err(CliError::Validation(
                    "--phi is only meaningful with --start phi".into(),
                ));
            }
            Ok(match start {
                StartArg::Bell => bell_state(),
                _ => reference_state(),
            })
        }
    }
}

pub fn run_temporal(args: TemporalArgs) -> Result<(), CliError> {
    let file: TemporalFileConfig = load_config(args.config.as_deref())?;
    let start = args.start.or(file.start).unwrap_or(StartArg::Bell);
    let phi = args.phi.or(file.phi);
    let d = args.d.or(file.d).unwrap_or(0.5);
    let dt = args.dt.or(file.dt).unwrap_or(1e-3);
    let t_max = args.t_max.or(file.t_max).unwrap_or(0.6);
    let t_steps = args.t_steps.or(file.t_steps).unwrap_or(61);
    let trajectories = args.trajectories.or(file.trajectories).unwrap_or(4096);
    let seed = require_seed(args.seed.or(file.seed))?;
    let mode = args.mode.or(file.mode).unwrap_or(ModeArg::AverageOfEntanglement);
    let obs_arg = args.observable.or(file.observable).unwrap_or(ObservableArg::Linear);
    let q = args.q.or(file.q);
    let observable = resolve_observable(obs_arg, q)?;

    let initial = start_state(start, phi)?;
    let params = TemporalParams::new(d, dt)?;
    let grid = build_grid(t_max, t_steps)?;
    let cfg = TemporalEnsembleConfig {
        initial,
        params,
        grid: grid.clone(),
        trajectories,
        seed,
        mode: mode.into(),
        observable,
    };
    let out = run_temporal_ensemble(&cfg)?;
    let overlay = if args.output.svg.is_some() {
        temporal_overlay(mode, &observable, obs_arg, d, &initial, &grid)?
    } else {
        None
    };
    let spec = Spec::Temporal {
        start,
        phi,
        d,
        dt,
        t_max,
        t_steps,
        trajectories,
        seed,
        mode,
        observable: obs_arg,
        q,
    };
    emit_series(
        &args.output,
        &spec,
        "t",
        &obs_arg.label(q),
        &series_rows(&out.series),
        overlay,
    )
}

pub fn run_haar_baseline(args: HaarArgs) -> Result<(), CliError> {
    let file: HaarFileConfig = load_config(args.config.as_deref())?;
    let samples = args.samples.or(file.samples).unwrap_or(100_000);
    let seed = require_seed(args.seed.or(file.seed))?;
    let obs_arg = args.observable.or(file.observable).unwrap_or(ObservableArg::VonNeumann);
    let q = args.q.or(file.q);
    let observable = resolve_observable(obs_arg, q)?;
    if samples < 2 {
        return Err(CliError::Validation(format!(
            "need at least 2 samples for a standard error, got {samples}"
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sum = 0.0;
    let mut sum2 = 0.0;
    for _ in 0..samples {
        let angles = sample_haar_angles(&mut rng);
        let rho = density_from_angles(&angles)?;
        let v = observable.evaluate(&rho)?;
        sum += v;
        sum2 += v * v;
    }
    let n = samples as f64;
    let mean = sum / n;
    let stderr = ((sum2 - n * mean * mean).max(0.0) / ((n - 1.0) * n)).sqrt();

    // Haar means with a closed form: the average one-qubit von Neumann
    // entropy (1/3 for two qubits) and the average linear entropy (1/5).
    let expected = match obs_arg {
        ObservableArg::VonNeumann => Some(page_mean_entropy(2, 2)?),
        ObservableArg::Linear => Some(0.2),
        _ => None,
    };
    let spec = Spec::HaarBaseline { samples, seed, observable: obs_arg, q };
    let row = BaselineRow {
        observable: obs_arg.token(),
        expected,
        mean,
        stderr,
        n: samples,
    };
    write_baseline_csv(args.output.out.as_ref(), &spec, args.output.no_timestamp, &row)
}

#[derive(Debug, Serialize)]
struct VolumeReport {
    samples: u64,
    estimate: f64,
    stderr: f64,
    expected: f64,
}

#[derive(Debug, Serialize)]
struct GeometryReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    generated: Option<String>,
    spec: Spec,
    identities: IdentityReport,
    density_ratio: RatioReport,
    ratio_spread_limit: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    volume: Option<VolumeReport>,
    pass: bool,
}

pub fn run_geometry_check(args: GeometryArgs) -> Result<(), CliError> {
    let file: GeometryFileConfig = load_config(args.config.as_deref())?;
    let points = args.points.or(file.points).unwrap_or(5);
    let h = args.h.or(file.h).unwrap_or(1e-3);
    let ratio_points = args.ratio_points.or(file.ratio_points).unwrap_or(20);
    let volume_samples = args.volume_samples.or(file.volume_samples).unwrap_or(0);
    let seed = require_seed(args.seed.or(file.seed))?;
    if points == 0 || ratio_points == 0 {
        return Err(CliError::Validation(
            "need at least one point for each geometry check".into(),
        ));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let identity_points: Vec<_> = (0..points)
        .map(|_| sample_interior_point(&mut rng, h))
        .collect::<Result<_, _>>()?;
    let identities = check_identities(&identity_points, h);

    let spread_points: Vec<_> = (0..ratio_points)
        .map(|_| sample_interior_point(&mut rng, h))
        .collect::<Result<_, _>>()?;
    let density_ratio = metric_density_ratio_spread(&spread_points, h)?;

    let volume = if volume_samples > 0 {
        let (estimate, stderr) = group_volume_mc(volume_samples, &mut rng);
        Some(VolumeReport { samples: volume_samples, estimate, stderr, expected: haar_volume() })
    } else {
        None
    };

    let pass = identities.pass && density_ratio.relative_spread <= RATIO_SPREAD_LIMIT;
    let report = GeometryReport {
        generated: if args.output.no_timestamp {
            None
        } else {
            Some(chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true))
        },
        spec: Spec::GeometryCheck { points, h, ratio_points, volume_samples, seed },
        identities,
        density_ratio,
        ratio_spread_limit: RATIO_SPREAD_LIMIT,
        volume,
        pass,
    };
    write_json_doc(args.output.out.as_ref(), &report)?;
    if !report.pass {
        let mut reasons = Vec::new();
        if !report.identities.pass {
            reasons.push(format!(
                "eigenfunction identities failed (max residuals {:.3e} state, {:.3e} entropy)",
                report.identities.max_state_residual, report.identities.max_entropy_residual
            ));
        }
        if report.density_ratio.relative_spread > RATIO_SPREAD_LIMIT {
            reasons.push(format!(
                "volume-density ratio spread {:.3e} exceeds {RATIO_SPREAD_LIMIT:.0e}",
                report.density_ratio.relative_spread
            ));
        }
        return Err(CliError::Numeric(format!(
            "geometry check failed: {}",
            reasons.join("; ")
        )));
    }
    Ok(())
}

pub fn run_analytic(args: AnalyticArgs) -> Result<(), CliError> {
    let file: AnalyticFileConfig = load_config(args.config.as_deref())?;
    let curve = args.curve.or(file.curve).ok_or_else(|| {
        CliError::Validation(
            "a curve is required: pass --curve or set `curve` in the config file".into(),
        )
    })?;
    let tau_max = args.tau_max.or(file.tau_max).unwrap_or(5.0);
    let tau_steps = args.tau_steps.or(file.tau_steps).unwrap_or(201);
    let grid = build_grid(tau_max, tau_steps)?;
    let rows: Vec<Row> = grid
        .iter()
        .map(|&tau| {
            Ok(Row { time: tau, mean: curve_value(curve, tau)?, stderr: 0.0, n: 0 })
        })
        .collect::<Result<_, CliError>>()?;
    let spec = Spec::Analytic { curve, tau_max, tau_steps };
    emit_series(&args.output, &spec, "tau", curve.label(), &rows, None)
}
