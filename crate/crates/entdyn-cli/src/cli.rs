//! Command-line surface: clap definitions and the small value enums shared
//! with config files (same kebab-case tokens in both).

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use entdyn::ensemble::{AveragingMode, Observable};
use entdyn::measures::EntropyKind;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Two-qubit entanglement dynamics under random interactions.
#[derive(Debug, Parser)]
#[command(name = "entdyn", version, about, max_term_width = 100)]
pub struct Cli {
    /// Worker threads for ensemble runs (0 or omitted: one per core).
    /// Results are independent of thread count.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Monte Carlo ensemble over quenched (time-independent) random couplings.
    Quenched(QuenchedArgs),
    /// Monte Carlo ensemble over temporally fluctuating random couplings.
    Temporal(TemporalArgs),
    /// Entanglement statistics of Haar-random pure two-qubit states.
    HaarBaseline(HaarArgs),
    /// Verify the invariant-metric identities of the unitary-group chart.
    GeometryCheck(GeometryArgs),
    /// Tabulate a closed-form reference curve (no sampling involved).
    Analytic(AnalyticArgs),
}

/// Output destination flags shared by the series-producing subcommands.
#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also render the series as an SVG plot.
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// Omit the `# generated:` timestamp comment (for reproducible output).
    #[arg(long)]
    pub no_timestamp: bool,
}

/// Output destination flags for the report-style subcommands (no plot).
#[derive(Debug, Args)]
pub struct ReportOutputArgs {
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Omit the timestamp field (for reproducible output).
    #[arg(long)]
    pub no_timestamp: bool,
}

#[derive(Debug, Args)]
pub struct QuenchedArgs {
    /// TOML or JSON file with run parameters; flags override its entries.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Weight of |00⟩ in the initial state c|00⟩ + √(1−c²)|11⟩,
    /// 0 ≤ c ≤ 1/√2 [default: 0].
    #[arg(long)]
    pub c: Option<f64>,
    /// Largest scaled time on the grid [default: 5].
    #[arg(long)]
    pub tau_max: Option<f64>,
    /// Number of grid points, both endpoints included [default: 101].
    #[arg(long)]
    pub tau_steps: Option<usize>,
    /// Number of Monte Carlo trajectories [default: 4096].
    #[arg(long)]
    pub trajectories: Option<u64>,
    /// Master RNG seed (required; may come from the config file).
    #[arg(long)]
    pub seed: Option<u64>,
    /// Averaging order [default: average-of-entanglement].
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    /// Entanglement measure to record [default: linear].
    #[arg(long, value_enum)]
    pub observable: Option<ObservableArg>,
    /// Order q for the renyi and tsallis observables.
    #[arg(long)]
    pub q: Option<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct TemporalArgs {
    /// TOML or JSON file with run parameters; flags override its entries.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Initial state [default: bell].
    #[arg(long, value_enum)]
    pub start: Option<StartArg>,
    /// Angle for `--start phi`: the state cos(φ)|00⟩ + sin(φ)|11⟩,
    /// 0 < φ ≤ π/4.
    #[arg(long)]
    pub phi: Option<f64>,
    /// Diffusion constant of the fluctuating coupling [default: 0.5].
    #[arg(long)]
    pub d: Option<f64>,
    /// Integrator step; 2·d·dt must stay ≤ 0.01 [default: 0.001].
    #[arg(long)]
    pub dt: Option<f64>,
    /// Largest physical time on the grid [default: 0.6].
    #[arg(long)]
    pub t_max: Option<f64>,
    /// Number of grid points, both endpoints included; every grid time
    /// must be an integer multiple of dt [default: 61].
    #[arg(long)]
    pub t_steps: Option<usize>,
    /// Number of Monte Carlo trajectories [default: 4096].
    #[arg(long)]
    pub trajectories: Option<u64>,
    /// Master RNG seed (required; may come from the config file).
    #[arg(long)]
    pub seed: Option<u64>,
    /// Averaging order [default: average-of-entanglement].
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    /// Entanglement measure to record [default: linear].
    #[arg(long, value_enum)]
    pub observable: Option<ObservableArg>,
    /// Order q for the renyi and tsallis observables.
    #[arg(long)]
    pub q: Option<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct HaarArgs {
    /// TOML or JSON file with run parameters; flags override its entries.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Number of Haar draws [default: 100000].
    #[arg(long)]
    pub samples: Option<u64>,
    /// Master RNG seed (required; may come from the config file).
    #[arg(long)]
    pub seed: Option<u64>,
    /// Entanglement measure to average [default: von-neumann].
    #[arg(long, value_enum)]
    pub observable: Option<ObservableArg>,
    /// Order q for the renyi and tsallis observables.
    #[arg(long)]
    pub q: Option<f64>,
    #[command(flatten)]
    pub output: ReportOutputArgs,
}

#[derive(Debug, Args)]
pub struct GeometryArgs {
    /// TOML or JSON file with run parameters; flags override its entries.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Interior chart points for the eigenfunction identities [default: 5].
    #[arg(long)]
    pub points: Option<usize>,
    /// Finite-difference step [default: 0.001].
    #[arg(long)]
    pub h: Option<f64>,
    /// Interior chart points for the volume-density ratio [default: 20].
    #[arg(long)]
    pub ratio_points: Option<usize>,
    /// Monte Carlo samples for the group-volume estimate (0: skip)
    /// [default: 0].
    #[arg(long)]
    pub volume_samples: Option<u64>,
    /// Master RNG seed (required; may come from the config file).
    #[arg(long)]
    pub seed: Option<u64>,
    #[command(flatten)]
    pub output: ReportOutputArgs,
}

#[derive(Debug, Args)]
pub struct AnalyticArgs {
    /// TOML or JSON file with run parameters; flags override its entries.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Which closed-form curve to tabulate (required; may come from the
    /// config file).
    #[arg(long, value_enum)]
    pub curve: Option<CurveArg>,
    /// Largest scaled time on the grid [default: 5].
    #[arg(long)]
    pub tau_max: Option<f64>,
    /// Number of grid points, both endpoints included [default: 201].
    #[arg(long)]
    pub tau_steps: Option<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Averaging order, as a CLI/config token.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModeArg {
    /// Measure each trajectory, then average the measurements.
    AverageOfEntanglement,
    /// Average the states, then measure the mixed average.
    EntanglementOfAverage,
}

impl From<ModeArg> for AveragingMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::AverageOfEntanglement => AveragingMode::AverageOfEntanglement,
            ModeArg::EntanglementOfAverage => AveragingMode::EntanglementOfAverage,
        }
    }
}

/// Entanglement measure, as a CLI/config token. `renyi` and `tsallis`
/// additionally need `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ObservableArg {
    /// Von Neumann entropy of one qubit's reduced state (natural log).
    VonNeumann,
    /// Linear entropy 1 − Tr ρ² of one qubit's reduced state.
    Linear,
    /// Rényi entropy of order q.
    Renyi,
    /// Tsallis entropy of order q.
    Tsallis,
    /// Entanglement of formation (natural log).
    Eof,
}

impl ObservableArg {
    /// The token used on the command line and in CSV output.
    pub fn token(self) -> &'static str {
        match self {
            ObservableArg::VonNeumann => "von-neumann",
            ObservableArg::Linear => "linear",
            ObservableArg::Renyi => "renyi",
            ObservableArg::Tsallis => "tsallis",
            ObservableArg::Eof => "eof",
        }
    }

    /// Human-readable name for plot labels.
    pub fn label(self, q: Option<f64>) -> String {
        match self {
            ObservableArg::VonNeumann => "von Neumann entropy".into(),
            ObservableArg::Linear => "linear entropy".into(),
            ObservableArg::Renyi => format!("Renyi entropy (q = {})", q.unwrap_or(f64::NAN)),
            ObservableArg::Tsallis => format!("Tsallis entropy (q = {})", q.unwrap_or(f64::NAN)),
            ObservableArg::Eof => "entanglement of formation".into(),
        }
    }
}

/// Combine the observable token with its optional order into the library
/// observable, rejecting a stray or missing `q`.
pub fn resolve_observable(arg: ObservableArg, q: Option<f64>) -> Result<Observable, CliError> {
    let needs_q = matches!(arg, ObservableArg::Renyi | ObservableArg::Tsallis);
    if needs_q && q.is_none() {
        return Err(CliError::Validation(format!(
            "observable `{}` needs an order: pass --q",
            arg.token()
        )));
    }
    if !needs_q && q.is_some() {
        return Err(CliError::Validation(format!(
            "--q is only meaningful with `renyi` or `tsallis`, not `{}`",
            arg.token()
        )));
    }
    Ok(match arg {
        ObservableArg::VonNeumann => Observable::Entropy(EntropyKind::VonNeumann),
        ObservableArg::Linear => Observable::Entropy(EntropyKind::Linear),
        ObservableArg::Renyi => Observable::Entropy(EntropyKind::renyi(q.unwrap())?),
        ObservableArg::Tsallis => Observable::Entropy(EntropyKind::tsallis(q.unwrap())?),
        ObservableArg::Eof => Observable::EntanglementOfFormation,
    })
}

/// Initial state of a temporal run, as a CLI/config token.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StartArg {
    /// The maximally entangled state (|00⟩ + |11⟩)/√2.
    Bell,
    /// The product state |11⟩.
    Unentangled,
    /// cos(φ)|00⟩ + sin(φ)|11⟩; pass the angle with --phi.
    Phi,
}

/// Closed-form curves available to the `analytic` subcommand. All are
/// functions of scaled time, so no diffusion constant is needed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CurveArg {
    /// Ensemble-averaged linear entropy of the quenched run from |11⟩.
    QuenchedLinear,
    /// Overall dephasing factor f(τ) of the quenched averaged state.
    QuenchedF,
    /// Entanglement of formation of the quenched averaged state, Bell start.
    QuenchedEofBell,
    /// Averaged linear entropy under the fluctuating coupling, Bell start.
    TemporalLinearBell,
    /// Averaged linear entropy under the fluctuating coupling, |11⟩ start.
    TemporalLinearUnentangled,
    /// Early-time von Neumann expansion, Bell start.
    TemporalVnEarlyBell,
    /// Early-time von Neumann expansion, |11⟩ start.
    TemporalVnEarlyUnentangled,
}

impl CurveArg {
    /// Human-readable name for plot labels.
    pub fn label(self) -> &'static str {
        match self {
            CurveArg::QuenchedLinear => "averaged linear entropy (quenched, |11> start)",
            CurveArg::QuenchedF => "dephasing factor f",
            CurveArg::QuenchedEofBell => "EoF of averaged state (quenched, Bell start)",
            CurveArg::TemporalLinearBell => "averaged linear entropy (fluctuating, Bell start)",
            CurveArg::TemporalLinearUnentangled => {
                "averaged linear entropy (fluctuating, |11> start)"
            }
            CurveArg::TemporalVnEarlyBell => "early-time von Neumann expansion (Bell start)",
            CurveArg::TemporalVnEarlyUnentangled => {
                "early-time von Neumann expansion (|11> start)"
            }
        }
    }
}
