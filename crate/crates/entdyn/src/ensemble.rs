//! Deterministic Monte Carlo machinery shared by the quenched and temporal
//! simulations.
//!
//! Trajectories are split into fixed-size batches. Each batch is an
//! independent work unit seeded by the trajectory index alone (a dedicated
//! counter-mode stream per trajectory), and batch results are reduced in
//! batch order, so a run's output is bit-identical for any thread count.

use num_complex::Complex64 as C64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{partial_trace, Density4, Mat4, Qubit, Vec4};
use crate::measures::{entanglement_of_formation, entropy, EntropyKind};

/// Trajectories per batch: the parallel grain and the variance-estimation
/// block for [`AveragingMode::EntanglementOfAverage`].
pub const BATCH_SIZE: u64 = 1024;

/// Order in which the ensemble average and the entanglement measure are
/// applied. The two do not commute: measures are nonlinear in the state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AveragingMode {
    /// Evaluate the measure on each (pure) trajectory state, then average
    /// the resulting numbers.
    AverageOfEntanglement,
    /// Average the trajectory states into one mixed state, then evaluate
    /// the measure on it.
    EntanglementOfAverage,
}

/// Entanglement measure evaluated along the run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Observable {
    /// An entropy of the reduced state of the first qubit.
    Entropy(EntropyKind),
    /// Wootters' entanglement of formation of the full two-qubit state.
    EntanglementOfFormation,
}

impl Observable {
    /// Check any parameters carried by the observable (entropy orders).
    pub fn validate(&self) -> Result<()> {
        match self {
            Observable::Entropy(kind) => kind.validate(),
            Observable::EntanglementOfFormation => Ok(()),
        }
    }

    /// Evaluate the measure on a (possibly mixed) two-qubit state.
    pub fn evaluate(&self, rho: &Density4) -> Result<f64> {
        match *self {
            Observable::Entropy(kind) => entropy(&partial_trace(rho, Qubit::First), kind),
            Observable::EntanglementOfFormation => entanglement_of_formation(rho),
        }
    }
}

/// A sampled observable along a time grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleSeries {
    /// Evaluation times (scaled time τ for the quenched runs).
    pub grid: Vec<f64>,
    /// Ensemble estimate at each grid time.
    pub mean: Vec<f64>,
    /// Standard error of each estimate. For
    /// [`AveragingMode::EntanglementOfAverage`] this is a batch-means
    /// estimate and is NaN when fewer than two batches ran.
    pub stderr: Vec<f64>,
    /// Number of trajectories.
    pub n: u64,
}

/// Full result of an ensemble run.
#[derive(Debug, Clone)]
pub struct EnsembleOutput {
    /// The observable series.
    pub series: EnsembleSeries,
    /// Trajectory-averaged state at each grid time.
    pub mean_states: Vec<Mat4>,
    /// Entrywise standard error of the mean state:
    /// √((Var Re + Var Im)/n) per matrix entry.
    pub state_stderr: Vec<[[f64; 4]; 4]>,
}

/// The maximally entangled state (|00⟩ + |11⟩)/√2.
pub fn bell_state() -> Vec4 {
    let a = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    [a, C64::new(0.0, 0.0), C64::new(0.0, 0.0), a]
}

/// The partially entangled family c·|00⟩ + √(1−c²)·|11⟩.
///
/// `c` ranges over [0, 1/√2]: c = 0 is the product state |11⟩ and c = 1/√2
/// is the maximally entangled [`bell_state`]. The concurrence of the state
/// is 2c·√(1−c²).
pub fn superposition_state(c: f64) -> Result<Vec4> {
    if !(0.0..=std::f64::consts::FRAC_1_SQRT_2 + 1e-12).contains(&c) {
        return Err(Error::Validation(format!(
            "superposition amplitude {c} outside [0, 1/√2]"
        )));
    }
    let c = c.min(std::f64::consts::FRAC_1_SQRT_2);
    Ok([
        C64::new(c, 0.0),
        C64::new(0.0, 0.0),
        C64::new(0.0, 0.0),
        C64::new((1.0 - c * c).max(0.0).sqrt(), 0.0),
    ])
}

/// Running sums produced by one batch of trajectories.
struct BatchSums {
    /// Σ observable per grid point (average-of-entanglement only).
    obs_sum: Vec<f64>,
    /// Σ observable² per grid point (average-of-entanglement only).
    obs_sum2: Vec<f64>,
    /// Σ state per grid point.
    state_sum: Vec<Mat4>,
    /// Σ |entry|² per grid point and matrix entry.
    abs2_sum: Vec<[[f64; 4]; 4]>,
    /// Observable of this batch's mean state (entanglement-of-average only).
    batch_obs: Vec<f64>,
}

/// Run `n` independent trajectories and accumulate `observable` at every
/// grid time.
///
/// `trajectory` must fill `out[i]` with the state at grid index `i` for one
/// realization, drawing randomness only from the supplied generator. The
/// generator for trajectory `t` is `ChaCha8Rng` seeded with `seed` on
/// stream `t`, so results do not depend on thread scheduling.
pub(crate) fn run_ensemble<F>(
    grid: &[f64],
    n: u64,
    seed: u64,
    mode: AveragingMode,
    observable: Observable,
    trajectory: F,
) -> Result<EnsembleOutput>
where
    F: Fn(&mut ChaCha8Rng, &mut [Mat4]) -> Result<()> + Sync,
{
    observable.validate()?;
    if grid.is_empty() {
        return Err(Error::Validation("empty time grid".into()));
    }
    if n < 2 {
        return Err(Error::Validation(format!(
            "need at least 2 trajectories for error bars, got {n}"
        )));
    }
    let g = grid.len();
    let num_batches = n.div_ceil(BATCH_SIZE);

    let batches: Vec<BatchSums> = (0..num_batches)
        .into_par_iter()
        .map(|b| {
            let first = b * BATCH_SIZE;
            let len = BATCH_SIZE.min(n - first);
            let mut sums = BatchSums {
                obs_sum: vec![0.0; g],
                obs_sum2: vec![0.0; g],
                state_sum: vec![Mat4::zero(); g],
                abs2_sum: vec![[[0.0; 4]; 4]; g],
                batch_obs: Vec::new(),
            };
            let mut states = vec![Mat4::zero(); g];
            for k in 0..len {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(first + k);
                trajectory(&mut rng, &mut states)?;
                for (i, state) in states.iter().enumerate() {
                    if mode == AveragingMode::AverageOfEntanglement {
                        let v = observable.evaluate(&Density4::new_unchecked(*state))?;
                        sums.obs_sum[i] += v;
                        sums.obs_sum2[i] += v * v;
                    }
                    sums.state_sum[i] = sums.state_sum[i].add(state);
                    for a in 0..4 {
                        for c in 0..4 {
                            sums.abs2_sum[i][a][c] += state.0[a][c].norm_sqr();
                        }
                    }
                }
            }
            if mode == AveragingMode::EntanglementOfAverage {
                let scale = C64::new(1.0 / len as f64, 0.0);
                for s in &sums.state_sum {
                    let mean = Density4::new(s.scale(scale))?;
                    sums.batch_obs.push(observable.evaluate(&mean)?);
                }
            }
            Ok(sums)
        })
        .collect::<Result<Vec<_>>>()?;

    // Serial reduction in batch order keeps the result exactly reproducible.
    let mut obs_sum = vec![0.0; g];
    let mut obs_sum2 = vec![0.0; g];
    let mut state_sum = vec![Mat4::zero(); g];
    let mut abs2_sum = vec![[[0.0; 4]; 4]; g];
    for batch in &batches {
        for i in 0..g {
            obs_sum[i] += batch.obs_sum[i];
            obs_sum2[i] += batch.obs_sum2[i];
            state_sum[i] = state_sum[i].add(&batch.state_sum[i]);
            for a in 0..4 {
                for c in 0..4 {
                    abs2_sum[i][a][c] += batch.abs2_sum[i][a][c];
                }
            }
        }
    }

    let nf = n as f64;
    let inv_n = C64::new(1.0 / nf, 0.0);
    let mut mean_states = Vec::with_capacity(g);
    let mut state_stderr = Vec::with_capacity(g);
    for i in 0..g {
        let mean = state_sum[i].scale(inv_n);
        let mut err = [[0.0; 4]; 4];
        for a in 0..4 {
            for c in 0..4 {
                let var = (abs2_sum[i][a][c] - nf * mean.0[a][c].norm_sqr()).max(0.0)
                    / (nf - 1.0);
                err[a][c] = (var / nf).sqrt();
            }
        }
        mean_states.push(mean);
        state_stderr.push(err);
    }

    let (mean, stderr) = match mode {
        AveragingMode::AverageOfEntanglement => {
            let mut mean = vec![0.0; g];
            let mut stderr = vec![0.0; g];
            for i in 0..g {
                let m = obs_sum[i] / nf;
                let var = ((obs_sum2[i] - nf * m * m) / (nf - 1.0)).max(0.0);
                mean[i] = m;
                stderr[i] = (var / nf).sqrt();
            }
            (mean, stderr)
        }
        AveragingMode::EntanglementOfAverage => {
            let mut mean = vec![0.0; g];
            let mut stderr = vec![0.0; g];
            let b = batches.len() as f64;
            for i in 0..g {
                mean[i] = observable.evaluate(&Density4::new(mean_states[i])?)?;
                if batches.len() < 2 {
                    stderr[i] = f64::NAN;
                } else {
                    let bm = batches.iter().map(|s| s.batch_obs[i]).sum::<f64>() / b;
                    let var = batches
                        .iter()
                        .map(|s| (s.batch_obs[i] - bm).powi(2))
                        .sum::<f64>()
                        / (b - 1.0);
                    stderr[i] = (var / b).sqrt();
                }
            }
            (mean, stderr)
        }
    };

    Ok(EnsembleOutput {
        series: EnsembleSeries {
            grid: grid.to_vec(),
            mean,
            stderr,
            n,
        },
        mean_states,
        state_stderr,
    })
}
