//! Two qubits driven by a temporally fluctuating random interaction: a
//! white-noise limit in which a fresh GUE matrix acts during every time
//! step. Includes the exact relaxation laws for the averaged state and
//! the averaged linear entropy, and closed-form early-time expansions of
//! several entropies.
//!
//! The natural time variable for the closed forms is the scaled time
//! τ = 2Dt, where D is the diffusion constant of the noise.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::ensemble::{run_ensemble, AveragingMode, EnsembleOutput, Observable};
use crate::error::{Error, Result};
use crate::linalg::{cayley_apply, Density4, Mat4, Vec4};
use crate::measures::EntropyKind;
use crate::quenched::{sample_gue, GueParams};

/// Largest admissible value of 2·D·dt. Beyond this the per-step rotation
/// angles are no longer small and the discretization error is not
/// negligible against typical Monte Carlo error bars.
pub const MAX_SCALED_STEP: f64 = 0.01;

/// Euler–Mascheroni constant γ (used by the von Neumann early-time law).
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Diffusion constant and integrator step of the fluctuating interaction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TemporalParams {
    d: f64,
    dt: f64,
}

impl TemporalParams {
    /// Noise with diffusion constant `d` integrated with step `dt`.
    /// Both must be positive and 2·d·dt must not exceed
    /// [`MAX_SCALED_STEP`].
    pub fn new(d: f64, dt: f64) -> Result<Self> {
        if !(d > 0.0 && d.is_finite()) {
            return Err(Error::Validation(format!(
                "diffusion constant must be positive and finite, got {d}"
            )));
        }
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::Validation(format!(
                "time step must be positive and finite, got {dt}"
            )));
        }
        if 2.0 * d * dt > MAX_SCALED_STEP {
            return Err(Error::Validation(format!(
                "2·D·dt = {} exceeds {MAX_SCALED_STEP}; shrink the step",
                2.0 * d * dt
            )));
        }
        Ok(Self { d, dt })
    }

    /// Diffusion constant D.
    pub fn d(&self) -> f64 {
        self.d
    }

    /// Integrator step dt.
    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// Scaled time τ = 2·D·t.
    pub fn scaled_time(&self, t: f64) -> f64 {
        2.0 * self.d * t
    }

    /// Standard deviation √(2D/dt) of the per-step interaction, chosen so
    /// that the accumulated phase variance grows linearly in time.
    pub fn step_sigma(&self) -> f64 {
        (2.0 * self.d / self.dt).sqrt()
    }
}

/// One-parameter family of pure states cos φ·|00⟩ + sin φ·|11⟩ with
/// φ ∈ (0, π/4]: from arbitrarily weakly entangled up to maximally
/// entangled at φ = π/4.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhiState {
    phi: f64,
}

impl PhiState {
    /// Requires 0 < φ ≤ π/4.
    pub fn new(phi: f64) -> Result<Self> {
        if !(phi > 0.0 && phi <= std::f64::consts::FRAC_PI_4) {
            return Err(Error::Validation(format!(
                "φ = {phi} outside (0, π/4]"
            )));
        }
        Ok(Self { phi })
    }

    /// The mixing angle φ.
    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// The state vector cos φ·|00⟩ + sin φ·|11⟩.
    pub fn state(&self) -> Vec4 {
        [
            C64::new(self.phi.cos(), 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(self.phi.sin(), 0.0),
        ]
    }

    /// Concurrence sin 2φ of the state.
    pub fn concurrence(&self) -> f64 {
        (2.0 * self.phi).sin()
    }
}

/// Evolve one pure state by `steps` fresh-noise Cayley steps, drawing a new
/// GUE interaction of scale [`TemporalParams::step_sigma`] each step.
/// Exactly norm-preserving up to solver roundoff.
pub fn brownian_trajectory<R: rand::Rng + ?Sized>(
    params: &TemporalParams,
    psi0: &Vec4,
    steps: u64,
    rng: &mut R,
) -> Result<Vec4> {
    let gue = GueParams::new(params.step_sigma())?;
    let mut psi = *psi0;
    for _ in 0..steps {
        let h = sample_gue(&gue, rng);
        psi = cayley_apply(&h, params.dt, &psi)?;
    }
    Ok(psi)
}

/// Exact average of the state over the noise: exponential relaxation of
/// every component onto the maximally mixed state,
///
/// ⟨ρ(t)⟩ = 𝟙/4 + (ρ₀ − 𝟙/4)·e^{−8Dt}.
pub fn averaged_rho_temporal_analytic(t: f64, d: f64, rho0: &Density4) -> Result<Density4> {
    if !(d > 0.0 && d.is_finite()) || !t.is_finite() || t < 0.0 {
        return Err(Error::Validation(format!(
            "need positive finite D and non-negative finite t, got D = {d}, t = {t}"
        )));
    }
    let w = (-8.0 * d * t).exp();
    let quarter = Mat4::identity().scale(C64::new(0.25, 0.0));
    let dev = rho0.matrix().sub(&quarter).scale(C64::new(w, 0.0));
    Density4::new(quarter.add(&dev))
}

/// Exact trajectory average of the linear entropy of either qubit:
/// exponential relaxation onto the Haar mean 1/5,
///
/// ⟨L(t)⟩ = 1/5 + (L₀ − 1/5)·e^{−20Dt},
///
/// where L₀ ∈ [0, 1/2] is the linear entropy of the (pure) initial state.
pub fn averaged_linear_entropy_temporal(t: f64, d: f64, l0: f64) -> Result<f64> {
    if !(d > 0.0 && d.is_finite()) || !t.is_finite() || t < 0.0 {
        return Err(Error::Validation(format!(
            "need positive finite D and non-negative finite t, got D = {d}, t = {t}"
        )));
    }
    if !(0.0..=0.5).contains(&l0) {
        return Err(Error::Validation(format!(
            "initial linear entropy {l0} outside [0, 1/2]"
        )));
    }
    Ok(0.2 + (l0 - 0.2) * (-20.0 * d * t).exp())
}

/// Initial condition of an early-time expansion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExpansionStart {
    /// The maximally entangled state (|00⟩ + |11⟩)/√2.
    Bell,
    /// A partially entangled [`PhiState`] with φ strictly inside (0, π/4).
    Phi(PhiState),
    /// Any product state.
    Unentangled,
}

/// First-order early-time expansion of an entanglement entropy under the
/// fluctuating interaction, as a function of the scaled time τ = 2Dt.
///
/// Closed forms exist for:
///
/// * `Bell` with any entropy kind — e.g. S_vN = ln 2 − 3τ and the Rényi-q
///   law ln 2 − 3qτ;
/// * `Phi(φ)` with von Neumann or Rényi-2 entropy (φ < π/4; the maximally
///   entangled endpoint is the `Bell` case);
/// * `Unentangled` with von Neumann entropy — the non-analytic law
///   τ(γ − ln τ) — or any order-2 entropy, which grows as 2τ.
///
/// Other combinations return a validation error.
pub fn early_time_expansion(
    kind: EntropyKind,
    start: &ExpansionStart,
    tau: f64,
) -> Result<f64> {
    kind.validate()?;
    if !tau.is_finite() || tau < 0.0 {
        return Err(Error::Validation(format!(
            "scaled time must be finite and non-negative, got {tau}"
        )));
    }
    match (kind, start) {
        (EntropyKind::VonNeumann, ExpansionStart::Bell) => {
            Ok(std::f64::consts::LN_2 - 3.0 * tau)
        }
        (EntropyKind::Renyi { q }, ExpansionStart::Bell) => {
            Ok(std::f64::consts::LN_2 - 3.0 * q * tau)
        }
        (EntropyKind::Tsallis { q }, ExpansionStart::Bell) => {
            let c0 = (1.0 - 2.0f64.powf(1.0 - q)) / (q - 1.0);
            Ok(c0 - 3.0 * q * 2.0f64.powf(1.0 - q) * tau)
        }
        (EntropyKind::Linear, ExpansionStart::Bell) => Ok(0.5 - 3.0 * tau),
        (EntropyKind::VonNeumann, ExpansionStart::Phi(p)) => {
            let phi = phi_interior(p)?;
            let (s, c) = phi.sin_cos();
            let lncot = (c / s).ln();
            let c0 = -s.ln() - c.ln() - (2.0 * phi).cos() * lncot;
            let c1 = 2.0 * (4.0 * phi).cos() / (2.0 * phi).cos() * lncot - 1.0;
            Ok(c0 + c1 * tau)
        }
        (EntropyKind::Renyi { q: 2.0 }, ExpansionStart::Phi(p)) => {
            let phi = phi_interior(p)?;
            let c4 = (4.0 * phi).cos();
            let c8 = (8.0 * phi).cos();
            let c0 = 4.0f64.ln() - (c4 + 3.0).ln();
            let c1 = (28.0 * c4 + 3.0 * c8 + 1.0) / ((c4 + 3.0) * (c4 + 3.0));
            Ok(c0 + c1 * tau)
        }
        (EntropyKind::VonNeumann, ExpansionStart::Unentangled) => {
            if tau == 0.0 {
                Ok(0.0)
            } else {
                Ok(tau * (EULER_GAMMA - tau.ln()))
            }
        }
        (EntropyKind::Linear, ExpansionStart::Unentangled) => Ok(2.0 * tau),
        (EntropyKind::Renyi { q: 2.0 }, ExpansionStart::Unentangled) => Ok(2.0 * tau),
        (EntropyKind::Tsallis { q: 2.0 }, ExpansionStart::Unentangled) => Ok(2.0 * tau),
        _ => Err(Error::Validation(format!(
            "no closed-form early-time expansion for {kind:?} from {start:?}"
        ))),
    }
}

fn phi_interior(p: &PhiState) -> Result<f64> {
    if p.phi() >= std::f64::consts::FRAC_PI_4 {
        return Err(Error::Validation(
            "φ = π/4 is the maximally entangled case; use ExpansionStart::Bell".into(),
        ));
    }
    Ok(p.phi())
}

/// Monte Carlo run over the fluctuating interaction.
#[derive(Debug, Clone)]
pub struct TemporalEnsembleConfig {
    /// Normalized initial pure state.
    pub initial: Vec4,
    /// Diffusion constant and integrator step.
    pub params: TemporalParams,
    /// Physical times at which the observable is recorded. Must be sorted,
    /// non-negative, and integer multiples of the step.
    pub grid: Vec<f64>,
    /// Number of independent trajectories.
    pub trajectories: u64,
    /// Master seed; each trajectory gets its own stream.
    pub seed: u64,
    /// Average-then-measure or measure-then-average.
    pub mode: AveragingMode,
    /// Entanglement measure to record.
    pub observable: Observable,
}

impl TemporalEnsembleConfig {
    /// Step index of every grid time.
    fn grid_steps(&self) -> Result<Vec<u64>> {
        let norm2: f64 = self.initial.iter().map(|z| z.norm_sqr()).sum();
        if (norm2 - 1.0).abs() > 1e-10 {
            return Err(Error::Validation(format!(
                "initial state has squared norm {norm2}, expected 1"
            )));
        }
        let dt = self.params.dt();
        let mut steps = Vec::with_capacity(self.grid.len());
        let mut prev = 0u64;
        for (i, &t) in self.grid.iter().enumerate() {
            if !t.is_finite() || t < 0.0 {
                return Err(Error::Validation(format!(
                    "grid time {t} must be finite and non-negative"
                )));
            }
            let ratio = t / dt;
            let k = ratio.round();
            if (ratio - k).abs() > 1e-9 * ratio.max(1.0) {
                return Err(Error::Validation(format!(
                    "grid time {t} is not an integer multiple of dt = {dt}"
                )));
            }
            let k = k as u64;
            if i > 0 && k < prev {
                return Err(Error::Validation(
                    "grid times must be sorted in increasing order".into(),
                ));
            }
            prev = k;
            steps.push(k);
        }
        Ok(steps)
    }
}

/// Run the fluctuating-interaction ensemble. Results are deterministic in
/// (`seed`, `trajectories`, `grid`, `params`) and independent of thread
/// count.
pub fn run_temporal_ensemble(cfg: &TemporalEnsembleConfig) -> Result<EnsembleOutput> {
    let steps = cfg.grid_steps()?;
    let gue = GueParams::new(cfg.params.step_sigma())?;
    let dt = cfg.params.dt();
    let psi0 = cfg.initial;
    run_ensemble(
        &cfg.grid,
        cfg.trajectories,
        cfg.seed,
        cfg.mode,
        cfg.observable,
        move |rng, out| {
            let mut psi = psi0;
            let mut done = 0u64;
            for (slot, &target) in out.iter_mut().zip(&steps) {
                while done < target {
                    let h = sample_gue(&gue, rng);
                    psi = cayley_apply(&h, dt, &psi)?;
                    done += 1;
                }
                *slot = Mat4::outer(&psi);
            }
            Ok(())
        },
    )
}
