//! Two qubits coupled by a single random Hermitian interaction drawn once
//! per trajectory (quenched disorder), plus the closed-form ensemble
//! averages the Monte Carlo runs are validated against.
//!
//! All closed forms are expressed in the scaled time τ = tσ, where σ² is
//! the variance of the diagonal matrix elements; the simulation fixes σ = 1
//! so the grid time is τ itself.

use num_complex::Complex64 as C64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::ensemble::{run_ensemble, AveragingMode, EnsembleOutput, Observable};
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, Density4, Hermitian4, Mat4, Vec4};
use crate::measures::concurrence;

/// Bisection window width for [`eof_vanishing_time`].
const BISECTION_WIDTH: f64 = 1e-9;
/// Latest time searched for the entanglement death point.
const BISECTION_HORIZON: f64 = 5.0;

/// Scale of the Gaussian unitary ensemble the interaction is drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GueParams {
    sigma: f64,
}

impl GueParams {
    /// Ensemble with diagonal standard deviation `sigma` (> 0). Off-diagonal
    /// entries have half the variance per real component, which makes the
    /// joint density invariant under unitary conjugation.
    pub fn new(sigma: f64) -> Result<Self> {
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(Error::Validation(format!(
                "GUE sigma must be positive and finite, got {sigma}"
            )));
        }
        Ok(Self { sigma })
    }

    /// The unit-scale ensemble (σ = 1) used by the trajectory runs.
    pub fn unit() -> Self {
        Self { sigma: 1.0 }
    }

    /// Diagonal standard deviation σ.
    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// The coefficient A = 1/(2σ²) in the weight exp(−A·Tr H²).
    pub fn inverse_variance(&self) -> f64 {
        1.0 / (2.0 * self.sigma * self.sigma)
    }
}

/// Draw one 4×4 GUE matrix: real N(0, σ²) diagonal entries and complex
/// off-diagonal entries with variance σ²/2 per real component.
pub fn sample_gue<R: Rng + ?Sized>(params: &GueParams, rng: &mut R) -> Hermitian4 {
    let s = params.sigma;
    let mut m = Mat4::zero();
    for j in 0..4 {
        let d: f64 = rng.sample(StandardNormal);
        m.0[j][j] = C64::new(s * d, 0.0);
        for k in (j + 1)..4 {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            let z = C64::new(s * re, s * im) * std::f64::consts::FRAC_1_SQRT_2;
            m.0[j][k] = z;
            m.0[k][j] = z.conj();
        }
    }
    Hermitian4::new(m).expect("constructed Hermitian")
}

/// Evolve a pure state under a fixed Hamiltonian: ψ(t) = e^{−iHt} ψ₀,
/// evaluated spectrally.
pub fn evolve_quenched(h: &Hermitian4, psi0: &Vec4, t: f64) -> Result<Vec4> {
    let sys = hermitian_eigen(h)?;
    let v = sys.vectors.matrix();
    let mut psi = [C64::new(0.0, 0.0); 4];
    for j in 0..4 {
        let mut w = C64::new(0.0, 0.0);
        for a in 0..4 {
            w += v.0[a][j].conj() * psi0[a];
        }
        let amp = C64::from_polar(1.0, -sys.values[j] * t) * w;
        for a in 0..4 {
            psi[a] += v.0[a][j] * amp;
        }
    }
    Ok(psi)
}

/// Ensemble average of e^{i(E_j − E_k)t} over GUE spectra for two distinct
/// levels, as a function of τ = tσ:
///
/// f(τ) = e^{−τ²} (72 − 288τ² + 276τ⁴ − 128τ⁶ + 25τ⁸ − 2τ¹⁰) / 72.
///
/// f(0) = 1 and f decays to 0 (from below) as τ → ∞.
pub fn f_tau(tau: f64) -> f64 {
    let u = tau * tau;
    let p = 72.0 + u * (-288.0 + u * (276.0 + u * (-128.0 + u * (25.0 + u * -2.0))));
    (-u).exp() * p / 72.0
}

/// Cancellation pattern of the four energy levels entering a dephasing
/// factor ⟨e^{i(E_j − E_k + E_l − E_m)t}⟩.
///
/// The class is determined by the multiset of net coefficients the four
/// distinct levels carry in the phase E_j − E_k + E_l − E_m.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IndexClass {
    /// The phase cancels identically (j = k, l = m or j = m, k = l):
    /// no decay, the factor is 1 for all times. 28 of the 256 tuples.
    DoublePair,
    /// Exactly one (+, −) pair cancels, leaving E_a − E_b with a ≠ b:
    /// net coefficients {+1, −1}. 144 tuples.
    AdjacentPair,
    /// The two like-sign slots coincide, leaving E_a + E_b − 2E_c or its
    /// negative: net coefficients {+1, +1, −2} or {−1, −1, +2}. 48 tuples.
    CrossPair,
    /// Both like-sign slots coincide, leaving 2(E_a − E_b):
    /// net coefficients {+2, −2}. 12 tuples.
    DoubleCross,
    /// No cancellation: four distinct levels with coefficients
    /// {+1, −1, +1, −1}. 24 tuples.
    AllDistinct,
}

/// Classify a four-index tuple (1-based level labels in 1..=4).
///
/// # Panics
///
/// Panics if any index is outside 1..=4; tuple indices are not data.
pub fn classify_indices(j: usize, k: usize, l: usize, m: usize) -> IndexClass {
    for idx in [j, k, l, m] {
        assert!((1..=4).contains(&idx), "level index {idx} outside 1..=4");
    }
    let mut coef = [0i32; 4];
    coef[j - 1] += 1;
    coef[k - 1] -= 1;
    coef[l - 1] += 1;
    coef[m - 1] -= 1;
    let mut sig: Vec<i32> = coef.iter().copied().filter(|&c| c != 0).collect();
    sig.sort_unstable();
    match sig.as_slice() {
        [] => IndexClass::DoublePair,
        [-1, 1] => IndexClass::AdjacentPair,
        [-2, 2] => IndexClass::DoubleCross,
        [-2, 1, 1] | [-1, -1, 2] => IndexClass::CrossPair,
        [-1, -1, 1, 1] => IndexClass::AllDistinct,
        other => unreachable!("impossible coefficient signature {other:?}"),
    }
}

/// GUE ensemble average of the dephasing factor for one index class, as a
/// function of τ = tσ. Every class starts at 1 and (except
/// [`IndexClass::DoublePair`]) decays to 0.
pub fn class_dephasing(class: IndexClass, tau: f64) -> f64 {
    let u = tau * tau;
    match class {
        IndexClass::DoublePair => 1.0,
        IndexClass::AdjacentPair => f_tau(tau),
        IndexClass::AllDistinct => {
            let p = 9.0 + u * (-72.0 + u * (168.0 + u * (-128.0 + u * 32.0)));
            (-2.0 * u).exp() * p / 9.0
        }
        IndexClass::CrossPair => {
            let p = 384.0
                + u * (-4608.0 + u * (13248.0 + u * (-13312.0 + u * (6192.0 + u * -864.0))));
            (-3.0 * u).exp() * p / 384.0
        }
        IndexClass::DoubleCross => {
            let p =
                9.0 + u * (-144.0 + u * (552.0 + u * (-1024.0 + u * (800.0 + u * -256.0))));
            (-4.0 * u).exp() * p / 9.0
        }
    }
}

/// Dephasing factor ⟨e^{i(E_j − E_k + E_l − E_m)t}⟩ for a specific tuple.
///
/// # Panics
///
/// Panics if any index is outside 1..=4.
pub fn dephasing_factor(j: usize, k: usize, l: usize, m: usize, tau: f64) -> f64 {
    class_dephasing(classify_indices(j, k, l, m), tau)
}

/// The quenched ensemble average of any pure initial state: a mixture of
/// the identity and the initial projector whose weight follows [`f_tau`],
///
/// ρ̄(τ) = (1 − f)/5 · 𝟙 + (1 + 4f)/5 · ρ₀.
///
/// Requires a pure `rho0`.
pub fn averaged_rho_analytic(tau: f64, rho0: &Density4) -> Result<Density4> {
    if (rho0.purity() - 1.0).abs() > 1e-10 {
        return Err(Error::Validation(format!(
            "averaged state requires a pure initial state, got purity {}",
            rho0.purity()
        )));
    }
    let f = f_tau(tau);
    let id = Mat4::identity().scale(C64::new((1.0 - f) / 5.0, 0.0));
    let proj = rho0.matrix().scale(C64::new((1.0 + 4.0 * f) / 5.0, 0.0));
    Density4::new(id.add(&proj))
}

/// Closed form for the trajectory average of the linear entropy of either
/// qubit, for an unentangled pure initial state:
///
/// ⟨L⟩(τ) = (13 − R_dist − 6·R_adj − 4·R_cross − 2·R_dcross)/70,
///
/// where the R's are the class dephasing factors. Starts at 0 and
/// saturates at 13/70.
pub fn averaged_linear_entropy_analytic(tau: f64) -> f64 {
    let dist = class_dephasing(IndexClass::AllDistinct, tau);
    let adj = class_dephasing(IndexClass::AdjacentPair, tau);
    let cross = class_dephasing(IndexClass::CrossPair, tau);
    let dcross = class_dephasing(IndexClass::DoubleCross, tau);
    (13.0 - dist - 6.0 * adj - 4.0 * cross - 2.0 * dcross) / 70.0
}

/// First time at which the entanglement of formation of the averaged state
/// [`averaged_rho_analytic`] hits zero, located by bisection on the
/// concurrence to width 1e−9.
///
/// Returns 0 for initial states that are already unentangled, and
/// `Error::NotFound` if the concurrence has not died by τ = 5 (it always
/// does for this ensemble; the guard protects against misuse).
pub fn eof_vanishing_time(rho0: &Density4) -> Result<f64> {
    let c_at = |tau: f64| -> Result<f64> { concurrence(&averaged_rho_analytic(tau, rho0)?) };
    if c_at(0.0)? <= 0.0 {
        return Ok(0.0);
    }
    if c_at(BISECTION_HORIZON)? > 1e-12 {
        return Err(Error::NotFound(format!(
            "concurrence still positive at τ = {BISECTION_HORIZON}"
        )));
    }
    let (mut lo, mut hi) = (0.0, BISECTION_HORIZON);
    while hi - lo > BISECTION_WIDTH {
        let mid = 0.5 * (lo + hi);
        if c_at(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Monte Carlo run over quenched interactions: each trajectory draws one
/// unit-scale GUE Hamiltonian and evolves the initial state coherently.
#[derive(Debug, Clone)]
pub struct QuenchedEnsembleConfig {
    /// Normalized initial pure state.
    pub initial: Vec4,
    /// Scaled times τ at which the observable is recorded.
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

impl QuenchedEnsembleConfig {
    fn validate(&self) -> Result<()> {
        let norm2: f64 = self.initial.iter().map(|z| z.norm_sqr()).sum();
        if (norm2 - 1.0).abs() > 1e-10 {
            return Err(Error::Validation(format!(
                "initial state has squared norm {norm2}, expected 1"
            )));
        }
        if self.grid.iter().any(|t| !t.is_finite() || *t < 0.0) {
            return Err(Error::Validation(
                "grid times must be finite and non-negative".into(),
            ));
        }
        Ok(())
    }
}

/// Run the quenched ensemble. Results are deterministic in
/// (`seed`, `trajectories`, `grid`) and independent of thread count.
pub fn run_quenched_ensemble(cfg: &QuenchedEnsembleConfig) -> Result<EnsembleOutput> {
    cfg.validate()?;
    let psi0 = cfg.initial;
    let grid = cfg.grid.clone();
    run_ensemble(
        &cfg.grid,
        cfg.trajectories,
        cfg.seed,
        cfg.mode,
        cfg.observable,
        move |rng, out| {
            let h = sample_gue(&GueParams::unit(), rng);
            let sys = hermitian_eigen(&h)?;
            let v = sys.vectors.matrix();
            // Factor the evolution once: w = V†ψ₀, then only the phases
            // change along the grid.
            let mut w = [C64::new(0.0, 0.0); 4];
            for (j, wj) in w.iter_mut().enumerate() {
                for a in 0..4 {
                    *wj += v.0[a][j].conj() * psi0[a];
                }
            }
            for (slot, &tau) in out.iter_mut().zip(&grid) {
                let mut psi = [C64::new(0.0, 0.0); 4];
                for j in 0..4 {
                    let amp = C64::from_polar(1.0, -sys.values[j] * tau) * w[j];
                    for a in 0..4 {
                        psi[a] += v.0[a][j] * amp;
                    }
                }
                *slot = Mat4::outer(&psi);
            }
            Ok(())
        },
    )
}
