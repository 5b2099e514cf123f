//! Entanglement dynamics of two qubits under random interactions.
//!
//! Two qubits coupled by a random Hamiltonian lose and redistribute their
//! entanglement in ways that are exactly solvable on average. This crate
//! simulates the two standard disorder models and carries the matching
//! closed forms, so every Monte Carlo estimate can be checked against an
//! exact curve:
//!
//! - [`quenched`] — each realization draws one GUE Hamiltonian and keeps it
//!   forever. Ensemble averages dephase in the disorder, with polynomial ×
//!   Gaussian decay laws and a finite-time death of the entanglement of
//!   formation.
//! - [`temporal`] — the coupling fluctuates as white noise. Averages relax
//!   exponentially towards the maximally mixed state at observable-specific
//!   rates.
//! - [`su4`] — an Euler-angle chart of the unitary group with an exact
//!   normalized Haar density, used both for sampling and as the stationary
//!   baseline.
//! - [`geometry`] — the invariant metric induced on the chart, its volume
//!   element, and a flux-form Laplace–Beltrami operator for verifying that
//!   the averaged state and reduced linear entropy are eigenfunctions.
//! - [`measures`] — reduced-state entropies (von Neumann, linear, Rényi,
//!   Tsallis), concurrence, and entanglement of formation.
//! - [`ensemble`] — deterministic parallel Monte Carlo with per-trajectory
//!   RNG streams: results depend on the seed, never on the thread count.
//! - [`linalg`] — small fixed-size complex matrices, a Jacobi eigensolver,
//!   partial traces, and a Cayley integrator step.
//!
//! # Quick start
//!
//! Average the linear entropy of one qubit over quenched disorder and
//! compare with the closed form:
//!
//! ```
//! use entdyn::ensemble::{superposition_state, AveragingMode, Observable};
//! use entdyn::measures::EntropyKind;
//! use entdyn::quenched::{
//!     averaged_linear_entropy_analytic, run_quenched_ensemble, QuenchedEnsembleConfig,
//! };
//!
//! # fn main() -> entdyn::Result<()> {
//! let cfg = QuenchedEnsembleConfig {
//!     initial: superposition_state(0.0)?, // the product state |11⟩
//!     grid: vec![0.0, 0.5, 1.0, 2.0],
//!     trajectories: 2048,
//!     seed: 7,
//!     mode: AveragingMode::AverageOfEntanglement,
//!     observable: Observable::Entropy(EntropyKind::Linear),
//! };
//! let out = run_quenched_ensemble(&cfg)?;
//! for (tau, (mean, stderr)) in cfg
//!     .grid
//!     .iter()
//!     .zip(out.series.mean.iter().zip(&out.series.stderr))
//! {
//!     let exact = averaged_linear_entropy_analytic(*tau);
//!     assert!((mean - exact).abs() < 4.0 * stderr + 1e-12);
//! }
//! # Ok(())
//! # }
//! ```
//!
//! The `entdyn` binary in this workspace exposes the same runs as CLI
//! subcommands with CSV/SVG output; see the guide in `book/`.

// Indexed loops in the numeric kernels follow the matrix algebra they
// implement; iterator rewrites would obscure the index bookkeeping.
#![allow(clippy::needless_range_loop)]

pub mod ensemble;
pub mod error;
pub mod geometry;
pub mod linalg;
pub mod measures;
pub mod quenched;
pub mod su4;
pub mod temporal;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book;
