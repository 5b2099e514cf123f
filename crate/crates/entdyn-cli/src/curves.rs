//! Evaluation of the closed-form reference curves.
//!
//! Every curve is a function of scaled time alone. For the fluctuating-
//! coupling laws, which physically depend on the product D·t, the curves
//! fix D = 1/2 so that the argument equals the scaled time 2·D·t.

use entdyn::ensemble::bell_state;
use entdyn::linalg::Density4;
use entdyn::measures::{entanglement_of_formation, EntropyKind};
use entdyn::quenched::{averaged_linear_entropy_analytic, averaged_rho_analytic, f_tau};
use entdyn::temporal::{averaged_linear_entropy_temporal, early_time_expansion, ExpansionStart};

use crate::cli::CurveArg;
use crate::error::CliError;

/// Diffusion constant that makes physical time equal scaled time.
const UNIT_SCALE_D: f64 = 0.5;

/// Value of `curve` at scaled time `tau`.
pub fn curve_value(curve: CurveArg, tau: f64) -> Result<f64, CliError> {
    match curve {
        CurveArg::QuenchedLinear => Ok(averaged_linear_entropy_analytic(tau)),
        CurveArg::QuenchedF => Ok(f_tau(tau)),
        CurveArg::QuenchedEofBell => {
            let bell = Density4::pure(&bell_state())?;
            let avg = averaged_rho_analytic(tau, &bell)?;
            Ok(entanglement_of_formation(&avg)?)
        }
        CurveArg::TemporalLinearBell => {
            Ok(averaged_linear_entropy_temporal(tau, UNIT_SCALE_D, 0.5)?)
        }
        CurveArg::TemporalLinearUnentangled => {
            Ok(averaged_linear_entropy_temporal(tau, UNIT_SCALE_D, 0.0)?)
        }
        CurveArg::TemporalVnEarlyBell => Ok(early_time_expansion(
            EntropyKind::VonNeumann,
            &ExpansionStart::Bell,
            tau,
        )?),
        CurveArg::TemporalVnEarlyUnentangled => Ok(early_time_expansion(
            EntropyKind::VonNeumann,
            &ExpansionStart::Unentangled,
            tau,
        )?),
    }
}
