//! Differential geometry of the Euler-angle chart: the induced metric
//! g_ij = Re Tr[∂_i U ∂_j U†] from central differences, the
//! Laplace–Beltrami operator in flux (divergence) form, and numerical
//! checks of two eigenfunction identities satisfied by the two-qubit state
//! and its reduced linear entropy.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Mat4;
use crate::su4::{
    angle_ranges, density_from_angles, euler_unitary, haar_density,
    reduced_eigenvalues_from_angles, sample_haar_angles, Angles, ANGLE_COUNT,
};

/// Interior margin in units of the stencil step: every coordinate must sit
/// at least this many steps away from its range boundary so that all nested
/// finite-difference evaluations stay inside the chart.
pub const INTERIOR_MARGIN_STEPS: f64 = 10.0;

/// Acceptance tolerance on the eigenfunction identity residuals at
/// h = 1e−3.
pub const IDENTITY_TOL: f64 = 1e-2;

/// Largest admissible condition number of the metric before linear solves
/// are refused.
pub const METRIC_CONDITION_LIMIT: f64 = 1e10;

/// Number of scalar fields checked together by [`check_identities`]:
/// 16 real parts + 16 imaginary parts of the state, plus the reduced
/// linear entropy.
const FIELD_COUNT: usize = 33;

/// The metric of the chart at one point, from central differences with
/// step `h`.
#[derive(Debug, Clone)]
pub struct MetricAtPoint {
    /// Chart point the metric was evaluated at.
    pub point: Angles,
    /// Finite-difference step used.
    pub h: f64,
    /// The 15×15 symmetric metric matrix.
    pub g: DMatrix<f64>,
}

/// Whether every coordinate keeps [`INTERIOR_MARGIN_STEPS`]·h of clearance
/// from its range boundaries.
pub fn is_interior(a: &Angles, h: f64) -> bool {
    let margin = INTERIOR_MARGIN_STEPS * h;
    angle_ranges()
        .iter()
        .zip(a)
        .all(|((lo, hi), &x)| x >= lo + margin && x <= hi - margin)
}

fn require_interior(a: &Angles, h: f64) -> Result<()> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::Validation(format!(
            "stencil step must be positive and finite, got {h}"
        )));
    }
    if !is_interior(a, h) {
        return Err(Error::Validation(format!(
            "point is within {INTERIOR_MARGIN_STEPS}·h = {} of a chart boundary",
            INTERIOR_MARGIN_STEPS * h
        )));
    }
    Ok(())
}

fn shifted(a: &Angles, i: usize, delta: f64) -> Angles {
    let mut b = *a;
    b[i] += delta;
    b
}

/// Metric from central differences, without the interior-margin check
/// (callers guarantee the ±h stencil stays inside the chart).
fn raw_metric(a: &Angles, h: f64) -> Result<DMatrix<f64>> {
    let mut deriv: Vec<Mat4> = Vec::with_capacity(ANGLE_COUNT);
    let scale = C64::new(1.0 / (2.0 * h), 0.0);
    for i in 0..ANGLE_COUNT {
        let up = euler_unitary(&shifted(a, i, h))?;
        let dn = euler_unitary(&shifted(a, i, -h))?;
        deriv.push(up.matrix().sub(dn.matrix()).scale(scale));
    }
    let mut g = DMatrix::zeros(ANGLE_COUNT, ANGLE_COUNT);
    for i in 0..ANGLE_COUNT {
        for j in 0..=i {
            let mut acc = 0.0;
            for r in 0..4 {
                for c in 0..4 {
                    let x = deriv[i].0[r][c];
                    let y = deriv[j].0[r][c];
                    acc += x.re * y.re + x.im * y.im;
                }
            }
            g[(i, j)] = acc;
            g[(j, i)] = acc;
        }
    }
    Ok(g)
}

/// Evaluate the metric at an interior point.
pub fn metric_at(a: &Angles, h: f64) -> Result<MetricAtPoint> {
    require_interior(a, h)?;
    Ok(MetricAtPoint {
        point: *a,
        h,
        g: raw_metric(a, h)?,
    })
}

struct MetricFactors {
    sqrt_det: f64,
    lu: nalgebra::LU<f64, nalgebra::Dyn, nalgebra::Dyn>,
}

fn factor_metric(g: &DMatrix<f64>) -> Result<MetricFactors> {
    let eig = g.clone().symmetric_eigen();
    let (mut min, mut max) = (f64::INFINITY, 0.0f64);
    for &l in eig.eigenvalues.iter() {
        min = min.min(l);
        max = max.max(l);
    }
    if min.is_nan() || min <= 0.0 {
        return Err(Error::Numeric(format!(
            "metric is not positive definite (smallest eigenvalue {min})"
        )));
    }
    if max / min > METRIC_CONDITION_LIMIT {
        return Err(Error::Numeric(format!(
            "metric condition number {} exceeds {METRIC_CONDITION_LIMIT}",
            max / min
        )));
    }
    let det: f64 = eig.eigenvalues.iter().product();
    Ok(MetricFactors {
        sqrt_det: det.sqrt(),
        lu: g.clone().lu(),
    })
}

/// √det g at a previously evaluated metric point.
pub fn sqrt_det_metric(m: &MetricAtPoint) -> Result<f64> {
    factor_metric(&m.g).map(|f| f.sqrt_det)
}

/// The constant that relates the metric volume element to the normalized
/// group-measure density of the chart: √det g = 128√2 · μ.
pub fn expected_density_ratio() -> f64 {
    128.0 * std::f64::consts::SQRT_2
}

/// Laplace–Beltrami operator in flux form,
///
/// Δf = (1/√g) ∂_i (√g g^{ij} ∂_j f),
///
/// evaluated with nested central differences of step `h` at an interior
/// point. Inverse-metric applications use LU solves, never an explicit
/// inverse.
pub fn laplace_beltrami<F>(a: &Angles, h: f64, f: F) -> Result<f64>
where
    F: Fn(&Angles) -> Result<f64>,
{
    let (delta, _) = lb_vector::<1, _>(a, h, &|x| Ok([f(x)?]))?;
    Ok(delta[0])
}

/// Flux-form Laplacian of K scalar fields sharing all metric work.
fn lb_vector<const K: usize, F>(a: &Angles, h: f64, fields: &F) -> Result<([f64; K], [f64; K])>
where
    F: Fn(&Angles) -> Result<[f64; K]>,
{
    require_interior(a, h)?;
    let center = factor_metric(&raw_metric(a, h)?)?;
    let mut divergence = [0.0; K];
    for i in 0..ANGLE_COUNT {
        let mut face = [[0.0; K]; 2];
        for (side, slot) in [h, -h].into_iter().zip(face.iter_mut()) {
            let x = shifted(a, i, side);
            let fac = factor_metric(&raw_metric(&x, h)?)?;
            let mut grad = DMatrix::zeros(ANGLE_COUNT, K);
            for j in 0..ANGLE_COUNT {
                let up = fields(&shifted(&x, j, h))?;
                let dn = fields(&shifted(&x, j, -h))?;
                for k in 0..K {
                    grad[(j, k)] = (up[k] - dn[k]) / (2.0 * h);
                }
            }
            let y = fac
                .lu
                .solve(&grad)
                .ok_or_else(|| Error::Numeric("metric solve failed".into()))?;
            for k in 0..K {
                slot[k] = fac.sqrt_det * y[(i, k)];
            }
        }
        for k in 0..K {
            divergence[k] += (face[0][k] - face[1][k]) / (2.0 * h);
        }
    }
    let value = fields(a)?;
    let mut delta = [0.0; K];
    for k in 0..K {
        delta[k] = divergence[k] / center.sqrt_det;
    }
    Ok((delta, value))
}

/// All fields entering the identity checks, evaluated from the closed-form
/// state: Re ρ (16), Im ρ (16), then the reduced linear entropy.
fn identity_fields(a: &Angles) -> Result<[f64; FIELD_COUNT]> {
    let rho = density_from_angles(a)?;
    let kappa = reduced_eigenvalues_from_angles(a)?;
    let mut out = [0.0; FIELD_COUNT];
    for r in 0..4 {
        for c in 0..4 {
            out[4 * r + c] = rho.matrix().0[r][c].re;
            out[16 + 4 * r + c] = rho.matrix().0[r][c].im;
        }
    }
    out[32] = 1.0 - kappa[0] * kappa[0] - kappa[1] * kappa[1];
    Ok(out)
}

/// Residuals of the two eigenfunction identities over a set of points.
#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    /// Stencil step used.
    pub h: f64,
    /// Points successfully evaluated.
    pub evaluated: usize,
    /// Per-point failures (points skipped with their error), if any.
    pub failures: Vec<String>,
    /// Max entrywise residual of Δρ + 8ρ − 2𝟙 over all points.
    pub max_state_residual: f64,
    /// Max residual of ΔL + 20L − 4 over all points.
    pub max_entropy_residual: f64,
    /// True when every point evaluated and both residuals are within
    /// [`IDENTITY_TOL`].
    pub pass: bool,
}

/// Check, at each point, that the closed-form state and reduced linear
/// entropy are eigenfunctions of the Laplace–Beltrami operator:
///
/// Δρ = −8ρ + 2𝟙  and  ΔL = −20L + 4.
///
/// Failures at individual points (e.g. insufficient boundary clearance)
/// are collected in the report instead of aborting the scan.
pub fn check_identities(points: &[Angles], h: f64) -> IdentityReport {
    let mut report = IdentityReport {
        h,
        evaluated: 0,
        failures: Vec::new(),
        max_state_residual: 0.0,
        max_entropy_residual: 0.0,
        pass: false,
    };
    for (idx, point) in points.iter().enumerate() {
        match lb_vector::<FIELD_COUNT, _>(point, h, &identity_fields) {
            Err(e) => report.failures.push(format!("point {idx}: {e}")),
            Ok((delta, value)) => {
                report.evaluated += 1;
                for r in 0..4 {
                    for c in 0..4 {
                        let target = if r == c { 2.0 } else { 0.0 };
                        let re =
                            (delta[4 * r + c] + 8.0 * value[4 * r + c] - target).abs();
                        let im =
                            (delta[16 + 4 * r + c] + 8.0 * value[16 + 4 * r + c]).abs();
                        report.max_state_residual =
                            report.max_state_residual.max(re).max(im);
                    }
                }
                let ent = (delta[32] + 20.0 * value[32] - 4.0).abs();
                report.max_entropy_residual = report.max_entropy_residual.max(ent);
            }
        }
    }
    report.pass = report.evaluated > 0
        && report.failures.is_empty()
        && report.max_state_residual <= IDENTITY_TOL
        && report.max_entropy_residual <= IDENTITY_TOL;
    report
}

/// √det g / μ over a set of points.
#[derive(Debug, Clone, Serialize)]
pub struct RatioReport {
    /// Stencil step used.
    pub h: f64,
    /// The ratio at each point.
    pub ratios: Vec<f64>,
    /// Mean ratio.
    pub mean: f64,
    /// (max − min)/mean over the points.
    pub relative_spread: f64,
}

/// Measure the ratio of the metric volume element to the group-measure
/// density at each point. The chart is measure-compatible: the ratio is
/// the constant [`expected_density_ratio`], so the relative spread is
/// pure discretization noise.
pub fn metric_density_ratio_spread(points: &[Angles], h: f64) -> Result<RatioReport> {
    if points.is_empty() {
        return Err(Error::Validation("no points supplied".into()));
    }
    let mut ratios = Vec::with_capacity(points.len());
    for point in points {
        let m = metric_at(point, h)?;
        let mu = haar_density(point);
        if mu <= 0.0 {
            return Err(Error::Numeric(format!(
                "group-measure density {mu} is not positive at the sample point"
            )));
        }
        ratios.push(sqrt_det_metric(&m)? / mu);
    }
    let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
    let max = ratios.iter().cloned().fold(f64::MIN, f64::max);
    let min = ratios.iter().cloned().fold(f64::MAX, f64::min);
    Ok(RatioReport {
        h,
        ratios,
        mean,
        relative_spread: (max - min) / mean,
    })
}

/// Draw group-measure-distributed points until one clears the interior
/// margin for step `h`.
pub fn sample_interior_point<R: Rng + ?Sized>(rng: &mut R, h: f64) -> Result<Angles> {
    if !(h > 0.0 && h.is_finite() && INTERIOR_MARGIN_STEPS * h < 0.25) {
        return Err(Error::Validation(format!(
            "step {h} leaves no interior to sample"
        )));
    }
    for _ in 0..10_000 {
        let a = sample_haar_angles(rng);
        if is_interior(&a, h) {
            return Ok(a);
        }
    }
    Err(Error::Numeric(
        "failed to draw an interior point in 10000 attempts".into(),
    ))
}
