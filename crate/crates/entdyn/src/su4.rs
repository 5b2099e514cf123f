//! The 15-angle Euler chart on SU(4).
//!
//! Provides the standard Gell-Mann-like generator basis, the closed-form
//! Euler factor product, the Haar density on the chart with two independent
//! Haar samplers (inverse-CDF on the angles, and Ginibre + QR), and the
//! closed-form pure state reached from the reference product state |11⟩:
//! its full density matrix, its one-qubit reduction, and the reduced
//! eigenvalue pair.
//!
//! Angle indexing is 0-based in code (`angles[0]` is the first Euler angle);
//! documentation follows the conventional 1-based labels α₁..α₁₅.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex64 as C64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{Density2, Density4, Hermitian4, Mat2, Mat4, Unitary4, Vec4};

/// Dimension of the chart (the group manifold dimension of SU(4)).
pub const ANGLE_COUNT: usize = 15;

/// A point on the chart: the 15 Euler angles in order.
pub type Angles = [f64; ANGLE_COUNT];

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Closed coordinate ranges `[lo, hi]` for each angle.
///
/// The six "measure-bearing" angles α₂, α₄, α₆, α₈, α₁₀, α₁₂ live on
/// [0, π/2]; α₁, α₇, α₁₁ on [0, π]; α₃, α₅, α₉, α₁₃ on [0, 2π]; the two
/// Cartan phases α₁₄, α₁₅ on [0, √3 π] and [0, √(8/3) π].
pub fn angle_ranges() -> [(f64, f64); ANGLE_COUNT] {
    [
        (0.0, PI),
        (0.0, FRAC_PI_2),
        (0.0, TAU),
        (0.0, FRAC_PI_2),
        (0.0, TAU),
        (0.0, FRAC_PI_2),
        (0.0, PI),
        (0.0, FRAC_PI_2),
        (0.0, TAU),
        (0.0, FRAC_PI_2),
        (0.0, PI),
        (0.0, FRAC_PI_2),
        (0.0, TAU),
        (0.0, 3.0f64.sqrt() * PI),
        (0.0, (8.0f64 / 3.0).sqrt() * PI),
    ]
}

/// Checks that every coordinate lies within its closed range.
pub fn validate_angles(a: &Angles) -> Result<()> {
    for (i, ((lo, hi), &x)) in angle_ranges().iter().zip(a).enumerate() {
        if !(x >= *lo && x <= *hi) {
            return Err(Error::Validation(format!(
                "angle {} = {x} outside [{lo}, {hi}]",
                i + 1
            )));
        }
    }
    Ok(())
}

/// The reference product state |11⟩ (basis index 3); the chart maps the
/// all-zero angle vector to this state.
pub fn reference_state() -> Vec4 {
    [ZERO, ZERO, ZERO, ONE]
}

fn unit_entry(i: usize, j: usize) -> Mat4 {
    let mut m = Mat4::zero();
    m.0[i][j] = ONE;
    m
}

/// The standard Gell-Mann-like generator λ_index of su(4), `index` ∈ 1..=15.
///
/// All fifteen are Hermitian, traceless, and trace-orthonormal with
/// Tr[λ_i λ_j] = 2δ_ij.
pub fn gell_mann(index: usize) -> Hermitian4 {
    assert!((1..=15).contains(&index), "generator index {index} not in 1..=15");
    let i = C64::new(0.0, 1.0);
    let sym = |p: usize, q: usize| unit_entry(p, q).add(&unit_entry(q, p));
    let asym = |p: usize, q: usize| unit_entry(q, p).sub(&unit_entry(p, q)).scale(i);
    let m = match index {
        1 => sym(0, 1),
        2 => asym(0, 1),
        3 => unit_entry(0, 0).sub(&unit_entry(1, 1)),
        4 => sym(0, 2),
        5 => asym(0, 2),
        6 => sym(1, 2),
        7 => asym(1, 2),
        8 => unit_entry(0, 0)
            .add(&unit_entry(1, 1))
            .sub(&unit_entry(2, 2).scale(C64::new(2.0, 0.0)))
            .scale(C64::new(1.0 / 3.0f64.sqrt(), 0.0)),
        9 => sym(0, 3),
        10 => asym(0, 3),
        11 => sym(1, 3),
        12 => asym(1, 3),
        13 => sym(3, 2),
        14 => asym(3, 2),
        15 => unit_entry(0, 0)
            .add(&unit_entry(1, 1))
            .add(&unit_entry(2, 2))
            .sub(&unit_entry(3, 3).scale(C64::new(3.0, 0.0)))
            .scale(C64::new(1.0 / 6.0f64.sqrt(), 0.0)),
        _ => unreachable!(),
    };
    Hermitian4::new(m).expect("generators are Hermitian by construction")
}

/// Generator index (standard numbering) of each Euler factor, in application
/// order: the chart element is the left-to-right product of e^{iλ_g α}.
pub const FACTOR_GENERATORS: [usize; ANGLE_COUNT] =
    [3, 2, 3, 5, 3, 10, 3, 2, 3, 5, 3, 2, 3, 8, 15];

/// Real rotation by `a` in the (p, q) coordinate plane: +sin at [p][q],
/// −sin at [q][p]. This is e^{iλa} for the antisymmetric generators
/// λ₂ (p,q)=(0,1), λ₅ (0,2), λ₁₀ (0,3).
fn plane_rotation(p: usize, q: usize, a: f64) -> Mat4 {
    let (s, c) = a.sin_cos();
    let mut m = Mat4::identity();
    m.0[p][p] = C64::new(c, 0.0);
    m.0[q][q] = C64::new(c, 0.0);
    m.0[p][q] = C64::new(s, 0.0);
    m.0[q][p] = C64::new(-s, 0.0);
    m
}

fn phase_diag(phases: [f64; 4]) -> Mat4 {
    let mut m = Mat4::zero();
    for (i, p) in phases.into_iter().enumerate() {
        m.0[i][i] = C64::from_polar(1.0, p);
    }
    m
}

/// Closed-form factor e^{iλ_g a} for the six generators appearing in the
/// Euler product; every one is a plane rotation or a diagonal phase.
fn chart_factor(generator: usize, a: f64) -> Mat4 {
    match generator {
        3 => phase_diag([a, -a, 0.0, 0.0]),
        2 => plane_rotation(0, 1, a),
        5 => plane_rotation(0, 2, a),
        10 => plane_rotation(0, 3, a),
        8 => {
            let c = a / 3.0f64.sqrt();
            phase_diag([c, c, -2.0 * c, 0.0])
        }
        15 => {
            let c = a / 6.0f64.sqrt();
            phase_diag([c, c, c, -3.0 * c])
        }
        _ => unreachable!("generator {generator} is not part of the chart product"),
    }
}

/// The chart element U(α): the ordered product of the fifteen closed-form
/// Euler factors. Exactly unitary up to roundoff.
pub fn euler_unitary(a: &Angles) -> Result<Unitary4> {
    validate_angles(a)?;
    let mut u = Mat4::identity();
    for (g, ang) in FACTOR_GENERATORS.into_iter().zip(a) {
        u = u.mul(&chart_factor(g, *ang));
    }
    Ok(Unitary4::new_unchecked(u))
}

/// Unnormalized Haar density μ(α) on the chart.
///
/// Only the six measure-bearing angles enter:
/// μ = sin(2α₂) sin(α₄)cos³(α₄) sin⁵(α₆)cos(α₆) sin(2α₈) sin³(α₁₀)cos(α₁₀)
///     sin(2α₁₂).
pub fn haar_density(a: &Angles) -> f64 {
    let s4 = a[3].sin();
    let c4 = a[3].cos();
    let s6 = a[5].sin();
    let s10 = a[9].sin();
    (2.0 * a[1]).sin()
        * s4
        * c4.powi(3)
        * s6.powi(5)
        * a[5].cos()
        * (2.0 * a[7]).sin()
        * s10.powi(3)
        * a[9].cos()
        * (2.0 * a[11]).sin()
}

/// Exact group volume ∫μ over the chart box: √2 π⁹ / 3.
pub fn haar_volume() -> f64 {
    2.0f64.sqrt() * PI.powi(9) / 3.0
}

/// Volume of the coordinate box (the product of all range widths), the
/// reference measure for uniform-box Monte Carlo integration of μ.
pub fn chart_box_volume() -> f64 {
    angle_ranges().iter().map(|(lo, hi)| hi - lo).product()
}

/// Draws one Haar-distributed chart point by exact per-angle inverse-CDF
/// sampling of the factorized density μ(α); the nine measure-free angles
/// are uniform on their ranges.
pub fn sample_haar_angles<R: Rng + ?Sized>(rng: &mut R) -> Angles {
    let mut a = [0.0; ANGLE_COUNT];
    for (i, (lo, hi)) in angle_ranges().into_iter().enumerate() {
        let u: f64 = rng.random();
        a[i] = match i {
            // density sin(2α): CDF sin²α
            1 | 7 | 11 => u.sqrt().asin(),
            // density sin α cos³α: CDF 1 − cos⁴α
            3 => (1.0 - u).powf(0.25).acos(),
            // density sin⁵α cos α: CDF sin⁶α
            5 => u.powf(1.0 / 6.0).asin(),
            // density sin³α cos α: CDF sin⁴α
            9 => u.powf(0.25).asin(),
            _ => lo + u * (hi - lo),
        };
    }
    a
}

/// Haar-random unitary via the Euler chart sampler.
pub fn sample_haar_unitary<R: Rng + ?Sized>(rng: &mut R) -> Unitary4 {
    let a = sample_haar_angles(rng);
    euler_unitary(&a).expect("sampled angles are in range by construction")
}

/// Haar-random unitary via a complex-Gaussian (Ginibre) matrix and modified
/// Gram-Schmidt QR.
///
/// Gram-Schmidt normalization makes every diagonal entry of R real and
/// positive, which is exactly the phase-gauge fix required for the Q factor
/// to be Haar rather than QR-gauge distributed.
pub fn sample_haar_unitary_ginibre<R: Rng + ?Sized>(rng: &mut R) -> Unitary4 {
    let mut cols = [[ZERO; 4]; 4];
    for col in &mut cols {
        for e in col.iter_mut() {
            let re: f64 = rng.sample(rand_distr::StandardNormal);
            let im: f64 = rng.sample(rand_distr::StandardNormal);
            *e = C64::new(re, im);
        }
    }
    for j in 0..4 {
        for k in 0..j {
            let mut proj = ZERO;
            for i in 0..4 {
                proj += cols[k][i].conj() * cols[j][i];
            }
            for i in 0..4 {
                let sub = proj * cols[k][i];
                cols[j][i] -= sub;
            }
        }
        let norm: f64 = cols[j].iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        for e in &mut cols[j] {
            *e = e.scale(1.0 / norm);
        }
    }
    Unitary4::new_unchecked(Mat4::from_fn(|i, j| cols[j][i]))
}

/// Closed-form density matrix of the pure state U(α)|11⟩: only the six
/// angles α₁..α₆ enter.
pub fn density_from_angles(a: &Angles) -> Result<Density4> {
    validate_angles(a)?;
    let (a1, a2, a3, a4, a5, a6) = (a[0], a[1], a[2], a[3], a[4], a[5]);
    let (s2, c2) = a2.sin_cos();
    let (s4, c4) = a4.sin_cos();
    let (s6, c6) = a6.sin_cos();
    let ph = |p: f64, mag: f64| C64::from_polar(mag.abs(), if mag < 0.0 { p + PI } else { p });

    let mut r = Mat4::zero();
    r.0[0][0] = C64::new(c2 * c2 * c4 * c4 * s6 * s6, 0.0);
    r.0[0][1] = ph(2.0 * a1, -0.5 * c4 * c4 * (2.0 * a2).sin() * s6 * s6);
    r.0[0][2] = ph(a1 + a3, -0.5 * c2 * (2.0 * a4).sin() * s6 * s6);
    r.0[0][3] = ph(a1 + a3 + a5, c2 * c4 * c6 * s6);
    r.0[1][1] = C64::new(c4 * c4 * s2 * s2 * s6 * s6, 0.0);
    r.0[1][2] = ph(-(a1 - a3), c4 * s2 * s4 * s6 * s6);
    r.0[1][3] = ph(-(a1 - a3 - a5), -c4 * c6 * s2 * s6);
    r.0[2][2] = C64::new(s4 * s4 * s6 * s6, 0.0);
    r.0[2][3] = ph(a5, -c6 * s4 * s6);
    r.0[3][3] = C64::new(c6 * c6, 0.0);
    for i in 0..4 {
        for j in 0..i {
            r.0[i][j] = r.0[j][i].conj();
        }
    }
    Ok(Density4::new_unchecked(r))
}

/// Closed-form reduced density matrix (first qubit) of the state U(α)|11⟩.
pub fn reduced_from_angles(a: &Angles) -> Result<Density2> {
    validate_angles(a)?;
    let (a1, a2, a3, a4, a5, a6) = (a[0], a[1], a[2], a[3], a[4], a[5]);
    let (s2, c2) = a2.sin_cos();
    let (s4, c4) = a4.sin_cos();
    let (s6, c6) = a6.sin_cos();

    let off = C64::from_polar(0.5 * (2.0 * a4).sin() * s6 * s6 * c2, a1 + a3)
        .scale(-1.0)
        + C64::from_polar(0.5 * s2 * (2.0 * a6).sin() * c4, -(a1 - a3 - a5)).scale(-1.0);
    let mut s = Mat2([[ZERO; 2]; 2]);
    s.0[0][0] = C64::new(c4 * c4 * s6 * s6, 0.0);
    s.0[0][1] = off;
    s.0[1][0] = off.conj();
    s.0[1][1] = C64::new(c6 * c6 + s4 * s4 * s6 * s6, 0.0);
    Ok(Density2::new_unchecked(s))
}

/// Closed-form eigenvalue pair (descending) of the reduced state of
/// U(α)|11⟩: 1/2 ± √B/16 where B is a polynomial in trigonometric functions
/// of α₁, α₂, α₄, α₅, α₆.
///
/// The radicand is mathematically nonnegative; values below −1e−12 indicate
/// a transcription or input problem and are reported as numeric errors,
/// smaller negatives are clamped to zero.
pub fn reduced_eigenvalues_from_angles(a: &Angles) -> Result<[f64; 2]> {
    validate_angles(a)?;
    let (a1, a2, a4, a5, a6) = (a[0], a[1], a[3], a[4], a[5]);
    let s2 = a2.sin();
    let c2 = a2.cos();
    let s4 = a4.sin();
    let c4 = a4.cos();
    let s6 = a6.sin();
    let c6 = a6.cos();
    let bracket = 256.0 * (2.0 * a2).sin() * s4 * s6.powi(3) * c4 * c4
        * (2.0 * a1 - a5).cos()
        * c6
        - 24.0 * s6 * s6 * (2.0 * a2).cos()
        + (2.0 * a6).cos() * (8.0 - 40.0 * s6 * s6 * (2.0 * a2).cos())
        - 32.0 * (2.0 * a6).sin().powi(2) * c2 * c2 * (2.0 * a4).cos()
        + 32.0 * s2 * s2 * s6.powi(4) * (4.0 * a4).cos()
        + 6.0 * (4.0 * a6).cos()
        + 50.0;
    if bracket < -1e-12 {
        return Err(Error::Numeric(format!(
            "reduced-eigenvalue radicand is {bracket:.3e} < 0"
        )));
    }
    let half_gap = bracket.max(0.0).sqrt() / 16.0;
    Ok([(0.5 + half_gap).min(1.0), (0.5 - half_gap).max(0.0)])
}

/// Uniform-box Monte Carlo estimate of the group volume ∫μ, returning
/// (estimate, standard error).
pub fn group_volume_mc<R: Rng + ?Sized>(n: u64, rng: &mut R) -> (f64, f64) {
    assert!(n >= 2, "need at least two samples for a standard error");
    let ranges = angle_ranges();
    let box_volume = chart_box_volume();
    let mut sum = 0.0;
    let mut sumsq = 0.0;
    let mut a = [0.0; ANGLE_COUNT];
    for _ in 0..n {
        for (x, (lo, hi)) in a.iter_mut().zip(&ranges) {
            *x = lo + rng.random::<f64>() * (hi - lo);
        }
        let v = haar_density(&a);
        sum += v;
        sumsq += v * v;
    }
    let nf = n as f64;
    let mean = sum / nf;
    let var = (sumsq - nf * mean * mean) / (nf - 1.0);
    (box_volume * mean, box_volume * (var / nf).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{hermitian_eigen, evolve_unitary, partial_trace, Qubit};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_angles(rng: &mut impl Rng) -> Angles {
        let mut a = [0.0; ANGLE_COUNT];
        for (x, (lo, hi)) in a.iter_mut().zip(angle_ranges()) {
            *x = lo + rng.random::<f64>() * (hi - lo);
        }
        a
    }

    fn det4(m: &Mat4) -> C64 {
        // Gaussian elimination with partial pivoting; determinant is the
        // signed product of pivots.
        let mut a = m.0;
        let mut det = ONE;
        for col in 0..4 {
            let mut piv = col;
            for row in (col + 1)..4 {
                if a[row][col].norm() > a[piv][col].norm() {
                    piv = row;
                }
            }
            if piv != col {
                a.swap(col, piv);
                det = -det;
            }
            det *= a[col][col];
            if a[col][col].norm() < 1e-300 {
                return ZERO;
            }
            for row in (col + 1)..4 {
                let f = a[row][col] / a[col][col];
                for k in col..4 {
                    let sub = f * a[col][k];
                    a[row][k] -= sub;
                }
            }
        }
        det
    }

    #[test]
    fn generator_algebra_is_orthonormal() {
        for i in 1..=15 {
            let li = gell_mann(i);
            assert!(li.matrix().trace().norm() < 1e-14);
            for j in 1..=15 {
                let t = li.matrix().mul(gell_mann(j).matrix()).trace();
                let want = if i == j { 2.0 } else { 0.0 };
                assert!((t.re - want).abs() < 1e-14 && t.im.abs() < 1e-14, "({i},{j})");
            }
        }
    }

    #[test]
    fn structure_constants_are_real_and_antisymmetric() {
        // f_jkl = (1/4i) Tr[[λ_j, λ_k] λ_l]
        let f = |j: usize, k: usize, l: usize| -> C64 {
            let lj = *gell_mann(j).matrix();
            let lk = *gell_mann(k).matrix();
            let comm = lj.mul(&lk).sub(&lk.mul(&lj));
            comm.mul(gell_mann(l).matrix()).trace() / C64::new(0.0, 4.0)
        };
        for j in (1..=15).step_by(2) {
            for k in 1..=15 {
                for l in (2..=15).step_by(3) {
                    let fjkl = f(j, k, l);
                    assert!(fjkl.im.abs() < 1e-12, "f({j},{k},{l}) = {fjkl}");
                    let fkjl = f(k, j, l);
                    assert!((fjkl + fkjl).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn chart_at_origin_is_identity() {
        let u = euler_unitary(&[0.0; ANGLE_COUNT]).unwrap();
        assert!(u.matrix().sub(&Mat4::identity()).max_abs() < 1e-15);
    }

    #[test]
    fn single_angle_factor_rotates_the_reference_plane() {
        // Only α₆ = π/2: the product reduces to the (1,4)-plane rotation.
        let mut a = [0.0; ANGLE_COUNT];
        a[5] = FRAC_PI_2;
        let u = euler_unitary(&a).unwrap();
        let mut want = Mat4::zero();
        want.0[0][3] = ONE;
        want.0[3][0] = -ONE;
        want.0[1][1] = ONE;
        want.0[2][2] = ONE;
        assert!(u.matrix().sub(&want).max_abs() < 1e-15);
    }

    #[test]
    fn chart_factors_match_generator_exponentials() {
        // Oracle: e^{iλa} through the spectral decomposition of λ.
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for g in [2usize, 3, 5, 8, 10, 15] {
            let sys = hermitian_eigen(&gell_mann(g)).unwrap();
            for _ in 0..20 {
                let ang = rng.random::<f64>() * 4.0 - 2.0;
                let closed = chart_factor(g, ang);
                let oracle = evolve_unitary(&sys, -ang);
                assert!(
                    closed.sub(oracle.matrix()).max_abs() < 1e-12,
                    "generator {g}, angle {ang}"
                );
            }
        }
    }

    #[test]
    fn chart_element_is_special_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let a = random_angles(&mut rng);
            let u = euler_unitary(&a).unwrap();
            let dev = u
                .matrix()
                .mul(&u.matrix().adjoint())
                .sub(&Mat4::identity())
                .max_abs();
            assert!(dev < 1e-12);
            assert!((det4(u.matrix()) - ONE).norm() < 1e-12);
        }
    }

    #[test]
    fn out_of_range_angles_are_rejected() {
        let mut a = [0.0; ANGLE_COUNT];
        a[1] = FRAC_PI_2 + 1e-9;
        assert!(euler_unitary(&a).is_err());
        a[1] = f64::NAN;
        assert!(euler_unitary(&a).is_err());
        // Boundary values are accepted.
        let ranges = angle_ranges();
        let hi: Angles = core::array::from_fn(|i| ranges[i].1);
        assert!(euler_unitary(&hi).is_ok());
    }

    #[test]
    fn density_matches_unitary_conjugation_path() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let a = random_angles(&mut rng);
            let u = euler_unitary(&a).unwrap();
            let psi = u.matrix().mul_vec(&reference_state());
            let direct = Mat4::outer(&psi);
            let closed = density_from_angles(&a).unwrap();
            assert!(closed.matrix().sub(&direct).max_abs() < 1e-12);
            assert!((closed.purity() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn density_depends_only_on_first_six_angles() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut a = random_angles(&mut rng);
        let base = density_from_angles(&a).unwrap();
        for i in 6..ANGLE_COUNT {
            a[i] = angle_ranges()[i].1 * rng.random::<f64>();
        }
        let perturbed = density_from_angles(&a).unwrap();
        assert!(base.matrix().sub(perturbed.matrix()).max_abs() < 1e-14);
    }

    #[test]
    fn density_special_points() {
        // α = 0 → |11⟩⟨11|.
        let r = density_from_angles(&[0.0; ANGLE_COUNT]).unwrap();
        assert!((r.matrix().0[3][3] - ONE).norm() < 1e-15);
        // α₆ = π/2 → |00⟩⟨00| (the plane rotation maps |11⟩ to −|00⟩).
        let mut a = [0.0; ANGLE_COUNT];
        a[5] = FRAC_PI_2;
        let r = density_from_angles(&a).unwrap();
        assert!((r.matrix().0[0][0] - ONE).norm() < 1e-15);
    }

    #[test]
    fn reduced_matches_partial_trace() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..300 {
            let a = random_angles(&mut rng);
            let rho = density_from_angles(&a).unwrap();
            let via_trace = partial_trace(&rho, Qubit::First);
            let closed = reduced_from_angles(&a).unwrap();
            let mut dev = 0.0f64;
            for i in 0..2 {
                for j in 0..2 {
                    dev = dev.max((via_trace.matrix().0[i][j] - closed.matrix().0[i][j]).norm());
                }
            }
            assert!(dev < 1e-12);
        }
    }

    #[test]
    fn reduced_eigenvalues_match_eigensolver() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..300 {
            let a = random_angles(&mut rng);
            let formula = reduced_eigenvalues_from_angles(&a).unwrap();
            let solver = reduced_from_angles(&a).unwrap().eigenvalues();
            assert!((formula[0] - solver[0]).abs() < 1e-10);
            assert!((formula[1] - solver[1]).abs() < 1e-10);
            assert!((formula[0] + formula[1] - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn reduced_eigenvalues_special_points() {
        let origin = reduced_eigenvalues_from_angles(&[0.0; ANGLE_COUNT]).unwrap();
        assert!((origin[0] - 1.0).abs() < 1e-14 && origin[1].abs() < 1e-14);
        // α₆ = π/4, others zero: maximally entangled point.
        let mut a = [0.0; ANGLE_COUNT];
        a[5] = PI / 4.0;
        let k = reduced_eigenvalues_from_angles(&a).unwrap();
        assert!((k[0] - 0.5).abs() < 1e-8 && (k[1] - 0.5).abs() < 1e-8);
    }

    #[test]
    fn haar_density_reference_values() {
        assert_eq!(haar_density(&[0.0; ANGLE_COUNT]), 0.0);
        let quarter = [PI / 4.0; ANGLE_COUNT];
        assert!((haar_density(&quarter) - 1.0 / 128.0).abs() < 1e-15);
        assert!((haar_volume() - 14052.144186495469).abs() < 1e-9);
    }

    #[test]
    fn haar_angle_sampler_matches_marginal_statistics() {
        // The inverse-CDF construction makes sin²α₂, 1−cos⁴α₄, sin⁶α₆ and
        // sin⁴α₁₀ all uniform on [0,1]; check their means against 1/2.
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        let n = 20_000;
        let mut sums = [0.0f64; 4];
        let mut c6_4 = 0.0f64;
        for _ in 0..n {
            let a = sample_haar_angles(&mut rng);
            validate_angles(&a).unwrap();
            sums[0] += a[1].sin().powi(2);
            sums[1] += 1.0 - a[3].cos().powi(4);
            sums[2] += a[5].sin().powi(6);
            sums[3] += a[9].sin().powi(4);
            c6_4 += a[5].cos().powi(4);
        }
        let gate = 4.0 / (12.0f64).sqrt() / (n as f64).sqrt();
        for s in sums {
            assert!((s / n as f64 - 0.5).abs() < gate, "{}", s / n as f64);
        }
        // E[cos⁴α₆] = 1 − 2·(3/4) + 3/5 = 1/10 under the Haar marginal.
        assert!((c6_4 / n as f64 - 0.1).abs() < 0.01);
    }

    #[test]
    fn haar_angle_sampler_matches_analytic_cdfs() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let n = 100_000;
        let mut a2: Vec<f64> = Vec::with_capacity(n);
        let mut a15: Vec<f64> = Vec::with_capacity(n);
        for _ in 0..n {
            let a = sample_haar_angles(&mut rng);
            a2.push(a[1]);
            a15.push(a[14]);
        }
        let ks = |xs: &mut Vec<f64>, cdf: &dyn Fn(f64) -> f64| -> f64 {
            xs.sort_by(|p, q| p.partial_cmp(q).unwrap());
            let n = xs.len() as f64;
            xs.iter()
                .enumerate()
                .map(|(i, &x)| {
                    let f = cdf(x);
                    (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
                })
                .fold(0.0, f64::max)
        };
        assert!(ks(&mut a2, &|x| x.sin().powi(2)) < 0.01);
        let hi = angle_ranges()[14].1;
        assert!(ks(&mut a15, &|x| x / hi) < 0.01);
    }

    #[test]
    fn ginibre_sampler_produces_unitaries() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..200 {
            let u = sample_haar_unitary_ginibre(&mut rng);
            let dev = u
                .matrix()
                .mul(&u.matrix().adjoint())
                .sub(&Mat4::identity())
                .max_abs();
            assert!(dev < 1e-10);
        }
    }

    #[test]
    fn volume_mc_converges_to_exact_value() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let (est, se) = group_volume_mc(200_000, &mut rng);
        assert!(
            (est - haar_volume()).abs() < 4.0 * se,
            "estimate {est} ± {se} vs {}",
            haar_volume()
        );
        // One-factor restriction oracle: ∫₀^{π/2} sin⁵ cos = 1/6.
        let mut sum = 0.0;
        let n = 200_000;
        for _ in 0..n {
            let x: f64 = rng.random::<f64>() * FRAC_PI_2;
            sum += x.sin().powi(5) * x.cos();
        }
        let est = FRAC_PI_2 * sum / n as f64;
        assert!((est - 1.0 / 6.0).abs() < 2e-3);
    }
}
