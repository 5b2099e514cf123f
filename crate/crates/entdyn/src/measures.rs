//! Entanglement quantifiers.
//!
//! Entropies of a one-qubit reduced state (von Neumann, linear,
//! Tsallis-q, Rényi-q, all with natural logarithms), Wootters concurrence
//! and the entanglement of formation of a two-qubit mixed state, and the
//! mean entanglement entropy of Haar-random bipartite pure states.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, Density2, Density4, Hermitian4, Mat4};

/// Reduced-state eigenvalues may undershoot 0 or overshoot 1 by at most
/// this much before evaluation is refused instead of clamped.
pub const EIGENVALUE_CLAMP_WINDOW: f64 = 1e-10;

/// Which entropy functional to apply to a reduced state.
///
/// All variants use the natural logarithm. `Tsallis { q: 2.0 }` coincides
/// with `Linear`; `Tsallis`/`Renyi` approach `VonNeumann` as q → 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EntropyKind {
    VonNeumann,
    Linear,
    Tsallis { q: f64 },
    Renyi { q: f64 },
}

impl EntropyKind {
    /// Tsallis entropy of order `q` (q > 0, q ≠ 1).
    pub fn tsallis(q: f64) -> Result<Self> {
        Self::Tsallis { q }.validated()
    }

    /// Rényi entropy of order `q` (q > 0, q ≠ 1).
    pub fn renyi(q: f64) -> Result<Self> {
        Self::Renyi { q }.validated()
    }

    fn validated(self) -> Result<Self> {
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            EntropyKind::Tsallis { q } | EntropyKind::Renyi { q } => {
                if q.is_nan() || q <= 0.0 || q == 1.0 {
                    return Err(Error::Validation(format!(
                        "entropy order q = {q} must be positive and ≠ 1"
                    )));
                }
            }
            EntropyKind::VonNeumann | EntropyKind::Linear => {}
        }
        Ok(())
    }
}

/// Eigenvalues of a reduced state, clamped into [0, 1].
///
/// Violations beyond [`EIGENVALUE_CLAMP_WINDOW`] are numeric errors — they
/// indicate an invalid input, not roundoff.
fn clamped_spectrum(rho: &Density2) -> Result<[f64; 2]> {
    let eigs = rho.eigenvalues();
    for &p in &eigs {
        if !(-EIGENVALUE_CLAMP_WINDOW..=1.0 + EIGENVALUE_CLAMP_WINDOW).contains(&p) {
            return Err(Error::Numeric(format!(
                "reduced-state eigenvalue {p} outside [0, 1] beyond the clamp window"
            )));
        }
    }
    Ok([eigs[0].clamp(0.0, 1.0), eigs[1].clamp(0.0, 1.0)])
}

fn xlnx(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

/// Entropy of a one-qubit reduced state.
pub fn entropy(rho: &Density2, kind: EntropyKind) -> Result<f64> {
    kind.validate()?;
    let p = clamped_spectrum(rho)?;
    Ok(match kind {
        EntropyKind::VonNeumann => -xlnx(p[0]) - xlnx(p[1]),
        EntropyKind::Linear => 1.0 - p[0] * p[0] - p[1] * p[1],
        EntropyKind::Tsallis { q } => (1.0 - p[0].powf(q) - p[1].powf(q)) / (q - 1.0),
        EntropyKind::Renyi { q } => (p[0].powf(q) + p[1].powf(q)).ln() / (1.0 - q),
    })
}

/// The spin-flip conjugation matrix σʸ⊗σʸ (real, symmetric, anti-diagonal).
fn spin_flip() -> Mat4 {
    let mut y = Mat4::zero();
    y.0[0][3] = C64::new(-1.0, 0.0);
    y.0[1][2] = C64::new(1.0, 0.0);
    y.0[2][1] = C64::new(1.0, 0.0);
    y.0[3][0] = C64::new(-1.0, 0.0);
    y
}

/// Wootters concurrence of a two-qubit state.
///
/// Instead of diagonalizing the non-Hermitian product
/// ρ·(σʸ⊗σʸ)·ρ*·(σʸ⊗σʸ) directly, the similar Hermitian positive
/// semidefinite matrix √ρ·(σʸ⊗σʸ)·ρ*·(σʸ⊗σʸ)·√ρ is used, which shares its
/// eigenvalues and keeps everything inside the Hermitian eigensolver.
pub fn concurrence(rho: &Density4) -> Result<f64> {
    let sys = hermitian_eigen(&Hermitian4::new(*rho.matrix())?)?;
    let v = sys.vectors.matrix();
    let mut sqrt_rho = Mat4::zero();
    for a in 0..4 {
        for b in 0..4 {
            let mut acc = C64::new(0.0, 0.0);
            for j in 0..4 {
                let e = sys.values[j];
                if e < -EIGENVALUE_CLAMP_WINDOW {
                    return Err(Error::Numeric(format!(
                        "density eigenvalue {e} too negative for a matrix square root"
                    )));
                }
                // Snap noise-floor eigenvalues to zero: √(1e-16 roundoff)
                // would otherwise contaminate √ρ at the 1e-8 level.
                let root = if e < 1e-13 { 0.0 } else { e.sqrt() };
                acc += v.0[a][j] * v.0[b][j].conj() * root;
            }
            sqrt_rho.0[a][b] = acc;
        }
    }
    let y = spin_flip();
    let m = sqrt_rho
        .mul(&y)
        .mul(&rho.matrix().conj())
        .mul(&y)
        .mul(&sqrt_rho);
    // Symmetrize away solver roundoff before re-validating hermiticity.
    let m = m.add(&m.adjoint()).scale(C64::new(0.5, 0.0));
    let lam = hermitian_eigen(&Hermitian4::new(m)?)?.values;
    let mut roots = [0.0f64; 4];
    for (r, &l) in roots.iter_mut().zip(&lam) {
        if l < -1e-8 {
            return Err(Error::Numeric(format!(
                "spin-flip spectrum contains {l} < -1e-8"
            )));
        }
        // The matrix entries are O(1), so eigenvalues below the solver's
        // noise floor are exact zeros (e.g. three of the four for any pure
        // state); snapping them prevents √noise ≈ 1e-8 from leaking into C.
        *r = if l < 1e-13 { 0.0 } else { l.sqrt() };
    }
    // Eigenvalues arrive sorted descending, so roots are too.
    Ok((roots[0] - roots[1] - roots[2] - roots[3]).max(0.0))
}

/// Entanglement of formation: the binary entropy of
/// b = 1/2 + √(1−C²)/2, a monotone function of the concurrence C.
pub fn entanglement_of_formation(rho: &Density4) -> Result<f64> {
    let c = concurrence(rho)?;
    let b = 0.5 + 0.5 * (1.0 - c * c).max(0.0).sqrt();
    Ok(-xlnx(b) - xlnx(1.0 - b))
}

/// Mean entanglement entropy of Haar-random pure states on an m×n
/// bipartition (m ≤ n): Σ_{k=n+1}^{mn} 1/k − (m−1)/(2n).
pub fn page_mean_entropy(m: u64, n: u64) -> Result<f64> {
    if m < 1 || n < 1 || m > n {
        return Err(Error::Validation(format!(
            "bipartition ({m}, {n}) must satisfy 1 ≤ m ≤ n"
        )));
    }
    let harmonic: f64 = (n + 1..=m * n).map(|k| 1.0 / k as f64).sum();
    Ok(harmonic - (m - 1) as f64 / (2.0 * n as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{partial_trace, Mat2, Qubit, Vec4};
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_1_SQRT_2, LN_2};

    const ZERO: C64 = C64::new(0.0, 0.0);

    fn diag2(a: f64, b: f64) -> Density2 {
        Density2::new(Mat2([
            [C64::new(a, 0.0), ZERO],
            [ZERO, C64::new(b, 0.0)],
        ]))
        .unwrap()
    }

    fn random_pure(rng: &mut impl Rng) -> (Vec4, Density4) {
        let mut psi = [ZERO; 4];
        let mut norm = 0.0;
        for e in &mut psi {
            *e = C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5);
            norm += e.norm_sqr();
        }
        let norm = norm.sqrt();
        for e in &mut psi {
            *e = e.scale(1.0 / norm);
        }
        (psi, Density4::pure(&psi).unwrap())
    }

    fn bell() -> Density4 {
        let psi = [
            C64::new(FRAC_1_SQRT_2, 0.0),
            ZERO,
            ZERO,
            C64::new(FRAC_1_SQRT_2, 0.0),
        ];
        Density4::pure(&psi).unwrap()
    }

    fn werner(p: f64) -> Density4 {
        let m = bell()
            .matrix()
            .scale(C64::new(p, 0.0))
            .add(&Mat4::identity().scale(C64::new((1.0 - p) / 4.0, 0.0)));
        Density4::new(m).unwrap()
    }

    #[test]
    fn entropy_reference_values() {
        let mixed = diag2(0.5, 0.5);
        assert!((entropy(&mixed, EntropyKind::VonNeumann).unwrap() - LN_2).abs() < 1e-15);
        assert!((entropy(&mixed, EntropyKind::Linear).unwrap() - 0.5).abs() < 1e-15);
        let pure = diag2(1.0, 0.0);
        for kind in [
            EntropyKind::VonNeumann,
            EntropyKind::Linear,
            EntropyKind::tsallis(3.0).unwrap(),
            EntropyKind::renyi(0.5).unwrap(),
        ] {
            assert_eq!(entropy(&pure, kind).unwrap(), 0.0);
        }
        let skew = diag2(0.25, 0.75);
        let want = -0.25f64.ln() * 0.25 - 0.75f64.ln() * 0.75;
        assert!((entropy(&skew, EntropyKind::VonNeumann).unwrap() - want).abs() < 1e-15);
    }

    #[test]
    fn entropy_rejects_bad_orders() {
        assert!(EntropyKind::tsallis(1.0).is_err());
        assert!(EntropyKind::tsallis(0.0).is_err());
        assert!(EntropyKind::renyi(-2.0).is_err());
        assert!(EntropyKind::renyi(f64::NAN).is_err());
        let mixed = diag2(0.5, 0.5);
        assert!(entropy(&mixed, EntropyKind::Tsallis { q: 1.0 }).is_err());
    }

    #[test]
    fn tsallis_interpolates_between_linear_and_von_neumann() {
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        for _ in 0..100 {
            let p = rng.random::<f64>();
            let rho = diag2(p, 1.0 - p);
            let lin = entropy(&rho, EntropyKind::Linear).unwrap();
            let ts2 = entropy(&rho, EntropyKind::tsallis(2.0).unwrap()).unwrap();
            assert!((lin - ts2).abs() < 1e-14);
            let vn = entropy(&rho, EntropyKind::VonNeumann).unwrap();
            let ts_near = entropy(&rho, EntropyKind::tsallis(1.001).unwrap()).unwrap();
            assert!((vn - ts_near).abs() < 1e-3);
        }
    }

    #[test]
    fn renyi_is_nonincreasing_in_order() {
        let mut rng = ChaCha8Rng::seed_from_u64(73);
        for _ in 0..100 {
            let p = rng.random::<f64>() * 0.5;
            let rho = diag2(p, 1.0 - p);
            let qs = [0.5, 1.001, 2.0, 3.0];
            let mut prev = f64::INFINITY;
            for q in qs {
                let h = entropy(&rho, EntropyKind::renyi(q).unwrap()).unwrap();
                assert!(h <= prev + 1e-12, "q={q}: {h} > {prev}");
                prev = h;
            }
        }
    }

    #[test]
    fn concurrence_reference_states() {
        assert!((concurrence(&bell()).unwrap() - 1.0).abs() < 1e-12);
        let mut product = Mat4::zero();
        product.0[3][3] = C64::new(1.0, 0.0);
        assert_eq!(concurrence(&Density4::new(product).unwrap()).unwrap(), 0.0);
        for p in [0.0, 0.2, 1.0 / 3.0, 0.7, 1.0] {
            let want = (0.0f64).max((3.0 * p - 1.0) / 2.0);
            let got = concurrence(&werner(p)).unwrap();
            assert!((got - want).abs() < 1e-10, "p={p}: {got} vs {want}");
        }
    }

    #[test]
    fn concurrence_of_schmidt_states() {
        // |ψ⟩ = a|00⟩ + b|11⟩ has concurrence 2ab.
        let mut rng = ChaCha8Rng::seed_from_u64(79);
        for _ in 0..50 {
            let theta = rng.random::<f64>() * std::f64::consts::FRAC_PI_2;
            let (a, b) = (theta.cos(), theta.sin());
            let psi = [C64::new(a, 0.0), ZERO, ZERO, C64::new(b, 0.0)];
            let rho = Density4::pure(&psi).unwrap();
            assert!((concurrence(&rho).unwrap() - 2.0 * a * b).abs() < 1e-10);
        }
    }

    #[test]
    fn eof_reference_values() {
        assert!((entanglement_of_formation(&bell()).unwrap() - LN_2).abs() < 1e-12);
        assert!(entanglement_of_formation(&werner(0.2)).unwrap() == 0.0);
        // C = 0.6 → b = 0.9; realize C on the Schmidt state √0.9|00⟩ + √0.1|11⟩.
        let b: f64 = 0.9;
        let want = -b * b.ln() - (1.0 - b) * (1.0 - b).ln();
        let a = 0.9f64.sqrt();
        let bb = 0.1f64.sqrt();
        assert!((2.0 * a * bb - 0.6).abs() < 1e-12);
        let psi = [C64::new(a, 0.0), ZERO, ZERO, C64::new(bb, 0.0)];
        let rho = Density4::pure(&psi).unwrap();
        let got = entanglement_of_formation(&rho).unwrap();
        assert!((got - want).abs() < 1e-10, "{got} vs {want}");
        assert!((got - 0.3250829733914484).abs() < 1e-10);
    }

    #[test]
    fn eof_of_pure_states_equals_marginal_entropy() {
        let mut rng = ChaCha8Rng::seed_from_u64(83);
        for _ in 0..200 {
            let (_, rho) = random_pure(&mut rng);
            let ef = entanglement_of_formation(&rho).unwrap();
            let marginal = partial_trace(&rho, Qubit::First);
            let vn = entropy(&marginal, EntropyKind::VonNeumann).unwrap();
            assert!((ef - vn).abs() < 1e-10, "{ef} vs {vn}");
        }
    }

    #[test]
    fn measures_are_invariant_under_local_unitaries() {
        let mut rng = ChaCha8Rng::seed_from_u64(89);
        let random_u2 = |rng: &mut ChaCha8Rng| -> [[C64; 2]; 2] {
            // Gram-Schmidt on a random complex 2×2.
            let mut v = [[ZERO; 2]; 2];
            for row in &mut v {
                for e in row.iter_mut() {
                    *e = C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5);
                }
            }
            let n0 = (v[0][0].norm_sqr() + v[0][1].norm_sqr()).sqrt();
            v[0][0] = v[0][0].scale(1.0 / n0);
            v[0][1] = v[0][1].scale(1.0 / n0);
            let proj = v[0][0].conj() * v[1][0] + v[0][1].conj() * v[1][1];
            v[1][0] -= proj * v[0][0];
            v[1][1] -= proj * v[0][1];
            let n1 = (v[1][0].norm_sqr() + v[1][1].norm_sqr()).sqrt();
            v[1][0] = v[1][0].scale(1.0 / n1);
            v[1][1] = v[1][1].scale(1.0 / n1);
            v
        };
        for _ in 0..50 {
            let (_, rho) = random_pure(&mut rng);
            let u = random_u2(&mut rng);
            let v = random_u2(&mut rng);
            let kron = Mat4::from_fn(|i, j| u[i / 2][j / 2] * v[i % 2][j % 2]);
            let rotated =
                Density4::new_unchecked(kron.mul(rho.matrix()).mul(&kron.adjoint()));
            for kind in [EntropyKind::VonNeumann, EntropyKind::Linear] {
                let before = entropy(&partial_trace(&rho, Qubit::First), kind).unwrap();
                let after = entropy(&partial_trace(&rotated, Qubit::First), kind).unwrap();
                assert!((before - after).abs() < 1e-10);
            }
            let c0 = concurrence(&rho).unwrap();
            let c1 = concurrence(&rotated).unwrap();
            assert!((c0 - c1).abs() < 1e-10, "{c0} vs {c1}");
        }
    }

    #[test]
    fn page_mean_entropy_reference_values() {
        assert!((page_mean_entropy(2, 2).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(page_mean_entropy(1, 7).unwrap(), 0.0);
        let want = 1.0 / 5.0 + 1.0 / 6.0 + 1.0 / 7.0 + 1.0 / 8.0 - 1.0 / 8.0;
        assert!((page_mean_entropy(2, 4).unwrap() - want).abs() < 1e-15);
        assert!((page_mean_entropy(2, 4).unwrap() - 0.5095238095238095).abs() < 1e-12);
        assert!(page_mean_entropy(3, 2).is_err());
        assert!(page_mean_entropy(0, 2).is_err());
    }
}
