//! Small dense complex linear algebra for two-qubit states: stack-allocated
//! 4×4 / 2×2 matrices, validated wrapper types (Hermitian, unitary, density),
//! a cyclic Jacobi eigensolver, spectral time evolution, the partial trace,
//! and the Cayley transform used by the stochastic integrator.
//!
//! Everything works in units with ħ = 1. The two-qubit product basis is
//! ordered `{|00⟩, |01⟩, |10⟩, |11⟩}`; the first qubit owns the leading bit.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Hermiticity check tolerance (max entrywise deviation from the adjoint).
pub const HERMITICITY_TOL: f64 = 1e-12;
/// Unitarity check tolerance (max entrywise deviation of U U† from 𝟙).
pub const UNITARITY_TOL: f64 = 1e-10;
/// Unit-trace check tolerance for density matrices.
pub const TRACE_TOL: f64 = 1e-12;
/// Most negative eigenvalue a density matrix may carry before rejection.
pub const EIGENVALUE_FLOOR: f64 = -1e-10;
/// Jacobi convergence threshold: largest off-diagonal magnitude.
pub const JACOBI_OFFDIAG_TOL: f64 = 1e-13;
/// Hard cap on Jacobi sweeps; 4×4 Hermitian problems converge in a handful.
pub const JACOBI_MAX_SWEEPS: usize = 100;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Column vector in ℂ⁴ (a pure two-qubit state when normalized).
pub type Vec4 = [C64; 4];

/// Plain 4×4 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat4(pub [[C64; 4]; 4]);

impl Mat4 {
    pub fn zero() -> Self {
        Mat4([[ZERO; 4]; 4])
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            m.0[i][i] = ONE;
        }
        m
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = f(i, j);
            }
        }
        m
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Mat4::from_fn(|i, j| self.0[j][i].conj())
    }

    /// Entrywise complex conjugate (no transpose).
    pub fn conj(&self) -> Self {
        Mat4::from_fn(|i, j| self.0[i][j].conj())
    }

    pub fn mul(&self, rhs: &Mat4) -> Mat4 {
        let mut m = Mat4::zero();
        for i in 0..4 {
            for k in 0..4 {
                let a = self.0[i][k];
                if a == ZERO {
                    continue;
                }
                for j in 0..4 {
                    m.0[i][j] += a * rhs.0[k][j];
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &Vec4) -> Vec4 {
        let mut out = [ZERO; 4];
        for i in 0..4 {
            for j in 0..4 {
                out[i] += self.0[i][j] * v[j];
            }
        }
        out
    }

    pub fn add(&self, rhs: &Mat4) -> Mat4 {
        Mat4::from_fn(|i, j| self.0[i][j] + rhs.0[i][j])
    }

    pub fn sub(&self, rhs: &Mat4) -> Mat4 {
        Mat4::from_fn(|i, j| self.0[i][j] - rhs.0[i][j])
    }

    pub fn scale(&self, s: C64) -> Mat4 {
        Mat4::from_fn(|i, j| s * self.0[i][j])
    }

    pub fn trace(&self) -> C64 {
        self.0[0][0] + self.0[1][1] + self.0[2][2] + self.0[3][3]
    }

    /// Largest entry magnitude (entrywise ∞-norm).
    pub fn max_abs(&self) -> f64 {
        let mut m = 0.0f64;
        for row in &self.0 {
            for e in row {
                m = m.max(e.norm());
            }
        }
        m
    }

    /// Frobenius norm.
    pub fn frobenius(&self) -> f64 {
        let mut s = 0.0;
        for row in &self.0 {
            for e in row {
                s += e.norm_sqr();
            }
        }
        s.sqrt()
    }

    /// Outer product ψ ψ†.
    pub fn outer(v: &Vec4) -> Mat4 {
        Mat4::from_fn(|i, j| v[i] * v[j].conj())
    }
}

/// Plain 2×2 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[C64; 2]; 2]);

impl Mat2 {
    pub fn trace(&self) -> C64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn max_abs(&self) -> f64 {
        let mut m = 0.0f64;
        for row in &self.0 {
            for e in row {
                m = m.max(e.norm());
            }
        }
        m
    }
}

/// Validated Hermitian 4×4 matrix.
#[derive(Debug, Clone, Copy)]
pub struct Hermitian4(Mat4);

impl Hermitian4 {
    /// Accepts `m` if it equals its adjoint entrywise within
    /// [`HERMITICITY_TOL`].
    pub fn new(m: Mat4) -> Result<Self> {
        let dev = m.sub(&m.adjoint()).max_abs();
        if dev > HERMITICITY_TOL {
            return Err(Error::Validation(format!(
                "matrix is not Hermitian: max |M - M†| = {dev:.3e}"
            )));
        }
        Ok(Hermitian4(m))
    }

    pub fn from_real_diag(d: [f64; 4]) -> Self {
        let mut m = Mat4::zero();
        for i in 0..4 {
            m.0[i][i] = C64::new(d[i], 0.0);
        }
        Hermitian4(m)
    }

    pub fn matrix(&self) -> &Mat4 {
        &self.0
    }
}

/// Validated unitary 4×4 matrix.
#[derive(Debug, Clone, Copy)]
pub struct Unitary4(Mat4);

impl Unitary4 {
    /// Accepts `m` if U U† = 𝟙 entrywise within [`UNITARITY_TOL`].
    pub fn new(m: Mat4) -> Result<Self> {
        let dev = m.mul(&m.adjoint()).sub(&Mat4::identity()).max_abs();
        if dev > UNITARITY_TOL {
            return Err(Error::Validation(format!(
                "matrix is not unitary: max |U U† - 1| = {dev:.3e}"
            )));
        }
        Ok(Unitary4(m))
    }

    /// Wraps a matrix that is unitary by construction (e.g. a product of
    /// exact rotations). The caller is responsible for the invariant.
    pub fn new_unchecked(m: Mat4) -> Self {
        Unitary4(m)
    }

    pub fn matrix(&self) -> &Mat4 {
        &self.0
    }

    /// Conjugation U M U†.
    pub fn conjugate(&self, m: &Mat4) -> Mat4 {
        self.0.mul(m).mul(&self.0.adjoint())
    }
}

/// Validated two-qubit density matrix: Hermitian, unit trace, positive
/// semidefinite (within [`EIGENVALUE_FLOOR`]).
#[derive(Debug, Clone, Copy)]
pub struct Density4(Mat4);

impl Density4 {
    pub fn new(m: Mat4) -> Result<Self> {
        let h = Hermitian4::new(m)
            .map_err(|_| Error::Validation("density matrix is not Hermitian".into()))?;
        let tr = m.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::Validation(format!(
                "density matrix trace is {tr}, expected 1"
            )));
        }
        let eigs = hermitian_eigen(&h)?.values;
        if eigs[3] < EIGENVALUE_FLOOR {
            return Err(Error::Validation(format!(
                "density matrix has negative eigenvalue {:.3e}",
                eigs[3]
            )));
        }
        Ok(Density4(m))
    }

    /// Wraps a matrix that satisfies the density invariants by construction
    /// (e.g. unitary conjugation of a valid state, or a convex mixture).
    pub fn new_unchecked(m: Mat4) -> Self {
        Density4(m)
    }

    /// ψ ψ† for a normalized state vector.
    pub fn pure(psi: &Vec4) -> Result<Self> {
        let norm: f64 = psi.iter().map(|c| c.norm_sqr()).sum();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::Validation(format!(
                "state vector has norm² = {norm}, expected 1"
            )));
        }
        Ok(Density4(Mat4::outer(psi)))
    }

    pub fn matrix(&self) -> &Mat4 {
        &self.0
    }

    /// Tr[ρ²]; equals 1 exactly on pure states.
    pub fn purity(&self) -> f64 {
        self.0.mul(&self.0).trace().re
    }
}

/// Validated single-qubit density matrix.
#[derive(Debug, Clone, Copy)]
pub struct Density2(Mat2);

impl Density2 {
    pub fn new(m: Mat2) -> Result<Self> {
        let herm = (m.0[0][1] - m.0[1][0].conj()).norm() > HERMITICITY_TOL
            || m.0[0][0].im.abs() > HERMITICITY_TOL
            || m.0[1][1].im.abs() > HERMITICITY_TOL;
        if herm {
            return Err(Error::Validation("2×2 density matrix is not Hermitian".into()));
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL {
            return Err(Error::Validation(format!(
                "2×2 density matrix trace is {}, expected 1",
                tr.re
            )));
        }
        let d = Density2(m);
        let [_, lo] = d.eigenvalues();
        if lo < EIGENVALUE_FLOOR {
            return Err(Error::Validation(format!(
                "2×2 density matrix has negative eigenvalue {lo:.3e}"
            )));
        }
        Ok(d)
    }

    pub fn new_unchecked(m: Mat2) -> Self {
        Density2(m)
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.0
    }

    /// Eigenvalues in descending order, from the closed 2×2 form.
    pub fn eigenvalues(&self) -> [f64; 2] {
        let a = self.0 .0[0][0].re;
        let d = self.0 .0[1][1].re;
        let mid = 0.5 * (a + d);
        let rad = (0.25 * (a - d) * (a - d) + self.0 .0[0][1].norm_sqr()).sqrt();
        [mid + rad, mid - rad]
    }
}

/// Spectral decomposition of a Hermitian 4×4 matrix. Eigenvalues are sorted
/// in descending order; column `j` of `vectors` is the eigenvector of
/// `values[j]`.
#[derive(Debug, Clone, Copy)]
pub struct EigSystem4 {
    pub values: [f64; 4],
    pub vectors: Unitary4,
}

/// Cyclic Jacobi diagonalization with complex rotations.
///
/// Sweeps all six (p, q) pivots until the largest off-diagonal magnitude
/// drops below [`JACOBI_OFFDIAG_TOL`], capped at [`JACOBI_MAX_SWEEPS`]
/// sweeps. Unconditionally stable at this size.
pub fn hermitian_eigen(h: &Hermitian4) -> Result<EigSystem4> {
    let mut a = h.matrix().0;
    let mut v = Mat4::identity().0;

    let off_max = |a: &[[C64; 4]; 4]| -> f64 {
        let mut m = 0.0f64;
        for p in 0..4 {
            for q in 0..4 {
                if p != q {
                    m = m.max(a[p][q].norm());
                }
            }
        }
        m
    };

    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_max(&a) < JACOBI_OFFDIAG_TOL {
            converged = true;
            break;
        }
        for p in 0..3 {
            for q in (p + 1)..4 {
                let apq = a[p][q];
                let r = apq.norm();
                if r < 1e-300 {
                    continue;
                }
                // Rotation in the (p, q) plane annihilating a[p][q]:
                // with a[p][q] = r e^{iφ} and τ = (a_qq − a_pp)/(2r), take the
                // stable root of t² + 2τt − 1 = 0.
                let phase = apq / r;
                let tau = (a[q][q].re - a[p][p].re) / (2.0 * r);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let spe = phase.scale(s); // s e^{iφ}

                // Right-multiply by the rotation: columns p and q.
                for i in 0..4 {
                    let aip = a[i][p];
                    let aiq = a[i][q];
                    a[i][p] = c * aip - spe.conj() * aiq;
                    a[i][q] = spe * aip + c * aiq;
                }
                // Left-multiply by its adjoint: rows p and q.
                for j in 0..4 {
                    let apj = a[p][j];
                    let aqj = a[q][j];
                    a[p][j] = c * apj - spe * aqj;
                    a[q][j] = spe.conj() * apj + c * aqj;
                }
                // Clean up roundoff where zeros are guaranteed.
                a[p][q] = ZERO;
                a[q][p] = ZERO;
                a[p][p] = C64::new(a[p][p].re, 0.0);
                a[q][q] = C64::new(a[q][q].re, 0.0);

                // Accumulate eigenvectors: V ← V · rotation.
                for i in 0..4 {
                    let vip = v[i][p];
                    let viq = v[i][q];
                    v[i][p] = c * vip - spe.conj() * viq;
                    v[i][q] = spe * vip + c * viq;
                }
            }
        }
    }
    if !converged && off_max(&a) >= JACOBI_OFFDIAG_TOL {
        return Err(Error::Numeric(format!(
            "Jacobi did not converge in {JACOBI_MAX_SWEEPS} sweeps; residual {:.3e}",
            off_max(&a)
        )));
    }

    // Sort eigenpairs descending.
    let mut order = [0usize, 1, 2, 3];
    order.sort_by(|&i, &j| a[j][j].re.partial_cmp(&a[i][i].re).unwrap());
    let values = [
        a[order[0]][order[0]].re,
        a[order[1]][order[1]].re,
        a[order[2]][order[2]].re,
        a[order[3]][order[3]].re,
    ];
    let vectors = Mat4::from_fn(|i, j| v[i][order[j]]);
    Ok(EigSystem4 {
        values,
        vectors: Unitary4::new(vectors)?,
    })
}

/// Propagator U(t) = Σ_j e^{−i E_j t} |v_j⟩⟨v_j| from a spectral
/// decomposition (ħ = 1).
pub fn evolve_unitary(sys: &EigSystem4, t: f64) -> Unitary4 {
    let v = sys.vectors.matrix();
    let phases: [C64; 4] = core::array::from_fn(|j| {
        C64::from_polar(1.0, -sys.values[j] * t)
    });
    let mut u = Mat4::zero();
    for a in 0..4 {
        for b in 0..4 {
            let mut acc = ZERO;
            for j in 0..4 {
                acc += phases[j] * v.0[a][j] * v.0[b][j].conj();
            }
            u.0[a][b] = acc;
        }
    }
    Unitary4::new_unchecked(u)
}

/// Evolve a density matrix under a fixed Hamiltonian for time `t`:
/// ρ(t) = U(t) ρ U†(t).
pub fn evolve(h: &Hermitian4, rho: &Density4, t: f64) -> Result<Density4> {
    let sys = hermitian_eigen(h)?;
    let u = evolve_unitary(&sys, t);
    Ok(Density4::new_unchecked(u.conjugate(rho.matrix())))
}

/// Which qubit the partial trace keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Qubit {
    First,
    Second,
}

/// Trace out one qubit of a two-qubit state.
pub fn partial_trace(rho: &Density4, keep: Qubit) -> Density2 {
    let r = &rho.matrix().0;
    let mut s = [[ZERO; 2]; 2];
    for a in 0..2 {
        for b in 0..2 {
            let mut acc = ZERO;
            for c in 0..2 {
                acc += match keep {
                    Qubit::First => r[2 * a + c][2 * b + c],
                    Qubit::Second => r[2 * c + a][2 * c + b],
                };
            }
            s[a][b] = acc;
        }
    }
    Density2::new_unchecked(Mat2(s))
}

/// Solve A x = b for one right-hand side by Gaussian elimination with
/// partial pivoting.
pub(crate) fn solve4_vec(a: &Mat4, b: &Vec4) -> Result<Vec4> {
    let mut m = a.0;
    let mut x = *b;
    for col in 0..4 {
        let mut piv = col;
        for row in (col + 1)..4 {
            if m[row][col].norm() > m[piv][col].norm() {
                piv = row;
            }
        }
        if m[piv][col].norm() < 1e-300 {
            return Err(Error::Numeric("singular 4×4 system".into()));
        }
        m.swap(col, piv);
        x.swap(col, piv);
        let inv = ONE / m[col][col];
        for row in (col + 1)..4 {
            let f = m[row][col] * inv;
            if f == ZERO {
                continue;
            }
            for k in col..4 {
                let sub = f * m[col][k];
                m[row][k] -= sub;
            }
            let sub = f * x[col];
            x[row] -= sub;
        }
    }
    for col in (0..4).rev() {
        let mut acc = x[col];
        for k in (col + 1)..4 {
            acc -= m[col][k] * x[k];
        }
        x[col] = acc / m[col][col];
    }
    Ok(x)
}

fn solve4_mat(a: &Mat4, b: &Mat4) -> Result<Mat4> {
    let mut out = Mat4::zero();
    for j in 0..4 {
        let col = [b.0[0][j], b.0[1][j], b.0[2][j], b.0[3][j]];
        let x = solve4_vec(a, &col)?;
        for i in 0..4 {
            out.0[i][j] = x[i];
        }
    }
    Ok(out)
}

/// One Cayley step: U = A⁻¹ A† with A = 𝟙 + i H dt/2.
///
/// Exactly unitary for Hermitian H (up to solver roundoff), and agrees with
/// e^{−i H dt} through second order in dt.
pub fn cayley_step(h: &Hermitian4, dt: f64) -> Result<Unitary4> {
    let a = cayley_lhs(h, dt);
    let u = solve4_mat(&a, &a.adjoint())?;
    Ok(Unitary4::new_unchecked(u))
}

/// Apply one Cayley step directly to a state vector (same transform as
/// [`cayley_step`], one linear solve instead of four).
pub(crate) fn cayley_apply(h: &Hermitian4, dt: f64, psi: &Vec4) -> Result<Vec4> {
    let a = cayley_lhs(h, dt);
    let rhs = a.adjoint().mul_vec(psi);
    solve4_vec(&a, &rhs)
}

fn cayley_lhs(h: &Hermitian4, dt: f64) -> Mat4 {
    let i_half_dt = C64::new(0.0, 0.5 * dt);
    Mat4::identity().add(&h.matrix().scale(i_half_dt))
}
