use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::state::StateVector;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

/// Complex 2×2 matrix in angular-frequency units (ħ = 1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Hamiltonian2x2 {
    pub h11: C64,
    pub h12: C64,
    pub h21: C64,
    pub h22: C64,
}

impl Hamiltonian2x2 {
    pub const fn new(h11: C64, h12: C64, h21: C64, h22: C64) -> Self {
        Self { h11, h12, h21, h22 }
    }

    pub const fn identity() -> Self {
        Self::new(ONE, ZERO, ZERO, ONE)
    }

    pub fn trace(&self) -> C64 {
        self.h11 + self.h22
    }

    pub fn det(&self) -> C64 {
        self.h11 * self.h22 - self.h12 * self.h21
    }

    pub fn adjoint(&self) -> Self {
        Self::new(self.h11.conj(), self.h21.conj(), self.h12.conj(), self.h22.conj())
    }

    pub fn scale(&self, s: C64) -> Self {
        Self::new(self.h11 * s, self.h12 * s, self.h21 * s, self.h22 * s)
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.h11 + o.h11, self.h12 + o.h12, self.h21 + o.h21, self.h22 + o.h22)
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(self.h11 - o.h11, self.h12 - o.h12, self.h21 - o.h21, self.h22 - o.h22)
    }

    pub fn matmul(&self, o: &Self) -> Self {
        Self::new(
            self.h11 * o.h11 + self.h12 * o.h21,
            self.h11 * o.h12 + self.h12 * o.h22,
            self.h21 * o.h11 + self.h22 * o.h21,
            self.h21 * o.h12 + self.h22 * o.h22,
        )
    }

    pub fn apply(&self, c: &StateVector) -> StateVector {
        StateVector::new(
            self.h11 * c.c1 + self.h12 * c.c2,
            self.h21 * c.c1 + self.h22 * c.c2,
        )
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        [self.h11, self.h12, self.h21, self.h22]
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.sub(&self.adjoint()).max_abs() <= tol
    }

    /// Eigenvalues ordered by real part. The root of larger modulus is formed
    /// directly and the other one from the determinant, so a small eigenvalue
    /// next to a large one keeps its relative accuracy.
    pub fn eigenvalues(&self) -> (C64, C64) {
        let mean = self.trace() * 0.5;
        let half_gap = (self.h11 - self.h22) * 0.5;
        let disc = (half_gap * half_gap + self.h12 * self.h21).sqrt();
        let big = if (mean.conj() * disc).re >= 0.0 { mean + disc } else { mean - disc };
        let small = if big == ZERO { ZERO } else { self.det() / big };
        if big.re <= small.re {
            (big, small)
        } else {
            (small, big)
        }
    }

    /// Exact propagator `exp(-i H dt)` for constant `H`.
    ///
    /// Writing `-i H dt = μ I + A` with `A` traceless gives `A² = q² I`, hence
    /// `exp(-i H dt) = e^μ (cosh q · I + sinh(q)/q · A)`.
    pub fn propagator(&self, dt: f64) -> Self {
        let m = self.scale(-I * dt);
        let mu = m.trace() * 0.5;
        let a11 = m.h11 - mu;
        let q2 = a11 * a11 + m.h12 * m.h21;
        let (ch, shc) = cosh_sinhc(q2);
        let e = mu.exp();
        Self::new(
            e * (ch + shc * a11),
            e * shc * m.h12,
            e * shc * m.h21,
            e * (ch - shc * a11),
        )
    }
}

/// `(cosh q, sinh q / q)` as functions of `q²`; both are even in `q`, so
/// the branch of the square root does not matter.
fn cosh_sinhc(q2: C64) -> (C64, C64) {
    if q2.norm() < 1e-6 {
        let q4 = q2 * q2;
        let ch = ONE + q2 / 2.0 + q4 / 24.0 + q4 * q2 / 720.0;
        let shc = ONE + q2 / 6.0 + q4 / 120.0 + q4 * q2 / 5040.0;
        (ch, shc)
    } else {
        let q = q2.sqrt();
        (q.cosh(), q.sinh() / q)
    }
}
