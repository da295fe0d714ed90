use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

/// Bare-state amplitudes `[c1, c2]`. No unit-norm constraint: non-Hermitian
/// evolution changes the norm mid-run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StateVector {
    pub c1: C64,
    pub c2: C64,
}

impl StateVector {
    pub const fn new(c1: C64, c2: C64) -> Self {
        Self { c1, c2 }
    }

    pub fn real(c1: f64, c2: f64) -> Self {
        Self::new(C64::new(c1, 0.0), C64::new(c2, 0.0))
    }

    pub fn bare1() -> Self {
        Self::real(1.0, 0.0)
    }

    pub fn bare2() -> Self {
        Self::real(0.0, 1.0)
    }

    pub fn p1(&self) -> f64 {
        self.c1.norm_sqr()
    }

    pub fn p2(&self) -> f64 {
        self.c2.norm_sqr()
    }

    /// `sqrt(P1 + P2)`.
    pub fn norm(&self) -> f64 {
        self.c1.norm().hypot(self.c2.norm())
    }

    pub fn is_finite(&self) -> bool {
        self.c1.is_finite() && self.c2.is_finite()
    }

    /// Euclidean distance in C².
    pub fn distance(&self, other: &Self) -> f64 {
        (self.c1 - other.c1).norm().hypot((self.c2 - other.c2).norm())
    }

    pub fn as_array(&self) -> [C64; 2] {
        [self.c1, self.c2]
    }

    pub fn from_array(a: [C64; 2]) -> Self {
        Self::new(a[0], a[1])
    }
}

/// Amplitudes on the instantaneous eigenbasis `|φ-⟩, |φ+⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdiabaticAmplitudes {
    pub a_minus: C64,
    pub a_plus: C64,
}

/// `a = R(θ)ᵀ c` with `R = [[cos θ, sin θ], [-sin θ, cos θ]]`.
pub fn to_adiabatic_basis(c: &StateVector, theta: f64) -> AdiabaticAmplitudes {
    let (s, co) = theta.sin_cos();
    AdiabaticAmplitudes {
        a_minus: c.c1 * co - c.c2 * s,
        a_plus: c.c1 * s + c.c2 * co,
    }
}

/// `c = R(θ) a`.
pub fn from_adiabatic_basis(a: &AdiabaticAmplitudes, theta: f64) -> StateVector {
    let (s, co) = theta.sin_cos();
    StateVector {
        c1: a.a_minus * co + a.a_plus * s,
        c2: -a.a_minus * s + a.a_plus * co,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn adiabatic_start_is_pure_plus() {
        for &theta in &[0.1, 0.7, 1.3, 1.5375] {
            let c = StateVector::real(f64::sin(theta), f64::cos(theta));
            let a = to_adiabatic_basis(&c, theta);
            assert!(a.a_minus.norm() < 1e-16);
            assert!((a.a_plus - 1.0).norm() < 1e-15);
        }
    }

    #[test]
    fn identity_and_quarter_rotation() {
        let a = to_adiabatic_basis(&StateVector::bare1(), 0.0);
        assert_eq!(a.a_minus, C64::new(1.0, 0.0));
        assert_eq!(a.a_plus, C64::new(0.0, 0.0));

        let a = to_adiabatic_basis(&StateVector::bare1(), FRAC_PI_2);
        assert!(a.a_minus.norm() < 1e-16);
        assert!((a.a_plus - 1.0).norm() < 1e-16);
    }

    #[test]
    fn norm_ignores_phase() {
        let c = StateVector::new(C64::new(0.6, 0.0), C64::new(0.0, 0.8));
        assert!((c.norm() - 1.0).abs() < 1e-15);
        assert!((c.p1() - 0.36).abs() < 1e-15);
        assert!((c.p2() - 0.64).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn basis_round_trip(
            re1 in -3.0f64..3.0, im1 in -3.0f64..3.0,
            re2 in -3.0f64..3.0, im2 in -3.0f64..3.0,
            theta in -4.0f64..4.0,
        ) {
            let c = StateVector::new(C64::new(re1, im1), C64::new(re2, im2));
            let back = from_adiabatic_basis(&to_adiabatic_basis(&c, theta), theta);
            let scale = c.norm().max(1.0);
            prop_assert!(back.distance(&c) <= 4.0 * f64::EPSILON * scale);
            // rotation is orthogonal: the norm is preserved
            let a = to_adiabatic_basis(&c, theta);
            let na = a.a_minus.norm().hypot(a.a_plus.norm());
            prop_assert!((na - c.norm()).abs() <= 4.0 * f64::EPSILON * scale);
        }
    }
}
