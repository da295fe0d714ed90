//! Instantaneous eigenframe of the Hermitian part and the Hamiltonian in
//! both bases.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::matrix::Hamiltonian2x2;
use crate::error::{Error, Result};
use crate::models::{DriveModel, GammaPolicy};

/// Mixing angle, its rate and the adiabatic eigenvalues at one instant.
///
/// `sin_2theta` and `cos_2theta` are `Ω/r` and `Δ/r` with `r = hypot(Ω, Δ)`,
/// formed directly rather than through `theta`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdiabaticFrame {
    pub theta: f64,
    pub theta_dot: f64,
    pub lambda_minus: f64,
    pub lambda_plus: f64,
    pub sin_2theta: f64,
    pub cos_2theta: f64,
}

impl AdiabaticFrame {
    pub fn at(model: &DriveModel, t: f64) -> Result<Self> {
        let s = model.sample(t);
        require_coupling(s.coupling, t)?;
        let r = s.coupling.hypot(s.detuning);
        let (lambda_minus, lambda_plus) = eigenpair(s.coupling, s.detuning);
        Ok(Self {
            theta: 0.5 * s.coupling.atan2(s.detuning),
            theta_dot: rate_from_model(model, t),
            lambda_minus,
            lambda_plus,
            sin_2theta: s.coupling / r,
            cos_2theta: s.detuning / r,
        })
    }

    /// `λ+ − λ-`.
    pub fn gap(&self) -> f64 {
        self.lambda_plus - self.lambda_minus
    }
}

fn require_coupling(coupling: f64, t: f64) -> Result<()> {
    if coupling > 0.0 && coupling.is_finite() {
        Ok(())
    } else {
        Err(Error::CouplingVanishes { t, omega: coupling })
    }
}

/// Continuous branch `θ = ½ atan2(Ω, Δ) ∈ (0, π/2)`: `θ → π/2` as `Δ → -∞`
/// and `θ → 0` as `Δ → +∞`, exactly `π/4` at `Δ = 0`.
pub fn mixing_angle(model: &DriveModel, t: f64) -> Result<f64> {
    let om = model.coupling(t);
    require_coupling(om, t)?;
    Ok(0.5 * om.atan2(model.detuning(t)))
}

/// `θ` without the positivity check; used for bookkeeping in trajectory
/// records where the drive may legitimately touch Ω = 0.
pub fn mixing_angle_unchecked(model: &DriveModel, t: f64) -> f64 {
    0.5 * model.coupling(t).atan2(model.detuning(t))
}

/// Nonadiabatic coupling `dθ/dt`.
pub fn mixing_angle_rate(model: &DriveModel, t: f64) -> Result<f64> {
    require_coupling(model.coupling(t), t)?;
    Ok(rate_from_model(model, t))
}

fn rate_from_model(model: &DriveModel, t: f64) -> f64 {
    match model {
        // Lorentzian
        DriveModel::LandauZener { omega } => -omega / (2.0 * (omega * omega + t * t)),
        // δα cosh t / (δ² − 2α² − δ² cosh 2t), divided through by cosh² t so
        // that it stays finite for large |t|
        DriveModel::AllenEberly { alpha, delta } => {
            let sech = 1.0 / t.cosh();
            let tanh = t.tanh();
            let om = alpha * sech;
            let de = delta * tanh;
            -alpha * delta * sech / (2.0 * (om * om + de * de))
        }
        DriveModel::Tabulated(_) => {
            let s = model.sample(t);
            (s.coupling_rate * s.detuning - s.coupling * s.detuning_rate)
                / (2.0 * (s.coupling * s.coupling + s.detuning * s.detuning))
        }
    }
}

/// `λ± = ½(Δ ± sqrt(Ω² + Δ²))`, ordered `(λ-, λ+)`.
pub fn adiabatic_eigenvalues(model: &DriveModel, t: f64) -> (f64, f64) {
    eigenpair(model.coupling(t), model.detuning(t))
}

// the root away from zero is formed directly, its partner from λ+λ- = -Ω²/4
fn eigenpair(coupling: f64, detuning: f64) -> (f64, f64) {
    let r = coupling.hypot(detuning);
    let prod = -0.25 * coupling * coupling;
    if detuning >= 0.0 {
        let plus = 0.5 * (detuning + r);
        let minus = if plus == 0.0 { 0.0 } else { prod / plus };
        (minus, plus)
    } else {
        let minus = 0.5 * (detuning - r);
        (minus, prod / minus)
    }
}

/// Bare-basis Hamiltonian `[[iγ/2, Ω/2], [Ω/2, Δ − iγ/2]]`; Hermitian when
/// the policy yields γ = 0.
pub fn hamiltonian(model: &DriveModel, policy: &GammaPolicy, t: f64) -> Result<Hamiltonian2x2> {
    let gamma = policy.gamma(model, t)?;
    Ok(hamiltonian_with_gamma(model, t, gamma))
}

pub(crate) fn hamiltonian_with_gamma(model: &DriveModel, t: f64, gamma: f64) -> Hamiltonian2x2 {
    let half_om = C64::new(0.5 * model.coupling(t), 0.0);
    Hamiltonian2x2::new(
        C64::new(0.0, 0.5 * gamma),
        half_om,
        half_om,
        C64::new(model.detuning(t), -0.5 * gamma),
    )
}

/// Hamiltonian acting on `[a-, a+]`:
///
/// ```text
/// [[λ- + ½iγ cos2θ,  ½iγ sin2θ − iθ̇],
///  [½iγ sin2θ + iθ̇,  λ+ − ½iγ cos2θ]]
/// ```
pub fn adiabatic_hamiltonian(
    model: &DriveModel,
    policy: &GammaPolicy,
    t: f64,
) -> Result<Hamiltonian2x2> {
    let f = AdiabaticFrame::at(model, t)?;
    let gamma = policy.gamma(model, t)?;
    Ok(adiabatic_from_parts(&f, gamma))
}

pub(crate) fn adiabatic_from_parts(f: &AdiabaticFrame, gamma: f64) -> Hamiltonian2x2 {
    let half_g = 0.5 * gamma;
    let coupling = half_g * f.sin_2theta;
    Hamiltonian2x2::new(
        C64::new(f.lambda_minus, half_g * f.cos_2theta),
        C64::new(0.0, coupling - f.theta_dot),
        C64::new(0.0, coupling + f.theta_dot),
        C64::new(f.lambda_plus, -half_g * f.cos_2theta),
    )
}
