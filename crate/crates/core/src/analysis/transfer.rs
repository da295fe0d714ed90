use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::integrator::TrajectoryRecord;
use crate::system::{to_adiabatic_basis, Hamiltonian2x2, StateVector};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransferReport {
    pub final_p1: f64,
    pub final_p2: f64,
    pub final_norm: f64,
    pub max_abs_a_minus: f64,
    pub final_theta: f64,
    pub final_abs_a_plus: f64,
    /// `cos²θ(tF) · |a+(tF)|²`, the decoupled-evolution prediction.
    pub predicted_p2: f64,
    /// `cos²θ(tF)`, the prediction when the endpoint norm is one.
    pub predicted_p2_unit_norm: f64,
}

impl TransferReport {
    pub fn prediction_error(&self) -> f64 {
        (self.final_p2 - self.predicted_p2).abs()
    }
}

pub fn transfer_report(traj: &TrajectoryRecord) -> Result<TransferReport> {
    let last = traj
        .rows
        .last()
        .ok_or_else(|| Error::Config("empty trajectory".into()))?;
    let a = to_adiabatic_basis(&last.c, last.theta);
    let cos2 = last.theta.cos().powi(2);
    Ok(TransferReport {
        final_p1: last.p1(),
        final_p2: last.p2(),
        final_norm: last.norm(),
        max_abs_a_minus: traj.max_abs_a_minus(),
        final_theta: last.theta,
        final_abs_a_plus: a.a_plus.norm(),
        predicted_p2: cos2 * a.a_plus.norm_sqr(),
        predicted_p2_unit_norm: cos2,
    })
}

/// `d‖c‖²/dt = 2 Im⟨c|H|c⟩`; negative where loss dominates.
pub fn norm_sq_rate(h: &Hamiltonian2x2, c: &StateVector) -> f64 {
    let hc = h.apply(c);
    2.0 * (c.c1.conj() * hc.c1 + c.c2.conj() * hc.c2).im
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64 as C64;

    #[test]
    fn norm_rate_of_diagonal_gain_loss() {
        let g = -0.8;
        let h = Hamiltonian2x2::new(C64::new(0.0, g / 2.0), C64::new(0.3, 0.0), C64::new(0.3, 0.0), C64::new(1.0, -g / 2.0));
        // |1⟩ loses at rate γ, |2⟩ gains
        assert!((norm_sq_rate(&h, &StateVector::bare1()) - g).abs() < 1e-15);
        assert!((norm_sq_rate(&h, &StateVector::bare2()) + g).abs() < 1e-15);
        let herm = Hamiltonian2x2::new(C64::new(0.0, 0.0), C64::new(0.3, 0.1), C64::new(0.3, -0.1), C64::new(1.0, 0.0));
        let c = StateVector::new(C64::new(0.3, 0.2), C64::new(-0.5, 0.7));
        assert!(norm_sq_rate(&herm, &c).abs() < 1e-15);
    }
}
