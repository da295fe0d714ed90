//! Physics diagnostics built on top of the integrator: transfer fidelity,
//! parity of the gain/loss integral, bare-energy geometry and reference
//! survival probabilities.

mod checks;
mod energy;
mod transfer;

pub use checks::{
    lz_survival_oracle, lz_survival_oracle_steps, parity_integral,
    sign_flip_check, sign_flip_check_with, SignFlipReport, SignFlipRun, SURVIVAL_ORACLE_STEPS,
};
pub use energy::{energy_track, EnergyTrack};
pub use transfer::{norm_sq_rate, transfer_report, TransferReport};
