//! State vectors and the 2×2 Hamiltonian algebra in the bare and adiabatic
//! bases.

mod frame;
mod matrix;
mod state;

pub use frame::{
    adiabatic_eigenvalues, adiabatic_hamiltonian, hamiltonian, mixing_angle,
    mixing_angle_rate, mixing_angle_unchecked, AdiabaticFrame,
};
pub(crate) use frame::hamiltonian_with_gamma;
pub use matrix::Hamiltonian2x2;
pub use state::{from_adiabatic_basis, to_adiabatic_basis, AdiabaticAmplitudes, StateVector};
