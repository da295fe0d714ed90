//! Propagation of `i dc/dt = H(t) c`: adaptive Runge–Kutta with dense
//! output, a midpoint-exponential oracle, and the closed-form amplitude of
//! the decoupled evolution.

mod amplitude;
mod config;
mod dop853;
mod oracle;
mod propagate;
mod trajectory;

pub use amplitude::closed_form_a_plus;
pub use config::{InitialState, SimulationConfig, DEFAULT_ABS_TOL, DEFAULT_REL_TOL, DEFAULT_SAMPLES, MIN_REL_TOL};
pub use dop853::StepStats;
pub use oracle::{oracle_propagator_matrix, propagator_oracle};
pub use propagate::integrate;
pub use trajectory::{read_rows_csv, write_rows_csv, TrajectoryRecord, TrajectoryRow, CSV_HEADER};
