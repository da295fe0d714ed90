//! Drive models and synthesis of the gain/loss term.

pub mod closed_form;
mod drive;
mod gamma;
mod io;
mod spline;
mod validate;

pub use drive::{DriveModel, DriveSample, DriveTable};
pub use io::read_gamma_csv;
pub use gamma::{gamma_shortcut, synthesize_profile, GammaKind, GammaPolicy, ShortcutProfile, Sign};
pub use spline::CubicSpline;
pub use validate::{validate_model, ModelDiagnostics, Parity, PARITY_TOL};
