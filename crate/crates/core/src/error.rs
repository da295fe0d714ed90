use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// The shortcut rate 2θ̇/sin2θ diverges where the coupling is not positive.
    #[error("coupling vanishes at t = {t}: Ω = {omega} (the shortcut does not exist)")]
    CouplingVanishes { t: f64, omega: f64 },

    #[error("invalid time window [{start}, {end}]: need finite start < end")]
    Window { start: f64, end: f64 },

    #[error("invalid model: {0}")]
    Model(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("step size underflow at t = {t} (h = {h:e})")]
    StepUnderflow { t: f64, h: f64 },

    #[error("tolerances infeasible (rel = {rel:e}, abs = {abs:e})")]
    Tolerance { rel: f64, abs: f64 },

    #[error("step budget of {max_steps} exhausted at t = {t}")]
    StepBudget { t: f64, max_steps: usize },

    #[error("non-finite state encountered at t = {t}")]
    NonFinite { t: f64 },

    #[error("quadrature on [{a}, {b}] did not reach {tol:e} (estimate {estimate:e})")]
    Quadrature { a: f64, b: f64, tol: f64, estimate: f64 },

    #[error("malformed table: {0}")]
    Table(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
