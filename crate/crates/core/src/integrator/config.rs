use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::models::{DriveModel, GammaPolicy};
use crate::system::{mixing_angle, StateVector};
use crate::window::Window;

pub const DEFAULT_REL_TOL: f64 = 1e-10;
pub const DEFAULT_ABS_TOL: f64 = 1e-14;
pub const DEFAULT_SAMPLES: usize = 1001;

/// Smallest relative tolerance the stepper will accept.
pub const MIN_REL_TOL: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "state", rename_all = "snake_case")]
pub enum InitialState {
    /// `[1, 0]`
    Bare1,
    /// `[0, 1]`
    Bare2,
    /// `[sin θ(tI), cos θ(tI)]`, exactly the upper adiabatic state.
    AdiabaticExact,
    /// `[cos θ(tI), -sin θ(tI)]`, exactly the lower adiabatic state.
    AdiabaticMinus,
    Custom(StateVector),
}

impl InitialState {
    pub fn resolve(&self, model: &DriveModel, t: f64) -> Result<StateVector> {
        Ok(match self {
            Self::Bare1 => StateVector::bare1(),
            Self::Bare2 => StateVector::bare2(),
            Self::AdiabaticExact => {
                let (s, c) = mixing_angle(model, t)?.sin_cos();
                StateVector::real(s, c)
            }
            Self::AdiabaticMinus => {
                let (s, c) = mixing_angle(model, t)?.sin_cos();
                StateVector::real(c, -s)
            }
            Self::Custom(c) => *c,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationConfig {
    pub model: DriveModel,
    pub policy: GammaPolicy,
    pub window: Window,
    pub initial: InitialState,
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Number of dense-output rows, endpoints included.
    pub samples: usize,
}

impl SimulationConfig {
    /// Defaults: adiabatic start, `rel_tol = 1e-10`, `abs_tol = 1e-14`,
    /// 1001 rows.
    pub fn new(model: DriveModel, policy: GammaPolicy, window: Window) -> Self {
        Self {
            model,
            policy,
            window,
            initial: InitialState::AdiabaticExact,
            rel_tol: DEFAULT_REL_TOL,
            abs_tol: DEFAULT_ABS_TOL,
            samples: DEFAULT_SAMPLES,
        }
    }

    pub fn with_initial(mut self, initial: InitialState) -> Self {
        self.initial = initial;
        self
    }

    pub fn with_tolerances(mut self, rel_tol: f64, abs_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self.abs_tol = abs_tol;
        self
    }

    pub fn with_samples(mut self, samples: usize) -> Self {
        self.samples = samples;
        self
    }

    pub fn validate(&self) -> Result<()> {
        Window::new(self.window.start, self.window.end)?;
        if !(self.rel_tol.is_finite() && self.abs_tol.is_finite())
            || self.rel_tol <= 0.0
            || self.abs_tol <= 0.0
            || self.rel_tol < MIN_REL_TOL
        {
            return Err(Error::Tolerance { rel: self.rel_tol, abs: self.abs_tol });
        }
        if self.samples < 2 {
            return Err(Error::Config(format!("samples must be at least 2, got {}", self.samples)));
        }
        if let InitialState::Custom(c) = &self.initial {
            if !c.is_finite() {
                return Err(Error::Config("custom initial state is not finite".into()));
            }
        }
        Ok(())
    }
}
