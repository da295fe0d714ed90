use serde::{Deserialize, Serialize};

use super::drive::DriveModel;
use crate::window::Window;

/// Relative tolerance for the numeric parity classification.
pub const PARITY_TOL: f64 = 1e-9;

const PROBE_POINTS: usize = 2001;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Even,
    Odd,
    /// Both even and odd, i.e. identically zero on the probe grid.
    Zero,
    Neither,
}

impl Parity {
    pub fn is_even(self) -> bool {
        matches!(self, Parity::Even | Parity::Zero)
    }

    pub fn is_odd(self) -> bool {
        matches!(self, Parity::Odd | Parity::Zero)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelDiagnostics {
    pub min_coupling: f64,
    pub min_coupling_at: f64,
    pub coupling_parity: Parity,
    pub detuning_parity: Parity,
    pub symmetric_window: bool,
    /// True when the endpoint norm is guaranteed to return to one: even
    /// coupling, odd detuning, symmetric window, positive coupling.
    pub norm_guarantee: bool,
    pub warnings: Vec<String>,
}

impl ModelDiagnostics {
    pub fn is_valid(&self) -> bool {
        self.min_coupling > 0.0
    }
}

pub fn validate_model(model: &DriveModel, window: Window) -> ModelDiagnostics {
    let mut warnings = Vec::new();
    let grid = window.grid(PROBE_POINTS);

    let (min_coupling_at, min_coupling) = grid
        .iter()
        .map(|&t| (t, model.coupling(t)))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("probe grid is never empty");
    if !(min_coupling > 0.0) {
        warnings.push(format!(
            "coupling reaches {min_coupling} at t = {min_coupling_at}; the shortcut does not exist there"
        ));
    }

    let symmetric_window = window.is_symmetric();
    // parity probes pair t with -t; without a symmetric window they use the
    // largest symmetric sub-interval
    let half = window.end.min(-window.start);
    let (coupling_parity, detuning_parity) = if half > 0.0 {
        let probes = Window { start: 0.0, end: half }.grid(PROBE_POINTS / 2 + 1);
        (
            classify(&probes, |t| model.coupling(t)),
            classify(&probes, |t| model.detuning(t)),
        )
    } else {
        warnings.push("window does not straddle t = 0; parity not assessed".into());
        (Parity::Neither, Parity::Neither)
    };

    if !symmetric_window {
        warnings.push(format!(
            "window [{}, {}] is not symmetric; endpoint norm need not return to one",
            window.start, window.end
        ));
    }
    if !coupling_parity.is_even() {
        warnings.push("coupling is not even in time".into());
    }
    if !detuning_parity.is_odd() {
        warnings.push("detuning is not odd in time".into());
    }
    if let DriveModel::Tabulated(tab) = model {
        let (lo, hi) = tab.range();
        if window.start < lo || window.end > hi {
            warnings.push(format!(
                "window extends beyond table range [{lo}, {hi}]; values are extrapolated linearly"
            ));
        }
    }

    let norm_guarantee = symmetric_window
        && coupling_parity.is_even()
        && detuning_parity.is_odd()
        && min_coupling > 0.0;

    ModelDiagnostics {
        min_coupling,
        min_coupling_at,
        coupling_parity,
        detuning_parity,
        symmetric_window,
        norm_guarantee,
        warnings,
    }
}

fn classify(probes: &[f64], f: impl Fn(f64) -> f64) -> Parity {
    let mut even = true;
    let mut odd = true;
    for &t in probes {
        let (a, b) = (f(t), f(-t));
        let scale = a.abs().max(b.abs());
        if (a - b).abs() > PARITY_TOL * scale {
            even = false;
        }
        if (a + b).abs() > PARITY_TOL * scale {
            odd = false;
        }
    }
    match (even, odd) {
        (true, true) => Parity::Zero,
        (true, false) => Parity::Even,
        (false, true) => Parity::Odd,
        (false, false) => Parity::Neither,
    }
}
