use serde::{Deserialize, Serialize};

use super::drive::DriveModel;
use super::spline::CubicSpline;
use crate::error::{Error, Result};
use crate::window::Window;

/// Orientation of the gain/loss term. `Minus` swaps gain and loss, which
/// nulls the lower-left adiabatic coupling instead of the upper-right one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum GammaKind {
    Off,
    Shortcut(Sign),
    /// Sampled γ(t), cubic-spline interpolated.
    Custom(CubicSpline),
}

/// How the imaginary diagonal term is chosen. γ is exactly zero outside
/// `window`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GammaPolicy {
    pub kind: GammaKind,
    pub window: Window,
}

impl GammaPolicy {
    pub fn off() -> Self {
        Self { kind: GammaKind::Off, window: Window::default() }
    }

    pub fn shortcut(sign: Sign, window: Window) -> Self {
        Self { kind: GammaKind::Shortcut(sign), window }
    }

    pub fn custom(samples: CubicSpline) -> Self {
        let (start, end) = samples.range();
        Self { kind: GammaKind::Custom(samples), window: Window { start, end } }
    }

    pub fn is_off(&self) -> bool {
        matches!(self.kind, GammaKind::Off)
    }

    pub fn label(&self) -> &'static str {
        match self.kind {
            GammaKind::Off => "off",
            GammaKind::Shortcut(Sign::Plus) => "shortcut",
            GammaKind::Shortcut(Sign::Minus) => "shortcut-neg",
            GammaKind::Custom(_) => "custom",
        }
    }

    pub fn gamma(&self, model: &DriveModel, t: f64) -> Result<f64> {
        if !self.window.contains(t) {
            return Ok(0.0);
        }
        match &self.kind {
            GammaKind::Off => Ok(0.0),
            GammaKind::Shortcut(sign) => gamma_shortcut(model, t, *sign),
            GammaKind::Custom(spline) => Ok(spline.eval(t)),
        }
    }
}

/// `sign · 2θ̇ / sin 2θ`: the rate that cancels the nonadiabatic coupling
/// between the adiabatic states.
///
/// With `θ̇ = (Ω̇Δ − ΩΔ̇) / 2r²` and `sin 2θ = Ω/r` this is evaluated as
/// `(Ω̇Δ/Ω − Δ̇) / r`, which reproduces `-1/sqrt(ω² + T²)` for LZ and
/// `-δ/α` at the AE pulse peak without rounding.
pub fn gamma_shortcut(model: &DriveModel, t: f64, sign: Sign) -> Result<f64> {
    let s = model.sample(t);
    if !(s.coupling > 0.0 && s.coupling.is_finite()) {
        return Err(Error::CouplingVanishes { t, omega: s.coupling });
    }
    let r = s.coupling.hypot(s.detuning);
    let numer = s.coupling_rate * s.detuning / s.coupling - s.detuning_rate;
    Ok(sign.value() * (numer / r))
}

/// Synthesized γ time series over a window.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShortcutProfile {
    pub times: Vec<f64>,
    pub gamma: Vec<f64>,
    pub sign: Sign,
    pub peak_magnitude: f64,
    pub window: Window,
}

impl ShortcutProfile {
    /// Linear interpolation between samples; zero outside the window.
    pub fn value_at(&self, t: f64) -> f64 {
        if !self.window.contains(t) {
            return 0.0;
        }
        let i = self.times.partition_point(|&x| x <= t).clamp(1, self.times.len() - 1);
        let (t0, t1) = (self.times[i - 1], self.times[i]);
        let w = (t - t0) / (t1 - t0);
        self.gamma[i - 1] * (1.0 - w) + self.gamma[i] * w
    }

    /// Time at which |γ| peaks.
    pub fn peak_time(&self) -> f64 {
        let i = self
            .gamma
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
            .map(|(i, _)| i)
            .unwrap_or(0);
        self.times[i]
    }

    pub fn write_csv<W: std::io::Write>(&self, out: W) -> Result<()> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
        w.write_record(["t", "gamma"])?;
        for (t, g) in self.times.iter().zip(&self.gamma) {
            w.write_record([format!("{t:?}"), format!("{g:?}")])?;
        }
        w.flush()?;
        Ok(())
    }
}

pub fn synthesize_profile(
    model: &DriveModel,
    window: Window,
    n: usize,
    sign: Sign,
) -> Result<ShortcutProfile> {
    let window = Window::new(window.start, window.end)?;
    if n < 2 {
        return Err(Error::Config(format!("profile needs at least 2 samples, got {n}")));
    }
    let times = window.grid(n);
    let gamma = times
        .iter()
        .map(|&t| gamma_shortcut(model, t, sign))
        .collect::<Result<Vec<_>>>()?;
    let peak_magnitude = gamma.iter().fold(0.0f64, |m, g| m.max(g.abs()));
    Ok(ShortcutProfile { times, gamma, sign, peak_magnitude, window })
}
