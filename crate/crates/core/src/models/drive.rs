use serde::{Deserialize, Serialize};

use super::spline::CubicSpline;
use crate::error::{Error, Result};

/// Sampled drive `(t, Ω, Δ)` interpolated by natural cubic splines; the
/// derivatives come from differentiating the interpolant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DriveTable {
    coupling: CubicSpline,
    detuning: CubicSpline,
}

impl DriveTable {
    pub fn new(times: Vec<f64>, coupling: Vec<f64>, detuning: Vec<f64>) -> Result<Self> {
        Ok(Self {
            coupling: CubicSpline::new(times.clone(), coupling)?,
            detuning: CubicSpline::new(times, detuning)?,
        })
    }

    pub fn from_fn(times: Vec<f64>, f: impl Fn(f64) -> (f64, f64)) -> Result<Self> {
        let (om, de): (Vec<f64>, Vec<f64>) = times.iter().map(|&t| f(t)).unzip();
        Self::new(times, om, de)
    }

    pub fn times(&self) -> &[f64] {
        self.coupling.knots()
    }

    pub fn coupling_samples(&self) -> &[f64] {
        self.coupling.values()
    }

    pub fn detuning_samples(&self) -> &[f64] {
        self.detuning.values()
    }

    pub fn range(&self) -> (f64, f64) {
        self.coupling.range()
    }
}

/// The pulse pair `Ω(t)`, `Δ(t)` in dimensionless time with ħ = 1.
///
/// * `LandauZener`: `Ω = ω`, `Δ = T` (time in units of 1/β, `ω = Ω₀/β`).
/// * `AllenEberly`: `Ω = α sech t`, `Δ = δ tanh t` (time in units of τ,
///   `α = Ω₀τ`, `δ = Dτ`).
/// * `Tabulated`: spline through samples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DriveModel {
    LandauZener { omega: f64 },
    AllenEberly { alpha: f64, delta: f64 },
    Tabulated(DriveTable),
}

/// Drive values and their time derivatives at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriveSample {
    pub coupling: f64,
    pub detuning: f64,
    pub coupling_rate: f64,
    pub detuning_rate: f64,
}

impl DriveModel {
    pub fn landau_zener(omega: f64) -> Result<Self> {
        if !(omega.is_finite() && omega > 0.0) {
            return Err(Error::Model(format!("LZ coupling ω must be finite and > 0, got {omega}")));
        }
        Ok(Self::LandauZener { omega })
    }

    pub fn allen_eberly(alpha: f64, delta: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(Error::Model(format!("AE pulse area α must be finite and > 0, got {alpha}")));
        }
        if !delta.is_finite() {
            return Err(Error::Model(format!("AE chirp δ must be finite, got {delta}")));
        }
        Ok(Self::AllenEberly { alpha, delta })
    }

    pub fn tabulated(table: DriveTable) -> Self {
        Self::Tabulated(table)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::LandauZener { .. } => "lz",
            Self::AllenEberly { .. } => "ae",
            Self::Tabulated(_) => "table",
        }
    }

    pub fn coupling(&self, t: f64) -> f64 {
        match self {
            Self::LandauZener { omega } => *omega,
            Self::AllenEberly { alpha, .. } => alpha / t.cosh(),
            Self::Tabulated(tab) => tab.coupling.eval(t),
        }
    }

    pub fn detuning(&self, t: f64) -> f64 {
        match self {
            Self::LandauZener { .. } => t,
            Self::AllenEberly { delta, .. } => delta * t.tanh(),
            Self::Tabulated(tab) => tab.detuning.eval(t),
        }
    }

    pub fn sample(&self, t: f64) -> DriveSample {
        match self {
            Self::LandauZener { omega } => DriveSample {
                coupling: *omega,
                detuning: t,
                coupling_rate: 0.0,
                detuning_rate: 1.0,
            },
            Self::AllenEberly { alpha, delta } => {
                let sech = 1.0 / t.cosh();
                let tanh = t.tanh();
                DriveSample {
                    coupling: alpha * sech,
                    detuning: delta * tanh,
                    coupling_rate: -alpha * sech * tanh,
                    detuning_rate: delta * sech * sech,
                }
            }
            Self::Tabulated(tab) => {
                let (coupling, coupling_rate) = tab.coupling.eval_with_derivative(t);
                let (detuning, detuning_rate) = tab.detuning.eval_with_derivative(t);
                DriveSample { coupling, detuning, coupling_rate, detuning_rate }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructors_validate() {
        assert!(DriveModel::landau_zener(0.0).is_err());
        assert!(DriveModel::landau_zener(-1.0).is_err());
        assert!(DriveModel::landau_zener(f64::NAN).is_err());
        assert!(DriveModel::allen_eberly(0.0, 1.0).is_err());
        assert!(DriveModel::allen_eberly(1.0, f64::INFINITY).is_err());
        assert!(DriveModel::allen_eberly(1.0, 1.0).is_ok());
    }

    #[test]
    fn pulse_shapes() {
        let lz = DriveModel::landau_zener(0.2).unwrap();
        assert_eq!(lz.coupling(-7.0), 0.2);
        assert_eq!(lz.detuning(-7.0), -7.0);

        let ae = DriveModel::allen_eberly(2.0, 1.0).unwrap();
        assert_eq!(ae.coupling(0.0), 2.0);
        assert_eq!(ae.detuning(0.0), 0.0);
        assert!((ae.coupling(1.0) - 2.0 / 1f64.cosh()).abs() < 1e-15);
        assert!((ae.detuning(-1.0) + 1f64.tanh()).abs() < 1e-15);
    }

    #[test]
    fn analytic_rates_match_central_differences() {
        let ae = DriveModel::allen_eberly(1.3, 0.7).unwrap();
        let h = 1e-5;
        for &t in &[-3.0, -0.4, 0.0, 0.9, 5.0] {
            let s = ae.sample(t);
            let dom = (ae.coupling(t + h) - ae.coupling(t - h)) / (2.0 * h);
            let dde = (ae.detuning(t + h) - ae.detuning(t - h)) / (2.0 * h);
            assert!((s.coupling_rate - dom).abs() < 1e-9);
            assert!((s.detuning_rate - dde).abs() < 1e-9);
        }
    }

    #[test]
    fn table_of_constant_drive() {
        let tab = DriveTable::new(vec![0.0, 10.0], vec![1.0, 1.0], vec![0.0, 0.0]).unwrap();
        let m = DriveModel::tabulated(tab);
        let s = m.sample(3.3);
        assert_eq!((s.coupling, s.detuning, s.coupling_rate, s.detuning_rate), (1.0, 0.0, 0.0, 0.0));
    }
}
