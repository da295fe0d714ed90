use std::fs::File;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use adiashort::integrator::{DEFAULT_ABS_TOL, DEFAULT_REL_TOL, DEFAULT_SAMPLES};
use adiashort::models::{read_gamma_csv, validate_model, DriveTable, Sign};
use adiashort::{DriveModel, GammaPolicy, InitialState, SimulationConfig, StateVector, Window};
use clap::{Args, ValueEnum};
use num_complex::Complex64 as C64;

use crate::error::{classify, CliError, CliResult};

#[derive(Debug, Clone, PartialEq)]
pub enum ModelSpec {
    Lz,
    Ae,
    Table(PathBuf),
}

impl FromStr for ModelSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lz" => Ok(Self::Lz),
            "ae" => Ok(Self::Ae),
            _ => match s.strip_prefix("table:") {
                Some(p) if !p.is_empty() => Ok(Self::Table(PathBuf::from(p))),
                _ => Err(format!("expected lz, ae or table:<path>, got {s:?}")),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum GammaSpec {
    Off,
    Shortcut,
    ShortcutNeg,
    File(PathBuf),
}

impl FromStr for GammaSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "off" => Ok(Self::Off),
            "shortcut" => Ok(Self::Shortcut),
            "shortcut-neg" => Ok(Self::ShortcutNeg),
            _ => match s.strip_prefix("file:") {
                Some(p) if !p.is_empty() => Ok(Self::File(PathBuf::from(p))),
                _ => Err(format!("expected off, shortcut, shortcut-neg or file:<path>, got {s:?}")),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum InitSpec {
    Bare1,
    Bare2,
    Adiabatic,
    AdiabaticMinus,
    Custom(StateVector),
}

impl FromStr for InitSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "bare1" => Ok(Self::Bare1),
            "bare2" => Ok(Self::Bare2),
            "adiabatic" => Ok(Self::Adiabatic),
            "adiabatic-minus" => Ok(Self::AdiabaticMinus),
            _ => {
                let body = s
                    .strip_prefix("custom:")
                    .ok_or_else(|| format!("expected bare1, bare2, adiabatic, adiabatic-minus or custom:<c1r,c1i,c2r,c2i>, got {s:?}"))?;
                let v: Vec<f64> = body
                    .split(',')
                    .map(|x| x.trim().parse::<f64>().map_err(|e| format!("custom state component {x:?}: {e}")))
                    .collect::<Result<_, _>>()?;
                if v.len() != 4 || v.iter().any(|x| !x.is_finite()) {
                    return Err(format!("custom state needs four finite numbers, got {body:?}"));
                }
                Ok(Self::Custom(StateVector::new(C64::new(v[0], v[1]), C64::new(v[2], v[3]))))
            }
        }
    }
}

impl InitSpec {
    fn to_initial(&self) -> InitialState {
        match self {
            Self::Bare1 => InitialState::Bare1,
            Self::Bare2 => InitialState::Bare2,
            Self::Adiabatic => InitialState::AdiabaticExact,
            Self::AdiabaticMinus => InitialState::AdiabaticMinus,
            Self::Custom(c) => InitialState::Custom(*c),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Drive, γ policy, window and initial state shared by all run commands.
/// `--omega`, `--alpha` and `--delta` accept comma-separated lists; only
/// `scan` allows more than one value.
#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// lz, ae or table:<path> (CSV with columns t, coupling, detuning)
    #[arg(long, default_value = "lz")]
    pub model: ModelSpec,
    /// LZ coupling in units of β
    #[arg(long, value_delimiter = ',', default_value = "1", allow_negative_numbers = true)]
    pub omega: Vec<f64>,
    /// AE peak coupling in units of 1/τ
    #[arg(long, value_delimiter = ',', default_value = "1", allow_negative_numbers = true)]
    pub alpha: Vec<f64>,
    /// AE chirp amplitude in units of 1/τ
    #[arg(long, value_delimiter = ',', default_value = "1", allow_negative_numbers = true)]
    pub delta: Vec<f64>,
    /// off, shortcut, shortcut-neg or file:<path> (CSV with columns t, gamma)
    #[arg(long, default_value = "shortcut")]
    pub gamma: GammaSpec,
    #[arg(long, default_value_t = -15.0, allow_negative_numbers = true)]
    pub t0: f64,
    #[arg(long, default_value_t = 15.0, allow_negative_numbers = true)]
    pub t1: f64,
    /// bare1, bare2, adiabatic, adiabatic-minus or custom:<c1r,c1i,c2r,c2i>
    #[arg(long, default_value = "adiabatic")]
    pub init: InitSpec,
    /// Number of output rows, endpoints included
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,
    #[arg(long, default_value_t = DEFAULT_REL_TOL)]
    pub rel_tol: f64,
    #[arg(long, default_value_t = DEFAULT_ABS_TOL)]
    pub abs_tol: f64,
}

/// One point of a parameter scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Params {
    pub omega: f64,
    pub alpha: f64,
    pub delta: f64,
}

impl RunArgs {
    pub fn window(&self) -> CliResult<Window> {
        Window::new(self.t0, self.t1).map_err(classify)
    }

    /// Parameter combinations relevant to the chosen model.
    pub fn grid(&self) -> Vec<Params> {
        match self.model {
            ModelSpec::Lz => self.omega.iter().map(|&omega| Params { omega, alpha: f64::NAN, delta: f64::NAN }).collect(),
            ModelSpec::Ae => self
                .alpha
                .iter()
                .flat_map(|&alpha| self.delta.iter().map(move |&delta| Params { omega: f64::NAN, alpha, delta }))
                .collect(),
            ModelSpec::Table(_) => vec![Params { omega: f64::NAN, alpha: f64::NAN, delta: f64::NAN }],
        }
    }

    pub fn single(&self) -> CliResult<Params> {
        let grid = self.grid();
        match grid.as_slice() {
            [p] => Ok(*p),
            _ => Err(CliError::usage("parameter lists are only accepted by `scan`")),
        }
    }

    pub fn model(&self, p: Params) -> CliResult<DriveModel> {
        match &self.model {
            ModelSpec::Lz => DriveModel::landau_zener(p.omega).map_err(classify),
            ModelSpec::Ae => DriveModel::allen_eberly(p.alpha, p.delta).map_err(classify),
            ModelSpec::Table(path) => {
                let file = open_input(path)?;
                let table = DriveTable::read_csv(file)
                    .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
                Ok(DriveModel::tabulated(table))
            }
        }
    }

    pub fn policy(&self, window: Window) -> CliResult<GammaPolicy> {
        Ok(match &self.gamma {
            GammaSpec::Off => GammaPolicy::off(),
            GammaSpec::Shortcut => GammaPolicy::shortcut(Sign::Plus, window),
            GammaSpec::ShortcutNeg => GammaPolicy::shortcut(Sign::Minus, window),
            GammaSpec::File(path) => {
                let spline = read_gamma_csv(open_input(path)?)
                    .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
                GammaPolicy::custom(spline)
            }
        })
    }

    /// Fully validated configuration; nothing is written before this
    /// succeeds.
    pub fn config(&self, p: Params) -> CliResult<SimulationConfig> {
        let window = self.window()?;
        let model = self.model(p)?;
        let policy = self.policy(window)?;
        let needs_frame = matches!(self.gamma, GammaSpec::Shortcut | GammaSpec::ShortcutNeg)
            || matches!(self.init, InitSpec::Adiabatic | InitSpec::AdiabaticMinus);
        if needs_frame {
            let diag = validate_model(&model, window);
            if diag.min_coupling <= 0.0 {
                return Err(CliError::usage(format!(
                    "coupling vanishes at t = {} on the window; the adiabatic frame is undefined",
                    diag.min_coupling_at
                )));
            }
        }
        let cfg = SimulationConfig::new(model, policy, window)
            .with_initial(self.init.to_initial())
            .with_tolerances(self.rel_tol, self.abs_tol)
            .with_samples(self.samples);
        cfg.validate().map_err(classify)?;
        Ok(cfg)
    }
}

fn open_input(path: &Path) -> CliResult<File> {
    File::open(path).map_err(|e| CliError::usage(format!("cannot open {}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_specs() {
        assert_eq!("lz".parse::<ModelSpec>().unwrap(), ModelSpec::Lz);
        assert_eq!("table:x.csv".parse::<ModelSpec>().unwrap(), ModelSpec::Table("x.csv".into()));
        assert!("table:".parse::<ModelSpec>().is_err());
        assert_eq!("shortcut-neg".parse::<GammaSpec>().unwrap(), GammaSpec::ShortcutNeg);
        assert!("on".parse::<GammaSpec>().is_err());
        let InitSpec::Custom(c) = "custom:1,0,0,-0.5".parse::<InitSpec>().unwrap() else { panic!() };
        assert_eq!(c.c2, C64::new(0.0, -0.5));
        assert!("custom:1,2,3".parse::<InitSpec>().is_err());
        assert!("custom:1,2,3,nan".parse::<InitSpec>().is_err());
    }
}
