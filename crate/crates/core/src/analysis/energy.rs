use std::io::Write;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::models::{DriveModel, GammaPolicy};
use crate::window::Window;

/// Bare (diagonal) energies `ε1 = iγ/2`, `ε2 = Δ − iγ/2` over a window.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnergyTrack {
    pub times: Vec<f64>,
    pub epsilon1: Vec<C64>,
    pub epsilon2: Vec<C64>,
    /// `min |ε1 − ε2| = min sqrt(Δ² + γ²)` over the stored samples.
    pub separation_min: f64,
    pub separation_min_at: f64,
}

pub fn energy_track(
    model: &DriveModel,
    policy: &GammaPolicy,
    window: Window,
    n: usize,
) -> Result<EnergyTrack> {
    let window = Window::new(window.start, window.end)?;
    if n < 2 {
        return Err(Error::Config(format!("energy track needs at least 2 samples, got {n}")));
    }
    let times = window.grid(n);
    let mut epsilon1 = Vec::with_capacity(n);
    let mut epsilon2 = Vec::with_capacity(n);
    let mut best = (f64::INFINITY, times[0]);
    for &t in &times {
        let (e1, e2) = bare_energies(model, policy, t)?;
        let sep = (e1 - e2).norm();
        if sep < best.0 {
            best = (sep, t);
        }
        epsilon1.push(e1);
        epsilon2.push(e2);
    }
    Ok(EnergyTrack { times, epsilon1, epsilon2, separation_min: best.0, separation_min_at: best.1 })
}

fn bare_energies(model: &DriveModel, policy: &GammaPolicy, t: f64) -> Result<(C64, C64)> {
    let gamma = policy.gamma(model, t)?;
    Ok((C64::new(0.0, 0.5 * gamma), C64::new(model.detuning(t), -0.5 * gamma)))
}

impl EnergyTrack {
    /// Minimum separation located off the sample grid: golden-section search
    /// on the bracket around the best sample. Returns `(t, separation)`.
    pub fn refined_separation_min(
        &self,
        model: &DriveModel,
        policy: &GammaPolicy,
    ) -> Result<(f64, f64)> {
        let sep = |t: f64| -> Result<f64> {
            let (e1, e2) = bare_energies(model, policy, t)?;
            Ok((e1 - e2).norm())
        };
        let i = self.times.iter().position(|&t| t == self.separation_min_at).unwrap_or(0);
        let lo = self.times[i.saturating_sub(1)];
        let hi = self.times[(i + 1).min(self.times.len() - 1)];
        let (t, v) = golden_section(sep, lo, hi)?;
        if v <= self.separation_min {
            Ok((t, v))
        } else {
            Ok((self.separation_min_at, self.separation_min))
        }
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
        w.write_record(["t", "re_e1", "im_e1", "re_e2", "im_e2"])?;
        for ((t, e1), e2) in self.times.iter().zip(&self.epsilon1).zip(&self.epsilon2) {
            w.write_record([t, &e1.re, &e1.im, &e2.re, &e2.im].iter().map(|v| format!("{v:?}")))?;
        }
        w.flush()?;
        Ok(())
    }
}

fn golden_section(f: impl Fn(f64) -> Result<f64>, mut a: f64, mut b: f64) -> Result<(f64, f64)> {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    for _ in 0..200 {
        if (b - a).abs() <= 1e-14 * (1.0 + a.abs().max(b.abs())) {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d)?;
        }
    }
    let t = 0.5 * (a + b);
    let ft = f(t)?;
    Ok([(t, ft), (c, fc), (d, fd)]
        .into_iter()
        .min_by(|x, y| x.1.total_cmp(&y.1))
        .expect("three candidates"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::Sign;

    fn lz(om: f64) -> DriveModel {
        DriveModel::landau_zener(om).unwrap()
    }

    #[test]
    fn hermitian_levels_cross() {
        let w = Window::symmetric(15.0).unwrap();
        let tr = energy_track(&lz(1.0), &GammaPolicy::off(), w, 3001).unwrap();
        assert_eq!(tr.separation_min, 0.0);
        assert_eq!(tr.separation_min_at, 0.0);
    }

    #[test]
    fn shortcut_levels_avoid_each_other() {
        let w = Window::symmetric(15.0).unwrap();
        let pol = GammaPolicy::shortcut(Sign::Plus, w);
        let tr = energy_track(&lz(1.0), &pol, w, 3001).unwrap();
        assert_eq!(tr.separation_min, 1.0);
        assert_eq!(tr.separation_min_at, 0.0);
        // |ε1 − ε2| = sqrt(T² + 1/(1 + T²))
        for (i, &t) in tr.times.iter().enumerate().step_by(37) {
            let s = (tr.epsilon1[i] - tr.epsilon2[i]).norm();
            assert!((s - (t * t + 1.0 / (1.0 + t * t)).sqrt()).abs() < 1e-13);
        }
        let tr = energy_track(&lz(0.2), &pol, w, 3001).unwrap();
        assert!(tr.separation_min > 1.0);
    }

    #[test]
    fn refinement_finds_off_grid_minimum() {
        // for ω < 1 the minimum sqrt(2 − ω²) sits at T² = 1 − ω²
        let w = Window::symmetric(15.0).unwrap();
        let pol = GammaPolicy::shortcut(Sign::Plus, w);
        let tr = energy_track(&lz(0.2), &pol, w, 3001).unwrap();
        let (t, v) = tr.refined_separation_min(&lz(0.2), &pol).unwrap();
        assert!((v - (2.0f64 - 0.04).sqrt()).abs() < 1e-12);
        assert!((t.abs() - 0.96f64.sqrt()).abs() < 1e-6);
        assert!(v <= tr.separation_min);
    }

    #[test]
    fn csv_layout() {
        let w = Window::symmetric(1.0).unwrap();
        let tr = energy_track(&lz(1.0), &GammaPolicy::shortcut(Sign::Plus, w), w, 3).unwrap();
        let mut buf = Vec::new();
        tr.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "t,re_e1,im_e1,re_e2,im_e2");
        assert_eq!(lines[2], "0.0,0.0,-0.5,0.0,0.5");
    }
}
