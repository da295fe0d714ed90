use num_complex::Complex64 as C64;

use super::config::SimulationConfig;
use super::dop853::{self, StepStats, Tolerances, Y};
use super::trajectory::{TrajectoryRecord, TrajectoryRow};
use crate::error::{Error, Result};
use crate::models::{DriveModel, GammaPolicy};
use crate::system::{hamiltonian_with_gamma, mixing_angle_unchecked, to_adiabatic_basis, StateVector};

const MAX_STEPS: usize = 20_000_000;
const MINUS_I: C64 = C64::new(0.0, -1.0);

/// Solves `dc/dt = -i H(t) c` over the configured window with DOP853 and
/// returns the dense-output trajectory.
///
/// Edges of the gain/loss window that fall strictly inside the simulation
/// window split the run into segments; the step controller restarts at each
/// one so the jump in γ never sits inside a step.
pub fn integrate(config: &SimulationConfig) -> Result<TrajectoryRecord> {
    config.validate()?;
    let w = config.window;
    let model = &config.model;
    let policy = &config.policy;
    let y0 = config.initial.resolve(model, w.start)?;

    let times = w.grid(config.samples);
    let mut breaks = vec![w.start];
    if !policy.is_off() {
        for edge in [policy.window.start, policy.window.end] {
            if edge > w.start && edge < w.end {
                breaks.push(edge);
            }
        }
    }
    breaks.push(w.end);
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();

    let tol = Tolerances { rel: config.rel_tol, abs: config.abs_tol };
    let mut stats = StepStats::default();
    let mut rows = Vec::with_capacity(times.len());
    rows.push(make_row(model, policy, w.start, y0)?);

    let mut y: Y = y0.as_array();
    let mut pending_err: Option<Error> = None;
    for seg in breaks.windows(2) {
        let (a, b) = (seg[0], seg[1]);
        let gamma_on = !policy.is_off() && policy.window.contains(0.5 * (a + b));
        let mut rhs = |t: f64, c: &Y| -> Result<Y> {
            let gamma = if gamma_on { policy.gamma(model, t)? } else { 0.0 };
            let h = hamiltonian_with_gamma(model, t, gamma);
            let hc = h.apply(&StateVector::from_array(*c));
            Ok([hc.c1 * MINUS_I, hc.c2 * MINUS_I])
        };
        let lo = times.partition_point(|&t| t <= a);
        let hi = times.partition_point(|&t| t <= b);
        let mut on_sample = |t: f64, c: Y| {
            if pending_err.is_none() {
                match make_row(model, policy, t, StateVector::from_array(c)) {
                    Ok(r) => rows.push(r),
                    Err(e) => pending_err = Some(e),
                }
            }
        };
        y = dop853::integrate(
            &mut rhs,
            a,
            b,
            y,
            tol,
            &times[lo..hi],
            &mut on_sample,
            &mut stats,
            MAX_STEPS,
        )?;
        if let Some(e) = pending_err.take() {
            return Err(e);
        }
    }
    debug_assert_eq!(rows.len(), times.len());

    Ok(TrajectoryRecord { config: config.clone(), stats, rows })
}

fn make_row(model: &DriveModel, policy: &GammaPolicy, t: f64, c: StateVector) -> Result<TrajectoryRow> {
    if !c.is_finite() {
        return Err(Error::NonFinite { t });
    }
    let theta = mixing_angle_unchecked(model, t);
    let a = to_adiabatic_basis(&c, theta);
    Ok(TrajectoryRow {
        t,
        c,
        abs_a_minus: a.a_minus.norm(),
        abs_a_plus: a.a_plus.norm(),
        gamma: policy.gamma(model, t)?,
        theta,
    })
}
