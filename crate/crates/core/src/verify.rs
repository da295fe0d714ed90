//! Acceptance criteria.
//!
//! Each criterion runs a fixed set of scenarios and reports a list of
//! checks, each with the measured value and the limit it was held to.
//! Errors raised while running a scenario count as failed checks rather
//! than aborting the whole suite.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{energy_track, lz_survival_oracle_steps, parity_integral, sign_flip_check_with};
use crate::error::Result;
use crate::integrator::{
    closed_form_a_plus, integrate, propagator_oracle, InitialState, SimulationConfig,
    TrajectoryRecord,
};
use crate::models::{closed_form::lz_asymptotic_survival, synthesize_profile, DriveModel, GammaPolicy, Sign};
use crate::system::{adiabatic_hamiltonian, to_adiabatic_basis};
use crate::window::Window;

pub const CRITERIA: [u8; 9] = [1, 2, 3, 4, 5, 6, 7, 8, 9];

const ORACLE_STEPS: usize = 200_000;
const HALF_WINDOW: f64 = 15.0;
const LZ_HALF_WINDOW: f64 = 200.0;
const QUAD_TOL: f64 = 1e-12;

/// Deliberate defects for negative-control runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Fault {
    /// Use `γ` with the wrong sign wherever the decoupling shortcut is meant.
    FlipShortcutSign,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Options {
    /// Oracle resolution reduced 10×, numerical tolerances relaxed 10×.
    pub fast: bool,
    pub fault: Option<Fault>,
}

impl Options {
    pub fn fast() -> Self {
        Self { fast: true, fault: None }
    }

    fn oracle_steps(&self) -> usize {
        if self.fast {
            ORACLE_STEPS / 10
        } else {
            ORACLE_STEPS
        }
    }

    /// Numerical-accuracy limit, relaxed in fast mode.
    fn tol(&self, x: f64) -> f64 {
        if self.fast {
            10.0 * x
        } else {
            x
        }
    }

    /// Limit on an oracle comparison. The oracle is second order, so ten
    /// times fewer slices cost a factor of a hundred in accuracy.
    fn oracle_tol(&self, x: f64) -> f64 {
        if self.fast {
            100.0 * x
        } else {
            x
        }
    }

    fn shortcut_sign(&self) -> Sign {
        match self.fault {
            Some(Fault::FlipShortcutSign) => Sign::Minus,
            None => Sign::Plus,
        }
    }

    fn configure(&self, cfg: SimulationConfig) -> SimulationConfig {
        if self.fast {
            let (rel, abs) = (cfg.rel_tol * 10.0, cfg.abs_tol * 10.0);
            cfg.with_tolerances(rel, abs)
        } else {
            cfg
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    AtMost,
    AtLeast,
    Above,
    Equal,
    Within,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub label: String,
    pub measured: f64,
    pub relation: Relation,
    /// Limit, or target value for `Equal`/`Within`.
    pub limit: f64,
    /// Half-width for `Within`.
    pub band: f64,
    pub passed: bool,
}

impl Check {
    pub fn at_most(label: impl Into<String>, measured: f64, limit: f64) -> Self {
        Self::build(label, measured, Relation::AtMost, limit, 0.0, measured <= limit)
    }

    pub fn at_least(label: impl Into<String>, measured: f64, limit: f64) -> Self {
        Self::build(label, measured, Relation::AtLeast, limit, 0.0, measured >= limit)
    }

    pub fn above(label: impl Into<String>, measured: f64, limit: f64) -> Self {
        Self::build(label, measured, Relation::Above, limit, 0.0, measured > limit)
    }

    pub fn equal(label: impl Into<String>, measured: f64, target: f64) -> Self {
        Self::build(label, measured, Relation::Equal, target, 0.0, measured == target)
    }

    pub fn within(label: impl Into<String>, measured: f64, target: f64, band: f64) -> Self {
        let ok = (measured - target).abs() <= band;
        Self::build(label, measured, Relation::Within, target, band, ok)
    }

    fn build(label: impl Into<String>, measured: f64, relation: Relation, limit: f64, band: f64, ok: bool) -> Self {
        // NaN never passes
        let passed = ok && measured.is_finite();
        Self { label: label.into(), measured, relation, limit, band, passed }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.passed { "ok" } else { "FAIL" };
        let rule = match self.relation {
            Relation::AtMost => format!("<= {:.3e}", self.limit),
            Relation::AtLeast => format!(">= {}", self.limit),
            Relation::Above => format!("> {:.3e}", self.limit),
            Relation::Equal => format!("== {}", self.limit),
            Relation::Within => format!("{} ± {:.1e}", self.limit, self.band),
        };
        write!(f, "[{mark}] {}: {:.6e} (expected {rule})", self.label, self.measured)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub checks: Vec<Check>,
    /// Set when a scenario could not be run at all.
    pub error: Option<String>,
}

impl CriterionResult {
    pub fn passed(&self) -> bool {
        self.error.is_none() && !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// `PASS 1 Decoupling (24/24 checks)`
    pub fn summary_line(&self) -> String {
        let ok = self.checks.iter().filter(|c| c.passed).count();
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let mut line = format!("{verdict} {} {} ({ok}/{} checks)", self.id, self.name, self.checks.len());
        if let Some(e) = &self.error {
            line.push_str(&format!(" error: {e}"));
        }
        line
    }
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.summary_line())?;
        for c in &self.checks {
            writeln!(f, "    {c}")?;
        }
        Ok(())
    }
}

pub fn criterion_name(id: u8) -> &'static str {
    match id {
        1 => "Decoupling",
        2 => "Perfect transfer",
        3 => "Endpoint norm unity",
        4 => "Hermitian baseline",
        5 => "Closed-form propagator",
        6 => "No complex crossing",
        7 => "Sign-flip asymmetry",
        8 => "Oracle equivalence",
        9 => "Gamma profile values",
        _ => "unknown",
    }
}

/// Run one criterion. Unknown ids produce a failed result.
pub fn run_criterion(id: u8, opts: &Options) -> CriterionResult {
    let mut checks = Vec::new();
    let outcome = match id {
        1 => decoupling(opts, &mut checks),
        2 => perfect_transfer(opts, &mut checks),
        3 => endpoint_norm(opts, &mut checks),
        4 => hermitian_baseline(opts, &mut checks),
        5 => closed_form(opts, &mut checks),
        6 => no_crossing(opts, &mut checks),
        7 => sign_flip(opts, &mut checks),
        8 => oracle_equivalence(opts, &mut checks),
        9 => gamma_profile(opts, &mut checks),
        _ => Err(crate::Error::Config(format!("no criterion {id}"))),
    };
    CriterionResult { id, name: criterion_name(id), checks, error: outcome.err().map(|e| e.to_string()) }
}

/// Run every criterion, in parallel, returning results in id order.
pub fn run_all(opts: &Options) -> Vec<CriterionResult> {
    CRITERIA.par_iter().map(|&id| run_criterion(id, opts)).collect()
}

fn sym() -> Window {
    Window { start: -HALF_WINDOW, end: HALF_WINDOW }
}

fn lz_window() -> Window {
    Window { start: -LZ_HALF_WINDOW, end: LZ_HALF_WINDOW }
}

const LZ_OMEGAS: [f64; 3] = [0.2, 1.0, 2.0];
const AE_ALPHAS: [f64; 3] = [0.2, 1.0, 2.0];

/// The six shortcut scenarios: LZ over ω, AE over α with δ = 1.
fn shortcut_models() -> Vec<(String, DriveModel)> {
    let lz = LZ_OMEGAS.iter().map(|&w| (format!("LZ ω={w}"), DriveModel::LandauZener { omega: w }));
    let ae = AE_ALPHAS
        .iter()
        .map(|&a| (format!("AE α={a} δ=1"), DriveModel::AllenEberly { alpha: a, delta: 1.0 }));
    lz.chain(ae).collect()
}

fn shortcut_config(model: &DriveModel, opts: &Options) -> SimulationConfig {
    let w = sym();
    opts.configure(SimulationConfig::new(model.clone(), GammaPolicy::shortcut(opts.shortcut_sign(), w), w))
}

/// Long-window Hermitian LZ run from |1⟩. Tighter tolerances than the
/// defaults: over 400 time units the default accumulates ~1e-8 norm drift.
fn hermitian_lz_config(omega: f64, opts: &Options) -> SimulationConfig {
    let cfg = SimulationConfig::new(DriveModel::LandauZener { omega }, GammaPolicy::off(), lz_window())
        .with_initial(InitialState::Bare1)
        .with_tolerances(1e-12, 1e-14)
        .with_samples(4001);
    opts.configure(cfg)
}

fn final_theta(traj: &TrajectoryRecord) -> f64 {
    traj.last().theta
}

fn decoupling(opts: &Options, checks: &mut Vec<Check>) -> Result<()> {
    for (label, model) in shortcut_models() {
        let cfg = shortcut_config(&model, opts);
        let mut worst = 0.0f64;
        for t in sym().grid(1000) {
            let h = adiabatic_hamiltonian(&model, &cfg.policy, t)?;
            let scale = 1f64.max(h.max_abs());
            worst = worst.max(h.h12.norm() / scale);
        }
        checks.push(Check::at_most(format!("{label}: max |H12|/scale"), worst, 1e-14));
        let traj = integrate(&cfg)?;
        checks.push(Check::at_most(format!("{label}: max |a-|"), traj.max_abs_a_minus(), opts.tol(1e-8)));
    }
    Ok(())
}

fn perfect_transfer(opts: &Options, checks: &mut Vec<Check>) -> Result<()> {
    for (label, model) in shortcut_models() {
        let traj = integrate(&shortcut_config(&model, opts))?;
        let p2 = traj.last().p2();
        checks.push(Check::at_least(format!("{label}: final P2"), p2, 0.995));
        let predicted = final_theta(&traj).cos().powi(2);
        checks.push(Check::at_most(
            format!("{label}: |P2 - cos²θ(tF)|"),
            (p2 - predicted).abs(),
            opts.tol(1e-8),
        ));
    }
    Ok(())
}

fn endpoint_norm(opts: &Options, checks: &mut Vec<Check>) -> Result<()> {
    for (label, model) in shortcut_models() {
        let traj = integrate(&shortcut_config(&model, opts))?;
        checks.push(Check::at_most(
            format!("{label}: |norm(tF) - 1|"),
            (traj.last().norm() - 1.0).abs(),
            opts.tol(1e-8),
        ));
        let parity = parity_integral(&model, sym(), QUAD_TOL)?;
        checks.push(Check::at_most(format!("{label}: |parity integral|"), parity.abs(), opts.tol(1e-10)));
        if matches!(model, DriveModel::LandauZener { omega } if omega == 0.2) {
            checks.push(Check::above(format!("{label}: max |norm - 1|"), traj.max_norm_deviation(), 0.05));
        }
    }
    Ok(())
}

fn hermitian_baseline(opts: &Options, checks: &mut Vec<Check>) -> Result<()> {
    for omega in LZ_OMEGAS {
        let traj = integrate(&hermitian_lz_config(omega, opts))?;
        checks.push(Check::at_most(
            format!("LZ ω={omega} [-200,200]: max |norm - 1|"),
            traj.max_norm_deviation(),
            opts.tol(1e-9),
        ));
        let p1 = traj.last().p1();
        let oracle = lz_survival_oracle_steps(omega, lz_window(), opts.oracle_steps())?;
        checks.push(Check::at_most(
            format!("LZ ω={omega}: |P1 - oracle P1| (P1={p1:.8})"),
            (p1 - oracle).abs(),
            opts.oracle_tol(1e-6),
        ));
        let asym = lz_asymptotic_survival(omega);
        checks.push(Check::at_most(
            format!("LZ ω={omega}: |P1 - exp(-πω²/2)| (asymptote={asym:.6})"),
            (p1 - asym).abs(),
            1e-3,
        ));
    }
    for alpha in AE_ALPHAS {
        let model = DriveModel::AllenEberly { alpha, delta: 1.0 };
        let cfg = opts.configure(
            SimulationConfig::new(model, GammaPolicy::off(), sym()).with_initial(InitialState::Bare1),
        );
        let traj = integrate(&cfg)?;
        checks.push(Check::at_most(
            format!("AE α={alpha} δ=1 [-15,15]: max |norm - 1|"),
            traj.max_norm_deviation(),
            opts.tol(1e-9),
        ));
    }
    Ok(())
}

fn closed_form(opts: &Options, checks: &mut Vec<Check>) -> Result<()> {
    for omega in LZ_OMEGAS {
        let model = DriveModel::LandauZener { omega };
        let traj = integrate(&shortcut_config(&model, opts))?;
        let last = traj.last();
        let a_plus = to_adiabatic_basis(&last.c, last.theta).a_plus;
        let predicted = closed_form_a_plus(&model, sym(), QUAD_TOL)?;
        checks.push(Check::at_most(
            format!("LZ ω={omega}: |a+ closed form - integrated|"),
            (a_plus - predicted).norm(),
            opts.tol(1e-7),
        ));
    }
    Ok(())
}

/// `min_T sqrt(T² + 1/(ω² + T²))`: interior minimum `sqrt(2 − ω²)` at
/// `T² = 1 − ω²` when `ω < 1`, otherwise `1/ω` at `T = 0`.
pub fn lz_separation_minimum(omega: f64) -> f64 {
    if omega < 1.0 {
        (2.0 - omega * omega).sqrt()
    } else {
        1.0 / omega
    }
}

fn no_crossing(opts: &Options, checks: &mut Vec<Check>) -> Result<()> {
    let w = sym();
    for omega in LZ_OMEGAS {
        let model = DriveModel::LandauZener { omega };
        let policy = GammaPolicy::shortcut(opts.shortcut_sign(), w);
        let track = energy_track(&model, &policy, w, 3001)?;
        checks.push(Check::above(format!("LZ ω={omega}: sampled min |ε1 - ε2|"), track.separation_min, 0.0));
        let (_, refined) = track.refined_separation_min(&model, &policy)?;
        checks.push(Check::within(
            format!("LZ ω={omega}: refined min |ε1 - ε2|"),
            refined,
            lz_separation_minimum(omega),
            opts.tol(1e-9),
        ));
    }
    let crossing = energy_track(&DriveModel::LandauZener { omega: 1.0 }, &GammaPolicy::off(), w, 3001)?;
    checks.push(Check::equal("LZ ω=1 Hermitian: min |ε1 - ε2|", crossing.separation_min, 0.0));
    Ok(())
}

fn sign_flip(opts: &Options, checks: &mut Vec<Check>) -> Result<()> {
    for (label, model) in shortcut_models() {
        let r = sign_flip_check_with(&model, sym(), |cfg| opts.configure(cfg))?;
        let (flipped, unflipped) = match opts.fault {
            Some(Fault::FlipShortcutSign) => (r.unflipped, r.flipped),
            None => (r.flipped, r.unflipped),
        };
        checks.push(Check::at_most(
            format!("{label}, γ sign -1: |P1 - cos²θ(tF)|"),
            (flipped.final_p1 - r.predicted_p1).abs(),
            opts.tol(1e-8),
        ));
        checks.push(Check::at_most(
            format!("{label}, γ sign -1: |norm(tF) - 1|"),
            (flipped.final_norm - 1.0).abs(),
            opts.tol(1e-8),
        ));
        checks.push(Check::above(
            format!("{label}, γ sign +1: |norm(tF) - 1|"),
            (unflipped.final_norm - 1.0).abs(),
            0.1,
        ));
    }
    Ok(())
}

/// Final-state distance between the adaptive integrator and the oracle,
/// relative to the larger of the state norm and one.
fn oracle_gap(cfg: &SimulationConfig, steps: usize) -> Result<f64> {
    let ode = integrate(cfg)?.final_state();
    let oracle = propagator_oracle(cfg, steps)?;
    Ok(ode.distance(&oracle) / ode.norm().max(1.0))
}

fn oracle_equivalence(opts: &Options, checks: &mut Vec<Check>) -> Result<()> {
    let steps = opts.oracle_steps();
    let limit = opts.oracle_tol(1e-6);
    let w = sym();
    for (label, model) in shortcut_models() {
        let cfg = shortcut_config(&model, opts);
        checks.push(Check::at_most(format!("{label} shortcut: distance"), oracle_gap(&cfg, steps)?, limit));
        for sign in [Sign::Minus, Sign::Plus] {
            let cfg = opts.configure(
                SimulationConfig::new(model.clone(), GammaPolicy::shortcut(sign, w), w)
                    .with_initial(InitialState::AdiabaticMinus),
            );
            let gap = oracle_gap(&cfg, steps)?;
            checks.push(Check::at_most(format!("{label} sign flip ({:+}): distance", sign.value()), gap, limit));
        }
        let cfg = opts.configure(
            SimulationConfig::new(model.clone(), GammaPolicy::off(), w).with_initial(InitialState::Bare1),
        );
        checks.push(Check::at_most(format!("{label} Hermitian: distance"), oracle_gap(&cfg, steps)?, limit));
    }
    for omega in LZ_OMEGAS {
        let cfg = hermitian_lz_config(omega, opts);
        let gap = oracle_gap(&cfg, steps)?;
        checks.push(Check::at_most(format!("LZ ω={omega} Hermitian [-200,200]: distance"), gap, limit));
    }

    let convergence = [
        ("LZ ω=1 shortcut", shortcut_config(&DriveModel::LandauZener { omega: 1.0 }, opts)),
        ("AE α=1 δ=1 shortcut", shortcut_config(&DriveModel::AllenEberly { alpha: 1.0, delta: 1.0 }, opts)),
        (
            "LZ ω=1 Hermitian",
            SimulationConfig::new(DriveModel::LandauZener { omega: 1.0 }, GammaPolicy::off(), w)
                .with_initial(InitialState::Bare1),
        ),
    ];
    for (label, cfg) in convergence {
        for (n, ratio) in convergence_ratios(&cfg)? {
            checks.push(Check::within(format!("{label}: oracle error ratio n={n}→{}", 2 * n), ratio, 4.0, 0.5));
        }
    }
    Ok(())
}

const CONVERGENCE_STEPS: [usize; 3] = [1000, 2000, 4000];

/// Oracle error ratios under step doubling, measured against a tightly
/// converged adaptive solution.
pub fn convergence_ratios(cfg: &SimulationConfig) -> Result<Vec<(usize, f64)>> {
    let reference_cfg = cfg.clone().with_tolerances(1e-13, 1e-16).with_samples(2);
    let reference = integrate(&reference_cfg)?.final_state();
    let errors: Vec<f64> = CONVERGENCE_STEPS
        .iter()
        .map(|&n| Ok(propagator_oracle(cfg, n)?.distance(&reference)))
        .collect::<Result<_>>()?;
    Ok(CONVERGENCE_STEPS
        .iter()
        .zip(errors.windows(2))
        .map(|(&n, e)| (n, e[0] / e[1]))
        .collect())
}

fn gamma_profile(opts: &Options, checks: &mut Vec<Check>) -> Result<()> {
    let w = sym();
    let n = 3001;
    for omega in LZ_OMEGAS {
        let profile = synthesize_profile(&DriveModel::LandauZener { omega }, w, n, opts.shortcut_sign())?;
        let mid = n / 2;
        debug_assert_eq!(profile.times[mid], 0.0);
        checks.push(Check::equal(format!("LZ ω={omega}: γ(0)"), profile.gamma[mid], -1.0 / omega));
    }
    let ae = DriveModel::AllenEberly { alpha: 1.0, delta: 1.0 };
    let profile = synthesize_profile(&ae, w, n, opts.shortcut_sign())?;
    checks.push(Check::within("AE α=δ=1: γ(-15)", profile.gamma[0], -1.0, 1e-6));
    checks.push(Check::within("AE α=δ=1: γ(15)", profile.gamma[n - 1], -1.0, 1e-6));
    Ok(())
}
