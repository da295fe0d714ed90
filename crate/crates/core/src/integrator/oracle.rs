use super::config::SimulationConfig;
use crate::error::{Error, Result};
use crate::system::{hamiltonian, Hamiltonian2x2, StateVector};

/// Reference propagation by piecewise-constant midpoint exponentials.
///
/// The window is cut into `n_steps` equal slices; each slice applies the
/// exact `exp(-i H(t_mid) Δt)`. Second order in `Δt`, and exact for a
/// time-independent Hamiltonian. Shares no code with the Runge–Kutta path
/// beyond evaluating `H`.
pub fn propagator_oracle(config: &SimulationConfig, n_steps: usize) -> Result<StateVector> {
    config.validate()?;
    if n_steps == 0 {
        return Err(Error::Config("oracle needs at least one step".into()));
    }
    let w = config.window;
    let dt = w.len() / n_steps as f64;
    let mut c = config.initial.resolve(&config.model, w.start)?;
    for k in 0..n_steps {
        let mid = w.start + (k as f64 + 0.5) * dt;
        let u = hamiltonian(&config.model, &config.policy, mid)?.propagator(dt);
        c = u.apply(&c);
    }
    Ok(c)
}

/// Full slice-product propagator `U(tF, tI)` for the same scheme.
pub fn oracle_propagator_matrix(config: &SimulationConfig, n_steps: usize) -> Result<Hamiltonian2x2> {
    config.validate()?;
    if n_steps == 0 {
        return Err(Error::Config("oracle needs at least one step".into()));
    }
    let w = config.window;
    let dt = w.len() / n_steps as f64;
    let mut u = Hamiltonian2x2::identity();
    for k in 0..n_steps {
        let mid = w.start + (k as f64 + 0.5) * dt;
        u = hamiltonian(&config.model, &config.policy, mid)?.propagator(dt).matmul(&u);
    }
    Ok(u)
}
