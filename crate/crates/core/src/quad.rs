//! Panelled double-exponential quadrature.

use std::cell::RefCell;

use crate::error::{Error, Result};

// panels no longer than this keep the tanh-sinh rule well inside its
// convergence region for integrands that vary on unit time scales
const PANEL: f64 = 1.0;

/// `∫_a^b f` to absolute accuracy `tol`.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<f64> {
    integrate_fallible(|t| Ok(f(t)), a, b, tol)
}

/// As [`integrate`], for integrands that can fail; the first error wins.
pub fn integrate_fallible(
    f: impl Fn(f64) -> Result<f64>,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::Config(format!("quadrature tolerance must be positive, got {tol}")));
    }
    let n = ((b - a) / PANEL).ceil().max(1.0) as usize;
    let panel_tol = tol / n as f64;
    let failure: RefCell<Option<Error>> = RefCell::new(None);
    let g = |t: f64| match f(t) {
        Ok(v) => v,
        Err(e) => {
            failure.borrow_mut().get_or_insert(e);
            f64::NAN
        }
    };
    let mut total = 0.0;
    for k in 0..n {
        let lo = a + (b - a) * k as f64 / n as f64;
        let hi = if k + 1 == n { b } else { a + (b - a) * (k + 1) as f64 / n as f64 };
        let out = quadrature::double_exponential::integrate(g, lo, hi, panel_tol);
        if let Some(e) = failure.borrow_mut().take() {
            return Err(e);
        }
        // a requested accuracy below the rounding level of the panel sum
        // is met once the estimate reaches that level
        let floor = 64.0 * f64::EPSILON * out.integral.abs().max(1.0);
        if !(out.error_estimate <= panel_tol.max(floor)) || !out.integral.is_finite() {
            return Err(Error::Quadrature { a: lo, b: hi, tol: panel_tol, estimate: out.error_estimate });
        }
        total += out.integral;
    }
    Ok(total)
}
