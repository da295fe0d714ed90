use num_complex::Complex64 as C64;

use crate::error::Result;
use crate::models::{gamma_shortcut, DriveModel, Sign};
use crate::quad;
use crate::system::AdiabaticFrame;
use crate::window::Window;

/// Upper adiabatic amplitude at the end of the window under the decoupling
/// shortcut, starting from `a+(tI) = 1`:
///
/// `a+(tF) = exp(-i ∫ (λ+ − ½ i γ cos 2θ) dt)`
///
/// Both the phase `∫ λ+` and the real part `½ ∫ γ cos 2θ` are computed by
/// adaptive quadrature to `quad_tol`.
pub fn closed_form_a_plus(model: &DriveModel, window: Window, quad_tol: f64) -> Result<C64> {
    let window = Window::new(window.start, window.end)?;
    let phase = quad::integrate_fallible(
        |t| Ok(AdiabaticFrame::at(model, t)?.lambda_plus),
        window.start,
        window.end,
        quad_tol,
    )?;
    let decay = quad::integrate_fallible(
        |t| {
            let f = AdiabaticFrame::at(model, t)?;
            Ok(0.5 * gamma_shortcut(model, t, Sign::Plus)? * f.cos_2theta)
        },
        window.start,
        window.end,
        quad_tol,
    )?;
    Ok(C64::new(-decay, -phase).exp())
}
