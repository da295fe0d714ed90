//! Model-specific closed forms, kept separate from the generic synthesis
//! rule so the two can be cross-checked.

/// LZ gain/loss rate `-1/sqrt(ω² + T²)` (β units).
pub fn lz_gamma(omega: f64, t: f64) -> f64 {
    -1.0 / (omega * omega + t * t).sqrt()
}

/// AE gain/loss rate in its csch form (τ units):
///
/// `-2δ(eᵗ + e³ᵗ) / ((e²ᵗ − 1)² sqrt(csch²t (δ² + α² csch²t)))`
///
/// Removable singularity at `t = 0` and overflow for `|t|` beyond ~230;
/// meant for cross-validation away from the origin.
pub fn ae_gamma_csch(alpha: f64, delta: f64, t: f64) -> f64 {
    let csch2 = 1.0 / t.sinh().powi(2);
    let num = -2.0 * delta * (t.exp() + (3.0 * t).exp());
    let den = ((2.0 * t).exp() - 1.0).powi(2) * (csch2 * (delta * delta + alpha * alpha * csch2)).sqrt();
    num / den
}

/// `-δ / sqrt(α² sech²t + δ² tanh²t)`: the AE rate in a form regular at 0.
pub fn ae_gamma(alpha: f64, delta: f64, t: f64) -> f64 {
    let sech = 1.0 / t.cosh();
    -delta / (alpha * alpha * sech * sech + delta * delta * t.tanh().powi(2)).sqrt()
}

/// Asymptotic LZ survival probability `exp(-πω²/2)` for an infinite sweep.
pub fn lz_asymptotic_survival(omega: f64) -> f64 {
    (-std::f64::consts::PI * omega * omega / 2.0).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ae_forms_agree_away_from_origin() {
        for &t in &[-10.0, -1.0, -0.01, 0.01, 1.0, 10.0] {
            let a = ae_gamma_csch(0.5, 1.2, t);
            let b = ae_gamma(0.5, 1.2, t);
            assert!((a - b).abs() < 1e-12 * b.abs());
        }
        assert_eq!(ae_gamma(1.0, 1.0, 0.0), -1.0);
        // α = δ = 1: the denominator is identically one
        assert!((ae_gamma(1.0, 1.0, 15.0) + 1.0).abs() < 1e-15);
    }

    #[test]
    fn lz_asymptote_values() {
        assert!((lz_asymptotic_survival(1.0) - 0.20788).abs() < 1e-5);
        assert!((lz_asymptotic_survival(2.0) - 0.0018674).abs() < 1e-7);
    }
}
