//! The mean ISE density `E f_ISE(λ)` by quadrature and by power series.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use crate::error::{Error, Result};

use super::quadrature::{integrate, QuadratureConfig};
use super::special::ln_gamma;

/// Largest `|λ|` accepted by [`mean_density_series`]; beyond it the
/// alternating terms exceed the result by more than eight digits.
pub const SERIES_MAX_ABS_LAMBDA: f64 = 4.5;

/// `(2π)^{-1/2} ∫_0^∞ y^{1/2} exp(-λ²/(2y) - y²/2) dy`.
///
/// Integrated in `y = s²`, which removes the square-root endpoint:
/// `(2π)^{-1/2} ∫_0^∞ 2 s² exp(-λ²/(2s²) - s⁴/2) ds`.
pub fn mean_density_quadrature(lambda: f64, cfg: &QuadratureConfig) -> Result<f64> {
    cfg.validate()?;
    if !lambda.is_finite() {
        return Err(Error::OutOfRange(format!("density argument {lambda}")));
    }
    // beyond T the integrand is below 2 s² e^{-s⁴/2}, whose tail is < abs_tol / 10
    let tail = (2.0 * ((10.0 / cfg.abs_tol).ln() + 4.0)).powf(0.25);
    let upper = tail.max(cfg.truncation_length);
    let l2 = lambda * lambda;
    let f = |s: f64| {
        if s == 0.0 {
            return Ok(0.0);
        }
        let s2 = s * s;
        Ok(2.0 * s2 * (-l2 / (2.0 * s2) - 0.5 * s2 * s2).exp())
    };
    let (v, _) = integrate(f, 0.0, upper, cfg)?;
    Ok(v / (2.0 * PI).sqrt())
}

/// `cos((m+1)π/4)` without rounding in the argument.
fn cos_quarter_turns(m: u64) -> f64 {
    match (m + 1) % 8 {
        0 => 1.0,
        1 | 7 => FRAC_1_SQRT_2,
        2 | 6 => 0.0,
        3 | 5 => -FRAC_1_SQRT_2,
        _ => -1.0,
    }
}

/// `(2^{-1/4}/√π) Σ_m (-2^{3/4}|λ|)^m / m! · cos((m+1)π/4) Γ((m+3)/4)`.
pub fn mean_density_series(lambda: f64) -> Result<f64> {
    let z = lambda.abs() * 2f64.powf(0.75);
    if lambda.is_nan() || lambda.abs() > SERIES_MAX_ABS_LAMBDA {
        return Err(Error::OutOfRange(format!("series evaluation needs |λ| <= {SERIES_MAX_ABS_LAMBDA}, got {lambda}")));
    }
    // Neumaier summation of log-space terms
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    let mut peak = 0.0f64;
    for m in 0u64..2000 {
        let c = cos_quarter_turns(m);
        let ln_mag = if z == 0.0 {
            if m == 0 {
                0.0
            } else {
                f64::NEG_INFINITY
            }
        } else {
            m as f64 * z.ln()
        } - ln_gamma(m as f64 + 1.0)?
            + ln_gamma((m as f64 + 3.0) / 4.0)?;
        let mag = ln_mag.exp();
        peak = peak.max(mag);
        if c != 0.0 && mag > 0.0 {
            let sign = if m % 2 == 1 { -1.0 } else { 1.0 };
            let term = sign * c * mag;
            let t = sum + term;
            comp += if sum.abs() >= term.abs() { (sum - t) + term } else { (term - t) + sum };
            sum = t;
        }
        // terms decay super-exponentially once past the peak
        if m > 8 && mag <= 1e-20 * peak {
            break;
        }
    }
    Ok(2f64.powf(-0.25) / PI.sqrt() * (sum + comp))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::special::gamma;

    fn closed_form_at_zero() -> f64 {
        2f64.powf(-0.75) * gamma(0.75).unwrap() / PI.sqrt()
    }

    #[test]
    fn value_at_zero() {
        let cfg = QuadratureConfig::default();
        let want = closed_form_at_zero();
        assert!((mean_density_quadrature(0.0, &cfg).unwrap() - want).abs() < 1e-12);
        assert!((mean_density_series(0.0).unwrap() - want).abs() < 1e-15);
        assert!((want - 0.4110895).abs() < 1e-7);
    }

    #[test]
    fn even_positive_and_decreasing() {
        let cfg = QuadratureConfig::default();
        let mut prev = f64::INFINITY;
        for i in 0..=16 {
            let x = 1.0 + 0.25 * i as f64;
            let v = mean_density_quadrature(x, &cfg).unwrap();
            assert!(v > 0.0 && v < prev);
            assert_eq!(v, mean_density_quadrature(-x, &cfg).unwrap());
            prev = v;
        }
        assert_eq!(mean_density_series(-1.0).unwrap(), mean_density_series(1.0).unwrap());
    }

    #[test]
    fn two_forms_agree() {
        let cfg = QuadratureConfig::default();
        for x in [0.1, 0.75, 1.5, 3.0, 4.0] {
            let a = mean_density_quadrature(x, &cfg).unwrap();
            let b = mean_density_series(x).unwrap();
            assert!((a - b).abs() < 1e-9, "x={x}: {a} vs {b}");
        }
        assert!(mean_density_series(6.0).is_err());
    }

    #[test]
    fn integrates_to_one() {
        let cfg = QuadratureConfig::default();
        let outer = QuadratureConfig { abs_tol: 1e-10, rel_tol: 1e-10, ..Default::default() };
        let (half, _) = integrate(|x| mean_density_quadrature(x, &cfg), 0.0, 12.0, &outer).unwrap();
        assert!((2.0 * half - 1.0).abs() < 1e-6);
    }
}
