//! Gamma function wrappers.

use crate::error::{Error, Result};

fn is_pole(z: f64) -> bool {
    z <= 0.0 && z == z.floor()
}

/// `Γ(z)` for real `z` off the poles `0, -1, -2, ...`.
///
/// `libm::tgamma` handles negative arguments through reflection and is
/// accurate to a few ulp on `[-10, 50]`.
pub fn gamma(z: f64) -> Result<f64> {
    if is_pole(z) || z.is_nan() {
        return Err(Error::Pole(z));
    }
    Ok(libm::tgamma(z))
}

/// `ln |Γ(z)|`.
pub fn ln_gamma(z: f64) -> Result<f64> {
    if is_pole(z) || z.is_nan() {
        return Err(Error::Pole(z));
    }
    Ok(libm::lgamma(z))
}

/// `Γ(a) / Γ(b)` evaluated through logarithms when either value overflows.
pub fn gamma_ratio(a: f64, b: f64) -> Result<f64> {
    let ga = gamma(a)?;
    let gb = gamma(b)?;
    if ga.is_finite() && gb.is_finite() && gb != 0.0 {
        return Ok(ga / gb);
    }
    let sign = libm::lgamma_r(a).1 * libm::lgamma_r(b).1;
    Ok(sign as f64 * (ln_gamma(a)? - ln_gamma(b)?).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * b.abs()
    }

    #[test]
    fn reference_values() {
        assert!(close(gamma(0.5).unwrap(), PI.sqrt(), 1e-15));
        assert!(close(gamma(-0.5).unwrap(), -2.0 * PI.sqrt(), 1e-15));
        assert!(close(gamma(0.75).unwrap(), 1.2254167024651776, 1e-15));
        let reflect = gamma(0.75).unwrap() * gamma(0.25).unwrap();
        assert!(close(reflect, PI / (PI / 4.0).sin(), 1e-14));
        assert!(close(gamma(11.0).unwrap(), 3628800.0, 1e-14));
    }

    #[test]
    fn recurrence_over_test_range() {
        let mut z = -9.75;
        while z < 49.0 {
            let lhs = gamma(z + 1.0).unwrap();
            let rhs = z * gamma(z).unwrap();
            assert!(close(lhs, rhs, 1e-13), "z = {z}");
            z += 0.37;
        }
    }

    #[test]
    fn poles_are_errors() {
        for z in [0.0, -1.0, -7.0] {
            assert_eq!(gamma(z).unwrap_err(), Error::Pole(z));
        }
    }

    #[test]
    fn ratio_survives_overflow() {
        let r = gamma_ratio(200.5, 200.0).unwrap();
        assert!(close(r, (ln_gamma(200.5).unwrap() - ln_gamma(200.0).unwrap()).exp(), 1e-12));
        assert!(close(gamma_ratio(3.0, 2.0).unwrap(), 2.0, 1e-15));
    }
}
