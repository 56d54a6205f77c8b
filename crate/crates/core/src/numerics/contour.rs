//! The moment generating function `L(x, a)` of the ISE density, written as
//! a contour integral involving the implicit function `A(y)`.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};

use super::quadrature::{integrate, QuadratureConfig};

/// `A(y)` is continued from `A(0) = 0`; the nearest branch point sits at
/// `|y| = 4/√3`, where two roots of the cubic collide.
pub const A_RADIUS: f64 = 2.309_401_076_758_503; // 4 / √3

/// Radius in `a` for `E e^{a f_ISE(x)}`: `2^{2+1/4} / √3`.
pub fn density_mgf_radius() -> f64 {
    2f64.powf(2.25) / 3f64.sqrt()
}

const RESIDUAL_TOL: f64 = 1e-12;

/// `P(A) = 24 A (1 - A) - y (1 + A)³`, zero exactly when `A = (y/24)(1+A)³/(1-A)`.
fn cubic(a: Complex64, y: Complex64) -> (Complex64, Complex64) {
    let one = Complex64::new(1.0, 0.0);
    let p = 24.0 * a * (one - a) - y * (one + a).powi(3);
    let dp = 24.0 * (one - 2.0 * a) - 3.0 * y * (one + a).powi(2);
    (p, dp)
}

/// `|A - (y/24)(1+A)³/(1-A)|`.
pub fn a_residual(a: Complex64, y: Complex64) -> f64 {
    let one = Complex64::new(1.0, 0.0);
    (a - y / 24.0 * (one + a).powi(3) / (one - a)).norm()
}

fn newton(mut a: Complex64, y: Complex64) -> Option<Complex64> {
    for _ in 0..30 {
        let (p, dp) = cubic(a, y);
        if dp.norm() == 0.0 {
            return None;
        }
        let step = p / dp;
        a -= step;
        if !a.is_finite() {
            return None;
        }
        if step.norm() <= 1e-15 * (1.0 + a.norm()) {
            return Some(a);
        }
    }
    None
}

/// The root of `A = (y/24)(1+A)³/(1-A)` on the branch through `A(0) = 0`,
/// continued along the segment `[0, y]` with an Euler predictor, Newton
/// corrector and step halving.
pub fn solve_a(y: Complex64) -> Result<Complex64> {
    if !y.is_finite() {
        return Err(Error::BranchTracking { re: y.re, im: y.im });
    }
    if y.norm() == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let fail = || Error::BranchTracking { re: y.re, im: y.im };
    let mut s = 0.0f64;
    let mut a = Complex64::new(0.0, 0.0);
    let mut h = 0.25f64;
    while s < 1.0 {
        let step = h.min(1.0 - s);
        let y0 = y * s;
        let y1 = y * (s + step);
        // dA/dy = (1+A)³ / P'(A)
        let (_, dp) = cubic(a, y0);
        let slope = (Complex64::new(1.0, 0.0) + a).powi(3) / dp;
        let guess = a + slope * (y1 - y0);
        match newton(guess, y1) {
            Some(next) if (next - guess).norm() <= 0.1 * (next - a).norm().max(1e-3 * step) => {
                a = next;
                s += step;
                h = (step * 1.5).min(0.25);
            }
            _ => {
                h = step / 2.0;
                if h < 1e-10 {
                    return Err(fail());
                }
            }
        }
    }
    if a_residual(a, y) > RESIDUAL_TOL * (1.0 + a.norm()) {
        return Err(fail());
    }
    Ok(a)
}

/// A point of the integration contour with the tracked value of `A(a/v³)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ContourPoint {
    /// Contour parameter: `t >= 0` on the upper ray `1 + t e^{iπ/4}`,
    /// `t <= 0` on the lower ray `1 - t e^{-iπ/4}`.
    pub t: f64,
    pub v: Complex64,
    pub a_value: Complex64,
}

fn ray_direction(upper: bool) -> Complex64 {
    Complex64::new(FRAC_1_SQRT_2, if upper { FRAC_1_SQRT_2 } else { -FRAC_1_SQRT_2 })
}

pub fn contour_point(t: f64, a: f64) -> Result<ContourPoint> {
    let v = if t >= 0.0 {
        Complex64::new(1.0, 0.0) + ray_direction(true) * t
    } else {
        Complex64::new(1.0, 0.0) - ray_direction(false) * t
    };
    let a_value = solve_a(Complex64::new(a, 0.0) / v.powi(3))?;
    Ok(ContourPoint { t, v, a_value })
}

/// Ray length beyond which `|v⁵ e^{v⁴}|` stays under `abs_tol / 100`.
fn ray_length(cfg: &QuadratureConfig) -> f64 {
    let dir = ray_direction(true);
    let mut s = cfg.truncation_length.max(2.0);
    loop {
        let v = Complex64::new(1.0, 0.0) + dir * s;
        // the A-dependent factor is bounded by ~1 for the admissible range of a
        let bound = v.norm().powi(5) * v.powi(4).re.exp() * 4.0;
        if bound < cfg.abs_tol * 1e-2 || s > 20.0 {
            return s;
        }
        s += 0.125;
    }
}

fn integrand(v: Complex64, x: f64, a: f64) -> Result<Complex64> {
    let big_a = solve_a(Complex64::new(a, 0.0) / v.powi(3))?;
    let e = big_a * (-2.0 * x * v).exp();
    let one = Complex64::new(1.0, 0.0);
    Ok(e / (one + e).powi(2) * v.powi(5) * v.powi(4).exp())
}

/// Raw contour integral `L(x, a)` as a complex number (imaginary part is
/// round-off).
pub fn mgf_l_complex(x: f64, a: f64, cfg: &QuadratureConfig) -> Result<Complex64> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::OutOfRange(format!("L(x, a) needs x >= 0, got {x}")));
    }
    if a.is_nan() || a.abs() >= A_RADIUS {
        return Err(Error::OutOfRange(format!("L(x, a) needs |a| < 4/√3, got {a}")));
    }
    if a == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let len = ray_length(cfg);
    let one = Complex64::new(1.0, 0.0);
    let up = ray_direction(true);
    let down = ray_direction(false);
    // ∫_Γ g dv = ∫_0^∞ [g(1 + s ω) ω - g(1 + s ω̄) ω̄] ds
    let (upper, _) = integrate(|s| Ok(integrand(one + up * s, x, a)? * up), 0.0, len, cfg)?;
    let (lower, _) = integrate(|s| Ok(integrand(one + down * s, x, a)? * down), 0.0, len, cfg)?;
    let integral = upper - lower;
    Ok(one + integral * 48.0 / (Complex64::new(0.0, 1.0) * PI.sqrt()))
}

/// `L(x, a)` for `x >= 0`, `|a| < 4/√3`.
pub fn mgf_l(x: f64, a: f64, cfg: &QuadratureConfig) -> Result<f64> {
    let z = mgf_l_complex(x, a, cfg)?;
    if z.im.abs() > 1e-8 {
        return Err(Error::Numeric(format!("L({x}, {a}) has imaginary part {:e}", z.im)));
    }
    Ok(z.re)
}

/// `E e^{a f_ISE(x)} = L(2^{-1/4} |x|, 2^{-1/4} a)` for `|a| < 2^{2+1/4}/√3`.
pub fn density_mgf(x: f64, a: f64, cfg: &QuadratureConfig) -> Result<f64> {
    if a.is_nan() || a.abs() >= density_mgf_radius() {
        return Err(Error::OutOfRange(format!("|a| must be below {}, got {a}", density_mgf_radius())));
    }
    let s = 2f64.powf(-0.25);
    mgf_l(s * x.abs(), s * a, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grand::density0_moment;

    #[test]
    fn branch_basics() {
        assert_eq!(solve_a(Complex64::new(0.0, 0.0)).unwrap(), Complex64::new(0.0, 0.0));
        let y = Complex64::new(1e-4, 0.0);
        let a = solve_a(y).unwrap();
        assert!((a - y / 24.0).norm() < 1e-8);
        assert!(a.im.abs() < 1e-18);
    }

    #[test]
    fn residuals_on_random_small_y() {
        use rand::{RngExt, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let r = 2.2 * rng.random::<f64>();
            let th = 2.0 * PI * rng.random::<f64>();
            let y = Complex64::from_polar(r, th);
            let a = solve_a(y).unwrap();
            assert!(a_residual(a, y) <= 1e-12);
        }
    }

    #[test]
    fn branch_stays_continuous_near_radius() {
        // real y just under the branch point: A approaches 2 - √3 from below
        let a = solve_a(Complex64::new(A_RADIUS * 0.999, 0.0)).unwrap();
        assert!(a.re < 2.0 - 3f64.sqrt() && a.re > 0.2);
    }

    #[test]
    fn contour_points_lie_on_rays() {
        let p = contour_point(2.0, 1.0).unwrap();
        assert!((p.v - Complex64::new(1.0 + 2f64.sqrt(), 2f64.sqrt())).norm() < 1e-15);
        let q = contour_point(-2.0, 1.0).unwrap();
        assert_eq!(q.v, p.v.conj());
        assert!(a_residual(q.a_value, Complex64::new(1.0, 0.0) / q.v.powi(3)) < 1e-12);
    }

    #[test]
    fn trivial_at_zero_a() {
        let cfg = QuadratureConfig::default();
        for x in [0.0, 0.5, 1.0] {
            assert_eq!(mgf_l(x, 0.0, &cfg).unwrap(), 1.0);
        }
        assert!(mgf_l(-1.0, 0.5, &cfg).is_err());
        assert!(mgf_l(0.0, 3.0, &cfg).is_err());
    }

    #[test]
    fn first_derivative_is_mean_density_at_zero() {
        let cfg = QuadratureConfig::default();
        let h = 1e-3;
        let d = (density_mgf(0.0, h, &cfg).unwrap() - density_mgf(0.0, -h, &cfg).unwrap()) / (2.0 * h);
        let want = density0_moment(1.0).unwrap();
        assert!((d - want).abs() < 1e-5 * want, "{d} vs {want}");
    }

    #[test]
    fn monotone_in_a() {
        let cfg = QuadratureConfig::default();
        for x in [0.0, 0.7] {
            let vals: Vec<f64> =
                [-1.0, -0.5, 0.0, 0.5, 1.0].iter().map(|&a| density_mgf(x, a, &cfg).unwrap()).collect();
            assert!(vals.windows(2).all(|w| w[0] < w[1]), "{vals:?}");
        }
    }
}
