//! Globally adaptive Gauss–Kronrod (7/15) quadrature for real and complex
//! integrands.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
    /// Lower bound for the cut-off of infinite ranges; the routines extend it
    /// further when their tail bound requires.
    pub truncation_length: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig { abs_tol: 1e-13, rel_tol: 1e-12, max_subdivisions: 4000, truncation_length: 0.0 }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0 && self.max_subdivisions > 0 && self.truncation_length >= 0.0) {
            return Err(Error::OutOfRange(format!("invalid quadrature configuration {self:?}")));
        }
        Ok(())
    }
}

/// Values that can be integrated.
pub trait Integrand: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn magnitude(&self) -> f64;
}

impl Integrand for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl Integrand for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

// Kronrod and Gauss nodes and weights, tabulated to 30 digits.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// Gauss weights for the nodes `XGK[1], XGK[3], XGK[5], XGK[7]`.
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

fn gk15<T: Integrand>(f: &mut impl FnMut(f64) -> Result<T>, a: f64, b: f64) -> Result<(T, f64)> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c)?;
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = f(c - dx)? + f(c + dx)?;
        kronrod = kronrod + s * WGK[j];
        if j % 2 == 1 {
            gauss = gauss + s * WG[j / 2];
        }
    }
    let k = kronrod * h;
    let g = gauss * h;
    Ok((k, (k - g).magnitude()))
}

/// `∫_a^b f` to within `max(abs_tol, rel_tol |∫ f|)`, together with the
/// error estimate.
pub fn integrate<T: Integrand>(
    mut f: impl FnMut(f64) -> Result<T>,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<(T, f64)> {
    cfg.validate()?;
    let (v, e) = gk15(&mut f, a, b)?;
    let mut pieces = vec![(a, b, v, e)];
    loop {
        let total = pieces.iter().fold(T::zero(), |acc, p| acc + p.2);
        let err: f64 = pieces.iter().map(|p| p.3).sum();
        if err <= cfg.abs_tol.max(cfg.rel_tol * total.magnitude()) {
            return Ok((total, err));
        }
        if pieces.len() >= cfg.max_subdivisions {
            return Err(Error::NonConvergence { subdivisions: pieces.len(), estimate: err });
        }
        let worst = pieces.iter().enumerate().max_by(|x, y| x.1 .3.total_cmp(&y.1 .3)).map(|(i, _)| i).unwrap();
        let (lo, hi, _, _) = pieces.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return Err(Error::NonConvergence { subdivisions: pieces.len(), estimate: err });
        }
        let (v1, e1) = gk15(&mut f, lo, mid)?;
        let (v2, e2) = gk15(&mut f, mid, hi)?;
        pieces.push((lo, mid, v1, e1));
        pieces.push((mid, hi, v2, e2));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn polynomial_and_oscillatory() {
        let cfg = QuadratureConfig::default();
        let (v, _) = integrate(|x| Ok(x * x), 0.0, 3.0, &cfg).unwrap();
        assert!((v - 9.0).abs() < 1e-13);
        let (v, _) = integrate(|x: f64| Ok((20.0 * x).sin()), 0.0, PI, &cfg).unwrap();
        assert!(v.abs() < 1e-12);
        let (z, _) = integrate(|x: f64| Ok(Complex64::new(0.0, x).exp()), 0.0, PI, &cfg).unwrap();
        assert!((z - Complex64::new(0.0, 2.0)).norm() < 1e-13);
    }

    #[test]
    fn square_root_endpoint() {
        let cfg = QuadratureConfig::default();
        let (v, _) = integrate(|x: f64| Ok(x.sqrt()), 0.0, 1.0, &cfg).unwrap();
        assert!((v - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn subdivision_cap() {
        let cfg = QuadratureConfig { max_subdivisions: 2, ..Default::default() };
        let err = integrate(|x: f64| Ok(1.0 / x.sqrt()), 0.0, 1.0, &cfg).unwrap_err();
        assert!(matches!(err, Error::NonConvergence { .. }));
        let bad = QuadratureConfig { abs_tol: 0.0, ..Default::default() };
        assert!(integrate(Ok, 0.0, 1.0, &bad).is_err());
    }
}
