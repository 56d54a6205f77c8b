use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::rational::Rational;

/// Scalar ring (in practice a field) for series coefficients.
///
/// Implemented for exact [`Rational`] and for `f64`; the float version exists
/// for large-order convergence studies where exact coefficients are too big.
pub trait Coeff: Clone + PartialEq + Debug + Send + Sync + Zero + One + 'static {
    fn from_i64(v: i64) -> Self;
    fn from_bigint(v: &BigInt) -> Self;
    fn from_ratio(numer: i64, denom: i64) -> Self;
    fn to_f64(&self) -> f64;

    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn div_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;

    /// `self += a * b`
    fn add_product(&mut self, a: &Self, b: &Self);
}

impl Coeff for Rational {
    fn from_i64(v: i64) -> Self {
        Rational::from(v)
    }
    fn from_bigint(v: &BigInt) -> Self {
        Rational::from_integer(v.clone())
    }
    fn from_ratio(numer: i64, denom: i64) -> Self {
        Rational::new(numer, denom)
    }
    fn to_f64(&self) -> f64 {
        Rational::to_f64(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div_ref(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn add_product(&mut self, a: &Self, b: &Self) {
        Rational::add_product(self, a, b)
    }
}

impl Coeff for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn from_bigint(v: &BigInt) -> Self {
        v.to_f64().unwrap_or(f64::NAN)
    }
    fn from_ratio(numer: i64, denom: i64) -> Self {
        numer as f64 / denom as f64
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div_ref(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn add_product(&mut self, a: &Self, b: &Self) {
        *self = a.mul_add(*b, *self);
    }
}
