//! Truncated power series in one variable `t`.
//!
//! A series of order `N` carries the coefficients of `t^0 ..= t^N`; every
//! operation is exact modulo `t^{N+1}`. Binary operations on series of
//! different orders work at the smaller order.

use std::fmt;

use crate::error::{Error, Result};
use crate::rational::Rational;

use super::Coeff;

#[derive(Clone, PartialEq)]
pub struct Series<C> {
    coeffs: Vec<C>,
}

/// Exact series with rational coefficients.
pub type PowerSeries = Series<Rational>;

/// Double-precision series with the same API as [`PowerSeries`].
pub type FloatSeries = Series<f64>;

impl<C: Coeff> Series<C> {
    /// Builds a series of order `coeffs.len() - 1`. Panics on an empty vector.
    pub fn from_coeffs(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least the t^0 coefficient");
        Series { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Series { coeffs: vec![C::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, C::one())
    }

    pub fn constant(order: usize, c: C) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// `c * t^k`, truncated.
    pub fn monomial(order: usize, k: usize, c: C) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// The series `t`.
    pub fn variable(order: usize) -> Self {
        Self::monomial(order, 1, C::one())
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> C) -> Self {
        Series { coeffs: (0..=order).map(f).collect() }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `t^n`; zero past the truncation order is NOT implied,
    /// so asking for it panics.
    pub fn coeff(&self, n: usize) -> &C {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Index of the first nonzero coefficient, `None` for the zero series.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order());
        Series { coeffs: self.coeffs[..=order].to_vec() }
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Series<D> {
        Series { coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        Self::from_fn(n, |k| self.coeffs[k].add_ref(&rhs.coeffs[k]))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        Self::from_fn(n, |k| self.coeffs[k].sub_ref(&rhs.coeffs[k]))
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg_ref())
    }

    pub fn scale(&self, c: &C) -> Self {
        self.map(|a| a.mul_ref(c))
    }

    /// `self += c * rhs`, at the order of `self` (rhs must be at least as long).
    pub fn add_scaled_assign(&mut self, c: &C, rhs: &Self) {
        assert!(rhs.order() >= self.order(), "scaled addend truncated below target order");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            a.add_product(c, b);
        }
    }

    /// Cauchy product truncated at the smaller order.
    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        let mut out = Self::zero(n);
        let va = self.valuation();
        let vb = rhs.valuation();
        let (Some(va), Some(vb)) = (va, vb) else {
            return out;
        };
        for i in va..=n {
            let a = &self.coeffs[i];
            if a.is_zero() {
                continue;
            }
            for j in vb..=(n - i) {
                out.coeffs[i + j].add_product(a, &rhs.coeffs[j]);
            }
        }
        out
    }

    /// Multiplication by `t^k`, keeping the order.
    pub fn shift_up(&self, k: usize) -> Self {
        let n = self.order();
        Self::from_fn(n, |i| if i >= k { self.coeffs[i - k].clone() } else { C::zero() })
    }

    /// Division by `t^k`; the result has order `N - k`. The first `k`
    /// coefficients must vanish.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        let v = self.valuation().unwrap_or(usize::MAX);
        if v < k {
            return Err(Error::DivisionImpossible { dividend: v, divisor: k });
        }
        if k > self.order() {
            return Err(Error::TruncationTooSmall { requested: k, order: self.order() });
        }
        Ok(Series { coeffs: self.coeffs[k..].to_vec() })
    }

    /// `a / b`. When `b` has valuation `v > 0`, both sides are divided by
    /// `t^v` first, so `a` must have valuation at least `v`; the quotient then
    /// has order `N - v`.
    pub fn div(&self, rhs: &Self) -> Result<Self> {
        let vb = rhs.valuation().ok_or(Error::DivisionByZero)?;
        let n = self.order().min(rhs.order());
        let a = self.truncate(n).shift_down(vb)?;
        let b = rhs.truncate(n).shift_down(vb)?;
        let m = a.order();
        let b0 = &b.coeffs[0];
        let mut q: Vec<C> = Vec::with_capacity(m + 1);
        for k in 0..=m {
            let mut acc = a.coeffs[k].clone();
            for j in 1..=k {
                let bj = &b.coeffs[j];
                if !bj.is_zero() {
                    acc = acc.sub_ref(&bj.mul_ref(&q[k - j]));
                }
            }
            q.push(acc.div_ref(b0));
        }
        Ok(Series { coeffs: q })
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn inverse(&self) -> Result<Self> {
        Self::one(self.order()).div(self)
    }

    /// `t d/dt`: coefficient `a_n` becomes `n a_n`.
    pub fn t_ddt(&self) -> Self {
        Self::from_fn(self.order(), |n| self.coeffs[n].mul_ref(&C::from_i64(n as i64)))
    }

    /// `(t d/dt + offset)`: coefficient `a_n` becomes `(n + offset) a_n`.
    pub fn t_ddt_plus(&self, offset: i64) -> Self {
        Self::from_fn(self.order(), |n| self.coeffs[n].mul_ref(&C::from_i64(n as i64 + offset)))
    }

    /// Substitution `t -> c t`.
    pub fn rescale_variable(&self, c: &C) -> Self {
        let mut pow = C::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a.mul_ref(&pow));
            pow = pow.mul_ref(c);
        }
        Series { coeffs: out }
    }

    /// `(1 - c t)^{1/2}` from the binomial series.
    pub fn sqrt_one_minus(c: &C, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        coeffs.push(C::one());
        for n in 1..=order {
            // s_n = s_{n-1} * c * (2n - 3) / (2n)
            let prev: &C = &coeffs[n - 1];
            let r = C::from_ratio(2 * n as i64 - 3, 2 * n as i64);
            coeffs.push(prev.mul_ref(c).mul_ref(&r));
        }
        Series { coeffs }
    }

    /// `(1 - 4t)^{1/2}`.
    pub fn sqrt_one_minus_4t(order: usize) -> Self {
        Self::sqrt_one_minus(&C::from_i64(4), order)
    }

    pub fn to_f64(&self) -> FloatSeries {
        self.map(|c| c.to_f64())
    }
}

impl<C: Coeff> fmt::Debug for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c:?}")?,
                1 => write!(f, "({c:?})t")?,
                _ => write!(f, "({c:?})t^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.order() + 1)
    }
}

/// `F_0 = 1 + c t F_0^2` solved coefficientwise; for `c = 1` this is the
/// Catalan series counting binary trees (including the empty one).
pub fn catalan_like<C: Coeff>(c: &C, order: usize) -> Series<C> {
    let mut f: Vec<C> = Vec::with_capacity(order + 1);
    f.push(C::one());
    for n in 1..=order {
        let mut acc = C::zero();
        for k in 0..n {
            acc.add_product(&f[k], &f[n - 1 - k]);
        }
        f.push(acc.mul_ref(c));
    }
    Series::from_coeffs(f)
}
