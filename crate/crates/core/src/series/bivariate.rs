//! Truncated series in `t` whose coefficients are Laurent polynomials in `x`.

use std::fmt;

use crate::error::{Error, Result};

use super::{Coeff, LaurentPoly, Series};

#[derive(Clone, PartialEq)]
pub struct BivariateSeries<C> {
    coeffs: Vec<LaurentPoly<C>>,
}

impl<C: Coeff> fmt::Debug for BivariateSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.coeffs).finish()
    }
}

impl<C: Coeff> BivariateSeries<C> {
    pub fn from_coeffs(coeffs: Vec<LaurentPoly<C>>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least the t^0 coefficient");
        BivariateSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        BivariateSeries { coeffs: vec![LaurentPoly::zero(); order + 1] }
    }

    pub fn from_univariate(s: &Series<C>) -> Self {
        BivariateSeries { coeffs: s.coeffs().iter().map(|c| LaurentPoly::constant(c.clone())).collect() }
    }

    /// `Σ_m g_m(t) w(x)^m`, truncated at the smallest order among the `g_m`.
    pub fn from_powers_of(w: &LaurentPoly<C>, g: &[Series<C>]) -> Self {
        let order = g.iter().map(|s| s.order()).min().expect("at least one coefficient series");
        let mut out = Self::zero(order);
        let mut wm = LaurentPoly::one();
        for gm in g {
            for n in 0..=order {
                let c = gm.coeff(n);
                if !c.is_zero() {
                    out.coeffs[n] = out.coeffs[n].add(&wm.scale(c));
                }
            }
            wm = wm.mul(w);
        }
        out
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &LaurentPoly<C> {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[LaurentPoly<C>] {
        &self.coeffs
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        BivariateSeries { coeffs: (0..=n).map(|k| self.coeffs[k].add(&rhs.coeffs[k])).collect() }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        BivariateSeries { coeffs: (0..=n).map(|k| self.coeffs[k].sub(&rhs.coeffs[k])).collect() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        let mut out = Self::zero(n);
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(n - i) {
                if !rhs.coeffs[j].is_zero() {
                    out.coeffs[i + j] = out.coeffs[i + j].add(&self.coeffs[i].mul(&rhs.coeffs[j]));
                }
            }
        }
        out
    }

    pub fn mul_series(&self, rhs: &Series<C>) -> Self {
        self.mul(&Self::from_univariate(rhs))
    }

    pub fn mul_laurent(&self, p: &LaurentPoly<C>) -> Self {
        BivariateSeries { coeffs: self.coeffs.iter().map(|c| c.mul(p)).collect() }
    }

    /// Inverse when the `t^0` coefficient is a nonzero constant.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if c0.min_exp() != 0 || c0.coeffs().len() != 1 {
            return Err(Error::Numeric("constant term in t is not a scalar".into()));
        }
        let inv0 = C::one().div_ref(&c0.coeffs()[0]);
        let n = self.order();
        let mut q: Vec<LaurentPoly<C>> = Vec::with_capacity(n + 1);
        q.push(LaurentPoly::constant(inv0.clone()));
        for k in 1..=n {
            let mut acc = LaurentPoly::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc = acc.add(&self.coeffs[j].mul(&q[k - j]));
                }
            }
            q.push(acc.scale(&inv0.neg_ref()));
        }
        Ok(BivariateSeries { coeffs: q })
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.inverse()?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rational;

    type LP = LaurentPoly<Rational>;

    fn s() -> LP {
        LP::from_terms(&[(1, 1.into()), (-1, 1.into())])
    }

    #[test]
    fn geometric_expansion_matches_inverse() {
        // 1/(1 - t s) both ways
        let n = 8;
        let t = Series::<Rational>::variable(n);
        let d = BivariateSeries::from_univariate(&Series::one(n))
            .sub(&BivariateSeries::from_univariate(&t).mul_laurent(&s()));
        let inv = d.inverse().unwrap();
        let g: Vec<_> = (0..=n).map(|m| Series::monomial(n, m, Rational::from(1))).collect();
        assert_eq!(inv, BivariateSeries::from_powers_of(&s(), &g));
        let one = d.mul(&inv);
        assert_eq!(one.coeff(0), &LP::one());
        assert!((1..=n).all(|k| one.coeff(k).is_zero()));
    }

    #[test]
    fn inverse_rejects_nonscalar_constant() {
        let b = BivariateSeries::from_coeffs(vec![s(), LP::one()]);
        assert!(b.inverse().is_err());
        assert_eq!(BivariateSeries::<Rational>::zero(3).inverse().unwrap_err(), Error::DivisionByZero);
    }
}
