//! Laurent polynomials in one variable `x`.

use std::fmt;

use num_complex::Complex64;

use super::Coeff;

/// `Σ_j c_j x^{min_exp + j}` with nonzero first and last coefficients.
/// The zero polynomial is the empty vector with `min_exp = 0`.
#[derive(Clone, PartialEq)]
pub struct LaurentPoly<C> {
    min_exp: i64,
    coeffs: Vec<C>,
}

impl<C: Coeff> LaurentPoly<C> {
    pub fn new(min_exp: i64, coeffs: Vec<C>) -> Self {
        let mut p = LaurentPoly { min_exp, coeffs };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        LaurentPoly { min_exp: 0, coeffs: Vec::new() }
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(0, c)
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn monomial(exp: i64, c: C) -> Self {
        Self::new(exp, vec![c])
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms(terms: &[(i64, C)]) -> Self {
        if terms.is_empty() {
            return Self::zero();
        }
        let lo = terms.iter().map(|t| t.0).min().unwrap();
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![C::zero(); (hi - lo + 1) as usize];
        for (e, c) in terms {
            let slot = &mut coeffs[(e - lo) as usize];
            *slot = slot.add_ref(c);
        }
        Self::new(lo, coeffs)
    }

    fn trim(&mut self) {
        let Some(first) = self.coeffs.iter().position(|c| !c.is_zero()) else {
            self.coeffs.clear();
            self.min_exp = 0;
            return;
        };
        let last = self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap();
        self.coeffs.truncate(last + 1);
        self.coeffs.drain(..first);
        self.min_exp += first as i64;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exp(&self) -> i64 {
        self.min_exp
    }

    /// Largest exponent present; `None` for zero.
    pub fn max_exp(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.min_exp + self.coeffs.len() as i64 - 1)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, exp: i64) -> C {
        let i = exp - self.min_exp;
        if i < 0 || i as usize >= self.coeffs.len() {
            C::zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> {
        let m = self.min_exp;
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(i, c)| (m + i as i64, c))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.min_exp.min(rhs.min_exp);
        let hi = self.max_exp().unwrap().max(rhs.max_exp().unwrap());
        let coeffs = (lo..=hi).map(|e| self.coeff(e).add_ref(&rhs.coeff(e))).collect();
        Self::new(lo, coeffs)
    }

    pub fn neg(&self) -> Self {
        LaurentPoly { min_exp: self.min_exp, coeffs: self.coeffs.iter().map(|c| c.neg_ref()).collect() }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::new(self.min_exp, self.coeffs.iter().map(|a| a.mul_ref(c)).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j].add_product(a, b);
            }
        }
        Self::new(self.min_exp + rhs.min_exp, out)
    }

    /// `p(1/x)`.
    pub fn reflect(&self) -> Self {
        match self.max_exp() {
            None => Self::zero(),
            Some(hi) => LaurentPoly { min_exp: -hi, coeffs: self.coeffs.iter().rev().cloned().collect() },
        }
    }

    pub fn is_palindromic(&self) -> bool {
        *self == self.reflect()
    }

    /// Value at `x = 1`.
    pub fn sum(&self) -> C {
        self.coeffs.iter().fold(C::zero(), |acc, c| acc.add_ref(c))
    }

    /// `Σ_j c_j e^{i j u}` in double precision.
    pub fn eval_unit_circle(&self, u: f64) -> Complex64 {
        self.terms().map(|(e, c)| Complex64::from_polar(c.to_f64(), e as f64 * u)).sum()
    }

    /// `Σ |c_j|`, the scale for round-off bounds on [`Self::eval_unit_circle`].
    pub fn l1_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.to_f64().abs()).sum()
    }

    pub fn to_f64(&self) -> LaurentPoly<f64> {
        LaurentPoly::new(self.min_exp, self.coeffs.iter().map(|c| c.to_f64()).collect())
    }
}

impl<C: Coeff> fmt::Debug for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(e, c)| match e {
                0 => format!("{c:?}"),
                1 => format!("({c:?})x"),
                _ => format!("({c:?})x^{e}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rational;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    type LP = LaurentPoly<Rational>;

    fn x_plus_inv() -> LP {
        LP::from_terms(&[(1, Rational::from(1)), (-1, Rational::from(1))])
    }

    #[test]
    fn trimming_and_zero() {
        let p = LP::new(-3, vec![0.into(), 0.into(), 5.into(), 0.into()]);
        assert_eq!(p.min_exp(), -1);
        assert_eq!(p.coeffs().len(), 1);
        let z = p.sub(&p);
        assert!(z.is_zero());
        assert_eq!(z.min_exp(), 0);
    }

    #[test]
    fn unit_circle_values() {
        let p = x_plus_inv();
        assert!((p.eval_unit_circle(0.0) - Complex64::new(2.0, 0.0)).norm() < 1e-15);
        assert!((p.eval_unit_circle(PI) - Complex64::new(-2.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn square_of_x_plus_inverse() {
        let p = x_plus_inv();
        let sq = p.mul(&p);
        assert_eq!(sq, LP::new(-2, vec![1.into(), 0.into(), 2.into(), 0.into(), 1.into()]));
        assert!(sq.is_palindromic());
    }

    fn small_lp() -> impl Strategy<Value = LP> {
        (-3i64..3, proptest::collection::vec(-5i64..5, 0..5))
            .prop_map(|(m, v)| LP::new(m, v.into_iter().map(Rational::from).collect()))
    }

    proptest! {
        #[test]
        fn mul_commutes(a in small_lp(), b in small_lp()) {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
        }

        #[test]
        fn mul_associates(a in small_lp(), b in small_lp(), c in small_lp()) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        }

        #[test]
        fn exponent_ranges_add(a in small_lp(), b in small_lp()) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            let p = a.mul(&b);
            prop_assert_eq!(p.min_exp(), a.min_exp() + b.min_exp());
            prop_assert_eq!(p.max_exp(), Some(a.max_exp().unwrap() + b.max_exp().unwrap()));
        }
    }
}
