//! Arbitrary-precision rationals.
//!
//! A thin wrapper over [`BigRational`] that is always in lowest terms with a
//! positive denominator. Generating-function coefficients are integers almost
//! everywhere, so every operation takes an integer-only path when both sides
//! have denominator one and skips the gcd reduction entirely.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        let denom = denom.into();
        assert!(!denom.is_zero(), "zero denominator");
        Rational(BigRational::new(numer.into(), denom))
    }

    pub fn from_integer(v: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(v.into()))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Self {
        Rational(self.0.recip())
    }

    /// Nearest double; huge numerators and denominators are handled without overflow.
    pub fn to_f64(&self) -> f64 {
        if self.is_integer() {
            return self.numer().to_f64().unwrap_or(f64::NAN);
        }
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// `self += a * b`, the inner step of every Cauchy product.
    pub fn add_product(&mut self, a: &Rational, b: &Rational) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        if self.is_integer() && a.is_integer() && b.is_integer() {
            let n = self.numer() + a.numer() * b.numer();
            self.0 = BigRational::from_integer(n);
        } else {
            self.0 = &self.0 + &a.0 * &b.0;
        }
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl FromStr for Rational {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || crate::Error::Numeric(format!("cannot parse rational {s:?}"));
        match s.split_once('/') {
            None => Ok(Rational::from_integer(BigInt::from_str(s.trim()).map_err(|_| bad())?)),
            Some((n, d)) => {
                let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
                let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(Rational::new(n, d))
            }
        }
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::from_integer(v)
    }
}

impl From<BigInt> for Rational {
    fn from(v: BigInt) -> Self {
        Rational::from_integer(v)
    }
}

impl From<BigRational> for Rational {
    fn from(v: BigRational) -> Self {
        Rational(v)
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Rational(BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for Rational {
    fn one() -> Self {
        Rational(BigRational::one())
    }
}

impl<'a> Add<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn add(self, rhs: &'a Rational) -> Rational {
        if self.is_integer() && rhs.is_integer() {
            Rational(BigRational::from_integer(self.numer() + rhs.numer()))
        } else {
            Rational(&self.0 + &rhs.0)
        }
    }
}

impl<'a> Sub<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn sub(self, rhs: &'a Rational) -> Rational {
        if self.is_integer() && rhs.is_integer() {
            Rational(BigRational::from_integer(self.numer() - rhs.numer()))
        } else {
            Rational(&self.0 - &rhs.0)
        }
    }
}

impl<'a> Mul<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn mul(self, rhs: &'a Rational) -> Rational {
        if self.is_integer() && rhs.is_integer() {
            Rational(BigRational::from_integer(self.numer() * rhs.numer()))
        } else {
            Rational(&self.0 * &rhs.0)
        }
    }
}

impl<'a> Div<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn div(self, rhs: &'a Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero rational");
        if rhs.is_integer() && rhs.numer().is_one() {
            return self.clone();
        }
        Rational(&self.0 / &rhs.0)
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: &'a Rational) -> Rational {
                (&self).$m(rhs)
            }
        }
    )*};
}

forward_owned!(Add::add, Sub::sub, Mul::mul, Div::div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        *self = &*self * rhs;
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| &acc + &x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms_and_sign() {
        let r = Rational::new(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(r.to_string(), "-3/2");
    }

    #[test]
    fn integer_fast_path_matches_general_path() {
        let a = Rational::from(7);
        let b = Rational::new(1, 3);
        assert_eq!(&a * &b, Rational::new(7, 3));
        assert_eq!(&(&a * &b) * &Rational::from(3), a);
        let mut acc = Rational::from(1);
        acc.add_product(&Rational::from(2), &Rational::from(5));
        assert_eq!(acc, Rational::from(11));
        acc.add_product(&b, &b);
        assert_eq!(acc, Rational::new(100, 9));
    }

    #[test]
    fn parse_round_trip() {
        let r: Rational = "-14/5".parse().unwrap();
        assert_eq!(r, Rational::new(-14, 5));
        assert_eq!(r.to_string().parse::<Rational>().unwrap(), r);
        assert!("1/0".parse::<Rational>().is_err());
    }

    #[test]
    fn huge_values_convert_to_double() {
        let big = BigInt::from(4).pow(600u32);
        let r = Rational::new(big.clone() * 3, big);
        assert_eq!(r.to_f64(), 3.0);
    }
}
