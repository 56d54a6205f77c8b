//! Profile-correlation series `Σ_n t^n P_n(x)` with
//! `P_n(x) = Σ_{|T| = n} Σ_{v, w ∈ T} x^{ℓ(v) - ℓ(w)}`, so that
//! `P_n(e^{iu}) / count_n = E |X̂_n(u)|²` with `X̂_n(u) = Σ_v e^{i ℓ(v) u}`.
//!
//! Each family has a closed form rational in `B(t)` (the non-empty binary
//! tree series) and `x + 1/x`. Written as `pre(t) · Σ_m e_m(t) w(x)^m`,
//! the sum terminates at `m = N` because each `e_m` has valuation `m`.

use num_traits::Zero;

use crate::error::Result;
use crate::family::TreeFamily;
use crate::rational::Rational;
use crate::series::{catalan_like, BivariateSeries, LaurentPoly, PowerSeries};

fn r(v: i64) -> Rational {
    Rational::from(v)
}

/// `B(c t)`: `B = t (1 + B)²` with `t` replaced by `c t`.
fn b_series(c: i64, order: usize) -> PowerSeries {
    catalan_like(&r(c), order).sub(&PowerSeries::one(order))
}

fn one(order: usize) -> PowerSeries {
    PowerSeries::one(order)
}

/// `x + 1/x`.
fn x_plus_inverse() -> LaurentPoly<Rational> {
    LaurentPoly::from_terms(&[(-1, r(1)), (1, r(1))])
}

/// `Σ_T t^{|T|} Σ_v x^{ℓ(v)}` for binary trees:
/// `B (1 + B) / (1 + B (1 - x - 1/x))`.
pub fn binary_label_series(order: usize) -> BivariateSeries<Rational> {
    let b = b_series(1, order);
    let u = b.div(&one(order).add(&b)).expect("unit constant term");
    let mut g = Vec::with_capacity(order + 1);
    let mut um = b.clone();
    for _ in 0..=order {
        g.push(um.clone());
        um = um.mul(&u);
    }
    BivariateSeries::from_powers_of(&x_plus_inverse(), &g)
}

fn binary_correlation(order: usize) -> BivariateSeries<Rational> {
    // B(1+B)(1+2B-B²) / ((1-B)(1+B-B(x+1/x))²)
    //   = [B(1+2B-B²) / ((1-B)(1+B))] Σ_m (m+1) u^m (x+1/x)^m,  u = B/(1+B)
    let b = b_series(1, order);
    let opb = one(order).add(&b);
    let u = b.div(&opb).unwrap();
    let num = b.mul(&one(order).add(&b.scale(&r(2))).sub(&b.mul(&b)));
    let pre = num.div(&one(order).sub(&b).mul(&opb)).unwrap();
    let mut g = Vec::with_capacity(order + 1);
    let mut um = pre;
    for m in 0..=order {
        g.push(um.scale(&r(m as i64 + 1)));
        um = um.mul(&u);
    }
    BivariateSeries::from_powers_of(&x_plus_inverse(), &g)
}

/// Plane families: with `T = B(ct)`, the closed forms
/// `(1+T)(1+T²c²)/((1-T)(1-Tc)²)`, `c = (x+1/x)/2`, and
/// `(1+T)(9+T²w²)/((1-T)(3-Tw)²)`, `w = 1+x+1/x`, both expand as
/// `(1+T)/(1-T) · Σ_m e_m (qT)^m w^m` with `e_0 = 1`, `e_m = 2m`.
fn plane_correlation(family: TreeFamily, order: usize) -> BivariateSeries<Rational> {
    let (c, q, w) = match family {
        TreeFamily::PlanePM1 => (2, Rational::new(1, 2), x_plus_inverse()),
        TreeFamily::Plane0PM1 => (3, Rational::new(1, 3), x_plus_inverse().add(&LaurentPoly::one())),
        _ => unreachable!("plane families only"),
    };
    let t = b_series(c, order);
    let pre = one(order).add(&t).div(&one(order).sub(&t)).unwrap();
    let qt = t.scale(&q);
    let mut g = Vec::with_capacity(order + 1);
    let mut pm = pre;
    for m in 0..=order {
        let e = if m == 0 { r(1) } else { r(2 * m as i64) };
        g.push(pm.scale(&e));
        pm = pm.mul(&qt);
    }
    BivariateSeries::from_powers_of(&w, &g)
}

/// Exact `Σ_n t^n P_n(x)` up to order `order` in the family's size variable.
pub fn profile_correlation_series(family: TreeFamily, order: usize) -> BivariateSeries<Rational> {
    match family {
        TreeFamily::Binary => binary_correlation(order),
        TreeFamily::PlanePM1 | TreeFamily::Plane0PM1 => plane_correlation(family, order),
        TreeFamily::CompleteBinary => {
            // X̂^c = 1 + (x + 1/x) X̂ for the internal-node binary tree, so
            // P^c_n = C_n + 2 (x + 1/x) [t^n] F_1 + (x + 1/x)² P_n
            let s = x_plus_inverse();
            let f1 = binary_label_series(order);
            let p = binary_correlation(order);
            let counts = BivariateSeries::from_univariate(&catalan_like(&r(1), order));
            counts.add(&f1.mul_laurent(&s.scale(&r(2)))).add(&p.mul_laurent(&s.mul(&s)))
        }
    }
}

/// Exact correlation polynomials with their counts, for repeated queries.
pub struct ProfileCorrelation {
    family: TreeFamily,
    series: BivariateSeries<Rational>,
    counts: PowerSeries,
}

impl ProfileCorrelation {
    pub fn new(family: TreeFamily, order: usize) -> Self {
        let counts = PowerSeries::from_fn(order, |n| Rational::from_integer(family.count(n as u64)));
        ProfileCorrelation { family, series: profile_correlation_series(family, order), counts }
    }

    pub fn order(&self) -> usize {
        self.series.order()
    }

    pub fn family(&self) -> TreeFamily {
        self.family
    }

    pub fn series(&self) -> &BivariateSeries<Rational> {
        &self.series
    }

    fn check(&self, n: usize) -> Result<()> {
        if n > self.order() {
            return Err(crate::Error::TruncationTooSmall { requested: n, order: self.order() });
        }
        if n == 0 && self.family == TreeFamily::Binary {
            return Err(crate::Error::OutOfRange("binary trees have at least one node".into()));
        }
        Ok(())
    }

    pub fn polynomial(&self, n: usize) -> Result<&LaurentPoly<Rational>> {
        self.check(n)?;
        Ok(self.series.coeff(n))
    }

    /// `E |X̂_n(u)|²`.
    pub fn fourier_second_moment(&self, n: usize, u: f64) -> Result<f64> {
        let p = self.polynomial(n)?;
        let count = self.counts.coeff(n);
        debug_assert!(!count.is_zero());
        Ok(p.eval_unit_circle(u).re / count.to_f64())
    }

    /// `(1 + N u⁴) E |X̂_n(u) / N|²` with `N` the node count.
    pub fn lemma_l3_ratio(&self, n: usize, u: f64) -> Result<f64> {
        let nodes = self.family.node_count(n as u64) as f64;
        Ok((1.0 + nodes * u.powi(4)) * self.fourier_second_moment(n, u)? / (nodes * nodes))
    }
}

/// One-shot `E |X̂_n(u)|²`.
pub fn fourier_second_moment(family: TreeFamily, n: usize, u: f64) -> Result<f64> {
    ProfileCorrelation::new(family, n.max(1)).fourier_second_moment(n, u)
}

/// One-shot `(1 + N u⁴) E |N^{-1} X̂_n(u)|²`.
pub fn lemma_l3_ratio(family: TreeFamily, n: usize, u: f64) -> Result<f64> {
    ProfileCorrelation::new(family, n.max(1)).lemma_l3_ratio(n, u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn binary_small_polynomials() {
        let pc = ProfileCorrelation::new(TreeFamily::Binary, 6);
        assert_eq!(pc.polynomial(1).unwrap(), &LaurentPoly::constant(r(1)));
        assert_eq!(pc.polynomial(2).unwrap(), &LaurentPoly::from_terms(&[(-1, r(2)), (0, r(4)), (1, r(2))]));
        assert_eq!(pc.polynomial(3).unwrap().sum(), r(45));
        assert!((pc.polynomial(2).unwrap().eval_unit_circle(0.0).re - 8.0).abs() < 1e-14);
        assert!(pc.fourier_second_moment(2, PI).unwrap().abs() < 1e-14);
    }

    #[test]
    fn l3_ratio_trivial_points() {
        let pc = ProfileCorrelation::new(TreeFamily::Binary, 12);
        for n in 1..=12 {
            assert!((pc.lemma_l3_ratio(n, 0.0).unwrap() - 1.0).abs() < 1e-13);
        }
        let u = 2.0;
        assert!((pc.lemma_l3_ratio(1, u).unwrap() - (1.0 + u.powi(4))).abs() < 1e-12);
    }
}
