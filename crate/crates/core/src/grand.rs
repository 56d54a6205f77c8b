//! Grand-moment recurrences for ISE and for the Brownian excursion, and the
//! closed-form limits built from them.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{OnceLock, RwLock};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::combinat::binomial_u64;
use crate::error::{Error, Result};
use crate::numerics::special::{gamma, gamma_ratio};
use crate::partition::ExtendedPartition;
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    /// `c_λ`: vertical profile, limit ISE.
    Ise,
    /// `d_λ`: horizontal profile, limit Brownian excursion.
    Exc,
}

impl Kind {
    /// Zero-part factor `p + |λ| / divisor - 3/2`.
    fn weight_divisor(self) -> i64 {
        match self {
            Kind::Ise => 4,
            Kind::Exc => 2,
        }
    }

    /// Total amount removed from `λ` in the inner `σ` sum.
    fn sigma_drop(self) -> u32 {
        match self {
            Kind::Ise => 2,
            Kind::Exc => 1,
        }
    }
}

/// Write-once table of grand-moment numbers keyed by sorted partition.
pub struct GrandMomentCache {
    map: RwLock<HashMap<(Kind, Vec<u32>), Rational>>,
}

impl Default for GrandMomentCache {
    fn default() -> Self {
        Self::new()
    }
}

impl GrandMomentCache {
    pub fn new() -> Self {
        let mut map = HashMap::new();
        map.insert((Kind::Ise, Vec::new()), Rational::from(-2));
        map.insert((Kind::Exc, Vec::new()), Rational::from(-2));
        GrandMomentCache { map: RwLock::new(map) }
    }

    pub fn get(&self, kind: Kind, lambda: &ExtendedPartition) -> Rational {
        self.sorted(kind, lambda.parts())
    }

    pub fn len(&self) -> usize {
        self.map.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn sorted(&self, kind: Kind, parts: &[u32]) -> Rational {
        if let Some(v) = self.map.read().unwrap().get(&(kind, parts.to_vec())) {
            return v.clone();
        }
        let v = self.compute(kind, parts);
        self.map.write().unwrap().entry((kind, parts.to_vec())).or_insert(v).clone()
    }

    fn compute(&self, kind: Kind, parts: &[u32]) -> Rational {
        let weight: u32 = parts.iter().sum();
        if kind == Kind::Ise && weight % 2 == 1 {
            return Rational::zero();
        }
        if parts[0] == 0 {
            let rest = self.sorted(kind, &parts[1..]);
            return zero_part_factor(kind, parts.len(), weight) * rest;
        }
        recurrence(kind, parts, |sub| {
            let mut key = sub.to_vec();
            key.sort_unstable();
            self.sorted(kind, &key)
        })
    }
}

fn zero_part_factor(kind: Kind, p: usize, weight: u32) -> Rational {
    // p + |λ|/q - 3/2 over the common denominator 2q
    let q = kind.weight_divisor();
    Rational::new(2 * q * p as i64 + 2 * weight as i64 - 3 * q, 2 * q)
}

/// Right side of the recurrence for a tuple with positive first part; `get`
/// evaluates sub-tuples (which it may or may not sort).
fn recurrence(kind: Kind, parts: &[u32], mut get: impl FnMut(&[u32]) -> Rational) -> Rational {
    let p = parts.len();
    let mut split = Rational::zero();
    for mask in 1u32..(1 << p) - 1 {
        let left: Vec<u32> = (0..p).filter(|i| mask >> i & 1 == 1).map(|i| parts[i]).collect();
        let right: Vec<u32> = (0..p).filter(|i| mask >> i & 1 == 0).map(|i| parts[i]).collect();
        let a = get(&left);
        if a.is_zero() {
            continue;
        }
        split.add_product(&a, &get(&right));
    }
    let mut inner = Rational::zero();
    for (sigma, b) in reductions(parts, kind.sigma_drop()) {
        inner.add_product(&Rational::from(b as i64), &get(&sigma));
    }
    split * Rational::new(1, 4) + inner
}

/// Positional tuples `σ ≤ λ` with `|σ| = |λ| - drop` (drop 1 or 2), paired
/// with `Π binom(λ_i, σ_i)`.
fn reductions(parts: &[u32], drop: u32) -> Vec<(Vec<u32>, u64)> {
    let mut out = Vec::new();
    let p = parts.len();
    for i in 0..p {
        if parts[i] >= drop {
            let mut s = parts.to_vec();
            s[i] -= drop;
            out.push((s, binomial_u64(parts[i] as u64, drop as u64)));
        }
    }
    if drop == 2 {
        for i in 0..p {
            for j in i + 1..p {
                if parts[i] >= 1 && parts[j] >= 1 {
                    let mut s = parts.to_vec();
                    s[i] -= 1;
                    s[j] -= 1;
                    out.push((s, parts[i] as u64 * parts[j] as u64));
                }
            }
        }
    }
    out
}

fn cache() -> &'static GrandMomentCache {
    static CACHE: OnceLock<GrandMomentCache> = OnceLock::new();
    CACHE.get_or_init(GrandMomentCache::new)
}

/// `c_λ` (ISE grand-moment number).
pub fn c_lambda(lambda: &ExtendedPartition) -> Rational {
    cache().get(Kind::Ise, lambda)
}

/// `d_λ` (excursion grand-moment number).
pub fn d_lambda(lambda: &ExtendedPartition) -> Rational {
    cache().get(Kind::Exc, lambda)
}

pub fn grand_number(kind: Kind, lambda: &ExtendedPartition) -> Rational {
    cache().get(kind, lambda)
}

/// The same recurrence evaluated on the tuple exactly as given, without
/// sorting or caching. Zero parts are removed at their first position.
/// Only meant for small consistency checks.
pub fn grand_number_positional(kind: Kind, parts: &[u32]) -> Rational {
    if parts.is_empty() {
        return Rational::from(-2);
    }
    let weight: u32 = parts.iter().sum();
    if kind == Kind::Ise && weight % 2 == 1 {
        return Rational::zero();
    }
    if let Some(z) = parts.iter().position(|&x| x == 0) {
        let mut rest = parts.to_vec();
        rest.remove(z);
        return zero_part_factor(kind, parts.len(), weight) * grand_number_positional(kind, &rest);
    }
    recurrence(kind, parts, |sub| grand_number_positional(kind, sub))
}

/// `a_k = c_{1^{2k}}` from its own single-index recurrence.
pub fn a_k(k: usize) -> Rational {
    let mut a: Vec<Rational> = vec![Rational::from(-2)];
    for m in 1..=k {
        let mut acc = Rational::zero();
        for i in 1..m {
            let b = Rational::from_integer(crate::combinat::binomial(2 * m as u64, 2 * i as u64));
            acc += &(&b * &(&a[i] * &a[m - i]));
        }
        let m_ = m as i64;
        let w = Rational::from(m_ * (2 * m_ - 1) * (5 * m_ - 4) * (5 * m_ - 6));
        acc += &(&w * &a[m - 1]);
        a.push(acc * Rational::new(1, 4));
    }
    a.swap_remove(k)
}

/// `a_{k,ℓ} = c_{1^{2k} 2^ℓ}` from its own two-index recurrence.
pub fn a_kl(k: usize, l: usize) -> Rational {
    let mut memo = HashMap::new();
    a_kl_memo(k, l, &mut memo)
}

fn a_kl_memo(k: usize, l: usize, memo: &mut HashMap<(usize, usize), Rational>) -> Rational {
    if (k, l) == (0, 0) {
        return Rational::from(-2);
    }
    if let Some(v) = memo.get(&(k, l)) {
        return v.clone();
    }
    let mut split = Rational::zero();
    for i in 0..=k {
        for j in 0..=l {
            if (i, j) == (0, 0) || (i, j) == (k, l) {
                continue;
            }
            let b = binomial_u64(2 * k as u64, 2 * i as u64) * binomial_u64(l as u64, j as u64);
            let prod = a_kl_memo(i, j, memo) * a_kl_memo(k - i, l - j, memo);
            split.add_product(&Rational::from(b as i64), &prod);
        }
    }
    let mut v = split * Rational::new(1, 4);
    let (k_, l_) = (k as i64, l as i64);
    if l >= 2 {
        v += &(Rational::from(2 * l_ * (l_ - 1)) * a_kl_memo(k + 1, l - 2, memo));
    }
    if k >= 1 {
        let w = Rational::new(k_ * (2 * k_ - 1) * (5 * k_ + 3 * l_ - 4) * (5 * k_ + 3 * l_ - 6), 4);
        v += &(w * a_kl_memo(k - 1, l, memo));
    }
    if l >= 1 {
        let w = Rational::new((4 * k_ + 1) * l_ * (5 * k_ + 3 * l_ - 4), 2);
        v += &(w * a_kl_memo(k, l - 1, memo));
    }
    memo.insert((k, l), v.clone());
    v
}

/// `E m_λ` for ISE: `2^{-|λ|/4} c_λ Γ(1/2) / Γ(p + |λ|/4 - 1/2)`.
///
/// The empty partition gives 1, reading the formula at `Γ(-1/2)`.
pub fn limit_moment_ise(lambda: &ExtendedPartition) -> f64 {
    let w = lambda.weight() as f64;
    let c = c_lambda(lambda);
    if c.is_zero() {
        return 0.0;
    }
    let g = gamma_ratio(0.5, lambda.len() as f64 + w / 4.0 - 0.5).expect("argument is never a pole");
    2f64.powf(-w / 4.0) * c.to_f64() * g
}

/// `E m_λ` for the excursion occupation measure:
/// `2^{-3|λ|/2} d_λ Γ(1/2) / Γ(p + |λ|/2 - 1/2)`.
pub fn limit_moment_exc(lambda: &ExtendedPartition) -> f64 {
    let w = lambda.weight() as f64;
    let d = d_lambda(lambda);
    let g = gamma_ratio(0.5, lambda.len() as f64 + w / 2.0 - 0.5).expect("argument is never a pole");
    2f64.powf(-1.5 * w) * d.to_f64() * g
}

pub fn limit_moment(kind: Kind, lambda: &ExtendedPartition) -> f64 {
    match kind {
        Kind::Ise => limit_moment_ise(lambda),
        Kind::Exc => limit_moment_exc(lambda),
    }
}

/// `E f_ISE(0)^r = 2^{r/4} 3^{-r} Γ(3r/4 + 1) / Γ(r/2 + 1)` for `r > -4/3`.
pub fn density0_moment(r: f64) -> Result<f64> {
    if r.is_nan() || r <= -4.0 / 3.0 {
        return Err(Error::OutOfRange(format!("density moment order {r} must exceed -4/3")));
    }
    Ok(2f64.powf(r / 4.0) * 3f64.powf(-r) * gamma_ratio(0.75 * r + 1.0, 0.5 * r + 1.0)?)
}

/// `E ∫ |x|^a dμ_ISE = 2^{3a/4} π^{-1/2} Γ(a/2 + 1/2) Γ(a/4 + 1)` for `a > -1`.
pub fn abs_moment_ise(a: f64) -> Result<f64> {
    if a.is_nan() || a <= -1.0 {
        return Err(Error::OutOfRange(format!("absolute moment order {a} must exceed -1")));
    }
    Ok(2f64.powf(0.75 * a) / PI.sqrt() * gamma(a / 2.0 + 0.5)? * gamma(a / 4.0 + 1.0)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(s: &str) -> ExtendedPartition {
        s.parse().unwrap()
    }

    #[test]
    fn seeds_and_first_values() {
        assert_eq!(c_lambda(&part("")), Rational::from(-2));
        assert_eq!(d_lambda(&part("")), Rational::from(-2));
        assert_eq!(c_lambda(&part("0")), Rational::from(1));
        assert_eq!(d_lambda(&part("0")), Rational::from(1));
        assert_eq!(d_lambda(&part("1")), Rational::from(1));
        assert_eq!(c_lambda(&part("1")), Rational::zero());
        let single: Vec<Rational> = (1..=4).map(|k| c_lambda(&ExtendedPartition::new(vec![2 * k]))).collect();
        assert_eq!(single, [1, 6, 90, 2520].map(Rational::from).to_vec());
    }

    #[test]
    fn specialised_recurrences() {
        assert_eq!(a_k(0), Rational::from(-2));
        assert_eq!(a_k(1), Rational::new(1, 2));
        assert_eq!(a_kl(0, 0), Rational::from(-2));
        assert_eq!(a_kl(0, 1), Rational::from(1));
        assert_eq!(a_kl(1, 0), Rational::new(1, 2));
        for k in 0..=4 {
            assert_eq!(a_k(k), c_lambda(&ExtendedPartition::ones_twos(2 * k, 0)));
        }
    }

    #[test]
    fn limits() {
        assert!((limit_moment_ise(&part("2")) - (PI / 2.0).sqrt()).abs() < 1e-14);
        assert!((limit_moment_ise(&part("1,1")) - PI.sqrt() / (2.0 * 2f64.sqrt())).abs() < 1e-14);
        assert_eq!(limit_moment_ise(&part("1")), 0.0);
        assert!((limit_moment_exc(&part("1")) - (PI / 8.0).sqrt()).abs() < 1e-15);
        assert!((limit_moment_exc(&part("")) - 1.0).abs() < 1e-15);
        assert!((limit_moment_ise(&part("")) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn closed_form_moments() {
        assert_eq!(density0_moment(0.0).unwrap(), 1.0);
        let want = 2f64.powf(-0.75) * gamma(0.75).unwrap() / PI.sqrt();
        assert!((density0_moment(1.0).unwrap() - want).abs() < 1e-15);
        assert!((want - 0.4110895).abs() < 1e-7);
        assert!((density0_moment(2.0).unwrap() - 0.2088857).abs() < 1e-7);
        assert!(density0_moment(-1.4).is_err());
        assert!((abs_moment_ise(0.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((abs_moment_ise(1.0).unwrap() - 0.8600400).abs() < 1e-7);
        assert!(abs_moment_ise(-1.0).is_err());
    }

    #[test]
    fn positional_path_agrees_on_permutations() {
        for parts in [vec![2, 1, 1], vec![1, 2, 1], vec![0, 3, 1], vec![3, 0, 1], vec![1, 1, 0, 2]] {
            for kind in [Kind::Ise, Kind::Exc] {
                assert_eq!(
                    grand_number_positional(kind, &parts),
                    grand_number(kind, &ExtendedPartition::new(parts.clone()))
                );
            }
        }
    }
}
