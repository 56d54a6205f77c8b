//! Expected moments of finite random trees from the derivative series.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::Zero;
use serde::Serialize;

use crate::combinat::{binomial_u64, falling, stirling2};
use crate::error::{Error, Result};
use crate::family::TreeFamily;
use crate::grand::limit_moment_ise;
use crate::partition::{dominated_tuples, ExtendedPartition};
use crate::rational::Rational;
use crate::series::{Coeff, PowerSeries, Series};

use super::engine::{Engine, Statistic};

type Key = (TreeFamily, Statistic, usize);

fn base_family(family: TreeFamily) -> TreeFamily {
    match family {
        TreeFamily::CompleteBinary => TreeFamily::Binary,
        f => f,
    }
}

/// Shared exact engine for a base family at a given order.
pub fn exact_engine(family: TreeFamily, stat: Statistic, order: usize) -> Arc<Engine<Rational>> {
    static REG: OnceLock<Mutex<HashMap<Key, Arc<Engine<Rational>>>>> = OnceLock::new();
    let key = (base_family(family), stat, order);
    let reg = REG.get_or_init(Default::default);
    let mut map = reg.lock().unwrap();
    map.entry(key)
        .or_insert_with(|| Arc::new(Engine::new(key.0, stat, order, Rational::from(1)).expect("unit constant term")))
        .clone()
}

/// Shared floating engine (variable scaled by `1 / growth_base`).
pub fn float_engine(family: TreeFamily, stat: Statistic, order: usize) -> Arc<Engine<f64>> {
    static REG: OnceLock<Mutex<HashMap<Key, Arc<Engine<f64>>>>> = OnceLock::new();
    let key = (base_family(family), stat, order);
    let reg = REG.get_or_init(Default::default);
    let mut map = reg.lock().unwrap();
    map.entry(key)
        .or_insert_with(|| {
            let rho = 1.0 / key.0.growth_base() as f64;
            Arc::new(Engine::new(key.0, stat, order, rho).expect("unit constant term"))
        })
        .clone()
}

/// Truncation order used for a requested size: rounded up so that nearby
/// sizes share one cached engine.
pub fn order_for(n: usize) -> usize {
    n.max(8).next_power_of_two()
}

/// One factor `M^c_k` of a complete-binary moment written in binary-tree
/// terms: `Σ (coefficient, Some(j))` for `M_j`, `None` for the constant 1.
fn complete_factor(k: u32, stat: Statistic) -> Vec<(i64, Option<u32>)> {
    // every non-root node of the complete tree is a child of an internal
    // node v, sitting at ℓ(v) + d for d in D; (ℓ + d)_k expands by
    // Vandermonde into Σ_j binom(k, j) (ℓ)_j (d)_{k-j}
    let d: &[i64] = match stat {
        Statistic::Label => &[-1, 1],
        Statistic::Depth => &[1, 1],
    };
    let mut out = Vec::new();
    if k == 0 {
        out.push((1, None));
    }
    for j in 0..=k {
        let a: i64 = d.iter().map(|&dv| binomial_u64(k as u64, j as u64) as i64 * falling(dv, k - j)).sum();
        if a != 0 {
            out.push((a, Some(j)));
        }
    }
    out
}

/// `∂_λ F` in the family's own size variable: coefficient `n` is
/// `count_n · E Π_i Σ_v (stat(v))_{λ_i}` (factorial moments).
pub fn partial_f_with<C: Coeff>(engine: &Engine<C>, family: TreeFamily, lambda: &ExtendedPartition) -> Series<C> {
    if family != TreeFamily::CompleteBinary {
        return (*engine.partial(lambda)).clone();
    }
    // multilinear expansion over the parts
    let mut terms: HashMap<Vec<u32>, i64> = HashMap::new();
    terms.insert(Vec::new(), 1);
    for &k in lambda.parts() {
        let mut next: HashMap<Vec<u32>, i64> = HashMap::new();
        for (key, coef) in &terms {
            for (a, j) in complete_factor(k, engine.statistic()) {
                let mut nk = key.clone();
                if let Some(j) = j {
                    nk.push(j);
                    nk.sort_unstable();
                }
                *next.entry(nk).or_insert(0) += coef * a;
            }
        }
        terms = next;
    }
    let mut keys: Vec<_> = terms.into_iter().filter(|(_, c)| *c != 0).collect();
    keys.sort();
    let mut acc = Series::zero(engine.order());
    for (key, coef) in keys {
        let part = engine.partial(&ExtendedPartition::new(key));
        acc.add_scaled_assign(&C::from_i64(coef), &part);
    }
    acc
}

/// Exact `∂_λ F` series of the family up to order `order`.
pub fn partial_f(family: TreeFamily, lambda: &ExtendedPartition, order: usize) -> PowerSeries {
    partial_f_with(&exact_engine(family, Statistic::Label, order), family, lambda).truncate(order)
}

/// Same as [`partial_f`] with depths in place of labels.
pub fn horizontal_partial_f(family: TreeFamily, lambda: &ExtendedPartition, order: usize) -> PowerSeries {
    partial_f_with(&exact_engine(family, Statistic::Depth, order), family, lambda).truncate(order)
}

/// Series counting the family's objects by size.
pub fn f_series(family: TreeFamily, order: usize) -> PowerSeries {
    exact_engine(family, Statistic::Label, order).f0().truncate(order)
}

/// `Σ_T Π_i Σ_v stat(v)^{λ_i}` divided by the count, as `[s^n]` ratios:
/// power sums are expanded into factorial ones with Stirling numbers.
fn power_moment_with<C: Coeff>(
    engine: &Engine<C>,
    family: TreeFamily,
    lambda: &ExtendedPartition,
    n: usize,
) -> Result<C> {
    if n > engine.order() {
        return Err(Error::TruncationTooSmall { requested: n, order: engine.order() });
    }
    if n == 0 && family == TreeFamily::Binary {
        return Err(Error::OutOfRange("binary trees have at least one node".into()));
    }
    let mut total = C::zero();
    for j in dominated_tuples(lambda.parts()) {
        let w: u64 = lambda.parts().iter().zip(&j).map(|(&l, &jj)| stirling2(l as usize, jj as usize)).product();
        if w == 0 {
            continue;
        }
        let series = partial_f_with(engine, family, &ExtendedPartition::new(j));
        total.add_product(&C::from_i64(w as i64), series.coeff(n));
    }
    Ok(total.div_ref(&engine.count_coeff(n)?))
}

/// An exact finite-size moment with its normalised real value.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactMoment {
    /// `E Π_i Σ_v ℓ(v)^{λ_i}`
    pub rational: Rational,
    /// `E m_{λ,n} = γ^{|λ|} N^{-p-|λ|/4} · rational`, `N` the node count.
    pub normalized: f64,
}

/// The scale `γ^{|λ|} N^{-p-|λ|/4}` turning raw power sums into moments of
/// the rescaled occupation measure.
pub fn normalization(family: TreeFamily, lambda: &ExtendedPartition, n: usize) -> f64 {
    let w = lambda.weight() as f64;
    let nodes = family.node_count(n as u64) as f64;
    family.gamma().powf(w) * nodes.powf(-(lambda.len() as f64) - w / 4.0)
}

/// Exact `E Π_i Σ_v ℓ(v)^{λ_i}` over uniform objects of size `n`.
pub fn exact_moment(family: TreeFamily, lambda: &ExtendedPartition, n: usize) -> Result<ExactMoment> {
    let engine = exact_engine(family, Statistic::Label, order_for(n));
    let rational = power_moment_with(&engine, family, lambda, n)?;
    let normalized = rational.to_f64() * normalization(family, lambda, n);
    Ok(ExactMoment { rational, normalized })
}

/// Exact depth moment `E Π_i Σ_v d(v)^{λ_i}`.
pub fn exact_depth_moment(family: TreeFamily, lambda: &ExtendedPartition, n: usize) -> Result<Rational> {
    let engine = exact_engine(family, Statistic::Depth, order_for(n));
    power_moment_with(&engine, family, lambda, n)
}

/// Normalised moment `E m_{λ,n}` from the double-precision series; usable
/// for sizes where exact coefficients become too large.
pub fn float_moment(family: TreeFamily, lambda: &ExtendedPartition, n: usize) -> Result<f64> {
    let engine = float_engine(family, Statistic::Label, order_for(n));
    let raw = power_moment_with(&engine, family, lambda, n)?;
    Ok(raw * normalization(family, lambda, n))
}

#[derive(Clone, Debug, Serialize)]
pub struct MomentRow {
    pub n: usize,
    pub exact: String,
    pub normalized: f64,
    pub limit: f64,
    pub rel_gap: f64,
}

/// Exact moments of one family and partition over a list of sizes, with the
/// ISE limit for comparison.
#[derive(Clone, Debug, Serialize)]
pub struct MomentTable {
    pub family: TreeFamily,
    pub partition: String,
    pub rows: Vec<MomentRow>,
}

impl MomentTable {
    pub fn build(family: TreeFamily, lambda: &ExtendedPartition, sizes: &[usize]) -> Result<Self> {
        if !lambda.is_positive() {
            return Err(Error::InvalidPartition(format!("{lambda}: moment tables need positive parts")));
        }
        let limit = limit_moment_ise(lambda);
        let mut rows = Vec::with_capacity(sizes.len());
        for &n in sizes {
            let m = exact_moment(family, lambda, n)?;
            let rel_gap = if limit.is_zero() { m.normalized.abs() } else { (m.normalized / limit - 1.0).abs() };
            rows.push(MomentRow { n, exact: m.rational.to_string(), normalized: m.normalized, limit, rel_gap });
        }
        Ok(MomentTable { family, partition: lambda.to_string(), rows })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(s: &str) -> ExtendedPartition {
        s.parse().unwrap()
    }

    #[test]
    fn binary_second_moment_small_n() {
        let m = exact_moment(TreeFamily::Binary, &part("2"), 2).unwrap();
        assert_eq!(m.rational, Rational::from(1));
        assert!((m.normalized - 0.25).abs() < 1e-15);
        let m3 = exact_moment(TreeFamily::Binary, &part("2"), 3).unwrap();
        assert_eq!(m3.rational, Rational::new(14, 5));
        for n in 1..10 {
            assert!(exact_moment(TreeFamily::Binary, &part("1"), n).unwrap().rational.is_zero());
        }
    }

    #[test]
    fn complete_binary_node_count() {
        let s = partial_f(TreeFamily::CompleteBinary, &part("0"), 6);
        for n in 0..=6u64 {
            let want = crate::combinat::catalan(n) * (2 * n + 1);
            assert_eq!(s.coeff(n as usize), &Rational::from(want));
        }
    }

    #[test]
    fn truncation_errors() {
        let engine = exact_engine(TreeFamily::Binary, Statistic::Label, 8);
        let err = power_moment_with(&engine, TreeFamily::Binary, &part("2"), 9).unwrap_err();
        assert!(matches!(err, Error::TruncationTooSmall { .. }));
    }

    #[test]
    fn float_matches_exact_at_moderate_n() {
        for f in crate::family::ALL_FAMILIES {
            for l in ["2", "1,1", "2,2"] {
                let e = exact_moment(f, &part(l), 40).unwrap().normalized;
                let x = float_moment(f, &part(l), 40).unwrap();
                assert!((e - x).abs() <= 1e-10 * e.abs(), "{f} {l}: {e} vs {x}");
            }
        }
    }
}
