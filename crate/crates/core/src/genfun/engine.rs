//! Recursive computation of the derivative series `∂_λ F_p`.
//!
//! Marking `p` nodes of a tree and attaching `x_i^{ℓ(v_i)}` to the `i`th
//! mark gives `F_p(t; x_1..x_p)`. Splitting at the root, the marks fall into
//! two subtrees whose labels are shifted by the family's increments:
//!
//! ```text
//! F_p = [root-only terms] + t Σ_{I ⊔ J = [p]} W1(x_I) F(x_I) · W2(x_J) F(x_J)
//! W(x_I) = Σ_{d ∈ D} Π_{i ∈ I} x_i^d
//! ```
//!
//! Binary trees use `D1 = {-1}`, `D2 = {+1}` (left and right subtree); plane
//! trees split off the first subtree (`D1` = increment set) from the rest of
//! the tree (`D2 = {0}`). Applying `Π ∂_{x_i}^{λ_i}` at `x = 1` with Leibniz's
//! rule yields a linear recursion in which `∂_λ F` appears on the right twice
//! (all marks in one side, undifferentiated weight), giving
//!
//! ```text
//! (1 - 2 c t F_0) ∂_λ F = t Σ' S1(I) S2(J),   c = |D1| |D2|,
//! ```
//!
//! and `1 - 2 c t F_0 = √(1 - 4 c t)`. Parts equal to zero mark a node
//! without weighting it, i.e. multiply by the node count.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::combinat::{binomial_u64, falling};
use crate::error::{Error, Result};
use crate::family::TreeFamily;
use crate::partition::{dominated_tuples, ExtendedPartition};
use crate::series::{catalan_like, Coeff, Series};

/// Which node statistic the marks record.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Statistic {
    /// Labels `ℓ(v)` (vertical profile).
    Label,
    /// Depths `d(v)` (horizontal profile).
    Depth,
}

#[derive(Clone, Copy, Debug)]
struct SplitRule {
    d1: &'static [i64],
    d2: &'static [i64],
    /// Node count of a size-`n` object is `n + node_offset`.
    node_offset: i64,
}

impl SplitRule {
    fn for_family(family: TreeFamily, stat: Statistic) -> Self {
        match (family, stat) {
            (TreeFamily::Binary | TreeFamily::CompleteBinary, Statistic::Label) => {
                SplitRule { d1: &[-1], d2: &[1], node_offset: 0 }
            }
            (TreeFamily::Binary | TreeFamily::CompleteBinary, Statistic::Depth) => {
                SplitRule { d1: &[1], d2: &[1], node_offset: 0 }
            }
            (TreeFamily::PlanePM1, Statistic::Label) => SplitRule { d1: &[-1, 1], d2: &[0], node_offset: 1 },
            (TreeFamily::Plane0PM1, Statistic::Label) => SplitRule { d1: &[-1, 0, 1], d2: &[0], node_offset: 1 },
            // depths do not see the labels, so both plane families reduce to plain plane trees
            (TreeFamily::PlanePM1 | TreeFamily::Plane0PM1, Statistic::Depth) => {
                SplitRule { d1: &[1], d2: &[0], node_offset: 1 }
            }
        }
    }

    fn c(&self) -> i64 {
        (self.d1.len() * self.d2.len()) as i64
    }
}

/// `Σ_{d ∈ D} Π_i binom(λ_i, σ_i) (d)_{λ_i - σ_i}`: the constant produced by
/// differentiating `W(x) · G(x)` and keeping `∂_σ G`.
fn leibniz_weight(d: &[i64], lambda: &[u32], sigma: &[u32]) -> i64 {
    d.iter()
        .map(|&dv| {
            lambda
                .iter()
                .zip(sigma)
                .map(|(&l, &s)| binomial_u64(l as u64, s as u64) as i64 * falling(dv, l - s))
                .product::<i64>()
        })
        .sum()
}

/// Derivative series for one base family, statistic, truncation order and
/// coefficient type.
///
/// Series are expressed in a scaled variable `s` with `t = ρ s`; the exact
/// engine uses `ρ = 1`, the floating engine `ρ = 1 / growth_base` so that
/// coefficients stay of polynomial size.
pub struct Engine<C: Coeff> {
    family: TreeFamily,
    stat: Statistic,
    rule: SplitRule,
    order: usize,
    rho: C,
    f0: Arc<Series<C>>,
    /// `t / (1 - 2 c t F_0)`
    t_over_root: Series<C>,
    cache: RwLock<HashMap<Vec<u32>, Arc<Series<C>>>>,
}

impl<C: Coeff> Engine<C> {
    pub fn new(family: TreeFamily, stat: Statistic, order: usize, rho: C) -> Result<Self> {
        let rule = SplitRule::for_family(family, stat);
        let c = C::from_i64(rule.c());
        let f0 = catalan_like(&c.mul_ref(&rho), order);
        let t = Series::monomial(order, 1, rho.clone());
        let root = Series::one(order).sub(&t.mul(&f0).scale(&C::from_i64(2 * rule.c())));
        let t_over_root = t.div(&root)?;
        Ok(Engine { family, stat, rule, order, rho, f0: Arc::new(f0), t_over_root, cache: RwLock::new(HashMap::new()) })
    }

    pub fn family(&self) -> TreeFamily {
        self.family
    }

    pub fn statistic(&self) -> Statistic {
        self.stat
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// The `t = ρ s` scale of the working variable.
    pub fn rho(&self) -> &C {
        &self.rho
    }

    /// Generating function of the unmarked objects (the `F_0` analogue).
    pub fn f0(&self) -> &Series<C> {
        &self.f0
    }

    /// `[s^n]` of the object count series.
    pub fn count_coeff(&self, n: usize) -> Result<C> {
        self.check_n(n)?;
        Ok(self.f0.coeff(n).clone())
    }

    pub fn node_offset(&self) -> i64 {
        self.rule.node_offset
    }

    fn check_n(&self, n: usize) -> Result<()> {
        if n > self.order {
            return Err(Error::TruncationTooSmall { requested: n, order: self.order });
        }
        Ok(())
    }

    /// `∂_λ F_p` for the family's own recursion. For complete binary trees
    /// this is the series of the *internal-node* (binary) tree; see
    /// [`crate::genfun::partial_f`] for the full complete-tree statistic.
    pub fn partial(&self, lambda: &ExtendedPartition) -> Arc<Series<C>> {
        self.partial_sorted(lambda.parts())
    }

    fn partial_sorted(&self, parts: &[u32]) -> Arc<Series<C>> {
        if parts.is_empty() {
            return self.f0.clone();
        }
        if let Some(hit) = self.cache.read().unwrap().get(parts) {
            return hit.clone();
        }
        let value = Arc::new(self.compute(parts));
        // duplicate concurrent computations produce identical values
        self.cache.write().unwrap().entry(parts.to_vec()).or_insert(value).clone()
    }

    fn compute(&self, parts: &[u32]) -> Series<C> {
        if parts[0] == 0 {
            return self.partial_sorted(&parts[1..]).t_ddt_plus(self.rule.node_offset);
        }
        let p = parts.len();
        let mut rest = Series::zero(self.order);
        for mask in 0u32..(1 << p) {
            let (left, right): (Vec<u32>, Vec<u32>) = {
                let mut l = Vec::new();
                let mut r = Vec::new();
                for (i, &part) in parts.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        l.push(part);
                    } else {
                        r.push(part);
                    }
                }
                (l, r)
            };
            let s1 = self.side_sum(self.rule.d1, &left, right.is_empty());
            let s2 = self.side_sum(self.rule.d2, &right, left.is_empty());
            if s1.is_zero() || s2.is_zero() {
                continue;
            }
            rest = rest.add(&s1.mul(&s2));
        }
        self.t_over_root.mul(&rest)
    }

    /// `Σ_{σ ≤ λ_side} A(D, λ_side, σ) ∂_σ F`, optionally without `σ = λ_side`.
    fn side_sum(&self, d: &[i64], lambda: &[u32], exclude_top: bool) -> Series<C> {
        let mut acc = Series::zero(self.order);
        for sigma in dominated_tuples(lambda) {
            if exclude_top && sigma == lambda {
                continue;
            }
            let a = leibniz_weight(d, lambda, &sigma);
            if a == 0 {
                continue;
            }
            let mut key = sigma;
            key.sort_unstable();
            let part = self.partial_sorted(&key);
            acc.add_scaled_assign(&C::from_i64(a), &part);
        }
        acc
    }

    /// Number of cached derivative series.
    pub fn cached(&self) -> usize {
        self.cache.read().unwrap().len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rational;

    fn exact(family: TreeFamily, stat: Statistic, order: usize) -> Engine<Rational> {
        Engine::new(family, stat, order, Rational::from(1)).unwrap()
    }

    fn part(s: &str) -> ExtendedPartition {
        s.parse().unwrap()
    }

    #[test]
    fn base_series() {
        let e = exact(TreeFamily::Binary, Statistic::Label, 4);
        let want: Vec<Rational> = [1, 1, 2, 5, 14].iter().map(|&v| v.into()).collect();
        assert_eq!(e.f0().coeffs(), want.as_slice());
        let p = exact(TreeFamily::PlanePM1, Statistic::Label, 3);
        assert_eq!(p.f0().coeff(2), &Rational::from(8));
        for f in crate::family::ALL_FAMILIES {
            assert_eq!(exact(f, Statistic::Label, 2).f0().coeff(0), &Rational::from(1));
        }
    }

    #[test]
    fn binary_small_cases() {
        let e = exact(TreeFamily::Binary, Statistic::Label, 8);
        assert!(e.partial(&part("1")).is_zero());
        assert_eq!(e.partial(&part("0")).coeff(3), &Rational::from(15));
        // 5 trees of 3 nodes: Σ ℓ(ℓ-1) = 8 + 2 + 2 + 0 + 2
        assert_eq!(e.partial(&part("2")).coeff(3), &Rational::from(14));
    }

    #[test]
    fn horizontal_small_cases() {
        let e = exact(TreeFamily::Binary, Statistic::Depth, 6);
        assert_eq!(e.partial(&part("1")).coeff(2), &Rational::from(2));
        let v = exact(TreeFamily::Binary, Statistic::Label, 6);
        assert_eq!(e.partial(&part("0")), v.partial(&part("0")));
        // chains: 4 trees with depths 0,1,2 -> Σ d(d-1) = 2 each; cherry: 0
        assert_eq!(e.partial(&part("2")).coeff(3), &Rational::from(8));
    }

    #[test]
    fn float_engine_tracks_exact_engine() {
        let n = 24;
        let ex = exact(TreeFamily::PlanePM1, Statistic::Label, n);
        let fl = Engine::new(TreeFamily::PlanePM1, Statistic::Label, n, 1.0 / 8.0).unwrap();
        let l = part("2,2");
        let a = ex.partial(&l);
        let b = fl.partial(&l);
        for k in 0..=n {
            let want = a.coeff(k).to_f64() / 8f64.powi(k as i32);
            assert!((b.coeff(k) - want).abs() <= 1e-12 * want.abs().max(1e-300), "k={k}");
        }
    }
}
