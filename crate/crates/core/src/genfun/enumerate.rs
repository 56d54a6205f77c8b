//! Exhaustive enumeration of small labelled trees: the ground truth that
//! the series computations are checked against.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::family::TreeFamily;
use crate::partition::ExtendedPartition;
use crate::rational::Rational;
use crate::tree::LabelledTree;

use super::engine::Statistic;

/// Default largest size handed to [`enumerate_trees`].
pub const DEFAULT_SIZE_CAP: usize = 12;

type Code = Vec<(bool, bool)>;

/// All binary shapes with `n` nodes as preorder `(has_left, has_right)` codes.
pub fn binary_codes(n: usize) -> Vec<Code> {
    let mut table: Vec<Vec<Code>> = vec![vec![Vec::new()]];
    for m in 1..=n {
        let mut out = Vec::new();
        for k in 0..m {
            for l in &table[k] {
                for r in &table[m - 1 - k] {
                    let mut c = Vec::with_capacity(m);
                    c.push((k > 0, m - 1 - k > 0));
                    c.extend_from_slice(l);
                    c.extend_from_slice(r);
                    out.push(c);
                }
            }
        }
        table.push(out);
    }
    table.swap_remove(n)
}

/// All complete binary shapes with `n` internal nodes (`2n + 1` nodes).
pub fn complete_codes(n: usize) -> Vec<Code> {
    let mut table: Vec<Vec<Code>> = vec![vec![vec![(false, false)]]];
    for m in 1..=n {
        let mut out = Vec::new();
        for k in 0..m {
            for l in &table[k] {
                for r in &table[m - 1 - k] {
                    let mut c = Vec::with_capacity(2 * m + 1);
                    c.push((true, true));
                    c.extend_from_slice(l);
                    c.extend_from_slice(r);
                    out.push(c);
                }
            }
        }
        table.push(out);
    }
    table.swap_remove(n)
}

/// All Dyck words with `n` up steps.
pub fn dyck_words(n: usize) -> Vec<Vec<bool>> {
    fn rec(ups: usize, downs: usize, cur: &mut Vec<bool>, out: &mut Vec<Vec<bool>>) {
        if ups == 0 && downs == 0 {
            out.push(cur.clone());
            return;
        }
        if ups > 0 {
            cur.push(true);
            rec(ups - 1, downs + 1, cur, out);
            cur.pop();
        }
        if downs > 0 {
            cur.push(false);
            rec(ups, downs - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, 0, &mut Vec::with_capacity(2 * n), &mut out);
    out
}

/// Lazily yields every increment assignment of a plane shape.
struct Labellings {
    family: TreeFamily,
    steps: Arc<Vec<bool>>,
    digits: Vec<usize>,
    done: bool,
}

impl Iterator for Labellings {
    type Item = LabelledTree;

    fn next(&mut self) -> Option<LabelledTree> {
        if self.done {
            return None;
        }
        let inc = self.family.increments();
        let increments: Vec<i64> = self.digits.iter().map(|&d| inc[d]).collect();
        let tree = LabelledTree::from_dyck(self.family, &self.steps, &increments);
        // odometer
        let mut i = 0;
        loop {
            if i == self.digits.len() {
                self.done = true;
                break;
            }
            self.digits[i] += 1;
            if self.digits[i] < inc.len() {
                break;
            }
            self.digits[i] = 0;
            i += 1;
        }
        Some(tree)
    }
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::SizeCapExceeded { requested: n, cap });
    }
    Ok(())
}

/// Every labelled object of size `n`, each exactly once.
pub fn enumerate_trees(family: TreeFamily, n: usize, cap: usize) -> Result<Box<dyn Iterator<Item = LabelledTree>>> {
    check_cap(n, cap)?;
    Ok(match family {
        TreeFamily::Binary => {
            if n == 0 {
                return Err(Error::OutOfRange("binary trees have at least one node".into()));
            }
            Box::new(binary_codes(n).into_iter().map(move |c| LabelledTree::from_binary_code(family, &c)))
        }
        TreeFamily::CompleteBinary => {
            Box::new(complete_codes(n).into_iter().map(move |c| LabelledTree::from_binary_code(family, &c)))
        }
        TreeFamily::PlanePM1 | TreeFamily::Plane0PM1 => {
            Box::new(dyck_words(n).into_iter().flat_map(move |w| Labellings {
                family,
                steps: Arc::new(w),
                digits: vec![0; n],
                done: false,
            }))
        }
    })
}

/// Brute-force `E Π_i Σ_v stat(v)^{λ_i}` for each partition, over all
/// objects of size `n` (parallel over shapes).
pub fn enumerate_moments(
    family: TreeFamily,
    n: usize,
    partitions: &[ExtendedPartition],
    stat: Statistic,
    cap: usize,
) -> Result<Vec<Rational>> {
    check_cap(n, cap)?;
    let max_part = partitions.iter().flat_map(|p| p.parts().iter().copied()).max().unwrap_or(0);
    let accumulate = |acc: &mut Vec<i128>, tree: &LabelledTree| {
        let sums: Vec<i128> = (0..=max_part)
            .map(|k| match stat {
                Statistic::Label => tree.label_power_sum(k),
                Statistic::Depth => tree.depth_power_sum(k),
            })
            .collect();
        for (slot, p) in acc.iter_mut().zip(partitions) {
            *slot += p.parts().iter().map(|&k| sums[k as usize]).product::<i128>();
        }
    };
    let zero = || vec![0i128; partitions.len()];
    let merge = |mut a: Vec<i128>, b: Vec<i128>| {
        a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
        a
    };
    let (totals, count): (Vec<i128>, u64) = match family {
        TreeFamily::PlanePM1 | TreeFamily::Plane0PM1 => dyck_words(n)
            .into_par_iter()
            .map(|w| {
                let it = Labellings { family, steps: Arc::new(w), digits: vec![0; n], done: false };
                let mut acc = zero();
                let mut c = 0u64;
                for t in it {
                    accumulate(&mut acc, &t);
                    c += 1;
                }
                (acc, c)
            })
            .reduce(|| (zero(), 0), |a, b| (merge(a.0, b.0), a.1 + b.1)),
        _ => {
            let mut acc = zero();
            let mut c = 0u64;
            for t in enumerate_trees(family, n, cap)? {
                accumulate(&mut acc, &t);
                c += 1;
            }
            (acc, c)
        }
    };
    Ok(totals.into_iter().map(|s| Rational::new(s, count as i128)).collect())
}

/// Brute-force profile-correlation polynomial `Σ_T Σ_{v,w} x^{ℓ(v)-ℓ(w)}`
/// as exponent -> count.
pub fn enumerate_correlation(family: TreeFamily, n: usize, cap: usize) -> Result<HashMap<i64, i128>> {
    let mut out: HashMap<i64, i128> = HashMap::new();
    for t in enumerate_trees(family, n, cap)? {
        let p = t.vertical_profile();
        for (i, &a) in p.counts.iter().enumerate() {
            for (j, &b) in p.counts.iter().enumerate() {
                *out.entry(i as i64 - j as i64).or_insert(0) += (a * b) as i128;
            }
        }
    }
    out.retain(|_, v| *v != 0);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_node_binary_trees() {
        let trees: Vec<_> = enumerate_trees(TreeFamily::Binary, 3, DEFAULT_SIZE_CAP).unwrap().collect();
        assert_eq!(trees.len(), 5);
        let mut multisets: Vec<Vec<i64>> = trees
            .iter()
            .map(|t| {
                let mut l = t.labels().to_vec();
                l.sort();
                l
            })
            .collect();
        multisets.sort();
        assert_eq!(multisets, vec![vec![-2, -1, 0], vec![-1, 0, 0], vec![-1, 0, 1], vec![0, 0, 1], vec![0, 1, 2]]);
        for t in &trees {
            t.check_invariants().unwrap();
        }
    }

    #[test]
    fn counts_match_family_counts() {
        for f in crate::family::ALL_FAMILIES {
            for n in 1..=5 {
                let c = enumerate_trees(f, n, DEFAULT_SIZE_CAP).unwrap().count();
                assert_eq!(num_bigint::BigInt::from(c), f.count(n as u64), "{f} n={n}");
            }
        }
        let one: Vec<_> = enumerate_trees(TreeFamily::Binary, 1, DEFAULT_SIZE_CAP).unwrap().collect();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].labels(), &[0]);
        assert_eq!(enumerate_trees(TreeFamily::PlanePM1, 2, DEFAULT_SIZE_CAP).unwrap().count(), 8);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            enumerate_trees(TreeFamily::Binary, 13, DEFAULT_SIZE_CAP).err().unwrap(),
            Error::SizeCapExceeded { requested: 13, cap: 12 }
        ));
        assert!(enumerate_trees(TreeFamily::Binary, 13, 13).is_ok());
    }

    #[test]
    fn moment_oracle_small_values() {
        let l2: ExtendedPartition = "2".parse().unwrap();
        let v = enumerate_moments(TreeFamily::Binary, 3, &[l2], Statistic::Label, 12).unwrap();
        assert_eq!(v[0], Rational::new(14, 5));
    }
}
