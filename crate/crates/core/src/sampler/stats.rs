//! Monte Carlo estimators over independent samples.

use std::collections::HashMap;

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::combinat::catalan;
use crate::error::{Error, Result};
use crate::family::TreeFamily;
use crate::partition::ExtendedPartition;
use crate::tree::LabelledTree;

use super::{map_streams, sample, sample_dyck, SeedSpec};

/// Sample mean with its standard error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MeanEstimate {
    pub mean: f64,
    pub se: f64,
    pub count: usize,
}

impl MeanEstimate {
    pub fn from_values(values: &[f64]) -> Result<Self> {
        let n = values.len();
        if n < 2 {
            return Err(Error::TooFewSamples { needed: 2, got: n });
        }
        let mean = values.iter().sum::<f64>() / n as f64;
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
        Ok(MeanEstimate { mean, se: (var / n as f64).sqrt(), count: n })
    }

    /// `|mean - target| ≤ sigmas · se + slack · |target|`.
    pub fn agrees_with(&self, target: f64, sigmas: f64, slack: f64) -> bool {
        (self.mean - target).abs() <= sigmas * self.se + slack * target.abs()
    }
}

/// `m_λ = Π_i N^{-1} Σ_v (γ N^{-1/4} ℓ(v))^{λ_i}` for one tree.
pub fn label_moment(tree: &LabelledTree, lambda: &ExtendedPartition) -> f64 {
    let nodes = tree.node_count() as f64;
    let scale = tree.family().gamma() * nodes.powf(-0.25);
    lambda
        .parts()
        .iter()
        .map(|&k| {
            let s: f64 = tree.labels().iter().map(|&l| (scale * l as f64).powi(k as i32)).sum();
            s / nodes
        })
        .product()
}

/// `m_λ = Π_i (2n)^{-1} Σ_{i=1}^{2n} ((2n)^{-1/2} w(i))^{λ_i}` for a Dyck
/// word of length `2n`.
pub fn dyck_moment(steps: &[bool], lambda: &ExtendedPartition) -> f64 {
    let len = steps.len() as f64;
    let scale = len.sqrt().recip();
    let mut heights = Vec::with_capacity(steps.len());
    let mut h = 0i64;
    for &up in steps {
        h += if up { 1 } else { -1 };
        heights.push(scale * h as f64);
    }
    lambda.parts().iter().map(|&k| heights.iter().map(|w| w.powi(k as i32)).sum::<f64>() / len).product()
}

/// Mean and standard error of `m_λ` over `samples` trees of size `n`.
pub fn empirical_moment(
    family: TreeFamily,
    n: usize,
    lambda: &ExtendedPartition,
    samples: usize,
    master_seed: u64,
) -> Result<MeanEstimate> {
    let values: Result<Vec<f64>> =
        map_streams(master_seed, samples, |s| Ok(label_moment(&sample(family, n, s)?, lambda))).into_iter().collect();
    MeanEstimate::from_values(&values?)
}

/// Mean and standard error of the Dyck-path moment `m_λ` over uniform Dyck
/// words of length `2n`.
pub fn dyck_empirical_moment(
    n: usize,
    lambda: &ExtendedPartition,
    samples: usize,
    master_seed: u64,
) -> Result<MeanEstimate> {
    if n == 0 {
        return Err(Error::OutOfRange("Dyck paths need at least one step".into()));
    }
    let values = map_streams(master_seed, samples, |s: SeedSpec| dyck_moment(&sample_dyck(n, &mut s.rng()), lambda));
    MeanEstimate::from_values(&values)
}

/// One grid point of the averaged rescaled profile density.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GridPoint {
    pub x: f64,
    pub mean_g: f64,
    pub se_g: f64,
}

/// `E g_n(x)` with standard errors on the grid `xs`.
pub fn profile_grid(
    family: TreeFamily,
    n: usize,
    samples: usize,
    master_seed: u64,
    xs: &[f64],
) -> Result<Vec<GridPoint>> {
    let rows: Result<Vec<Vec<f64>>> = map_streams(master_seed, samples, |s| {
        let p = sample(family, n, s)?.vertical_profile();
        Ok(xs.iter().map(|&x| p.rescaled_density(family, x)).collect())
    })
    .into_iter()
    .collect();
    let rows = rows?;
    xs.iter()
        .enumerate()
        .map(|(i, &x)| {
            let column: Vec<f64> = rows.iter().map(|r| r[i]).collect();
            let est = MeanEstimate::from_values(&column)?;
            Ok(GridPoint { x, mean_g: est.mean, se_g: est.se })
        })
        .collect()
}

/// Pearson test of uniformity over tree shapes.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChiSquare {
    pub classes: usize,
    pub observed_classes: usize,
    pub statistic: f64,
    pub df: usize,
    /// `(X² - df) / √(2 df)`
    pub z: f64,
    pub pass: bool,
}

/// Chi-square test that shapes of size `n` come out uniformly; passes when
/// every shape is seen and `z < sigmas`.
pub fn chi_square_uniformity(
    family: TreeFamily,
    n: usize,
    samples: usize,
    master_seed: u64,
    sigmas: f64,
) -> Result<ChiSquare> {
    let classes = catalan(n as u64).to_usize().ok_or_else(|| Error::OutOfRange(format!("too many shapes at n={n}")))?;
    if classes < 2 {
        return Err(Error::OutOfRange(format!("a single shape at n={n}")));
    }
    let keys: Result<Vec<String>> =
        map_streams(master_seed, samples, |s| Ok(sample(family, n, s)?.shape_key())).into_iter().collect();
    let mut freq: HashMap<String, usize> = HashMap::new();
    for k in keys? {
        *freq.entry(k).or_insert(0) += 1;
    }
    let expected = samples as f64 / classes as f64;
    let mut statistic: f64 = freq.values().map(|&o| (o as f64 - expected).powi(2) / expected).sum();
    statistic += (classes.saturating_sub(freq.len())) as f64 * expected;
    let df = classes - 1;
    let z = (statistic - df as f64) / (2.0 * df as f64).sqrt();
    Ok(ChiSquare { classes, observed_classes: freq.len(), statistic, df, z, pass: freq.len() == classes && z < sigmas })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(s: &str) -> ExtendedPartition {
        s.parse().unwrap()
    }

    #[test]
    fn estimate_basics() {
        assert!(MeanEstimate::from_values(&[1.0]).is_err());
        let e = MeanEstimate::from_values(&[1.0, 3.0]).unwrap();
        assert_eq!(e.mean, 2.0);
        assert!((e.se - 1.0).abs() < 1e-15);
        assert!(e.agrees_with(2.5, 1.0, 0.0));
    }

    #[test]
    fn small_shape_uniformity() {
        let c = chi_square_uniformity(TreeFamily::Binary, 3, 20_000, 5, 4.0).unwrap();
        assert_eq!(c.classes, 5);
        assert!(c.pass, "{c:?}");
        let c = chi_square_uniformity(TreeFamily::PlanePM1, 2, 20_000, 5, 4.0).unwrap();
        assert_eq!(c.classes, 2);
        assert!(c.pass, "{c:?}");
    }

    #[test]
    fn first_moment_is_centred() {
        for family in crate::family::ALL_FAMILIES {
            let e = empirical_moment(family, 200, &part("1"), 400, 11).unwrap();
            assert!(e.agrees_with(0.0, 4.0, 0.0), "{family}: {e:?}");
        }
    }

    #[test]
    fn two_node_density_at_zero() {
        let t = crate::sampler::sample_binary(2, SeedSpec::new(0, 0)).unwrap();
        let g = t.vertical_profile().rescaled_density(TreeFamily::Binary, 0.0);
        assert!((g - 2f64.powf(-0.5)).abs() < 1e-15);
    }

    #[test]
    fn dyck_moment_of_a_tent() {
        // up, up, down, down: heights 1, 2, 1, 0 over 2n = 4
        let m = dyck_moment(&[true, true, false, false], &part("1"));
        assert!((m - 4.0 / (4.0 * 2.0)).abs() < 1e-15);
    }
}
