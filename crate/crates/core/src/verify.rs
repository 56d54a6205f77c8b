//! The acceptance checks, one function per criterion, shared by the
//! `verify` subcommand and the acceptance test target.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;

use crate::error::Result;
use crate::family::{TreeFamily, ALL_FAMILIES};
use crate::genfun::{enumerate_moments, exact_moment, float_moment, ProfileCorrelation, Statistic};
use crate::grand::{a_k, a_kl, abs_moment_ise, c_lambda, density0_moment, limit_moment_exc, limit_moment_ise};
use crate::numerics::{
    density_mgf, mean_density, mean_density_quadrature, mean_density_series, mgf_l, richardson_derivative,
    special::gamma, QuadratureConfig,
};
use crate::partition::ExtendedPartition;
use crate::sampler::stats::dyck_empirical_moment;
use crate::sampler::{chi_square_uniformity, profile_grid};

/// Master seed of the Monte Carlo criteria.
pub const DEFAULT_SEED: u64 = 2026;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    /// Exact-oracle, recurrence and deterministic numeric checks.
    Quick,
    /// Adds the Monte Carlo and contour-integral checks.
    Full,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub id: u32,
    pub name: &'static str,
    pub pass: bool,
    pub details: String,
    pub seconds: f64,
}

impl CriterionReport {
    /// One line: `[PASS] 3 name: details (1.2 s)`.
    pub fn line(&self) -> String {
        let tag = if self.pass { "PASS" } else { "FAIL" };
        format!("[{tag}] {:>2} {}: {} ({:.1} s)", self.id, self.name, self.details, self.seconds)
    }
}

fn run(id: u32, name: &'static str, check: impl FnOnce(&mut String) -> Result<bool>) -> CriterionReport {
    let start = Instant::now();
    let mut details = String::new();
    let pass = match check(&mut details) {
        Ok(p) => p,
        Err(e) => {
            let _ = write!(details, "error: {e}");
            false
        }
    };
    CriterionReport {
        id,
        name,
        pass,
        details: details.trim_end_matches("; ").to_string(),
        seconds: start.elapsed().as_secs_f64(),
    }
}

fn part(s: &str) -> ExtendedPartition {
    s.parse().expect("static partition")
}

/// Criterion 1: Series moments equal brute-force enumeration for every family,
/// `n ≤ 8`, `|λ| ≤ 6`, length `≤ 3`.
pub fn exact_oracle() -> CriterionReport {
    run(1, "exact-oracle equivalence", |d| {
        let parts = ExtendedPartition::all_positive(6, 3);
        let mut checked = 0usize;
        let mut mismatches = Vec::new();
        for family in ALL_FAMILIES {
            let start = if family == TreeFamily::Binary { 1 } else { 0 };
            for n in start..=8 {
                let brute = enumerate_moments(family, n, &parts, Statistic::Label, 8)?;
                for (p, b) in parts.iter().zip(&brute) {
                    checked += 1;
                    if &exact_moment(family, p, n)?.rational != b {
                        mismatches.push(format!("{family} n={n} λ={p}"));
                    }
                }
            }
        }
        let _ = write!(d, "{checked} (family, n, λ) triples, {} mismatches", mismatches.len());
        if let Some(first) = mismatches.first() {
            let _ = write!(d, ", first {first}");
        }
        Ok(mismatches.is_empty())
    })
}

/// Criterion 2: `c_(2k) = k(2k-1) c_(2k-2)` for `k ≤ 10`; `a_k = c_{1^{2k}}` and
/// `a_{k,ℓ} = c_{1^{2k} 2^ℓ}` for `k + ℓ ≤ 8`.
pub fn recurrence_closure() -> CriterionReport {
    run(2, "grand-moment recurrence closure", |d| {
        let mut ok = true;
        for k in 1..=10u32 {
            let lhs = c_lambda(&ExtendedPartition::new(vec![2 * k]));
            let rhs =
                c_lambda(&ExtendedPartition::new(vec![2 * k - 2])) * crate::Rational::from((k * (2 * k - 1)) as i64);
            ok &= lhs == rhs;
        }
        let _ = write!(d, "c_(2k) chain k≤10 {}; ", if ok { "exact" } else { "broken" });
        let mut pairs = 0;
        let mut bad = 0;
        for k in 0..=8usize {
            for l in 0..=8 - k {
                if k + l == 0 {
                    continue;
                }
                pairs += 1;
                let c = c_lambda(&ExtendedPartition::ones_twos(2 * k, l));
                if a_kl(k, l) != c || (l == 0 && a_k(k) != c) {
                    bad += 1;
                }
            }
        }
        let _ = write!(d, "{pairs} (k, ℓ) pairs, {bad} mismatches");
        Ok(ok && bad == 0)
    })
}

/// Criterion 3: Floating series moments at `n = 64, 256, 1024` approach the limit
/// monotonically, with final relative gap below 0.15.
pub fn finite_n_convergence() -> CriterionReport {
    run(3, "finite-n convergence to limit moments", |d| {
        let mut ok = true;
        for lambda in ["2", "1,1", "4", "2,2"].map(part) {
            let limit = limit_moment_ise(&lambda);
            let gaps: Vec<f64> = [64, 256, 1024]
                .iter()
                .map(|&n| float_moment(TreeFamily::Binary, &lambda, n).map(|m| (m / limit - 1.0).abs()))
                .collect::<Result<_>>()?;
            let good = gaps.windows(2).all(|w| w[1] < w[0]) && gaps[2] < 0.15;
            ok &= good;
            let _ = write!(d, "λ={lambda} gaps {:.4}/{:.4}/{:.4}; ", gaps[0], gaps[1], gaps[2]);
        }
        Ok(ok)
    })
}

/// Criterion 4: Excursion limit `√(π/8)` and its Dyck-path Monte Carlo estimate.
pub fn excursion_cross_check(seed: u64) -> CriterionReport {
    run(4, "excursion cross-check", |d| {
        let target = (PI / 8.0).sqrt();
        let limit = limit_moment_exc(&part("1"));
        let est = dyck_empirical_moment(2048, &part("1"), 5000, seed)?;
        let _ = write!(d, "limit {limit:.15} (err {:.1e}); MC {:.5} ± {:.5}", (limit - target).abs(), est.mean, est.se);
        Ok((limit - target).abs() <= 1e-12 && est.agrees_with(target, 3.0, 0.10))
    })
}

/// Criterion 5: Quadrature and series forms of the mean density agree, and both hit
/// the closed form at 0.
pub fn mean_density_double_derivation() -> CriterionReport {
    run(5, "mean-density double derivation", |d| {
        let cfg = QuadratureConfig::default();
        let closed = 2f64.powf(-0.75) * gamma(0.75)? / PI.sqrt();
        let mut worst: f64 = 0.0;
        for x in [0.0, 0.25, 0.5, 1.0, 2.0] {
            worst = worst.max((mean_density_quadrature(x, &cfg)? - mean_density_series(x)?).abs());
        }
        let at0 = (mean_density_quadrature(0.0, &cfg)? - closed).abs().max((mean_density_series(0.0)? - closed).abs());
        let _ = write!(d, "max |quad - series| {worst:.2e}; at 0 err {at0:.2e} vs {closed:.10}");
        Ok(worst <= 1e-8 && at0 <= 1e-10)
    })
}

/// Criterion 6: Derivatives at `a = 0` of `a -> L(0, 2^{-1/4} a)` reproduce
/// `E f_ISE(0)^k`, `k = 1, 2, 3`, and `L(x, 0) = 1`.
pub fn mgf_consistency() -> CriterionReport {
    run(6, "MGF consistency", |d| {
        let cfg = QuadratureConfig::default();
        let mut ok = true;
        for k in 1..=3u32 {
            let (est, _) = richardson_derivative(|a| density_mgf(0.0, a, &cfg), k, 0.4, 5)?;
            let want = density0_moment(k as f64)?;
            let rel = (est / want - 1.0).abs();
            ok &= rel <= 1e-5;
            let _ = write!(d, "k={k} rel err {rel:.1e}; ");
        }
        let mut worst: f64 = 0.0;
        for x in [0.0, 0.5, 1.0] {
            worst = worst.max((mgf_l(x, 0.0, &cfg)? - 1.0).abs());
        }
        let _ = write!(d, "max |L(x,0) - 1| {worst:.1e}");
        Ok(ok && worst <= 1e-10)
    })
}

/// Criterion 7: `E ∫|x|^{2k} dμ_ISE` from the Gamma-function formula equals the
/// grand-moment limit `E m_(2k)`, `k = 1..4`.
pub fn duplication_identity() -> CriterionReport {
    run(7, "duplication-formula identity", |d| {
        let mut worst: f64 = 0.0;
        for k in 1..=4u32 {
            let a = abs_moment_ise(2.0 * k as f64)?;
            let b = limit_moment_ise(&ExtendedPartition::new(vec![2 * k]));
            worst = worst.max((a - b).abs());
        }
        let _ = write!(d, "max difference {worst:.1e}");
        Ok(worst <= 1e-12)
    })
}

/// Criterion 8: Mean rescaled profile of binary trees with 65536 nodes against the
/// mean ISE density at `x = 0, 0.5, 1`.
pub fn local_limit_mc(seed: u64) -> CriterionReport {
    run(8, "local limit law Monte Carlo", |d| {
        let xs = [0.0, 0.5, 1.0];
        let grid = profile_grid(TreeFamily::Binary, 65536, 500, seed, &xs)?;
        let mut ok = true;
        for g in &grid {
            let want = mean_density(g.x)?;
            ok &= (g.mean_g - want).abs() <= 3.0 * g.se_g + 0.05 * want;
            let _ = write!(d, "x={}: {:.4} ± {:.4} vs {want:.4}; ", g.x, g.mean_g, g.se_g);
        }
        Ok(ok)
    })
}

/// Criterion 9: Grid maxima `M_n` of the exact ratio `(1 + N u⁴) E|X̂_n(u)/N|²` stay
/// within `1.5 M_10` for `n = 20, 40, 60`.
pub fn fourier_boundedness() -> CriterionReport {
    run(9, "Fourier second-moment boundedness", |d| {
        let pc = ProfileCorrelation::new(TreeFamily::Binary, 60);
        let grid: Vec<f64> = (0..200).map(|j| PI * j as f64 / 199.0).collect();
        let mut maxima = Vec::new();
        for n in [10, 20, 40, 60] {
            let mut m: f64 = 0.0;
            for &u in &grid {
                m = m.max(pc.lemma_l3_ratio(n, u)?);
            }
            maxima.push(m);
            let _ = write!(d, "M_{n} {m:.4}; ");
        }
        Ok(maxima.iter().all(|&m| m.is_finite() && m <= 1.5 * maxima[0]))
    })
}

/// Criterion 10: Shape frequencies of sampled trees are uniform (binary `n = 4`,
/// plane `n = 3`).
pub fn sampler_uniformity(seed: u64) -> CriterionReport {
    run(10, "sampler uniformity", |d| {
        let mut ok = true;
        let cases = [(TreeFamily::Binary, 4), (TreeFamily::PlanePM1, 3), (TreeFamily::Plane0PM1, 3)];
        for (i, (family, n)) in cases.into_iter().enumerate() {
            let c = chi_square_uniformity(family, n, 100_000, seed.wrapping_add(i as u64), 4.0)?;
            ok &= c.pass;
            let _ = write!(d, "{family} n={n}: {} classes, z={:.2}; ", c.classes, c.z);
        }
        Ok(ok)
    })
}

/// Criteria run at `level`, in order.
pub fn run_level(level: Level, seed: u64) -> Vec<CriterionReport> {
    let mut out = vec![exact_oracle(), recurrence_closure(), finite_n_convergence()];
    if level == Level::Full {
        out.push(excursion_cross_check(seed));
    }
    out.push(mean_density_double_derivation());
    if level == Level::Full {
        out.push(mgf_consistency());
    }
    out.push(duplication_identity());
    if level == Level::Full {
        out.push(local_limit_mc(seed));
    }
    out.push(fourier_boundedness());
    if level == Level::Full {
        out.push(sampler_uniformity(seed));
    }
    out
}
