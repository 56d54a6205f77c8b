use iselab::family::ALL_FAMILIES;
use iselab::genfun::{exact_moment, float_moment};
use iselab::grand::{c_lambda, d_lambda, grand_number_positional, limit_moment_ise, Kind};
use iselab::numerics::{mean_density_quadrature, mean_density_series, QuadratureConfig};
use iselab::sampler::{label_moment, sample, SeedSpec};
use iselab::{ExtendedPartition, TreeFamily};
use num_traits::Zero;
use proptest::prelude::*;

fn family() -> impl Strategy<Value = TreeFamily> {
    prop::sample::select(ALL_FAMILIES.to_vec())
}

fn small_parts(max_len: usize, max_part: u32) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0..=max_part, 0..=max_len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn partition_display_round_trips(parts in small_parts(5, 9)) {
        let p = ExtendedPartition::new(parts);
        let q: ExtendedPartition = p.to_string().parse().unwrap();
        prop_assert_eq!(p, q);
    }

    #[test]
    fn odd_weight_ise_numbers_vanish(parts in small_parts(4, 4)) {
        let p = ExtendedPartition::new(parts);
        if p.weight() % 2 == 1 {
            prop_assert!(c_lambda(&p).is_zero());
            prop_assert_eq!(limit_moment_ise(&p), 0.0);
        }
    }

    #[test]
    fn grand_numbers_ignore_part_order(mut parts in small_parts(4, 3), seed in any::<u64>()) {
        let sorted = ExtendedPartition::new(parts.clone());
        let k = parts.len().max(1);
        parts.rotate_left(seed as usize % k);
        prop_assert_eq!(grand_number_positional(Kind::Ise, &parts), c_lambda(&sorted));
        prop_assert_eq!(grand_number_positional(Kind::Exc, &parts), d_lambda(&sorted));
    }

    #[test]
    fn sampled_trees_are_valid(f in family(), n in 1usize..300, seed in any::<u64>(), stream in any::<u64>()) {
        let s = SeedSpec::new(seed, stream);
        let t = sample(f, n, s).unwrap();
        prop_assert_eq!(t.check_invariants(), Ok(()));
        prop_assert_eq!(t.node_count() as u64, f.node_count(n as u64));
        let p = t.vertical_profile();
        prop_assert_eq!(p.counts.iter().sum::<u64>(), p.total);
        prop_assert!(*p.counts.first().unwrap() > 0 && *p.counts.last().unwrap() > 0);
        prop_assert!((p.rescaled_integral(f) - 1.0).abs() < 1e-15);
        prop_assert_eq!(&sample(f, n, s).unwrap(), &t);
    }

    #[test]
    fn rescaled_density_integrates_to_one(f in family(), n in 16usize..200, seed in any::<u64>()) {
        // trapezoid on the integer lattice, mapped to x, is exact for the interpolant
        let t = sample(f, n, SeedSpec::new(seed, 0)).unwrap();
        let p = t.vertical_profile();
        let nodes = t.node_count() as f64;
        let s = nodes.powf(0.25) / f.gamma();
        let mut integral = 0.0;
        for j in (p.min() - 1)..=(p.max() + 1) {
            integral += p.rescaled_density(f, j as f64 / s) / s;
        }
        prop_assert!((integral - 1.0).abs() < 1e-12);
    }

    #[test]
    fn label_moment_of_zero_part_is_one(f in family(), n in 1usize..100, seed in any::<u64>()) {
        let t = sample(f, n, SeedSpec::new(seed, 1)).unwrap();
        prop_assert!((label_moment(&t, &"0".parse().unwrap()) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn float_series_matches_exact(f in family(), n in 1usize..40, parts in small_parts(2, 3)) {
        let p = ExtendedPartition::new(parts.into_iter().map(|k| k + 1).collect());
        let exact = exact_moment(f, &p, n).unwrap().normalized;
        let float = float_moment(f, &p, n).unwrap();
        prop_assert!((exact - float).abs() <= 1e-9 * exact.abs().max(1e-3), "{} vs {}", exact, float);
    }

    #[test]
    fn mean_density_forms_agree(x in -4.0f64..4.0) {
        let q = mean_density_quadrature(x, &QuadratureConfig::default()).unwrap();
        let s = mean_density_series(x).unwrap();
        prop_assert!((q - s).abs() < 1e-9, "{} vs {}", q, s);
        prop_assert!(q > 0.0);
        let mirrored = mean_density_quadrature(-x, &QuadratureConfig::default()).unwrap();
        prop_assert!((q - mirrored).abs() < 1e-14);
    }
}
