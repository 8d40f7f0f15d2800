//! Consistency between the exact, bounding and sampling parts of the crate.

use accessperc_core::analytics::minimal_path_expectation;
use accessperc_core::bounds::eval_bounds;
use accessperc_core::enumeration::{count_saw, enumerate_mset, exact_expected_theta};
use accessperc_core::hypercube::{endpoint_valid, is_self_avoiding};
use accessperc_core::montecarlo::{estimate_sequential, run_trial, TrialSpec};
use accessperc_core::{EndpointSpec, PlacementMode, Seed, StartFitness};
use proptest::prelude::*;

/// Sample mean of Θ agrees with the exact expectation from path counts.
#[test]
fn sampled_theta_matches_exact_expectation() {
    for (l, h) in [(2u32, 2u32), (3, 3), (3, 2), (4, 4), (4, 1)] {
        for x in [0.0, 0.3, 0.6] {
            let mode = if h == l {
                PlacementMode::OppositeCorner
            } else {
                PlacementMode::FixedHamming(h)
            };
            let spec = TrialSpec::new(l, mode, StartFitness::Fixed(x));
            let s = estimate_sequential(&spec, 40_000, u64::from(l * 10 + h)).unwrap();
            let exact = exact_expected_theta(l, h, x).unwrap();
            let dev = (s.mean_theta - exact).abs();
            let ok = if s.theta_std_err > 0.0 {
                dev <= 4.0 * s.theta_std_err
            } else {
                dev <= 1e-12 * exact.max(1.0)
            };
            assert!(ok, "L={l} H={h} x={x}: {} vs {exact}", s.mean_theta);
            let b = eval_bounds(l, h, x).unwrap();
            assert!(b.lower <= exact * (1.0 + 1e-12) && exact <= b.upper * (1.0 + 1e-12));
        }
    }
}

#[test]
fn sampled_direct_paths_match_formula() {
    let spec = TrialSpec::new(6, PlacementMode::OppositeCorner, StartFitness::Fixed(0.2)).with_direct(true);
    let s = estimate_sequential(&spec, 40_000, 3).unwrap();
    let want = minimal_path_expectation(6, 0.2).unwrap();
    let z = (s.mean_theta_direct.unwrap() - want) / s.theta_direct_std_err.unwrap();
    assert!(z.abs() <= 4.0, "z = {z}");
}

#[test]
fn mset_paths_are_valid_and_bounded_by_exact_counts() {
    for l in 1..=4 {
        for h in 1..=l {
            let spec = EndpointSpec::new(l, h).unwrap();
            let m = enumerate_mset(l, h).unwrap();
            for path in m.paths.as_deref().unwrap_or_default() {
                assert!(is_self_avoiding(path));
                assert!(endpoint_valid(path, spec).unwrap());
            }
            let a = count_saw(l, h, None).unwrap();
            for (p, c) in m.counts.counts.iter().enumerate() {
                assert!(*c <= a.get(p), "L={l} H={h} p={p}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn direct_paths_never_exceed_all_paths(dim in 1u32..=10, index in any::<u64>(), x in 0.0f64..1.0) {
        let spec = TrialSpec::new(dim, PlacementMode::OppositeCorner, StartFitness::Fixed(x)).with_direct(true);
        let o = run_trial(&spec, Seed::new(99, index)).unwrap();
        prop_assert!(o.theta_direct.unwrap() <= o.theta);
        prop_assert_eq!(o.accessible, o.theta >= 1);
        prop_assert_eq!(o.hamming, dim);
    }

    #[test]
    fn start_at_one_is_never_accessible(dim in 2u32..=10, index in any::<u64>(), uniform in any::<bool>()) {
        let mode = if uniform { PlacementMode::UniformRandom } else { PlacementMode::OppositeCorner };
        let o = run_trial(&TrialSpec::new(dim, mode, StartFitness::Fixed(1.0)), Seed::new(5, index)).unwrap();
        prop_assert!(!o.accessible);
    }

    #[test]
    fn neighbour_target_is_always_accessible(dim in 1u32..=10, index in any::<u64>(), x in 0.0f64..1.0) {
        let spec = TrialSpec::new(dim, PlacementMode::FixedHamming(1), StartFitness::Fixed(x));
        let o = run_trial(&spec, Seed::new(6, index)).unwrap();
        prop_assert!(o.accessible);
    }
}
