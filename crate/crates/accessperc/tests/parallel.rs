use accessperc::parallel::{self, count_saw, estimate, estimate_grid};
use accessperc_core::enumeration;
use accessperc_core::montecarlo::{estimate_sequential, TrialSpec};
use accessperc_core::{Error, PlacementMode, StartFitness};
use proptest::prelude::*;

#[test]
fn split_search_matches_single_thread() {
    for l in 1..=4 {
        for h in 1..=l {
            let want = enumeration::count_saw(l, h, None).unwrap();
            for workers in [1, 2, 3, 8] {
                assert_eq!(count_saw(l, h, None, None, workers).unwrap(), want, "L={l} H={h}");
            }
        }
    }
    for h in [1, 3, 5] {
        let want = enumeration::count_saw(5, h, Some(3)).unwrap();
        assert_eq!(count_saw(5, h, Some(3), None, 4).unwrap(), want);
    }
}

#[test]
fn budget_outcome_ignores_worker_count() {
    for budget in [0u64, 50, 500, 5_000, 50_000, 500_000] {
        let outcomes: Vec<_> = [1, 2, 5, 8]
            .iter()
            .map(|&w| count_saw(4, 4, None, Some(budget), w).map(|t| t.total()))
            .collect();
        assert!(outcomes.windows(2).all(|w| w[0] == w[1]), "budget {budget}: {outcomes:?}");
    }
    assert!(matches!(
        count_saw(5, 5, None, Some(10_000), 4),
        Err(Error::BudgetExceeded { budget: 10_000 })
    ));
    assert!(count_saw(4, 4, None, Some(u64::MAX), 2).is_ok());
}

#[test]
fn estimate_matches_sequential_core() {
    let specs = [
        TrialSpec::new(7, PlacementMode::OppositeCorner, StartFitness::Fixed(0.2)).with_direct(true),
        TrialSpec::new(6, PlacementMode::UniformRandom, StartFitness::Uniform),
        TrialSpec::new(8, PlacementMode::FixedHamming(3), StartFitness::Fixed(0.4)),
    ];
    for spec in specs {
        let want = estimate_sequential(&spec, 1_000, 31).unwrap();
        for workers in [1, 2, 8] {
            assert_eq!(estimate(&spec, 1_000, 31, workers).unwrap(), want);
        }
    }
}

#[test]
fn grid_points_match_pointwise_estimates() {
    let base = TrialSpec::new(8, PlacementMode::OppositeCorner, StartFitness::Fixed(0.0)).with_direct(true);
    let grid = [0.0, 0.1, 0.25, 0.6, 1.0];
    let rows = estimate_grid(&base, &grid, 700, 5, 3).unwrap();
    for (row, &x) in rows.iter().zip(&grid) {
        let spec = TrialSpec {
            start: StartFitness::Fixed(x),
            ..base
        };
        assert_eq!(*row, estimate(&spec, 700, 5, 2).unwrap(), "x={x}");
    }
    assert_eq!(rows[4].n_accessible, 0);
    assert!(estimate_grid(&base, &[], 10, 0, 1).is_err());
    assert!(estimate_grid(&base, &[1.2], 10, 0, 1).is_err());
}

#[test]
fn sweeps_carry_reference_critical_points() {
    let rows = parallel::hamming_conditional_sweep(10, &[5, 10], &[0.2], 200, 1, 2, false).unwrap();
    assert!((rows[0].x_star_ref - 0.278_182_262_410_594_85).abs() < 1e-12);
    assert!((rows[1].x_star_ref - 0.118_626_412_980_457_02).abs() < 1e-12);
    let corner = parallel::figure1_sweep(&[10], &[0.2], 200, 1, 1, false).unwrap();
    assert_eq!(corner[0].summary.p_hat, rows[1].summary.p_hat);
    assert!(parallel::hamming_conditional_sweep(10, &[0], &[0.2], 10, 1, 1, false).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn worker_count_never_changes_a_summary(
        dim in 1u32..=7,
        n in 1u64..300,
        root in any::<u64>(),
        workers in 1usize..=6,
        uniform in any::<bool>(),
        x in 0.0f64..1.0,
    ) {
        let (mode, start) = if uniform {
            (PlacementMode::UniformRandom, StartFitness::Uniform)
        } else {
            (PlacementMode::OppositeCorner, StartFitness::Fixed(x))
        };
        let spec = TrialSpec::new(dim, mode, start).with_direct(!uniform);
        let one = estimate(&spec, n, root, 1).unwrap();
        let many = estimate(&spec, n, root, workers).unwrap();
        // NaN standard errors at n = 1 compare equal through Debug
        prop_assert_eq!(format!("{one:?}"), format!("{many:?}"));
        prop_assert_eq!(one.p_hat, one.n_accessible as f64 / n as f64);
        prop_assert!(one.ci_lo <= one.p_hat && one.p_hat <= one.ci_hi);
    }
}
