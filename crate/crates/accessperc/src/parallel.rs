//! Multi-threaded drivers over the core engines.
//!
//! Work is split into pieces fixed by the problem alone (trial chunks,
//! search prefixes), and the per-piece results are integer sums. The
//! output therefore never depends on the number of workers.

use std::sync::atomic::{AtomicU64, Ordering};

use accessperc_core::analytics::critical_x;
use accessperc_core::enumeration::{CanonicalSearch, CountTable, LeafTally, NodeMeter};
use accessperc_core::montecarlo::{
    tally_range, tally_range_grid, validate_grid, SimulationSummary, Tally, TrialScratch, TrialSpec,
};
use accessperc_core::{EndpointSpec, Error, PlacementMode, Result, StartFitness};
use rayon::prelude::*;

/// Trials per work item.
pub const TRIAL_CHUNK: u64 = 64;

/// Runs `f` on a pool of `workers` threads (`0` means one per core).
pub fn with_pool<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> T {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("thread pool construction");
    pool.install(f)
}

fn chunks(n_trials: u64) -> Vec<std::ops::Range<u64>> {
    (0..n_trials.div_ceil(TRIAL_CHUNK))
        .map(|c| c * TRIAL_CHUNK..((c + 1) * TRIAL_CHUNK).min(n_trials))
        .collect()
}

fn check_trials(n_trials: u64) -> Result<()> {
    if n_trials == 0 {
        return Err(Error::InvalidArgument("n_trials must be at least 1"));
    }
    Ok(())
}

/// Monte Carlo estimate over trials `0..n_trials` with seeds `(root, i)`.
pub fn estimate(spec: &TrialSpec, n_trials: u64, root_seed: u64, workers: usize) -> Result<SimulationSummary> {
    spec.validate()?;
    check_trials(n_trials)?;
    let tally = with_pool(workers, || {
        chunks(n_trials)
            .into_par_iter()
            .map_init(TrialScratch::new, |scratch, r| tally_range(spec, root_seed, r, scratch))
            .reduce(Tally::default, |mut a, b| {
                a.merge(&b);
                a
            })
    });
    Ok(SimulationSummary::from_tally(spec, &tally, root_seed))
}

/// One summary per grid point; every grid point sees the same landscapes.
pub fn estimate_grid(
    spec: &TrialSpec,
    grid: &[f64],
    n_trials: u64,
    root_seed: u64,
    workers: usize,
) -> Result<Vec<SimulationSummary>> {
    validate_grid(spec, grid)?;
    check_trials(n_trials)?;
    let tallies = with_pool(workers, || {
        chunks(n_trials)
            .into_par_iter()
            .map_init(TrialScratch::new, |scratch, r| {
                tally_range_grid(spec, root_seed, r, grid, scratch)
            })
            .reduce(
                || vec![Tally::default(); grid.len()],
                |mut a, b| {
                    for (x, y) in a.iter_mut().zip(&b) {
                        x.merge(y);
                    }
                    a
                },
            )
    });
    Ok(grid
        .iter()
        .zip(&tallies)
        .map(|(&x, t)| {
            let s = TrialSpec {
                start: StartFitness::Fixed(x),
                ..*spec
            };
            SimulationSummary::from_tally(&s, t, root_seed)
        })
        .collect())
}

/// A sweep row: the summary plus the critical start fitness `x*_{H/L}`
/// for reference.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub summary: SimulationSummary,
    pub x_star_ref: f64,
}

fn sweep_cell(
    dim: u32,
    mode: PlacementMode,
    grid: &[f64],
    n_trials: u64,
    root_seed: u64,
    workers: usize,
    direct: bool,
) -> Result<Vec<SweepRow>> {
    let spec = TrialSpec::new(dim, mode, StartFitness::Fixed(0.0)).with_direct(direct);
    let h = spec.hamming().unwrap_or(dim);
    let x_star_ref = critical_x(f64::from(h) / f64::from(dim))?.x_star;
    Ok(estimate_grid(&spec, grid, n_trials, root_seed, workers)?
        .into_iter()
        .map(|summary| SweepRow { summary, x_star_ref })
        .collect())
}

/// Opposite-corner placement for every `L` in `dims` over `grid`. All cells
/// share `root_seed`.
pub fn figure1_sweep(
    dims: &[u32],
    grid: &[f64],
    n_trials: u64,
    root_seed: u64,
    workers: usize,
    direct: bool,
) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::new();
    for &dim in dims {
        rows.extend(sweep_cell(
            dim,
            PlacementMode::OppositeCorner,
            grid,
            n_trials,
            root_seed,
            workers,
            direct,
        )?);
    }
    Ok(rows)
}

/// Fixed-Hamming placement at one `L` for every `H` in `hammings`.
pub fn hamming_conditional_sweep(
    dim: u32,
    hammings: &[u32],
    grid: &[f64],
    n_trials: u64,
    root_seed: u64,
    workers: usize,
    direct: bool,
) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::new();
    for &h in hammings {
        if h == 0 {
            return Err(Error::ZeroHamming);
        }
        rows.extend(sweep_cell(
            dim,
            PlacementMode::FixedHamming(h),
            grid,
            n_trials,
            root_seed,
            workers,
            direct,
        )?);
    }
    Ok(rows)
}

/// Node meter shared by all workers of one search.
struct SharedMeter<'a> {
    used: &'a AtomicU64,
    limit: Option<u64>,
}

impl NodeMeter for SharedMeter<'_> {
    fn charge(&mut self, nodes: u64) -> Result<()> {
        let total = self.used.fetch_add(nodes, Ordering::Relaxed) + nodes;
        match self.limit {
            Some(budget) if total > budget => Err(Error::BudgetExceeded { budget }),
            _ => Ok(()),
        }
    }
}

/// Number of prefixes a search is split into (at least), fixed so that the
/// node total charged against a budget is the same for every worker count.
const SPLIT_TARGET: usize = 256;

/// `a_{L,H,p}` with the search tree split across workers. A budget bounds
/// the total number of expanded nodes over all workers; the split does not
/// depend on `workers`, so neither does whether the budget is exceeded.
pub fn count_saw(
    dim: u32,
    hamming: u32,
    max_p: Option<u32>,
    budget: Option<u64>,
    workers: usize,
) -> Result<CountTable> {
    let search = CanonicalSearch::new(EndpointSpec::new(dim, hamming)?, max_p)?;
    let used = AtomicU64::new(0);
    let max_len = hamming + 2 * search.max_p();
    let mut depth = 1;
    let mut split = search.split(depth);
    while split.prefixes.len() < SPLIT_TARGET && depth < max_len {
        depth += 1;
        split = search.split(depth);
    }
    let deep = with_pool(workers, || {
        split
            .prefixes
            .par_iter()
            .map(|prefix| search.run(prefix, &mut SharedMeter { used: &used, limit: budget }))
            .try_reduce_with(|mut a: LeafTally, b| {
                a.merge(&b);
                Ok(a)
            })
    });
    let mut tally = split.shallow;
    if let Some(deep) = deep {
        tally.merge(&deep?);
    }
    Ok(search.finish(&tally))
}
