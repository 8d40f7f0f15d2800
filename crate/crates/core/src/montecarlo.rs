//! Exact open-path counts on sampled landscapes and their aggregation.
//!
//! `Θ` is computed by a memoized traversal of the fitness-increasing move
//! graph from `σ0`: `count(v) = Σ_{w ~ v, f(w) > f(v)} count(w)` with
//! `count(fittest) = 1`. Strict increase makes the graph acyclic.
//!
//! Tallies hold integer sums only, so merging them is associative and
//! commutative and any partition of the trial range gives the same summary.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use crate::landscape::{self, PlacementMode, Seed, StartFitness, DEFAULT_MAX_LANDSCAPE_DIM};
use crate::{Error, Result};

/// Two-sided 95% normal quantile.
pub const WILSON_Z: f64 = 1.959_963_984_540_054;

/// Everything that defines a trial except its seed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialSpec {
    pub dim: u32,
    pub mode: PlacementMode,
    pub start: StartFitness,
    /// Also count the shortest open paths `Θ̃`.
    pub direct: bool,
    pub max_dim: u32,
}

impl TrialSpec {
    pub fn new(dim: u32, mode: PlacementMode, start: StartFitness) -> Self {
        Self {
            dim,
            mode,
            start,
            direct: false,
            max_dim: DEFAULT_MAX_LANDSCAPE_DIM,
        }
    }

    pub fn with_direct(mut self, direct: bool) -> Self {
        self.direct = direct;
        self
    }

    pub fn with_max_dim(mut self, max_dim: u32) -> Self {
        self.max_dim = max_dim;
        self
    }

    pub fn validate(&self) -> Result<()> {
        landscape::validate(self.dim, self.mode, self.start, self.max_dim)
    }

    /// Hamming distance of the target when fixed by the placement mode.
    pub fn hamming(&self) -> Option<u32> {
        self.mode.hamming(self.dim)
    }
}

/// Result of one trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialOutcome {
    pub accessible: bool,
    /// Saturates at `u64::MAX`.
    pub theta: u64,
    pub saturated: bool,
    pub theta_direct: Option<u64>,
    pub hamming: u32,
}

impl TrialOutcome {
    fn new(theta: u64, theta_direct: Option<u64>, hamming: u32) -> Self {
        Self {
            accessible: theta >= 1,
            theta,
            saturated: theta == u64::MAX,
            theta_direct,
            hamming,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Frame {
    site: u64,
    next_label: u32,
    acc: u64,
}

/// Fitness and path count of one site, kept together for locality.
#[derive(Debug, Clone, Copy, Default)]
struct Site {
    fitness: f64,
    count: u64,
}

/// Buffers reused across trials.
#[derive(Debug, Default)]
pub struct TrialScratch {
    fitness: Vec<f64>,
    sites: Vec<Site>,
    done: Vec<u64>,
    stack: Vec<Frame>,
}

impl TrialScratch {
    pub fn new() -> Self {
        Self::default()
    }

    fn reset(&mut self, dim: u32) {
        let n = 1usize << dim;
        self.sites.clear();
        self.sites
            .extend(self.fitness.iter().map(|&fitness| Site { fitness, count: 0 }));
        self.done.clear();
        self.done.resize(n.div_ceil(64), 0);
        self.stack.clear();
    }

    #[inline]
    fn is_done(&self, v: u64) -> bool {
        self.done[(v >> 6) as usize] >> (v & 63) & 1 == 1
    }

    #[inline]
    fn set_done(&mut self, v: u64, count: u64) {
        self.done[(v >> 6) as usize] |= 1 << (v & 63);
        self.sites[v as usize].count = count;
    }

    /// Counts increasing paths from `root` to `fittest`. `moves(v)` is the
    /// mask of labels that may be flipped from `v`.
    fn count_from(&mut self, dim: u32, root: u64, fittest: u64, moves: impl Fn(u64) -> u64) -> u64 {
        self.reset(dim);
        self.set_done(fittest, 1);
        if root == fittest {
            return 1;
        }
        self.stack.push(Frame {
            site: root,
            next_label: 0,
            acc: 0,
        });
        while let Some(top) = self.stack.last_mut() {
            let v = top.site;
            let allowed = moves(v) >> top.next_label;
            if allowed != 0 {
                let label = top.next_label + allowed.trailing_zeros();
                top.next_label = label + 1;
                let w = v ^ (1 << label);
                let site = self.sites[w as usize];
                if site.fitness <= self.sites[v as usize].fitness {
                    continue;
                }
                if self.is_done(w) {
                    let c = site.count;
                    let top = self.stack.last_mut().expect("frame present");
                    top.acc = top.acc.saturating_add(c);
                } else {
                    self.stack.push(Frame {
                        site: w,
                        next_label: 0,
                        acc: 0,
                    });
                }
                continue;
            }
            let finished = self.stack.pop().expect("frame present");
            self.set_done(finished.site, finished.acc);
            match self.stack.last_mut() {
                Some(parent) => parent.acc = parent.acc.saturating_add(finished.acc),
                None => return finished.acc,
            }
        }
        unreachable!("the root frame returns")
    }

    /// Draws the landscape for `seed` into the scratch buffer.
    fn draw(&mut self, spec: &TrialSpec, seed: Seed) -> (u64, f64) {
        landscape::fill(&mut self.fitness, spec.dim, spec.mode, spec.start, seed)
    }

    /// One trial; `spec` must be validated.
    pub fn run(&mut self, spec: &TrialSpec, seed: Seed) -> TrialOutcome {
        let (fittest, _) = self.draw(spec, seed);
        let hamming = fittest.count_ones();
        if fittest == 0 {
            return TrialOutcome::new(0, spec.direct.then_some(0), 0);
        }
        let full = (1u64 << spec.dim) - 1;
        let theta = self.count_from(spec.dim, 0, fittest, |_| full);
        let direct = spec
            .direct
            .then(|| self.count_from(spec.dim, 0, fittest, |v| fittest & !v));
        TrialOutcome::new(theta, direct, hamming)
    }

    /// Outcomes of the same landscape at every start fitness in `grid`.
    ///
    /// Only `σ0`'s own fitness depends on `x`, and no increasing path from a
    /// neighbour of `σ0` can come back to it, so per-neighbour counts are
    /// computed once with `σ0` excluded and summed over the neighbours
    /// fitter than each `x`.
    pub fn run_grid(&mut self, spec: &TrialSpec, seed: Seed, grid: &[f64]) -> Vec<TrialOutcome> {
        let (fittest, _) = self.draw(spec, seed);
        let hamming = fittest.count_ones();
        if fittest == 0 {
            return grid
                .iter()
                .map(|_| TrialOutcome::new(0, spec.direct.then_some(0), 0))
                .collect();
        }
        self.fitness[0] = f64::NEG_INFINITY;
        let full = (1u64 << spec.dim) - 1;
        let neighbours = |scratch: &Self| -> Vec<(f64, u64)> {
            (0..spec.dim)
                .map(|i| {
                    let w = 1u64 << i;
                    (scratch.fitness[w as usize], scratch.sites[w as usize].count)
                })
                .collect()
        };
        self.count_from(spec.dim, 0, fittest, |_| full);
        let all = neighbours(self);
        let direct = spec.direct.then(|| {
            self.count_from(spec.dim, 0, fittest, |v| fittest & !v);
            (0..spec.dim)
                .filter(|i| fittest >> i & 1 == 1)
                .map(|i| {
                    let w = 1u64 << i;
                    (self.fitness[w as usize], self.sites[w as usize].count)
                })
                .collect::<Vec<_>>()
        });
        let sum_above = |list: &[(f64, u64)], x: f64| {
            list.iter()
                .filter(|(f, _)| *f > x)
                .fold(0u64, |acc, (_, c)| acc.saturating_add(*c))
        };
        grid.iter()
            .map(|&x| {
                let theta = sum_above(&all, x);
                let d = direct.as_deref().map(|list| sum_above(list, x));
                TrialOutcome::new(theta, d, hamming)
            })
            .collect()
    }
}

/// One trial with freshly allocated buffers.
pub fn run_trial(spec: &TrialSpec, seed: Seed) -> Result<TrialOutcome> {
    spec.validate()?;
    Ok(TrialScratch::new().run(spec, seed))
}

/// Exact integer sums over a set of trials.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Tally {
    pub n_trials: u64,
    pub n_accessible: u64,
    pub n_saturated: u64,
    pub theta_sum: u128,
    pub theta_sq_sum: u128,
    pub direct_sum: u128,
    pub direct_sq_sum: u128,
    pub n_direct: u64,
}

impl Tally {
    pub fn record(&mut self, outcome: &TrialOutcome) {
        self.n_trials += 1;
        self.n_accessible += u64::from(outcome.accessible);
        self.n_saturated += u64::from(outcome.saturated);
        let t = u128::from(outcome.theta);
        self.theta_sum = self.theta_sum.saturating_add(t);
        self.theta_sq_sum = self.theta_sq_sum.saturating_add(t.saturating_mul(t));
        if let Some(d) = outcome.theta_direct {
            let d = u128::from(d);
            self.n_direct += 1;
            self.direct_sum = self.direct_sum.saturating_add(d);
            self.direct_sq_sum = self.direct_sq_sum.saturating_add(d.saturating_mul(d));
        }
    }

    pub fn merge(&mut self, other: &Tally) {
        self.n_trials += other.n_trials;
        self.n_accessible += other.n_accessible;
        self.n_saturated += other.n_saturated;
        self.theta_sum = self.theta_sum.saturating_add(other.theta_sum);
        self.theta_sq_sum = self.theta_sq_sum.saturating_add(other.theta_sq_sum);
        self.direct_sum = self.direct_sum.saturating_add(other.direct_sum);
        self.direct_sq_sum = self.direct_sq_sum.saturating_add(other.direct_sq_sum);
        self.n_direct += other.n_direct;
    }
}

/// Runs the trials `range` sequentially; `spec` must be validated.
pub fn tally_range(spec: &TrialSpec, root: u64, range: Range<u64>, scratch: &mut TrialScratch) -> Tally {
    let mut tally = Tally::default();
    for index in range {
        tally.record(&scratch.run(spec, Seed::new(root, index)));
    }
    tally
}

/// Grid counterpart of [`tally_range`]: one tally per grid point.
pub fn tally_range_grid(
    spec: &TrialSpec,
    root: u64,
    range: Range<u64>,
    grid: &[f64],
    scratch: &mut TrialScratch,
) -> Vec<Tally> {
    let mut tallies = vec![Tally::default(); grid.len()];
    for index in range {
        let outcomes = scratch.run_grid(spec, Seed::new(root, index), grid);
        for (t, o) in tallies.iter_mut().zip(&outcomes) {
            t.record(o);
        }
    }
    tallies
}

/// Checks a grid for [`tally_range_grid`]: every point a valid fixed start.
pub fn validate_grid(spec: &TrialSpec, grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidArgument("empty x grid"));
    }
    for &x in grid {
        TrialSpec {
            start: StartFitness::fixed(x)?,
            ..*spec
        }
        .validate()?;
    }
    Ok(())
}

/// Mean and standard error of the mean from integer sums.
fn mean_and_error(sum: u128, sq_sum: u128, n: u64) -> (f64, f64) {
    if n == 0 {
        return (f64::NAN, f64::NAN);
    }
    let nf = n as f64;
    let mean = sum as f64 / nf;
    if n < 2 {
        return (mean, f64::NAN);
    }
    let var = ((sq_sum as f64 - nf * mean * mean) / (nf - 1.0)).max(0.0);
    (mean, libm::sqrt(var / nf))
}

/// Aggregate over `n_trials` trials of one configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulationSummary {
    pub dim: u32,
    pub mode: PlacementMode,
    /// `None` when the target's distance varies per trial.
    pub hamming: Option<u32>,
    pub start: StartFitness,
    pub n_trials: u64,
    pub n_accessible: u64,
    pub p_hat: f64,
    pub std_err: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
    pub mean_theta: f64,
    pub theta_std_err: f64,
    pub saturated_frac: f64,
    pub mean_theta_direct: Option<f64>,
    pub theta_direct_std_err: Option<f64>,
    pub root_seed: u64,
}

impl SimulationSummary {
    pub fn from_tally(spec: &TrialSpec, tally: &Tally, root_seed: u64) -> Self {
        let n = tally.n_trials;
        let nf = n as f64;
        let p = tally.n_accessible as f64 / nf;
        let std_err = libm::sqrt(p * (1.0 - p) / nf);
        let (ci_lo, ci_hi) = wilson_interval(tally.n_accessible, n);
        let (mean_theta, theta_std_err) = mean_and_error(tally.theta_sum, tally.theta_sq_sum, n);
        let direct = (tally.n_direct > 0)
            .then(|| mean_and_error(tally.direct_sum, tally.direct_sq_sum, tally.n_direct));
        Self {
            dim: spec.dim,
            mode: spec.mode,
            hamming: spec.hamming(),
            start: spec.start,
            n_trials: n,
            n_accessible: tally.n_accessible,
            p_hat: p,
            std_err,
            ci_lo,
            ci_hi,
            mean_theta,
            theta_std_err,
            saturated_frac: tally.n_saturated as f64 / nf,
            mean_theta_direct: direct.map(|d| d.0),
            theta_direct_std_err: direct.map(|d| d.1),
            root_seed,
        }
    }
}

/// Wilson score interval at 95%.
pub fn wilson_interval(successes: u64, n: u64) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    let nf = n as f64;
    let p = successes as f64 / nf;
    let z2 = WILSON_Z * WILSON_Z;
    let denom = 1.0 + z2 / nf;
    let centre = (p + z2 / (2.0 * nf)) / denom;
    let half = WILSON_Z * libm::sqrt(p * (1.0 - p) / nf + z2 / (4.0 * nf * nf)) / denom;
    // rounding can leave an endpoint just past p when p is 0 or 1
    ((centre - half).clamp(0.0, p), (centre + half).clamp(p, 1.0))
}

/// Single-threaded estimate over trials `0..n_trials`.
pub fn estimate_sequential(spec: &TrialSpec, n_trials: u64, root_seed: u64) -> Result<SimulationSummary> {
    spec.validate()?;
    if n_trials == 0 {
        return Err(Error::InvalidArgument("n_trials must be at least 1"));
    }
    let tally = tally_range(spec, root_seed, 0..n_trials, &mut TrialScratch::new());
    Ok(SimulationSummary::from_tally(spec, &tally, root_seed))
}

/// Single-threaded grid estimate: trial `i` draws the same landscape at
/// every `x`, so each summary equals [`estimate_sequential`] at that `x`.
pub fn estimate_grid_sequential(
    spec: &TrialSpec,
    grid: &[f64],
    n_trials: u64,
    root_seed: u64,
) -> Result<Vec<SimulationSummary>> {
    validate_grid(spec, grid)?;
    if n_trials == 0 {
        return Err(Error::InvalidArgument("n_trials must be at least 1"));
    }
    let tallies = tally_range_grid(spec, root_seed, 0..n_trials, grid, &mut TrialScratch::new());
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
