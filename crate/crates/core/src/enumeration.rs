//! Exact counts of self-avoiding paths `σ0 → σend` by number of backsteps.
//!
//! The search only walks *canonical* paths: forward labels (`1..=H`) first
//! occur in increasing order, and so do back labels (`H+1..=L`), with the
//! back labels used being exactly `H+1..=H+k`. Every self-avoiding path is
//! the image of exactly one canonical path under a relabelling that permutes
//! the forward labels among themselves and injects the `k` used back labels
//! into the `L − H` available ones, so each canonical leaf stands for
//! `H! · (L−H)! / (L−H−k)!` paths.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

use crate::hypercube::{EndpointSpec, PathCode};
use crate::numeric::{self, ln_biguint};
use crate::{Error, Result};

/// Which sequence a [`CountTable`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CountKind {
    /// `a_{L,H,p}`, exact self-avoiding path counts.
    ExactA,
    /// `M_{L,H,p}`, walks with the right endpoint parity (intersections allowed).
    UpperM,
    /// `m̃_{L,H,p}`, the damped lower recurrence.
    LowerMTilde,
    /// `m_{L,H,p}`, the recursive path subset.
    MsetM,
}

impl CountKind {
    pub fn name(self) -> &'static str {
        match self {
            CountKind::ExactA => "exact_a",
            CountKind::UpperM => "upper_M",
            CountKind::LowerMTilde => "lower_m_tilde",
            CountKind::MsetM => "mset_m",
        }
    }
}

/// Counts indexed by backstep number `p`; entry `p` is for length `H + 2p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable<T = BigUint> {
    pub dim: u32,
    pub hamming: u32,
    pub kind: CountKind,
    pub counts: Vec<T>,
}

impl<T: Clone + Zero> CountTable<T> {
    /// Entry `p`, zero past the end of the table.
    pub fn get(&self, p: usize) -> T {
        self.counts.get(p).cloned().unwrap_or_else(T::zero)
    }

    pub fn total(&self) -> T {
        self.counts.iter().fold(T::zero(), |acc, c| acc + c.clone())
    }

    /// Largest `p` with a non-zero entry.
    pub fn max_nonzero_p(&self) -> Option<usize> {
        self.counts.iter().rposition(|c| !c.is_zero())
    }
}

/// `n!` as an arbitrary-precision integer.
pub fn factorial(n: u64) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 1..=k {
        acc *= n - k + i;
        acc /= i;
    }
    acc
}

/// Charged by the search as it expands nodes.
pub trait NodeMeter {
    /// Records `nodes` more expansions; fails once the budget is spent.
    fn charge(&mut self, nodes: u64) -> Result<()>;
}

/// A plain node budget. `None` is unlimited.
#[derive(Debug, Clone, Copy, Default)]
pub struct NodeBudget {
    limit: Option<u64>,
    used: u64,
}

impl NodeBudget {
    pub fn new(limit: Option<u64>) -> Self {
        Self { limit, used: 0 }
    }

    pub fn used(&self) -> u64 {
        self.used
    }
}

impl NodeMeter for NodeBudget {
    fn charge(&mut self, nodes: u64) -> Result<()> {
        self.used += nodes;
        match self.limit {
            Some(budget) if self.used > budget => Err(Error::BudgetExceeded { budget }),
            _ => Ok(()),
        }
    }
}

const CHARGE_CHUNK: u64 = 1 << 14;

/// Raw canonical leaf counts indexed by `(p, k)`, `k` the number of distinct
/// back labels used.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeafTally {
    back_labels: usize,
    leaves: Vec<u64>,
}

impl LeafTally {
    fn new(max_p: u32, back_labels: u32) -> Self {
        let width = back_labels as usize + 1;
        Self {
            back_labels: width,
            leaves: vec![0; (max_p as usize + 1) * width],
        }
    }

    fn record(&mut self, p: u32, k: u32) {
        self.leaves[p as usize * self.back_labels + k as usize] += 1;
    }

    pub fn merge(&mut self, other: &LeafTally) {
        for (a, b) in self.leaves.iter_mut().zip(&other.leaves) {
            *a += b;
        }
    }

    /// Number of canonical leaves.
    pub fn canonical_leaves(&self) -> u64 {
        self.leaves.iter().sum()
    }
}

/// A canonical partial path handed to one worker.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prefix {
    steps: Vec<u8>,
}

impl Prefix {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// Work split of a search: prefixes to expand plus the leaves already met
/// above the split depth.
#[derive(Debug, Clone)]
pub struct Split {
    pub prefixes: Vec<Prefix>,
    pub shallow: LeafTally,
}

/// Canonical depth-first search for `a_{L,H,p}`.
#[derive(Debug, Clone, Copy)]
pub struct CanonicalSearch {
    dim: u32,
    hamming: u32,
    end: u64,
    max_p: u32,
    max_len: u32,
}

/// Largest dimension the canonical search accepts.
pub const MAX_SEARCH_DIM: u32 = 12;

impl CanonicalSearch {
    /// `max_p = None` searches every length up to `2^L − 1`.
    pub fn new(spec: EndpointSpec, max_p: Option<u32>) -> Result<Self> {
        let (dim, hamming) = (spec.dim(), spec.hamming());
        if hamming == 0 {
            return Err(Error::ZeroHamming);
        }
        if dim > MAX_SEARCH_DIM {
            return Err(Error::CapExceeded {
                what: "search dimension",
                value: u64::from(dim),
                cap: u64::from(MAX_SEARCH_DIM),
            });
        }
        let longest = (1u32 << dim) - 1;
        let structural_p = (longest - hamming) / 2;
        let max_p = max_p.map_or(structural_p, |p| p.min(structural_p));
        Ok(Self {
            dim,
            hamming,
            end: spec.endpoint().bits(),
            max_p,
            max_len: hamming + 2 * max_p,
        })
    }

    pub fn max_p(&self) -> u32 {
        self.max_p
    }

    fn empty_tally(&self) -> LeafTally {
        LeafTally::new(self.max_p, self.dim - self.hamming)
    }

    fn walker<'m, M: NodeMeter, V: VisitedSet>(
        &self,
        meter: &'m mut M,
        tally: LeafTally,
    ) -> Walker<'m, M, V> {
        let mut visited = V::new(self.dim);
        visited.mark(0);
        Walker {
            search: *self,
            visited,
            tally,
            meter,
            pending: 0,
        }
    }

    /// Enumerates canonical prefixes of exactly `depth` steps.
    pub fn split(&self, depth: u32) -> Split {
        let mut budget = NodeBudget::new(None);
        let mut walker = self.walker::<_, LargeSet>(&mut budget, self.empty_tally());
        let mut prefixes = Vec::new();
        let mut steps = Vec::new();
        walker.collect_prefixes(0, 0, 0, 0, depth, &mut steps, &mut prefixes);
        Split {
            prefixes,
            shallow: walker.tally,
        }
    }

    /// Expands one prefix to completion.
    pub fn run<M: NodeMeter>(&self, prefix: &Prefix, meter: &mut M) -> Result<LeafTally> {
        if self.dim <= SmallSet::MAX_DIM {
            self.run_with::<M, SmallSet>(prefix, meter)
        } else {
            self.run_with::<M, LargeSet>(prefix, meter)
        }
    }

    fn run_with<M: NodeMeter, V: VisitedSet>(
        &self,
        prefix: &Prefix,
        meter: &mut M,
    ) -> Result<LeafTally> {
        let mut walker = self.walker::<M, V>(meter, self.empty_tally());
        let (mut cur, mut fwd, mut back) = (0u64, 0u32, 0u32);
        for &s in &prefix.steps {
            let s = u32::from(s);
            if s < self.hamming {
                fwd = fwd.max(s + 1);
            } else {
                back = back.max(s - self.hamming + 1);
            }
            cur ^= 1 << s;
            walker.visited.mark(cur);
        }
        walker.descend(cur, prefix.steps.len() as u32, fwd, back)?;
        walker.flush()?;
        Ok(walker.tally)
    }

    /// Runs the whole search on the calling thread.
    pub fn count<M: NodeMeter>(&self, meter: &mut M) -> Result<CountTable> {
        let tally = self.run(&Prefix { steps: Vec::new() }, meter)?;
        Ok(self.finish(&tally))
    }

    /// Applies the symmetry weights to a merged tally.
    pub fn finish(&self, tally: &LeafTally) -> CountTable {
        let back_avail = u64::from(self.dim - self.hamming);
        let fwd_weight = factorial(u64::from(self.hamming));
        let weights: Vec<BigUint> = (0..=back_avail)
            .map(|k| &fwd_weight * falling_factorial(back_avail, k))
            .collect();
        let counts = tally
            .leaves
            .chunks(tally.back_labels)
            .map(|row| {
                row.iter()
                    .zip(&weights)
                    .fold(BigUint::zero(), |acc, (&n, w)| acc + w * n)
            })
            .collect();
        CountTable {
            dim: self.dim,
            hamming: self.hamming,
            kind: CountKind::ExactA,
            counts,
        }
    }
}

fn falling_factorial(n: u64, k: u64) -> BigUint {
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i))
}

trait VisitedSet {
    fn new(dim: u32) -> Self;
    fn contains(&self, v: u64) -> bool;
    fn mark(&mut self, v: u64);
    fn unmark(&mut self, v: u64);
    /// False only if `to` is certainly unreachable from `from` through
    /// unvisited vertices.
    fn may_reach(&self, from: u64, to: u64) -> bool;
}

/// Whole cube in one word, with a bit-parallel flood fill.
struct SmallSet {
    bits: u64,
    dim: u32,
    full: u64,
}

impl SmallSet {
    const MAX_DIM: u32 = 6;

    /// Vertices whose bit `i` is clear, for each direction `i`.
    const LOW_HALF: [u64; 6] = [
        0x5555_5555_5555_5555,
        0x3333_3333_3333_3333,
        0x0F0F_0F0F_0F0F_0F0F,
        0x00FF_00FF_00FF_00FF,
        0x0000_FFFF_0000_FFFF,
        0x0000_0000_FFFF_FFFF,
    ];

    #[inline]
    fn neighbours(&self, set: u64) -> u64 {
        let mut out = 0;
        for i in 0..self.dim as usize {
            let shift = 1 << i;
            let low = Self::LOW_HALF[i];
            out |= ((set & low) << shift) | ((set >> shift) & low);
        }
        out
    }
}

impl VisitedSet for SmallSet {
    fn new(dim: u32) -> Self {
        let full = if dim == 6 { u64::MAX } else { (1u64 << (1 << dim)) - 1 };
        Self { bits: 0, dim, full }
    }

    #[inline]
    fn contains(&self, v: u64) -> bool {
        self.bits >> v & 1 == 1
    }

    #[inline]
    fn mark(&mut self, v: u64) {
        self.bits |= 1 << v;
    }

    #[inline]
    fn unmark(&mut self, v: u64) {
        self.bits &= !(1 << v);
    }

    #[inline]
    fn may_reach(&self, from: u64, to: u64) -> bool {
        let free = self.full & !self.bits;
        let target = 1u64 << to;
        let mut reach = 1u64 << from;
        loop {
            let grown = reach | (self.neighbours(reach) & free);
            if grown & target != 0 {
                return true;
            }
            if grown == reach {
                return false;
            }
            reach = grown;
        }
    }
}

struct LargeSet {
    words: Vec<u64>,
}

impl VisitedSet for LargeSet {
    fn new(dim: u32) -> Self {
        Self {
            words: vec![0; (1usize << dim).div_ceil(64)],
        }
    }

    #[inline]
    fn contains(&self, v: u64) -> bool {
        self.words[(v >> 6) as usize] >> (v & 63) & 1 == 1
    }

    #[inline]
    fn mark(&mut self, v: u64) {
        self.words[(v >> 6) as usize] |= 1 << (v & 63);
    }

    #[inline]
    fn unmark(&mut self, v: u64) {
        self.words[(v >> 6) as usize] &= !(1 << (v & 63));
    }

    fn may_reach(&self, _from: u64, _to: u64) -> bool {
        true
    }
}

struct Walker<'m, M, V> {
    search: CanonicalSearch,
    visited: V,
    tally: LeafTally,
    meter: &'m mut M,
    pending: u64,
}

impl<M: NodeMeter, V: VisitedSet> Walker<'_, M, V> {
    fn flush(&mut self) -> Result<()> {
        let n = core::mem::take(&mut self.pending);
        self.meter.charge(n)
    }

    /// Canonical label window: forward labels `0..fwd_top`, back labels
    /// `back_lo..back_hi`.
    #[inline]
    fn label_range(&self, fwd: u32, back: u32) -> (u32, u32, u32) {
        let s = &self.search;
        let fwd_top = if fwd < s.hamming { fwd + 1 } else { fwd };
        let back_top = if back < s.dim - s.hamming { back + 1 } else { back };
        (fwd_top, s.hamming, s.hamming + back_top)
    }

    fn descend(&mut self, cur: u64, len: u32, fwd: u32, back: u32) -> Result<()> {
        let (fwd_top, back_lo, back_hi) = self.label_range(fwd, back);
        let labels = (0..fwd_top).chain(back_lo..back_hi);
        for label in labels {
            let next = cur ^ (1 << label);
            if self.visited.contains(next) {
                continue;
            }
            let next_len = len + 1;
            if next_len + (next ^ self.search.end).count_ones() > self.search.max_len {
                continue;
            }
            self.pending += 1;
            if self.pending >= CHARGE_CHUNK {
                self.flush()?;
            }
            let (nf, nb) = if label < self.search.hamming {
                (fwd.max(label + 1), back)
            } else {
                (fwd, back.max(label - self.search.hamming + 1))
            };
            if next == self.search.end {
                self.tally.record((next_len - self.search.hamming) / 2, nb);
                continue;
            }
            self.visited.mark(next);
            if self.visited.may_reach(next, self.search.end) {
                self.descend(next, next_len, nf, nb)?;
            }
            self.visited.unmark(next);
        }
        Ok(())
    }

    #[allow(clippy::too_many_arguments)]
    fn collect_prefixes(
        &mut self,
        cur: u64,
        len: u32,
        fwd: u32,
        back: u32,
        depth: u32,
        steps: &mut Vec<u8>,
        out: &mut Vec<Prefix>,
    ) {
        if len == depth {
            out.push(Prefix { steps: steps.clone() });
            return;
        }
        let (fwd_top, back_lo, back_hi) = self.label_range(fwd, back);
        for label in (0..fwd_top).chain(back_lo..back_hi) {
            let next = cur ^ (1 << label);
            let next_len = len + 1;
            if self.visited.contains(next)
                || next_len + (next ^ self.search.end).count_ones() > self.search.max_len
            {
                continue;
            }
            let (nf, nb) = if label < self.search.hamming {
                (fwd.max(label + 1), back)
            } else {
                (fwd, back.max(label - self.search.hamming + 1))
            };
            if next == self.search.end {
                self.tally.record((next_len - self.search.hamming) / 2, nb);
                continue;
            }
            self.visited.mark(next);
            steps.push(label as u8);
            self.collect_prefixes(next, next_len, nf, nb, depth, steps, out);
            steps.pop();
            self.visited.unmark(next);
        }
    }
}

/// `a_{L,H,p}` for `p ≤ max_p` (all `p` when `None`), single-threaded.
pub fn count_saw(dim: u32, hamming: u32, max_p: Option<u32>) -> Result<CountTable> {
    count_saw_budgeted(dim, hamming, max_p, None)
}

/// As [`count_saw`], failing with [`Error::BudgetExceeded`] once more than
/// `budget` search nodes have been expanded.
pub fn count_saw_budgeted(
    dim: u32,
    hamming: u32,
    max_p: Option<u32>,
    budget: Option<u64>,
) -> Result<CountTable> {
    let search = CanonicalSearch::new(EndpointSpec::new(dim, hamming)?, max_p)?;
    search.count(&mut NodeBudget::new(budget))
}

/// `a_{L,1} = L! · L(L−1)(L−2)/6`.
pub fn closed_form_p1(dim: u32) -> BigUint {
    let l = BigInt::from(dim);
    let poly: BigInt = &l * (&l - 1) * (&l - 2) / 6;
    factorial(u64::from(dim)) * poly.to_biguint().unwrap_or_default()
}

/// `a_{L,2} = L! · (L−1)(L−2)(5L⁴ + 3L³ + 34L² − 264L + 180) / 360`.
pub fn closed_form_p2(dim: u32) -> BigUint {
    let l = BigInt::from(dim);
    let quartic: BigInt = 5 * l.pow(4) + 3 * l.pow(3) + 34 * l.pow(2) - 264 * &l + 180;
    let poly: BigInt = (&l - 1) * (&l - 2) * quartic / 360;
    factorial(u64::from(dim)) * poly.to_biguint().unwrap_or_default()
}

/// Large-`L` estimate `L! · L^{3p} / (6^p p!)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Asymptotic {
    /// `+inf` when the value overflows a double.
    pub value: f64,
    pub ln_value: f64,
}

pub fn asymptotic_p(dim: u32, p: u32) -> Asymptotic {
    let l = f64::from(dim);
    let ln_value = numeric::ln_factorial(u64::from(dim)) + 3.0 * f64::from(p) * libm::log(l)
        - f64::from(p) * libm::log(6.0)
        - numeric::ln_factorial(u64::from(p));
    Asymptotic {
        value: libm::exp(ln_value),
        ln_value,
    }
}

/// Largest `L` for which the `m`-set is listed path by path.
pub const DEFAULT_MSET_LIST_CAP: u32 = 5;
/// Largest `L` for which `m`-set counts are tabulated.
pub const MSET_COUNT_CAP: u32 = 14;

/// Counts (and, for small `L`, the members) of the recursive path set.
#[derive(Debug, Clone)]
pub struct MsetEnumeration {
    pub counts: CountTable,
    pub paths: Option<Vec<PathCode>>,
}

/// Builds the recursive subset `m_{L,H}` of self-avoiding paths: start from
/// `m_1 = {"1"}`; a string is in `m_{l+1}` when label `l+1` occurs an odd
/// number of times (an even number, possibly zero, once `l ≥ H`), never at
/// two consecutive positions, and deleting it leaves a member of `m_l`.
pub fn enumerate_mset(dim: u32, hamming: u32) -> Result<MsetEnumeration> {
    let counts = mset_counts(dim, hamming)?;
    let paths = if dim <= DEFAULT_MSET_LIST_CAP {
        Some(mset_paths(dim, hamming, DEFAULT_MSET_LIST_CAP)?)
    } else {
        None
    };
    Ok(MsetEnumeration { counts, paths })
}

/// `m_{L,H,p}` by counting non-adjacent placements of each new label:
/// `K` non-adjacent slots in a string of length `N` can be chosen in
/// `C(N − K + 1, K)` ways.
pub fn mset_counts(dim: u32, hamming: u32) -> Result<CountTable> {
    let spec = EndpointSpec::new(dim, hamming)?;
    if hamming == 0 {
        return Err(Error::ZeroHamming);
    }
    if dim > MSET_COUNT_CAP {
        return Err(Error::CapExceeded {
            what: "m-set dimension",
            value: u64::from(dim),
            cap: u64::from(MSET_COUNT_CAP),
        });
    }
    let h = u64::from(spec.hamming());
    // lengths are l + 2p in the first phase and H + 2p afterwards
    let mut counts = vec![BigUint::one()];
    let mut max_len = 1u64;
    for l in 1..u64::from(dim) {
        let forward = l < h;
        let base = if forward { l } else { h };
        // the new label fills at most every other slot
        let new_max_len = 2 * max_len + 1;
        let new_base = if forward { l + 1 } else { h };
        let new_max_p = ((new_max_len - new_base) / 2) as usize;
        let mut next = vec![BigUint::zero(); new_max_p + 1];
        for (p, slot) in next.iter_mut().enumerate() {
            let p = p as u64;
            for q in 0..=p {
                let old = match counts.get((p - q) as usize) {
                    Some(c) if !c.is_zero() => c,
                    _ => continue,
                };
                let inserted = if forward { 2 * q + 1 } else { 2 * q };
                let total_len = base + 2 * (p - q) + inserted;
                *slot += binomial(total_len - inserted + 1, inserted) * old;
            }
        }
        while next.len() > 1 && next.last().is_some_and(Zero::is_zero) {
            next.pop();
        }
        max_len = new_base + 2 * (next.len() as u64 - 1);
        counts = next;
    }
    Ok(CountTable {
        dim,
        hamming,
        kind: CountKind::MsetM,
        counts,
    })
}

/// Lists the members of `m_{L,H}` explicitly.
pub fn mset_paths(dim: u32, hamming: u32, cap: u32) -> Result<Vec<PathCode>> {
    EndpointSpec::new(dim, hamming)?;
    if hamming == 0 {
        return Err(Error::ZeroHamming);
    }
    if dim > cap {
        return Err(Error::CapExceeded {
            what: "m-set listing dimension",
            value: u64::from(dim),
            cap: u64::from(cap),
        });
    }
    let mut current: Vec<Vec<u8>> = vec![vec![0]];
    for l in 1..dim {
        let label = l as u8;
        let forward = l < hamming;
        let mut next = Vec::new();
        for path in &current {
            let slots = path.len() + 1;
            let mut k = if forward { 1 } else { 0 };
            while k <= slots {
                insert_nonadjacent(path, label, k, &mut next);
                k += 2;
            }
        }
        current = next;
    }
    Ok(current
        .into_iter()
        .map(|steps| PathCode::from_raw(dim, steps))
        .collect())
}

/// All ways to insert `k` copies of `label` into `path` with no two copies
/// adjacent in the result.
fn insert_nonadjacent(path: &[u8], label: u8, k: usize, out: &mut Vec<Vec<u8>>) {
    // choose k distinct gaps among the len+1 gaps of the original string;
    // one copy per gap keeps copies apart
    let gaps = path.len() + 1;
    let mut chosen = Vec::with_capacity(k);
    fn rec(
        path: &[u8],
        label: u8,
        gaps: usize,
        k: usize,
        start: usize,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<u8>>,
    ) {
        if chosen.len() == k {
            let mut s = Vec::with_capacity(path.len() + k);
            let mut c = chosen.iter().peekable();
            for gap in 0..=path.len() {
                if c.peek() == Some(&&gap) {
                    s.push(label);
                    c.next();
                }
                if gap < path.len() {
                    s.push(path[gap]);
                }
            }
            out.push(s);
            return;
        }
        for g in start..gaps {
            if gaps - g < k - chosen.len() {
                break;
            }
            chosen.push(g);
            rec(path, label, gaps, k, g + 1, chosen, out);
            chosen.pop();
        }
    }
    rec(path, label, gaps, k, 0, &mut chosen, out);
}

/// `E^x(Θ) = Σ_p a_{L,H,p} (1−x)^{H+2p−1} / (H+2p−1)!` from exact counts.
pub fn expected_theta_from_counts(table: &CountTable, x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::StartFitnessOutOfRange(x));
    }
    if table.hamming == 0 {
        return Err(Error::ZeroHamming);
    }
    let ln_one_minus_x = libm::log(1.0 - x);
    let terms = table
        .counts
        .iter()
        .enumerate()
        .filter(|(_, a)| !a.is_zero())
        .map(|(p, a)| {
            let n = u64::from(table.hamming) + 2 * p as u64 - 1;
            libm::exp(ln_biguint(a) + numeric::ln_pow(ln_one_minus_x, n) - numeric::ln_factorial(n))
        })
        .collect();
    Ok(numeric::sum_descending(terms))
}

/// Exact `E^x(Θ)` by full enumeration; feasible for `L ≤ 5`.
pub fn exact_expected_theta(dim: u32, hamming: u32, x: f64) -> Result<f64> {
    let table = count_saw(dim, hamming, None)?;
    expected_theta_from_counts(&table, x)
}

/// `u64` view of small counts, for tests and display.
pub fn counts_u64(table: &CountTable) -> Option<Vec<u64>> {
    table.counts.iter().map(ToPrimitive::to_u64).collect()
}
