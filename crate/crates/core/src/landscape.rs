//! House-of-Cards fitness landscapes.
//!
//! The fittest site has fitness exactly 1, the start `σ0` has fitness `x`
//! and every other site is an independent uniform draw in `(0, 1)`.
//!
//! Randomness is keyed by [`Seed`]: the root seed and the dimension select a
//! ChaCha8 key, and the trial index selects the stream. Site `i` always takes
//! the `i`-th draw of its stream, so a landscape does not depend on the
//! placement mode, on `x`, or on how trials are spread over threads.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::distr::Open01;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::hypercube::{EndpointSpec, Genotype};
use crate::{Error, Result};

/// Default cap on `L` for stored landscapes (`2^26` doubles, 512 MiB).
pub const DEFAULT_MAX_LANDSCAPE_DIM: u32 = 26;

/// Where the fittest site goes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PlacementMode {
    /// `σend = σ1`.
    OppositeCorner,
    /// Bits `1..=H` set.
    FixedHamming(u32),
    /// Uniform over every corner except `σ0`.
    UniformRandom,
}

impl PlacementMode {
    pub fn name(self) -> &'static str {
        match self {
            PlacementMode::OppositeCorner => "corner",
            PlacementMode::FixedHamming(_) => "fixedH",
            PlacementMode::UniformRandom => "uniform",
        }
    }

    /// The fixed Hamming distance, if the mode has one.
    pub fn hamming(self, dim: u32) -> Option<u32> {
        match self {
            PlacementMode::OppositeCorner => Some(dim),
            PlacementMode::FixedHamming(h) => Some(h),
            PlacementMode::UniformRandom => None,
        }
    }

    pub fn validate(self, dim: u32) -> Result<()> {
        if let PlacementMode::FixedHamming(h) = self {
            if h > dim {
                return Err(Error::HammingOutOfRange { hamming: h, dim });
            }
        }
        Ok(())
    }
}

impl fmt::Display for PlacementMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Fitness of the starting site.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StartFitness {
    Fixed(f64),
    /// Drawn uniformly per landscape, i.e. unconditioned.
    Uniform,
}

impl StartFitness {
    pub fn fixed(x: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::StartFitnessOutOfRange(x));
        }
        Ok(StartFitness::Fixed(x))
    }

    fn below_one(self) -> bool {
        match self {
            StartFitness::Fixed(x) => x < 1.0,
            StartFitness::Uniform => true,
        }
    }
}

impl FromStr for StartFitness {
    type Err = Error;

    /// A number in `[0, 1]` or `uniform` / `random`.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "uniform" | "random" => Ok(StartFitness::Uniform),
            other => StartFitness::fixed(
                other
                    .parse()
                    .map_err(|_| Error::InvalidArgument("start fitness must be a number or 'uniform'"))?,
            ),
        }
    }
}

/// A reproducible random stream: `(root, index)` pairs are disjoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Seed {
    pub root: u64,
    pub index: u64,
}

impl Seed {
    pub fn new(root: u64, index: u64) -> Self {
        Self { root, index }
    }
}

const SITE_DOMAIN: u64 = 0x7369_7465_7300_0001;
const META_DOMAIN: u64 = 0x6d65_7461_0000_0002;

fn stream(seed: Seed, dim: u32, domain: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.root.to_le_bytes());
    key[8..16].copy_from_slice(&domain.to_le_bytes());
    key[16..24].copy_from_slice(&u64::from(dim).to_le_bytes());
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(seed.index);
    rng
}

fn check_landscape_dim(dim: u32, max_dim: u32) -> Result<()> {
    if dim == 0 || dim > crate::hypercube::MAX_DIM {
        return Err(Error::DimensionOutOfRange {
            dim,
            max: crate::hypercube::MAX_DIM,
        });
    }
    if dim > max_dim {
        return Err(Error::CapExceeded {
            what: "landscape dimension",
            value: u64::from(dim),
            cap: u64::from(max_dim),
        });
    }
    Ok(())
}

/// Checks the arguments shared by every landscape draw.
pub fn validate(dim: u32, mode: PlacementMode, start: StartFitness, max_dim: u32) -> Result<()> {
    check_landscape_dim(dim, max_dim)?;
    mode.validate(dim)?;
    if let StartFitness::Fixed(x) = start {
        StartFitness::fixed(x)?;
    }
    if mode == PlacementMode::FixedHamming(0) && start.below_one() {
        return Err(Error::ContradictoryPlacement);
    }
    Ok(())
}

/// Fills `fitness` (resized to `2^dim`) and returns `(fittest, start)`.
/// Arguments must already be validated.
pub(crate) fn fill(
    fitness: &mut Vec<f64>,
    dim: u32,
    mode: PlacementMode,
    start: StartFitness,
    seed: Seed,
) -> (u64, f64) {
    let n = 1usize << dim;
    fitness.clear();
    let mut sites = stream(seed, dim, SITE_DOMAIN);
    fitness.extend((0..n).map(|_| sites.sample::<f64, _>(Open01)));

    let mut meta = stream(seed, dim, META_DOMAIN);
    let drawn_fittest = meta.random_range(1..n as u64);
    let drawn_start: f64 = meta.sample(Open01);

    let fittest = match mode {
        PlacementMode::OppositeCorner => (n - 1) as u64,
        PlacementMode::FixedHamming(h) => (1u64 << h) - 1,
        PlacementMode::UniformRandom => drawn_fittest,
    };
    let x = match start {
        StartFitness::Fixed(x) => x,
        StartFitness::Uniform => drawn_start,
    };
    fitness[0] = x;
    fitness[fittest as usize] = 1.0;
    (fittest, x)
}

/// A sampled landscape.
#[derive(Debug, Clone, PartialEq)]
pub struct FitnessLandscape {
    dim: u32,
    mode: PlacementMode,
    fitness: Vec<f64>,
    fittest: Genotype,
    start_fitness: f64,
    seed: Seed,
}

impl FitnessLandscape {
    /// Draws a landscape with the default dimension cap.
    pub fn generate(dim: u32, mode: PlacementMode, start: StartFitness, seed: Seed) -> Result<Self> {
        Self::generate_capped(dim, mode, start, seed, DEFAULT_MAX_LANDSCAPE_DIM)
    }

    pub fn generate_capped(
        dim: u32,
        mode: PlacementMode,
        start: StartFitness,
        seed: Seed,
        max_dim: u32,
    ) -> Result<Self> {
        validate(dim, mode, start, max_dim)?;
        let mut fitness = Vec::new();
        let (fittest, start_fitness) = fill(&mut fitness, dim, mode, start, seed);
        Ok(Self {
            dim,
            mode,
            fitness,
            fittest: Genotype::new(fittest, dim)?,
            start_fitness,
            seed,
        })
    }

    /// Rebuilds a landscape from stored values, checking the invariants
    /// that tie the fittest site and the start together.
    pub fn from_parts(
        dim: u32,
        mode: PlacementMode,
        fitness: Vec<f64>,
        fittest: u64,
        seed: Seed,
    ) -> Result<Self> {
        check_landscape_dim(dim, crate::hypercube::MAX_DIM)?;
        if fitness.len() != 1usize << dim {
            return Err(Error::InvalidArgument("fitness table length is not 2^L"));
        }
        let fittest = Genotype::new(fittest, dim)?;
        if fitness[fittest.bits() as usize] != 1.0 {
            return Err(Error::InvalidArgument("fittest site must have fitness 1"));
        }
        let start_fitness = fitness[0];
        Ok(Self {
            dim,
            mode,
            fitness,
            fittest,
            start_fitness,
            seed,
        })
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn mode(&self) -> PlacementMode {
        self.mode
    }

    pub fn fitness(&self) -> &[f64] {
        &self.fitness
    }

    pub fn fitness_of(&self, site: Genotype) -> f64 {
        self.fitness[site.bits() as usize]
    }

    pub fn fittest(&self) -> Genotype {
        self.fittest
    }

    pub fn start_fitness(&self) -> f64 {
        self.start_fitness
    }

    pub fn seed(&self) -> Seed {
        self.seed
    }

    /// Endpoint spec matching this landscape, when the fittest site is in
    /// the canonical `1..=H` form.
    pub fn endpoint_spec(&self) -> Option<EndpointSpec> {
        let h = self.fittest.weight();
        let spec = EndpointSpec::new(self.dim, h).ok()?;
        (spec.endpoint() == self.fittest).then_some(spec)
    }
}

/// Hamming distance between `σ0` and the fittest site.
pub fn hamming_to_fittest(landscape: &FitnessLandscape) -> u32 {
    landscape.fittest.weight()
}
