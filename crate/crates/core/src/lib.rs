//! Accessibility percolation on the `L`-hypercube under the House-of-Cards
//! fitness model.
//!
//! This crate is `no_std` (it needs `alloc`) and holds the algorithmic core:
//!
//! * [`hypercube`]: genotypes, the label-string coding of walks, and the
//!   self-avoidance and endpoint predicates.
//! * [`landscape`]: reproducible House-of-Cards landscapes.
//! * [`enumeration`]: exact self-avoiding path counts `a_{L,H,p}`, their
//!   closed forms, and the recursive `m`-set.
//! * [`bounds`]: the `M` / `m̃` recurrences, their generating functions and
//!   the bounds they give on the expected number of open paths.
//! * [`polynomial`]: the `φ_L` polynomial engine and the bounds on `a_L`.
//! * [`analytics`]: critical starting fitness and related closed forms.
//! * [`montecarlo`]: exact path counting on a sampled landscape and
//!   deterministic trial aggregation.
//!
//! Threading, file formats and the command line live in the `accessperc`
//! crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod analytics;
pub mod bounds;
pub mod enumeration;
mod error;
pub mod hypercube;
pub mod landscape;
pub mod montecarlo;
pub mod numeric;
pub mod polynomial;

pub use error::{Error, Result};
pub use hypercube::{EndpointSpec, Genotype, PathCode};
pub use landscape::{FitnessLandscape, PlacementMode, Seed, StartFitness};
