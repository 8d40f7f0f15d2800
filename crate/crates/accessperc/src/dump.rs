//! Binary landscape dumps.
//!
//! Layout, all little-endian: magic `HOCL`, format version `u32`, `L` `u32`,
//! placement mode `u8` (0 corner, 1 fixed Hamming, 2 uniform), the
//! target's Hamming distance `u32`, start fitness `f64`, seed root `u64`,
//! seed index `u64`, fittest site `u64`, then the `2^L` fitness values as
//! `f64` in genotype order.

use std::io::{Read, Write};

use accessperc_core::{FitnessLandscape, PlacementMode, Seed};

use crate::AppError;

pub const MAGIC: [u8; 4] = *b"HOCL";
pub const VERSION: u32 = 1;

fn mode_code(mode: PlacementMode) -> u8 {
    match mode {
        PlacementMode::OppositeCorner => 0,
        PlacementMode::FixedHamming(_) => 1,
        PlacementMode::UniformRandom => 2,
    }
}

pub fn write_landscape<W: Write>(mut w: W, ls: &FitnessLandscape) -> Result<(), AppError> {
    let seed = ls.seed();
    w.write_all(&MAGIC)?;
    w.write_all(&VERSION.to_le_bytes())?;
    w.write_all(&ls.dim().to_le_bytes())?;
    w.write_all(&[mode_code(ls.mode())])?;
    w.write_all(&ls.fittest().weight().to_le_bytes())?;
    w.write_all(&ls.start_fitness().to_le_bytes())?;
    w.write_all(&seed.root.to_le_bytes())?;
    w.write_all(&seed.index.to_le_bytes())?;
    w.write_all(&ls.fittest().bits().to_le_bytes())?;
    let mut buf = Vec::with_capacity(ls.fitness().len() * 8);
    for f in ls.fitness() {
        buf.extend_from_slice(&f.to_le_bytes());
    }
    w.write_all(&buf)?;
    w.flush()?;
    Ok(())
}

fn take<const N: usize, R: Read>(r: &mut R) -> Result<[u8; N], AppError> {
    let mut b = [0u8; N];
    r.read_exact(&mut b)?;
    Ok(b)
}

fn format_error(msg: &str) -> AppError {
    AppError::Format(msg.to_string())
}

pub fn read_landscape<R: Read>(mut r: R) -> Result<FitnessLandscape, AppError> {
    if take::<4, _>(&mut r)? != MAGIC {
        return Err(format_error("not a landscape dump (bad magic)"));
    }
    let version = u32::from_le_bytes(take(&mut r)?);
    if version != VERSION {
        return Err(format_error(&format!("unsupported dump version {version}")));
    }
    let dim = u32::from_le_bytes(take(&mut r)?);
    let [code] = take::<1, _>(&mut r)?;
    let hamming = u32::from_le_bytes(take(&mut r)?);
    let x = f64::from_le_bytes(take(&mut r)?);
    let root = u64::from_le_bytes(take(&mut r)?);
    let index = u64::from_le_bytes(take(&mut r)?);
    let fittest = u64::from_le_bytes(take(&mut r)?);
    let mode = match code {
        0 => PlacementMode::OppositeCorner,
        1 => PlacementMode::FixedHamming(hamming),
        2 => PlacementMode::UniformRandom,
        _ => return Err(format_error("unknown placement mode")),
    };
    if dim == 0 || dim > accessperc_core::landscape::DEFAULT_MAX_LANDSCAPE_DIM {
        return Err(format_error("dimension outside the supported range"));
    }
    if fittest.count_ones() != hamming {
        return Err(format_error("header Hamming distance disagrees with the fittest site"));
    }
    let n = 1usize << dim;
    let mut bytes = vec![0u8; n * 8];
    r.read_exact(&mut bytes)?;
    let fitness: Vec<f64> = bytes
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().expect("8-byte chunk")))
        .collect();
    if fitness[0].to_bits() != x.to_bits() {
        return Err(format_error("header start fitness disagrees with the table"));
    }
    let mut rest = [0u8; 1];
    if r.read(&mut rest)? != 0 {
        return Err(format_error("trailing bytes after the fitness table"));
    }
    Ok(FitnessLandscape::from_parts(
        dim,
        mode,
        fitness,
        fittest,
        Seed::new(root, index),
    )?)
}
