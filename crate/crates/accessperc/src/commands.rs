//! Table builders behind each CLI command.

use accessperc_core::analytics::{averaged_expectation, critical_x, limit_diagnostic};
use accessperc_core::bounds::{eval_bounds, majo_table, mino_tilde_table};
use accessperc_core::enumeration::{expected_theta_from_counts, mset_counts, mset_paths, CountTable};
use accessperc_core::montecarlo::SimulationSummary;
use accessperc_core::polynomial::{al_bounds, degree_formula, phi_polynomial};
use accessperc_core::{FitnessLandscape, StartFitness};
use num_bigint::BigUint;

use crate::format::{Cell, Table};
use crate::parallel::{self, SweepRow};
use crate::AppError;

type Res<T> = Result<T, AppError>;

/// Parses `a:b:step` (inclusive of `b` up to rounding), a comma-separated
/// list, or a single number. Grid points are rounded to 12 decimals so
/// that `0:0.3:0.1` gives `0.3` rather than `0.30000000000000004`.
pub fn parse_values(text: &str) -> Res<Vec<f64>> {
    let bad = || AppError::Usage(format!("cannot parse '{text}' as a number, list or a:b:step grid"));
    let num = |s: &str| s.trim().parse::<f64>().map_err(|_| bad());
    let parts: Vec<&str> = text.split(':').collect();
    match parts.as_slice() {
        [a, b, step] => {
            let (a, b, step) = (num(a)?, num(b)?, num(step)?);
            if step.is_nan() || step <= 0.0 || !a.is_finite() || !b.is_finite() || b < a {
                return Err(AppError::Usage(format!("grid '{text}' needs a ≤ b and step > 0")));
            }
            let n = ((b - a) / step + 1e-9).floor();
            if n > 1e7 {
                return Err(AppError::Usage(format!("grid '{text}' has too many points")));
            }
            Ok((0..=n as u64)
                .map(|i| ((a + i as f64 * step) * 1e12).round() / 1e12)
                .collect())
        }
        [_] => text.split(',').map(num).collect(),
        _ => Err(bad()),
    }
}

fn count_rows<T>(table: &CountTable<T>, value: impl Fn(&T) -> Cell) -> Table {
    let mut t = Table::new(["L", "H", "p", "length", table.kind.name()]);
    for (p, c) in table.counts.iter().enumerate() {
        t.push(vec![
            Cell::Int(table.dim.into()),
            Cell::Int(table.hamming.into()),
            Cell::Int(p as i128),
            Cell::Int((table.hamming as usize + 2 * p) as i128),
            value(c),
        ]);
    }
    t
}

pub fn enumerate(dim: u32, h: u32, max_p: Option<u32>, budget: Option<u64>, workers: usize) -> Res<Table> {
    let table = parallel::count_saw(dim, h, max_p, budget, workers)?;
    Ok(count_rows(&table, Cell::big))
}

pub fn mset(dim: u32, h: u32) -> Res<Table> {
    Ok(count_rows(&mset_counts(dim, h)?, Cell::big))
}

pub fn mset_list(dim: u32, h: u32) -> Res<Table> {
    let mut t = Table::new(["L", "H", "length", "path"]);
    for path in mset_paths(dim, h, accessperc_core::enumeration::DEFAULT_MSET_LIST_CAP)? {
        t.push(vec![
            Cell::Int(dim.into()),
            Cell::Int(h.into()),
            Cell::Int(path.len() as i128),
            Cell::text(&path),
        ]);
    }
    Ok(t)
}

pub fn majo(dim: u32, h: u32, max_p: u32) -> Res<Table> {
    Ok(count_rows(&majo_table(dim, h, max_p)?, Cell::big))
}

pub fn mino(dim: u32, h: u32, max_p: u32) -> Res<Table> {
    Ok(count_rows(&mino_tilde_table(dim, h, max_p)?, Cell::ratio))
}

pub fn bounds(dim: u32, h: u32, xs: &[f64]) -> Res<Table> {
    let mut t = Table::new(["L", "H", "x", "lower", "upper", "log_lower", "log_upper"]);
    for &x in xs {
        let b = eval_bounds(dim, h, x)?;
        t.push(vec![
            Cell::Int(dim.into()),
            Cell::Int(h.into()),
            Cell::Float(x),
            Cell::Float(b.lower),
            Cell::Float(b.upper),
            Cell::Float(b.log_lower),
            Cell::Float(b.log_upper),
        ]);
    }
    Ok(t)
}

pub fn phi(dim: u32) -> Res<Table> {
    let poly = phi_polynomial(dim)?;
    let mut t = Table::new(["L", "power", "coefficient"]);
    for (i, c) in poly.coefficients().iter().enumerate() {
        if let Some(c) = c.to_biguint().filter(|c| *c != BigUint::ZERO) {
            t.push(vec![Cell::Int(dim.into()), Cell::Int(i as i128), Cell::big(&c)]);
        }
    }
    Ok(t)
}

pub fn albounds(dims: &[u32]) -> Res<Table> {
    let mut t = Table::new(["L", "d_prev", "lower", "upper"]);
    for &dim in dims {
        let b = al_bounds(dim)?;
        t.push(vec![
            Cell::Int(dim.into()),
            Cell::Int(degree_formula(dim - 1).into()),
            Cell::big(&b.lower),
            Cell::big(&b.upper),
        ]);
    }
    Ok(t)
}

pub fn critical(alphas: &[f64]) -> Res<Table> {
    let mut t = Table::new(["alpha", "x_star", "residual", "degenerate"]);
    for &a in alphas {
        let c = critical_x(a)?;
        t.push(vec![
            Cell::Float(a),
            Cell::Float(c.x_star),
            Cell::Float(c.residual),
            Cell::Bool(c.degenerate),
        ]);
    }
    Ok(t)
}

pub fn figure2(alphas: &[f64]) -> Res<Table> {
    let mut t = Table::new(["alpha", "x_star"]);
    for &a in alphas {
        t.push(vec![Cell::Float(a), Cell::Float(critical_x(a)?.x_star)]);
    }
    Ok(t)
}

pub fn expect(dim: u32, h: u32, xs: &[f64], budget: Option<u64>, workers: usize) -> Res<Table> {
    let counts = parallel::count_saw(dim, h, None, budget, workers)?;
    let mut t = Table::new(["L", "H", "x", "exact", "lower", "upper"]);
    for &x in xs {
        let b = eval_bounds(dim, h, x)?;
        t.push(vec![
            Cell::Int(dim.into()),
            Cell::Int(h.into()),
            Cell::Float(x),
            Cell::Float(expected_theta_from_counts(&counts, x)?),
            Cell::Float(b.lower),
            Cell::Float(b.upper),
        ]);
    }
    Ok(t)
}

pub fn averaged(dims: &[u32], xs: &[f64]) -> Res<Table> {
    let mut t = Table::new(["L", "x", "exact_sum", "closed_form", "ln_exact_sum", "ln_closed_form"]);
    for &dim in dims {
        for &x in xs {
            let a = averaged_expectation(dim, x)?;
            t.push(vec![
                Cell::Int(dim.into()),
                Cell::Float(x),
                Cell::Float(a.exact_sum),
                Cell::Float(a.closed_form),
                Cell::Float(a.ln_exact_sum),
                Cell::Float(a.ln_closed_form),
            ]);
        }
    }
    Ok(t)
}

pub fn convergence(dims: &[u32], hamming: impl Fn(u32) -> Res<Vec<u32>>, xs: &[f64]) -> Res<Table> {
    let mut t = Table::new(["L", "H", "x", "lower_root", "upper_root", "limit"]);
    for &dim in dims {
        for h in hamming(dim)? {
            for &x in xs {
                let d = limit_diagnostic(dim, h, x)?;
                t.push(vec![
                    Cell::Int(dim.into()),
                    Cell::Int(h.into()),
                    Cell::Float(x),
                    Cell::Float(d.lower_root),
                    Cell::Float(d.upper_root),
                    Cell::Float(d.limit),
                ]);
            }
        }
    }
    Ok(t)
}

/// Column layout shared by every simulation table.
pub const SIMULATION_COLUMNS: [&str; 14] = [
    "L",
    "mode",
    "H_or_NA",
    "x",
    "n_trials",
    "n_accessible",
    "p_hat",
    "std_err",
    "ci_lo",
    "ci_hi",
    "mean_theta",
    "saturated_frac",
    "root_seed",
    "theta_std_err",
];

/// Simulation rows; `x_star_ref` and the direct-path columns are added
/// when requested.
pub fn simulation_table(rows: &[(SimulationSummary, Option<f64>)], with_x_star: bool, direct: bool) -> Table {
    let mut cols: Vec<&str> = SIMULATION_COLUMNS.to_vec();
    if with_x_star {
        cols.push("x_star_ref");
    }
    if direct {
        cols.extend(["mean_theta_direct", "theta_direct_std_err"]);
    }
    let mut t = Table::new(cols);
    for (s, x_star) in rows {
        let mut row = vec![
            Cell::Int(s.dim.into()),
            Cell::text(s.mode),
            s.hamming.map_or(Cell::Na, |h| Cell::Int(h.into())),
            match s.start {
                StartFitness::Fixed(x) => Cell::Float(x),
                StartFitness::Uniform => Cell::text("uniform"),
            },
            Cell::Int(s.n_trials.into()),
            Cell::Int(s.n_accessible.into()),
            Cell::Float(s.p_hat),
            Cell::Float(s.std_err),
            Cell::Float(s.ci_lo),
            Cell::Float(s.ci_hi),
            Cell::Float(s.mean_theta),
            Cell::Float(s.saturated_frac),
            Cell::Int(s.root_seed.into()),
            Cell::Float(s.theta_std_err),
        ];
        if with_x_star {
            row.push(Cell::opt_float(*x_star));
        }
        if direct {
            row.push(Cell::opt_float(s.mean_theta_direct));
            row.push(Cell::opt_float(s.theta_direct_std_err));
        }
        t.push(row);
    }
    t
}

pub fn sweep_table(rows: &[SweepRow], direct: bool) -> Table {
    let rows: Vec<_> = rows.iter().map(|r| (r.summary.clone(), Some(r.x_star_ref))).collect();
    simulation_table(&rows, true, direct)
}

pub fn landscape_summary(ls: &FitnessLandscape) -> Table {
    let mut t = Table::new(["L", "mode", "H", "x", "root_seed", "trial_index", "fittest"]);
    t.push(vec![
        Cell::Int(ls.dim().into()),
        Cell::text(ls.mode()),
        Cell::Int(ls.fittest().weight().into()),
        Cell::Float(ls.start_fitness()),
        Cell::Int(ls.seed().root.into()),
        Cell::Int(ls.seed().index.into()),
        Cell::Int(ls.fittest().bits().into()),
    ]);
    t
}
