//! Argument parsing and command dispatch.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::time::Instant;

use accessperc_core::montecarlo::TrialSpec;
use accessperc_core::{FitnessLandscape, PlacementMode, Seed, StartFitness};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::commands::{self, parse_values};
use crate::format::{Format, Table};
use crate::{dump, parallel, AppError};

#[derive(Debug, Parser)]
#[command(name = "accessperc", version, about = "Accessibility percolation on the hypercube")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write the table to this file instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Worker threads; 0 uses every core. Results do not depend on it.
    #[arg(long, global = true, default_value_t = 0)]
    pub workers: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Corner,
    #[value(name = "fixedH")]
    FixedH,
    Uniform,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BoundTable {
    Majo,
    Mino,
}

/// `--L` / `--H` for commands on a single endpoint; `H` defaults to `L`.
#[derive(Debug, Clone, Args)]
pub struct Endpoint {
    #[arg(long = "L")]
    pub l: u32,
    #[arg(long = "H")]
    pub h: Option<u32>,
}

impl Endpoint {
    fn hamming(&self) -> u32 {
        self.h.unwrap_or(self.l)
    }
}

/// Start fitness as a single value or list (`--x`) or a grid (`--x-grid`).
#[derive(Debug, Clone, Args)]
pub struct XValues {
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
    #[arg(long = "x-grid", value_name = "A:B:STEP", conflicts_with = "x")]
    pub x_grid: Option<String>,
}

impl XValues {
    fn values(&self, default: Option<&str>) -> Result<Vec<f64>, AppError> {
        match (&self.x, &self.x_grid, default) {
            (Some(s), _, _) | (None, Some(s), _) => parse_values(s),
            (None, None, Some(d)) => parse_values(d),
            (None, None, None) => Err(AppError::Usage("one of --x or --x-grid is required".into())),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct Sampling {
    /// Trials per configuration.
    #[arg(long, default_value_t = 10_000)]
    pub trials: u64,
    /// Root seed; trial `i` uses the stream `(seed, i)`.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Also count the open paths of minimal length.
    #[arg(long)]
    pub direct: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact self-avoiding path counts a_{L,H,p}.
    Enumerate {
        #[command(flatten)]
        end: Endpoint,
        #[arg(long = "max-p")]
        max_p: Option<u32>,
        /// Abort after expanding this many search nodes.
        #[arg(long = "budget-leaves")]
        budget: Option<u64>,
    },
    /// Counts of the recursive m-set, or the paths themselves with --list.
    Mset {
        #[command(flatten)]
        end: Endpoint,
        #[arg(long)]
        list: bool,
    },
    /// Bounds on the expected number of open paths, or the M / m~ tables.
    Bounds {
        #[command(flatten)]
        end: Endpoint,
        #[command(flatten)]
        xs: XValues,
        #[arg(long, value_enum)]
        table: Option<BoundTable>,
        #[arg(long = "max-p", default_value_t = 6)]
        max_p: u32,
    },
    /// Coefficients of the phi_L polynomial.
    Phi {
        #[arg(long = "L")]
        l: u32,
    },
    /// Lower and upper bounds on the number of corner-to-corner paths.
    Albounds {
        #[arg(long = "L", value_delimiter = ',', required = true)]
        l: Vec<u32>,
    },
    /// Critical start fitness x*_alpha.
    Critical {
        /// A value, list or a:b:step grid.
        #[arg(long)]
        alpha: String,
    },
    /// Exact expected number of open paths next to its bounds.
    Expect {
        #[command(flatten)]
        end: Endpoint,
        #[command(flatten)]
        xs: XValues,
        #[arg(long = "budget-leaves")]
        budget: Option<u64>,
    },
    /// The averaged-expectation identity.
    Averaged {
        #[arg(long = "L", value_delimiter = ',', required = true)]
        l: Vec<u32>,
        #[command(flatten)]
        xs: XValues,
    },
    /// Monte Carlo estimate of the accessibility probability.
    Simulate {
        #[arg(long = "L")]
        l: u32,
        #[arg(long = "H")]
        h: Option<u32>,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        /// Start fitness: a value, a list, or `uniform`.
        #[arg(long)]
        x: Option<String>,
        #[arg(long = "x-grid", value_name = "A:B:STEP", conflicts_with = "x")]
        x_grid: Option<String>,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Accessibility curves for several L (opposite corner), or for several H
    /// at one L when --H is given.
    Figure1 {
        #[arg(long = "L", value_delimiter = ',', default_value = "8,12,16,20,24")]
        l: Vec<u32>,
        #[arg(long = "H", value_delimiter = ',')]
        h: Vec<u32>,
        #[arg(long = "x-grid", value_name = "A:B:STEP", default_value = "0:0.5:0.025")]
        x_grid: String,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// The critical curve alpha -> x*_alpha.
    Figure2 {
        #[arg(long, default_value = "0:1:0.01")]
        alpha: String,
    },
    /// L-th roots of the bounds next to their large-L limit.
    Convergence {
        #[arg(long = "L", value_delimiter = ',', default_value = "100,200,400,800")]
        l: Vec<u32>,
        #[arg(long = "H", value_delimiter = ',', conflicts_with = "alpha")]
        h: Vec<u32>,
        /// Use H = round(alpha L) at each L.
        #[arg(long)]
        alpha: Option<f64>,
        #[command(flatten)]
        xs: XValues,
    },
    /// Writes one sampled landscape to --out, or summarizes a dump with --read.
    Landscape {
        #[arg(long = "L", required_unless_present = "read")]
        l: Option<u32>,
        #[arg(long = "H")]
        h: Option<u32>,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        #[arg(long, default_value = "0")]
        x: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Trial index within the seed.
        #[arg(long, default_value_t = 0)]
        index: u64,
        #[arg(long, value_name = "FILE", conflicts_with_all = ["l", "mode", "h"])]
        read: Option<PathBuf>,
    },
}

fn placement(mode: Option<ModeArg>, h: Option<u32>) -> Result<PlacementMode, AppError> {
    match (mode, h) {
        (None | Some(ModeArg::FixedH), Some(h)) => Ok(PlacementMode::FixedHamming(h)),
        (None | Some(ModeArg::Corner), None) => Ok(PlacementMode::OppositeCorner),
        (Some(ModeArg::Uniform), None) => Ok(PlacementMode::UniformRandom),
        (Some(ModeArg::FixedH), None) => Err(AppError::Usage("--mode fixedH needs --H".into())),
        (Some(_), Some(_)) => Err(AppError::Usage("--H only applies to --mode fixedH".into())),
    }
}

/// Parsed output of a command.
pub enum Output {
    Table(Table),
    /// A table that goes to standard output even when --out names a file,
    /// because --out already received the command's binary product.
    Summary(Table),
}

/// Runs a parsed command.
pub fn execute(cli: &Cli) -> Result<Output, AppError> {
    let workers = cli.workers;
    let table = match &cli.command {
        Command::Enumerate { end, max_p, budget } => {
            commands::enumerate(end.l, end.hamming(), *max_p, *budget, workers)?
        }
        Command::Mset { end, list } => {
            if *list {
                commands::mset_list(end.l, end.hamming())?
            } else {
                commands::mset(end.l, end.hamming())?
            }
        }
        Command::Bounds { end, xs, table, max_p } => match table {
            Some(BoundTable::Majo) => commands::majo(end.l, end.hamming(), *max_p)?,
            Some(BoundTable::Mino) => commands::mino(end.l, end.hamming(), *max_p)?,
            None => commands::bounds(end.l, end.hamming(), &xs.values(None)?)?,
        },
        Command::Phi { l } => commands::phi(*l)?,
        Command::Albounds { l } => commands::albounds(l)?,
        Command::Critical { alpha } => commands::critical(&parse_values(alpha)?)?,
        Command::Expect { end, xs, budget } => {
            commands::expect(end.l, end.hamming(), &xs.values(None)?, *budget, workers)?
        }
        Command::Averaged { l, xs } => commands::averaged(l, &xs.values(None)?)?,
        Command::Simulate { l, h, mode, x, x_grid, sampling } => {
            simulate(*l, placement(*mode, *h)?, x.as_deref(), x_grid.as_deref(), sampling, workers)?
        }
        Command::Figure1 { l, h, x_grid, sampling } => {
            let grid = parse_values(x_grid)?;
            let rows = if h.is_empty() {
                parallel::figure1_sweep(l, &grid, sampling.trials, sampling.seed, workers, sampling.direct)?
            } else {
                let [dim] = l.as_slice() else {
                    return Err(AppError::Usage("figure1 with --H takes a single --L".into()));
                };
                parallel::hamming_conditional_sweep(
                    *dim,
                    h,
                    &grid,
                    sampling.trials,
                    sampling.seed,
                    workers,
                    sampling.direct,
                )?
            };
            commands::sweep_table(&rows, sampling.direct)
        }
        Command::Figure2 { alpha } => commands::figure2(&parse_values(alpha)?)?,
        Command::Convergence { l, h, alpha, xs } => {
            let xs = xs.values(None)?;
            commands::convergence(
                l,
                |dim| match (alpha, h.is_empty()) {
                    (Some(a), _) => {
                        if !(0.0..=1.0).contains(a) {
                            return Err(accessperc_core::Error::AlphaOutOfRange(*a).into());
                        }
                        Ok(vec![(a * f64::from(dim)).round() as u32])
                    }
                    (None, true) => Ok(vec![dim]),
                    (None, false) => Ok(h.clone()),
                },
                &xs,
            )?
        }
        Command::Landscape { l, h, mode, x, seed, index, read } => {
            if let Some(path) = read {
                let ls = dump::read_landscape(std::io::BufReader::new(File::open(path)?))?;
                return Ok(Output::Table(commands::landscape_summary(&ls)));
            }
            let dim = l.expect("clap requires --L without --read");
            let start: StartFitness = x.parse()?;
            let ls = FitnessLandscape::generate(dim, placement(*mode, *h)?, start, Seed::new(*seed, *index))?;
            let Some(out) = &cli.out else {
                return Err(AppError::Usage("landscape needs --out FILE for the dump".into()));
            };
            dump::write_landscape(BufWriter::new(File::create(out)?), &ls)?;
            return Ok(Output::Summary(commands::landscape_summary(&ls)));
        }
    };
    Ok(Output::Table(table))
}

fn simulate(
    dim: u32,
    mode: PlacementMode,
    x: Option<&str>,
    x_grid: Option<&str>,
    sampling: &Sampling,
    workers: usize,
) -> Result<Table, AppError> {
    let base = |start| TrialSpec::new(dim, mode, start).with_direct(sampling.direct);
    let summaries = match (x, x_grid) {
        (Some(s), None) if s.trim() == "uniform" => vec![parallel::estimate(
            &base(StartFitness::Uniform),
            sampling.trials,
            sampling.seed,
            workers,
        )?],
        (Some(s), None) | (None, Some(s)) => parallel::estimate_grid(
            &base(StartFitness::Fixed(0.0)),
            &parse_values(s)?,
            sampling.trials,
            sampling.seed,
            workers,
        )?,
        (None, None) => return Err(AppError::Usage("simulate needs --x or --x-grid".into())),
        (Some(_), Some(_)) => unreachable!("clap rejects --x with --x-grid"),
    };
    let rows: Vec<_> = summaries.into_iter().map(|s| (s, None)).collect();
    Ok(commands::simulation_table(&rows, false, sampling.direct))
}

/// Runs a command line and renders its table as a string.
pub fn render<I, T>(args: I) -> Result<String, AppError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| AppError::Usage(e.to_string()))?;
    match execute(&cli)? {
        Output::Table(t) | Output::Summary(t) => t.to_string(cli.format),
    }
}

/// Full program: parse, run, write, and return the exit status.
pub fn main_with_args<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return u8::try_from(e.exit_code()).unwrap_or(2);
        }
    };
    let started = Instant::now();
    let result = execute(&cli).and_then(|output| match output {
        Output::Table(t) => match &cli.out {
            Some(path) => t.write(cli.format, BufWriter::new(File::create(path)?)),
            None => write_stdout(&t, cli.format),
        },
        Output::Summary(t) => write_stdout(&t, cli.format),
    });
    match result {
        Ok(()) => {
            eprintln!("wall_time={:.3}s", started.elapsed().as_secs_f64());
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn write_stdout(t: &Table, format: Format) -> Result<(), AppError> {
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    t.write(format, &mut lock)?;
    lock.flush()?;
    Ok(())
}
