//! `holevo`: evaluate generalized Holevo quantities and accessible
//! information from the command line.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 unreadable input or bad flags,
//! 3 input that is not a valid ensemble, 4 input of an unsupported
//! dimension.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use holevo::experiments::{
    figure1, figure1_csv, figure2, figure2_csv, fuzz, verify_properties, FuzzConfig, RunReport, DEFAULT_TOL,
};
use holevo::io::read_ensemble;
use holevo::{dbhq, gai, DistanceNotion, Divergence, Error, OptimizerConfig};

#[derive(Parser)]
#[command(name = "holevo", version, about = "Generalized Holevo quantities and accessible information")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Notion {
    Kolmogorov,
    ProbError,
    Bhattacharyya,
    RelativeEntropy,
    Qjsd,
}

impl From<Notion> for DistanceNotion {
    fn from(n: Notion) -> Self {
        match n {
            Notion::Kolmogorov => DistanceNotion::Kolmogorov,
            Notion::ProbError => DistanceNotion::ProbError,
            Notion::Bhattacharyya => DistanceNotion::Bhattacharyya,
            Notion::RelativeEntropy => DistanceNotion::RelativeEntropy,
            Notion::Qjsd => DistanceNotion::Qjsd,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
}

#[derive(clap::Args)]
struct OptimizerArgs {
    /// Search grid as AZIMUTHxPOLAR.
    #[arg(long, default_value = "128x64", value_parser = parse_grid)]
    grid: (usize, usize),
    /// Rotates the refinement simplex; 0 leaves it axis-aligned.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl OptimizerArgs {
    fn config(&self) -> OptimizerConfig {
        OptimizerConfig {
            azimuth_steps: self.grid.0,
            polar_steps: self.grid.1,
            seed: self.seed,
            ..OptimizerConfig::default()
        }
    }
}

fn parse_grid(s: &str) -> Result<(usize, usize), String> {
    let (a, p) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected AZIMUTHxPOLAR, got {s:?}"))?;
    let a: usize = a.trim().parse().map_err(|e| format!("azimuth steps: {e}"))?;
    let p: usize = p.trim().parse().map_err(|e| format!("polar steps: {e}"))?;
    if a < 1 || p < 2 {
        return Err("grid needs at least 1 azimuth step and 2 polar steps".into());
    }
    Ok((a, p))
}

#[derive(Subcommand)]
enum Command {
    /// Print the distance-based Holevo quantity of an ensemble.
    Dbhq {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, value_enum)]
        notion: Notion,
    },
    /// Optimize over qubit von Neumann measurements.
    Gai {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, value_enum)]
        notion: Notion,
        #[command(flatten)]
        optimizer: OptimizerArgs,
        /// Simplex radius at convergence.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Check the inequalities on seeded random ensembles and measurements.
    Fuzz {
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Restrict to these notions (repeatable); all five by default.
        #[arg(long, value_enum)]
        notion: Vec<Notion>,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        /// Add wall time to the summary; the report is then not reproducible.
        #[arg(long)]
        timing: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the curves of the two-pure-state family as CSV.
    Figure {
        #[arg(value_enum)]
        which: Which,
        #[arg(long, default_value_t = 0.5)]
        p_hat: f64,
        #[arg(long, default_value_t = 181)]
        theta_steps: usize,
        #[command(flatten)]
        optimizer: OptimizerArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check monotonicity, restricted additivity and the block-diagonal identity.
    VerifyProperties {
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug)]
enum Failure {
    Lib(Error),
    Write(PathBuf, std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Write(..) | Failure::Lib(Error::Io { .. }) => 1,
            Failure::Lib(Error::Parse { .. } | Error::Format(_) | Error::OutOfRange(_)) => 2,
            Failure::Lib(Error::UnsupportedDimension(_)) => 4,
            Failure::Lib(_) => 3,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Lib(e) => write!(f, "{e}"),
            Failure::Write(path, e) => write!(f, "cannot write {}: {e}", path.display()),
        }
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Write(path.clone(), e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn format_value(d: Divergence) -> String {
    match d {
        Divergence::Finite(x) => format!("{x:.12}"),
        Divergence::Infinite => "inf".into(),
    }
}

fn command_echo() -> Vec<String> {
    std::iter::once("holevo".to_string())
        .chain(std::env::args().skip(1))
        .collect()
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Dbhq { file, notion } => {
            let e = read_ensemble(&file)?;
            println!("{}", format_value(dbhq(&e, notion.into())));
        }
        Command::Gai {
            file,
            notion,
            optimizer,
            tol,
        } => {
            let e = read_ensemble(&file)?;
            let cfg = OptimizerConfig {
                x_tol: tol,
                ..optimizer.config()
            };
            let r = gai(&e, notion.into(), &cfg)?;
            println!("value {:.12}", r.value);
            println!("axis {:.12} {:.12} {:.12}", r.axis[0], r.axis[1], r.axis[2]);
            println!("direction {}", r.direction);
            println!("iterations {}", r.iterations);
        }
        Command::Fuzz {
            trials,
            seed,
            notion,
            dim,
            tol,
            timing,
            out,
        } => {
            let start = Instant::now();
            let notions = if notion.is_empty() {
                DistanceNotion::ALL.to_vec()
            } else {
                notion.into_iter().map(Into::into).collect()
            };
            let cfg = FuzzConfig {
                trials,
                seed,
                notions,
                dim,
                tol,
                ..FuzzConfig::default()
            };
            let mut report = RunReport::new(command_echo(), fuzz(&cfg)?);
            if timing {
                report = report.with_wall_time(start.elapsed().as_secs_f64());
            }
            emit(&(report.to_json() + "\n"), out.as_ref())?;
        }
        Command::Figure {
            which,
            p_hat,
            theta_steps,
            optimizer,
            out,
        } => {
            let cfg = optimizer.config();
            let csv = match which {
                Which::One => figure1_csv(&figure1(p_hat, theta_steps, &cfg)?),
                Which::Two => figure2_csv(&figure2(p_hat, theta_steps, &cfg)?),
            };
            emit(&csv, out.as_ref())?;
        }
        Command::VerifyProperties {
            trials,
            seed,
            tol,
            out,
        } => {
            let report = RunReport::new(command_echo(), verify_properties(trials, seed, tol)?);
            emit(&(report.to_json() + "\n"), out.as_ref())?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(failure.exit_code())
        }
    }
}
