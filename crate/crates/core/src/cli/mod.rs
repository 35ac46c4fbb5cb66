//! The `specineq` command-line driver.

pub mod config;
pub mod report;
pub mod run;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::error::{invalid, Error, Result};
use crate::grid::Shape;
use crate::spectrum::ProblemKind;

pub use config::{DomainEntry, MeshConfig, RunConfig, ShapeSpec};
pub use run::{run_constants, run_curve, run_spectrum, run_verify, VerifyOutcome};

pub const OUTPUT_DIR_ENV: &str = "SPECINEQ_OUTPUT_DIR";

#[derive(Debug, Parser)]
#[command(name = "specineq", version, about = "Numerical checks of eigenvalue inequalities")]
pub struct Cli {
    /// Output directory (overrides the config file).
    #[arg(long, global = true, env = OUTPUT_DIR_ENV)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve the configured domains and evaluate the inequality catalog.
    Verify {
        config: PathBuf,
        /// Multiplier on every discretization allowance.
        #[arg(long, default_value_t = 1.0)]
        tolerance_scale: f64,
    },
    /// Tabulate c_n and d_n.
    Constants {
        /// Dimensions as `A..B` (inclusive) or `A,B,C`.
        #[arg(long, default_value = "2..8")]
        n: String,
    },
    /// Sample J(t)/Γ₁(B₁) of the two-ball problem.
    Curve {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 65)]
        points: usize,
    },
    /// Print a grid spectrum, its mesh levels and the extrapolation.
    Spectrum {
        /// `disk:R`, `ellipse:A,B`, `rectangle:A,B`, `lshape:S,ARM`, `annulus:RI,RO`, `polygon:x,y;...`
        #[arg(long)]
        shape: String,
        #[arg(long)]
        problem: ProblemKind,
        #[arg(long)]
        h: f64,
        #[arg(long, default_value_t = 2)]
        levels: usize,
        #[arg(long, default_value_t = 6)]
        m: usize,
    },
}

/// Parses `2..8` or `2,3,5`.
pub fn parse_dimensions(s: &str) -> Result<Vec<usize>> {
    let bad = || invalid(format!("cannot read dimensions `{s}`"));
    let list: Vec<usize> = if let Some((a, b)) = s.split_once("..") {
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        let b: usize = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
        (a..=b).collect()
    } else {
        s.split(',').map(|x| x.trim().parse().map_err(|_| bad())).collect::<Result<_>>()?
    };
    if list.is_empty() || list.iter().any(|n| *n < 2) {
        return Err(bad());
    }
    Ok(list)
}

fn dispatch(cli: Cli) -> Result<bool> {
    let out_or_cwd = || cli.out.clone().unwrap_or_else(|| PathBuf::from("."));
    match cli.command {
        Command::Verify { ref config, tolerance_scale } => {
            let mut cfg = RunConfig::load(config)?;
            if !(tolerance_scale.is_finite() && tolerance_scale >= 0.0) {
                return Err(invalid("--tolerance-scale must be nonnegative"));
            }
            cfg.tolerance_scale *= tolerance_scale;
            let dir = cli.out.clone().unwrap_or_else(|| cfg.output_dir.clone());
            let outcome = run_verify(&cfg, &dir)?;
            let s = &outcome.summary;
            println!(
                "proven: {} held, {} failed; conjecture: {} held, {} failed; informational: {} inside, {} outside",
                s.counts.proven_held,
                s.counts.proven_failed,
                s.counts.conjecture_held,
                s.counts.conjecture_failed,
                s.counts.informational_inside,
                s.counts.informational_outside
            );
            println!("chain rows: {}, violations: {}", s.chain_rows, s.chain_violations);
            for e in &s.errors {
                eprintln!("error in {}: {}", e.task, e.message);
            }
            for r in outcome.reports.iter().filter(|r| !r.holds && r.status == crate::catalog::Status::Proven) {
                eprintln!("FAILED {} on {} (m={:?}): slack {} < -{}", r.id, r.domain, r.m, r.slack, r.tolerance_used);
            }
            println!("reports written to {}", dir.display());
            Ok(s.ok)
        }
        Command::Constants { ref n } => {
            let rows = run_constants(&parse_dimensions(n)?)?;
            let p = run::write_constants_file(&out_or_cwd(), &rows)?;
            println!("{:>3} {:>14} {:>14} {:>8} {:>14}", "n", "c_n", "d_n", "t*", "J_endpoint");
            for r in &rows {
                println!("{:>3} {:>14.8} {:>14.8} {:>8.4} {:>14.6}", r.n, r.c_n, r.d_n, r.minimizer_t, r.j_endpoint);
            }
            println!("written to {}", p.display());
            Ok(true)
        }
        Command::Curve { n, points } => {
            let rows = run_curve(n, points)?;
            let p = run::write_curve_file(&out_or_cwd(), n, &rows)?;
            let failed = rows.iter().filter(|r| r.ratio.is_none()).count();
            println!("{} samples ({} failed) written to {}", rows.len(), failed, p.display());
            Ok(failed == 0)
        }
        Command::Spectrum { ref shape, problem, h, levels, m } => {
            let shape: Shape = shape.parse()?;
            let out = run_spectrum(&shape, problem, h, levels, m)?;
            let mut w = csv::Writer::from_writer(std::io::stdout().lock());
            w.write_record(["level", "h", "index", "value", "allowance"])?;
            for r in run::spectrum_table(&out) {
                w.write_record([r.level, report::num(r.h), r.index.to_string(), report::num(r.value), report::num(r.allowance)])?;
            }
            w.flush()?;
            Ok(true)
        }
    }
}

/// Runs the CLI on `args`: exit code 0 when every check passed, 1 when a
/// proven inequality failed or a task errored, 2 on usage or input errors.
pub fn main_with<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match dispatch(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            let _ = writeln!(std::io::stderr(), "specineq: {e}");
            match e {
                Error::Config(_) | Error::InvalidArgument(_) | Error::UnknownInequality(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
