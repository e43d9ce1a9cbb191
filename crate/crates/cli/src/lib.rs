//! The `bianchi` command line.
//!
//! Exit status is 0 on success, 1 when a check against published values
//! fails and 2 on unreadable or invalid input.

pub mod fixtures;
pub mod reproduce;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use anyhow::{Context, Result};
use bianchi_core::enumerate::{DEFAULT_ORDER_CAP, HARD_ORDER_LIMIT};
use bianchi_core::liealg::parse_constants_file;
use bianchi_core::resonance::parse_label_list;
use bianchi_core::{
    classify3, complete, enumerate_semigroups, find_resonances, parse_problem, parse_table, pipeline, raw_completions,
    s_expand, scan, zero_reduce, CensusRequest, Convention, Grading, ResonantDecomposition, ScanOptions, StartAlgebra,
    StartSet,
};
use clap::{Parser, Subcommand};

pub use fixtures::Fixtures;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "bianchi",
    version,
    about = "Semigroup census, S-expansion and Bianchi classification"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List semigroups of one order up to isomorphism.
    Enumerate {
        #[arg(long)]
        order: usize,
        /// Only commutative tables.
        #[arg(long)]
        abelian: bool,
        #[arg(long, default_value = "iso")]
        convention: Convention,
        /// Write one table file per class plus a MANIFEST.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Permit order 6 (about 16 thousand classes).
        #[arg(long)]
        allow_order6: bool,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Bianchi type of a 3-dimensional structure-constants file.
    Classify { file: PathBuf },
    /// Expand a 2-dimensional algebra by a semigroup.
    Expand {
        #[arg(long, value_parser = parse_start)]
        algebra: StartAlgebra,
        #[arg(long)]
        semigroup: PathBuf,
        #[arg(long, requires = "s1")]
        s0: Option<String>,
        #[arg(long, requires = "s0")]
        s1: Option<String>,
        /// Remove the zero-labeled sector afterwards.
        #[arg(long)]
        reduce: bool,
    },
    /// All resonant decompositions of a table.
    Resonances { file: PathBuf },
    /// Solve a template problem file.
    Complete { file: PathBuf },
    /// Check the published tables, witnesses and classifications.
    Reproduce,
    /// Classify every expansion of the abelian census up to an order.
    Scan {
        #[arg(long)]
        max_order: usize,
        #[arg(long, default_value = "both", value_parser = parse_start_set)]
        start: StartSet,
        #[arg(long)]
        workers: Option<usize>,
        /// Print every run, not just the summary.
        #[arg(long)]
        records: bool,
    },
}

fn parse_start(s: &str) -> Result<StartAlgebra, String> {
    s.parse()
}

fn parse_start_set(s: &str) -> Result<StartSet, String> {
    s.parse()
}

/// Failure of a command, mapped to an exit status.
#[derive(Debug)]
pub enum Failure {
    Mismatch(String),
    Input(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

/// Parses `args` (program name first) and runs the command, writing the
/// report to `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_INPUT;
            }
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
    };
    match execute(cli.command, &Fixtures::from_env(), out) {
        Ok(()) => EXIT_OK,
        Err(Failure::Mismatch(msg)) => {
            let _ = writeln!(err, "mismatch: {msg}");
            EXIT_MISMATCH
        }
        Err(Failure::Input(e)) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_INPUT
        }
    }
}

fn read(path: &PathBuf) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn io(r: std::io::Result<()>) -> Result<(), Failure> {
    r.context("writing output").map_err(Failure::Input)
}

pub fn execute(command: Command, fx: &Fixtures, out: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::Enumerate {
            order,
            abelian,
            convention,
            out: dir,
            allow_order6,
            workers,
        } => {
            let cap = if allow_order6 {
                HARD_ORDER_LIMIT
            } else {
                DEFAULT_ORDER_CAP
            };
            let mut req = CensusRequest::new(order)
                .abelian(abelian)
                .convention(convention)
                .allow_up_to(cap);
            if let Some(w) = workers {
                req = req.workers(w);
            }
            let tables = enumerate_semigroups(&req).map_err(anyhow::Error::from)?;
            let manifest = format!(
                "order={order} abelian={abelian} convention={convention} count={}",
                tables.len()
            );
            if let Some(dir) = dir {
                fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
                for (rank, t) in tables.iter().enumerate() {
                    let path = dir.join((rank + 1).to_string());
                    fs::write(&path, t.to_string()).with_context(|| format!("writing {}", path.display()))?;
                }
                let path = dir.join("MANIFEST");
                fs::write(&path, format!("{manifest}\n")).with_context(|| format!("writing {}", path.display()))?;
            }
            io(writeln!(out, "{manifest}"))
        }
        Command::Classify { file } => {
            let g = parse_constants_file(&read(&file)?).with_context(|| file.display().to_string())?;
            let b = classify3(&g).context("classification")?;
            io(writeln!(out, "{b}"))
        }
        Command::Expand {
            algebra,
            semigroup,
            s0,
            s1,
            reduce,
        } => {
            let t = parse_table(&read(&semigroup)?).with_context(|| semigroup.display().to_string())?;
            let g = algebra.algebra();
            let result = match (s0, s1) {
                (Some(s0), Some(s1)) => {
                    let d = ResonantDecomposition::from_masks(
                        parse_label_list(&s0).map_err(anyhow::Error::from)?,
                        parse_label_list(&s1).map_err(anyhow::Error::from)?,
                    );
                    pipeline(&g, &Grading::planar(), &t, &d, reduce).map_err(anyhow::Error::from)?
                }
                _ => {
                    let full = s_expand(&g, &t).map_err(anyhow::Error::from)?;
                    if reduce {
                        let z = t.find_zero().context("the semigroup has no zero element")?;
                        zero_reduce(&full, z).map_err(anyhow::Error::from)?
                    } else {
                        full
                    }
                }
            };
            io(write!(out, "{}", result.render()))?;
            if result.dim() == 3 {
                let b = classify3(result.algebra()).context("classification")?;
                io(writeln!(out, "type: {b}"))?;
            }
            Ok(())
        }
        Command::Resonances { file } => {
            let t = parse_table(&read(&file)?).with_context(|| file.display().to_string())?;
            for d in find_resonances(&t) {
                io(writeln!(out, "{d}"))?;
            }
            Ok(())
        }
        Command::Complete { file } => {
            let p = parse_problem(&read(&file)?).with_context(|| file.display().to_string())?;
            let raw = raw_completions(&p).map_err(anyhow::Error::from)?;
            let classes = complete(&p).map_err(anyhow::Error::from)?;
            io(writeln!(
                out,
                "candidates={} raw={} classes={}",
                p.candidate_count(),
                raw.len(),
                classes.len()
            ))?;
            for (i, t) in classes.iter().enumerate() {
                io(write!(out, "# class {}\n{t}", i + 1))?;
            }
            Ok(())
        }
        Command::Reproduce => {
            let report = reproduce::reproduce(fx)?;
            io(write!(out, "{}", report.text()))?;
            if report.ok() {
                Ok(())
            } else {
                Err(Failure::Mismatch(report.failures.join("; ")))
            }
        }
        Command::Scan {
            max_order,
            start,
            workers,
            records,
        } => {
            let opts = ScanOptions {
                max_order,
                start,
                workers,
            };
            let result = scan(&opts).map_err(anyhow::Error::from)?;
            if records {
                for rec in &result.records {
                    io(writeln!(out, "{rec}"))?;
                }
            }
            io(write!(out, "{}", result.summary()))?;
            match result.check() {
                Ok(()) => Ok(()),
                Err(bad) => {
                    for line in &bad {
                        io(writeln!(out, "{line}"))?;
                    }
                    Err(Failure::Mismatch(format!("{} scan violations", bad.len())))
                }
            }
        }
    }
}
