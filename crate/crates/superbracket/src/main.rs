use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use superbracket::expr_io::{max_index, parse_expression};
use superbracket::structure::StructureFile;
use superbracket::suites::{self, Config, SelftestOptions};
use superbracket_core::{dft, Chart, ChartMode, VerificationReport};

/// Exact graded Poisson algebra, Courant algebroids and double field theory
/// brackets.
#[derive(Parser)]
#[command(name = "superbracket", version)]
struct Cli {
    /// Print wall-clock time per suite (output is then no longer reproducible).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the canonical Poisson bracket {A, B}.
    Bracket {
        /// Expression or path to a file containing one.
        a: String,
        /// Expression or path to a file containing one.
        b: String,
        /// Use the doubled chart (x, xt, p, pt, xi, xis).
        #[arg(long, conflicts_with = "dual")]
        doubled: bool,
        /// Use the dual chart (x, xs, th, ths).
        #[arg(long)]
        dual: bool,
        /// Base dimension; inferred from the largest index when omitted.
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Compare the derived C-bracket of two section files with its component formula.
    Cbracket { a: String, b: String },
    /// Run one verification suite.
    Check {
        kind: Kind,
        /// Structure files required by the suite.
        files: Vec<String>,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 2)]
        degree: usize,
        #[arg(long, default_value_t = 10)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run every suite with fixed seeds.
    Selftest {
        /// Fewer samples per suite.
        #[arg(long)]
        quick: bool,
        /// Corrupt the odd sign table of the Poisson-law suites; the run must fail.
        #[arg(long)]
        inject_fault: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Bialgebroid,
    Courant,
    Proto,
    Cbracket,
    Strong,
    Project,
    Genlie,
    Metric,
}

/// Input problems; reported on stderr with exit code 2.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

fn read_file(path: &str) -> Result<String, UsageError> {
    std::fs::read_to_string(path).map_err(|e| UsageError(format!("{path}: {e}")))
}

fn file_or_literal(arg: &str) -> Result<String, UsageError> {
    if Path::new(arg).is_file() {
        read_file(arg)
    } else {
        Ok(arg.to_string())
    }
}

fn structure(path: &str) -> Result<StructureFile, UsageError> {
    StructureFile::parse(&read_file(path)?).map_err(|e| UsageError(format!("{path}: {e}")))
}

fn one_file(files: &[String], kind: &str) -> Result<StructureFile, UsageError> {
    match files {
        [f] => structure(f),
        _ => Err(UsageError(format!("check {kind} takes exactly one structure file"))),
    }
}

fn emit(reports: &[VerificationReport]) -> bool {
    let mut ok = true;
    for r in reports {
        println!("{r}");
        ok &= r.passed();
    }
    ok
}

fn bracket(a: &str, b: &str, mode: ChartMode, dim: Option<usize>) -> Result<bool, UsageError> {
    let fa = parse_expression(&file_or_literal(a)?, None)?;
    let fb = parse_expression(&file_or_literal(b)?, None)?;
    let dim = dim.unwrap_or_else(|| max_index([&fa, &fb]).max(1));
    if dim == 0 {
        return Err(UsageError("dimension must be positive".into()));
    }
    let result = Chart::new(dim, mode).poisson(&fa, &fb)?;
    println!("{result}");
    Ok(true)
}

fn cbracket(a: &str, b: &str) -> Result<bool, UsageError> {
    let (fa, fb) = (structure(a)?, structure(b)?);
    let (s1, s2) = (fa.section(), fb.section());
    let derived = dft::c_bracket(&s1, &s2)?;
    let rows = dft::c_bracket_components(&s1, &s2)?;
    let components = dft::lift_double(&rows)?;
    let difference = &derived - &components;
    println!("derived = {derived}");
    println!("components = {components}");
    for (i, e) in rows.vector.iter().enumerate() {
        println!("vector[{}] = {e}", i + 1);
    }
    for (i, e) in rows.form.iter().enumerate() {
        println!("form[{}] = {e}", i + 1);
    }
    println!("difference = {difference}");
    Ok(difference.is_zero())
}

fn check(kind: Kind, files: &[String], cfg: Config) -> Result<Vec<VerificationReport>, UsageError> {
    if cfg.dim == 0 {
        return Err(UsageError("--dim must be positive".into()));
    }
    let no_files = |name: &str| {
        if files.is_empty() {
            Ok(())
        } else {
            Err(UsageError(format!("check {name} takes no files")))
        }
    };
    Ok(match kind {
        Kind::Bialgebroid => suites::bialgebroid(&one_file(files, "bialgebroid")?.bialgebroid()?),
        Kind::Courant => suites::courant(&one_file(files, "courant")?.bialgebroid()?, cfg),
        Kind::Proto => {
            let f = one_file(files, "proto")?;
            suites::proto(&f.bialgebroid()?, &f.flux()?)?
        }
        Kind::Cbracket => {
            no_files("cbracket")?;
            suites::cbracket(cfg)
        }
        Kind::Strong => {
            no_files("strong")?;
            suites::strong(cfg)
        }
        Kind::Project => {
            no_files("project")?;
            suites::project(cfg)
        }
        Kind::Genlie => {
            no_files("genlie")?;
            suites::genlie(cfg)
        }
        Kind::Metric => match files {
            [] => suites::metric(cfg),
            [f] => {
                let (g, b) = structure(f)?.metric()?;
                suites::metric_given(&g, &b)?
            }
            _ => return Err(UsageError("check metric takes at most one file".into())),
        },
    })
}

fn run(cli: Cli) -> Result<bool, UsageError> {
    let started = Instant::now();
    let ok = match cli.command {
        Command::Bracket {
            a,
            b,
            doubled,
            dual,
            dim,
        } => {
            let mode = if doubled {
                ChartMode::Doubled
            } else if dual {
                ChartMode::Dual
            } else {
                ChartMode::Base
            };
            bracket(&a, &b, mode, dim)?
        }
        Command::Cbracket { a, b } => cbracket(&a, &b)?,
        Command::Check {
            kind,
            files,
            dim,
            degree,
            samples,
            seed,
        } => emit(&check(kind, &files, Config::new(dim, degree, samples, seed))?),
        Command::Selftest { quick, inject_fault } => {
            let mut ok = true;
            let opts = SelftestOptions { quick, inject_fault };
            for (group, reports) in suites::selftest_groups(opts) {
                let t = Instant::now();
                let reports = reports();
                ok &= emit(&reports);
                if cli.timing {
                    println!("TIME {group}: {} ms", t.elapsed().as_millis());
                }
            }
            ok
        }
    };
    if cli.timing {
        println!("TIME total: {} ms", started.elapsed().as_millis());
    }
    Ok(ok)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
