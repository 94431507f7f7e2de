use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cubesum_core::{
    brute_force, derive_trace, render, solve, BigInt, SolutionSet, TraceFormat, Triple,
    TripleSystem,
};
use num_traits::Signed;

use crate::json::solution_set_to_json;
use crate::scan::{jsonl_sink, scan_grid, GridRange, ScanOptions};

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    /// Solver or IO failure after the arguments were accepted.
    pub const FAILURE: i32 = 1;
    /// Missing, malformed or out-of-range arguments.
    pub const USAGE: i32 = 2;
}

#[derive(Debug, Parser)]
#[command(
    name = "cubesum",
    version,
    about = "Integer solutions of X + Y + Z = s, X^3 + Y^3 + Z^3 = c"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve one system exactly.
    Solve {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Enumerate solutions inside a box by brute force.
    Oracle {
        #[command(flatten)]
        system: SystemArgs,
        /// Largest absolute coordinate value to try.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_bound)]
        bound: BigInt,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Print the step-by-step reduction.
    Trace {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, value_enum, default_value_t = TraceOutput::Plain)]
        format: TraceOutput,
    },
    /// Classify every system in a grid and write one JSON record per line.
    Scan {
        /// Inclusive range A:B of sums.
        #[arg(long, allow_hyphen_values = true)]
        sum_range: GridRange,
        /// Inclusive range A:B of cube sums.
        #[arg(long, allow_hyphen_values = true)]
        cubes_range: GridRange,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        jobs: u32,
        /// Include the solution triples in finite records.
        #[arg(long)]
        include_solutions: bool,
    },
}

#[derive(Debug, Args)]
pub struct SystemArgs {
    /// Target of X + Y + Z.
    #[arg(long = "sum", allow_hyphen_values = true)]
    pub s: BigInt,
    /// Target of X^3 + Y^3 + Z^3.
    #[arg(long = "cubes", allow_hyphen_values = true)]
    pub c: BigInt,
}

impl SystemArgs {
    fn system(&self) -> TripleSystem {
        TripleSystem::new(self.s.clone(), self.c.clone())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TraceOutput {
    Plain,
    Markdown,
    Json,
}

impl From<TraceOutput> for TraceFormat {
    fn from(f: TraceOutput) -> Self {
        match f {
            TraceOutput::Plain => TraceFormat::Plain,
            TraceOutput::Markdown => TraceFormat::Markdown,
            TraceOutput::Json => TraceFormat::Records,
        }
    }
}

fn parse_bound(text: &str) -> Result<BigInt, String> {
    let bound: BigInt = text.parse().map_err(|e| format!("{e}"))?;
    if bound.is_negative() {
        return Err("bound must be non-negative".to_string());
    }
    Ok(bound)
}

pub const NO_SOLUTIONS: &str = "no solutions";

/// Text rendering: one triple per line, or an explicit marker.
pub fn solution_text(set: &SolutionSet) -> String {
    match set {
        SolutionSet::Finite(triples) => finite_text(triples),
        SolutionSet::InfiniteFamily { anchor } => {
            format!("infinite family: all permutations of ({anchor}, t, -t) for every integer t\n")
        }
    }
}

fn finite_text(triples: &[Triple]) -> String {
    if triples.is_empty() {
        return format!("{NO_SOLUTIONS}\n");
    }
    triples.iter().map(|t| format!("{t}\n")).collect()
}

fn print_set(out: &mut dyn Write, set: &SolutionSet, format: OutputFormat) -> io::Result<()> {
    match format {
        OutputFormat::Text => out.write_all(solution_text(set).as_bytes()),
        OutputFormat::Json => writeln!(out, "{}", solution_set_to_json(set)),
    }
}

#[derive(Debug, thiserror::Error)]
enum Failure {
    #[error(transparent)]
    Solver(#[from] cubesum_core::Error),
    #[error(transparent)]
    Scan(#[from] crate::scan::ScanError),
    #[error("{path}: {source}")]
    Open { path: PathBuf, source: io::Error },
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Parses `args` (program name first) and runs the command. Results go to
/// `out`, diagnostics to stderr. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() {
                exit::USAGE
            } else {
                exit::OK
            };
        }
    };
    match execute(cli.command, out) {
        Ok(()) => exit::OK,
        Err(err) => {
            eprintln!("error: {err}");
            exit::FAILURE
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::Solve { system, format } => {
            let set = solve(&system.system())?;
            print_set(out, &set, format)?;
        }
        Command::Oracle {
            system,
            bound,
            format,
        } => {
            let set = SolutionSet::Finite(brute_force(&system.system(), &bound));
            print_set(out, &set, format)?;
        }
        Command::Trace { system, format } => {
            let trace = derive_trace(&system.system())?;
            out.write_all(render(&trace, format.into()).as_bytes())?;
        }
        Command::Scan {
            sum_range,
            cubes_range,
            out: path,
            jobs,
            include_solutions,
        } => {
            let file = File::create(&path).map_err(|source| Failure::Open {
                path: path.clone(),
                source,
            })?;
            let mut writer = BufWriter::new(file);
            let options = ScanOptions {
                sums: sum_range,
                cubes: cubes_range,
                workers: jobs as usize,
                include_solutions,
            };
            let summary = scan_grid(&options, jsonl_sink(&mut writer))?;
            writer.flush()?;
            writeln!(out, "{summary} -> {}", path.display())?;
        }
    }
    out.flush()?;
    Ok(())
}
