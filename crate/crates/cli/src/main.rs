//! `moco-supported`: classify, cross-check and visualize the non-dominated
//! points of multi-objective outcome sets.
//!
//! Exit codes: 0 success, 2 invalid input or request, 3 a proven equivalence
//! failed on the given instance.

mod report;
mod svg;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use moco_supported::classifier::ensure_consistent;
use moco_supported::instances::{random_assignment, random_knapsack, random_points};
use moco_supported::{
    analyze, decompose, dichotomic_extremes, lift_zero_objective, parse_instance, serialize_instance,
    EnumerationCap, Error, Instance, OutcomeSet,
};

use report::{vector, verdict_table, Report};

#[derive(Parser)]
#[command(name = "moco-supported", version, about = "Exact supportedness classification of non-dominated points")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Points,
    Knapsack,
    Assignment,
}

#[derive(clap::Args)]
struct Output {
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
    /// Write the document here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Label every point of an instance.
    Classify {
        path: PathBuf,
        #[command(flatten)]
        output: Output,
        /// Objective-space plot (two objectives only).
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Verify the supportedness equivalences on an instance.
    Check {
        path: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Weight-space decomposition.
    Wsd {
        path: PathBuf,
        #[command(flatten)]
        output: Output,
        /// Cell drawing (two or three objectives only).
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Append a constant zero objective.
    Lift {
        path: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a seeded random instance.
    Gen {
        #[arg(value_enum)]
        kind: Kind,
        /// Points, items or assignment size.
        size: usize,
        /// Number of objectives.
        #[arg(default_value_t = 2)]
        p: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Extreme supported points by dichotomic search (two objectives).
    Dichotomic {
        path: PathBuf,
        #[command(flatten)]
        output: Output,
    },
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: if e.is_validation() { 2 } else { 3 },
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn read_instance(path: &Path) -> Result<Instance, Failure> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    parse_instance(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn read_set(path: &Path) -> Result<OutcomeSet, Failure> {
    let cap = EnumerationCap::from_env()?;
    Ok(read_instance(path)?.into_outcome_set(cap)?)
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn classify(path: &Path, output: &Output, svg_path: Option<&Path>) -> Result<(), Failure> {
    let set = read_set(path)?;
    let start = Instant::now();
    let analysis = analyze(&set)?;
    let elapsed = start.elapsed().as_micros() as u64;
    let consistency = ensure_consistent(&set, &analysis);
    let labels = analysis.classifications.clone();
    let report = Report::new(&set, analysis, elapsed);
    if !report.is_consistent() {
        return Err(Failure {
            code: 3,
            message: "report digest disagrees with its rows".into(),
        });
    }
    let text = match output.format {
        Format::Table => report.to_table(),
        Format::Json => json(&report),
    };
    emit(output.out.as_deref(), &text)?;
    consistency?;
    if let Some(p) = svg_path {
        if set.p() != 2 {
            return Err(usage(format!("objective-space SVG needs 2 objectives, got {}", set.p())));
        }
        emit(Some(p), &svg::biobjective_points(&set, &labels))?;
    }
    Ok(())
}

fn check(path: &Path, output: &Output) -> Result<(), Failure> {
    let set = read_set(path)?;
    let analysis = analyze(&set)?;
    let text = match output.format {
        Format::Table => verdict_table(&analysis.cross_check),
        Format::Json => json(&analysis.cross_check),
    };
    emit(output.out.as_deref(), &text)?;
    Ok(ensure_consistent(&set, &analysis)?)
}

fn wsd(path: &Path, output: &Output, svg_path: Option<&Path>) -> Result<(), Failure> {
    let set = read_set(path)?;
    let cells = decompose(&set)?;
    let text = match output.format {
        Format::Json => json(&cells),
        Format::Table => {
            let mut t = String::new();
            for c in &cells {
                let _ = writeln!(
                    t,
                    "{}  {}",
                    c.id,
                    if c.is_full_dimensional { "full-dimensional" } else { "lower-dimensional" }
                );
                if let Some(v) = &c.projected_vertices {
                    let vs: Vec<String> = v.iter().map(|x| vector(x)).collect();
                    let _ = writeln!(t, "  vertices {}", vs.join(" "));
                }
                if let Some(iv) = &c.projected_interval {
                    let _ = writeln!(t, "  interval [{}, {}]", iv[0], iv[1]);
                }
                for h in &c.hrep {
                    let _ = writeln!(t, "  {} {} {}", vector(&h.coeffs), h.relation.as_str(), h.rhs);
                }
            }
            t
        }
    };
    emit(output.out.as_deref(), &text)?;
    if let Some(p) = svg_path {
        let drawing = match set.p() {
            2 => svg::biobjective_intervals(&cells),
            3 => svg::triobjective_cells(&cells),
            n => return Err(usage(format!("weight-space SVG needs 2 or 3 objectives, got {n}"))),
        };
        emit(Some(p), &drawing)?;
    }
    Ok(())
}

fn lift(path: &Path, out: Option<&Path>) -> Result<(), Failure> {
    let set = read_set(path)?;
    emit(out, &serialize_instance(&Instance::Explicit(lift_zero_objective(&set))))
}

fn gen(kind: Kind, size: usize, p: usize, seed: u64, out: Option<&Path>) -> Result<(), Failure> {
    if p < 2 {
        return Err(Error::TooFewObjectives(p).into());
    }
    if size == 0 {
        return Err(usage("size must be positive"));
    }
    let instance = match kind {
        Kind::Points => Instance::Explicit(random_points(seed, p, size, 100)?),
        Kind::Knapsack => Instance::Knapsack(random_knapsack(seed, size, p)),
        Kind::Assignment => Instance::Assignment(random_assignment(seed, size, p)),
    };
    emit(out, &serialize_instance(&instance))
}

fn dichotomic(path: &Path, output: &Output) -> Result<(), Failure> {
    let set = read_set(path)?;
    let result = dichotomic_extremes(&set)?;
    let text = match output.format {
        Format::Json => json(&result),
        Format::Table => {
            let mut t = String::new();
            for (y, w) in result.extremes.iter().zip(&result.witness_weights) {
                let _ = writeln!(t, "{}  {}  weight {}", y.id, vector(&y.coords), vector(w.as_slice()));
            }
            let _ = writeln!(t, "\n{} extremes, {} oracle calls", result.extremes.len(), result.oracle_calls);
            t
        }
    };
    emit(output.out.as_deref(), &text)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Classify { path, output, svg } => classify(&path, &output, svg.as_deref()),
        Command::Check { path, output } => check(&path, &output),
        Command::Wsd { path, output, svg } => wsd(&path, &output, svg.as_deref()),
        Command::Lift { path, out } => lift(&path, out.as_deref()),
        Command::Gen { kind, size, p, seed, out } => gen(kind, size, p, seed, out.as_deref()),
        Command::Dichotomic { path, output } => dichotomic(&path, &output),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
