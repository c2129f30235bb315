//! `ctxdeg`: degrees of contextuality of multi-qubit observable
//! configurations from the command line.
//!
//! Exit codes: 0 on success; 2 for invalid input (including command-line
//! usage errors); 3 when a well-formed request is refused because it
//! exceeds a documented size or budget cap.

mod analyze;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use contextuality::{
    exact_degree, export_xor_cnf, incidence_rank, lower_bound_full, polarity_count, solve,
    Configuration, Error, Geometry, Observable, QuadricKind, Result, RunRecord, SolverParams,
    SymplecticSpace, DEFAULT_BUDGET_LOG2, SCHEMA_VERSION,
};

#[derive(Parser)]
#[command(
    name = "ctxdeg",
    version,
    about = "Degree-of-contextuality computations on multi-qubit observable configurations",
    after_help = "Exit codes: 0 success, 2 invalid input, 3 capability refusal (size or budget cap).\n\
                  The CTXDEG_THREADS environment variable sets the default worker thread count."
)]
struct Cli {
    /// Worker threads for the solver (overrides CTXDEG_THREADS).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Point, line and negative-line counts of a space or its quadrics.
    Space {
        #[arg(long)]
        qubits: u32,
        /// Print per-quadric statistics of one family instead.
        #[arg(long, value_enum)]
        quadrics: Option<QuadricArg>,
    },
    /// Search for an assignment minimizing the unsatisfied context count.
    Solve {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 0.8)]
        theta: f64,
        #[arg(long, default_value_t = 0.9)]
        gamma: f64,
        #[arg(long, default_value_t = 1000)]
        iterations: u64,
        #[arg(long, default_value_t = 200)]
        restarts: u32,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Per-restart wall-clock cutoff in milliseconds.
        #[arg(long)]
        time_budget_ms: Option<u64>,
        /// Output path of the JSON run record.
        #[arg(long)]
        out: PathBuf,
        /// Optional CSV of the best-distance trajectory.
        #[arg(long)]
        trace_out: Option<PathBuf>,
    },
    /// Exact degree of contextuality via exhaustive coset enumeration.
    Exact {
        #[command(flatten)]
        target: Target,
        /// Enumeration budget: refuse when the walk would exceed 2^budget
        /// codewords.
        #[arg(long, default_value_t = DEFAULT_BUDGET_LOG2)]
        budget_log2: u32,
    },
    /// Closed-form lower bound on the full-space degree, and the count of
    /// polarities inducing quadratic valuations.
    Bounds {
        #[arg(long)]
        qubits: u32,
    },
    /// Profiles and graph structure of a stored run's unsatisfied part.
    Analyze {
        /// JSON run record produced by `solve`.
        record: PathBuf,
        /// Degree histogram and line-class profile.
        #[arg(long)]
        profiles: bool,
        /// Component and skeleton-graph recognition per line class.
        #[arg(long)]
        graphs: bool,
        /// Check every quadric restriction against the reference residue
        /// profiles (full-space records only).
        #[arg(long)]
        restrict_criteria: bool,
        /// Output path of the JSON report (default: next to the record).
        #[arg(long)]
        report_out: Option<PathBuf>,
    },
    /// Write a configuration as an XOR constraint system.
    ExportXor {
        #[command(flatten)]
        target: Target,
        /// Output path of the XOR-CNF file.
        #[arg(long)]
        out: PathBuf,
    },
}

/// A configuration selector shared by solve/exact/export-xor.
#[derive(Args)]
struct Target {
    #[arg(long)]
    qubits: u32,
    #[arg(long, value_enum)]
    geometry: GeometryArg,
    /// Index observable of a quadric (default: the lowest-id observable of
    /// the matching symmetry class).
    #[arg(long)]
    index: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GeometryArg {
    Full,
    Hyperbolic,
    Elliptic,
}

impl From<GeometryArg> for Geometry {
    fn from(value: GeometryArg) -> Geometry {
        match value {
            GeometryArg::Full => Geometry::Full,
            GeometryArg::Hyperbolic => Geometry::Hyperbolic,
            GeometryArg::Elliptic => Geometry::Elliptic,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum QuadricArg {
    Hyperbolic,
    Elliptic,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_threads(cli.threads);
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_capability_refusal() {
                ExitCode::from(3)
            } else {
                ExitCode::from(2)
            }
        }
    }
}

fn init_threads(flag: Option<usize>) {
    let count = flag.or_else(|| {
        std::env::var("CTXDEG_THREADS")
            .ok()
            .and_then(|s| s.parse().ok())
    });
    if let Some(count) = count.filter(|&c| c > 0) {
        // Ignore failure: the global pool may already exist in tests.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(count)
            .build_global();
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Space { qubits, quadrics } => cmd_space(qubits, quadrics),
        Command::Solve {
            target,
            theta,
            gamma,
            iterations,
            restarts,
            seed,
            time_budget_ms,
            out,
            trace_out,
        } => {
            let params = SolverParams {
                theta,
                gamma,
                max_iterations: iterations,
                restarts,
                seed,
                time_budget_ms,
            };
            cmd_solve(target, params, &out, trace_out.as_deref())
        }
        Command::Exact {
            target,
            budget_log2,
        } => cmd_exact(target, budget_log2),
        Command::Bounds { qubits } => cmd_bounds(qubits),
        Command::Analyze {
            record,
            profiles,
            graphs,
            restrict_criteria,
            report_out,
        } => cmd_analyze(&record, profiles, graphs, restrict_criteria, report_out),
        Command::ExportXor { target, out } => cmd_export_xor(target, &out),
    }
}

/// The lowest-id observable of the symmetry class matching a quadric kind.
fn default_index(space: &SymplecticSpace, kind: QuadricKind) -> Observable {
    (0..space.point_count())
        .map(|p| space.observable(p))
        .find(|o| o.is_symmetric() == (kind == QuadricKind::Hyperbolic))
        .expect("both symmetry classes are nonempty")
}

/// Builds the configuration a target selects, returning the index
/// observable actually used for quadric geometries.
fn build_target(target: &Target) -> Result<(Configuration, Option<String>)> {
    let space = SymplecticSpace::build(target.qubits)?;
    match target.geometry {
        GeometryArg::Full => Ok((Configuration::from_space(&space), None)),
        GeometryArg::Hyperbolic | GeometryArg::Elliptic => {
            let kind = match target.geometry {
                GeometryArg::Hyperbolic => QuadricKind::Hyperbolic,
                _ => QuadricKind::Elliptic,
            };
            let index = match &target.index {
                Some(word) => word.parse::<Observable>()?,
                None => default_index(&space, kind),
            };
            let quadric = if index.is_identity() {
                space.identity_quadric()
            } else {
                space.quadric(&index)?
            };
            if quadric.kind() != kind {
                return Err(Error::WrongIndexSymmetry {
                    expected: kind,
                    expected_symmetry: match kind {
                        QuadricKind::Hyperbolic => "symmetric",
                        QuadricKind::Elliptic => "skew-symmetric",
                    },
                    index: index.to_string(),
                });
            }
            Ok((
                Configuration::from_quadric(&space, &quadric),
                Some(index.to_string()),
            ))
        }
    }
}

fn describe_target(target: &Target, index: &Option<String>) -> String {
    let geometry = match target.geometry {
        GeometryArg::Full => "full",
        GeometryArg::Hyperbolic => "hyperbolic",
        GeometryArg::Elliptic => "elliptic",
    };
    match index {
        Some(word) => format!("{geometry} (index {word})"),
        None => geometry.to_string(),
    }
}

fn cmd_space(qubits: u32, quadrics: Option<QuadricArg>) -> Result<()> {
    let space = SymplecticSpace::build(qubits)?;
    match quadrics {
        None => {
            println!("qubits: {qubits}");
            println!("points: {}", space.point_count());
            println!("lines: {}", space.line_count());
            println!("negative lines: {}", space.negative_line_count());
        }
        Some(arg) => {
            let kind = match arg {
                QuadricArg::Hyperbolic => QuadricKind::Hyperbolic,
                QuadricArg::Elliptic => QuadricKind::Elliptic,
            };
            let include_identity = kind == QuadricKind::Hyperbolic;
            let family = space.enumerate_quadrics(kind, include_identity)?;
            let label = match kind {
                QuadricKind::Hyperbolic => "hyperbolic (identity index included)",
                QuadricKind::Elliptic => "elliptic",
            };
            println!("qubits: {qubits}");
            println!("{label} quadrics: {}", family.len());
            println!("points per quadric: {}", family[0].point_count());
            println!("lines per quadric: {}", family[0].line_count());
            let mut distribution = std::collections::BTreeMap::new();
            for quadric in &family {
                *distribution
                    .entry(quadric.negative_line_count())
                    .or_insert(0u32) += 1;
            }
            println!("negative-line distribution:");
            for (negative, count) in distribution {
                println!("  {negative} negative lines: {count} quadrics");
            }
        }
    }
    Ok(())
}

fn cmd_solve(
    target: Target,
    params: SolverParams,
    out: &Path,
    trace_out: Option<&Path>,
) -> Result<()> {
    let (config, index) = build_target(&target)?;
    println!(
        "qubits: {}, geometry: {}, contexts: {} ({} negative)",
        target.qubits,
        describe_target(&target, &index),
        config.context_count(),
        config.negative_context_count()
    );
    let result = solve(&config, &params)?;
    println!("best distance: {}", result.best_distance);
    println!(
        "found at restart {}, iteration {}",
        result.restart_index_of_best, result.iterations_to_best
    );
    println!("runtime: {} ms", result.runtime_ms);
    let record = RunRecord::new(
        "solve",
        target.qubits,
        target.geometry.into(),
        index,
        None,
        &config,
        &result,
    );
    record.save(out)?;
    println!("record written to {}", out.display());
    if let Some(path) = trace_out {
        let mut csv = String::from("iteration,best_distance\n");
        for point in &result.trajectory {
            csv.push_str(&format!("{},{}\n", point.iteration, point.best_distance));
        }
        std::fs::write(path, csv)?;
        println!("trajectory written to {}", path.display());
    }
    Ok(())
}

fn cmd_exact(target: Target, budget_log2: u32) -> Result<()> {
    let (config, index) = build_target(&target)?;
    println!(
        "qubits: {}, geometry: {}, contexts: {} ({} negative)",
        target.qubits,
        describe_target(&target, &index),
        config.context_count(),
        config.negative_context_count()
    );
    let rank = incidence_rank(&config).rank();
    println!("incidence rank: {rank} (enumeration walks 2^{rank} codewords)");
    let degree = exact_degree(&config, budget_log2)?;
    println!("exact degree: {degree}");
    Ok(())
}

fn cmd_bounds(qubits: u32) -> Result<()> {
    let bound = lower_bound_full(qubits)?;
    let polarities = polarity_count(qubits)?;
    println!("qubits: {qubits}");
    println!("full-space degree lower bound: {bound}");
    println!("quadratic-valuation polarity count: {polarities}");
    Ok(())
}

fn cmd_analyze(
    record_path: &Path,
    profiles: bool,
    graphs: bool,
    restrict_criteria: bool,
    report_out: Option<PathBuf>,
) -> Result<()> {
    let record = RunRecord::load(record_path)?;
    let (_, _, unsatisfied) = record.rebuild()?;
    let report = analyze::AnalysisReport {
        schema_version: SCHEMA_VERSION,
        source: record_path.display().to_string(),
        command: record.command.clone(),
        qubits: record.qubits,
        geometry: record.geometry.to_string(),
        index_observable: record.index_observable.clone(),
        best_distance: record.result.best_distance,
        unsatisfied_contexts: unsatisfied.context_count(),
        covered_points: unsatisfied.covered_points().len(),
        profiles: profiles.then(|| analyze::profile_report(&unsatisfied)),
        graphs: graphs.then(|| analyze::graph_report(&unsatisfied)),
        restrict_criteria: restrict_criteria
            .then(|| analyze::restrict_report(&record, &unsatisfied))
            .transpose()?,
    };
    analyze::print_human(&report);
    let out = report_out.unwrap_or_else(|| record_path.with_extension("report.json"));
    let mut text = serde_json::to_string_pretty(&report)?;
    text.push('\n');
    std::fs::write(&out, text)?;
    println!("JSON report written to {}", out.display());
    Ok(())
}

fn cmd_export_xor(target: Target, out: &Path) -> Result<()> {
    let (config, index) = build_target(&target)?;
    export_xor_cnf(out, &config, &describe_target(&target, &index))?;
    println!(
        "wrote {} variables, {} xor clauses to {}",
        config.point_count(),
        config.context_count(),
        out.display()
    );
    Ok(())
}
