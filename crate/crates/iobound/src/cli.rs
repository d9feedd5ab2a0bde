//! The `iobound` command-line interface.
//!
//! Subcommands: `gen` (emit a graph file), `spectrum` (smallest Laplacian
//! eigenvalues), `bound` (one bound report), `closed-form` (analytic
//! hypercube/butterfly bounds), `sweep` (CSV over a parameter grid), and
//! `verify` (self-check suites).
//!
//! Exit codes: 0 success; 2 usage error; 3 invalid input (bad graph file,
//! bad parameter, cyclic graph); 4 eigensolver non-convergence; 5 a verify
//! suite reported failures.
//!
//! Graph files flow through paths, with `-` meaning stdin/stdout, so
//! commands compose: `iobound gen --family hypercube --l 3 | iobound bound
//! --memory 1 --method loose`. All floating-point output uses 9 significant
//! digits, so piping the same inputs twice yields identical bytes.

use std::io::{Read, Write};
use std::str::FromStr;

use clap::{Parser, Subcommand};

use crate::bounds::{bound, BoundMethod, BoundQuery, DEFAULT_EIG_COUNT};
use crate::closed_form::{
    butterfly_best_bound, butterfly_bound, hypercube_best_bound, hypercube_bound,
};
use crate::eigen::{smallest_eigenvalues, EigenOptions};
use crate::error::{Error, Result};
use crate::generators::{generate, Family, GeneratorSpec};
use crate::graph::{normalize_out_degree, ComputationGraph};
use crate::io::{graph_to_string, read_graph_str, GraphFormat};
use crate::laplacian::{laplacian, LaplacianVariant};
use crate::sweep::{format_sig9, run_sweep, to_csv, SweepSpec};
use crate::verify::{run_suite, Suite};

#[derive(Parser)]
#[command(
    name = "iobound",
    version,
    about = "Spectral lower bounds on the I/O complexity of computation DAGs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph from a named family and write it to a file
    Gen(GenArgs),
    /// Print the smallest Laplacian eigenvalues of a graph
    Spectrum(SpectrumArgs),
    /// Evaluate a spectral I/O lower bound on a graph
    Bound(BoundArgs),
    /// Evaluate the closed-form hypercube/butterfly bounds
    ClosedForm(ClosedFormArgs),
    /// Evaluate bounds over a parameter grid and emit CSV
    Sweep(SweepArgs),
    /// Run a self-check suite (all suites when none is named)
    Verify(VerifyArgs),
}

#[derive(clap::Args)]
struct GenArgs {
    /// Graph family: hypercube, butterfly, naive_matmul, strassen,
    /// erdos_renyi, inner_product
    #[arg(long, value_parser = parse_family)]
    family: Family,
    /// Size parameter (l for hypercube/butterfly, n for matrix families,
    /// m for inner products)
    #[arg(long = "size", visible_alias = "l", visible_alias = "n")]
    size: usize,
    /// Edge probability (erdos_renyi only)
    #[arg(long = "probability", visible_alias = "p")]
    probability: Option<f64>,
    /// RNG seed (erdos_renyi only)
    #[arg(long)]
    seed: Option<u64>,
    /// Output file, or - for stdout
    #[arg(long, default_value = "-")]
    out: String,
    /// File format
    #[arg(long, default_value = "json", value_parser = parse_format)]
    format: GraphFormat,
}

#[derive(clap::Args)]
struct SpectrumArgs {
    /// Graph file, or - for stdin
    #[arg(default_value = "-")]
    graph: String,
    /// How many of the smallest eigenvalues to print
    #[arg(long = "eigs", default_value_t = DEFAULT_EIG_COUNT)]
    eigs: usize,
    /// Laplacian variant: tilde, unit, normalized
    #[arg(long, default_value = "tilde", value_parser = parse_variant)]
    variant: LaplacianVariant,
}

#[derive(clap::Args)]
struct BoundArgs {
    /// Graph file, or - for stdin
    #[arg(default_value = "-")]
    graph: String,
    /// Fast-memory capacity M, in elements
    #[arg(long, visible_alias = "m")]
    memory: u64,
    /// Bound method: tight, loose, parallel, normalized
    #[arg(long, default_value = "tight", value_parser = parse_method)]
    method: BoundMethod,
    /// Eigenvalue budget h (k is scanned over 2..=min(h, n))
    #[arg(long = "eigs", default_value_t = DEFAULT_EIG_COUNT)]
    eigs: usize,
    /// Processor count (parallel method only)
    #[arg(long, default_value_t = 1)]
    processors: u64,
    /// Emit the report as JSON instead of structured text
    #[arg(long)]
    json: bool,
}

#[derive(clap::Args)]
struct ClosedFormArgs {
    /// Family with a closed form: hypercube or butterfly
    #[arg(long, value_parser = parse_closed_form_family)]
    family: Family,
    /// Level l
    #[arg(long = "size", visible_alias = "l")]
    size: usize,
    /// Fast-memory capacity M, in elements
    #[arg(long, visible_alias = "m")]
    memory: u64,
    /// Eigenvalue-class cutoff α; scans for the best α when omitted
    #[arg(long)]
    alpha: Option<usize>,
}

#[derive(clap::Args)]
struct SweepArgs {
    /// Graph family
    #[arg(long, value_parser = parse_family)]
    family: Family,
    /// Sizes: single value, comma list, and/or inclusive ranges (e.g. 3:6)
    #[arg(long = "size", visible_alias = "l", visible_alias = "n", value_parser = parse_size_list)]
    sizes: SizeList,
    /// Memory capacities M (comma list)
    #[arg(long, visible_alias = "m", value_parser = parse_u64_list)]
    memory: U64List,
    /// Bound methods (comma list)
    #[arg(long, default_value = "tight", value_parser = parse_method_list)]
    method: MethodList,
    /// Processor counts (comma list; parallel method only)
    #[arg(long, default_value = "1", value_parser = parse_u64_list)]
    processors: U64List,
    /// Eigenvalue budget h per cell
    #[arg(long = "eigs", default_value_t = DEFAULT_EIG_COUNT)]
    eigs: usize,
    /// Edge probability (erdos_renyi only)
    #[arg(long = "probability", visible_alias = "p")]
    probability: Option<f64>,
    /// RNG seed (erdos_renyi only)
    #[arg(long)]
    seed: Option<u64>,
    /// Worker-thread cap for cell evaluation
    #[arg(long)]
    jobs: Option<usize>,
    /// Record real wall-clock times (breaks byte-determinism of the CSV)
    #[arg(long)]
    timings: bool,
    /// Output CSV file, or - for stdout
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(clap::Args)]
struct VerifyArgs {
    /// Suite: laplacian-properties, cut-identity, closed-form-spectra,
    /// decomposition-lemma, bound-dominance
    #[arg(value_parser = parse_suite)]
    suite: Option<Suite>,
}

// Newtypes so clap's derive can carry parsed lists.
#[derive(Clone)]
struct SizeList(Vec<usize>);
#[derive(Clone)]
struct U64List(Vec<u64>);
#[derive(Clone)]
struct MethodList(Vec<BoundMethod>);

fn parse_family(s: &str) -> std::result::Result<Family, String> {
    Family::from_str(s).map_err(|e| e.to_string())
}

fn parse_closed_form_family(s: &str) -> std::result::Result<Family, String> {
    match Family::from_str(s).map_err(|e| e.to_string())? {
        f @ (Family::Hypercube | Family::Butterfly) => Ok(f),
        other => Err(format!("no closed form for '{other}' (hypercube|butterfly)")),
    }
}

fn parse_format(s: &str) -> std::result::Result<GraphFormat, String> {
    GraphFormat::from_str(s).map_err(|e| e.to_string())
}

fn parse_variant(s: &str) -> std::result::Result<LaplacianVariant, String> {
    LaplacianVariant::from_str(s).map_err(|e| e.to_string())
}

fn parse_method(s: &str) -> std::result::Result<BoundMethod, String> {
    BoundMethod::from_str(s).map_err(|e| e.to_string())
}

fn parse_suite(s: &str) -> std::result::Result<Suite, String> {
    Suite::from_str(s).map_err(|e| e.to_string())
}

/// `"4"`, `"1,2,8"`, `"3:6"`, or a mix (`"1,4:6,12"`); ranges inclusive.
fn parse_size_list(s: &str) -> std::result::Result<SizeList, String> {
    let mut out = Vec::new();
    for piece in s.split(',') {
        let piece = piece.trim();
        match piece.split_once(':') {
            Some((lo, hi)) => {
                let lo: usize = lo.trim().parse().map_err(|_| format!("bad range start '{lo}'"))?;
                let hi: usize = hi.trim().parse().map_err(|_| format!("bad range end '{hi}'"))?;
                if lo > hi {
                    return Err(format!("empty range {lo}:{hi}"));
                }
                out.extend(lo..=hi);
            }
            None => out.push(piece.parse().map_err(|_| format!("bad size '{piece}'"))?),
        }
    }
    if out.is_empty() {
        return Err("empty size list".into());
    }
    Ok(SizeList(out))
}

fn parse_u64_list(s: &str) -> std::result::Result<U64List, String> {
    let mut out = Vec::new();
    for piece in s.split(',') {
        let piece = piece.trim();
        out.push(piece.parse().map_err(|_| format!("bad value '{piece}'"))?);
    }
    if out.is_empty() {
        return Err("empty list".into());
    }
    Ok(U64List(out))
}

fn parse_method_list(s: &str) -> std::result::Result<MethodList, String> {
    let mut out = Vec::new();
    for piece in s.split(',') {
        out.push(parse_method(piece)?);
    }
    if out.is_empty() {
        return Err("empty method list".into());
    }
    Ok(MethodList(out))
}

/// Parse arguments and run; returns the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        // Usage errors exit 2; --help/--version exit 0. Both via clap.
        Err(e) => e.exit(),
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::ConvergenceFailure { .. } => 4,
                _ => 3,
            }
        }
    }
}

fn dispatch(command: Command) -> Result<i32> {
    match command {
        Command::Gen(args) => cmd_gen(args),
        Command::Spectrum(args) => cmd_spectrum(args),
        Command::Bound(args) => cmd_bound(args),
        Command::ClosedForm(args) => cmd_closed_form(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Verify(args) => cmd_verify(args),
    }
}

fn read_graph_arg(path: &str) -> Result<ComputationGraph> {
    if path == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text)?;
        read_graph_str(&text)
    } else {
        crate::io::read_graph(path)
    }
}

fn write_output(path: &str, content: &str) -> Result<()> {
    if path == "-" {
        std::io::stdout().write_all(content.as_bytes())?;
    } else {
        std::fs::write(path, content)?;
    }
    Ok(())
}

fn cmd_gen(args: GenArgs) -> Result<i32> {
    let mut spec = GeneratorSpec::new(args.family, args.size);
    spec.edge_probability = args.probability;
    spec.seed = args.seed;
    let g = generate(&spec)?;
    write_output(&args.out, &graph_to_string(&g, args.format))?;
    if args.out != "-" {
        eprintln!(
            "wrote {} (size {}): {} vertices, {} edges to {}",
            args.family,
            args.size,
            g.n(),
            g.edge_count(),
            args.out
        );
    }
    Ok(0)
}

fn cmd_spectrum(args: SpectrumArgs) -> Result<i32> {
    if args.eigs == 0 {
        return Err(Error::InvalidParameter { what: "--eigs must be ≥ 1".into() });
    }
    let g = read_graph_arg(&args.graph)?;
    let wg = normalize_out_degree(&g);
    let matrix = match args.variant {
        LaplacianVariant::Unit => crate::laplacian::unit_laplacian(&g),
        variant => laplacian(&wg, variant)?,
    };
    let spectrum = smallest_eigenvalues(&matrix, args.eigs, &EigenOptions::from_env()?)?;
    let mut out = String::new();
    out.push_str(&format!(
        "# n={} variant={} method={} residual={}\n",
        matrix.n(),
        args.variant.as_str(),
        spectrum.method.as_str(),
        format_sig9(spectrum.residual),
    ));
    for ev in &spectrum.eigenvalues {
        out.push_str(&format_sig9(*ev));
        out.push('\n');
    }
    print!("{out}");
    Ok(0)
}

fn cmd_bound(args: BoundArgs) -> Result<i32> {
    let g = read_graph_arg(&args.graph)?;
    let mut query = BoundQuery::new(args.memory, args.method);
    query.eig_count = args.eigs;
    query.processors = args.processors;
    query.eigen = EigenOptions::from_env()?;
    let report = bound(&g, &query)?;

    if report.memory_below_max_in_degree {
        eprintln!(
            "warning: memory M = {} is below the graph's max in-degree {}; no real machine \
             evaluates this graph with so little fast memory, treat the bound as vacuous",
            report.memory, report.max_in_degree
        );
    }
    if report.experimental {
        eprintln!("warning: the {} bound is experimental", report.method);
    }

    if args.json {
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
        return Ok(0);
    }

    let mut out = String::new();
    out.push_str(&format!("n: {}\n", report.n));
    out.push_str(&format!("method: {}\n", report.method));
    out.push_str(&format!("memory: {}\n", report.memory));
    out.push_str(&format!("eig_count: {}\n", report.eig_count));
    out.push_str(&format!("processors: {}\n", report.processors));
    out.push_str(&format!("max_in_degree: {}\n", report.max_in_degree));
    out.push_str(&format!(
        "solver: {} ({} eigenvalues, residual {})\n",
        report.solve.method.as_str(),
        report.solve.eigenvalues,
        format_sig9(report.solve.residual),
    ));
    out.push_str("per_k:\n");
    for &(k, value) in &report.per_k {
        out.push_str(&format!("  {k} {}\n", format_sig9(value)));
    }
    out.push_str(&format!("best_k: {}\n", report.best_k));
    out.push_str(&format!("raw_bound: {}\n", format_sig9(report.raw_bound)));
    out.push_str(&format!("effective_bound: {}\n", format_sig9(report.effective_bound)));
    print!("{out}");
    Ok(0)
}

fn cmd_closed_form(args: ClosedFormArgs) -> Result<i32> {
    let (alpha, value) = match (args.family, args.alpha) {
        (Family::Hypercube, Some(alpha)) => (alpha, hypercube_bound(args.size, args.memory, alpha)?),
        (Family::Hypercube, None) => hypercube_best_bound(args.size, args.memory)?,
        (Family::Butterfly, Some(alpha)) => (alpha, butterfly_bound(args.size, args.memory, alpha)?),
        (Family::Butterfly, None) => butterfly_best_bound(args.size, args.memory)?,
        _ => unreachable!("the argument parser admits only closed-form families"),
    };
    println!(
        "family: {}\nl: {}\nmemory: {}\nalpha: {alpha}\nbound: {}",
        args.family,
        args.size,
        args.memory,
        format_sig9(value)
    );
    Ok(0)
}

fn cmd_sweep(args: SweepArgs) -> Result<i32> {
    let mut spec = SweepSpec::new(args.family);
    spec.sizes = args.sizes.0;
    spec.memories = args.memory.0;
    spec.methods = args.method.0;
    spec.processors = args.processors.0;
    spec.eig_count = args.eigs;
    spec.edge_probability = args.probability;
    spec.seed = args.seed;
    spec.eigen = EigenOptions::from_env()?;
    spec.jobs = args.jobs;
    spec.timings = args.timings;
    let rows = run_sweep(&spec)?;
    write_output(&args.out, &to_csv(&rows))?;
    if args.out != "-" {
        eprintln!("wrote {} rows to {}", rows.len(), args.out);
    }
    Ok(0)
}

fn cmd_verify(args: VerifyArgs) -> Result<i32> {
    let suites: Vec<Suite> = match args.suite {
        Some(suite) => vec![suite],
        None => Suite::ALL.to_vec(),
    };
    let mut any_failed = false;
    for suite in suites {
        let results = run_suite(suite);
        let passed = results.iter().filter(|r| r.passed).count();
        for r in &results {
            println!("{} {} — {}", if r.passed { "ok  " } else { "FAIL" }, r.name, r.detail);
        }
        println!("suite {suite}: {passed}/{} checks passed\n", results.len());
        any_failed |= passed != results.len();
    }
    Ok(if any_failed { 5 } else { 0 })
}
