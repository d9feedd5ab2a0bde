//! Parameter sweeps: evaluate a bound over a grid of graphs and memory
//! sizes, emitting one CSV row per cell.
//!
//! The grid is the cartesian product `sizes × memories × methods ×
//! processors`, evaluated in exactly that nested order. Cells are
//! independent and may run concurrently (bounded by [`SweepSpec::jobs`]),
//! but rows are always *emitted* in grid order, and wall-clock timings are
//! suppressed unless explicitly requested — so a sweep with fixed seeds
//! produces byte-identical CSV on every run, which golden-file tests and
//! downstream diffing rely on.
//!
//! CSV schema (header included):
//!
//! ```text
//! family,param,n,M,p,method,best_k,raw_bound,effective_bound,h,wall_ms
//! ```
//!
//! Floating-point columns are printed with 9 significant digits.

use std::io::Write;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{bound, BoundMethod, BoundQuery};
use crate::eigen::EigenOptions;
use crate::error::{Error, Result};
use crate::generators::{generate, Family, GeneratorSpec};

/// The fixed CSV column set, in order.
pub const CSV_HEADER: &str = "family,param,n,M,p,method,best_k,raw_bound,effective_bound,h,wall_ms";

/// One grid of bound evaluations.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub family: Family,
    /// Size parameter per graph (`l`, `n`, or `m` depending on the family).
    pub sizes: Vec<usize>,
    /// Fast-memory capacities M.
    pub memories: Vec<u64>,
    pub methods: Vec<BoundMethod>,
    /// Processor counts p (only the parallel method reads them, but the grid
    /// is uniform to keep the schema regular). Defaults to `[1]`.
    pub processors: Vec<u64>,
    /// Eigenvalue budget h for every cell.
    pub eig_count: usize,
    /// Edge probability — Erdős–Rényi sweeps only.
    pub edge_probability: Option<f64>,
    /// RNG seed — Erdős–Rényi sweeps only.
    pub seed: Option<u64>,
    pub eigen: EigenOptions,
    /// Worker-thread cap; `None` uses the process-global thread pool.
    pub jobs: Option<usize>,
    /// Record real wall-clock times. Off by default: timings vary run to
    /// run and would break CSV byte-determinism.
    pub timings: bool,
}

impl SweepSpec {
    pub fn new(family: Family) -> Self {
        SweepSpec {
            family,
            sizes: Vec::new(),
            memories: Vec::new(),
            methods: vec![BoundMethod::Tight],
            processors: vec![1],
            eig_count: crate::bounds::DEFAULT_EIG_COUNT,
            edge_probability: None,
            seed: None,
            eigen: EigenOptions::default(),
            jobs: None,
            timings: false,
        }
    }

    fn validate(&self) -> Result<()> {
        for (what, empty) in [
            ("sizes", self.sizes.is_empty()),
            ("memories", self.memories.is_empty()),
            ("methods", self.methods.is_empty()),
            ("processors", self.processors.is_empty()),
        ] {
            if empty {
                return Err(Error::InvalidParameter {
                    what: format!("sweep needs at least one entry in {what}"),
                });
            }
        }
        Ok(())
    }
}

/// One evaluated cell, in CSV column order.
#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub family: Family,
    /// The size parameter of this cell's graph.
    pub param: usize,
    pub n: usize,
    pub memory: u64,
    pub processors: u64,
    pub method: BoundMethod,
    pub best_k: usize,
    pub raw_bound: f64,
    pub effective_bound: f64,
    pub eig_count: usize,
    /// Milliseconds spent on this cell, or 0 when timings are suppressed.
    pub wall_ms: u64,
}

/// Evaluate the full grid, rows in `sizes × memories × methods × processors`
/// order. The first failing cell (in grid order) aborts the sweep.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.validate()?;

    // Generate each size's graph once, up front; cells borrow them.
    let graphs = spec
        .sizes
        .iter()
        .map(|&size| {
            let mut gspec = GeneratorSpec::new(spec.family, size);
            gspec.edge_probability = spec.edge_probability;
            gspec.seed = spec.seed;
            generate(&gspec)
        })
        .collect::<Result<Vec<_>>>()?;

    let mut cells = Vec::new();
    for (gi, &size) in spec.sizes.iter().enumerate() {
        for &memory in &spec.memories {
            for &method in &spec.methods {
                for &processors in &spec.processors {
                    cells.push((gi, size, memory, method, processors));
                }
            }
        }
    }

    let evaluate = |&(gi, size, memory, method, processors): &(usize, usize, u64, BoundMethod, u64)|
     -> Result<SweepRow> {
        let started = Instant::now();
        let graph = &graphs[gi];
        let mut query = BoundQuery::new(memory, method);
        query.eig_count = spec.eig_count;
        query.processors = processors;
        query.eigen = spec.eigen.clone();
        let report = bound(graph, &query)?;
        let wall_ms = if spec.timings { started.elapsed().as_millis() as u64 } else { 0 };
        Ok(SweepRow {
            family: spec.family,
            param: size,
            n: report.n,
            memory,
            processors,
            method,
            best_k: report.best_k,
            raw_bound: report.raw_bound,
            effective_bound: report.effective_bound,
            eig_count: spec.eig_count,
            wall_ms,
        })
    };

    // Parallel map preserves input order, so rows land in grid order no
    // matter how the scheduler interleaves cells.
    let results: Vec<Result<SweepRow>> = match spec.jobs {
        Some(jobs) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs.max(1))
                .build()
                .map_err(|e| Error::InvalidParameter { what: format!("thread pool: {e}") })?;
            pool.install(|| cells.par_iter().map(evaluate).collect())
        }
        None => cells.par_iter().map(evaluate).collect(),
    };
    results.into_iter().collect()
}

/// Render rows as CSV (header + one line per row), 9 significant digits for
/// the bound columns.
pub fn to_csv(rows: &[SweepRow]) -> String {
    let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
    w.write_record(CSV_HEADER.split(',')).expect("writing to memory cannot fail");
    for row in rows {
        w.write_record([
            row.family.as_str(),
            &row.param.to_string(),
            &row.n.to_string(),
            &row.memory.to_string(),
            &row.processors.to_string(),
            row.method.as_str(),
            &row.best_k.to_string(),
            &format_sig9(row.raw_bound),
            &format_sig9(row.effective_bound),
            &row.eig_count.to_string(),
            &row.wall_ms.to_string(),
        ])
        .expect("writing to memory cannot fail");
    }
    String::from_utf8(w.into_inner().expect("flush to memory cannot fail"))
        .expect("CSV output is ASCII")
}

/// Run the sweep and stream the CSV to `out`.
pub fn sweep_to_writer(spec: &SweepSpec, out: &mut dyn Write) -> Result<Vec<SweepRow>> {
    let rows = run_sweep(spec)?;
    out.write_all(to_csv(&rows).as_bytes())?;
    Ok(rows)
}

/// Run the sweep and write the CSV to `path`.
pub fn sweep_to_path(spec: &SweepSpec, path: impl AsRef<Path>) -> Result<Vec<SweepRow>> {
    let rows = run_sweep(spec)?;
    std::fs::write(path, to_csv(&rows))?;
    Ok(rows)
}

/// 9 significant digits, scientific notation — the sweep's float format.
pub fn format_sig9(x: f64) -> String {
    format!("{x:.8e}")
}
