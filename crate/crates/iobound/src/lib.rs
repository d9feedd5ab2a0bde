#![forbid(unsafe_code)]

//! Spectral lower bounds on the I/O complexity of computation DAGs.
//!
//! A program that computes more values than fit in fast memory must move
//! data between a small fast level (capacity `M` elements) and unbounded
//! slow memory. For a computation described as a DAG — vertices are inputs
//! or operations, edges carry operands — every execution order partitions
//! the operations into segments that each fit the fast level, and every
//! segment boundary forces data movement proportional to the edges crossing
//! it. Summing the cheapest possible boundaries over any `k`-way partition
//! and subtracting the `2kM` transfers a machine gets for free yields an
//! unconditional lower bound on I/O volume.
//!
//! The cheapest boundaries are in turn bounded through eigenvalues: weight
//! each directed edge `(u, v)` by `1/d_out(u)` and drop orientation, and
//! the boundary cost of a vertex set `S` equals the quadratic form of the
//! resulting graph Laplacian at the indicator of `S`. Partial sums of the
//! smallest Laplacian eigenvalues then bound any balanced partition from
//! below, giving the bound
//!
//! ```text
//!   Q  ≥  max over k  of  ⌊n/k⌋ · (λ₁ + ⋯ + λ_k)  −  2kM.
//! ```
//!
//! What lives where:
//!
//! - [`trace`] records a computation as it runs and builds the DAG;
//!   [`graph`] holds the DAG, validates it, and derives the weighted
//!   undirected shadow; [`io`] reads and writes graph files.
//! - [`laplacian`] assembles sparse Laplacians (out-degree-normalized,
//!   unit-weight, and symmetrically normalized variants); [`eigen`]
//!   computes their smallest eigenvalues by dense reduction or a restarted
//!   Lanczos iteration with residual certification.
//! - [`bounds`] evaluates the bound above plus looser and
//!   parallel-machine variants, scanning `k` and reporting the best.
//! - [`generators`] builds standard graph families (hypercubes,
//!   butterflies, matrix multiplication, random DAGs); [`closed_form`]
//!   evaluates hypercube and butterfly bounds analytically — no
//!   eigensolver — via explicit spectra and a butterfly decomposition
//!   into weighted paths.
//! - [`sweep`] evaluates bounds over parameter grids into deterministic
//!   CSV; [`verify`] cross-checks the numerical and analytic paths
//!   against each other; [`cli`] exposes everything as the `iobound`
//!   binary.
//!
//! ```
//! use iobound::{bound, hypercube, BoundMethod, BoundQuery};
//!
//! let g = hypercube(6).unwrap();
//! let report = bound(&g, &BoundQuery::new(4, BoundMethod::Tight)).unwrap();
//! assert!(report.effective_bound > 0.0);
//! ```

pub mod bounds;
pub mod cli;
pub mod closed_form;
pub mod eigen;
pub mod error;
pub mod generators;
pub mod graph;
pub mod io;
pub mod laplacian;
pub mod sweep;
pub mod trace;
pub mod verify;

pub use bounds::{
    bound, loose_spectral_bound, normalized_bound, parallel_bound, spectral_bound, BoundMethod,
    BoundQuery, BoundReport,
};
pub use closed_form::{
    augmented_butterfly, butterfly_alpha_for_memory, butterfly_best_bound, butterfly_bound,
    butterfly_path_census, butterfly_spectrum, hypercube_best_bound, hypercube_bound,
    hypercube_nontrivial_threshold, hypercube_spectrum, k_path_multiset, path_graph,
    path_spectrum, AnalyticSpectrum, AugmentationString, PathKind, PathSpec,
};
pub use eigen::{smallest_eigenvalues, EigenOptions, SolveMethod, Spectrum};
pub use error::{Error, Result};
pub use generators::{
    butterfly, erdos_renyi_dag, generate, hypercube, inner_product, naive_matmul, strassen,
    Family, GeneratorSpec,
};
pub use graph::{
    boundary_cost, degrees, normalize_out_degree, unit_support, validate_dag, ComputationGraph,
    DegreeSummary, VertexId, VertexInfo, VertexKind, WeightedGraph,
};
pub use io::{graph_to_string, read_graph, read_graph_str, write_graph, GraphFormat};
pub use laplacian::{
    laplacian, normalized_laplacian, quadratic_form, tilde_laplacian, unit_laplacian,
    LaplacianVariant, SparseLaplacian,
};
pub use sweep::{run_sweep, sweep_to_path, to_csv, SweepRow, SweepSpec, CSV_HEADER};
pub use trace::{TraceBuilder, ValueHandle};
pub use verify::{run_all, run_suite, standard_corpus, CheckResult, Suite};
