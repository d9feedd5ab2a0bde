//! Crate-wide error type.
//!
//! One enum covers the whole pipeline (graph construction → validation →
//! Laplacian assembly → eigensolve → bounds → file I/O) so that callers can
//! bubble everything with `?` and match on the precise failure at the top.

use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Error)]
pub enum Error {
    // ── graph construction / validation ──
    /// An edge references a vertex id outside `0..n`.
    #[error("dangling edge ({src}, {dst}): graph has {n} vertices")]
    DanglingEdge { src: usize, dst: usize, n: usize },

    /// An edge starts and ends at the same vertex.
    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: usize },

    /// The graph has a directed cycle; `vertex` lies on one.
    #[error("cycle detected through vertex {vertex}")]
    CycleDetected { vertex: usize },

    /// A vertex kind contradicts its degrees (e.g. an input with incoming
    /// edges, or an output with outgoing edges).
    #[error("vertex {vertex} kind mismatch: {detail}")]
    KindMismatch { vertex: usize, detail: String },

    /// A vertex id passed to an operation is out of range.
    #[error("invalid vertex id {id}: graph has {n} vertices")]
    InvalidVertexId { id: usize, n: usize },

    /// A vector's length does not match the matrix dimension.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// Normalized Laplacians need every vertex to touch at least one edge.
    #[error("vertex {vertex} has zero weighted degree; normalized Laplacian undefined")]
    ZeroDegreeVertex { vertex: usize },

    // ── generators ──
    /// A requested graph would exceed the configured size cap.
    #[error("graph too large: {detail}")]
    SizeOverflow { detail: String },

    /// Recursive matrix-multiplication traces need a power-of-two dimension.
    #[error("matrix dimension {n} is not a power of two")]
    NotPowerOfTwo { n: usize },

    /// A generator parameter is outside its documented domain.
    #[error("invalid parameter: {what}")]
    InvalidParameter { what: String },

    // ── trace builder ──
    /// The builder has already emitted its graph; no further recording.
    #[error("trace builder already built; create a new builder to record more")]
    UseAfterBuild,

    /// A value handle belongs to a different (or already-consumed) builder.
    #[error("unknown value handle (from a different or already-built trace)")]
    UnknownHandle,

    // ── eigensolver ──
    /// The iterative solver exhausted its restart budget.
    #[error(
        "eigensolver failed to converge: residual {achieved:.3e} after {restarts} restarts \
         (requested {requested:.3e})"
    )]
    ConvergenceFailure {
        achieved: f64,
        requested: f64,
        restarts: usize,
    },

    // ── closed forms ──
    /// The truncation index α is outside the formula's validity range.
    #[error("alpha = {alpha} outside valid range {lo}..={hi}")]
    AlphaOutOfRange { alpha: usize, lo: usize, hi: usize },

    /// An augmentation string has a bad character or is too long.
    #[error("bad augmentation string: {detail}")]
    BadString { detail: String },

    // ── bounds ──
    /// Partition counts range over 2..=min(h, n); graphs with n < 2 have
    /// nothing to bound.
    #[error("graph too small for a bound: n = {n} (need at least 2 vertices)")]
    GraphTooSmall { n: usize },

    // ── file I/O ──
    /// The file's syntax is malformed.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// The file parsed but describes an inconsistent graph
    /// (duplicate ids, id out of range, vertex/edge count mismatch, …).
    #[error("bad graph file: {detail}")]
    BadGraphFile { detail: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Crate-wide result alias.
pub type Result<T, E = Error> = std::result::Result<T, E>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn messages_carry_the_details() {
        let e = Error::DanglingEdge { src: 3, dst: 9, n: 5 };
        assert_eq!(e.to_string(), "dangling edge (3, 9): graph has 5 vertices");

        let e = Error::AlphaOutOfRange { alpha: 7, lo: 1, hi: 6 };
        assert!(e.to_string().contains("7"), "alpha echoed: {e}");
        assert!(e.to_string().contains("1..=6"), "range echoed: {e}");

        let e = Error::ConvergenceFailure { achieved: 3.2e-5, requested: 1e-8, restarts: 64 };
        assert!(e.to_string().contains("3.200e-5"), "residual echoed: {e}");
    }
}
