//! Record a computation as it runs and emit its DAG.
//!
//! [`TraceBuilder`] is the escape hatch for computations the built-in
//! generators don't cover: call [`input`](TraceBuilder::input) for each leaf
//! value, [`apply`](TraceBuilder::apply) for each operation (operands are the
//! handles returned earlier), then [`build`](TraceBuilder::build) once. The
//! creation order is automatically a topological order, so every emitted
//! graph validates.
//!
//! Handles are tied to the builder that issued them *and* to its pre-build
//! epoch: replaying a recorded expression against a consumed builder reports
//! [`Error::UnknownHandle`] rather than silently wiring into a new graph.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};
use crate::graph::{infer_kinds, ComputationGraph, VertexId, VertexInfo};

static NEXT_BUILDER_ID: AtomicU64 = AtomicU64::new(1);

/// An opaque reference to a value recorded in one [`TraceBuilder`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ValueHandle {
    builder: u64,
    index: VertexId,
}

/// Accumulates a computation trace; single-owner, not shareable.
#[derive(Debug)]
pub struct TraceBuilder {
    id: u64,
    built: bool,
    labels: Vec<Option<String>>,
    edges: Vec<(VertexId, VertexId)>,
}

impl TraceBuilder {
    /// Start an empty trace.
    pub fn new() -> Self {
        TraceBuilder {
            id: NEXT_BUILDER_ID.fetch_add(1, Ordering::Relaxed),
            built: false,
            labels: Vec::new(),
            edges: Vec::new(),
        }
    }

    /// Number of values recorded so far.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    fn check_handle(&self, h: ValueHandle) -> Result<()> {
        if h.builder != self.id || self.built || h.index >= self.labels.len() {
            return Err(Error::UnknownHandle);
        }
        Ok(())
    }

    /// Record a leaf value. Errors with [`Error::UseAfterBuild`] once the
    /// trace has been consumed.
    pub fn input(&mut self, label: impl Into<String>) -> Result<ValueHandle> {
        if self.built {
            return Err(Error::UseAfterBuild);
        }
        let index = self.labels.len();
        self.labels.push(Some(label.into()));
        Ok(ValueHandle { builder: self.id, index })
    }

    /// Record an operation consuming previously recorded values. Repeated
    /// operands are legal and recorded as parallel edges (`x · x` consumes
    /// `x` twice). Needs at least one operand — a zero-operand "operation"
    /// would really be an input.
    pub fn apply(&mut self, label: impl Into<String>, operands: &[ValueHandle]) -> Result<ValueHandle> {
        // Stale handles are diagnosed before builder state so that replaying
        // a recorded expression against a consumed builder points at the
        // handles, which is what actually went wrong.
        for &h in operands {
            self.check_handle(h)?;
        }
        if self.built {
            return Err(Error::UseAfterBuild);
        }
        if operands.is_empty() {
            return Err(Error::InvalidParameter {
                what: "apply needs at least one operand (use input for leaves)".into(),
            });
        }
        let index = self.labels.len();
        self.labels.push(Some(label.into()));
        for &h in operands {
            self.edges.push((h.index, index));
        }
        Ok(ValueHandle { builder: self.id, index })
    }

    /// Consume the trace and emit its DAG. Vertex ids equal creation order;
    /// kinds are inferred (no incoming edges → input, no outgoing → output).
    pub fn build(&mut self) -> Result<ComputationGraph> {
        if self.built {
            return Err(Error::UseAfterBuild);
        }
        self.built = true;
        let labels = std::mem::take(&mut self.labels);
        let edges = std::mem::take(&mut self.edges);
        let kinds = infer_kinds(labels.len(), &edges);
        let vertices: Vec<VertexInfo> = kinds
            .into_iter()
            .zip(labels)
            .map(|(kind, label)| VertexInfo { kind, label })
            .collect();
        ComputationGraph::new(vertices, edges)
    }
}

impl Default for TraceBuilder {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{validate_dag, VertexKind};

    #[test]
    fn three_vertex_add() {
        let mut t = TraceBuilder::new();
        let x = t.input("x").unwrap();
        let y = t.input("y").unwrap();
        t.apply("add", &[x, y]).unwrap();
        let g = t.build().unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.vertex(0).unwrap().kind, VertexKind::Input);
        assert_eq!(g.vertex(1).unwrap().kind, VertexKind::Input);
        assert_eq!(g.vertex(2).unwrap().kind, VertexKind::Output);
        assert_eq!(g.vertex(2).unwrap().label.as_deref(), Some("add"));
        validate_dag(&g).expect("traced graphs always validate");
    }

    #[test]
    fn interior_ops_are_ops() {
        let mut t = TraceBuilder::new();
        let x = t.input("x").unwrap();
        let sq = t.apply("square", &[x, x]).unwrap();
        t.apply("negate", &[sq]).unwrap();
        let g = t.build().unwrap();
        assert_eq!(g.vertex(1).unwrap().kind, VertexKind::Op, "consumed op is op");
        assert_eq!(g.vertex(2).unwrap().kind, VertexKind::Output);
        assert_eq!(g.edge_count(), 3, "repeated operand records two edges");
        assert_eq!(g.degrees().d_in(1), 2);
    }

    #[test]
    fn unconsumed_input_stays_input() {
        let mut t = TraceBuilder::new();
        t.input("dangling").unwrap();
        let x = t.input("x").unwrap();
        t.apply("id", &[x]).unwrap();
        let g = t.build().unwrap();
        assert_eq!(g.vertex(0).unwrap().kind, VertexKind::Input);
    }

    #[test]
    fn build_twice_is_use_after_build() {
        let mut t = TraceBuilder::new();
        t.input("x").unwrap();
        t.build().unwrap();
        assert!(matches!(t.build(), Err(Error::UseAfterBuild)));
        assert!(matches!(t.input("y"), Err(Error::UseAfterBuild)));
    }

    #[test]
    fn stale_handle_after_build_is_unknown() {
        let mut t = TraceBuilder::new();
        let x = t.input("x").unwrap();
        t.build().unwrap();
        let err = t.apply("f", &[x]).unwrap_err();
        assert!(matches!(err, Error::UnknownHandle), "got {err:?}");
    }

    #[test]
    fn cross_builder_handles_are_rejected() {
        let mut a = TraceBuilder::new();
        let mut b = TraceBuilder::new();
        let xa = a.input("x").unwrap();
        let err = b.apply("f", &[xa]).unwrap_err();
        assert!(matches!(err, Error::UnknownHandle), "got {err:?}");
    }

    #[test]
    fn empty_operand_list_is_rejected() {
        let mut t = TraceBuilder::new();
        t.input("x").unwrap();
        assert!(matches!(t.apply("f", &[]), Err(Error::InvalidParameter { .. })));
    }

    #[test]
    fn empty_trace_builds_empty_graph() {
        let mut t = TraceBuilder::new();
        let g = t.build().unwrap();
        assert_eq!(g.n(), 0);
        assert_eq!(g.edge_count(), 0);
    }
}
