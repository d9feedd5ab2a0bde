//! Computation DAGs and their undirected weighted shadows.
//!
//! A computation is modeled as a directed acyclic multigraph: vertices are
//! values (graph inputs, intermediate operations, outputs), and an edge
//! `(u, v)` says "`v` consumes `u`". The red–blue pebbling question — how many
//! transfers between a fast memory of `M` slots and an unbounded slow memory
//! does any schedule need? — is attacked here through the *out-degree
//! normalized* shadow of the DAG:
//!
//! > every directed edge `(u, v)` contributes undirected weight `1/d_out(u)`
//! > to the pair `{u, v}`.
//!
//! The normalization caps the total weight a schedule can "cut for free" when
//! it spills a value with many consumers: all copies of `u`'s out-edges
//! together cost one transfer, so together they carry total weight 1.
//!
//! [`boundary_cost`] evaluates the weight of a cut directly from the DAG; the
//! Laplacian quadratic form over the same weights (see [`crate::laplacian`])
//! must agree with it exactly — that identity is the hinge the spectral lower
//! bounds turn on, and the test suites check it on every generator family.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Vertex ids are dense indices `0..n`.
pub type VertexId = usize;

/// What role a vertex plays in the computation.
///
/// Structural invariants (enforced at construction):
/// * `Input` ⇔ in-degree 0 — inputs are exactly the sources.
/// * `Output` ⇒ out-degree 0 — outputs are never consumed; a sink may still
///   be an `Op` (a computed value nobody reads is legal, if pointless).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexKind {
    Input,
    Op,
    Output,
}

impl VertexKind {
    /// Lowercase name as used in graph files.
    pub fn as_str(self) -> &'static str {
        match self {
            VertexKind::Input => "input",
            VertexKind::Op => "op",
            VertexKind::Output => "output",
        }
    }
}

/// Per-vertex payload: the kind plus an optional human-readable label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexInfo {
    pub kind: VertexKind,
    pub label: Option<String>,
}

impl VertexInfo {
    pub fn new(kind: VertexKind) -> Self {
        VertexInfo { kind, label: None }
    }

    pub fn labeled(kind: VertexKind, label: impl Into<String>) -> Self {
        VertexInfo { kind, label: Some(label.into()) }
    }
}

/// A directed acyclic multigraph of computation steps.
///
/// Vertex ids are the positions `0..n` in the vertex list. Parallel edges are
/// allowed (an operation may consume the same value twice — think `x * x`);
/// self-loops are not. Acyclicity is *not* checked at construction — call
/// [`validate_dag`] to obtain a topological order or a [`Error::CycleDetected`].
#[derive(Debug, Clone, PartialEq)]
pub struct ComputationGraph {
    vertices: Vec<VertexInfo>,
    edges: Vec<(VertexId, VertexId)>,
}

impl ComputationGraph {
    /// Build a graph, checking edge sanity and kind/degree consistency.
    ///
    /// Errors: [`Error::DanglingEdge`], [`Error::SelfLoop`],
    /// [`Error::KindMismatch`].
    pub fn new(
        vertices: Vec<VertexInfo>,
        edges: Vec<(VertexId, VertexId)>,
    ) -> Result<Self> {
        let n = vertices.len();
        let mut d_in = vec![0usize; n];
        let mut d_out = vec![0usize; n];
        for &(src, dst) in &edges {
            if src >= n || dst >= n {
                return Err(Error::DanglingEdge { src, dst, n });
            }
            if src == dst {
                return Err(Error::SelfLoop { vertex: src });
            }
            d_out[src] += 1;
            d_in[dst] += 1;
        }
        for (v, info) in vertices.iter().enumerate() {
            match info.kind {
                VertexKind::Input if d_in[v] > 0 => {
                    return Err(Error::KindMismatch {
                        vertex: v,
                        detail: format!("declared input but has {} incoming edges", d_in[v]),
                    });
                }
                VertexKind::Op | VertexKind::Output if d_in[v] == 0 => {
                    return Err(Error::KindMismatch {
                        vertex: v,
                        detail: format!(
                            "declared {} but has no incoming edges (sources must be inputs)",
                            info.kind.as_str()
                        ),
                    });
                }
                VertexKind::Output if d_out[v] > 0 => {
                    return Err(Error::KindMismatch {
                        vertex: v,
                        detail: format!("declared output but has {} outgoing edges", d_out[v]),
                    });
                }
                _ => {}
            }
        }
        Ok(ComputationGraph { vertices, edges })
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    /// Number of directed edges, counting parallel copies.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// The directed edge list, in insertion order.
    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    /// Vertex payload, or `None` if out of range.
    pub fn vertex(&self, v: VertexId) -> Option<&VertexInfo> {
        self.vertices.get(v)
    }

    /// Iterate `(id, info)` pairs in id order.
    pub fn vertices(&self) -> impl Iterator<Item = (VertexId, &VertexInfo)> {
        self.vertices.iter().enumerate()
    }

    /// Per-vertex and aggregate degree counts. See [`degrees`].
    pub fn degrees(&self) -> DegreeSummary {
        degrees(self)
    }
}

/// In/out degree tables with their aggregates; parallel edges count once each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeSummary {
    d_in: Vec<usize>,
    d_out: Vec<usize>,
    pub min_in: usize,
    pub max_in: usize,
    pub min_out: usize,
    pub max_out: usize,
    pub min_total: usize,
    pub max_total: usize,
}

impl DegreeSummary {
    pub fn n(&self) -> usize {
        self.d_in.len()
    }

    pub fn d_in(&self, v: VertexId) -> usize {
        self.d_in[v]
    }

    pub fn d_out(&self, v: VertexId) -> usize {
        self.d_out[v]
    }

    /// Total degree `d_in + d_out`.
    pub fn d(&self, v: VertexId) -> usize {
        self.d_in[v] + self.d_out[v]
    }
}

/// Infer vertex kinds from degrees: sources are inputs, sinks are outputs,
/// everything else is an op. This is the convention every generator and the
/// trace builder use, and it always satisfies the kind/degree invariants.
pub(crate) fn infer_kinds(n: usize, edges: &[(VertexId, VertexId)]) -> Vec<VertexKind> {
    let mut has_in = vec![false; n];
    let mut has_out = vec![false; n];
    for &(src, dst) in edges {
        has_out[src] = true;
        has_in[dst] = true;
    }
    (0..n)
        .map(|v| {
            if !has_in[v] {
                VertexKind::Input
            } else if !has_out[v] {
                VertexKind::Output
            } else {
                VertexKind::Op
            }
        })
        .collect()
}

/// Count in/out degrees (multiplicity included) and their min/max aggregates.
///
/// On an empty graph all aggregates are 0.
pub fn degrees(g: &ComputationGraph) -> DegreeSummary {
    let n = g.n();
    let mut d_in = vec![0usize; n];
    let mut d_out = vec![0usize; n];
    for &(src, dst) in g.edges() {
        d_out[src] += 1;
        d_in[dst] += 1;
    }
    let agg = |xs: &[usize]| -> (usize, usize) {
        xs.iter().fold((usize::MAX, 0), |(lo, hi), &x| (lo.min(x), hi.max(x)))
    };
    let (min_in, max_in) = if n == 0 { (0, 0) } else { agg(&d_in) };
    let (min_out, max_out) = if n == 0 { (0, 0) } else { agg(&d_out) };
    let totals: Vec<usize> = d_in.iter().zip(&d_out).map(|(a, b)| a + b).collect();
    let (min_total, max_total) = if n == 0 { (0, 0) } else { agg(&totals) };
    DegreeSummary { d_in, d_out, min_in, max_in, min_out, max_out, min_total, max_total }
}

/// Check acyclicity and return one topological order (Kahn's algorithm,
/// smallest-id-first, so the order is deterministic).
///
/// On failure returns [`Error::CycleDetected`] naming a vertex that lies on a
/// directed cycle.
pub fn validate_dag(g: &ComputationGraph) -> Result<Vec<VertexId>> {
    let n = g.n();
    let mut indeg = vec![0usize; n];
    let mut succ: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    for &(src, dst) in g.edges() {
        indeg[dst] += 1;
        succ[src].push(dst);
    }
    let mut queue: VecDeque<VertexId> =
        (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &w in &succ[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                queue.push_back(w);
            }
        }
    }
    if order.len() == n {
        return Ok(order);
    }
    // Some vertices never drained: each remaining vertex still has a remaining
    // predecessor, so walking predecessors from any of them must revisit a
    // vertex within n steps — that vertex is on a cycle.
    let mut pred: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    for &(src, dst) in g.edges() {
        pred[dst].push(src);
    }
    let remaining: Vec<bool> = indeg.iter().map(|&d| d > 0).collect();
    let start = (0..n).find(|&v| remaining[v]).expect("some vertex remains");
    let mut seen = vec![false; n];
    let mut v = start;
    loop {
        if seen[v] {
            return Err(Error::CycleDetected { vertex: v });
        }
        seen[v] = true;
        v = *pred[v]
            .iter()
            .find(|&&u| remaining[u])
            .expect("remaining vertex has a remaining predecessor");
    }
}

/// Weight of the cut `∂S` under out-degree normalization:
/// `Σ 1/d_out(u)` over directed edges `(u, v)` with exactly one endpoint in `S`.
///
/// `subset` is interpreted as a set (duplicates are harmless). Errors with
/// [`Error::InvalidVertexId`] on an out-of-range id.
pub fn boundary_cost(g: &ComputationGraph, subset: &[VertexId]) -> Result<f64> {
    let n = g.n();
    let mut in_s = vec![false; n];
    for &v in subset {
        if v >= n {
            return Err(Error::InvalidVertexId { id: v, n });
        }
        in_s[v] = true;
    }
    let deg = degrees(g);
    let mut total = 0.0;
    for &(u, v) in g.edges() {
        if in_s[u] != in_s[v] {
            total += 1.0 / deg.d_out(u) as f64;
        }
    }
    Ok(total)
}

/// An undirected graph with positive accumulated edge weights and optional
/// nonnegative vertex weights (extra mass added to Laplacian diagonals).
///
/// Edge keys are canonicalized to `u < v`; adding the same pair twice
/// accumulates. Iteration order is always sorted by `(u, v)`, so everything
/// downstream (Laplacian assembly, file output) is deterministic.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    n: usize,
    edges: BTreeMap<(VertexId, VertexId), f64>,
    vertex_weights: Vec<f64>,
}

impl WeightedGraph {
    /// An edgeless weighted graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        WeightedGraph { n, edges: BTreeMap::new(), vertex_weights: vec![0.0; n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of distinct undirected edges.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Accumulate weight `w > 0` on the undirected pair `{u, v}`.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId, w: f64) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop { vertex: u });
        }
        if !(w > 0.0) {
            return Err(Error::InvalidParameter {
                what: format!("edge weight must be positive, got {w}"),
            });
        }
        let key = (u.min(v), u.max(v));
        *self.edges.entry(key).or_insert(0.0) += w;
        Ok(())
    }

    /// Accumulate weight `w ≥ 0` on vertex `v`'s diagonal.
    pub fn add_vertex_weight(&mut self, v: VertexId, w: f64) -> Result<()> {
        self.check_vertex(v)?;
        if !(w >= 0.0) {
            return Err(Error::InvalidParameter {
                what: format!("vertex weight must be nonnegative, got {w}"),
            });
        }
        self.vertex_weights[v] += w;
        Ok(())
    }

    fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v >= self.n {
            return Err(Error::InvalidVertexId { id: v, n: self.n });
        }
        Ok(())
    }

    /// Iterate `(u, v, w)` with `u < v`, sorted by `(u, v)`.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId, f64)> + '_ {
        self.edges.iter().map(|(&(u, v), &w)| (u, v, w))
    }

    /// Weight of pair `{u, v}` if present.
    pub fn edge_weight(&self, u: VertexId, v: VertexId) -> Option<f64> {
        self.edges.get(&(u.min(v), u.max(v))).copied()
    }

    pub fn vertex_weight(&self, v: VertexId) -> f64 {
        self.vertex_weights[v]
    }

    pub fn vertex_weights(&self) -> &[f64] {
        &self.vertex_weights
    }

    /// Sum of incident edge weights (vertex weight *not* included).
    pub fn weighted_degree(&self, v: VertexId) -> f64 {
        self.edges()
            .filter(|&(u, w, _)| u == v || w == v)
            .map(|(_, _, wt)| wt)
            .sum()
    }

    /// Connected components of the edge support, ignoring weights.
    /// Returns `(component_count, component_id_per_vertex)`.
    pub fn connected_components(&self) -> (usize, Vec<usize>) {
        let mut adj: Vec<Vec<VertexId>> = vec![Vec::new(); self.n];
        for (u, v, _) in self.edges() {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut comp = vec![usize::MAX; self.n];
        let mut count = 0;
        for start in 0..self.n {
            if comp[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            comp[start] = count;
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (count, comp)
    }
}

/// The out-degree normalized shadow of a DAG: each directed edge `(u, v)`
/// contributes undirected weight `1/d_out(u)` to the pair `{u, v}`.
///
/// Parallel copies accumulate, so a vertex whose whole out-fan goes to one
/// consumer still carries total weight 1 toward it.
pub fn normalize_out_degree(g: &ComputationGraph) -> WeightedGraph {
    let deg = degrees(g);
    let mut wg = WeightedGraph::new(g.n());
    for &(u, v) in g.edges() {
        let w = 1.0 / deg.d_out(u) as f64;
        wg.add_edge(u, v, w)
            .expect("edges validated at graph construction");
    }
    wg
}

/// The plain undirected support of a DAG: weight 1 per *distinct* vertex
/// pair, no matter how many parallel or antiparallel copies exist.
pub fn unit_support(g: &ComputationGraph) -> WeightedGraph {
    let mut wg = WeightedGraph::new(g.n());
    let mut seen = std::collections::BTreeSet::new();
    for &(u, v) in g.edges() {
        let key = (u.min(v), u.max(v));
        if seen.insert(key) {
            wg.add_edge(u, v, 1.0)
                .expect("edges validated at graph construction");
        }
    }
    wg
}
