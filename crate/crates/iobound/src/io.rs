//! Reading and writing computation graphs.
//!
//! Two on-disk formats are supported:
//!
//! * **Structured** (JSON): a self-describing document with explicit vertex
//!   kinds and optional labels —
//!
//!   ```json
//!   {
//!     "version": "1",
//!     "n": 3,
//!     "vertices": [
//!       { "id": 0, "kind": "input" },
//!       { "id": 1, "kind": "input", "label": "b" },
//!       { "id": 2, "kind": "output" }
//!     ],
//!     "edges": [[0, 2], [1, 2]]
//!   }
//!   ```
//!
//! * **Edge list**: a header line `n <vertex-count>` followed by one
//!   `src dst` pair per line; kinds are inferred from degrees (sources are
//!   inputs, sinks are outputs, the rest are ops) and labels are dropped.
//!
//! [`read_graph`] sniffs the format (a document starting with `{` is JSON)
//! and always returns a *validated* DAG — cycles, dangling ids, self-loops,
//! and kind/degree mismatches are errors. Writes are canonical: edges
//! sorted, stable key order, trailing newline — so write∘read∘write is
//! byte-identical, which the sweep determinism contract leans on.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::MAX_VERTICES;
use crate::graph::{infer_kinds, validate_dag, ComputationGraph, VertexInfo, VertexKind};

/// Version string written to (and required of) structured graph files.
pub const GRAPH_FILE_VERSION: &str = "1";

/// On-disk graph encodings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphFormat {
    /// Structured JSON with kinds and labels.
    Json,
    /// `n <count>` header plus `src dst` lines.
    EdgeList,
}

impl GraphFormat {
    pub fn as_str(self) -> &'static str {
        match self {
            GraphFormat::Json => "json",
            GraphFormat::EdgeList => "edge-list",
        }
    }
}

impl std::str::FromStr for GraphFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "json" => Ok(GraphFormat::Json),
            "edge-list" | "edgelist" | "edges" => Ok(GraphFormat::EdgeList),
            other => Err(Error::InvalidParameter {
                what: format!("unknown graph format '{other}' (json|edge-list)"),
            }),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexRecord {
    id: usize,
    kind: VertexKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    version: String,
    n: usize,
    vertices: Vec<VertexRecord>,
    edges: Vec<(usize, usize)>,
}

/// Read a graph from `path`, sniffing the format, and validate it as a DAG.
pub fn read_graph(path: impl AsRef<Path>) -> Result<ComputationGraph> {
    let text = fs::read_to_string(path)?;
    read_graph_str(&text)
}

/// [`read_graph`] on in-memory text.
pub fn read_graph_str(text: &str) -> Result<ComputationGraph> {
    let g = match text.trim_start().as_bytes().first() {
        Some(b'{') => parse_json(text)?,
        _ => parse_edge_list(text)?,
    };
    validate_dag(&g)?;
    Ok(g)
}

/// Write `g` to `path` in the canonical form of `format`.
pub fn write_graph(g: &ComputationGraph, path: impl AsRef<Path>, format: GraphFormat) -> Result<()> {
    fs::write(path, graph_to_string(g, format))?;
    Ok(())
}

/// Canonical serialization: sorted edges, stable key order, trailing newline.
pub fn graph_to_string(g: &ComputationGraph, format: GraphFormat) -> String {
    let mut edges: Vec<(usize, usize)> = g.edges().to_vec();
    edges.sort_unstable();
    match format {
        GraphFormat::Json => {
            let file = GraphFile {
                version: GRAPH_FILE_VERSION.to_string(),
                n: g.n(),
                vertices: g
                    .vertices()
                    .map(|(id, info)| VertexRecord {
                        id,
                        kind: info.kind,
                        label: info.label.clone(),
                    })
                    .collect(),
                edges,
            };
            let mut out = serde_json::to_string_pretty(&file)
                .expect("graph file serialization cannot fail");
            out.push('\n');
            out
        }
        GraphFormat::EdgeList => {
            let mut out = format!("n {}\n", g.n());
            for (src, dst) in edges {
                out.push_str(&format!("{src} {dst}\n"));
            }
            out
        }
    }
}

fn parse_json(text: &str) -> Result<ComputationGraph> {
    let file: GraphFile = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        msg: e.to_string(),
    })?;
    if file.version != GRAPH_FILE_VERSION {
        return Err(Error::BadGraphFile {
            detail: format!(
                "unsupported graph file version '{}' (this build reads '{GRAPH_FILE_VERSION}')",
                file.version
            ),
        });
    }
    check_vertex_budget(file.n)?;
    if file.vertices.len() != file.n {
        return Err(Error::BadGraphFile {
            detail: format!("n = {} but {} vertex records", file.n, file.vertices.len()),
        });
    }
    for (pos, rec) in file.vertices.iter().enumerate() {
        if rec.id != pos {
            return Err(Error::BadGraphFile {
                detail: format!(
                    "vertex ids must be dense and ascending: record {pos} has id {}",
                    rec.id
                ),
            });
        }
    }
    let vertices: Vec<VertexInfo> = file
        .vertices
        .into_iter()
        .map(|rec| VertexInfo { kind: rec.kind, label: rec.label })
        .collect();
    ComputationGraph::new(vertices, file.edges)
}

fn parse_edge_list(text: &str) -> Result<ComputationGraph> {
    let mut n: Option<usize> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        match n {
            None => {
                // Header: `n <count>`.
                let tag = tokens.next();
                let count = tokens.next();
                let extra = tokens.next();
                match (tag, count, extra) {
                    (Some("n"), Some(c), None) => {
                        let parsed = c.parse::<usize>().map_err(|_| Error::Parse {
                            line,
                            msg: format!("vertex count '{c}' is not a nonnegative integer"),
                        })?;
                        check_vertex_budget(parsed)?;
                        n = Some(parsed);
                    }
                    _ => {
                        return Err(Error::Parse {
                            line,
                            msg: format!("expected header 'n <count>', found '{trimmed}'"),
                        })
                    }
                }
            }
            Some(count) => {
                let src = tokens.next();
                let dst = tokens.next();
                let extra = tokens.next();
                let (src, dst) = match (src, dst, extra) {
                    (Some(s), Some(d), None) => (s, d),
                    _ => {
                        return Err(Error::Parse {
                            line,
                            msg: format!("expected 'src dst', found '{trimmed}'"),
                        })
                    }
                };
                let parse_id = |tok: &str| -> Result<usize> {
                    let id = tok.parse::<usize>().map_err(|_| Error::Parse {
                        line,
                        msg: format!("vertex id '{tok}' is not a nonnegative integer"),
                    })?;
                    if id >= count {
                        return Err(Error::Parse {
                            line,
                            msg: format!("vertex id {id} out of range for n = {count}"),
                        });
                    }
                    Ok(id)
                };
                edges.push((parse_id(src)?, parse_id(dst)?));
            }
        }
    }
    let n = n.ok_or(Error::BadGraphFile { detail: "empty graph file (no 'n <count>' header)".into() })?;
    let kinds = infer_kinds(n, &edges);
    let vertices = kinds.into_iter().map(VertexInfo::new).collect();
    ComputationGraph::new(vertices, edges)
}

fn check_vertex_budget(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        return Err(Error::BadGraphFile {
            detail: format!("graph declares {n} vertices (cap {MAX_VERTICES})"),
        });
    }
    Ok(())
}
