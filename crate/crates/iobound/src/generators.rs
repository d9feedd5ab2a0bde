//! Built-in computation-graph families.
//!
//! Six generators cover the graphs the bounds are evaluated on:
//!
//! * [`hypercube`] — dynamic-programming iteration over subsets: one vertex
//!   per `l`-bit string, an edge whenever a single 0-bit is raised to 1
//!   (the dependency pattern of Bellman–Held–Karp-style sweeps).
//! * [`butterfly`] — the FFT dataflow: `l+1` columns of `2^l` rows.
//! * [`naive_matmul`] — the cubic matrix-multiplication trace with one
//!   n-ary sum per output entry.
//! * [`strassen`] — the recursive seven-multiplication scheme.
//! * [`erdos_renyi_dag`] — a seeded G(n, p) sample, oriented low→high so the
//!   undirected support *is* the sample.
//! * [`inner_product`] — 2m inputs, m products, a fold of m−1 binary sums.
//!
//! Conventions shared by every family: vertex ids are dense and deterministic
//! given the parameters, kinds are inferred from degrees (sources are inputs,
//! sinks are outputs), vertices are unlabeled (labels are a trace-builder
//! feature), and every emitted graph passes [`crate::graph::validate_dag`].

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{infer_kinds, ComputationGraph, VertexId, VertexInfo};

/// Hard ceiling on generated graph sizes: `2^22` vertices.
pub const MAX_VERTICES: usize = 1 << 22;

/// Largest accepted hypercube dimension (`2^l` vertices at the cap).
pub const MAX_HYPERCUBE_DIM: usize = 22;

/// Finish a generator: infer kinds and run the construction checks.
fn assemble(n: usize, edges: Vec<(VertexId, VertexId)>) -> ComputationGraph {
    let vertices = infer_kinds(n, &edges)
        .into_iter()
        .map(VertexInfo::new)
        .collect();
    ComputationGraph::new(vertices, edges).expect("generator wiring is internally consistent")
}

fn check_cap(family: &str, vertex_count: u128) -> Result<()> {
    if vertex_count > MAX_VERTICES as u128 {
        return Err(Error::SizeOverflow {
            detail: format!(
                "{family} would have {vertex_count} vertices (cap {MAX_VERTICES})"
            ),
        });
    }
    Ok(())
}

/// The boolean-hypercube DAG on `2^l` vertices: vertex `u → v` iff `v` sets
/// exactly one 0-bit of `u`. Vertex `0…0` is the sole input and `1…1` the
/// sole sink.
///
/// Errors: `InvalidParameter` for `l = 0`, `SizeOverflow` for
/// `l >` [`MAX_HYPERCUBE_DIM`].
pub fn hypercube(l: usize) -> Result<ComputationGraph> {
    if l == 0 {
        return Err(Error::InvalidParameter { what: "hypercube needs l ≥ 1".into() });
    }
    if l > MAX_HYPERCUBE_DIM {
        return Err(Error::SizeOverflow {
            detail: format!("hypercube dimension l = {l} exceeds cap {MAX_HYPERCUBE_DIM}"),
        });
    }
    let n = 1usize << l;
    let mut edges = Vec::with_capacity(l * (n >> 1));
    for v in 0..n {
        for b in 0..l {
            if v & (1 << b) == 0 {
                edges.push((v, v | (1 << b)));
            }
        }
    }
    Ok(assemble(n, edges))
}

/// The FFT butterfly DAG with `l+1` columns of `2^l` rows. Vertex `(c, r)`
/// (id `c·2^l + r`) feeds `(c+1, r)` and `(c+1, r XOR 2^c)`; column 0 holds
/// the inputs, column `l` the outputs.
///
/// Errors: `InvalidParameter` for `l = 0`, `SizeOverflow` past the vertex cap.
pub fn butterfly(l: usize) -> Result<ComputationGraph> {
    if l == 0 {
        return Err(Error::InvalidParameter { what: "butterfly needs l ≥ 1".into() });
    }
    if l >= usize::BITS as usize - 2 {
        return Err(Error::SizeOverflow {
            detail: format!("butterfly level count l = {l} is far past the cap"),
        });
    }
    let rows = 1usize << l;
    let n = (l + 1) as u128 * rows as u128;
    check_cap("butterfly", n)?;
    let n = n as usize;
    let mut edges = Vec::with_capacity(2 * l * rows);
    for c in 0..l {
        let this = c * rows;
        let next = (c + 1) * rows;
        for r in 0..rows {
            edges.push((this + r, next + r));
            edges.push((this + r, next + (r ^ (1 << c))));
        }
    }
    Ok(assemble(n, edges))
}

/// The naive O(n³) matrix-multiplication trace: `2n²` inputs (A then B,
/// row-major), `n³` binary products, and one n-ary sum per output entry.
/// `n = 1` degenerates to a single product with no sum layer (3 vertices).
pub fn naive_matmul(n: usize) -> Result<ComputationGraph> {
    if n == 0 {
        return Err(Error::InvalidParameter { what: "naive_matmul needs n ≥ 1".into() });
    }
    let count = 2 * (n as u128) * (n as u128)
        + (n as u128).pow(3)
        + if n > 1 { (n as u128) * (n as u128) } else { 0 };
    check_cap("naive_matmul", count)?;
    let a = |i: usize, k: usize| i * n + k;
    let b = |k: usize, j: usize| n * n + k * n + j;
    let prod = |i: usize, j: usize, k: usize| 2 * n * n + (i * n + j) * n + k;
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                edges.push((a(i, k), prod(i, j, k)));
                edges.push((b(k, j), prod(i, j, k)));
            }
        }
    }
    if n == 1 {
        // The sum of one product is the product itself.
        return Ok(assemble(3, edges));
    }
    let sum = |i: usize, j: usize| 2 * n * n + n * n * n + i * n + j;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                edges.push((prod(i, j, k), sum(i, j)));
            }
        }
    }
    Ok(assemble(count as usize, edges))
}

/// A small arena generators thread through recursive constructions.
struct Wiring {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
}

impl Wiring {
    fn vertex(&mut self) -> VertexId {
        let id = self.n;
        self.n += 1;
        id
    }

    /// A fresh vertex consuming both operands.
    fn binary(&mut self, x: VertexId, y: VertexId) -> VertexId {
        let v = self.vertex();
        self.edges.push((x, v));
        self.edges.push((y, v));
        v
    }
}

/// An `s × s` block of vertex ids, row-major.
struct Block {
    s: usize,
    ids: Vec<VertexId>,
}

impl Block {
    fn at(&self, i: usize, j: usize) -> VertexId {
        self.ids[i * self.s + j]
    }

    fn quadrant(&self, qi: usize, qj: usize) -> Block {
        let h = self.s / 2;
        let mut ids = Vec::with_capacity(h * h);
        for i in 0..h {
            for j in 0..h {
                ids.push(self.at(qi * h + i, qj * h + j));
            }
        }
        Block { s: h, ids }
    }
}

/// Elementwise combination of two blocks: one binary vertex per entry.
fn block_binary(w: &mut Wiring, x: &Block, y: &Block) -> Block {
    let ids = x
        .ids
        .iter()
        .zip(&y.ids)
        .map(|(&a, &b)| w.binary(a, b))
        .collect();
    Block { s: x.s, ids }
}

fn strassen_rec(w: &mut Wiring, a: &Block, b: &Block) -> Block {
    if a.s == 1 {
        return Block { s: 1, ids: vec![w.binary(a.ids[0], b.ids[0])] };
    }
    let (a11, a12, a21, a22) =
        (a.quadrant(0, 0), a.quadrant(0, 1), a.quadrant(1, 0), a.quadrant(1, 1));
    let (b11, b12, b21, b22) =
        (b.quadrant(0, 0), b.quadrant(0, 1), b.quadrant(1, 0), b.quadrant(1, 1));

    // Seven products over elementwise pre-combinations.
    let s1 = block_binary(w, &a11, &a22);
    let s2 = block_binary(w, &b11, &b22);
    let m1 = strassen_rec(w, &s1, &s2);
    let s3 = block_binary(w, &a21, &a22);
    let m2 = strassen_rec(w, &s3, &b11);
    let s4 = block_binary(w, &b12, &b22);
    let m3 = strassen_rec(w, &a11, &s4);
    let s5 = block_binary(w, &b21, &b11);
    let m4 = strassen_rec(w, &a22, &s5);
    let s6 = block_binary(w, &a11, &a12);
    let m5 = strassen_rec(w, &s6, &b22);
    let s7 = block_binary(w, &a21, &a11);
    let s8 = block_binary(w, &b11, &b12);
    let m6 = strassen_rec(w, &s7, &s8);
    let s9 = block_binary(w, &a12, &a22);
    let s10 = block_binary(w, &b21, &b22);
    let m7 = strassen_rec(w, &s9, &s10);

    // Output combinations: C11 and C22 take four operands, C12/C21 two.
    let h = a.s / 2;
    let mut combo = |parts: &[&Block]| -> Block {
        let mut ids = Vec::with_capacity(h * h);
        for e in 0..h * h {
            let v = w.vertex();
            for p in parts {
                w.edges.push((p.ids[e], v));
            }
            ids.push(v);
        }
        Block { s: h, ids }
    };
    let c11 = combo(&[&m1, &m4, &m5, &m7]);
    let c12 = combo(&[&m3, &m5]);
    let c21 = combo(&[&m2, &m4]);
    let c22 = combo(&[&m1, &m2, &m3, &m6]);

    let mut ids = vec![0; a.s * a.s];
    for i in 0..h {
        for j in 0..h {
            ids[i * a.s + j] = c11.at(i, j);
            ids[i * a.s + (j + h)] = c12.at(i, j);
            ids[(i + h) * a.s + j] = c21.at(i, j);
            ids[(i + h) * a.s + (j + h)] = c22.at(i, j);
        }
    }
    Block { s: a.s, ids }
}

/// Vertex count of [`strassen`] without building it (for the size cap).
fn strassen_vertex_count(n: usize) -> u128 {
    // internal(s) = 14·(s/2)² + 7·internal(s/2), internal(1) = 1.
    let mut internal: u128 = 1;
    let mut s: u128 = 1;
    while s < n as u128 {
        s *= 2;
        internal = 14 * (s / 2) * (s / 2) + 7 * internal;
    }
    2 * (n as u128) * (n as u128) + internal
}

/// The recursive Strassen matrix-multiplication trace for `n × n` operands.
/// Pre-additions are binary vertices; the four output combinations per level
/// take up to four operands, so max in-degree is 4 at every size.
///
/// Errors: `NotPowerOfTwo` unless `n` is a power of two, `SizeOverflow` past
/// the vertex cap.
pub fn strassen(n: usize) -> Result<ComputationGraph> {
    if !n.is_power_of_two() {
        return Err(Error::NotPowerOfTwo { n });
    }
    check_cap("strassen", strassen_vertex_count(n))?;
    let mut w = Wiring { n: 0, edges: Vec::new() };
    let a = Block { s: n, ids: (0..n * n).map(|_| w.vertex()).collect() };
    let b = Block { s: n, ids: (0..n * n).map(|_| w.vertex()).collect() };
    strassen_rec(&mut w, &a, &b);
    Ok(assemble(w.n, w.edges))
}

/// A seeded Erdős–Rényi G(n, p) sample, each undirected edge oriented from
/// the lower to the higher index. The orientation makes the result a DAG
/// whose undirected support is exactly the sample, so spectral statements
/// about G(n, p) transfer unchanged.
///
/// Sampling walks pairs `(i, j)`, `i < j`, in lexicographic order, drawing
/// one `f64` per pair from ChaCha8 seeded with `seed` — a fixed, documented
/// scheme, so identical parameters give identical graphs on any platform.
pub fn erdos_renyi_dag(n: usize, p: f64, seed: u64) -> Result<ComputationGraph> {
    if n < 2 {
        return Err(Error::InvalidParameter { what: format!("erdos_renyi needs n ≥ 2, got {n}") });
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter {
            what: format!("edge probability must be in [0, 1], got {p}"),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.random::<f64>() < p {
                edges.push((i, j));
            }
        }
    }
    Ok(assemble(n, edges))
}

/// The inner-product trace ⟨a, b⟩ for vectors of length `m`: inputs
/// interleaved (`a_i` at `2i`, `b_i` at `2i+1`), one product per coordinate,
/// then a left fold of `m−1` binary sums. `m = 1` is just one product.
pub fn inner_product(m: usize) -> Result<ComputationGraph> {
    if m == 0 {
        return Err(Error::InvalidParameter { what: "inner_product needs m ≥ 1".into() });
    }
    let n = 4 * m - 1;
    let mut edges = Vec::new();
    let prod = |i: usize| 2 * m + i;
    for i in 0..m {
        edges.push((2 * i, prod(i)));
        edges.push((2 * i + 1, prod(i)));
    }
    let mut acc = prod(0);
    for i in 1..m {
        let s = 3 * m + (i - 1);
        edges.push((acc, s));
        edges.push((prod(i), s));
        acc = s;
    }
    Ok(assemble(n, edges))
}

/// Which built-in family to generate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Hypercube,
    Butterfly,
    NaiveMatmul,
    Strassen,
    ErdosRenyi,
    InnerProduct,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Hypercube,
        Family::Butterfly,
        Family::NaiveMatmul,
        Family::Strassen,
        Family::ErdosRenyi,
        Family::InnerProduct,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::Hypercube => "hypercube",
            Family::Butterfly => "butterfly",
            Family::NaiveMatmul => "naive_matmul",
            Family::Strassen => "strassen",
            Family::ErdosRenyi => "erdos_renyi",
            Family::InnerProduct => "inner_product",
        }
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.replace('-', "_").as_str() {
            "hypercube" => Ok(Family::Hypercube),
            "butterfly" => Ok(Family::Butterfly),
            "naive_matmul" => Ok(Family::NaiveMatmul),
            "strassen" => Ok(Family::Strassen),
            "erdos_renyi" => Ok(Family::ErdosRenyi),
            "inner_product" => Ok(Family::InnerProduct),
            other => Err(Error::InvalidParameter {
                what: format!(
                    "unknown family '{other}' (hypercube|butterfly|naive_matmul|strassen|erdos_renyi|inner_product)"
                ),
            }),
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A fully-specified generation request (what the CLI and sweeps pass around).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeneratorSpec {
    pub family: Family,
    /// `l` for hypercube/butterfly, `n` for the matrix families and
    /// Erdős–Rényi, `m` for inner products.
    pub size: usize,
    /// Edge probability — Erdős–Rényi only.
    pub edge_probability: Option<f64>,
    /// RNG seed — Erdős–Rényi only.
    pub seed: Option<u64>,
}

impl GeneratorSpec {
    pub fn new(family: Family, size: usize) -> Self {
        GeneratorSpec { family, size, edge_probability: None, seed: None }
    }
}

/// Generate the graph a [`GeneratorSpec`] describes.
pub fn generate(spec: &GeneratorSpec) -> Result<ComputationGraph> {
    match spec.family {
        Family::Hypercube => hypercube(spec.size),
        Family::Butterfly => butterfly(spec.size),
        Family::NaiveMatmul => naive_matmul(spec.size),
        Family::Strassen => strassen(spec.size),
        Family::ErdosRenyi => {
            let p = spec.edge_probability.ok_or_else(|| Error::InvalidParameter {
                what: "erdos_renyi needs an edge probability".into(),
            })?;
            let seed = spec.seed.ok_or_else(|| Error::InvalidParameter {
                what: "erdos_renyi needs a seed".into(),
            })?;
            erdos_renyi_dag(spec.size, p, seed)
        }
        Family::InnerProduct => inner_product(spec.size),
    }
}
