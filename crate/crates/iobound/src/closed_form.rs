//! Closed-form Laplacian spectra and I/O bounds for hypercube and butterfly
//! graphs, plus the decomposition machinery that proves the butterfly case.
//!
//! # Hypercube
//!
//! The unit Laplacian of the `l`-dimensional hypercube `Q_l` has eigenvalue
//! `2i` with multiplicity `C(l, i)` for `i = 0..=l` (a product of `l` path
//! spectra under the Cartesian-product rule). Feeding the first `α + 1`
//! eigenvalue classes into the loose spectral bound and simplifying yields
//!
//! ```text
//! hypercube_bound(l, M, α) = Σ_{i=0}^{α} C(l,i) · (i·2^{l+1}/(l·K) − 2M),
//! K = Σ_{i=0}^{α} C(l,i)
//! ```
//!
//! which is positive (nontrivial) roughly while `M ≤ 2^l/(l+1)²`.
//!
//! # Butterfly
//!
//! The `l`-level butterfly's undirected support decomposes, column transition
//! by column transition, into weighted paths. An *augmented butterfly*
//! `B_l(q)` for a binary string `q` (`|q| = m ≤ l`) keeps the first
//! `l − m + 1` columns as a plain `(l−m)`-level butterfly and replaces the
//! last `m` column transitions according to `q`: a `1` keeps only the
//! straight edges, reweighted to 2; a `0` deletes the transition entirely and
//! adds 2 to the vertex weight of every endpoint. The splitting lemma
//!
//! ```text
//! λ(B_l(q)) = λ(B_l("1" + q)) ⊎ λ(B_l("0" + q))
//! ```
//!
//! peels transitions until only weighted paths `K(q)` (`|q| = l`) remain.
//! Counting the path pieces over all `2^l` strings gives the census
//!
//! * one plain path `P_{l+1}`,
//! * `2^{l−i+1}` paths `P′_i` with one weighted end (`i = 1..=l`),
//! * `(l−i)·2^{l−i−1}` paths `P″_i` with both ends weighted (`i = 1..l`),
//!
//! whose spectra are explicit cosines; assembling them yields the butterfly
//! spectrum and the bound
//!
//! ```text
//! butterfly_bound(l, M, α) = (l+1)·2^l·(1 − cos(π/(2(l−α)+1))) − 2^{α+2}·M.
//! ```

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::generators::MAX_VERTICES;
use crate::graph::WeightedGraph;

/// Largest `l` accepted by the spectrum and census functions; keeps every
/// multiplicity (up to `C(l, l/2)` and `(l+1)·2^l`) inside `u64`.
pub const MAX_CLOSED_FORM_LEVEL: usize = 58;

/// Cap on [`AnalyticSpectrum::expand`] output length (2²⁴ ≈ 16.8M values).
const MAX_EXPANDED: u64 = 1 << 24;

// ─────────────────────────── analytic spectra ───────────────────────────

/// A spectrum as (eigenvalue, multiplicity) pairs, ascending, with
/// coincident eigenvalues merged.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalyticSpectrum {
    entries: Vec<(f64, u64)>,
}

/// Eigenvalues closer than this merge into a single entry.
const MERGE_TOL: f64 = 1e-9;

impl AnalyticSpectrum {
    /// Build from unordered pairs; sorts and merges within `1e−9`.
    pub fn from_entries(pairs: impl IntoIterator<Item = (f64, u64)>) -> Self {
        let mut raw: Vec<(f64, u64)> = pairs.into_iter().filter(|&(_, m)| m > 0).collect();
        raw.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut entries: Vec<(f64, u64)> = Vec::with_capacity(raw.len());
        for (value, mult) in raw {
            match entries.last_mut() {
                Some(last) if (value - last.0).abs() < MERGE_TOL => last.1 += mult,
                _ => entries.push((value, mult)),
            }
        }
        AnalyticSpectrum { entries }
    }

    /// `(eigenvalue, multiplicity)` pairs, ascending in eigenvalue.
    pub fn entries(&self) -> &[(f64, u64)] {
        &self.entries
    }

    /// Sum of multiplicities (the matrix dimension this spectrum describes).
    pub fn total(&self) -> u64 {
        self.entries.iter().map(|&(_, m)| m).sum()
    }

    /// Multiplicity-expanded ascending eigenvalue list.
    pub fn expand(&self) -> Vec<f64> {
        let total = self.total();
        assert!(
            total <= MAX_EXPANDED,
            "refusing to expand a spectrum of {total} values (cap {MAX_EXPANDED})"
        );
        let mut out = Vec::with_capacity(total as usize);
        for &(value, mult) in &self.entries {
            out.extend(std::iter::repeat(value).take(mult as usize));
        }
        out
    }

    /// Sum of the `k` smallest eigenvalues, multiplicity included.
    pub fn partial_sum(&self, k: u64) -> f64 {
        let mut remaining = k;
        let mut acc = 0.0;
        for &(value, mult) in &self.entries {
            if remaining == 0 {
                break;
            }
            let take = mult.min(remaining);
            acc += value * take as f64;
            remaining -= take;
        }
        acc
    }
}

fn check_level(l: usize) -> Result<()> {
    if l == 0 {
        return Err(Error::InvalidParameter { what: "level l must be ≥ 1".into() });
    }
    if l > MAX_CLOSED_FORM_LEVEL {
        return Err(Error::SizeOverflow {
            detail: format!("level l = {l} exceeds closed-form cap {MAX_CLOSED_FORM_LEVEL}"),
        });
    }
    Ok(())
}

/// `C(n, k)` exactly, via the multiplicative formula in `u128`.
fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).expect("binomial exceeds u64")
}

// ─────────────────────────────── hypercube ───────────────────────────────

/// Unit-Laplacian spectrum of the `l`-dimensional hypercube: eigenvalue `2i`
/// with multiplicity `C(l, i)` for `i = 0..=l`.
pub fn hypercube_spectrum(l: usize) -> Result<AnalyticSpectrum> {
    check_level(l)?;
    Ok(AnalyticSpectrum::from_entries((0..=l).map(|i| (2.0 * i as f64, binomial(l, i)))))
}

/// Memory threshold below which the hypercube bound stays positive:
/// `2^l / (l+1)²`.
pub fn hypercube_nontrivial_threshold(l: usize) -> f64 {
    (l as f64).exp2() / ((l + 1) as f64).powi(2)
}

/// Closed-form I/O lower bound for the `l`-dimensional hypercube DAG with
/// fast memory `M`, using the first `α + 1` eigenvalue classes:
///
/// ```text
/// Σ_{i=0}^{α} C(l,i) · (i·2^{l+1}/(l·K) − 2M),   K = Σ_{i=0}^{α} C(l,i).
/// ```
///
/// At `α = 1` this simplifies to `2^{l+1}/(l+1) − 2M(l+1)`. Requires
/// `1 ≤ α < l`.
pub fn hypercube_bound(l: usize, memory: u64, alpha: usize) -> Result<f64> {
    check_level(l)?;
    if alpha < 1 || alpha >= l {
        return Err(Error::AlphaOutOfRange { alpha, lo: 1, hi: l.saturating_sub(1) });
    }
    let m = memory as f64;
    let k: f64 = (0..=alpha).map(|i| binomial(l, i) as f64).sum();
    let pow = (l as f64 + 1.0).exp2(); // 2^{l+1}
    let mut acc = 0.0;
    for i in 0..=alpha {
        acc += binomial(l, i) as f64 * (i as f64 * pow / (l as f64 * k) - 2.0 * m);
    }
    Ok(acc)
}

/// The `(α, bound)` pair maximizing [`hypercube_bound`] over `α ∈ 1..l`
/// (exhaustive scan; ties keep the smallest `α`). Requires `l ≥ 2`.
pub fn hypercube_best_bound(l: usize, memory: u64) -> Result<(usize, f64)> {
    check_level(l)?;
    if l < 2 {
        return Err(Error::AlphaOutOfRange { alpha: 1, lo: 1, hi: 0 });
    }
    let mut best = (1, hypercube_bound(l, memory, 1)?);
    for alpha in 2..l {
        let value = hypercube_bound(l, memory, alpha)?;
        if value > best.1 {
            best = (alpha, value);
        }
    }
    Ok(best)
}

// ─────────────────────────────── butterfly ───────────────────────────────

/// Unit-Laplacian spectrum of the `l`-level butterfly support, assembled
/// from the path census: `λ(B_l) = ⊎_{q ∈ {0,1}^l} λ(K(q))`.
pub fn butterfly_spectrum(l: usize) -> Result<AnalyticSpectrum> {
    check_level(l)?;
    let mut pairs: Vec<(f64, u64)> = Vec::new();
    for (spec, count) in butterfly_path_census(l)? {
        for value in path_spectrum(spec) {
            pairs.push((value, count));
        }
    }
    Ok(AnalyticSpectrum::from_entries(pairs))
}

/// Closed-form I/O lower bound for the `l`-level butterfly DAG with fast
/// memory `M`:
///
/// ```text
/// (l+1)·2^l·(1 − cos(π/(2(l−α)+1))) − 2^{α+2}·M.
/// ```
///
/// Requires `0 ≤ α < l`.
pub fn butterfly_bound(l: usize, memory: u64, alpha: usize) -> Result<f64> {
    check_level(l)?;
    if alpha >= l {
        return Err(Error::AlphaOutOfRange { alpha, lo: 0, hi: l - 1 });
    }
    let n = (l as f64 + 1.0) * (l as f64).exp2();
    let gap = 1.0 - (PI / (2.0 * (l - alpha) as f64 + 1.0)).cos();
    Ok(n * gap - (alpha as f64 + 2.0).exp2() * memory as f64)
}

/// The `α` matching a power-of-two memory size: `α = l − log₂ M`.
/// Fails unless `M` is a power of two with `1 ≤ log₂ M ≤ l`.
pub fn butterfly_alpha_for_memory(l: usize, memory: u64) -> Result<usize> {
    check_level(l)?;
    if memory == 0 || !memory.is_power_of_two() {
        return Err(Error::NotPowerOfTwo { n: memory as usize });
    }
    let log = memory.trailing_zeros() as usize;
    if log < 1 || log > l {
        return Err(Error::InvalidParameter {
            what: format!("log₂(M) = {log} outside 1..={l}, no valid α = l − log₂(M)"),
        });
    }
    Ok(l - log)
}

/// The `(α, bound)` pair maximizing [`butterfly_bound`] over `α ∈ 0..l`
/// (exhaustive scan; ties keep the smallest `α`).
pub fn butterfly_best_bound(l: usize, memory: u64) -> Result<(usize, f64)> {
    check_level(l)?;
    let mut best = (0, butterfly_bound(l, memory, 0)?);
    for alpha in 1..l {
        let value = butterfly_bound(l, memory, alpha)?;
        if value > best.1 {
            best = (alpha, value);
        }
    }
    Ok(best)
}

// ─────────────────────────── weighted path pieces ───────────────────────────

/// End-weighting of a weight-2 path piece.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum PathKind {
    /// `P_i`: no vertex weights.
    Plain,
    /// `P′_i`: vertex weight 2 on one end.
    OneWeightedEnd,
    /// `P″_i`: vertex weight 2 on both ends (4 on a single shared vertex).
    BothWeightedEnds,
}

impl PathKind {
    pub fn as_str(self) -> &'static str {
        match self {
            PathKind::Plain => "P",
            PathKind::OneWeightedEnd => "P'",
            PathKind::BothWeightedEnds => "P\"",
        }
    }
}

/// A path on `len` vertices with edge weights 2 and the end-weighting of
/// `kind`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PathSpec {
    pub len: usize,
    pub kind: PathKind,
}

impl PathSpec {
    pub fn new(len: usize, kind: PathKind) -> Self {
        assert!(len >= 1, "a path piece has at least one vertex");
        PathSpec { len, kind }
    }
}

impl std::fmt::Display for PathSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}_{}", self.kind.as_str(), self.len)
    }
}

/// Closed-form Laplacian spectrum of a weight-2 path piece, ascending:
///
/// * `P_i`:  `4 − 4cos(πj/i)`, `j = 0..i`
/// * `P′_i`: `4 − 4cos(π(2j+1)/(2i+1))`, `j = 0..i`
/// * `P″_i`: `4 − 4cos(πj/(i+1))`, `j = 1..=i`
pub fn path_spectrum(spec: PathSpec) -> Vec<f64> {
    let i = spec.len as f64;
    match spec.kind {
        PathKind::Plain => {
            (0..spec.len).map(|j| 4.0 - 4.0 * (PI * j as f64 / i).cos()).collect()
        }
        PathKind::OneWeightedEnd => (0..spec.len)
            .map(|j| 4.0 - 4.0 * (PI * (2 * j + 1) as f64 / (2.0 * i + 1.0)).cos())
            .collect(),
        PathKind::BothWeightedEnds => {
            (1..=spec.len).map(|j| 4.0 - 4.0 * (PI * j as f64 / (i + 1.0)).cos()).collect()
        }
    }
}

/// The weighted graph a [`PathSpec`] describes: `len` vertices in a line,
/// edge weights 2, vertex weight 2 per weighted end (a single-vertex `P″`
/// carries weight 4).
pub fn path_graph(spec: PathSpec) -> WeightedGraph {
    let mut wg = WeightedGraph::new(spec.len);
    for v in 1..spec.len {
        wg.add_edge(v - 1, v, 2.0).expect("consecutive path vertices are distinct and in range");
    }
    match spec.kind {
        PathKind::Plain => {}
        PathKind::OneWeightedEnd => {
            wg.add_vertex_weight(spec.len - 1, 2.0).expect("end vertex in range");
        }
        PathKind::BothWeightedEnds => {
            wg.add_vertex_weight(0, 2.0).expect("end vertex in range");
            wg.add_vertex_weight(spec.len - 1, 2.0).expect("end vertex in range");
        }
    }
    wg
}

// ───────────────────────── augmented butterflies ─────────────────────────

/// A binary string selecting how the trailing column transitions of a
/// butterfly are augmented (`1` → weight-2 straight edges, `0` → deleted
/// transition with +2 vertex weights).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AugmentationString {
    bits: Vec<bool>,
}

impl AugmentationString {
    pub fn empty() -> Self {
        AugmentationString { bits: Vec::new() }
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        AugmentationString { bits }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// `bit` prepended: the string driving the next-earlier transition.
    pub fn prepended(&self, bit: bool) -> Self {
        let mut bits = Vec::with_capacity(self.bits.len() + 1);
        bits.push(bit);
        bits.extend_from_slice(&self.bits);
        AugmentationString { bits }
    }

    /// All `2^len` strings of the given length, in lexicographic order.
    pub fn all_of_length(len: usize) -> Vec<Self> {
        assert!(len < 32, "enumerating 2^{len} strings is not sensible");
        (0..1u64 << len)
            .map(|mask| {
                AugmentationString {
                    bits: (0..len).map(|i| mask >> (len - 1 - i) & 1 == 1).collect(),
                }
            })
            .collect()
    }
}

impl std::str::FromStr for AugmentationString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                other => {
                    return Err(Error::BadString {
                        detail: format!(
                            "augmentation strings are over {{0,1}}; found '{other}' at offset {i}"
                        ),
                    })
                }
            }
        }
        Ok(AugmentationString { bits })
    }
}

impl std::fmt::Display for AugmentationString {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// The augmented butterfly `B_l(q)` as a weighted graph.
///
/// With `m = |q| ≤ l`: `l + 1` columns of `2^{l−m}` rows; the first
/// `l − m + 1` columns form a plain `(l−m)`-level butterfly with unit
/// weights; transition `l − m + i − 1 → l − m + i` is governed by `q_i`
/// (1-based): `1` keeps straight edges at weight 2, `0` deletes the
/// transition and adds vertex weight 2 to every vertex of both columns.
/// `B_l("")` is the unit-weight butterfly support; a full-length `q` yields
/// the path `K(q)`.
pub fn augmented_butterfly(l: usize, q: &AugmentationString) -> Result<WeightedGraph> {
    check_level(l)?;
    let m = q.len();
    if m > l {
        return Err(Error::BadString {
            detail: format!("augmentation string of length {m} exceeds level l = {l}"),
        });
    }
    let plain = l - m; // level of the untouched butterfly prefix
    let rows: usize = 1 << plain;
    let n = (l + 1) * rows;
    if n > MAX_VERTICES {
        return Err(Error::SizeOverflow {
            detail: format!("augmented butterfly would have {n} vertices (cap {MAX_VERTICES})"),
        });
    }
    let id = |col: usize, row: usize| col * rows + row;

    let mut wg = WeightedGraph::new(n);
    // Plain butterfly prefix: straight + cross edges, unit weight.
    for col in 0..plain {
        for row in 0..rows {
            wg.add_edge(id(col, row), id(col + 1, row), 1.0).expect("distinct in-range vertices");
            wg.add_edge(id(col, row), id(col + 1, row ^ (1 << col)), 1.0)
                .expect("distinct in-range vertices");
        }
    }
    // Augmented transitions.
    for (i, &bit) in q.bits().iter().enumerate() {
        let col = plain + i; // transition col → col + 1
        if bit {
            for row in 0..rows {
                wg.add_edge(id(col, row), id(col + 1, row), 2.0)
                    .expect("distinct in-range vertices");
            }
        } else {
            for row in 0..rows {
                wg.add_vertex_weight(id(col, row), 2.0).expect("vertex in range");
                wg.add_vertex_weight(id(col + 1, row), 2.0).expect("vertex in range");
            }
        }
    }
    Ok(wg)
}

// ───────────────────────────── the path census ─────────────────────────────

/// Decompose `K(q)` (a full-length augmentation of the `l`-level butterfly,
/// `|q| = l`) into its weighted-path components.
///
/// `K(q)` is a path on `l + 1` vertices whose `i`-th edge survives at weight
/// 2 iff `q_i = 1`; each deleted edge adds vertex weight 2 to both of its
/// endpoints. Components are maximal runs of surviving edges; a component
/// end is weighted exactly when it is interior to the original path.
pub fn k_path_multiset(l: usize, q: &AugmentationString) -> Result<Vec<PathSpec>> {
    check_level(l)?;
    if q.len() != l {
        return Err(Error::BadString {
            detail: format!("K(q) needs a full-length string: |q| = {}, l = {l}", q.len()),
        });
    }
    let bits = q.bits();
    let mut out = Vec::new();
    let mut start = 0usize; // first vertex of the current run
    for v in 0..=l {
        // The run ends at v when there is no surviving edge v → v+1.
        let run_ends = v == l || !bits[v];
        if !run_ends {
            continue;
        }
        let left_weighted = start > 0;
        let right_weighted = v < l;
        let kind = match (left_weighted, right_weighted) {
            (false, false) => PathKind::Plain,
            (true, true) => PathKind::BothWeightedEnds,
            _ => PathKind::OneWeightedEnd,
        };
        out.push(PathSpec::new(v - start + 1, kind));
        start = v + 1;
    }
    Ok(out)
}

/// Aggregate path census over all `2^l` strings, from the closed-form
/// counts: one `P_{l+1}`; `2^{l−i+1}` of `P′_i` for `i = 1..=l`;
/// `(l−i)·2^{l−i−1}` of `P″_i` for `i = 1..l`.
pub fn butterfly_path_census(l: usize) -> Result<Vec<(PathSpec, u64)>> {
    check_level(l)?;
    let mut out = Vec::with_capacity(2 * l);
    out.push((PathSpec::new(l + 1, PathKind::Plain), 1));
    for i in 1..=l {
        out.push((PathSpec::new(i, PathKind::OneWeightedEnd), 1u64 << (l - i + 1)));
    }
    for i in 1..l {
        out.push((
            PathSpec::new(i, PathKind::BothWeightedEnds),
            (l - i) as u64 * (1u64 << (l - i - 1)),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::{smallest_eigenvalues, EigenOptions};
    use crate::generators::{butterfly, hypercube};
    use crate::laplacian::{laplacian, LaplacianVariant};

    // Assemble the weighted graph as-given (edge weights + vertex weights)
    // and take its full dense spectrum.
    fn dense_spectrum_of(wg: &WeightedGraph) -> Vec<f64> {
        let l = laplacian(wg, LaplacianVariant::Tilde).unwrap();
        smallest_eigenvalues(&l, wg.n(), &EigenOptions::default()).unwrap().eigenvalues
    }

    fn assert_multiset_eq(a: &[f64], b: &[f64], tol: f64, context: &str) {
        assert_eq!(a.len(), b.len(), "{context}: length mismatch");
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).abs() < tol, "{context}: {x} vs {y}");
        }
    }

    // ── analytic spectrum plumbing ──

    #[test]
    fn entries_merge_and_sort() {
        let s = AnalyticSpectrum::from_entries([(2.0, 1), (0.0, 1), (2.0 + 1e-12, 3), (5.0, 2)]);
        assert_eq!(s.entries(), &[(0.0, 1), (2.0, 4), (5.0, 2)]);
        assert_eq!(s.total(), 7);
        assert_eq!(s.expand().len(), 7);
    }

    #[test]
    fn partial_sums_split_multiplicities() {
        let s = AnalyticSpectrum::from_entries([(0.0, 1), (2.0, 3), (4.0, 1)]);
        assert_eq!(s.partial_sum(0), 0.0);
        assert_eq!(s.partial_sum(2), 2.0);
        assert_eq!(s.partial_sum(4), 6.0);
        assert_eq!(s.partial_sum(100), 10.0, "clamps at total");
    }

    // ── hypercube ──

    #[test]
    fn hypercube_spectrum_matches_dense_numerics() {
        for l in 1..=6 {
            let want = dense_spectrum_of(&crate::graph::unit_support(&hypercube(l).unwrap()));
            let got = hypercube_spectrum(l).unwrap();
            assert_eq!(got.total(), 1 << l);
            assert_multiset_eq(&got.expand(), &want, 1e-8, &format!("Q_{l}"));
        }
    }

    #[test]
    fn hypercube_bound_alpha_one_simplification() {
        // Σ-form vs the printed α=1 simplification 2^{l+1}/(l+1) − 2M(l+1).
        for l in [3usize, 7, 10] {
            for memory in [1u64, 8, 9] {
                let direct = hypercube_bound(l, memory, 1).unwrap();
                let simplified =
                    (l as f64 + 1.0).exp2() / (l + 1) as f64 - 2.0 * memory as f64 * (l + 1) as f64;
                assert!((direct - simplified).abs() < 1e-9, "l={l} M={memory}");
            }
        }
    }

    #[test]
    fn hypercube_bound_brackets_the_memory_threshold() {
        // threshold 2^10/121 ≈ 8.46: positive at M=8, negative at M=9.
        let pos = hypercube_bound(10, 8, 1).unwrap();
        let neg = hypercube_bound(10, 9, 1).unwrap();
        assert!((pos - 10.181818).abs() < 1e-5, "got {pos}");
        assert!(neg < 0.0, "got {neg}");
        let threshold = hypercube_nontrivial_threshold(10);
        assert!(8.0 < threshold && threshold < 9.0);
    }

    #[test]
    fn hypercube_alpha_bounds_are_enforced() {
        assert!(matches!(
            hypercube_bound(5, 1, 0),
            Err(Error::AlphaOutOfRange { alpha: 0, lo: 1, hi: 4 })
        ));
        assert!(matches!(hypercube_bound(5, 1, 5), Err(Error::AlphaOutOfRange { .. })));
        assert!(hypercube_bound(5, 1, 4).is_ok());
    }

    #[test]
    fn hypercube_best_bound_scans_exhaustively() {
        let (alpha, value) = hypercube_best_bound(10, 1).unwrap();
        for a in 1..10 {
            let v = hypercube_bound(10, 1, a).unwrap();
            assert!(value >= v, "α={a} beats the reported best");
            if v == value {
                assert!(alpha <= a, "ties keep the smallest α");
            }
        }
    }

    // ── butterfly spectrum via the census ──

    #[test]
    fn butterfly_spectrum_matches_dense_numerics() {
        for l in 1..=4 {
            let want = dense_spectrum_of(&crate::graph::unit_support(&butterfly(l).unwrap()));
            let got = butterfly_spectrum(l).unwrap();
            assert_eq!(got.total() as usize, (l + 1) << l, "(l+1)·2^l vertices");
            assert_multiset_eq(&got.expand(), &want, 1e-8, &format!("B_{l}"));
        }
    }

    #[test]
    fn butterfly_one_level_is_the_four_cycle() {
        // B₁'s support is C₄: spectrum {0, 2, 2, 4}.
        let got = butterfly_spectrum(1).unwrap().expand();
        assert_multiset_eq(&got, &[0.0, 2.0, 2.0, 4.0], 1e-9, "B₁");
    }

    #[test]
    fn census_totals_count_the_vertices() {
        for l in 1..=12 {
            let total: u64 = butterfly_path_census(l)
                .unwrap()
                .iter()
                .map(|&(spec, count)| spec.len as u64 * count)
                .sum();
            assert_eq!(total, ((l as u64) + 1) << l, "l={l}");
        }
    }

    #[test]
    fn census_matches_exhaustive_enumeration() {
        // Aggregate k_path_multiset over all 2^l strings and compare with
        // the closed-form counts.
        use std::collections::BTreeMap;
        for l in 1..=6 {
            let mut counted: BTreeMap<PathSpec, u64> = BTreeMap::new();
            for q in AugmentationString::all_of_length(l) {
                for spec in k_path_multiset(l, &q).unwrap() {
                    *counted.entry(spec).or_insert(0) += 1;
                }
            }
            let formula: BTreeMap<PathSpec, u64> =
                butterfly_path_census(l).unwrap().into_iter().filter(|&(_, c)| c > 0).collect();
            assert_eq!(counted, formula, "l={l}");
        }
    }

    #[test]
    fn k_path_multiset_edge_strings() {
        let l = 4;
        let ones: AugmentationString = "1111".parse().unwrap();
        assert_eq!(
            k_path_multiset(l, &ones).unwrap(),
            vec![PathSpec::new(5, PathKind::Plain)]
        );
        let zeros: AugmentationString = "0000".parse().unwrap();
        let specs = k_path_multiset(l, &zeros).unwrap();
        assert_eq!(specs.len(), 5, "all-zeros isolates every vertex");
        assert_eq!(specs[0], PathSpec::new(1, PathKind::OneWeightedEnd));
        assert_eq!(specs[2], PathSpec::new(1, PathKind::BothWeightedEnds));
        assert_eq!(specs[4], PathSpec::new(1, PathKind::OneWeightedEnd));
    }

    // ── path pieces ──

    #[test]
    fn path_spectra_match_dense_numerics() {
        for len in 1..=7 {
            for kind in [PathKind::Plain, PathKind::OneWeightedEnd, PathKind::BothWeightedEnds] {
                let spec = PathSpec::new(len, kind);
                let want = dense_spectrum_of(&path_graph(spec));
                let mut got = path_spectrum(spec);
                got.sort_by(f64::total_cmp);
                assert_multiset_eq(&got, &want, 1e-9, &spec.to_string());
            }
        }
    }

    #[test]
    fn tiny_path_spectra_by_hand() {
        assert_eq!(path_spectrum(PathSpec::new(1, PathKind::Plain)), vec![0.0]);
        let p1w = path_spectrum(PathSpec::new(1, PathKind::OneWeightedEnd));
        assert!((p1w[0] - 2.0).abs() < 1e-12, "single vertex of weight 2");
        let p1ww = path_spectrum(PathSpec::new(1, PathKind::BothWeightedEnds));
        assert!((p1ww[0] - 4.0).abs() < 1e-12, "single vertex of weight 4");
        // {v0, v1} with v1 weighted: L = [[2,−2],[−2,4]] → 3 ± √5.
        let p2w = path_spectrum(PathSpec::new(2, PathKind::OneWeightedEnd));
        assert!((p2w[0] - (3.0 - 5f64.sqrt())).abs() < 1e-12);
        assert!((p2w[1] - (3.0 + 5f64.sqrt())).abs() < 1e-12);
    }

    // ── augmented butterflies & the splitting lemma ──

    #[test]
    fn empty_augmentation_is_the_plain_support() {
        for l in 1..=3 {
            let a = augmented_butterfly(l, &AugmentationString::empty()).unwrap();
            let b = crate::graph::unit_support(&butterfly(l).unwrap());
            assert_eq!(a.n(), b.n());
            let ea: Vec<_> = a.edges().collect();
            let eb: Vec<_> = b.edges().collect();
            assert_eq!(ea, eb, "l={l}");
        }
    }

    #[test]
    fn splitting_lemma_holds_numerically() {
        for l in 1..=3 {
            for m in 0..l {
                for q in AugmentationString::all_of_length(m) {
                    let whole = dense_spectrum_of(&augmented_butterfly(l, &q).unwrap());
                    let mut split =
                        dense_spectrum_of(&augmented_butterfly(l, &q.prepended(true)).unwrap());
                    split.extend(dense_spectrum_of(
                        &augmented_butterfly(l, &q.prepended(false)).unwrap(),
                    ));
                    split.sort_by(f64::total_cmp);
                    assert_multiset_eq(&whole, &split, 1e-8, &format!("l={l} q={q}"));
                }
            }
        }
    }

    #[test]
    fn full_augmentation_is_the_k_path() {
        // |q| = l: B_l(q) is K(q), whose spectrum is the union of its
        // census pieces' closed forms.
        let l = 3;
        for q in AugmentationString::all_of_length(l) {
            let graph_spectrum = dense_spectrum_of(&augmented_butterfly(l, &q).unwrap());
            let mut analytic: Vec<f64> = k_path_multiset(l, &q)
                .unwrap()
                .into_iter()
                .flat_map(path_spectrum)
                .collect();
            analytic.sort_by(f64::total_cmp);
            assert_multiset_eq(&graph_spectrum, &analytic, 1e-9, &format!("q={q}"));
        }
    }

    #[test]
    fn augmentation_strings_parse_and_print() {
        let q: AugmentationString = "1011".parse().unwrap();
        assert_eq!(q.to_string(), "1011");
        assert_eq!(q.len(), 4);
        assert_eq!(q.prepended(false).to_string(), "01011");
        assert!("".parse::<AugmentationString>().unwrap().is_empty());
        assert!(matches!("10x1".parse::<AugmentationString>(), Err(Error::BadString { .. })));
    }

    #[test]
    fn augmentation_length_is_checked() {
        let q: AugmentationString = "111".parse().unwrap();
        assert!(matches!(augmented_butterfly(2, &q), Err(Error::BadString { .. })));
        assert!(matches!(k_path_multiset(4, &q), Err(Error::BadString { .. })));
    }

    // ── butterfly bound ──

    #[test]
    fn butterfly_bound_by_hand_at_small_l() {
        // l=2, α=0, M=1: 3·4·(1−cos(π/5)) − 4 = 12·0.19098… − 4.
        let got = butterfly_bound(2, 1, 0).unwrap();
        let want = 12.0 * (1.0 - (PI / 5.0).cos()) - 4.0;
        assert!((got - want).abs() < 1e-12);
    }

    #[test]
    fn butterfly_bound_growth_is_linear_in_l_at_fixed_ratio() {
        // With M = 4 and α = l − 2, bound/2^l = (l+1)(1−cos(π/5)) − 4:
        // exactly linear in l with slope 1 − cos(π/5).
        let slope = 1.0 - (PI / 5.0).cos();
        let at = |l: usize| butterfly_bound(l, 4, l - 2).unwrap() / (l as f64).exp2();
        let d1 = (at(20) - at(16)) / 4.0;
        let d2 = (at(24) - at(20)) / 4.0;
        assert!((d1 - slope).abs() < 1e-9, "got {d1}");
        assert!((d2 - slope).abs() < 1e-9, "got {d2}");
    }

    #[test]
    fn butterfly_alpha_helper_inverts_powers_of_two() {
        assert_eq!(butterfly_alpha_for_memory(20, 4).unwrap(), 18);
        assert_eq!(butterfly_alpha_for_memory(5, 32).unwrap(), 0);
        assert!(matches!(butterfly_alpha_for_memory(5, 3), Err(Error::NotPowerOfTwo { n: 3 })));
        assert!(
            matches!(butterfly_alpha_for_memory(5, 1), Err(Error::InvalidParameter { .. })),
            "M = 1 would need α = l, outside the valid range"
        );
        assert!(matches!(butterfly_alpha_for_memory(5, 64), Err(Error::InvalidParameter { .. })));
    }

    #[test]
    fn butterfly_best_bound_scans_exhaustively() {
        let (alpha, value) = butterfly_best_bound(8, 4).unwrap();
        for a in 0..8 {
            assert!(value >= butterfly_bound(8, 4, a).unwrap(), "α={a}");
        }
        assert!(alpha < 8);
    }

    #[test]
    fn level_zero_and_oversized_levels_are_rejected() {
        assert!(matches!(hypercube_spectrum(0), Err(Error::InvalidParameter { .. })));
        assert!(matches!(butterfly_spectrum(0), Err(Error::InvalidParameter { .. })));
        assert!(matches!(
            hypercube_spectrum(MAX_CLOSED_FORM_LEVEL + 1),
            Err(Error::SizeOverflow { .. })
        ));
    }
}
