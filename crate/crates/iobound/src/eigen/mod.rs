//! Smallest-eigenvalue computation with a dense/iterative dispatch.
//!
//! Small matrices go through a full dense symmetric eigendecomposition;
//! large ones through restarted, deflated Lanczos (see [`lanczos`]). The
//! crossover defaults to n = 2048 and can be overridden with the
//! `IOBOUND_DENSE_THRESHOLD` environment variable (picked up by
//! [`EigenOptions::from_env`], which the CLI uses) or programmatically via
//! [`EigenOptions::dense_threshold`].
//!
//! Assembled Laplacians are positive semidefinite in exact arithmetic, but
//! the solvers work in floating point: eigenvalues in `(−10⁻⁹·max_diag, 0)`
//! are clamped to zero on the way out, and anything more negative is left
//! alone — that would be a real bug, and the test suites watch for it.

mod dense;
mod lanczos;
pub(crate) mod tridiag;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::laplacian::SparseLaplacian;

/// Default dense/iterative crossover dimension.
pub const DENSE_THRESHOLD_DEFAULT: usize = 2048;
/// Environment variable overriding the crossover (see [`EigenOptions::from_env`]).
pub const DENSE_THRESHOLD_ENV: &str = "IOBOUND_DENSE_THRESHOLD";
/// Default relative residual tolerance for the iterative path.
pub const RESIDUAL_TOL_DEFAULT: f64 = 1e-8;

/// Which solver produced a spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SolveMethod {
    Dense,
    Iterative,
}

impl SolveMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            SolveMethod::Dense => "dense",
            SolveMethod::Iterative => "iterative",
        }
    }
}

/// Knobs for [`smallest_eigenvalues`].
#[derive(Debug, Clone, Serialize)]
pub struct EigenOptions {
    /// Matrices up to this dimension use the dense solver.
    pub dense_threshold: usize,
    /// Relative residual tolerance (scaled by a bound on ‖L‖).
    pub residual_tol: f64,
    /// Bypass the size dispatch entirely (used by cross-checks and the CLI).
    pub force: Option<SolveMethod>,
    /// Seed for the iterative solver's start vectors. Fixed default, so
    /// repeated solves of the same problem return identical output.
    pub seed: u64,
}

impl Default for EigenOptions {
    fn default() -> Self {
        EigenOptions {
            dense_threshold: DENSE_THRESHOLD_DEFAULT,
            residual_tol: RESIDUAL_TOL_DEFAULT,
            force: None,
            seed: 0x10_B0_0D,
        }
    }
}

impl EigenOptions {
    /// Defaults, with the dense threshold overridden by
    /// `IOBOUND_DENSE_THRESHOLD` when that is set to a valid count.
    pub fn from_env() -> Result<Self> {
        let mut opts = EigenOptions::default();
        if let Ok(raw) = std::env::var(DENSE_THRESHOLD_ENV) {
            let parsed = raw.trim().parse::<usize>().map_err(|_| Error::InvalidParameter {
                what: format!("{DENSE_THRESHOLD_ENV} must be a nonnegative integer, got '{raw}'"),
            })?;
            opts.dense_threshold = parsed;
        }
        Ok(opts)
    }
}

/// The `h` smallest eigenvalues of a symmetric PSD matrix, with solver
/// provenance and accuracy diagnostics.
#[derive(Debug, Clone, Serialize)]
pub struct Spectrum {
    /// Ascending, multiplicity included, length `min(h, n)`, clamped ≥ 0
    /// within the PSD drift tolerance.
    pub eigenvalues: Vec<f64>,
    pub method: SolveMethod,
    /// Requested relative residual tolerance.
    pub requested_tol: f64,
    /// Achieved absolute residual bound (dense: backward-error estimate).
    pub residual: f64,
    /// Dimension of the matrix solved.
    pub n: usize,
    /// Restart cycles used (iterative path only).
    pub restarts: Option<usize>,
    /// Total Krylov steps across all runs (iterative path only).
    pub iterations: Option<usize>,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// `Σ_{i=1..k} λ_i` for each `k = 0..=len` (prefix sums; index by `k`).
    pub fn prefix_sums(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.eigenvalues.len() + 1);
        let mut acc = 0.0;
        out.push(acc);
        for &ev in &self.eigenvalues {
            acc += ev;
            out.push(acc);
        }
        out
    }
}

/// The `min(h, n)` smallest eigenvalues of `l`, ascending, multiplicity
/// included.
///
/// Dispatch: dense decomposition for `n ≤ dense_threshold` (or when forced),
/// restarted deflated Lanczos otherwise. Either path reports every returned
/// value to within `residual_tol · ‖L‖` of a true eigenvalue.
///
/// Errors: [`Error::InvalidParameter`] for `h = 0`,
/// [`Error::ConvergenceFailure`] if the iterative path exhausts its restart
/// budget.
pub fn smallest_eigenvalues(
    l: &SparseLaplacian,
    h: usize,
    opts: &EigenOptions,
) -> Result<Spectrum> {
    if h == 0 {
        return Err(Error::InvalidParameter { what: "eigenvalue count h must be ≥ 1".into() });
    }
    let n = l.n();
    let target = h.min(n);
    let method = opts.force.unwrap_or(if n <= opts.dense_threshold {
        SolveMethod::Dense
    } else {
        SolveMethod::Iterative
    });

    let (mut values, method, residual, restarts, iterations) = match method {
        SolveMethod::Dense => {
            let vals = dense::smallest(l, target);
            (vals, SolveMethod::Dense, dense::residual_estimate(l), None, None)
        }
        SolveMethod::Iterative => {
            if target == 0 {
                (Vec::new(), SolveMethod::Iterative, 0.0, None, None)
            } else {
                let out = lanczos::smallest(l, target, opts.residual_tol, opts.seed)?;
                (
                    out.values,
                    SolveMethod::Iterative,
                    out.max_residual,
                    Some(out.restarts),
                    Some(out.basis_total),
                )
            }
        }
    };

    clamp_psd_drift(&mut values, l.max_diag());
    debug_assert!(values.windows(2).all(|w| w[0] <= w[1]), "spectrum sorted");
    Ok(Spectrum {
        eigenvalues: values,
        method,
        requested_tol: opts.residual_tol,
        residual,
        n,
        restarts,
        iterations,
    })
}

/// Clamp floating-point PSD drift: values in `(−10⁻⁹·max_diag, 0)` become 0.
fn clamp_psd_drift(values: &mut [f64], max_diag: f64) {
    let tol = 1e-9 * max_diag;
    for v in values.iter_mut() {
        if *v < 0.0 && *v > -tol {
            *v = 0.0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{butterfly, hypercube};
    use crate::graph::WeightedGraph;
    use crate::laplacian::{laplacian, tilde_laplacian, unit_laplacian, LaplacianVariant};

    fn forced(method: SolveMethod) -> EigenOptions {
        EigenOptions { force: Some(method), ..EigenOptions::default() }
    }

    /// Unit-weight cycle graph on n vertices: eigenvalues 2 − 2cos(2πj/n).
    fn cycle(n: usize) -> crate::laplacian::SparseLaplacian {
        let mut wg = WeightedGraph::new(n);
        for v in 0..n {
            wg.add_edge(v, (v + 1) % n, 1.0).unwrap();
        }
        laplacian(&wg, LaplacianVariant::Unit).unwrap()
    }

    // ── dense path against closed forms ──

    #[test]
    fn dense_cycle_spectrum_matches_closed_form() {
        let n = 12;
        let l = cycle(n);
        let got = smallest_eigenvalues(&l, n, &EigenOptions::default()).unwrap();
        assert_eq!(got.method, SolveMethod::Dense);
        let mut want: Vec<f64> = (0..n)
            .map(|j| 2.0 - 2.0 * (2.0 * std::f64::consts::PI * j as f64 / n as f64).cos())
            .collect();
        want.sort_by(f64::total_cmp);
        for (g, w) in got.eigenvalues.iter().zip(&want) {
            assert!((g - w).abs() < 1e-10, "{g} vs {w}");
        }
    }

    #[test]
    fn dense_hypercube_support_spectrum() {
        // Unit Laplacian of the 3-dim hypercube support: {0, 2×3, 4×3, 6}.
        let g = hypercube(3).unwrap();
        let l = unit_laplacian(&g);
        let got = smallest_eigenvalues(&l, 8, &EigenOptions::default()).unwrap();
        let want = [0.0, 2.0, 2.0, 2.0, 4.0, 4.0, 4.0, 6.0];
        for (g, w) in got.eigenvalues.iter().zip(&want) {
            assert!((g - w).abs() < 1e-9, "{g} vs {w}");
        }
    }

    // ── iterative path against the dense one ──

    #[test]
    fn lanczos_matches_dense_on_cycle_with_multiplicities() {
        // Every nonzero cycle eigenvalue has multiplicity 2 — the deflated
        // restarts must find both copies.
        let n = 60;
        let l = cycle(n);
        let d = smallest_eigenvalues(&l, n, &forced(SolveMethod::Dense)).unwrap();
        let i = smallest_eigenvalues(&l, n, &forced(SolveMethod::Iterative)).unwrap();
        assert_eq!(i.method, SolveMethod::Iterative);
        assert_eq!(i.len(), n);
        for (a, b) in d.eigenvalues.iter().zip(&i.eigenvalues) {
            assert!((a - b).abs() < 1e-7, "dense {a} vs lanczos {b}");
        }
    }

    #[test]
    fn lanczos_matches_dense_on_hypercube_tilde() {
        let g = hypercube(6).unwrap();
        let l = tilde_laplacian(&g);
        let h = 40;
        let d = smallest_eigenvalues(&l, h, &forced(SolveMethod::Dense)).unwrap();
        let i = smallest_eigenvalues(&l, h, &forced(SolveMethod::Iterative)).unwrap();
        for (k, (a, b)) in d.eigenvalues.iter().zip(&i.eigenvalues).enumerate() {
            assert!((a - b).abs() < 1e-7, "k={k}: dense {a} vs lanczos {b}");
        }
    }

    #[test]
    fn lanczos_matches_dense_on_butterfly_partial_spectrum() {
        let g = butterfly(4).unwrap();
        let l = tilde_laplacian(&g);
        let h = 25;
        let d = smallest_eigenvalues(&l, h, &forced(SolveMethod::Dense)).unwrap();
        let i = smallest_eigenvalues(&l, h, &forced(SolveMethod::Iterative)).unwrap();
        for (k, (a, b)) in d.eigenvalues.iter().zip(&i.eigenvalues).enumerate() {
            assert!((a - b).abs() < 1e-7, "k={k}: dense {a} vs lanczos {b}");
        }
    }

    #[test]
    fn lanczos_handles_disconnected_supports() {
        // Two disjoint cycles: the kernel is 2-dimensional; deflated restarts
        // must find both zero eigenvalues even though one Krylov space never
        // leaves its component.
        let mut wg = WeightedGraph::new(14);
        for v in 0..7 {
            wg.add_edge(v, (v + 1) % 7, 1.0).unwrap();
            wg.add_edge(7 + v, 7 + (v + 1) % 7, 1.0).unwrap();
        }
        let l = laplacian(&wg, LaplacianVariant::Unit).unwrap();
        let got = smallest_eigenvalues(&l, 3, &forced(SolveMethod::Iterative)).unwrap();
        assert!(got.eigenvalues[0].abs() < 1e-9);
        assert!(got.eigenvalues[1].abs() < 1e-9, "second kernel vector found by restart");
        assert!(got.eigenvalues[2] > 0.1, "third eigenvalue is genuinely positive");
    }

    #[test]
    fn zero_matrix_spectrum_is_zero() {
        let l = laplacian(&WeightedGraph::new(9), LaplacianVariant::Tilde).unwrap();
        for method in [SolveMethod::Dense, SolveMethod::Iterative] {
            let got = smallest_eigenvalues(&l, 5, &forced(method)).unwrap();
            assert_eq!(got.eigenvalues, vec![0.0; 5], "{method:?}");
        }
    }

    // ── dispatch & options ──

    #[test]
    fn h_clamps_to_n() {
        let l = cycle(5);
        let got = smallest_eigenvalues(&l, 100, &EigenOptions::default()).unwrap();
        assert_eq!(got.len(), 5);
    }

    #[test]
    fn h_zero_is_rejected() {
        let l = cycle(5);
        assert!(matches!(
            smallest_eigenvalues(&l, 0, &EigenOptions::default()),
            Err(Error::InvalidParameter { .. })
        ));
    }

    #[test]
    fn dispatch_respects_threshold() {
        let l = cycle(40);
        let opts = EigenOptions { dense_threshold: 39, ..EigenOptions::default() };
        let got = smallest_eigenvalues(&l, 4, &opts).unwrap();
        assert_eq!(got.method, SolveMethod::Iterative, "n=40 above threshold 39");
        let opts = EigenOptions { dense_threshold: 40, ..EigenOptions::default() };
        let got = smallest_eigenvalues(&l, 4, &opts).unwrap();
        assert_eq!(got.method, SolveMethod::Dense, "n=40 at threshold 40");
    }

    #[test]
    fn iterative_solves_are_reproducible() {
        let g = hypercube(5).unwrap();
        let l = tilde_laplacian(&g);
        let a = smallest_eigenvalues(&l, 10, &forced(SolveMethod::Iterative)).unwrap();
        let b = smallest_eigenvalues(&l, 10, &forced(SolveMethod::Iterative)).unwrap();
        assert_eq!(a.eigenvalues, b.eigenvalues, "same seed, bitwise-identical output");
    }

    #[test]
    fn prefix_sums_accumulate() {
        let l = cycle(4); // spectrum {0, 2, 2, 4}
        let s = smallest_eigenvalues(&l, 4, &EigenOptions::default()).unwrap();
        let p = s.prefix_sums();
        assert_eq!(p.len(), 5);
        assert!(p[0].abs() < 1e-12);
        assert!((p[2] - 2.0).abs() < 1e-9);
        assert!((p[4] - 8.0).abs() < 1e-9, "trace of the 4-cycle Laplacian");
    }

    #[test]
    fn spectra_are_nonnegative_and_sorted() {
        let g = butterfly(3).unwrap();
        for l in [tilde_laplacian(&g), unit_laplacian(&g)] {
            for method in [SolveMethod::Dense, SolveMethod::Iterative] {
                let s = smallest_eigenvalues(&l, l.n(), &forced(method)).unwrap();
                assert!(
                    s.eigenvalues.iter().all(|&v| v >= 0.0),
                    "{method:?}: clamped PSD spectrum"
                );
                assert!(s.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
            }
        }
    }
}
