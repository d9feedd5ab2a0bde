//! Symmetric tridiagonal eigenvalue kernels.
//!
//! Two classic routines power the iterative path:
//!
//! * [`eigenvalues`] — implicit-shift QL on `(diag, offdiag)`, eigenvalues
//!   only, O(n²) total. The standard EISPACK-lineage formulation.
//! * [`eigenvector`] — inverse iteration for the eigenvector of a *given*
//!   eigenvalue, via a partially pivoted tridiagonal LU (one superdiagonal of
//!   fill-in). Used to read Ritz combinations — and their last components,
//!   which bound Lanczos residuals — out of the projected matrix.

use crate::error::{Error, Result};

/// All eigenvalues of the symmetric tridiagonal matrix with diagonal `d` and
/// off-diagonal `e` (`e.len() == d.len() - 1`), ascending.
///
/// Errors with [`Error::ConvergenceFailure`] only if some eigenvalue fails to
/// settle in 60 QL sweeps — which for finite inputs does not happen in
/// practice (typical counts are 2–3 per eigenvalue).
pub fn eigenvalues(d: &[f64], e: &[f64]) -> Result<Vec<f64>> {
    let n = d.len();
    assert_eq!(e.len(), n.saturating_sub(1), "off-diagonal length");
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut d = d.to_vec();
    let mut e = {
        // Trailing zero sentinel, as in the classic routine.
        let mut t = e.to_vec();
        t.push(0.0);
        t
    };

    for l in 0..n {
        let mut iter = 0;
        loop {
            // Find the first negligible off-diagonal at or after l.
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::ConvergenceFailure {
                    achieved: e[l].abs(),
                    requested: f64::EPSILON,
                    restarts: iter,
                });
            }
            // Wilkinson-style shift from the leading 2×2 block.
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c) = (1.0f64, 1.0f64);
            let mut p = 0.0f64;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    // Rotation annihilated early: deflate and resweep.
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if i == l {
                    d[l] -= p;
                    e[l] = g;
                    e[m] = 0.0;
                }
            }
        }
    }
    d.sort_by(f64::total_cmp);
    Ok(d)
}

/// Unit eigenvector of the symmetric tridiagonal `(d, e)` for an already
/// computed eigenvalue `theta`, by inverse iteration.
///
/// `seed_mix` varies the deterministic start vector so callers working
/// through a cluster of nearby eigenvalues don't all launch from the same
/// point. Three sweeps are plenty once `theta` is accurate to roundoff.
pub fn eigenvector(d: &[f64], e: &[f64], theta: f64, seed_mix: u64) -> Vec<f64> {
    let n = d.len();
    assert_eq!(e.len(), n.saturating_sub(1));
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![1.0];
    }

    let lu = PivotedTridiagonalLu::factor(d, e, theta);

    // Deterministic pseudo-random start (splitmix64 stream).
    let mut state = seed_mix;
    let mut next = move || {
        state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^= z >> 31;
        (z >> 11) as f64 / (1u64 << 53) as f64 - 0.5
    };
    let mut x: Vec<f64> = (0..n).map(|_| next()).collect();
    normalize(&mut x);
    for _ in 0..3 {
        lu.solve_in_place(&mut x);
        normalize(&mut x);
    }
    x
}

/// LU factors of `T - θI` with partial pivoting (LAPACK `dgttrf` layout:
/// multipliers, pivoted diagonal, first and second superdiagonals, row-swap
/// flags). Exactly singular pivots are replaced by ±ε·scale, which is the
/// standard inverse-iteration trick.
struct PivotedTridiagonalLu {
    mult: Vec<f64>,
    diag: Vec<f64>,
    sup1: Vec<f64>,
    sup2: Vec<f64>,
    swap: Vec<bool>,
}

impl PivotedTridiagonalLu {
    fn factor(d: &[f64], e: &[f64], theta: f64) -> Self {
        let n = d.len();
        let scale = d
            .iter()
            .chain(e.iter())
            .map(|x| x.abs())
            .fold(theta.abs(), f64::max)
            .max(1.0);
        let tiny = f64::EPSILON * scale;
        let guard = |p: f64| if p.abs() < tiny { tiny.copysign(if p == 0.0 { 1.0 } else { p }) } else { p };

        let mut diag: Vec<f64> = d.iter().map(|&x| x - theta).collect();
        let mut sup1: Vec<f64> = (0..n - 1).map(|i| e[i]).chain(std::iter::once(0.0)).collect();
        let mut sup2 = vec![0.0f64; n];
        let mut mult = vec![0.0f64; n];
        let mut swap = vec![false; n];

        for i in 0..n - 1 {
            let sub = e[i]; // subdiagonal entry of row i+1 before elimination
            if sub.abs() > diag[i].abs() {
                // Pivot: swap rows i and i+1.
                swap[i] = true;
                let fact = diag[i] / sub;
                // Row i becomes the old row i+1.
                diag[i] = sub;
                let old_sup = sup1[i];
                sup1[i] = diag[i + 1];
                if i + 2 < n {
                    sup2[i] = sup1[i + 1];
                    sup1[i + 1] = -fact * sup2[i];
                }
                diag[i + 1] = old_sup - fact * diag[i + 1];
                mult[i] = fact;
            } else {
                let pivot = guard(diag[i]);
                diag[i] = pivot;
                let fact = sub / pivot;
                diag[i + 1] -= fact * sup1[i];
                mult[i] = fact;
            }
        }
        diag[n - 1] = guard(diag[n - 1]);
        PivotedTridiagonalLu { mult, diag, sup1, sup2, swap }
    }

    fn solve_in_place(&self, b: &mut [f64]) {
        let n = self.diag.len();
        // Forward pass with the recorded pivoting.
        for i in 0..n - 1 {
            if self.swap[i] {
                b.swap(i, i + 1);
            }
            b[i + 1] -= self.mult[i] * b[i];
        }
        // Back substitution with two superdiagonals.
        for i in (0..n).rev() {
            let mut acc = b[i];
            if i + 1 < n {
                acc -= self.sup1[i] * b[i + 1];
            }
            if i + 2 < n {
                acc -= self.sup2[i] * b[i + 2];
            }
            b[i] = acc / self.diag[i];
        }
    }
}

fn normalize(x: &mut [f64]) {
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm > 0.0 {
        for v in x.iter_mut() {
            *v /= norm;
        }
    } else if let Some(first) = x.first_mut() {
        *first = 1.0;
    }
}
