//! Direct dense path: densify and run a full symmetric eigendecomposition.
//!
//! Used below the dense-size threshold and as the independent cross-check
//! for the iterative path. The heavy lifting is nalgebra's `SymmetricEigen`;
//! this wrapper only sorts, truncates, and reports an accuracy figure.

use crate::laplacian::SparseLaplacian;

/// The `h` smallest eigenvalues (ascending) by full dense decomposition.
pub fn smallest(l: &SparseLaplacian, h: usize) -> Vec<f64> {
    let n = l.n();
    if n == 0 || h == 0 {
        return Vec::new();
    }
    let mut vals: Vec<f64> = if n == 1 {
        vec![l.diagonal()[0]]
    } else {
        nalgebra::SymmetricEigen::new(l.to_dense())
            .eigenvalues
            .iter()
            .copied()
            .collect()
    };
    vals.sort_by(f64::total_cmp);
    vals.truncate(h);
    vals
}

/// Backward-error scale of the dense decomposition: a few ulps of the matrix
/// norm. Reported as the spectrum's residual figure.
pub fn residual_estimate(l: &SparseLaplacian) -> f64 {
    8.0 * f64::EPSILON * l.gershgorin_bound().max(1.0)
}
