//! The butterfly (FFT dataflow) spectrum, assembled without an eigensolver.
//!
//! The l-level butterfly graph — the dataflow of a radix-2 FFT on 2^l
//! points — has a Laplacian spectrum that decomposes exactly into spectra
//! of short weighted paths. This example prints the path census for a small
//! butterfly, expands it into eigenvalues, and checks the result against a
//! dense numeric solve of the same graph.
//!
//! Run with: cargo run --example fft_spectrum

use iobound::graph::unit_support;
use iobound::laplacian::{laplacian, LaplacianVariant};
use iobound::{butterfly, butterfly_path_census, butterfly_spectrum, smallest_eigenvalues, EigenOptions};

fn main() -> iobound::Result<()> {
    let l = 3;
    println!("butterfly census at l = {l} (multiplicity × path):");
    let mut total = 0u64;
    for (path, count) in butterfly_path_census(l)? {
        total += count * path.len as u64;
        println!("  {count:>2} × {path}  ({}-vertex pieces)", path.len);
    }
    println!("  total vertex count {total} = (l+1)·2^l = {}\n", (l + 1) << l);

    let analytic = butterfly_spectrum(l)?;
    println!("distinct eigenvalues (value × multiplicity):");
    for &(value, mult) in analytic.entries() {
        println!("  {value:>12.8} × {mult}");
    }

    let wg = unit_support(&butterfly(l)?);
    let matrix = laplacian(&wg, LaplacianVariant::Tilde)?;
    let numeric = smallest_eigenvalues(&matrix, wg.n(), &EigenOptions::default())?;
    let worst = analytic
        .expand()
        .iter()
        .zip(&numeric.eigenvalues)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0f64, f64::max);
    println!("\nworst gap to the dense numeric spectrum: {worst:.3e}");
    Ok(())
}
