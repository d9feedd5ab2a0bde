//! Analytic I/O bounds at scales no eigensolver reaches.
//!
//! Because the hypercube and butterfly bounds are closed-form expressions
//! in (l, M, α), they evaluate instantly at sizes where the graphs
//! themselves would have billions of vertices. This example tabulates both
//! families across memory sizes, picking the best eigenvalue-class cutoff α
//! for each cell, and shows the butterfly helper that maps a power-of-two
//! memory straight to its natural cutoff.
//!
//! Run with: cargo run --example closed_form_bounds

use iobound::{butterfly_alpha_for_memory, butterfly_best_bound, hypercube_best_bound};

fn main() -> iobound::Result<()> {
    println!("hypercube Q_l, best α per cell (bound / α):");
    print!("{:>8}", "l \\ M");
    let memories = [4u64, 16, 64, 256];
    for m in memories {
        print!("{m:>18}");
    }
    println!();
    for l in [10usize, 20, 30, 40] {
        print!("{l:>8}");
        for m in memories {
            let (alpha, value) = hypercube_best_bound(l, m)?;
            print!("{:>14.3e} α={alpha:<2}", value);
        }
        println!();
    }

    println!("\nbutterfly (FFT dataflow) on 2^l points, best α per cell:");
    print!("{:>8}", "l \\ M");
    for m in memories {
        print!("{m:>18}");
    }
    println!();
    for l in [10usize, 20, 30, 40] {
        print!("{l:>8}");
        for m in memories {
            let (alpha, value) = butterfly_best_bound(l, m)?;
            print!("{:>14.3e} α={alpha:<2}", value);
        }
        println!();
    }

    println!("\nfor power-of-two memories the butterfly cutoff is just l − log2(M):");
    for m in [2u64, 8, 64, 1024] {
        let alpha = butterfly_alpha_for_memory(30, m)?;
        println!("  l = 30, M = {m:>5}  ->  α = {alpha}");
    }
    Ok(())
}
