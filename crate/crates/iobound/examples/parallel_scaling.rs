//! How the bound degrades as processors share the work.
//!
//! On a machine with p processors, each with its own fast memory of M
//! elements, the per-processor bound divides the vertex mass by p before
//! subtracting the free 2kM transfers. This example evaluates the parallel
//! bound on a butterfly graph across processor counts and shows the point
//! where parallelism swallows the bound entirely.
//!
//! Run with: cargo run --example parallel_scaling

use iobound::{bound, butterfly, BoundMethod, BoundQuery};

fn main() -> iobound::Result<()> {
    let g = butterfly(6)?;
    println!("butterfly l = 6: {} vertices, {} edges\n", g.n(), g.edge_count());

    println!("{:>6} {:>14} {:>14} {:>8}", "p", "raw", "effective", "best k");
    let mut previous = f64::INFINITY;
    for p in [1u64, 2, 4, 8, 16, 32] {
        let mut query = BoundQuery::new(1, BoundMethod::Parallel);
        query.processors = p;
        let report = bound(&g, &query)?;
        assert!(
            report.raw_bound <= previous,
            "the per-processor bound never grows with p"
        );
        previous = report.raw_bound;
        println!(
            "{p:>6} {:>14.4} {:>14.4} {:>8}",
            report.raw_bound, report.effective_bound, report.best_k
        );
    }

    println!("\np = 1 reproduces the sequential tight bound exactly;");
    println!("large p drives ⌊n/(kp)⌋ to zero and the bound with it.");
    Ok(())
}
