//! Record a computation as a DAG and lower-bound its I/O.
//!
//! The trace builder turns ordinary-looking straight-line code into a
//! computation graph: every `input` is a source vertex, every `apply` is an
//! operation wired to its operands. Here we trace a 4-point dot product
//! followed by a normalization, then ask how much data movement any
//! execution of it must perform with a fast memory of 2 elements.
//!
//! Run with: cargo run --example trace_a_computation

use iobound::{bound, BoundMethod, BoundQuery, TraceBuilder};

fn main() -> iobound::Result<()> {
    let mut trace = TraceBuilder::new();

    // x · y for 4-vectors, then a division by a traced scalar.
    let x: Vec<_> = (0..4).map(|i| trace.input(format!("x{i}"))).collect::<Result<_, _>>()?;
    let y: Vec<_> = (0..4).map(|i| trace.input(format!("y{i}"))).collect::<Result<_, _>>()?;
    let products: Vec<_> = x
        .iter()
        .zip(&y)
        .enumerate()
        .map(|(i, (&a, &b))| trace.apply(format!("p{i}"), &[a, b]))
        .collect::<Result<_, _>>()?;
    let s01 = trace.apply("s01", &[products[0], products[1]])?;
    let s23 = trace.apply("s23", &[products[2], products[3]])?;
    let dot = trace.apply("dot", &[s01, s23])?;
    let norm = trace.input("norm")?;
    trace.apply("result", &[dot, norm])?;

    let g = trace.build()?;
    println!("traced graph: {} vertices, {} edges", g.n(), g.edge_count());
    for (v, info) in g.vertices() {
        let label = info.label.as_deref().unwrap_or("?");
        println!("  {v:>2}  {:<6} {label}", info.kind.as_str());
    }

    let report = bound(&g, &BoundQuery::new(2, BoundMethod::Tight))?;
    println!("\ntight bound at M = 2:");
    for &(k, value) in &report.per_k {
        let marker = if k == report.best_k { "  <- best k" } else { "" };
        println!("  k = {k:>2}: {value:>8.4}{marker}");
    }
    println!("raw bound {:.4}, effective {:.4}", report.raw_bound, report.effective_bound);
    Ok(())
}
