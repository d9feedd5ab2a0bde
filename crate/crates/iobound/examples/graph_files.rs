//! The two on-disk graph formats and what each preserves.
//!
//! The JSON format stores vertex kinds and labels alongside the edges; the
//! edge-list format stores only `n` and the edge pairs, re-deriving kinds
//! from degrees on read (sources are inputs, sinks are outputs). Both
//! validate structure on read: dangling edges, self-loops, cycles, and
//! kind/degree mismatches are rejected with line-numbered errors where the
//! format has lines.
//!
//! Run with: cargo run --example graph_files

use iobound::{graph_to_string, read_graph_str, GraphFormat, TraceBuilder};

fn main() -> iobound::Result<()> {
    let mut trace = TraceBuilder::new();
    let a = trace.input("a")?;
    let b = trace.input("b")?;
    let sum = trace.apply("sum", &[a, b])?;
    let sq = trace.apply("square", &[sum, sum])?;
    trace.apply("out", &[sq])?;
    let g = trace.build()?;

    let json = graph_to_string(&g, GraphFormat::Json);
    println!("── JSON (kinds and labels preserved) ──\n{json}");

    let edges = graph_to_string(&g, GraphFormat::EdgeList);
    println!("── edge list (structure only) ──\n{edges}");

    let from_json = read_graph_str(&json)?;
    let from_edges = read_graph_str(&edges)?;
    assert_eq!(from_json.edges(), from_edges.edges());
    assert_eq!(from_json.vertex(0).unwrap().label.as_deref(), Some("a"));
    assert_eq!(from_edges.vertex(0).unwrap().label, None);
    println!("both parse back; JSON kept label {:?}, edge list kept none.", "a");

    let bad = "n 3\n0 1\n1 2\n2 0\n";
    match read_graph_str(bad) {
        Err(e) => println!("\ncyclic input rejected as expected: {e}"),
        Ok(_) => unreachable!("a 3-cycle must not parse as a computation DAG"),
    }
    Ok(())
}
