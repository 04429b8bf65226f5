//! Reading and writing graphs in graph6 and edge-list form.
//!
//! cargo run --example graph_io

use medico::format::{graph6_stream, to_edgelist, to_graph6};
use medico::{parse_graph, Format};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // K2,3 with the two degree-3 vertices first.
    let g = parse_graph(b"D]o", Format::Graph6)?;
    println!("n={} m={} edges={:?}", g.order(), g.size(), g.edges().collect::<Vec<_>>());

    let text = to_edgelist(&g);
    print!("as edge list:\n{text}");
    let back = parse_graph(text.as_bytes(), Format::EdgeList)?;
    assert_eq!(back, g);
    println!("graph6 again: {}", to_graph6(&back)?);

    // A stream keeps going past blank lines and reports bad lines by number.
    let input = ">>graph6<<A_\nBw\n\nC~\n";
    for item in graph6_stream(input.as_bytes()) {
        match item {
            Ok(g) => println!("stream graph: n={} m={}", g.order(), g.size()),
            Err(e) => println!("stream error: {e}"),
        }
    }
    Ok(())
}
