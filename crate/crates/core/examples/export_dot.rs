//! Renders documents as Graphviz DOT.
//!
//! `cargo run --example export_dot -- fixtures/two_solutions.json | dot -Tsvg`
//!
//! Without arguments, prints the pairing graph of the bundled span.

use surface_dpo::boundary::pairing_graph;
use surface_dpo::fixtures;
use surface_dpo::io::{self, export_dot, pairing_dot};

fn main() {
    let Some(path) = std::env::args().nth(1) else {
        let span = fixtures::partition_span().span;
        print!("{}", pairing_dot(&pairing_graph(&span).expect("a span")));
        return;
    };
    let text = std::fs::read_to_string(&path).expect("readable file");
    let doc = io::parse(&text).unwrap_or_else(|e| panic!("{path}: {e}"));
    print!(
        "{}",
        export_dot(&doc).unwrap_or_else(|e| panic!("{path}: {e}"))
    );
}
