//! Builds a graph by hand, writes it as a document and reads it back.

use std::sync::Arc;

use surface_dpo::graph::Graph;
use surface_dpo::io::{self, Body, Document};
use surface_dpo::rotation::RotationSystem;

fn main() {
    let g = Arc::new(
        Graph::builder()
            .vertex("v")
            .vertex("w")
            .edge("a", "v", "w")
            .edge("b", "w", "v")
            .edge("l", "v", "v")
            .circle("o")
            .build()
            .expect("well-formed"),
    );
    let rotation = RotationSystem::parse(
        g.clone(),
        [
            ("v", vec!["a.src", "l.src", "b.tgt", "l.tgt"]),
            ("w", vec!["a.tgt", "b.src"]),
        ],
    )
    .expect("every flag once");
    let doc = Document::new(Body::RotationGraph(io::graph_doc(&g, Some(&rotation))));
    let text = io::print(&doc);
    print!("{text}");

    let back = io::parse(&text).expect("printer output parses");
    assert_eq!(back, doc);
    assert_eq!(io::print(&back), text);

    let broken = text.replace("\"l.tgt\"", "\"l.src\"");
    match io::parse(&broken) {
        Ok(_) => println!("accepted a rotation listing a flag twice"),
        Err(e) => println!("rejected: {e}"),
    }
}
