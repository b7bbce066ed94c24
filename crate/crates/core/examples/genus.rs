//! Face tracing and genus of rotation systems, from the bundled bouquets or
//! from `rotation_graph` documents given on the command line.

use surface_dpo::fixtures;
use surface_dpo::io::{self, Body};
use surface_dpo::rotation::{genus_report, trace_faces, FaceWalk, RotationSystem};

fn show(name: &str, rs: &RotationSystem) {
    let report = genus_report(rs).expect("a rotation system");
    println!(
        "== {name}: genus {}, planar {}",
        report.max_genus, report.is_planar
    );
    for face in trace_faces(rs) {
        match face {
            FaceWalk::Darts(walk) => {
                let walk: Vec<String> = walk.iter().map(ToString::to_string).collect();
                println!("  face {}", walk.join(" "));
            }
            other => println!("  face {other:?}"),
        }
    }
    for c in &report.components {
        println!(
            "  V={} E={} O={} F={} chi={} g={}",
            c.vertex_count,
            c.edge_count,
            c.circle_count,
            c.face_count,
            c.euler_characteristic,
            c.genus
        );
    }
}

fn main() {
    let paths: Vec<String> = std::env::args().skip(1).collect();
    if paths.is_empty() {
        show("nested_bouquet", &fixtures::nested_bouquet());
        show("interleaved_bouquet", &fixtures::interleaved_bouquet());
        show("single_loop", &fixtures::single_loop());
        return;
    }
    for path in paths {
        let text = std::fs::read_to_string(&path).expect("readable file");
        let doc = io::parse(&text).unwrap_or_else(|e| panic!("{path}: {e}"));
        let Body::RotationGraph(g) = &doc.body else {
            panic!("{path}: expected a rotation_graph document")
        };
        let (_, rotation) = io::load_graph(g).expect("a valid graph");
        show(
            &path,
            &rotation.expect("rotation_graph documents carry rotations"),
        );
    }
}
