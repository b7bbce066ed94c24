//! Glues two graphs along a boundary and shows which boundary edges each
//! glued arc came from.

use surface_dpo::dpo::pushout;
use surface_dpo::fixtures;
use surface_dpo::io::{self, Body, Document};
use surface_dpo::rotation::{genus_report, rot_pushout};

fn main() {
    for (name, rs) in [
        ("partition_span", fixtures::partition_span()),
        ("two_cycle_span", fixtures::two_cycle_span()),
    ] {
        let po = pushout(&rs.span).expect("valid span");
        println!("== {name}");
        for (arc, class) in &po.arc_classes {
            if class.nodes.is_empty() {
                continue;
            }
            let kind = if class.cycle { "cycle" } else { "path" };
            let nodes: Vec<String> = class.nodes.iter().map(ToString::to_string).collect();
            println!("{arc} <- {kind} {}", nodes.join(" "));
        }
        match rot_pushout(&rs) {
            Ok((_, rotation)) => {
                let report = genus_report(&rotation).expect("rotation of the pushout");
                println!("genus {}", report.max_genus);
                print!(
                    "{}",
                    io::print(&Document::new(Body::Pushout(io::pushout_doc(
                        &po,
                        Some(&rotation)
                    ))))
                );
            }
            Err(e) => println!("no rotation: {e}"),
        }
    }
}
