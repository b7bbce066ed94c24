//! Builds the pushout complement for every re-pairing solution and glues
//! it back to the host.

use surface_dpo::boundary::{enumerate_re_pairings, DEFAULT_SOLUTION_CAP};
use surface_dpo::dpo::{iso_check, pushout, pushout_complement};
use surface_dpo::fixtures;
use surface_dpo::rotation::{genus_report, rot_complement};

fn main() {
    for (name, re) in [
        ("loop_on_circle", fixtures::loop_on_circle()),
        ("two_solutions", fixtures::two_solutions()),
        ("strand_embedding", fixtures::strand_embedding()),
    ] {
        println!("== {name}");
        let be = &re.embedding;
        for (i, s) in enumerate_re_pairings(be, DEFAULT_SOLUTION_CAP)
            .expect("solvable")
            .iter()
            .enumerate()
        {
            let comp = pushout_complement(be, s).expect("complement");
            let back = pushout(&comp.span(be).expect("span")).expect("pushout");
            let glued = iso_check(&back.graph, be.host()).expect("small").is_some();
            let (_, rotation) = rot_complement(&re, s).expect("rotated complement");
            let genus = genus_report(&rotation).expect("genus").max_genus;
            let red: Vec<String> = s.red().iter().map(|(a, b)| format!("{a}-{b}")).collect();
            println!(
                "#{i} red [{}]: {} vertices, {} edges, {} circles, genus {genus}, glues back {glued}",
                red.join(" "),
                comp.graph.vertices().len(),
                comp.graph.edges().len(),
                comp.graph.circles().len(),
            );
        }
    }
}
