//! Counts re-pairing solutions of petal embeddings and sorts the solutions
//! of the bundled embeddings by surface.
//!
//! `cargo run --example repairings -- [max petals]`

use surface_dpo::boundary::{enumerate_re_pairings, DEFAULT_SOLUTION_CAP};
use surface_dpo::fixtures;
use surface_dpo::rotation::classify_re_pairings;

fn main() {
    let max: usize = std::env::args()
        .nth(1)
        .map_or(5, |a| a.parse().expect("a count"));
    println!("{:>2} {:>8} {:>8}", "n", "circle", "edge");
    for n in 1..=max {
        let count = |be| {
            enumerate_re_pairings(&be, DEFAULT_SOLUTION_CAP)
                .expect("solvable")
                .len()
        };
        println!(
            "{n:>2} {:>8} {:>8}",
            count(fixtures::petals_on_circle(n)),
            count(fixtures::petals_on_edge(n))
        );
    }
    for (name, re) in [
        ("two_solutions", fixtures::two_solutions()),
        ("strand_embedding", fixtures::strand_embedding()),
    ] {
        for c in classify_re_pairings(&re, DEFAULT_SOLUTION_CAP, false).expect("classified") {
            let planar = if c.report.is_planar {
                "planar"
            } else {
                "non-planar"
            };
            println!("{name} #{}: genus {} {planar}", c.index, c.report.max_genus);
        }
    }
}
