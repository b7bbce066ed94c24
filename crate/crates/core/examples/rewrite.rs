//! Finds every match of a rule and rewrites at each of them, carrying the
//! rotation system through.

use surface_dpo::fixtures;
use surface_dpo::matcher::{find_matches, MatchOptions};
use surface_dpo::rotation::{genus_report, rot_rewrite};

fn main() {
    let host = fixtures::triangle_host();
    for (name, rule) in [
        ("subdivide_edge", fixtures::subdivide_edge()),
        (
            "subdivide_identity_rule",
            fixtures::identity_rule(&fixtures::subdivide_edge()),
        ),
    ] {
        let options = MatchOptions {
            rotations: Some((rule.lhs.clone(), host.clone())),
            ..MatchOptions::default()
        };
        let matches = find_matches(&rule.rule, host.graph(), &options).expect("connected rule");
        println!("== {name}: {} matches", matches.len());
        for (i, m) in matches.iter().enumerate() {
            let step = rot_rewrite(&rule, m.morphism(), &host, None).expect("rewrite");
            let g = step.trace.result_graph();
            let genus = genus_report(&step.result_rotation)
                .expect("genus")
                .max_genus;
            let image: Vec<String> = m
                .morphism()
                .arc_map()
                .iter()
                .map(|(a, b)| format!("{a}->{b}"))
                .collect();
            println!(
                "#{i} [{}]: {} vertices, {} edges, genus {genus}",
                image.join(" "),
                g.vertices().len(),
                g.edges().len()
            );
            println!("   {}", step.result_rotation);
        }
    }
}
