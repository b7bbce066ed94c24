//! Classifies the bundled morphisms as embedding, morphism or neither.

use surface_dpo::fixtures;
use surface_dpo::morphism::{GraphMorphism, MorphismClass};

fn main() {
    let cases: [(&str, GraphMorphism); 6] = [
        ("loop_to_circle", fixtures::loop_to_circle()),
        ("fold_onto_edge", fixtures::fold_onto_edge()),
        ("fold_loops", fixtures::fold_loops()),
        ("make_a_self_loop", fixtures::make_a_self_loop()),
        ("not_flag_surjective", fixtures::not_flag_surjective()),
        ("circle_to_edge", fixtures::circle_to_edge()),
    ];
    for (name, f) in cases {
        let class = f.classify();
        print!("{name:<20} {}", class.name());
        if let MorphismClass::Invalid(why) = &class {
            let why: Vec<String> = why.iter().map(ToString::to_string).collect();
            print!("  ({})", why.join(", "));
        }
        println!(
            "  flag-injective={} flag-surjective={}",
            f.is_flag_injective(),
            f.is_flag_surjective()
        );
    }
}
