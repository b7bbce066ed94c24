use std::collections::BTreeSet;

use surface_dpo::boundary::{
    check_solution, enumerate_re_pairings, pairing_graph, solve_re_pairing, Colour,
    DEFAULT_SOLUTION_CAP,
};
use surface_dpo::dpo::{iso_check, pushout, pushout_complement, rewrite};
use surface_dpo::fixtures;
use surface_dpo::graph::{ArcId, EdgeId, Graph};
use surface_dpo::matcher::{find_matches, MatchOptions};
use surface_dpo::morphism::{MorphismClass, Violation};
use surface_dpo::rotation::{
    check_rot_morphism, classify_re_pairings, genus_report, rot_complement, rot_pushout,
    rot_rewrite, trace_faces,
};

fn e(s: &str) -> EdgeId {
    s.into()
}

#[test]
fn loop_to_circle_is_the_only_embedding() {
    let f = fixtures::loop_to_circle();
    assert_eq!(f.classify(), MorphismClass::Embedding);
    assert!(f.flag_map().is_empty());
    let u = f.forget_circles();
    assert!(u.cod.vertices().is_empty() && u.cod.edges().is_empty());
    assert!(u.vmap.is_empty() && u.emap.is_empty());
}

#[test]
fn named_morphism_examples() {
    assert_eq!(
        fixtures::fold_onto_edge().classify(),
        MorphismClass::Morphism
    );
    assert_eq!(fixtures::fold_loops().classify(), MorphismClass::Morphism);
    assert_eq!(
        fixtures::make_a_self_loop().classify(),
        MorphismClass::Embedding
    );
    assert_eq!(
        fixtures::not_flag_surjective().classify(),
        MorphismClass::Invalid(vec![Violation::NotFlagSurjective("v".into())])
    );
    assert_eq!(
        fixtures::circle_to_edge().classify(),
        MorphismClass::Invalid(vec![Violation::CircleToEdge("o".into())])
    );
}

#[test]
fn partition_span_pushout() {
    let rs = fixtures::partition_span();
    let po = pushout(&rs.span).unwrap();
    let g = &po.graph;
    assert_eq!(
        (g.vertices().len(), g.edges().len(), g.circles().len()),
        (3, 4, 0)
    );
    let expected = Graph::builder()
        .vertices(["u1", "u2", "w"])
        .edge("i", "u1", "u2")
        .edge("x", "w", "u1")
        .edge("y", "u2", "w")
        .edge("z", "w", "w")
        .build()
        .unwrap();
    assert!(iso_check(g, &expected).unwrap().is_some());
    assert!(po.m.classify().is_embedding() && po.g.classify().is_embedding());

    let pairing = pairing_graph(&rs.span).unwrap();
    let comps = pairing.components();
    assert_eq!(comps.len(), 2);
    assert_eq!(comps[0].nodes, vec![e("a")]);
    assert_eq!(comps[1].nodes, vec![e("b"), e("c"), e("d")]);
    assert!(comps.iter().all(|c| !c.cycle));

    let (po_r, rot) = rot_pushout(&rs).unwrap();
    assert_eq!(po_r, po);
    assert!(check_rot_morphism(&po.m, &rs.left, &rot));
    assert!(check_rot_morphism(&po.g, &rs.right, &rot));
}

#[test]
fn loop_on_circle_complement_is_a_loop_at_the_dual_boundary() {
    let re = fixtures::loop_on_circle();
    let all = enumerate_re_pairings(&re.embedding, DEFAULT_SOLUTION_CAP).unwrap();
    assert_eq!(all.len(), 1);
    let (comp, rot) = rot_complement(&re, &all[0]).unwrap();
    let c = &comp.graph;
    assert_eq!(
        c.vertices().iter().collect::<Vec<_>>(),
        vec![&comp.dual_boundary]
    );
    assert_eq!(c.edges().len(), 1);
    assert!(c.edges().values().all(|x| x.is_loop()));
    assert_eq!(rot.at(&comp.dual_boundary).len(), 2);
    let back = pushout(&comp.span(&re.embedding).unwrap()).unwrap();
    assert!(iso_check(&back.graph, re.embedding.host())
        .unwrap()
        .is_some());
}

#[test]
fn strand_rule_has_one_non_plane_solution() {
    let rule = fixtures::strand_rule();
    assert!(genus_report(&rule.lhs).unwrap().is_planar);
    assert!(genus_report(&rule.rhs).unwrap().is_planar);
    assert!(genus_report(&rule.boundary).unwrap().is_planar);

    let (host, m) = fixtures::strand_host();
    let found = find_matches(&rule.rule, host.graph(), &MatchOptions::default()).unwrap();
    assert!(found.iter().any(|f| f.morphism() == &m));

    let re = fixtures::strand_embedding();
    let classified = classify_re_pairings(&re, DEFAULT_SOLUTION_CAP, false).unwrap();
    assert_eq!(classified.len(), 1);
    let only = &classified[0];
    assert_eq!(
        only.complement.solution.red(),
        &BTreeSet::from([(e("c"), e("a")), (e("d"), e("b"))])
    );
    assert!(!only.report.is_planar);
    assert_eq!(only.report.max_genus, 1);

    let step = rot_rewrite(&rule, &m, &host, None).unwrap();
    assert_eq!(step.complement_rotation, only.rotation);
    let h = step.trace.result_graph();
    assert_eq!(
        (h.vertices().len(), h.edges().len(), h.circles().len()),
        (1, 2, 0)
    );
    assert!(h.edges().values().all(|x| x.is_loop()));
}

#[test]
fn two_solutions_differ_in_genus() {
    let re = fixtures::two_solutions();
    let classified = classify_re_pairings(&re, DEFAULT_SOLUTION_CAP, false).unwrap();
    assert_eq!(classified.len(), 2);
    let genera: Vec<u64> = classified.iter().map(|c| c.report.max_genus).collect();
    assert_eq!(genera, vec![0, 1]);
    let planar = classify_re_pairings(&re, DEFAULT_SOLUTION_CAP, true).unwrap();
    assert_eq!(planar.len(), 1);
    assert_eq!(planar[0].index, 0);

    let order = |v: &str| -> Vec<EdgeId> {
        re.boundary
            .at(&v.into())
            .iter()
            .map(|f| f.edge.clone())
            .collect()
    };
    let (bd, dual) = (order("d"), order("dbar"));
    for c in &classified {
        let p = &c.complement.solution.pairing;
        assert!(!p.crossings(Colour::Blue, &bd));
        assert_eq!(p.crossings(Colour::Red, &dual), !c.report.is_planar);
    }
}

#[test]
fn bouquets() {
    let nested = fixtures::nested_bouquet();
    let inter = fixtures::interleaved_bouquet();
    assert_eq!(trace_faces(&nested).len(), 3);
    assert_eq!(trace_faces(&inter).len(), 1);
    assert_eq!(genus_report(&inter).unwrap().max_genus, 1);
}

#[test]
fn subdivision_rewrite() {
    let rule = fixtures::subdivide_edge();
    let host = fixtures::triangle_host();
    let found = find_matches(&rule.rule, host.graph(), &MatchOptions::default()).unwrap();
    assert_eq!(found.len(), 1);
    let m = found[0].morphism();
    let be = &found[0].embedding;
    let sol = solve_re_pairing(be).unwrap();
    check_solution(be, &sol).unwrap();
    let comp = pushout_complement(be, &sol).unwrap();
    assert_eq!(comp.graph.vertices().len(), 3);
    let step = rewrite(&rule.rule, m, None).unwrap();
    let expected = Graph::builder()
        .vertices(["p", "q", "m", "r", "s"])
        .edge("e1", "p", "m")
        .edge("e1'", "m", "q")
        .edge("e2", "q", "r")
        .edge("e3", "r", "p")
        .edge("e4", "r", "s")
        .build()
        .unwrap();
    assert!(iso_check(step.result_graph(), &expected).unwrap().is_some());
    let rot = rot_rewrite(&rule, m, &host, None).unwrap();
    assert!(genus_report(&rot.result_rotation).unwrap().is_planar);
    let arc = ArcId::Edge("uw".into());
    assert_eq!(m.arc(&arc), Some(&ArcId::Edge("e1".into())));
}
