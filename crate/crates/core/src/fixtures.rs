//! Ready-made instances: the standard corner cases for morphisms, a small
//! partitioning span, and rewriting situations whose re-pairing problems
//! have interesting planarity behaviour.
//!
//! Boundary graphs use `d` for the boundary and `dbar` for its dual.

use std::sync::Arc;

use crate::boundary::{BoundaryEmbedding, BoundaryGraph, PartitioningSpan, Polarity};
use crate::dpo::RewriteRule;
use crate::graph::Graph;
use crate::io::{self, Body, Document};
use crate::morphism::GraphMorphism;
use crate::rotation::{RotEmbedding, RotRule, RotSpan, RotationSystem};

use Polarity::{Negative, Positive};

fn graph(b: crate::graph::GraphBuilder) -> Arc<Graph> {
    Arc::new(b.build().expect("fixture graphs are valid"))
}

fn map(
    dom: &Arc<Graph>,
    cod: &Arc<Graph>,
    vertices: &[(&str, &str)],
    arcs: &[(&str, &str)],
) -> GraphMorphism {
    GraphMorphism::from_names(dom.clone(), cod.clone(), vertices, arcs)
        .expect("fixture names exist")
}

fn rot(g: &Arc<Graph>, inc: &[(&str, &[&str])]) -> RotationSystem {
    RotationSystem::parse(g.clone(), inc.iter().map(|(v, f)| (*v, f.to_vec())))
        .expect("fixture rotations are valid")
}

/// The one-vertex self-loop sent to a circle, erasing the vertex.
pub fn loop_to_circle() -> GraphMorphism {
    let g = graph(Graph::builder().vertex("v").edge("e", "v", "v"));
    let o = graph(Graph::builder().circle("e"));
    map(&g, &o, &[], &[("e", "e")])
}

/// Two edges into one vertex folded onto a single edge: flag surjective
/// without being flag injective, so a morphism but not an embedding.
pub fn fold_onto_edge() -> GraphMorphism {
    let dom = graph(
        Graph::builder()
            .vertices(["a", "b", "v"])
            .edge("x", "a", "v")
            .edge("y", "b", "v"),
    );
    let cod = graph(Graph::builder().vertices(["c", "w"]).edge("z", "c", "w"));
    map(&dom, &cod, &[("v", "w")], &[("x", "z"), ("y", "z")])
}

/// Two self-loops folded onto one.
pub fn fold_loops() -> GraphMorphism {
    let dom = graph(
        Graph::builder()
            .vertex("v")
            .edge("x", "v", "v")
            .edge("y", "v", "v"),
    );
    let cod = graph(Graph::builder().vertex("w").edge("z", "w", "w"));
    map(&dom, &cod, &[("v", "w")], &[("x", "z"), ("y", "z")])
}

/// An edge in and an edge out, their far ends erased, closed into a
/// self-loop: an embedding whose edge map is not injective.
pub fn make_a_self_loop() -> GraphMorphism {
    let dom = graph(
        Graph::builder()
            .vertices(["a", "v", "b"])
            .edge("p", "v", "b")
            .edge("q", "a", "v"),
    );
    let cod = graph(Graph::builder().vertex("w").edge("l", "w", "w"));
    map(&dom, &cod, &[("v", "w")], &[("p", "l"), ("q", "l")])
}

/// A vertex sent to a vertex carrying a self-loop nothing maps onto.
pub fn not_flag_surjective() -> GraphMorphism {
    let dom = graph(Graph::builder().vertex("v"));
    let cod = graph(Graph::builder().vertex("w").edge("l", "w", "w"));
    map(&dom, &cod, &[("v", "w")], &[])
}

/// A circle sent to a self-loop.
pub fn circle_to_edge() -> GraphMorphism {
    let dom = graph(Graph::builder().circle("o"));
    let cod = graph(Graph::builder().vertex("w").edge("l", "w", "w"));
    map(&dom, &cod, &[], &[("o", "l")])
}

/// A span over four boundary edges `a+ b- c+ d-`. On the left, `c` and `d`
/// close into a loop at the boundary and `a`, `b` lead into a two-vertex
/// path; on the right, `b` and `c` close into a loop at the dual boundary
/// and `a`, `d` attach to one vertex with a loop of its own.
pub fn partition_span() -> RotSpan {
    let b = BoundaryGraph::from_polarities(
        "d",
        "dbar",
        [
            ("a", Positive),
            ("b", Negative),
            ("c", Positive),
            ("d", Negative),
        ],
    )
    .expect("valid");
    let l = graph(
        Graph::builder()
            .vertices(["x", "u1", "u2"])
            .edge("ea", "x", "u1")
            .edge("eb", "u2", "x")
            .edge("lc", "x", "x")
            .edge("ei", "u1", "u2"),
    );
    let c = graph(
        Graph::builder()
            .vertices(["y", "w"])
            .edge("fa", "w", "y")
            .edge("m", "y", "y")
            .edge("fd", "y", "w")
            .edge("wl", "w", "w"),
    );
    let left = map(
        b.graph(),
        &l,
        &[("d", "x")],
        &[("a", "ea"), ("b", "eb"), ("c", "lc"), ("d", "lc")],
    );
    let right = map(
        b.graph(),
        &c,
        &[("dbar", "y")],
        &[("a", "fa"), ("b", "m"), ("c", "m"), ("d", "fd")],
    );
    let rot_b = rot(
        b.graph(),
        &[
            ("d", &["a.src", "b.tgt", "c.src", "d.tgt"]),
            ("dbar", &["a.tgt", "d.src", "c.tgt", "b.src"]),
        ],
    );
    let rot_l = rot(
        &l,
        &[
            ("x", &["ea.src", "eb.tgt", "lc.src", "lc.tgt"]),
            ("u1", &["ea.tgt", "ei.src"]),
            ("u2", &["ei.tgt", "eb.src"]),
        ],
    );
    let rot_c = rot(
        &c,
        &[
            ("y", &["fa.tgt", "fd.src", "m.tgt", "m.src"]),
            ("w", &["fa.src", "fd.tgt", "wl.src", "wl.tgt"]),
        ],
    );
    let span = PartitioningSpan::new(b, left, right).expect("valid span");
    RotSpan::new(span, rot_b, rot_l, rot_c).expect("legs preserve rotations")
}

fn single_circle() -> Arc<Graph> {
    graph(Graph::builder().circle("o"))
}

/// A self-loop at the boundary image matched onto the one-circle graph.
pub fn loop_on_circle() -> RotEmbedding {
    let b = BoundaryGraph::from_polarities("d", "dbar", [("p", Positive), ("n", Negative)])
        .expect("valid");
    let l = graph(Graph::builder().vertex("x").edge("lx", "x", "x"));
    let g = single_circle();
    let leg = map(b.graph(), &l, &[("d", "x")], &[("p", "lx"), ("n", "lx")]);
    let m = map(&l, &g, &[], &[("lx", "o")]);
    let rot_b = rot(
        b.graph(),
        &[("d", &["p.src", "n.tgt"]), ("dbar", &["n.src", "p.tgt"])],
    );
    let rot_l = rot(&l, &[("x", &["lx.src", "lx.tgt"])]);
    let be = BoundaryEmbedding::new(b, leg, m).expect("valid boundary embedding");
    RotEmbedding::new(be, rot_b, rot_l, RotationSystem::arbitrary(g)).expect("valid")
}

/// Two strands crossing the boundary region: `a`, `b` leave the boundary
/// and `c`, `d` return to it. The left-hand side closes them into nested
/// loops `a`-`d` and `b`-`c`; the right-hand side routes all four through
/// one interior vertex.
pub fn strand_rule() -> RotRule {
    let b = strand_boundary();
    let l = graph(
        Graph::builder()
            .vertex("x")
            .edge("ad", "x", "x")
            .edge("bc", "x", "x"),
    );
    let r = graph(
        Graph::builder()
            .vertices(["x", "w"])
            .edge("ra", "x", "w")
            .edge("rb", "x", "w")
            .edge("rc", "w", "x")
            .edge("rd", "w", "x"),
    );
    let lhs_leg = map(
        b.graph(),
        &l,
        &[("d", "x")],
        &[("a", "ad"), ("d", "ad"), ("b", "bc"), ("c", "bc")],
    );
    let rhs_leg = map(
        b.graph(),
        &r,
        &[("d", "x")],
        &[("a", "ra"), ("b", "rb"), ("c", "rc"), ("d", "rd")],
    );
    let rot_l = rot(&l, &[("x", &["ad.src", "bc.src", "bc.tgt", "ad.tgt"])]);
    let rot_r = rot(
        &r,
        &[
            ("x", &["ra.src", "rb.src", "rc.tgt", "rd.tgt"]),
            ("w", &["rd.src", "rc.src", "rb.tgt", "ra.tgt"]),
        ],
    );
    let rule = RewriteRule::new(b.clone(), lhs_leg, rhs_leg).expect("valid rule");
    RotRule::new(rule, strand_boundary_rotation(&b), rot_l, rot_r).expect("valid")
}

fn strand_boundary() -> BoundaryGraph {
    BoundaryGraph::from_polarities(
        "d",
        "dbar",
        [
            ("a", Positive),
            ("b", Positive),
            ("c", Negative),
            ("d", Negative),
        ],
    )
    .expect("valid")
}

fn strand_boundary_rotation(b: &BoundaryGraph) -> RotationSystem {
    rot(
        b.graph(),
        &[
            ("d", &["a.src", "b.src", "c.tgt", "d.tgt"]),
            ("dbar", &["d.src", "c.src", "b.tgt", "a.tgt"]),
        ],
    )
}

/// The one-circle host for [`strand_rule`], with its only match.
pub fn strand_host() -> (RotationSystem, GraphMorphism) {
    let g = single_circle();
    let rule = strand_rule();
    let m = map(rule.rule.lhs(), &g, &[], &[("ad", "o"), ("bc", "o")]);
    (RotationSystem::arbitrary(g), m)
}

/// [`strand_rule`]'s left leg composed with its match into one circle.
pub fn strand_embedding() -> RotEmbedding {
    let rule = strand_rule();
    let (host, m) = strand_host();
    let be = BoundaryEmbedding::new(rule.rule.boundary().clone(), rule.rule.lhs_leg().clone(), m)
        .expect("valid boundary embedding");
    RotEmbedding::new(be, rule.boundary, rule.lhs, host).expect("valid")
}

/// Three petals at the boundary image, all matched onto one circle. The
/// dual boundary lists the boundary edges in reverse, so exactly one of the
/// two re-pairings closes up without crossings.
pub fn two_solutions() -> RotEmbedding {
    let b = BoundaryGraph::from_polarities(
        "d",
        "dbar",
        [
            ("p1", Positive),
            ("q1", Negative),
            ("p2", Positive),
            ("q2", Negative),
            ("p3", Positive),
            ("q3", Negative),
        ],
    )
    .expect("valid");
    let l = graph(
        Graph::builder()
            .vertex("x")
            .edge("l1", "x", "x")
            .edge("l2", "x", "x")
            .edge("l3", "x", "x"),
    );
    let g = single_circle();
    let leg = map(
        b.graph(),
        &l,
        &[("d", "x")],
        &[
            ("p1", "l1"),
            ("q1", "l1"),
            ("p2", "l2"),
            ("q2", "l2"),
            ("p3", "l3"),
            ("q3", "l3"),
        ],
    );
    let m = map(&l, &g, &[], &[("l1", "o"), ("l2", "o"), ("l3", "o")]);
    let rot_b = rot(
        b.graph(),
        &[
            (
                "d",
                &["p1.src", "q1.tgt", "p2.src", "q2.tgt", "p3.src", "q3.tgt"],
            ),
            (
                "dbar",
                &["q3.src", "p3.tgt", "q2.src", "p2.tgt", "q1.src", "p1.tgt"],
            ),
        ],
    );
    let rot_l = rot(
        &l,
        &[(
            "x",
            &["l1.src", "l1.tgt", "l2.src", "l2.tgt", "l3.src", "l3.tgt"],
        )],
    );
    let be = BoundaryEmbedding::new(b, leg, m).expect("valid boundary embedding");
    RotEmbedding::new(be, rot_b, rot_l, RotationSystem::arbitrary(g)).expect("valid")
}

/// `n` self-loops at the boundary image, loop `li` carrying boundary edges
/// `pi+` and `qi-`, all sent to the one arc of `host`.
fn petals(n: usize, host: Arc<Graph>, arc: &str) -> BoundaryEmbedding {
    let names: Vec<(String, String, String)> = (1..=n)
        .map(|i| (format!("p{i}"), format!("q{i}"), format!("l{i}")))
        .collect();
    let b = BoundaryGraph::from_polarities(
        "d",
        "dbar",
        names
            .iter()
            .flat_map(|(p, q, _)| [(p.as_str(), Positive), (q.as_str(), Negative)]),
    )
    .expect("valid");
    let mut lb = Graph::builder().vertex("x");
    for (_, _, l) in &names {
        lb.add_edge(l.as_str(), "x", "x");
    }
    let l = graph(lb);
    let leg_arcs: Vec<(&str, &str)> = names
        .iter()
        .flat_map(|(p, q, l)| [(p.as_str(), l.as_str()), (q.as_str(), l.as_str())])
        .collect();
    let leg = map(b.graph(), &l, &[("d", "x")], &leg_arcs);
    let m_arcs: Vec<(&str, &str)> = names.iter().map(|(_, _, l)| (l.as_str(), arc)).collect();
    let m = map(&l, &host, &[], &m_arcs);
    BoundaryEmbedding::new(b, leg, m).expect("valid boundary embedding")
}

/// `n` petals matched onto one circle: a single circle class of `n` pairs.
pub fn petals_on_circle(n: usize) -> BoundaryEmbedding {
    petals(n, single_circle(), "o")
}

/// `n` petals matched onto one edge between two vertices: a single edge
/// class of `n` pairs.
pub fn petals_on_edge(n: usize) -> BoundaryEmbedding {
    petals(
        n,
        graph(Graph::builder().vertices(["u", "v"]).edge("e", "u", "v")),
        "e",
    )
}

/// One vertex with self-loops `a` and `b` in the given rotation.
pub fn bouquet(order: &[&str]) -> RotationSystem {
    let g = graph(
        Graph::builder()
            .vertex("v")
            .edge("a", "v", "v")
            .edge("b", "v", "v"),
    );
    rot(&g, &[("v", order)])
}

pub fn interleaved_bouquet() -> RotationSystem {
    bouquet(&["a.src", "b.src", "a.tgt", "b.tgt"])
}

pub fn nested_bouquet() -> RotationSystem {
    bouquet(&["a.src", "a.tgt", "b.src", "b.tgt"])
}

/// The rule whose two sides are the same graph: `L = R`, `l = r`.
pub fn identity_rule(single: &RotRule) -> RotRule {
    RotRule {
        rule: RewriteRule::new(
            single.rule.boundary().clone(),
            single.rule.lhs_leg().clone(),
            single.rule.lhs_leg().clone(),
        )
        .expect("left leg is a valid rule leg"),
        boundary: single.boundary.clone(),
        lhs: single.lhs.clone(),
        rhs: single.lhs.clone(),
    }
}

/// Deletes an isolated vertex.
pub fn delete_isolated_vertex() -> RewriteRule {
    let b = BoundaryGraph::from_polarities("d", "dbar", []).expect("valid");
    let l = graph(Graph::builder().vertices(["x", "u"]));
    let r = graph(Graph::builder().vertex("x"));
    RewriteRule::new(
        b.clone(),
        map(b.graph(), &l, &[("d", "x")], &[]),
        map(b.graph(), &r, &[("d", "x")], &[]),
    )
    .expect("valid rule")
}

/// Replaces one edge between two vertices by a path of length two.
pub fn subdivide_edge() -> RotRule {
    let b = BoundaryGraph::from_polarities("d", "dbar", [("i", Positive), ("o", Negative)])
        .expect("valid");
    let l = graph(
        Graph::builder()
            .vertices(["x", "u", "w"])
            .edge("iu", "x", "u")
            .edge("uw", "u", "w")
            .edge("wo", "w", "x"),
    );
    let r = graph(
        Graph::builder()
            .vertices(["x", "u", "m", "w"])
            .edge("iu", "x", "u")
            .edge("um", "u", "m")
            .edge("mw", "m", "w")
            .edge("wo", "w", "x"),
    );
    let leg_l = map(b.graph(), &l, &[("d", "x")], &[("i", "iu"), ("o", "wo")]);
    let leg_r = map(b.graph(), &r, &[("d", "x")], &[("i", "iu"), ("o", "wo")]);
    let rot_b = rot(
        b.graph(),
        &[("d", &["i.src", "o.tgt"]), ("dbar", &["i.tgt", "o.src"])],
    );
    let rot_l = rot(
        &l,
        &[
            ("x", &["iu.src", "wo.tgt"]),
            ("u", &["iu.tgt", "uw.src"]),
            ("w", &["uw.tgt", "wo.src"]),
        ],
    );
    let rot_r = rot(
        &r,
        &[
            ("x", &["iu.src", "wo.tgt"]),
            ("u", &["iu.tgt", "um.src"]),
            ("m", &["um.tgt", "mw.src"]),
            ("w", &["mw.tgt", "wo.src"]),
        ],
    );
    let rule = RewriteRule::new(b, leg_l, leg_r).expect("valid rule");
    RotRule::new(rule, rot_b, rot_l, rot_r).expect("valid")
}

/// A directed triangle with a pendant edge, as a small rewriting host.
pub fn triangle_host() -> RotationSystem {
    let g = graph(
        Graph::builder()
            .vertices(["p", "q", "r", "s"])
            .edge("e1", "p", "q")
            .edge("e2", "q", "r")
            .edge("e3", "r", "p")
            .edge("e4", "r", "s"),
    );
    rot(
        &g,
        &[
            ("p", &["e1.src", "e3.tgt"]),
            ("q", &["e1.tgt", "e2.src"]),
            ("r", &["e2.tgt", "e3.src", "e4.src"]),
            ("s", &["e4.tgt"]),
        ],
    )
}

/// A single self-loop at one vertex.
pub fn single_loop() -> RotationSystem {
    let g = graph(Graph::builder().vertex("v").edge("a", "v", "v"));
    rot(&g, &[("v", &["a.src", "a.tgt"])])
}

/// Boundary edges `a+ b-` closed into a self-loop on both sides. The
/// pairing graph is a 2-cycle, so the pushout is a single circle.
pub fn two_cycle_span() -> RotSpan {
    let b = BoundaryGraph::from_polarities("d", "dbar", [("a", Positive), ("b", Negative)])
        .expect("valid");
    let l = graph(Graph::builder().vertex("x").edge("lx", "x", "x"));
    let c = graph(Graph::builder().vertex("y").edge("ly", "y", "y"));
    let left = map(b.graph(), &l, &[("d", "x")], &[("a", "lx"), ("b", "lx")]);
    let right = map(b.graph(), &c, &[("dbar", "y")], &[("a", "ly"), ("b", "ly")]);
    let rot_b = rot(
        b.graph(),
        &[("d", &["a.src", "b.tgt"]), ("dbar", &["a.tgt", "b.src"])],
    );
    let rot_l = rot(&l, &[("x", &["lx.src", "lx.tgt"])]);
    let rot_c = rot(&c, &[("y", &["ly.src", "ly.tgt"])]);
    let span = PartitioningSpan::new(b, left, right).expect("valid span");
    RotSpan::new(span, rot_b, rot_l, rot_c).expect("legs preserve rotations")
}

/// No boundary edges; the left side has an isolated vertex besides `x`.
pub fn edgeless_span() -> PartitioningSpan {
    let b = BoundaryGraph::from_polarities("d", "dbar", []).expect("valid");
    let l = graph(Graph::builder().vertices(["x", "u"]));
    let c = graph(Graph::builder().vertex("y"));
    let left = map(b.graph(), &l, &[("d", "x")], &[]);
    let right = map(b.graph(), &c, &[("dbar", "y")], &[]);
    PartitioningSpan::new(b, left, right).expect("valid span")
}

/// Every fixture as a document, keyed by file stem. These are the files
/// under `fixtures/` in the crate.
pub fn corpus() -> Vec<(&'static str, Document)> {
    let rotation_graph = |rs: &RotationSystem| {
        Document::new(Body::RotationGraph(io::graph_doc(rs.graph(), Some(rs))))
    };
    let morphism = |m: &GraphMorphism| Document::new(Body::Morphism(io::morphism_doc(m)));
    let embedding = |re: &RotEmbedding| {
        Document::new(Body::BoundaryEmbedding(io::embedding_doc(
            &re.embedding,
            Some(re),
        )))
    };
    let rule = |rr: &RotRule| Document::new(Body::Rule(io::rule_doc(&rr.rule, Some(rr))));
    let span = |rs: &RotSpan| Document::new(Body::Span(io::span_doc(&rs.span, Some(rs))));
    let (strand_host, _) = strand_host();
    let circle_host = loop_on_circle().embedding.host().clone();
    let triangle = triangle_host();
    vec![
        (
            "empty_graph",
            Document::new(Body::Graph(io::graph_doc(&Graph::empty(), None))),
        ),
        (
            "one_circle",
            Document::new(Body::Graph(io::graph_doc(&circle_host, None))),
        ),
        (
            "triangle_plain",
            Document::new(Body::Graph(io::graph_doc(triangle.graph(), None))),
        ),
        ("triangle_host", rotation_graph(&triangle)),
        ("single_loop", rotation_graph(&single_loop())),
        ("nested_bouquet", rotation_graph(&nested_bouquet())),
        (
            "interleaved_bouquet",
            rotation_graph(&interleaved_bouquet()),
        ),
        ("strand_host", rotation_graph(&strand_host)),
        ("loop_to_circle", morphism(&loop_to_circle())),
        ("fold_onto_edge", morphism(&fold_onto_edge())),
        ("fold_loops", morphism(&fold_loops())),
        ("make_a_self_loop", morphism(&make_a_self_loop())),
        ("not_flag_surjective", morphism(&not_flag_surjective())),
        ("circle_to_edge", morphism(&circle_to_edge())),
        ("partition_span", span(&partition_span())),
        ("two_cycle_span", span(&two_cycle_span())),
        (
            "edgeless_span",
            Document::new(Body::Span(io::span_doc(&edgeless_span(), None))),
        ),
        ("loop_on_circle", embedding(&loop_on_circle())),
        ("strand_embedding", embedding(&strand_embedding())),
        ("two_solutions", embedding(&two_solutions())),
        ("strand_rule", rule(&strand_rule())),
        ("strand_identity_rule", rule(&identity_rule(&strand_rule()))),
        ("subdivide_edge", rule(&subdivide_edge())),
        (
            "subdivide_identity_rule",
            rule(&identity_rule(&subdivide_edge())),
        ),
        (
            "delete_isolated_vertex",
            Document::new(Body::Rule(io::rule_doc(&delete_isolated_vertex(), None))),
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_build() {
        partition_span();
        loop_on_circle();
        strand_rule();
        strand_embedding();
        two_solutions();
        subdivide_edge();
        triangle_host();
        delete_isolated_vertex();
        identity_rule(&strand_rule());
        single_loop();
        two_cycle_span();
        edgeless_span();
    }
}
