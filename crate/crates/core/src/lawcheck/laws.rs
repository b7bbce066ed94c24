//! One predicate per law. Each takes the inputs together with what the
//! library computed from them, so a corrupted result can be fed in to check
//! that the predicate notices.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::boundary::{
    check_solution, pairing_graph, solve_re_pairing, BoundaryEmbedding, PairingGraph,
    PartitioningSpan, Polarity, RePairingSolution,
};
use crate::dpo::{
    is_isomorphism, iso_check, pushout, pushout_complement, ComplementResult, Isomorphism,
    PushoutResult,
};
use crate::graph::{ArcId, EdgeId, Flag, Graph, VertexId};
use crate::morphism::{BaseMap, GraphMorphism, MorphismClass};
use crate::rotation::{RotSpan, RotationSystem};

use super::oracle;

pub type Verdict = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Verdict {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn composite_matches(f: &GraphMorphism, g: &GraphMorphism, gf: &GraphMorphism) -> Verdict {
    ensure(oracle::same_map(gf, &oracle::compose(f, g)), || {
        "composite tables differ from the pointwise composite".into()
    })
}

pub fn flag_bij_composition(f: &GraphMorphism, g: &GraphMorphism, gf: &GraphMorphism) -> Verdict {
    composite_matches(f, g, gf)?;
    if oracle::flag_bijective(f) && oracle::flag_bijective(g) {
        ensure(oracle::flag_bijective(gf), || {
            "composite of flag bijections is not a flag bijection".into()
        })?;
        ensure(gf.is_flag_bijective(), || {
            "library says the composite is not flag bijective".into()
        })?;
    }
    Ok(())
}

pub fn morphism_composition(f: &GraphMorphism, g: &GraphMorphism, gf: &GraphMorphism) -> Verdict {
    composite_matches(f, g, gf)?;
    ensure(oracle::is_morphism(gf), || {
        "composite of morphisms is not a morphism".into()
    })?;
    ensure(gf.classify().is_morphism(), || {
        format!("library rejects the composite: {:?}", gf.classify())
    })?;
    if oracle::is_embedding(f) && oracle::is_embedding(g) {
        ensure(oracle::is_embedding(gf), || {
            "composite of embeddings is not an embedding".into()
        })?;
    }
    let left = crate::morphism::compose(&GraphMorphism::identity(g.cod().clone()), g)
        .map_err(|e| e.to_string())?;
    let right = crate::morphism::compose(f, &GraphMorphism::identity(f.dom().clone()))
        .map_err(|e| e.to_string())?;
    ensure(
        oracle::same_map(&left, g) && oracle::same_map(&right, f),
        || "identity is not neutral for composition".into(),
    )
}

pub fn degree_preservation(f: &GraphMorphism, class: &MorphismClass) -> Verdict {
    ensure(class.is_embedding() == oracle::is_embedding(f), || {
        format!(
            "classified as {} but the definition says otherwise",
            class.name()
        )
    })?;
    if !class.is_embedding() {
        return Ok(());
    }
    for (v, w) in f.vertex_map() {
        let (dv, dw) = (oracle::degree(f.dom(), v), oracle::degree(f.cod(), w));
        ensure(dv == dw, || {
            format!("degree of `{v}` is {dv} but of its image `{w}` is {dw}")
        })?;
        let image: BTreeSet<Flag> = oracle::flags_at(f.dom(), v)
            .iter()
            .filter_map(|x| oracle::map_flag(f, x))
            .collect();
        ensure(
            image == oracle::flags_at(f.cod(), w) && image.len() == dv,
            || format!("flags at `{v}` are not carried bijectively onto those at `{w}`"),
        )?;
    }
    Ok(())
}

pub fn almost_vertex_injective(f: &GraphMorphism, flag_bijective: bool) -> Verdict {
    let truth = oracle::is_morphism(f) && oracle::flag_bijective(f);
    ensure(flag_bijective == truth, || {
        format!("flag bijectivity reported as {flag_bijective}")
    })?;
    if !truth {
        return Ok(());
    }
    let mut by_image: BTreeMap<&VertexId, Vec<&VertexId>> = BTreeMap::new();
    for (v, w) in f.vertex_map() {
        by_image.entry(w).or_default().push(v);
    }
    for (w, vs) in by_image {
        if vs.len() > 1 {
            for v in vs {
                let d = oracle::degree(f.dom(), v);
                ensure(d == 0, || {
                    format!("`{v}` shares its image `{w}` but has degree {d}")
                })?;
            }
        }
    }
    Ok(())
}

fn loops_at(g: &Graph, v: &VertexId) -> usize {
    g.edges()
        .values()
        .filter(|x| &x.source == v && &x.target == v)
        .count()
}

pub fn self_loop_creation(span: &PartitioningSpan, pairing: &PairingGraph) -> Verdict {
    let b = span.boundary();
    let blue = oracle::blue_edges(b, span.left());
    let red: BTreeSet<(EdgeId, EdgeId)> = oracle::blue_edges(b, span.right())
        .into_iter()
        .map(|(p, n)| (n, p))
        .collect();
    ensure(pairing.blue() == &blue, || {
        "blue edges differ from the loops of the left leg".into()
    })?;
    ensure(pairing.red() == &red, || {
        "red edges differ from the loops of the right leg".into()
    })?;
    let x = span.left_boundary();
    ensure(loops_at(span.left_graph(), x) == blue.len(), || {
        format!(
            "{} self-loops at `{x}` but {} blue edges",
            loops_at(span.left_graph(), x),
            blue.len()
        )
    })?;
    let y = span.right_boundary();
    ensure(loops_at(span.right_graph(), y) == red.len(), || {
        format!(
            "{} self-loops at `{y}` but {} red edges",
            loops_at(span.right_graph(), y),
            red.len()
        )
    })?;
    for (p, n) in &blue {
        ensure(b.polarity(p) != b.polarity(n), || {
            format!("blue edge {p} - {n} joins equal polarities")
        })?;
    }
    Ok(())
}

pub fn pairing_paths_or_cycles(
    nodes: &BTreeMap<EdgeId, Polarity>,
    blue: &BTreeSet<(EdgeId, EdgeId)>,
    red: &BTreeSet<(EdgeId, EdgeId)>,
) -> Verdict {
    for (colour, edges) in [("blue", blue), ("red", red)] {
        let mut degree: BTreeMap<&EdgeId, usize> = BTreeMap::new();
        for (a, b) in edges {
            ensure(nodes.contains_key(a) && nodes.contains_key(b), || {
                format!("{colour} edge off the nodes")
            })?;
            ensure(nodes[a] != nodes[b], || {
                format!("{colour} edge {a} - {b} joins equal polarities")
            })?;
            *degree.entry(a).or_default() += 1;
            *degree.entry(b).or_default() += 1;
        }
        if let Some((n, _)) = degree.iter().find(|(_, d)| **d > 1) {
            return Err(format!("node {n} has two {colour} edges"));
        }
    }
    let members: BTreeSet<EdgeId> = nodes.keys().cloned().collect();
    for (component, cycle) in oracle::pairing_components(&members, blue, red) {
        let edges = blue
            .iter()
            .chain(red)
            .filter(|(a, _)| component.contains(a))
            .count();
        let ok = if cycle {
            edges == component.len()
        } else {
            edges + 1 == component.len()
        };
        ensure(ok, || {
            format!("component {component:?} is neither a path nor a cycle")
        })?;
    }
    Ok(())
}

/// The pushout arc each boundary edge ends up on, through the left side.
fn glued_arcs(
    span: &PartitioningSpan,
    po: &PushoutResult,
) -> Result<BTreeMap<EdgeId, ArcId>, String> {
    span.boundary()
        .edges()
        .map(|e| {
            let mid = span
                .left()
                .arc_map()
                .get(&ArcId::Edge(e.clone()))
                .ok_or("left leg not total")?;
            let image = po.m.arc_map().get(mid).ok_or("pushout leg not total")?;
            Ok((e.clone(), image.clone()))
        })
        .collect()
}

fn span_components(span: &PartitioningSpan) -> Vec<(BTreeSet<EdgeId>, bool)> {
    let b = span.boundary();
    let nodes: BTreeSet<EdgeId> = b.edges().cloned().collect();
    let blue = oracle::blue_edges(b, span.left());
    let red = oracle::blue_edges(b, span.right())
        .into_iter()
        .map(|(p, n)| (n, p))
        .collect();
    oracle::pairing_components(&nodes, &blue, &red)
}

pub fn path_in_b(span: &PartitioningSpan, po: &PushoutResult) -> Verdict {
    let glued = glued_arcs(span, po)?;
    let mut by_arc: BTreeMap<&ArcId, BTreeSet<EdgeId>> = BTreeMap::new();
    for (e, a) in &glued {
        by_arc.entry(a).or_default().insert(e.clone());
    }
    let expected: BTreeSet<BTreeSet<EdgeId>> =
        span_components(span).into_iter().map(|(c, _)| c).collect();
    let got: BTreeSet<BTreeSet<EdgeId>> = by_arc.values().cloned().collect();
    ensure(got == expected, || {
        format!("arcs glue {got:?}, components are {expected:?}")
    })?;
    for (a, members) in &by_arc {
        let recorded: BTreeSet<EdgeId> = po
            .arc_classes
            .get(*a)
            .map(|c| c.nodes.iter().cloned().collect())
            .unwrap_or_default();
        ensure(&recorded == members, || {
            format!("arc `{a}` records class {recorded:?}, expected {members:?}")
        })?;
    }
    Ok(())
}

pub fn edges_and_circles(span: &PartitioningSpan, po: &PushoutResult) -> Verdict {
    ensure(po.graph.validate().is_ok(), || {
        "pushout graph has a dangling endpoint".into()
    })?;
    let glued = glued_arcs(span, po)?;
    for (component, cycle) in span_components(span) {
        let e = component.iter().next().expect("components are non-empty");
        let arc = &glued[e];
        ensure(arc.is_circle() == cycle, || {
            format!("component {component:?} (cycle: {cycle}) became `{arc}`")
        })?;
    }
    let glued_images: BTreeSet<&ArcId> = glued.values().collect();
    for (side, leg, from) in [("left", &po.m, span.left()), ("right", &po.g, span.right())] {
        let boundary_arcs: BTreeSet<&ArcId> = from.arc_map().values().collect();
        for (a, image) in leg.arc_map() {
            if boundary_arcs.contains(a) {
                continue;
            }
            ensure(
                a.is_circle() == image.is_circle() && !glued_images.contains(image),
                || format!("{side} arc `{a}` away from the boundary became `{image}`"),
            )?;
        }
    }
    Ok(())
}

pub fn pushout_legs_are_embeddings(span: &PartitioningSpan, po: &PushoutResult) -> Verdict {
    for (name, leg) in [("m", &po.m), ("g", &po.g)] {
        ensure(oracle::is_embedding(leg), || {
            format!("pushout leg {name} is not an embedding")
        })?;
        ensure(leg.classify().is_embedding(), || {
            format!("library rejects pushout leg {name}")
        })?;
    }
    let ml = oracle::compose(span.left(), &po.m);
    let gc = oracle::compose(span.right(), &po.g);
    ensure(oracle::same_map(&ml, &gc), || {
        "pushout square does not commute".into()
    })
}

pub fn complement_round_trip(be: &BoundaryEmbedding, comp: &ComplementResult) -> Verdict {
    let span = comp
        .span(be)
        .map_err(|e| format!("complement span invalid: {e}"))?;
    let back = pushout(&span).map_err(|e| format!("complement span has no pushout: {e}"))?;
    match iso_check(&back.graph, be.host()) {
        Ok(Some(_)) => Ok(()),
        Ok(None) => Err("pushout of the complement span is not the host".into()),
        Err(e) => Err(e.to_string()),
    }
}

/// Reverses the order of vertex names and of edge names, and of circle
/// names, of `g`.
fn reverse_names(g: &Graph) -> (Graph, BTreeMap<VertexId, VertexId>, BTreeMap<ArcId, ArcId>) {
    let vs: Vec<&VertexId> = g.vertices().iter().collect();
    let es: Vec<&EdgeId> = g.edges().keys().collect();
    let os: Vec<_> = g.circles().iter().collect();
    let vmap: BTreeMap<VertexId, VertexId> = vs
        .iter()
        .zip(vs.iter().rev())
        .map(|(a, b)| ((*a).clone(), (*b).clone()))
        .collect();
    let mut amap: BTreeMap<ArcId, ArcId> = es
        .iter()
        .zip(es.iter().rev())
        .map(|(a, b)| (ArcId::Edge((*a).clone()), ArcId::Edge((*b).clone())))
        .collect();
    amap.extend(
        os.iter()
            .zip(os.iter().rev())
            .map(|(a, b)| (ArcId::Circle((*a).clone()), ArcId::Circle((*b).clone()))),
    );
    let mut b = Graph::builder();
    for v in vs {
        b.add_vertex(vmap[v].clone());
    }
    for (e, x) in g.edges() {
        let ArcId::Edge(name) = &amap[&ArcId::Edge(e.clone())] else {
            unreachable!()
        };
        b.add_edge(
            name.clone(),
            vmap[&x.source].clone(),
            vmap[&x.target].clone(),
        );
    }
    for o in os {
        let ArcId::Circle(name) = &amap[&ArcId::Circle(o.clone())] else {
            unreachable!()
        };
        b.add_circle(name.clone());
    }
    (b.build().expect("renaming keeps a graph valid"), vmap, amap)
}

/// The complement of `be` with the host renamed is the renamed complement:
/// there is an isomorphism fixing the legs from `B` and over the renaming.
fn relabelled_complement_agrees(be: &BoundaryEmbedding, comp: &ComplementResult) -> Verdict {
    let (host2, pv, pa) = reverse_names(be.host());
    let host2 = Arc::new(host2);
    let m = be.matching();
    let m2 = GraphMorphism::new(
        m.dom().clone(),
        host2.clone(),
        m.vertex_map()
            .iter()
            .map(|(v, w)| (v.clone(), pv[w].clone()))
            .collect(),
        m.arc_map()
            .iter()
            .map(|(a, b)| (a.clone(), pa[b].clone()))
            .collect(),
    );
    let be2 = BoundaryEmbedding::new(be.boundary().clone(), be.leg().clone(), m2)
        .map_err(|e| format!("renamed host rejected: {e}"))?;
    let comp2 = pushout_complement(&be2, &comp.solution)
        .map_err(|e| format!("renamed complement failed: {e}"))?;
    let mut iso = Isomorphism {
        vertices: BTreeMap::from([(comp.dual_boundary.clone(), comp2.dual_boundary.clone())]),
        arcs: BTreeMap::new(),
    };
    for (b, a) in comp.c.arc_map() {
        iso.arcs.insert(a.clone(), comp2.c.arc_map()[b].clone());
    }
    let back_v: BTreeMap<&VertexId, &VertexId> =
        comp2.g.vertex_map().iter().map(|(v, w)| (w, v)).collect();
    for (v, w) in comp.g.vertex_map() {
        let target = back_v
            .get(&pv[w])
            .ok_or_else(|| format!("no counterpart for `{v}`"))?;
        iso.vertices.insert(v.clone(), (*target).clone());
    }
    let back_a: BTreeMap<&ArcId, &ArcId> = comp2
        .g
        .arc_map()
        .iter()
        .filter(|(a, _)| !comp2.c.arc_map().values().any(|x| x == *a))
        .map(|(a, b)| (b, a))
        .collect();
    for (a, b) in comp.g.arc_map() {
        if iso.arcs.contains_key(a) {
            continue;
        }
        let target = back_a
            .get(&pa[b])
            .ok_or_else(|| format!("no counterpart for arc `{a}`"))?;
        iso.arcs.insert(a.clone(), (*target).clone());
    }
    ensure(is_isomorphism(&comp.graph, &comp2.graph, &iso), || {
        "complement of the renamed host is not the renamed complement".into()
    })
}

/// Edges at `v` split into self-loops and the rest.
fn incidence(g: &Graph, v: &VertexId) -> (usize, usize) {
    let loops = loops_at(g, v);
    let other = g
        .edges()
        .values()
        .filter(|x| (&x.source == v) != (&x.target == v))
        .count();
    (loops, other)
}

fn away_from(g: &Graph, v: &VertexId) -> Graph {
    let mut keep: BTreeSet<VertexId> = g.vertices().clone();
    keep.remove(v);
    let mut sub = g.induced_subgraph(&keep).expect("subset of the vertices");
    if !g.circles().is_empty() {
        let mut b = sub.to_builder();
        b.circles = g.circles().iter().cloned().collect();
        sub = b.build().expect("circles are free");
    }
    sub
}

pub fn complement_uniqueness(be: &BoundaryEmbedding, comps: &[ComplementResult]) -> Verdict {
    ensure(!comps.is_empty(), || "no complement".into())?;
    if let Some(first) = comps.first() {
        relabelled_complement_agrees(be, first)?;
    }
    let first = &comps[0];
    let base = away_from(&first.graph, &first.dual_boundary);
    let shape = incidence(&first.graph, &first.dual_boundary);
    for (i, c) in comps.iter().enumerate().skip(1) {
        ensure(c.graph.vertices() == first.graph.vertices(), || {
            format!("complement {i} has other vertices")
        })?;
        ensure(incidence(&c.graph, &c.dual_boundary) == shape, || {
            format!(
                "complement {i} has a different number of self-loops or edges at the dual boundary"
            )
        })?;
        ensure(away_from(&c.graph, &c.dual_boundary) == base, || {
            format!("complement {i} differs away from the dual boundary")
        })?;
    }
    Ok(())
}

pub fn re_pairing_existence(be: &BoundaryEmbedding, solutions: &[RePairingSolution]) -> Verdict {
    ensure(!solutions.is_empty(), || "no solution".into())?;
    for s in solutions {
        check_solution(be, s).map_err(|e| e.to_string())?;
    }
    let canonical = solve_re_pairing(be).map_err(|e| e.to_string())?;
    ensure(canonical == solutions[0], || {
        "first solution is not the canonical one".into()
    })?;
    let got: Vec<BTreeSet<(EdgeId, EdgeId)>> = solutions.iter().map(|s| s.red().clone()).collect();
    let unique: BTreeSet<_> = got.iter().cloned().collect();
    ensure(unique.len() == got.len(), || {
        "a solution is listed twice".into()
    })?;
    let expected = oracle::brute_re_pairings(be);
    ensure(unique == expected, || {
        format!(
            "{} solutions enumerated, exhaustive search finds {}",
            unique.len(),
            expected.len()
        )
    })
}

pub fn rot_preservation_implies_flag_surj(
    f: &GraphMorphism,
    dom: &RotationSystem,
    cod: &RotationSystem,
    claimed: bool,
) -> Verdict {
    let truth = oracle::preserves_rotation(f, dom, cod);
    ensure(claimed == truth, || {
        format!("rotation preservation reported as {claimed}")
    })?;
    if truth {
        ensure(oracle::flag_surjective(f), || {
            "rotation preserving but not flag surjective".into()
        })?;
    }
    Ok(())
}

pub fn forgetful_functoriality(
    f: &GraphMorphism,
    g: &GraphMorphism,
    forgotten: &BaseMap,
) -> Verdict {
    let expected = oracle::forget(&oracle::compose(f, g));
    ensure(forgotten == &expected, || {
        "U(g ∘ f) differs from the composite with circles dropped".into()
    })?;
    let stepwise = f
        .forget_circles()
        .then(&g.forget_circles())
        .ok_or("U(f) and U(g) do not compose")?;
    ensure(forgotten == &stepwise, || {
        "U(g ∘ f) differs from U(g) ∘ U(f)".into()
    })?;
    let id = GraphMorphism::identity(f.dom().clone()).forget_circles();
    ensure(id == BaseMap::identity(f.dom()), || {
        "U does not preserve identities".into()
    })
}

pub fn forgetful_pushout(rs: &RotSpan, plain: &PushoutResult, rotated: &PushoutResult) -> Verdict {
    ensure(plain == rotated, || {
        "rotation pushout differs from the plain pushout".into()
    })?;
    let po = pushout(&rs.span).map_err(|e| e.to_string())?;
    ensure(&po == plain, || "plain pushout is not reproducible".into())
}

/// Recomputes the pairing graph and checks it, for callers holding a span.
pub fn span_pairing(span: &PartitioningSpan) -> Result<PairingGraph, String> {
    pairing_graph(span).map_err(|e| e.to_string())
}
