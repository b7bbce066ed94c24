//! Between domain values and document bodies.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::wire::*;
use super::{Body, Document, IoError, Kind};
use crate::boundary::{BoundaryEmbedding, BoundaryGraph, PartitioningSpan, RePairingSolution};
use crate::dpo::{ComplementResult, PushoutResult, RewriteRule, RewriteTrace};
use crate::graph::{ArcId, Flag, Graph, VertexId};
use crate::matcher::Match;
use crate::morphism::{GraphMorphism, MorphismClass};
use crate::rotation::{RotEmbedding, RotRule, RotSpan, RotationSystem, SurfaceReport};

pub fn graph_doc(g: &Graph, rotation: Option<&RotationSystem>) -> GraphDoc {
    GraphDoc {
        vertices: g.vertices().iter().map(ToString::to_string).collect(),
        edges: g
            .edges()
            .iter()
            .map(|(id, e)| EdgeDoc {
                id: id.to_string(),
                source: e.source.to_string(),
                target: e.target.to_string(),
            })
            .collect(),
        circles: g.circles().iter().map(ToString::to_string).collect(),
        rotation: rotation.map(|r| {
            r.inc()
                .iter()
                .map(|(v, flags)| {
                    (
                        v.to_string(),
                        flags.iter().map(ToString::to_string).collect(),
                    )
                })
                .collect()
        }),
    }
}

pub fn load_graph(doc: &GraphDoc) -> Result<(Arc<Graph>, Option<RotationSystem>), IoError> {
    let mut b = Graph::builder();
    for v in &doc.vertices {
        b.add_vertex(v.as_str());
    }
    for e in &doc.edges {
        b.add_edge(e.id.as_str(), e.source.as_str(), e.target.as_str());
    }
    for o in &doc.circles {
        b.add_circle(o.as_str());
    }
    let g = Arc::new(b.build().map_err(IoError::invalid)?);
    let rot = match &doc.rotation {
        None => None,
        Some(table) => {
            let mut inc = BTreeMap::new();
            for (v, flags) in table {
                let flags = flags
                    .iter()
                    .map(|f| {
                        f.parse::<Flag>()
                            .map_err(|_| IoError::invalid(format!("`{f}` is not a flag")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                inc.insert(VertexId::from(v.as_str()), flags);
            }
            Some(RotationSystem::new(g.clone(), inc).map_err(IoError::invalid)?)
        }
    };
    Ok((g, rot))
}

pub fn map_table(m: &GraphMorphism) -> MapTable {
    MapTable {
        vertices: m
            .vertex_map()
            .iter()
            .map(|(v, w)| (v.to_string(), w.to_string()))
            .collect(),
        arcs: m
            .arc_map()
            .iter()
            .map(|(a, b)| (a.name().to_string(), b.name().to_string()))
            .collect(),
    }
}

pub fn load_map(
    dom: &Arc<Graph>,
    cod: &Arc<Graph>,
    t: &MapTable,
) -> Result<GraphMorphism, IoError> {
    let mut vmap = BTreeMap::new();
    for (v, w) in &t.vertices {
        for (name, g, side) in [(v, dom, "domain"), (w, cod, "codomain")] {
            if !g.has_vertex(&name.as_str().into()) {
                return Err(IoError::invalid(format!(
                    "`{name}` is not a vertex of the {side}"
                )));
            }
        }
        vmap.insert(VertexId::from(v.as_str()), VertexId::from(w.as_str()));
    }
    let mut amap: BTreeMap<ArcId, ArcId> = BTreeMap::new();
    for (a, b) in &t.arcs {
        let x = dom
            .arc_named(a)
            .ok_or_else(|| IoError::invalid(format!("`{a}` is not an arc of the domain")))?;
        let y = cod
            .arc_named(b)
            .ok_or_else(|| IoError::invalid(format!("`{b}` is not an arc of the codomain")))?;
        amap.insert(x, y);
    }
    Ok(GraphMorphism::new(dom.clone(), cod.clone(), vmap, amap))
}

pub fn boundary_doc(b: &BoundaryGraph, rotation: Option<&RotationSystem>) -> BoundaryGraphDoc {
    BoundaryGraphDoc {
        graph: graph_doc(b.graph(), rotation),
        boundary: b.boundary().to_string(),
        dual_boundary: b.dual_boundary().to_string(),
    }
}

pub fn load_boundary(
    doc: &BoundaryGraphDoc,
) -> Result<(BoundaryGraph, Option<RotationSystem>), IoError> {
    let (g, rot) = load_graph(&doc.graph)?;
    let b = BoundaryGraph::new(
        g,
        doc.boundary.as_str().into(),
        doc.dual_boundary.as_str().into(),
    )
    .map_err(IoError::invalid)?;
    Ok((b, rot))
}

/// A loaded value together with its rotation-equipped form, present when
/// every graph involved carries a rotation.
#[derive(Clone, Debug)]
pub struct Loaded<T, R> {
    pub plain: T,
    pub rotated: Option<R>,
}

pub fn load_morphism(doc: &MorphismDoc) -> Result<GraphMorphism, IoError> {
    let (dom, _) = load_graph(&doc.dom)?;
    let (cod, _) = load_graph(&doc.cod)?;
    load_map(&dom, &cod, &doc.map)
}

pub fn morphism_doc(m: &GraphMorphism) -> MorphismDoc {
    MorphismDoc {
        dom: graph_doc(m.dom(), None),
        cod: graph_doc(m.cod(), None),
        map: map_table(m),
    }
}

pub fn load_span(doc: &SpanDoc) -> Result<Loaded<PartitioningSpan, RotSpan>, IoError> {
    let (b, rb) = load_boundary(&doc.boundary_graph)?;
    let (l, rl) = load_graph(&doc.left)?;
    let (c, rc) = load_graph(&doc.right)?;
    let left = load_map(b.graph(), &l, &doc.left_leg)?;
    let right = load_map(b.graph(), &c, &doc.right_leg)?;
    let span = PartitioningSpan::new(b, left, right).map_err(IoError::invalid)?;
    let rotated = match (rb, rl, rc) {
        (Some(rb), Some(rl), Some(rc)) => {
            Some(RotSpan::new(span.clone(), rb, rl, rc).map_err(IoError::invalid)?)
        }
        _ => None,
    };
    Ok(Loaded {
        plain: span,
        rotated,
    })
}

pub fn span_doc(span: &PartitioningSpan, rot: Option<&RotSpan>) -> SpanDoc {
    SpanDoc {
        boundary_graph: boundary_doc(span.boundary(), rot.map(|r| &r.boundary)),
        left: graph_doc(span.left_graph(), rot.map(|r| &r.left)),
        right: graph_doc(span.right_graph(), rot.map(|r| &r.right)),
        left_leg: map_table(span.left()),
        right_leg: map_table(span.right()),
    }
}

pub fn load_rule(doc: &RuleDoc) -> Result<Loaded<RewriteRule, RotRule>, IoError> {
    let (b, rb) = load_boundary(&doc.boundary_graph)?;
    let (l, rl) = load_graph(&doc.lhs)?;
    let (r, rr) = load_graph(&doc.rhs)?;
    let lhs_leg = load_map(b.graph(), &l, &doc.lhs_leg)?;
    let rhs_leg = load_map(b.graph(), &r, &doc.rhs_leg)?;
    let rule = RewriteRule::new(b, lhs_leg, rhs_leg).map_err(IoError::invalid)?;
    let rotated = match (rb, rl, rr) {
        (Some(rb), Some(rl), Some(rr)) => {
            Some(RotRule::new(rule.clone(), rb, rl, rr).map_err(IoError::invalid)?)
        }
        _ => None,
    };
    Ok(Loaded {
        plain: rule,
        rotated,
    })
}

pub fn rule_doc(rule: &RewriteRule, rot: Option<&RotRule>) -> RuleDoc {
    RuleDoc {
        boundary_graph: boundary_doc(rule.boundary(), rot.map(|r| &r.boundary)),
        lhs: graph_doc(rule.lhs(), rot.map(|r| &r.lhs)),
        rhs: graph_doc(rule.rhs(), rot.map(|r| &r.rhs)),
        lhs_leg: map_table(rule.lhs_leg()),
        rhs_leg: map_table(rule.rhs_leg()),
    }
}

pub fn load_embedding(
    doc: &BoundaryEmbeddingDoc,
) -> Result<Loaded<BoundaryEmbedding, RotEmbedding>, IoError> {
    let (b, rb) = load_boundary(&doc.boundary_graph)?;
    let (l, rl) = load_graph(&doc.pattern)?;
    let (g, rg) = load_graph(&doc.host)?;
    let leg = load_map(b.graph(), &l, &doc.boundary_leg)?;
    let m = load_map(&l, &g, &doc.matching)?;
    let be = BoundaryEmbedding::new(b, leg, m).map_err(IoError::invalid)?;
    let rotated = match (rb, rl, rg) {
        (Some(rb), Some(rl), Some(rg)) => {
            Some(RotEmbedding::new(be.clone(), rb, rl, rg).map_err(IoError::invalid)?)
        }
        _ => None,
    };
    Ok(Loaded { plain: be, rotated })
}

pub fn embedding_doc(be: &BoundaryEmbedding, rot: Option<&RotEmbedding>) -> BoundaryEmbeddingDoc {
    BoundaryEmbeddingDoc {
        boundary_graph: boundary_doc(be.boundary(), rot.map(|r| &r.boundary)),
        pattern: graph_doc(be.pattern(), rot.map(|r| &r.pattern)),
        host: graph_doc(be.host(), rot.map(|r| &r.host)),
        boundary_leg: map_table(be.leg()),
        matching: map_table(be.matching()),
    }
}

pub fn red_doc(solution: &RePairingSolution) -> Vec<RedDoc> {
    solution
        .red()
        .iter()
        .map(|(n, p)| [n.to_string(), p.to_string()])
        .collect()
}

pub fn match_doc(matches: &[Match]) -> MatchDoc {
    MatchDoc {
        matches: matches.iter().map(|m| map_table(m.morphism())).collect(),
    }
}

pub fn pushout_doc(po: &PushoutResult, rot: Option<&RotationSystem>) -> PushoutDoc {
    PushoutDoc {
        graph: graph_doc(&po.graph, rot),
        left_map: map_table(&po.m),
        right_map: map_table(&po.g),
        arc_classes: po
            .arc_classes
            .iter()
            .map(|(a, c)| {
                (
                    a.name().to_string(),
                    PairingClassDoc {
                        nodes: c.nodes.iter().map(ToString::to_string).collect(),
                        cycle: c.cycle,
                    },
                )
            })
            .collect(),
    }
}

pub fn complement_doc(
    comp: &ComplementResult,
    solution_index: usize,
    rot: Option<&RotationSystem>,
) -> ComplementDoc {
    ComplementDoc {
        solution_index,
        red: red_doc(&comp.solution),
        graph: graph_doc(&comp.graph, rot),
        dual_boundary: comp.dual_boundary.to_string(),
        boundary_map: map_table(&comp.c),
        host_map: map_table(&comp.g),
    }
}

/// Rotations for a trace: those of the rule and host; the complement and
/// result rotations.
pub struct TraceRotations<'a> {
    pub embedding: &'a RotEmbedding,
    pub complement: &'a RotationSystem,
    pub result: &'a RotationSystem,
}

pub fn trace_doc(trace: &RewriteTrace, rot: Option<TraceRotations<'_>>) -> TraceDoc {
    TraceDoc {
        boundary_embedding: embedding_doc(
            &trace.boundary_embedding,
            rot.as_ref().map(|r| r.embedding),
        ),
        complement: complement_doc(
            &trace.complement,
            trace.solution_index,
            rot.as_ref().map(|r| r.complement),
        ),
        result: pushout_doc(&trace.result, rot.as_ref().map(|r| r.result)),
    }
}

pub fn surface_doc(r: &SurfaceReport) -> SurfaceReportDoc {
    SurfaceReportDoc {
        components: r
            .components
            .iter()
            .map(|c| ComponentDoc {
                vertices: c.vertices.iter().map(ToString::to_string).collect(),
                vertex_count: c.vertex_count,
                edge_count: c.edge_count,
                circle_count: c.circle_count,
                face_count: c.face_count,
                euler_characteristic: c.euler_characteristic,
                genus: c.genus,
            })
            .collect(),
        max_genus: r.max_genus,
        is_planar: r.is_planar,
        per_component_only: r.per_component_only,
    }
}

pub fn classification_doc(class: &MorphismClass) -> ClassificationDoc {
    ClassificationDoc {
        class: class.name().to_string(),
        violations: match class {
            MorphismClass::Invalid(v) => v.iter().map(ToString::to_string).collect(),
            _ => Vec::new(),
        },
    }
}

fn check_graph(doc: &GraphDoc) -> Result<(), IoError> {
    load_graph(doc).map(|_| ())
}

/// Re-runs the validators behind a document's kind.
pub fn validate_document(doc: &Document) -> Result<(), IoError> {
    match &doc.body {
        Body::Graph(g) => check_graph(g),
        Body::RotationGraph(g) => {
            if g.rotation.is_none() {
                return Err(IoError::invalid("a rotation_graph needs a `rotation`"));
            }
            check_graph(g)
        }
        Body::Morphism(m) => load_morphism(m).map(|_| ()),
        Body::Rule(r) => load_rule(r).map(|_| ()),
        Body::Span(s) => load_span(s).map(|_| ()),
        Body::BoundaryEmbedding(b) => load_embedding(b).map(|_| ()),
        Body::Pushout(p) => check_graph(&p.graph),
        Body::Complement(c) => check_graph(&c.graph),
        Body::Trace(t) => {
            load_embedding(&t.boundary_embedding)?;
            check_graph(&t.complement.graph)?;
            check_graph(&t.result.graph)
        }
        Body::Match(_)
        | Body::SurfaceReport(_)
        | Body::LawReport(_)
        | Body::RePairings(_)
        | Body::Classification(_)
        | Body::Validation(_) => Ok(()),
    }
}

/// The body of `doc` if it has the wanted kind.
pub fn expect_kind(doc: &Document, kinds: &[Kind]) -> Result<(), IoError> {
    if kinds.contains(&doc.kind()) {
        Ok(())
    } else {
        Err(IoError::WrongKind {
            expected: kinds
                .iter()
                .map(|k| k.name())
                .collect::<Vec<_>>()
                .join(" or "),
            found: doc.kind(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::io::{parse, print};

    #[test]
    fn rule_round_trips() {
        let rule = fixtures::strand_rule();
        let doc = Document::new(Body::Rule(rule_doc(&rule.rule, Some(&rule))));
        let back = parse(&print(&doc)).unwrap();
        assert_eq!(back, doc);
        let Body::Rule(r) = &back.body else {
            unreachable!()
        };
        let loaded = load_rule(r).unwrap();
        assert_eq!(loaded.plain, rule.rule);
        assert_eq!(loaded.rotated, Some(rule));
    }

    #[test]
    fn missing_self_loop_flag_fails_validation() {
        let mut g = graph_doc(
            fixtures::nested_bouquet().graph(),
            Some(&fixtures::nested_bouquet()),
        );
        g.rotation.as_mut().unwrap().get_mut("v").unwrap().pop();
        let text = print(&Document::new(Body::RotationGraph(g)));
        match parse(&text) {
            Err(IoError::ValidationFailed(why)) => assert!(why[0].contains("missing")),
            other => panic!("unexpected {other:?}"),
        }
    }
}
