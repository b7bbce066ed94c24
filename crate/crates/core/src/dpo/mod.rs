//! Pushouts of partitioning spans, pushout complements of boundary
//! embeddings, and double-pushout rewrite steps.

mod iso;

pub use iso::{
    is_isomorphism, iso_check, iso_check_with_limit, IsoError, Isomorphism, DEFAULT_ISO_STEPS,
};

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use thiserror::Error;

use crate::boundary::{
    check_solution, enumerate_re_pairings, leg_conditions, pairing_graph, solve_re_pairing,
    BoundaryEmbedding, BoundaryError, BoundaryGraph, PairingComponent, PartitioningSpan, Polarity,
    RePairingSolution, DEFAULT_SOLUTION_CAP,
};
use crate::graph::{ArcId, End, Graph, VertexId};
use crate::morphism::GraphMorphism;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DpoError {
    #[error(transparent)]
    Boundary(#[from] BoundaryError),
    #[error("pushout arc `{arc}` gets two different {end:?} endpoints")]
    EndpointConflict { arc: ArcId, end: End },
    #[error("pushout arc `{0}` has exactly one endpoint")]
    HalfDefinedArc(ArcId),
    #[error("rewrite rule invariant violated: {}", .0.join("; "))]
    RuleInvariantViolated(Vec<String>),
    #[error("not a boundary embedding: {0}")]
    NotABoundaryEmbedding(BoundaryError),
    #[error("solution index {index} out of range ({count} solutions)")]
    SolutionIndexOutOfRange { index: usize, count: usize },
}

/// The glued graph with its two legs.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PushoutResult {
    pub graph: Arc<Graph>,
    /// `L -> G`.
    pub m: GraphMorphism,
    /// `C -> G`.
    pub g: GraphMorphism,
    /// For each arc of `G`, the pairing component of boundary edges it was
    /// glued along; empty when the arc comes from one side only.
    pub arc_classes: BTreeMap<ArcId, PairingComponent>,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum Side {
    Left,
    Right,
}

type Node = (Side, ArcId);

fn find(parent: &mut BTreeMap<Node, Node>, x: &Node) -> Node {
    let mut root = x.clone();
    while parent[&root] != root {
        root = parent[&root].clone();
    }
    let mut cur = x.clone();
    while cur != root {
        let next = parent[&cur].clone();
        parent.insert(cur, root.clone());
        cur = next;
    }
    root
}

/// Pushout with vertices and arcs tagged `L:` and `C:` by side.
pub fn pushout(span: &PartitioningSpan) -> Result<PushoutResult, DpoError> {
    pushout_tagged(span, "L", "C")
}

/// Pushout whose ids are prefixed with the given side tags.
pub fn pushout_tagged(
    span: &PartitioningSpan,
    left_tag: &str,
    right_tag: &str,
) -> Result<PushoutResult, DpoError> {
    let (l, c) = (span.left(), span.right());
    let (lg, cg) = (span.left_graph(), span.right_graph());
    let (l_bd, c_bd) = (span.left_boundary(), span.right_boundary());
    let tag = |side: Side, name: &str| match side {
        Side::Left => format!("{left_tag}:{name}"),
        Side::Right => format!("{right_tag}:{name}"),
    };

    let mut parent: BTreeMap<Node, Node> = BTreeMap::new();
    for a in lg.arcs() {
        parent.insert((Side::Left, a.clone()), (Side::Left, a));
    }
    for a in cg.arcs() {
        parent.insert((Side::Right, a.clone()), (Side::Right, a));
    }
    for e in span.boundary().edges() {
        let arc = ArcId::Edge(e.clone());
        let x = (Side::Left, l.arc(&arc).expect("legs are total").clone());
        let y = (Side::Right, c.arc(&arc).expect("legs are total").clone());
        let (rx, ry) = (find(&mut parent, &x), find(&mut parent, &y));
        if rx != ry {
            // keep the least node as root so it names the class
            let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
            parent.insert(hi, lo);
        }
    }
    let nodes: Vec<Node> = parent.keys().cloned().collect();
    let mut classes: BTreeMap<Node, Vec<Node>> = BTreeMap::new();
    for n in nodes {
        let root = find(&mut parent, &n);
        classes.entry(root).or_default().push(n);
    }

    let vname = |side: Side, v: &VertexId| VertexId::new(tag(side, v.as_str()));
    let mut builder = Graph::builder();
    for v in lg.vertices() {
        if v != l_bd {
            builder.add_vertex(vname(Side::Left, v));
        }
    }
    for v in cg.vertices() {
        if v != c_bd {
            builder.add_vertex(vname(Side::Right, v));
        }
    }

    let mut class_arc: BTreeMap<Node, ArcId> = BTreeMap::new();
    for (root, members) in &classes {
        let name = tag(root.0, root.1.name());
        let mut ends: [Option<VertexId>; 2] = [None, None];
        for (i, end) in [End::Source, End::Target].into_iter().enumerate() {
            for (side, a) in members {
                let Some(e) = a.as_edge() else { continue };
                let (graph, bd) = match side {
                    Side::Left => (lg, l_bd),
                    Side::Right => (cg, c_bd),
                };
                let v = graph.edge(e).expect("own edge").endpoint(end);
                if v == bd {
                    continue;
                }
                let candidate = vname(*side, v);
                match &ends[i] {
                    Some(prev) if prev != &candidate => {
                        return Err(DpoError::EndpointConflict {
                            arc: ArcId::Edge(name.as_str().into()),
                            end,
                        })
                    }
                    _ => ends[i] = Some(candidate),
                }
            }
        }
        let arc = match ends {
            [Some(s), Some(t)] => {
                builder.add_edge(name.as_str(), s, t);
                ArcId::Edge(name.as_str().into())
            }
            [None, None] => {
                builder.add_circle(name.as_str());
                ArcId::Circle(name.as_str().into())
            }
            _ => return Err(DpoError::HalfDefinedArc(ArcId::Edge(name.as_str().into()))),
        };
        for member in members {
            class_arc.insert(member.clone(), arc.clone());
        }
    }
    let graph = Arc::new(
        builder
            .build()
            .expect("pushout ids are fresh by construction"),
    );

    let leg = |side: Side, dom: &Arc<Graph>, bd: &VertexId| {
        let vmap = dom
            .vertices()
            .iter()
            .filter(|v| *v != bd)
            .map(|v| (v.clone(), vname(side, v)))
            .collect();
        let amap = dom
            .arcs()
            .map(|a| {
                let image = class_arc[&(side, a.clone())].clone();
                (a, image)
            })
            .collect();
        GraphMorphism::new(dom.clone(), graph.clone(), vmap, amap)
    };
    let m = leg(Side::Left, lg, l_bd);
    let g = leg(Side::Right, cg, c_bd);

    let mut arc_classes: BTreeMap<ArcId, PairingComponent> = graph
        .arcs()
        .map(|a| {
            (
                a,
                PairingComponent {
                    nodes: Vec::new(),
                    cycle: false,
                },
            )
        })
        .collect();
    for comp in pairing_graph(span)?.components() {
        let first = ArcId::Edge(comp.nodes[0].clone());
        let image = m
            .arc(l.arc(&first).expect("legs are total"))
            .expect("total");
        arc_classes.insert(image.clone(), comp);
    }
    Ok(PushoutResult {
        graph,
        m,
        g,
        arc_classes,
    })
}

/// The complement `C` of a boundary embedding for one re-pairing solution.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ComplementResult {
    pub graph: Arc<Graph>,
    pub dual_boundary: VertexId,
    /// `B -> C`.
    pub c: GraphMorphism,
    /// `C -> G`.
    pub g: GraphMorphism,
    pub solution: RePairingSolution,
}

impl ComplementResult {
    /// The span `L <- B -> C` whose pushout gives back the host.
    pub fn span(&self, be: &BoundaryEmbedding) -> Result<PartitioningSpan, DpoError> {
        Ok(PartitioningSpan::new(
            be.boundary().clone(),
            be.leg().clone(),
            self.c.clone(),
        )?)
    }
}

fn fresh(base: &str, taken: &BTreeSet<String>) -> String {
    let mut name = base.to_string();
    while taken.contains(&name) {
        name.push('\'');
    }
    name
}

/// Removes the matched part of the host and closes the hole with `∂̄`, wired
/// according to `solution`.
pub fn pushout_complement(
    be: &BoundaryEmbedding,
    solution: &RePairingSolution,
) -> Result<ComplementResult, DpoError> {
    check_solution(be, solution)?;
    let host = be.host();
    let m = be.matching();
    let matched: BTreeSet<&VertexId> = m.vertex_map().values().collect();
    let hit: BTreeSet<&ArcId> = m.arc_map().values().collect();

    let kept: BTreeSet<VertexId> = host
        .vertices()
        .iter()
        .filter(|v| !matched.contains(v))
        .cloned()
        .collect();
    let mut builder = Graph::builder();
    let mut vmap = BTreeMap::new();
    let mut amap = BTreeMap::new();
    for v in &kept {
        builder.add_vertex(v.clone());
        vmap.insert(v.clone(), v.clone());
    }
    let mut taken_arcs: BTreeSet<String> = BTreeSet::new();
    for (id, e) in host.edges() {
        let arc = ArcId::Edge(id.clone());
        if kept.contains(&e.source) && kept.contains(&e.target) && !hit.contains(&arc) {
            builder.add_edge(id.clone(), e.source.clone(), e.target.clone());
            taken_arcs.insert(id.to_string());
            amap.insert(arc.clone(), arc);
        }
    }
    for o in host.circles() {
        let arc = ArcId::Circle(o.clone());
        if !hit.contains(&arc) {
            builder.add_circle(o.clone());
            taken_arcs.insert(o.to_string());
            amap.insert(arc.clone(), arc);
        }
    }
    let vertex_names: BTreeSet<String> = kept.iter().map(ToString::to_string).collect();
    let dual = VertexId::new(fresh(be.boundary().dual_boundary().as_str(), &vertex_names));
    builder.add_vertex(dual.clone());

    let mut c_amap: BTreeMap<ArcId, ArcId> = BTreeMap::new();
    for (n, p) in solution.red() {
        let name = fresh(n.min(p).as_str(), &taken_arcs);
        taken_arcs.insert(name.clone());
        builder.add_edge(name.as_str(), dual.clone(), dual.clone());
        let arc = ArcId::Edge(name.as_str().into());
        c_amap.insert(ArcId::Edge(n.clone()), arc.clone());
        c_amap.insert(ArcId::Edge(p.clone()), arc.clone());
        amap.insert(arc, be.host_arc(n).clone());
    }
    for e in be.boundary().edges() {
        let boundary_arc = ArcId::Edge(e.clone());
        if c_amap.contains_key(&boundary_arc) {
            continue;
        }
        let image = be.host_arc(e);
        let host_edge = image
            .as_edge()
            .and_then(|h| host.edge(h))
            .expect("check_solution keeps unpaired nodes off circles");
        let name = fresh(e.as_str(), &taken_arcs);
        taken_arcs.insert(name.clone());
        match be.boundary().polarity(e).expect("own edge") {
            Polarity::Positive => {
                builder.add_edge(name.as_str(), host_edge.source.clone(), dual.clone())
            }
            Polarity::Negative => {
                builder.add_edge(name.as_str(), dual.clone(), host_edge.target.clone())
            }
        }
        let arc = ArcId::Edge(name.as_str().into());
        c_amap.insert(boundary_arc, arc.clone());
        amap.insert(arc, image.clone());
    }
    let graph = Arc::new(
        builder
            .build()
            .expect("complement ids are fresh by construction"),
    );
    let c = GraphMorphism::new(
        be.boundary().graph().clone(),
        graph.clone(),
        BTreeMap::from([(be.boundary().dual_boundary().clone(), dual.clone())]),
        c_amap,
    );
    let g = GraphMorphism::new(graph.clone(), host.clone(), vmap, amap);
    Ok(ComplementResult {
        graph,
        dual_boundary: dual,
        c,
        g,
        solution: solution.clone(),
    })
}

/// `L <- B -> R`, both legs keeping `∂` and dropping `∂̄`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RewriteRule {
    boundary: BoundaryGraph,
    lhs_leg: GraphMorphism,
    rhs_leg: GraphMorphism,
}

impl RewriteRule {
    pub fn new(
        boundary: BoundaryGraph,
        lhs_leg: GraphMorphism,
        rhs_leg: GraphMorphism,
    ) -> Result<Self, DpoError> {
        let mut errors = Vec::new();
        let (d, db) = (
            boundary.boundary().clone(),
            boundary.dual_boundary().clone(),
        );
        leg_conditions("left leg", &boundary, &lhs_leg, &d, &db, &mut errors);
        leg_conditions("right leg", &boundary, &rhs_leg, &d, &db, &mut errors);
        if !errors.is_empty() {
            return Err(DpoError::RuleInvariantViolated(errors));
        }
        Ok(RewriteRule {
            boundary,
            lhs_leg,
            rhs_leg,
        })
    }

    pub fn boundary(&self) -> &BoundaryGraph {
        &self.boundary
    }

    pub fn lhs_leg(&self) -> &GraphMorphism {
        &self.lhs_leg
    }

    pub fn rhs_leg(&self) -> &GraphMorphism {
        &self.rhs_leg
    }

    pub fn lhs(&self) -> &Arc<Graph> {
        self.lhs_leg.cod()
    }

    pub fn rhs(&self) -> &Arc<Graph> {
        self.rhs_leg.cod()
    }

    /// The rule that puts back what this one takes out.
    pub fn inverse(&self) -> RewriteRule {
        RewriteRule {
            boundary: self.boundary.clone(),
            lhs_leg: self.rhs_leg.clone(),
            rhs_leg: self.lhs_leg.clone(),
        }
    }
}

/// Everything computed along one rewrite step.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RewriteTrace {
    pub boundary_embedding: BoundaryEmbedding,
    pub solution_index: usize,
    pub complement: ComplementResult,
    /// The right-hand square; its graph is the result.
    pub result: PushoutResult,
}

impl RewriteTrace {
    pub fn result_graph(&self) -> &Arc<Graph> {
        &self.result.graph
    }
}

/// One double-pushout step at an explicit match, using the re-pairing
/// solution at `solution_index` (the canonical one when `None`).
pub fn rewrite(
    rule: &RewriteRule,
    matching: &GraphMorphism,
    solution_index: Option<usize>,
) -> Result<RewriteTrace, DpoError> {
    let be = BoundaryEmbedding::new(
        rule.boundary().clone(),
        rule.lhs_leg().clone(),
        matching.clone(),
    )
    .map_err(DpoError::NotABoundaryEmbedding)?;
    let (index, solution) = match solution_index {
        None => (0, solve_re_pairing(&be)?),
        Some(i) => {
            let mut all = enumerate_re_pairings(&be, DEFAULT_SOLUTION_CAP)?;
            if i >= all.len() {
                return Err(DpoError::SolutionIndexOutOfRange {
                    index: i,
                    count: all.len(),
                });
            }
            (i, all.swap_remove(i))
        }
    };
    let complement = pushout_complement(&be, &solution)?;
    let span = PartitioningSpan::new(
        rule.boundary().clone(),
        rule.rhs_leg().clone(),
        complement.c.clone(),
    )?;
    let result = pushout_tagged(&span, "R", "C")?;
    Ok(RewriteTrace {
        boundary_embedding: be,
        solution_index: index,
        complement,
        result,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::Polarity::{Negative, Positive};

    fn a(name: &str) -> ArcId {
        ArcId::Edge(name.into())
    }

    fn gm(
        dom: &Arc<Graph>,
        cod: &Arc<Graph>,
        v: &[(&str, &str)],
        arcs: &[(ArcId, ArcId)],
    ) -> GraphMorphism {
        GraphMorphism::new(
            dom.clone(),
            cod.clone(),
            v.iter().map(|(x, y)| ((*x).into(), (*y).into())).collect(),
            arcs.iter().cloned().collect(),
        )
    }

    #[test]
    fn edgeless_pushout_is_disjoint_union() {
        let b = BoundaryGraph::from_polarities("d", "db", []).unwrap();
        let l = Arc::new(Graph::builder().vertices(["x", "u"]).build().unwrap());
        let c = Arc::new(Graph::builder().vertices(["y", "w"]).build().unwrap());
        let span = PartitioningSpan::new(
            b.clone(),
            gm(b.graph(), &l, &[("d", "x")], &[]),
            gm(b.graph(), &c, &[("db", "y")], &[]),
        )
        .unwrap();
        let po = pushout(&span).unwrap();
        let names: Vec<_> = po.graph.vertices().iter().map(|v| v.to_string()).collect();
        assert_eq!(names, ["C:w", "L:u"]);
        assert_eq!(po.graph.arc_count(), 0);
        assert!(po.m.classify().is_embedding() && po.g.classify().is_embedding());
    }

    #[test]
    fn two_loops_glue_to_a_circle() {
        let b =
            BoundaryGraph::from_polarities("d", "db", [("p", Positive), ("n", Negative)]).unwrap();
        let l = Arc::new(
            Graph::builder()
                .vertex("x")
                .edge("lx", "x", "x")
                .build()
                .unwrap(),
        );
        let c = Arc::new(
            Graph::builder()
                .vertex("y")
                .edge("ly", "y", "y")
                .build()
                .unwrap(),
        );
        let span = PartitioningSpan::new(
            b.clone(),
            gm(
                b.graph(),
                &l,
                &[("d", "x")],
                &[(a("p"), a("lx")), (a("n"), a("lx"))],
            ),
            gm(
                b.graph(),
                &c,
                &[("db", "y")],
                &[(a("p"), a("ly")), (a("n"), a("ly"))],
            ),
        )
        .unwrap();
        let po = pushout(&span).unwrap();
        assert!(po.graph.vertices().is_empty() && po.graph.edges().is_empty());
        assert_eq!(po.graph.circles().len(), 1);
        let o = ArcId::Circle("L:lx".into());
        assert!(po.arc_classes[&o].cycle);
        assert!(po.m.classify().is_embedding() && po.g.classify().is_embedding());
    }

    /// One loop at the pattern's boundary vertex, matched onto a circle.
    fn loop_on_circle() -> BoundaryEmbedding {
        let b =
            BoundaryGraph::from_polarities("d", "db", [("p", Positive), ("n", Negative)]).unwrap();
        let l = Arc::new(
            Graph::builder()
                .vertex("x")
                .edge("lx", "x", "x")
                .build()
                .unwrap(),
        );
        let g = Arc::new(Graph::builder().circle("o").build().unwrap());
        BoundaryEmbedding::new(
            b.clone(),
            gm(
                b.graph(),
                &l,
                &[("d", "x")],
                &[(a("p"), a("lx")), (a("n"), a("lx"))],
            ),
            gm(&l, &g, &[], &[(a("lx"), ArcId::Circle("o".into()))]),
        )
        .unwrap()
    }

    #[test]
    fn complement_of_loop_on_circle() {
        let be = loop_on_circle();
        let sol = solve_re_pairing(&be).unwrap();
        let comp = pushout_complement(&be, &sol).unwrap();
        assert_eq!(comp.graph.vertices().len(), 1);
        assert_eq!(comp.graph.edges().len(), 1);
        let (_, loop_edge) = comp.graph.edges().iter().next().unwrap();
        assert!(loop_edge.is_loop());
        assert!(comp.g.classify().is_embedding());
        let po = pushout(&comp.span(&be).unwrap()).unwrap();
        assert!(iso_check(&po.graph, be.host()).unwrap().is_some());
    }

    #[test]
    fn complement_rejects_foreign_solution() {
        let be = loop_on_circle();
        let mut sol = solve_re_pairing(&be).unwrap();
        sol.pairing = sol.pairing.with_red(BTreeSet::new()).unwrap();
        assert!(matches!(
            pushout_complement(&be, &sol),
            Err(DpoError::Boundary(BoundaryError::SolutionMismatch(_)))
        ));
    }

    #[test]
    fn deleting_an_isolated_vertex() {
        let b = BoundaryGraph::from_polarities("d", "db", []).unwrap();
        let l = Arc::new(Graph::builder().vertices(["x", "u"]).build().unwrap());
        let r = Arc::new(Graph::builder().vertex("x").build().unwrap());
        let host = Arc::new(Graph::builder().vertices(["h1", "h2"]).build().unwrap());
        let rule = RewriteRule::new(
            b.clone(),
            gm(b.graph(), &l, &[("d", "x")], &[]),
            gm(b.graph(), &r, &[("d", "x")], &[]),
        )
        .unwrap();
        let m = gm(&l, &host, &[("u", "h1")], &[]);
        let trace = rewrite(&rule, &m, None).unwrap();
        let h = trace.result_graph();
        assert_eq!(h.vertices().len(), 1);
        assert_eq!(h.vertices().iter().next().unwrap().as_str(), "C:h2");
        assert!(matches!(
            rewrite(&rule, &m, Some(1)),
            Err(DpoError::SolutionIndexOutOfRange { index: 1, count: 1 })
        ));
    }

    #[test]
    fn rule_legs_must_keep_boundary() {
        let b = BoundaryGraph::from_polarities("d", "db", []).unwrap();
        let l = Arc::new(Graph::builder().vertex("x").build().unwrap());
        let bad = gm(b.graph(), &l, &[("db", "x")], &[]);
        let good = gm(b.graph(), &l, &[("d", "x")], &[]);
        assert!(RewriteRule::new(b.clone(), good.clone(), good.clone()).is_ok());
        assert!(matches!(
            RewriteRule::new(b, good, bad),
            Err(DpoError::RuleInvariantViolated(_))
        ));
    }
}
