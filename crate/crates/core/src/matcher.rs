//! Finding matches of a rule's left-hand side in a host graph.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::Arc;

use thiserror::Error;

use crate::boundary::{connected_around, BoundaryEmbedding, BoundaryError};
use crate::dpo::RewriteRule;
use crate::graph::{ArcId, End, Flag, Graph, VertexId};
use crate::morphism::GraphMorphism;
use crate::rotation::{check_rot_morphism, RotationSystem};

pub const DEFAULT_MATCH_LIMIT: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchError {
    #[error("the left-hand side is not connected")]
    LNotConnected,
    #[error("more than {0} matches")]
    MatchLimitExceeded(usize),
    #[error("rotation system does not belong to the {0}")]
    RotationMismatch(&'static str),
}

#[derive(Clone, Debug)]
pub struct MatchOptions {
    pub max_matches: usize,
    /// Rotations of the left-hand side and of the host; when given, only
    /// rotation-preserving matches are kept.
    pub rotations: Option<(RotationSystem, RotationSystem)>,
}

impl Default for MatchOptions {
    fn default() -> Self {
        MatchOptions {
            max_matches: DEFAULT_MATCH_LIMIT,
            rotations: None,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Match {
    pub embedding: BoundaryEmbedding,
}

impl Match {
    pub fn morphism(&self) -> &GraphMorphism {
        self.embedding.matching()
    }
}

/// Validates a proposed match, returning the boundary embedding it forms
/// or the list of conditions it breaks.
pub fn check_match(
    rule: &RewriteRule,
    m: &GraphMorphism,
) -> Result<BoundaryEmbedding, Vec<String>> {
    BoundaryEmbedding::new(rule.boundary().clone(), rule.lhs_leg().clone(), m.clone()).map_err(
        |e| match e {
            BoundaryError::BoundaryEmbeddingInvariantViolated(v) => v,
            other => vec![other.to_string()],
        },
    )
}

struct Search<'a> {
    lhs: &'a Graph,
    host: &'a Arc<Graph>,
    order: Vec<VertexId>,
    arcs: Vec<ArcId>,
    /// Loops at the boundary image go last: they only need a free host arc.
    boundary_loops: Vec<ArcId>,
    anchor: VertexId,
    results: Vec<GraphMorphism>,
}

/// Every match of `rule`'s left-hand side in `host`, in search order.
pub fn find_matches(
    rule: &RewriteRule,
    host: &Arc<Graph>,
    options: &MatchOptions,
) -> Result<Vec<Match>, MatchError> {
    let lhs = rule.lhs();
    let anchor = rule
        .lhs_leg()
        .vertex(rule.boundary().boundary())
        .expect("rule legs keep the boundary")
        .clone();
    if !connected_around(lhs, &anchor) {
        return Err(MatchError::LNotConnected);
    }
    if let Some((rot_l, rot_h)) = &options.rotations {
        if **rot_l.graph() != **lhs {
            return Err(MatchError::RotationMismatch("left-hand side"));
        }
        if **rot_h.graph() != **host {
            return Err(MatchError::RotationMismatch("host"));
        }
    }
    let interior: Vec<&VertexId> = lhs.vertices().iter().filter(|v| **v != anchor).collect();
    if interior.is_empty() && lhs.arc_count() == 0 {
        return Ok(Vec::new());
    }

    let is_boundary_loop = |a: &ArcId| {
        a.as_edge()
            .and_then(|e| lhs.edge(e))
            .is_some_and(|e| e.source == anchor && e.target == anchor)
    };
    let mut arcs: Vec<ArcId> = Vec::new();
    let mut boundary_loops = Vec::new();
    for a in lhs.arcs() {
        if is_boundary_loop(&a) {
            boundary_loops.push(a);
        } else {
            arcs.push(a);
        }
    }
    let mut search = Search {
        lhs,
        host,
        order: vertex_order(lhs, &interior),
        arcs,
        boundary_loops,
        anchor,
        results: Vec::new(),
    };
    let mut vmap = BTreeMap::new();
    search.assign_vertex(0, &mut vmap, options.max_matches)?;

    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for m in std::mem::take(&mut search.results) {
        if !seen.insert((m.vertex_map().clone(), m.arc_map().clone())) {
            continue;
        }
        if let Some((rot_l, rot_h)) = &options.rotations {
            if !check_rot_morphism(&m, rot_l, rot_h) {
                continue;
            }
        }
        if let Ok(embedding) = check_match(rule, &m) {
            out.push(Match { embedding });
        }
    }
    Ok(out)
}

/// Lowest-id vertex of maximal degree first, then breadth-first.
fn vertex_order(lhs: &Graph, interior: &[&VertexId]) -> Vec<VertexId> {
    let interior: BTreeSet<&VertexId> = interior.iter().copied().collect();
    let mut order = Vec::new();
    let mut placed: BTreeSet<&VertexId> = BTreeSet::new();
    while placed.len() < interior.len() {
        let root = interior
            .iter()
            .filter(|v| !placed.contains(*v))
            .max_by_key(|v| (lhs.degree_unchecked(v), std::cmp::Reverse(**v)))
            .expect("unplaced vertex exists");
        let mut queue = VecDeque::from([*root]);
        placed.insert(root);
        while let Some(v) = queue.pop_front() {
            order.push(v.clone());
            for e in lhs.edges().values() {
                for (a, b) in [(&e.source, &e.target), (&e.target, &e.source)] {
                    if a == v && interior.contains(b) && placed.insert(b) {
                        queue.push_back(b);
                    }
                }
            }
        }
    }
    order
}

impl Search<'_> {
    fn assign_vertex(
        &mut self,
        depth: usize,
        vmap: &mut BTreeMap<VertexId, VertexId>,
        limit: usize,
    ) -> Result<(), MatchError> {
        if depth == self.order.len() {
            let mut amap = BTreeMap::new();
            let mut used = BTreeSet::new();
            let mut taken = BTreeSet::new();
            return self.assign_arc(0, vmap, &mut amap, &mut used, &mut taken, limit);
        }
        let v = self.order[depth].clone();
        let degree = self.lhs.degree_unchecked(&v);
        let images: BTreeSet<VertexId> = vmap.values().cloned().collect();
        for w in self.host.vertices() {
            if images.contains(w) || self.host.degree_unchecked(w) != degree {
                continue;
            }
            let fits = vmap.iter().chain([(&v, w)]).all(|(u, x)| {
                self.lhs.multiplicity(u, &v) <= self.host.multiplicity(x, w)
                    && self.lhs.multiplicity(&v, u) <= self.host.multiplicity(w, x)
            });
            if !fits {
                continue;
            }
            vmap.insert(v.clone(), w.clone());
            self.assign_vertex(depth + 1, vmap, limit)?;
            vmap.remove(&v);
        }
        Ok(())
    }

    /// `used`: host flags already hit. `taken`: host arcs hit by interior
    /// edges or circles, which nothing else may share.
    fn assign_arc(
        &mut self,
        i: usize,
        vmap: &BTreeMap<VertexId, VertexId>,
        amap: &mut BTreeMap<ArcId, ArcId>,
        used: &mut BTreeSet<Flag>,
        taken: &mut BTreeSet<ArcId>,
        limit: usize,
    ) -> Result<(), MatchError> {
        if i == self.arcs.len() {
            return self.assign_loop(0, amap, taken, vmap, limit);
        }
        let a = self.arcs[i].clone();
        match &a {
            ArcId::Circle(_) => {
                for o in self.host.circles() {
                    let image = ArcId::Circle(o.clone());
                    if taken.contains(&image) || amap.values().any(|x| x == &image) {
                        continue;
                    }
                    taken.insert(image.clone());
                    amap.insert(a.clone(), image.clone());
                    self.assign_arc(i + 1, vmap, amap, used, taken, limit)?;
                    amap.remove(&a);
                    taken.remove(&image);
                }
            }
            ArcId::Edge(e) => {
                let edge = self.lhs.edge(e).expect("own edge").clone();
                let want = |end: End| -> Option<&VertexId> {
                    let v = edge.endpoint(end);
                    (v != &self.anchor).then(|| &vmap[v])
                };
                let (want_s, want_t) = (want(End::Source), want(End::Target));
                let interior = want_s.is_some() && want_t.is_some();
                for (h, he) in self.host.edges() {
                    if want_s.is_some_and(|s| s != &he.source)
                        || want_t.is_some_and(|t| t != &he.target)
                    {
                        continue;
                    }
                    let image = ArcId::Edge(h.clone());
                    if taken.contains(&image) || (interior && amap.values().any(|x| x == &image)) {
                        continue;
                    }
                    let mut flags = Vec::new();
                    if want_s.is_some() {
                        flags.push(Flag::source(h.clone()));
                    }
                    if want_t.is_some() {
                        flags.push(Flag::target(h.clone()));
                    }
                    if flags.iter().any(|f| used.contains(f)) {
                        continue;
                    }
                    for f in &flags {
                        used.insert(f.clone());
                    }
                    if interior {
                        taken.insert(image.clone());
                    }
                    amap.insert(a.clone(), image.clone());
                    self.assign_arc(i + 1, vmap, amap, used, taken, limit)?;
                    amap.remove(&a);
                    if interior {
                        taken.remove(&image);
                    }
                    for f in &flags {
                        used.remove(f);
                    }
                }
            }
        }
        Ok(())
    }

    fn assign_loop(
        &mut self,
        i: usize,
        amap: &mut BTreeMap<ArcId, ArcId>,
        taken: &BTreeSet<ArcId>,
        vmap: &BTreeMap<VertexId, VertexId>,
        limit: usize,
    ) -> Result<(), MatchError> {
        if i == self.boundary_loops.len() {
            if self.results.len() >= limit {
                return Err(MatchError::MatchLimitExceeded(limit));
            }
            self.results.push(GraphMorphism::new(
                Arc::new(self.lhs.clone()),
                self.host.clone(),
                vmap.clone(),
                amap.clone(),
            ));
            return Ok(());
        }
        let a = self.boundary_loops[i].clone();
        for image in self.host.arcs() {
            if taken.contains(&image) {
                continue;
            }
            amap.insert(a.clone(), image);
            self.assign_loop(i + 1, amap, taken, vmap, limit)?;
            amap.remove(&a);
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::{BoundaryGraph, Polarity};

    fn leg(b: &BoundaryGraph, l: &Arc<Graph>, v: &str, arcs: &[(&str, &str)]) -> GraphMorphism {
        GraphMorphism::new(
            b.graph().clone(),
            l.clone(),
            BTreeMap::from([("d".into(), v.into())]),
            arcs.iter()
                .map(|(x, y)| (ArcId::Edge((*x).into()), ArcId::Edge((*y).into())))
                .collect(),
        )
    }

    #[test]
    fn degenerate_rule_has_no_matches() {
        let b = BoundaryGraph::from_polarities("d", "db", []).unwrap();
        let l = Arc::new(Graph::builder().vertex("x").build().unwrap());
        let rule =
            RewriteRule::new(b.clone(), leg(&b, &l, "x", &[]), leg(&b, &l, "x", &[])).unwrap();
        let host = Arc::new(Graph::builder().vertices(["a", "b"]).build().unwrap());
        assert!(find_matches(&rule, &host, &MatchOptions::default())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn isolated_vertex_matches_each_isolated_host_vertex() {
        let b = BoundaryGraph::from_polarities("d", "db", []).unwrap();
        let l = Arc::new(Graph::builder().vertices(["x", "u"]).build().unwrap());
        let rule =
            RewriteRule::new(b.clone(), leg(&b, &l, "x", &[]), leg(&b, &l, "x", &[])).unwrap();
        let host = Arc::new(
            Graph::builder()
                .vertices(["a", "b", "c", "p", "q"])
                .edge("e", "p", "q")
                .build()
                .unwrap(),
        );
        let found = find_matches(&rule, &host, &MatchOptions::default()).unwrap();
        assert_eq!(found.len(), 3);
        let limited = MatchOptions {
            max_matches: 2,
            ..MatchOptions::default()
        };
        assert_eq!(
            find_matches(&rule, &host, &limited),
            Err(MatchError::MatchLimitExceeded(2))
        );
    }

    #[test]
    fn boundary_loop_matches_the_circle() {
        let b = BoundaryGraph::from_polarities(
            "d",
            "db",
            [("p", Polarity::Positive), ("n", Polarity::Negative)],
        )
        .unwrap();
        let l = Arc::new(
            Graph::builder()
                .vertex("x")
                .edge("lx", "x", "x")
                .build()
                .unwrap(),
        );
        let legl = leg(&b, &l, "x", &[("p", "lx"), ("n", "lx")]);
        let rule = RewriteRule::new(b, legl.clone(), legl).unwrap();
        let host = Arc::new(Graph::builder().circle("o").build().unwrap());
        let found = find_matches(&rule, &host, &MatchOptions::default()).unwrap();
        assert_eq!(found.len(), 1);
        assert_eq!(
            found[0].morphism().arc(&ArcId::Edge("lx".into())),
            Some(&ArcId::Circle("o".into()))
        );
    }

    #[test]
    fn disconnected_lhs_is_rejected() {
        let b = BoundaryGraph::from_polarities("d", "db", []).unwrap();
        let l = Arc::new(Graph::builder().vertices(["x", "u", "w"]).build().unwrap());
        let rule =
            RewriteRule::new(b.clone(), leg(&b, &l, "x", &[]), leg(&b, &l, "x", &[])).unwrap();
        let host = Arc::new(Graph::builder().vertices(["a", "b"]).build().unwrap());
        assert_eq!(
            find_matches(&rule, &host, &MatchOptions::default()),
            Err(MatchError::LNotConnected)
        );
    }
}
