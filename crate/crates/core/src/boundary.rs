//! Boundary graphs, partitioning spans, boundary embeddings and the
//! re-pairing problem.
//!
//! A boundary graph has two vertices, the boundary `∂` and the dual boundary
//! `∂̄`, and only edges running between them. Its edges are the nodes of a
//! pairing graph; a node is positive when its edge leaves `∂`. Blue pairing
//! edges record boundary edges that the left leg merges into a self-loop,
//! red ones those merged by the right leg.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use itertools::Itertools;
use thiserror::Error;

use crate::graph::{ArcId, EdgeId, Graph, VertexId};
use crate::morphism::GraphMorphism;

/// Default bound on how many re-pairing solutions we are willing to list.
pub const DEFAULT_SOLUTION_CAP: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundaryError {
    #[error("not a boundary graph: {0}")]
    NotABoundaryGraph(String),
    #[error("partitioning span invariant violated: {}", .0.join("; "))]
    SpanInvariantViolated(Vec<String>),
    #[error("boundary embedding invariant violated: {}", .0.join("; "))]
    BoundaryEmbeddingInvariantViolated(Vec<String>),
    #[error("pairing graph is malformed: {0}")]
    MalformedPairing(String),
    #[error("solution does not solve this re-pairing problem: {0}")]
    SolutionMismatch(String),
    #[error("{count} re-pairing solutions exceed the limit of {cap}")]
    CombinatorialLimitExceeded { count: u128, cap: usize },
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Polarity {
    Positive,
    Negative,
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Polarity::Positive => "+",
            Polarity::Negative => "-",
        })
    }
}

/// A two-vertex graph with edges only between `∂` and `∂̄`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BoundaryGraph {
    graph: Arc<Graph>,
    boundary: VertexId,
    dual_boundary: VertexId,
}

impl BoundaryGraph {
    pub fn new(
        graph: Arc<Graph>,
        boundary: VertexId,
        dual_boundary: VertexId,
    ) -> Result<Self, BoundaryError> {
        let expected = BTreeSet::from([boundary.clone(), dual_boundary.clone()]);
        if boundary == dual_boundary || graph.vertices() != &expected {
            return Err(BoundaryError::NotABoundaryGraph(format!(
                "expected exactly the vertices `{boundary}` and `{dual_boundary}`"
            )));
        }
        if let Some((e, _)) = graph.edges().iter().find(|(_, e)| e.is_loop()) {
            return Err(BoundaryError::NotABoundaryGraph(format!(
                "edge `{e}` is a self-loop"
            )));
        }
        if let Some(o) = graph.circles().iter().next() {
            return Err(BoundaryError::NotABoundaryGraph(format!(
                "circle `{o}` present"
            )));
        }
        Ok(BoundaryGraph {
            graph,
            boundary,
            dual_boundary,
        })
    }

    /// Builds a boundary graph from polarities: each positive edge runs
    /// `∂ -> ∂̄`, each negative one `∂̄ -> ∂`.
    pub fn from_polarities<'a>(
        boundary: &str,
        dual_boundary: &str,
        edges: impl IntoIterator<Item = (&'a str, Polarity)>,
    ) -> Result<Self, BoundaryError> {
        let mut b = Graph::builder().vertex(boundary).vertex(dual_boundary);
        for (e, p) in edges {
            b = match p {
                Polarity::Positive => b.edge(e, boundary, dual_boundary),
                Polarity::Negative => b.edge(e, dual_boundary, boundary),
            };
        }
        let g = b
            .build()
            .map_err(|e| BoundaryError::NotABoundaryGraph(e.to_string()))?;
        BoundaryGraph::new(Arc::new(g), boundary.into(), dual_boundary.into())
    }

    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn boundary(&self) -> &VertexId {
        &self.boundary
    }

    pub fn dual_boundary(&self) -> &VertexId {
        &self.dual_boundary
    }

    pub fn edges(&self) -> impl Iterator<Item = &EdgeId> {
        self.graph.edges().keys()
    }

    /// Positive iff the edge leaves `∂`. `None` for unknown edges.
    pub fn polarity(&self, e: &EdgeId) -> Option<Polarity> {
        self.graph.edge(e).map(|edge| {
            if edge.source == self.boundary {
                Polarity::Positive
            } else {
                Polarity::Negative
            }
        })
    }
}

pub(crate) fn leg_conditions(
    name: &str,
    boundary: &BoundaryGraph,
    leg: &GraphMorphism,
    defined: &VertexId,
    undefined: &VertexId,
    errors: &mut Vec<String>,
) {
    if **leg.dom() != **boundary.graph() {
        errors.push(format!("{name}: domain is not the boundary graph"));
        return;
    }
    let class = leg.classify();
    if !class.is_embedding() {
        let mut why = leg.morphism_violations();
        why.extend(leg.embedding_violations());
        errors.push(format!(
            "{name}: not an embedding ({})",
            why.iter().map(ToString::to_string).join(", ")
        ));
    }
    if leg.vertex(defined).is_none() {
        errors.push(format!("{name}: undefined on `{defined}`"));
    }
    if leg.vertex(undefined).is_some() {
        errors.push(format!("{name}: defined on `{undefined}`"));
    }
}

/// `L <- B -> C`: the left leg keeps `∂`, the right leg keeps `∂̄`, both are
/// embeddings.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PartitioningSpan {
    boundary: BoundaryGraph,
    left: GraphMorphism,
    right: GraphMorphism,
}

impl PartitioningSpan {
    pub fn new(
        boundary: BoundaryGraph,
        left: GraphMorphism,
        right: GraphMorphism,
    ) -> Result<Self, BoundaryError> {
        let mut errors = Vec::new();
        let (d, db) = (
            boundary.boundary().clone(),
            boundary.dual_boundary().clone(),
        );
        leg_conditions("left leg", &boundary, &left, &d, &db, &mut errors);
        leg_conditions("right leg", &boundary, &right, &db, &d, &mut errors);
        if !errors.is_empty() {
            return Err(BoundaryError::SpanInvariantViolated(errors));
        }
        Ok(PartitioningSpan {
            boundary,
            left,
            right,
        })
    }

    pub fn boundary(&self) -> &BoundaryGraph {
        &self.boundary
    }

    pub fn left(&self) -> &GraphMorphism {
        &self.left
    }

    pub fn right(&self) -> &GraphMorphism {
        &self.right
    }

    pub fn left_graph(&self) -> &Arc<Graph> {
        self.left.cod()
    }

    pub fn right_graph(&self) -> &Arc<Graph> {
        self.right.cod()
    }

    /// Image of `∂` in the left graph.
    pub fn left_boundary(&self) -> &VertexId {
        self.left
            .vertex(self.boundary.boundary())
            .expect("checked at construction")
    }

    /// Image of `∂̄` in the right graph.
    pub fn right_boundary(&self) -> &VertexId {
        self.right
            .vertex(self.boundary.dual_boundary())
            .expect("checked at construction")
    }
}

/// Connected, except that an isolated boundary vertex may sit beside the rest.
pub fn connected_around(g: &Graph, boundary: &VertexId) -> bool {
    let components = g.connected_components();
    match components.len() {
        0 | 1 => true,
        2 => components
            .iter()
            .any(|c| c.arcs.is_empty() && c.vertices.len() == 1 && c.vertices.contains(boundary)),
        _ => false,
    }
}

/// `B -l-> L -m-> G`: the data a pushout complement is computed from.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BoundaryEmbedding {
    boundary: BoundaryGraph,
    leg: GraphMorphism,
    matching: GraphMorphism,
}

impl BoundaryEmbedding {
    /// Checks, besides the defining conditions, two that the complement
    /// construction relies on: `m` is defined on every vertex of `L` other
    /// than the image of `∂`, and no arc of `G` is hit both by a boundary
    /// edge and by an arc of `L` outside the image of `l`.
    pub fn new(
        boundary: BoundaryGraph,
        leg: GraphMorphism,
        matching: GraphMorphism,
    ) -> Result<Self, BoundaryError> {
        let mut errors = Vec::new();
        let (d, db) = (
            boundary.boundary().clone(),
            boundary.dual_boundary().clone(),
        );
        leg_conditions("boundary leg", &boundary, &leg, &d, &db, &mut errors);
        if !errors.is_empty() {
            return Err(BoundaryError::BoundaryEmbeddingInvariantViolated(errors));
        }
        let pattern = leg.cod();
        let anchor = leg.vertex(&d).expect("checked above").clone();
        if **matching.dom() != **pattern {
            errors.push("match: domain is not the pattern graph".into());
            return Err(BoundaryError::BoundaryEmbeddingInvariantViolated(errors));
        }
        if !connected_around(pattern, &anchor) {
            errors.push("pattern graph is not connected".into());
        }
        let class = matching.classify();
        if !class.is_embedding() {
            let mut why = matching.morphism_violations();
            why.extend(matching.embedding_violations());
            errors.push(format!(
                "match: not an embedding ({})",
                why.iter().map(ToString::to_string).join(", ")
            ));
        }
        if matching.vertex(&anchor).is_some() {
            errors.push(format!("match: defined on boundary image `{anchor}`"));
        }
        for v in pattern.vertices() {
            if v != &anchor && matching.vertex(v).is_none() {
                errors.push(format!("match: undefined on interior vertex `{v}`"));
            }
        }
        let boundary_arcs: BTreeSet<ArcId> = leg.arc_map().values().cloned().collect();
        let through_boundary: BTreeSet<&ArcId> = boundary_arcs
            .iter()
            .filter_map(|a| matching.arc(a))
            .collect();
        for a in pattern.arcs() {
            if boundary_arcs.contains(&a) {
                continue;
            }
            if let Some(image) = matching.arc(&a) {
                if through_boundary.contains(image) {
                    errors.push(format!(
                        "match: interior arc `{a}` shares its image `{image}` with a boundary edge"
                    ));
                }
            }
        }
        if !errors.is_empty() {
            return Err(BoundaryError::BoundaryEmbeddingInvariantViolated(errors));
        }
        Ok(BoundaryEmbedding {
            boundary,
            leg,
            matching,
        })
    }

    pub fn boundary(&self) -> &BoundaryGraph {
        &self.boundary
    }

    pub fn leg(&self) -> &GraphMorphism {
        &self.leg
    }

    pub fn matching(&self) -> &GraphMorphism {
        &self.matching
    }

    pub fn pattern(&self) -> &Arc<Graph> {
        self.leg.cod()
    }

    pub fn host(&self) -> &Arc<Graph> {
        self.matching.cod()
    }

    pub fn pattern_boundary(&self) -> &VertexId {
        self.leg
            .vertex(self.boundary.boundary())
            .expect("checked at construction")
    }

    /// `m_A(l_A(e))` for a boundary edge.
    pub fn host_arc(&self, e: &EdgeId) -> &ArcId {
        let in_pattern = self.leg.arc(&ArcId::Edge(e.clone())).expect("leg is total");
        self.matching.arc(in_pattern).expect("match is total")
    }
}

/// Polarised nodes (the boundary edges) with blue and red matchings.
/// Blue edges run positive to negative, red edges negative to positive.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct PairingGraph {
    nodes: BTreeMap<EdgeId, Polarity>,
    blue: BTreeSet<(EdgeId, EdgeId)>,
    red: BTreeSet<(EdgeId, EdgeId)>,
}

/// A connected component, nodes listed along the direction of its edges.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PairingComponent {
    pub nodes: Vec<EdgeId>,
    pub cycle: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Colour {
    Blue,
    Red,
}

impl PairingGraph {
    /// Validates polarity directions and the one-edge-per-colour rule.
    pub fn new(
        nodes: BTreeMap<EdgeId, Polarity>,
        blue: BTreeSet<(EdgeId, EdgeId)>,
        red: BTreeSet<(EdgeId, EdgeId)>,
    ) -> Result<Self, BoundaryError> {
        let check = |edges: &BTreeSet<(EdgeId, EdgeId)>,
                     from: Polarity,
                     colour: &str|
         -> Result<(), BoundaryError> {
            let mut used = BTreeSet::new();
            for (a, b) in edges {
                if nodes.get(a) != Some(&from) || nodes.get(b) != Some(&opposite(from)) {
                    return Err(BoundaryError::MalformedPairing(format!(
                        "{colour} edge {a} -> {b} does not run {from} to {}",
                        opposite(from)
                    )));
                }
                for n in [a, b] {
                    if !used.insert(n) {
                        return Err(BoundaryError::MalformedPairing(format!(
                            "node {n} has two {colour} edges"
                        )));
                    }
                }
            }
            Ok(())
        };
        check(&blue, Polarity::Positive, "blue")?;
        check(&red, Polarity::Negative, "red")?;
        Ok(PairingGraph { nodes, blue, red })
    }

    pub fn nodes(&self) -> &BTreeMap<EdgeId, Polarity> {
        &self.nodes
    }

    pub fn blue(&self) -> &BTreeSet<(EdgeId, EdgeId)> {
        &self.blue
    }

    pub fn red(&self) -> &BTreeSet<(EdgeId, EdgeId)> {
        &self.red
    }

    pub fn polarity(&self, e: &EdgeId) -> Option<Polarity> {
        self.nodes.get(e).copied()
    }

    fn partner<'a>(set: &'a BTreeSet<(EdgeId, EdgeId)>, e: &EdgeId) -> Option<&'a EdgeId> {
        set.iter().find_map(|(a, b)| {
            if a == e {
                Some(b)
            } else if b == e {
                Some(a)
            } else {
                None
            }
        })
    }

    pub fn blue_partner(&self, e: &EdgeId) -> Option<&EdgeId> {
        Self::partner(&self.blue, e)
    }

    pub fn red_partner(&self, e: &EdgeId) -> Option<&EdgeId> {
        Self::partner(&self.red, e)
    }

    /// The same nodes and blue edges with a different red half.
    pub fn with_red(&self, red: BTreeSet<(EdgeId, EdgeId)>) -> Result<Self, BoundaryError> {
        PairingGraph::new(self.nodes.clone(), self.blue.clone(), red)
    }

    /// Only the blue edges.
    pub fn blue_half(&self) -> PairingGraph {
        PairingGraph {
            nodes: self.nodes.clone(),
            blue: self.blue.clone(),
            red: BTreeSet::new(),
        }
    }

    /// Components ordered by least node; paths start at their node without an
    /// incoming edge, cycles at their least positive node.
    pub fn components(&self) -> Vec<PairingComponent> {
        let next = |e: &EdgeId| -> Option<EdgeId> {
            match self.nodes[e] {
                Polarity::Positive => self
                    .blue
                    .iter()
                    .find(|(a, _)| a == e)
                    .map(|(_, b)| b.clone()),
                Polarity::Negative => self
                    .red
                    .iter()
                    .find(|(a, _)| a == e)
                    .map(|(_, b)| b.clone()),
            }
        };
        let has_incoming = |e: &EdgeId| -> bool {
            match self.nodes[e] {
                Polarity::Positive => self.red.iter().any(|(_, b)| b == e),
                Polarity::Negative => self.blue.iter().any(|(_, b)| b == e),
            }
        };
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for start in self.nodes.keys() {
            if seen.contains(start) || has_incoming(start) {
                continue;
            }
            let mut nodes = vec![start.clone()];
            seen.insert(start.clone());
            let mut cur = start.clone();
            while let Some(n) = next(&cur) {
                seen.insert(n.clone());
                nodes.push(n.clone());
                cur = n;
            }
            out.push(PairingComponent {
                nodes,
                cycle: false,
            });
        }
        // whatever remains lies on a cycle
        for start in self.nodes.keys() {
            if seen.contains(start) || self.nodes[start] != Polarity::Positive {
                continue;
            }
            let mut nodes = vec![start.clone()];
            seen.insert(start.clone());
            let mut cur = start.clone();
            while let Some(n) = next(&cur) {
                if &n == start {
                    break;
                }
                seen.insert(n.clone());
                nodes.push(n.clone());
                cur = n;
            }
            out.push(PairingComponent { nodes, cycle: true });
        }
        out.sort_by(|a, b| a.nodes.iter().min().cmp(&b.nodes.iter().min()));
        out
    }

    /// Whether edges of one colour cross when the nodes are laid out on a
    /// circle in `order`. Nodes missing from `order` are ignored.
    pub fn crossings(&self, colour: Colour, order: &[EdgeId]) -> bool {
        let pos: BTreeMap<&EdgeId, usize> = order.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let set = match colour {
            Colour::Blue => &self.blue,
            Colour::Red => &self.red,
        };
        let chords: Vec<(usize, usize)> = set
            .iter()
            .filter_map(|(a, b)| {
                let (x, y) = (*pos.get(a)?, *pos.get(b)?);
                Some((x.min(y), x.max(y)))
            })
            .collect();
        chords
            .iter()
            .tuple_combinations()
            .any(|(&(a, b), &(c, d))| (a < c && c < b && b < d) || (c < a && a < d && d < b))
    }
}

fn opposite(p: Polarity) -> Polarity {
    match p {
        Polarity::Positive => Polarity::Negative,
        Polarity::Negative => Polarity::Positive,
    }
}

fn boundary_nodes(boundary: &BoundaryGraph) -> BTreeMap<EdgeId, Polarity> {
    boundary
        .edges()
        .map(|e| (e.clone(), boundary.polarity(e).expect("own edge")))
        .collect()
}

/// Pairs of boundary edges identified by `leg`, directed `from -> to`
/// polarity.
fn identified_pairs(
    boundary: &BoundaryGraph,
    leg: &GraphMorphism,
    from: Polarity,
) -> Result<BTreeSet<(EdgeId, EdgeId)>, BoundaryError> {
    let mut by_image: BTreeMap<&ArcId, Vec<EdgeId>> = BTreeMap::new();
    for e in boundary.edges() {
        let image = leg
            .arc(&ArcId::Edge(e.clone()))
            .ok_or_else(|| BoundaryError::MalformedPairing(format!("leg undefined on `{e}`")))?;
        by_image.entry(image).or_default().push(e.clone());
    }
    let mut out = BTreeSet::new();
    for (image, group) in by_image {
        match group.as_slice() {
            [_] => {}
            [a, b] => {
                let (pa, pb) = (boundary.polarity(a), boundary.polarity(b));
                if pa == pb {
                    return Err(BoundaryError::MalformedPairing(format!(
                        "`{a}` and `{b}` share polarity but both map to `{image}`"
                    )));
                }
                if pa == Some(from) {
                    out.insert((a.clone(), b.clone()));
                } else {
                    out.insert((b.clone(), a.clone()));
                }
            }
            _ => {
                return Err(BoundaryError::MalformedPairing(format!(
                    "{} boundary edges map to `{image}`",
                    group.len()
                )))
            }
        }
    }
    Ok(out)
}

/// Blue edges from the left leg, red edges from the right leg.
pub fn pairing_graph(span: &PartitioningSpan) -> Result<PairingGraph, BoundaryError> {
    let b = span.boundary();
    let blue = identified_pairs(b, span.left(), Polarity::Positive)
        .map_err(|e| BoundaryError::SpanInvariantViolated(vec![e.to_string()]))?;
    let red = identified_pairs(b, span.right(), Polarity::Negative)
        .map_err(|e| BoundaryError::SpanInvariantViolated(vec![e.to_string()]))?;
    PairingGraph::new(boundary_nodes(b), blue, red)
}

/// The half pairing graph a boundary embedding determines: blue edges only.
pub fn blue_half(be: &BoundaryEmbedding) -> Result<PairingGraph, BoundaryError> {
    let b = be.boundary();
    let blue = identified_pairs(b, be.leg(), Polarity::Positive)
        .map_err(|e| BoundaryError::BoundaryEmbeddingInvariantViolated(vec![e.to_string()]))?;
    PairingGraph::new(boundary_nodes(b), blue, BTreeSet::new())
}

/// The boundary edges landing on one arc of the host, sorted into the pieces
/// a solution has to chain together.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ArcClass {
    pub arc: ArcId,
    /// Blue pairs `(positive, negative)`, ordered by positive node.
    pub pairs: Vec<(EdgeId, EdgeId)>,
    /// Negative node without a blue edge: the host arc's source lies inside
    /// the matched region.
    pub head: Option<EdgeId>,
    /// Positive node without a blue edge: the arc's target lies inside.
    pub tail: Option<EdgeId>,
}

impl ArcClass {
    pub fn is_circle(&self) -> bool {
        self.arc.is_circle()
    }

    pub fn nodes(&self) -> impl Iterator<Item = &EdgeId> {
        self.head
            .iter()
            .chain(self.pairs.iter().flat_map(|(p, n)| [p, n]))
            .chain(self.tail.iter())
    }

    /// Red edges chaining the pairs in the given order.
    pub fn chain(&self, order: &[usize]) -> Vec<(EdgeId, EdgeId)> {
        let mut red = Vec::new();
        let mut last: Option<&EdgeId> = self.head.as_ref();
        for &i in order {
            let (p, n) = &self.pairs[i];
            if let Some(prev) = last {
                red.push((prev.clone(), p.clone()));
            }
            last = Some(n);
        }
        if self.is_circle() {
            if let (Some(prev), Some(&first)) = (last, order.first()) {
                red.push((prev.clone(), self.pairs[first].0.clone()));
            }
        } else if let (Some(prev), Some(t)) = (last, self.tail.as_ref()) {
            red.push((prev.clone(), t.clone()));
        }
        red
    }

    /// How many red completions this class admits.
    pub fn solution_count(&self) -> u128 {
        let n = self.pairs.len() as u128;
        let k = if self.is_circle() {
            n.saturating_sub(1)
        } else {
            n
        };
        (1..=k).product()
    }
}

/// The classes `k(a) = (m_A ∘ l_A)^{-1}(a)` of all host arcs with a
/// non-empty preimage, in arc order.
pub fn arc_classes(be: &BoundaryEmbedding) -> Result<Vec<ArcClass>, BoundaryError> {
    let half = blue_half(be)?;
    let mut by_arc: BTreeMap<ArcId, Vec<EdgeId>> = BTreeMap::new();
    for e in be.boundary().edges() {
        by_arc
            .entry(be.host_arc(e).clone())
            .or_default()
            .push(e.clone());
    }
    let bad = |msg: String| BoundaryError::BoundaryEmbeddingInvariantViolated(vec![msg]);
    let mut out = Vec::new();
    for (arc, members) in by_arc {
        let mut pairs = Vec::new();
        let (mut head, mut tail) = (None, None);
        for e in &members {
            match (
                half.polarity(e).expect("boundary node"),
                half.blue_partner(e),
            ) {
                (Polarity::Positive, Some(n)) => pairs.push((e.clone(), n.clone())),
                (Polarity::Negative, Some(_)) => {}
                (pol, None) => {
                    let slot = if pol == Polarity::Negative {
                        &mut head
                    } else {
                        &mut tail
                    };
                    if slot.replace(e.clone()).is_some() {
                        return Err(bad(format!(
                            "two unpaired {pol} boundary edges land on `{arc}`"
                        )));
                    }
                }
            }
        }
        if arc.is_circle() && (head.is_some() || tail.is_some()) {
            return Err(bad(format!(
                "circle `{arc}` reached by an unpaired boundary edge"
            )));
        }
        out.push(ArcClass {
            arc,
            pairs,
            head,
            tail,
        });
    }
    Ok(out)
}

/// A completed pairing graph: the blue half of a boundary embedding plus a
/// chosen red half.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RePairingSolution {
    pub pairing: PairingGraph,
}

impl RePairingSolution {
    pub fn red(&self) -> &BTreeSet<(EdgeId, EdgeId)> {
        self.pairing.red()
    }
}

/// The canonical solution: in each class, start from the pair with least
/// positive node, follow its blue edge, then join the negative end to the
/// least positive node not yet used; close the loop for circles, end at the
/// unpaired nodes for edges.
pub fn solve_re_pairing(be: &BoundaryEmbedding) -> Result<RePairingSolution, BoundaryError> {
    let half = blue_half(be)?;
    let mut red = BTreeSet::new();
    for class in arc_classes(be)? {
        let mut remaining: BTreeSet<&EdgeId> = class.pairs.iter().map(|(p, _)| p).collect();
        let mut current: Option<EdgeId> = class.head.clone();
        let mut first: Option<EdgeId> = None;
        while let Some(&p) = remaining.iter().next() {
            remaining.remove(p);
            if let Some(n) = current.take() {
                red.insert((n, p.clone()));
            }
            first.get_or_insert_with(|| p.clone());
            current = half.blue_partner(p).cloned();
        }
        match (current, class.is_circle()) {
            (Some(n), true) => {
                red.insert((n, first.expect("circle class is non-empty")));
            }
            (Some(n), false) => {
                if let Some(t) = &class.tail {
                    red.insert((n, t.clone()));
                }
            }
            (None, _) => {}
        }
    }
    Ok(RePairingSolution {
        pairing: half.with_red(red)?,
    })
}

/// Every solution, deduplicated, in a fixed order: classes in arc order,
/// each class's pair orders in lexicographic order, the first class varying
/// slowest. The first entry equals [`solve_re_pairing`].
pub fn enumerate_re_pairings(
    be: &BoundaryEmbedding,
    cap: usize,
) -> Result<Vec<RePairingSolution>, BoundaryError> {
    let half = blue_half(be)?;
    let classes = arc_classes(be)?;
    let count = classes
        .iter()
        .map(ArcClass::solution_count)
        .fold(1u128, |acc, c| acc.saturating_mul(c));
    if count > cap as u128 {
        return Err(BoundaryError::CombinatorialLimitExceeded { count, cap });
    }
    let per_class: Vec<Vec<Vec<(EdgeId, EdgeId)>>> = classes
        .iter()
        .map(|class| {
            let n = class.pairs.len();
            if class.is_circle() {
                if n == 0 {
                    return vec![Vec::new()];
                }
                (1..n)
                    .permutations(n - 1)
                    .map(|rest| {
                        let mut order = vec![0];
                        order.extend(rest);
                        class.chain(&order)
                    })
                    .collect()
            } else {
                (0..n)
                    .permutations(n)
                    .map(|order| class.chain(&order))
                    .collect()
            }
        })
        .collect();
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for choice in per_class.iter().multi_cartesian_product() {
        let red: BTreeSet<(EdgeId, EdgeId)> = choice.into_iter().flatten().cloned().collect();
        if seen.insert(red.clone()) {
            out.push(RePairingSolution {
                pairing: half.with_red(red)?,
            });
        }
    }
    if out.is_empty() {
        out.push(RePairingSolution { pairing: half });
    }
    Ok(out)
}

/// Checks that `solution` completes the blue half of `be` so that each
/// component is exactly one class, cycles for circles and paths ending at
/// the class's unpaired nodes for edges.
pub fn check_solution(
    be: &BoundaryEmbedding,
    solution: &RePairingSolution,
) -> Result<(), BoundaryError> {
    let mismatch = |m: String| BoundaryError::SolutionMismatch(m);
    let half = blue_half(be)?;
    if solution.pairing.blue_half() != half {
        return Err(mismatch(
            "blue half differs from the boundary embedding".into(),
        ));
    }
    let classes = arc_classes(be)?;
    let mut class_of: BTreeMap<&EdgeId, usize> = BTreeMap::new();
    for (i, class) in classes.iter().enumerate() {
        for n in class.nodes() {
            class_of.insert(n, i);
        }
    }
    let components = solution.pairing.components();
    if components.len() != classes.len() {
        return Err(mismatch(format!(
            "{} components for {} host arcs",
            components.len(),
            classes.len()
        )));
    }
    for comp in &components {
        let i = class_of[&comp.nodes[0]];
        let class = &classes[i];
        if comp.nodes.iter().any(|n| class_of[n] != i) || comp.nodes.len() != class.nodes().count()
        {
            return Err(mismatch(format!(
                "component does not match the class of `{}`",
                class.arc
            )));
        }
        if comp.cycle != class.is_circle() {
            return Err(mismatch(format!(
                "class of `{}` must form a {}",
                class.arc,
                if class.is_circle() { "cycle" } else { "path" }
            )));
        }
        if !comp.cycle {
            let ends_ok = class
                .head
                .as_ref()
                .is_none_or(|h| comp.nodes.first() == Some(h))
                && class
                    .tail
                    .as_ref()
                    .is_none_or(|t| comp.nodes.last() == Some(t));
            if !ends_ok {
                return Err(mismatch(format!(
                    "path for `{}` does not end at its unpaired nodes",
                    class.arc
                )));
            }
        }
    }
    Ok(())
}
