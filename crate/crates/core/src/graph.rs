//! Directed graphs with circles.
//!
//! A [`Graph`] has vertices, edges with a total source and target, and
//! circles: closed arcs with no endpoints at all. Edges and circles share one
//! namespace (the arcs). Every collection is ordered by identifier, so all
//! iteration in this crate is deterministic.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

macro_rules! id_type {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name(Arc<str>);

        impl $name {
            pub fn new(name: impl AsRef<str>) -> Self {
                $name(Arc::from(name.as_ref()))
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl From<&str> for $name {
            fn from(s: &str) -> Self {
                $name::new(s)
            }
        }

        impl From<String> for $name {
            fn from(s: String) -> Self {
                $name(Arc::from(s))
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{:?}", &*self.0)
            }
        }

        impl Serialize for $name {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                s.serialize_str(&self.0)
            }
        }

        impl<'de> Deserialize<'de> for $name {
            fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
                String::deserialize(d).map($name::from)
            }
        }
    };
}

id_type!(
    /// Vertex identifier.
    VertexId
);
id_type!(
    /// Edge identifier.
    EdgeId
);
id_type!(
    /// Circle identifier.
    CircleId
);

/// An arc is either an edge or a circle.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum ArcId {
    Edge(EdgeId),
    Circle(CircleId),
}

impl ArcId {
    pub fn name(&self) -> &str {
        match self {
            ArcId::Edge(e) => e.as_str(),
            ArcId::Circle(o) => o.as_str(),
        }
    }

    pub fn as_edge(&self) -> Option<&EdgeId> {
        match self {
            ArcId::Edge(e) => Some(e),
            ArcId::Circle(_) => None,
        }
    }

    pub fn as_circle(&self) -> Option<&CircleId> {
        match self {
            ArcId::Circle(o) => Some(o),
            ArcId::Edge(_) => None,
        }
    }

    pub fn is_circle(&self) -> bool {
        matches!(self, ArcId::Circle(_))
    }
}

impl fmt::Display for ArcId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl From<EdgeId> for ArcId {
    fn from(e: EdgeId) -> Self {
        ArcId::Edge(e)
    }
}

impl From<CircleId> for ArcId {
    fn from(o: CircleId) -> Self {
        ArcId::Circle(o)
    }
}

/// Which end of an edge a flag sits on.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum End {
    Source,
    Target,
}

impl End {
    pub fn opposite(self) -> End {
        match self {
            End::Source => End::Target,
            End::Target => End::Source,
        }
    }

    fn suffix(self) -> &'static str {
        match self {
            End::Source => "src",
            End::Target => "tgt",
        }
    }
}

/// An incidence of an edge at a vertex. A self-loop has two distinct flags at
/// its vertex, told apart by their end.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Flag {
    pub edge: EdgeId,
    pub end: End,
}

impl Flag {
    pub fn new(edge: impl Into<EdgeId>, end: End) -> Self {
        Flag {
            edge: edge.into(),
            end,
        }
    }

    pub fn source(edge: impl Into<EdgeId>) -> Self {
        Flag::new(edge, End::Source)
    }

    pub fn target(edge: impl Into<EdgeId>) -> Self {
        Flag::new(edge, End::Target)
    }

    /// The flag at the other end of the same edge.
    pub fn opposite(&self) -> Flag {
        Flag {
            edge: self.edge.clone(),
            end: self.end.opposite(),
        }
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.edge, self.end.suffix())
    }
}

impl fmt::Debug for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("malformed flag `{0}`, expected `<edge>.src` or `<edge>.tgt`")]
pub struct FlagParseError(pub String);

impl FromStr for Flag {
    type Err = FlagParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (edge, end) = s
            .rsplit_once('.')
            .ok_or_else(|| FlagParseError(s.to_string()))?;
        let end = match end {
            "src" => End::Source,
            "tgt" => End::Target,
            _ => return Err(FlagParseError(s.to_string())),
        };
        if edge.is_empty() {
            return Err(FlagParseError(s.to_string()));
        }
        Ok(Flag::new(edge, end))
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Edge {
    pub source: VertexId,
    pub target: VertexId,
}

impl Edge {
    pub fn endpoint(&self, end: End) -> &VertexId {
        match end {
            End::Source => &self.source,
            End::Target => &self.target,
        }
    }

    pub fn is_loop(&self) -> bool {
        self.source == self.target
    }
}

/// Problems found while validating graph data.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphIssue {
    #[error("edge `{edge}` has {end:?} endpoint `{vertex}` which is not a vertex")]
    DanglingEndpoint {
        edge: EdgeId,
        end: End,
        vertex: VertexId,
    },
    #[error("identifier `{0}` is used more than once")]
    DuplicateId(String),
}

/// A list of issues; empty means valid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport<I> {
    pub issues: Vec<I>,
}

impl<I> ValidationReport<I> {
    pub fn ok() -> Self {
        ValidationReport { issues: Vec::new() }
    }

    pub fn is_ok(&self) -> bool {
        self.issues.is_empty()
    }
}

impl<I: fmt::Display> fmt::Display for ValidationReport<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.issues.is_empty() {
            return f.write_str("ok");
        }
        for (i, issue) in self.issues.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{issue}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("invalid graph: {0}")]
    Invalid(ValidationReport<GraphIssue>),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(VertexId),
}

/// Unchecked graph data, in insertion order. [`validate_graph`] checks it and
/// [`GraphBuilder::build`] turns it into a [`Graph`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GraphBuilder {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<(EdgeId, VertexId, VertexId)>,
    pub circles: Vec<CircleId>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(mut self, v: impl Into<VertexId>) -> Self {
        self.add_vertex(v);
        self
    }

    pub fn vertices<I, V>(mut self, vs: I) -> Self
    where
        I: IntoIterator<Item = V>,
        V: Into<VertexId>,
    {
        self.vertices.extend(vs.into_iter().map(Into::into));
        self
    }

    pub fn edge(
        mut self,
        e: impl Into<EdgeId>,
        source: impl Into<VertexId>,
        target: impl Into<VertexId>,
    ) -> Self {
        self.add_edge(e, source, target);
        self
    }

    pub fn circle(mut self, o: impl Into<CircleId>) -> Self {
        self.add_circle(o);
        self
    }

    pub fn add_vertex(&mut self, v: impl Into<VertexId>) {
        self.vertices.push(v.into());
    }

    pub fn add_edge(
        &mut self,
        e: impl Into<EdgeId>,
        source: impl Into<VertexId>,
        target: impl Into<VertexId>,
    ) {
        self.edges.push((e.into(), source.into(), target.into()));
    }

    pub fn add_circle(&mut self, o: impl Into<CircleId>) {
        self.circles.push(o.into());
    }

    pub fn build(self) -> Result<Graph, GraphError> {
        let report = validate_graph(&self);
        if !report.is_ok() {
            return Err(GraphError::Invalid(report));
        }
        Ok(Graph {
            vertices: self.vertices.into_iter().collect(),
            edges: self
                .edges
                .into_iter()
                .map(|(e, source, target)| (e, Edge { source, target }))
                .collect(),
            circles: self.circles.into_iter().collect(),
        })
    }
}

/// Checks that every edge endpoint is a vertex and that no identifier repeats
/// within the vertices or within the arcs (edges and circles together).
pub fn validate_graph(data: &GraphBuilder) -> ValidationReport<GraphIssue> {
    let mut issues = Vec::new();
    let mut vertices = BTreeSet::new();
    for v in &data.vertices {
        if !vertices.insert(v.clone()) {
            issues.push(GraphIssue::DuplicateId(v.to_string()));
        }
    }
    let mut arcs = BTreeSet::new();
    for (e, s, t) in &data.edges {
        if !arcs.insert(e.as_str()) {
            issues.push(GraphIssue::DuplicateId(e.to_string()));
        }
        for (end, v) in [(End::Source, s), (End::Target, t)] {
            if !vertices.contains(v) {
                issues.push(GraphIssue::DanglingEndpoint {
                    edge: e.clone(),
                    end,
                    vertex: v.clone(),
                });
            }
        }
    }
    for o in &data.circles {
        if !arcs.insert(o.as_str()) {
            issues.push(GraphIssue::DuplicateId(o.to_string()));
        }
    }
    ValidationReport { issues }
}

/// A directed graph with circles. Immutable once built.
#[derive(Clone, PartialEq, Eq, Debug, Default, Hash)]
pub struct Graph {
    vertices: BTreeSet<VertexId>,
    edges: BTreeMap<EdgeId, Edge>,
    circles: BTreeSet<CircleId>,
}

/// One connected component: its vertices and arcs.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Component {
    pub vertices: BTreeSet<VertexId>,
    pub arcs: BTreeSet<ArcId>,
}

impl Component {
    pub fn edge_count(&self) -> usize {
        self.arcs.iter().filter(|a| !a.is_circle()).count()
    }

    pub fn circle_count(&self) -> usize {
        self.arcs.iter().filter(|a| a.is_circle()).count()
    }
}

impl Graph {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn builder() -> GraphBuilder {
        GraphBuilder::new()
    }

    /// The unchecked data this graph was built from, in id order.
    pub fn to_builder(&self) -> GraphBuilder {
        GraphBuilder {
            vertices: self.vertices.iter().cloned().collect(),
            edges: self
                .edges
                .iter()
                .map(|(e, edge)| (e.clone(), edge.source.clone(), edge.target.clone()))
                .collect(),
            circles: self.circles.iter().cloned().collect(),
        }
    }

    /// Re-runs [`validate_graph`] on this graph's own data.
    pub fn validate(&self) -> ValidationReport<GraphIssue> {
        validate_graph(&self.to_builder())
    }

    pub fn vertices(&self) -> &BTreeSet<VertexId> {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeMap<EdgeId, Edge> {
        &self.edges
    }

    pub fn circles(&self) -> &BTreeSet<CircleId> {
        &self.circles
    }

    pub fn edge(&self, e: &EdgeId) -> Option<&Edge> {
        self.edges.get(e)
    }

    pub fn has_vertex(&self, v: &VertexId) -> bool {
        self.vertices.contains(v)
    }

    pub fn has_arc(&self, a: &ArcId) -> bool {
        match a {
            ArcId::Edge(e) => self.edges.contains_key(e),
            ArcId::Circle(o) => self.circles.contains(o),
        }
    }

    /// All arcs: edges first, then circles, each in id order.
    pub fn arcs(&self) -> impl Iterator<Item = ArcId> + '_ {
        self.edges
            .keys()
            .cloned()
            .map(ArcId::Edge)
            .chain(self.circles.iter().cloned().map(ArcId::Circle))
    }

    pub fn arc_count(&self) -> usize {
        self.edges.len() + self.circles.len()
    }

    /// Looks an arc up by name, whether it is an edge or a circle.
    pub fn arc_named(&self, name: &str) -> Option<ArcId> {
        let e = EdgeId::new(name);
        if self.edges.contains_key(&e) {
            return Some(ArcId::Edge(e));
        }
        let o = CircleId::new(name);
        self.circles.contains(&o).then_some(ArcId::Circle(o))
    }

    /// The vertex a flag is attached to, if the flag's edge exists.
    pub fn flag_vertex(&self, flag: &Flag) -> Option<&VertexId> {
        self.edges.get(&flag.edge).map(|e| e.endpoint(flag.end))
    }

    /// Every flag of the graph, in order.
    pub fn all_flags(&self) -> impl Iterator<Item = Flag> + '_ {
        self.edges
            .keys()
            .flat_map(|e| [Flag::source(e.clone()), Flag::target(e.clone())])
    }

    pub fn flags_at(&self, v: &VertexId) -> Result<BTreeSet<Flag>, GraphError> {
        if !self.vertices.contains(v) {
            return Err(GraphError::UnknownVertex(v.clone()));
        }
        Ok(self.flags_at_unchecked(v))
    }

    pub(crate) fn flags_at_unchecked(&self, v: &VertexId) -> BTreeSet<Flag> {
        let mut flags = BTreeSet::new();
        for (e, edge) in &self.edges {
            if &edge.source == v {
                flags.insert(Flag::source(e.clone()));
            }
            if &edge.target == v {
                flags.insert(Flag::target(e.clone()));
            }
        }
        flags
    }

    /// Number of flags at `v`; self-loops count twice.
    pub fn degree(&self, v: &VertexId) -> Result<usize, GraphError> {
        self.flags_at(v).map(|f| f.len())
    }

    pub(crate) fn degree_unchecked(&self, v: &VertexId) -> usize {
        self.edges
            .values()
            .map(|e| usize::from(&e.source == v) + usize::from(&e.target == v))
            .sum()
    }

    /// The subgraph on `vs` with exactly those edges whose two endpoints lie
    /// in `vs`. Circles are not kept.
    pub fn induced_subgraph(&self, vs: &BTreeSet<VertexId>) -> Result<Graph, GraphError> {
        if let Some(v) = vs.iter().find(|v| !self.vertices.contains(*v)) {
            return Err(GraphError::UnknownVertex(v.clone()));
        }
        Ok(Graph {
            vertices: vs.clone(),
            edges: self
                .edges
                .iter()
                .filter(|(_, e)| vs.contains(&e.source) && vs.contains(&e.target))
                .map(|(id, e)| (id.clone(), e.clone()))
                .collect(),
            circles: BTreeSet::new(),
        })
    }

    /// Components under edge adjacency, ordered by least vertex; every circle
    /// forms its own component, listed after the vertex components.
    pub fn connected_components(&self) -> Vec<Component> {
        let index: BTreeMap<&VertexId, usize> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v, i))
            .collect();
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for edge in self.edges.values() {
            let a = find(&mut parent, index[&edge.source]);
            let b = find(&mut parent, index[&edge.target]);
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut by_root: BTreeMap<usize, Component> = BTreeMap::new();
        for (v, &i) in &index {
            let root = find(&mut parent, i);
            by_root
                .entry(root)
                .or_insert_with(|| Component {
                    vertices: BTreeSet::new(),
                    arcs: BTreeSet::new(),
                })
                .vertices
                .insert((*v).clone());
        }
        for (e, edge) in &self.edges {
            let root = find(&mut parent, index[&edge.source]);
            by_root
                .get_mut(&root)
                .expect("edge endpoints are vertices")
                .arcs
                .insert(ArcId::Edge(e.clone()));
        }
        let mut components: Vec<Component> = by_root.into_values().collect();
        components.extend(self.circles.iter().map(|o| Component {
            vertices: BTreeSet::new(),
            arcs: BTreeSet::from([ArcId::Circle(o.clone())]),
        }));
        components
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Number of edges from `s` to `t`.
    pub fn multiplicity(&self, s: &VertexId, t: &VertexId) -> usize {
        self.edges
            .values()
            .filter(|e| &e.source == s && &e.target == t)
            .count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn loop_graph() -> Graph {
        Graph::builder()
            .vertex("v")
            .edge("e", "v", "v")
            .build()
            .unwrap()
    }

    fn triangle() -> Graph {
        Graph::builder()
            .vertices(["a", "b", "c"])
            .edge("ab", "a", "b")
            .edge("bc", "b", "c")
            .edge("ca", "c", "a")
            .build()
            .unwrap()
    }

    #[test]
    fn smallest_loop_graph_is_valid() {
        assert!(loop_graph().validate().is_ok());
    }

    #[test]
    fn lone_circle_is_valid() {
        let g = Graph::builder().circle("e").build().unwrap();
        assert!(g.vertices().is_empty());
        assert_eq!(g.arc_count(), 1);
    }

    #[test]
    fn dangling_endpoint_is_reported() {
        let data = Graph::builder().vertex("v").edge("e", "w", "v");
        let report = validate_graph(&data);
        assert_eq!(
            report.issues,
            vec![GraphIssue::DanglingEndpoint {
                edge: "e".into(),
                end: End::Source,
                vertex: "w".into()
            }]
        );
        assert!(data.build().is_err());
    }

    #[test]
    fn duplicate_ids_are_reported() {
        let data = Graph::builder()
            .vertex("v")
            .vertex("v")
            .edge("x", "v", "v")
            .circle("x");
        let report = validate_graph(&data);
        assert_eq!(
            report.issues,
            vec![
                GraphIssue::DuplicateId("v".into()),
                GraphIssue::DuplicateId("x".into())
            ]
        );
    }

    #[test]
    fn flags_of_self_loop() {
        let g = loop_graph();
        let flags = g.flags_at(&"v".into()).unwrap();
        assert_eq!(
            flags,
            BTreeSet::from([Flag::source("e"), Flag::target("e")])
        );
        assert_eq!(g.degree(&"v".into()).unwrap(), 2);
    }

    #[test]
    fn flags_of_isolated_and_path_vertices() {
        let g = Graph::builder()
            .vertices(["x", "v", "w", "lonely"])
            .edge("a", "x", "v")
            .edge("b", "v", "w")
            .build()
            .unwrap();
        assert!(g.flags_at(&"lonely".into()).unwrap().is_empty());
        assert_eq!(g.degree(&"lonely".into()).unwrap(), 0);
        assert_eq!(
            g.flags_at(&"v".into()).unwrap(),
            BTreeSet::from([Flag::target("a"), Flag::source("b")])
        );
        assert_eq!(g.degree(&"v".into()).unwrap(), 2);
        assert_eq!(
            g.flags_at(&"nope".into()),
            Err(GraphError::UnknownVertex("nope".into()))
        );
    }

    #[test]
    fn induced_subgraph_cases() {
        let g = Graph::builder()
            .vertices(["a", "b"])
            .edge("ab", "a", "b")
            .circle("o")
            .build()
            .unwrap();
        let all = g.induced_subgraph(g.vertices()).unwrap();
        assert_eq!(all.edges().len(), 1);
        assert!(all.circles().is_empty());
        let none = g.induced_subgraph(&BTreeSet::new()).unwrap();
        assert_eq!(none, Graph::empty());

        let t = triangle();
        let two: BTreeSet<VertexId> = ["a".into(), "b".into()].into();
        // brute force: edges with both ends in the set
        let expected: Vec<&EdgeId> = t
            .edges()
            .iter()
            .filter(|(_, e)| two.contains(&e.source) && two.contains(&e.target))
            .map(|(id, _)| id)
            .collect();
        let sub = t.induced_subgraph(&two).unwrap();
        assert_eq!(sub.edges().keys().collect::<Vec<_>>(), expected);
        assert_eq!(sub.edges().len(), 1);
        assert!(t.induced_subgraph(&BTreeSet::from(["zz".into()])).is_err());
    }

    #[test]
    fn components() {
        let two = Graph::builder().vertices(["a", "b"]).build().unwrap();
        assert_eq!(two.connected_components().len(), 2);
        let mixed = Graph::builder()
            .vertices(["a", "b"])
            .edge("ab", "a", "b")
            .circle("o")
            .build()
            .unwrap();
        let comps = mixed.connected_components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[1].arcs, BTreeSet::from([ArcId::Circle("o".into())]));
        assert_eq!(triangle().connected_components().len(), 1);
        assert!(Graph::empty().is_connected());
    }

    #[test]
    fn flag_strings_round_trip() {
        let f: Flag = "e.1.tgt".parse().unwrap();
        assert_eq!(f, Flag::target("e.1"));
        assert_eq!(f.to_string(), "e.1.tgt");
        assert!("e.mid".parse::<Flag>().is_err());
        assert!(".src".parse::<Flag>().is_err());
    }
}
