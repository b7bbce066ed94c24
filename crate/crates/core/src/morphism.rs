//! Morphisms and embeddings of graphs with circles.
//!
//! A morphism is a partial vertex map together with a total arc map. Nothing
//! is checked at construction: [`GraphMorphism::classify`] decides from the
//! tables alone whether the data is a morphism, an embedding, or neither, and
//! reports every violated condition.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::graph::{ArcId, CircleId, EdgeId, End, Flag, Graph, VertexId};

/// A violated morphism or embedding condition.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Violation {
    /// A table entry refers to something the graphs do not contain.
    UnknownEntry(String),
    NotTotalOnArcs(ArcId),
    CircleToEdge(CircleId),
    LaxNaturalityBroken {
        edge: EdgeId,
        end: End,
    },
    NotFlagSurjective(VertexId),
    NotFlagInjective(Flag, Flag),
    VertexMapNotInjective(VertexId, VertexId),
    CircleMapNotInjective(CircleId, CircleId),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnknownEntry(msg) => write!(f, "UnknownEntry({msg})"),
            Violation::NotTotalOnArcs(a) => write!(f, "NotTotalOnArcs({a})"),
            Violation::CircleToEdge(o) => write!(f, "CircleToEdge({o})"),
            Violation::LaxNaturalityBroken { edge, end } => {
                write!(f, "LaxNaturalityBroken({edge}, {end:?})")
            }
            Violation::NotFlagSurjective(v) => write!(f, "NotFlagSurjective({v})"),
            Violation::NotFlagInjective(a, b) => write!(f, "NotFlagInjective({a}, {b})"),
            Violation::VertexMapNotInjective(a, b) => {
                write!(f, "VertexMapNotInjective({a}, {b})")
            }
            Violation::CircleMapNotInjective(a, b) => {
                write!(f, "CircleMapNotInjective({a}, {b})")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MorphismClass {
    Invalid(Vec<Violation>),
    Morphism,
    Embedding,
}

impl MorphismClass {
    pub fn is_morphism(&self) -> bool {
        !matches!(self, MorphismClass::Invalid(_))
    }

    pub fn is_embedding(&self) -> bool {
        matches!(self, MorphismClass::Embedding)
    }

    pub fn name(&self) -> &'static str {
        match self {
            MorphismClass::Invalid(_) => "invalid",
            MorphismClass::Morphism => "morphism",
            MorphismClass::Embedding => "embedding",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorphismError {
    #[error("cannot compose: codomain of the first map is not the domain of the second")]
    DomainMismatch,
    #[error("`{0}` is not in the {1}")]
    UnknownName(String, &'static str),
}

/// Induced partial map on flags.
pub type FlagMap = BTreeMap<Flag, Flag>;

/// A candidate morphism `dom -> cod`: vertex table (absent key = undefined)
/// and arc table.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GraphMorphism {
    dom: Arc<Graph>,
    cod: Arc<Graph>,
    vmap: BTreeMap<VertexId, VertexId>,
    amap: BTreeMap<ArcId, ArcId>,
}

impl GraphMorphism {
    pub fn new(
        dom: Arc<Graph>,
        cod: Arc<Graph>,
        vmap: BTreeMap<VertexId, VertexId>,
        amap: BTreeMap<ArcId, ArcId>,
    ) -> Self {
        GraphMorphism {
            dom,
            cod,
            vmap,
            amap,
        }
    }

    /// Builds the tables from names, resolving each arc name to the edge or
    /// circle carrying it.
    pub fn from_names(
        dom: Arc<Graph>,
        cod: Arc<Graph>,
        vertices: &[(&str, &str)],
        arcs: &[(&str, &str)],
    ) -> Result<Self, MorphismError> {
        let mut vmap = BTreeMap::new();
        for (v, w) in vertices {
            if !dom.has_vertex(&(*v).into()) {
                return Err(MorphismError::UnknownName(v.to_string(), "domain"));
            }
            if !cod.has_vertex(&(*w).into()) {
                return Err(MorphismError::UnknownName(w.to_string(), "codomain"));
            }
            vmap.insert(VertexId::from(*v), VertexId::from(*w));
        }
        let mut amap = BTreeMap::new();
        for (a, b) in arcs {
            let x = dom
                .arc_named(a)
                .ok_or_else(|| MorphismError::UnknownName(a.to_string(), "domain"))?;
            let y = cod
                .arc_named(b)
                .ok_or_else(|| MorphismError::UnknownName(b.to_string(), "codomain"))?;
            amap.insert(x, y);
        }
        Ok(GraphMorphism::new(dom, cod, vmap, amap))
    }

    pub fn identity(g: Arc<Graph>) -> Self {
        let vmap = g
            .vertices()
            .iter()
            .map(|v| (v.clone(), v.clone()))
            .collect();
        let amap = g.arcs().map(|a| (a.clone(), a)).collect();
        GraphMorphism::new(g.clone(), g, vmap, amap)
    }

    pub fn dom(&self) -> &Arc<Graph> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<Graph> {
        &self.cod
    }

    pub fn vertex_map(&self) -> &BTreeMap<VertexId, VertexId> {
        &self.vmap
    }

    pub fn arc_map(&self) -> &BTreeMap<ArcId, ArcId> {
        &self.amap
    }

    pub fn vertex(&self, v: &VertexId) -> Option<&VertexId> {
        self.vmap.get(v)
    }

    pub fn arc(&self, a: &ArcId) -> Option<&ArcId> {
        self.amap.get(a)
    }

    /// Image of an edge, when that image is itself an edge.
    pub fn edge(&self, e: &EdgeId) -> Option<&EdgeId> {
        self.amap
            .get(&ArcId::Edge(e.clone()))
            .and_then(ArcId::as_edge)
    }

    /// The image of a flag: defined iff the vertex map is defined at the
    /// flag's vertex and the edge goes to an edge.
    pub fn map_flag(&self, flag: &Flag) -> Option<Flag> {
        let v = self.dom.flag_vertex(flag)?;
        self.vmap.get(v)?;
        let image = self.edge(&flag.edge)?;
        Some(Flag::new(image.clone(), flag.end))
    }

    pub fn flag_map(&self) -> FlagMap {
        self.dom
            .all_flags()
            .filter_map(|f| self.map_flag(&f).map(|g| (f, g)))
            .collect()
    }

    /// Every vertex mapping to `w`.
    pub fn vertex_preimage(&self, w: &VertexId) -> Vec<&VertexId> {
        self.vmap
            .iter()
            .filter(|(_, image)| *image == w)
            .map(|(v, _)| v)
            .collect()
    }

    /// Every arc mapping to `a`.
    pub fn arc_preimage(&self, a: &ArcId) -> Vec<&ArcId> {
        self.amap
            .iter()
            .filter(|(_, image)| *image == a)
            .map(|(x, _)| x)
            .collect()
    }

    pub fn is_flag_injective(&self) -> bool {
        self.flag_injectivity_violations().is_empty()
    }

    pub fn is_flag_surjective(&self) -> bool {
        self.flag_surjectivity_violations().is_empty()
    }

    pub fn is_flag_bijective(&self) -> bool {
        self.is_flag_injective() && self.is_flag_surjective()
    }

    fn flag_injectivity_violations(&self) -> Vec<Violation> {
        let mut seen: BTreeMap<Flag, Flag> = BTreeMap::new();
        let mut out = Vec::new();
        for (from, to) in self.flag_map() {
            if let Some(prev) = seen.get(&to) {
                out.push(Violation::NotFlagInjective(prev.clone(), from));
            } else {
                seen.insert(to, from);
            }
        }
        out
    }

    /// For each defined vertex, every flag at its image has to be the image
    /// of a flag at the vertex itself.
    fn flag_surjectivity_violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (v, w) in &self.vmap {
            if !self.dom.has_vertex(v) || !self.cod.has_vertex(w) {
                continue;
            }
            let image: BTreeSet<Flag> = self
                .dom
                .flags_at_unchecked(v)
                .iter()
                .filter_map(|f| self.map_flag(f))
                .collect();
            if !self.cod.flags_at_unchecked(w).is_subset(&image) {
                out.push(Violation::NotFlagSurjective(v.clone()));
            }
        }
        out
    }

    fn structural_violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (v, w) in &self.vmap {
            if !self.dom.has_vertex(v) {
                out.push(Violation::UnknownEntry(format!(
                    "vertex `{v}` not in domain"
                )));
            }
            if !self.cod.has_vertex(w) {
                out.push(Violation::UnknownEntry(format!(
                    "vertex `{w}` not in codomain"
                )));
            }
        }
        for (a, b) in &self.amap {
            if !self.dom.has_arc(a) {
                out.push(Violation::UnknownEntry(format!("arc `{a}` not in domain")));
            }
            if !self.cod.has_arc(b) {
                out.push(Violation::UnknownEntry(format!(
                    "arc `{b}` not in codomain"
                )));
            }
        }
        out
    }

    /// Conditions 1-3: totality on arcs, no circle sent to an edge, lax
    /// naturality of source and target, flag surjectivity.
    pub fn morphism_violations(&self) -> Vec<Violation> {
        let mut out = self.structural_violations();
        for a in self.dom.arcs() {
            if !self.amap.contains_key(&a) {
                out.push(Violation::NotTotalOnArcs(a));
            }
        }
        for o in self.dom.circles() {
            if let Some(ArcId::Edge(_)) = self.amap.get(&ArcId::Circle(o.clone())) {
                out.push(Violation::CircleToEdge(o.clone()));
            }
        }
        for (e, edge) in self.dom.edges() {
            let Some(image) = self.amap.get(&ArcId::Edge(e.clone())) else {
                continue;
            };
            for end in [End::Source, End::Target] {
                let Some(w) = self.vmap.get(edge.endpoint(end)) else {
                    continue;
                };
                let holds = match image {
                    ArcId::Edge(e2) => self.cod.edge(e2).is_some_and(|x| x.endpoint(end) == w),
                    ArcId::Circle(_) => false,
                };
                if !holds {
                    out.push(Violation::LaxNaturalityBroken {
                        edge: e.clone(),
                        end,
                    });
                }
            }
        }
        out.extend(self.flag_surjectivity_violations());
        out
    }

    /// Conditions 4-6: injective vertex map, injective circle component, flag
    /// injectivity (surjectivity is already part of being a morphism).
    pub fn embedding_violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut vertex_seen: BTreeMap<&VertexId, &VertexId> = BTreeMap::new();
        for (v, w) in &self.vmap {
            if let Some(prev) = vertex_seen.insert(w, v) {
                out.push(Violation::VertexMapNotInjective(prev.clone(), v.clone()));
            }
        }
        let mut circle_seen: BTreeMap<&ArcId, &CircleId> = BTreeMap::new();
        for o in self.dom.circles() {
            if let Some(image @ ArcId::Circle(_)) = self.amap.get(&ArcId::Circle(o.clone())) {
                if let Some(prev) = circle_seen.insert(image, o) {
                    out.push(Violation::CircleMapNotInjective(prev.clone(), o.clone()));
                }
            }
        }
        out.extend(self.flag_injectivity_violations());
        out
    }

    pub fn classify(&self) -> MorphismClass {
        let mut violations = self.morphism_violations();
        let embedding = self.embedding_violations();
        if violations.is_empty() {
            return if embedding.is_empty() {
                MorphismClass::Embedding
            } else {
                MorphismClass::Morphism
            };
        }
        violations.extend(embedding);
        violations.sort();
        violations.dedup();
        MorphismClass::Invalid(violations)
    }

    /// Pointwise composite `g ∘ f` where `f = self`.
    pub fn then(&self, g: &GraphMorphism) -> Result<GraphMorphism, MorphismError> {
        compose(g, self)
    }

    /// Drops circles and every arc sent to a circle, leaving the underlying
    /// vertex and edge data.
    pub fn forget_circles(&self) -> BaseMap {
        BaseMap {
            dom: strip_circles(&self.dom),
            cod: strip_circles(&self.cod),
            vmap: self.vmap.clone(),
            emap: self
                .amap
                .iter()
                .filter_map(|(a, b)| Some((a.as_edge()?.clone(), b.as_edge()?.clone())))
                .collect(),
        }
    }
}

/// Pointwise composite `g ∘ f`.
pub fn compose(g: &GraphMorphism, f: &GraphMorphism) -> Result<GraphMorphism, MorphismError> {
    if !Arc::ptr_eq(&f.cod, &g.dom) && *f.cod != *g.dom {
        return Err(MorphismError::DomainMismatch);
    }
    let vmap = f
        .vmap
        .iter()
        .filter_map(|(v, w)| g.vmap.get(w).map(|x| (v.clone(), x.clone())))
        .collect();
    let amap = f
        .amap
        .iter()
        .filter_map(|(a, b)| g.amap.get(b).map(|c| (a.clone(), c.clone())))
        .collect();
    Ok(GraphMorphism::new(f.dom.clone(), g.cod.clone(), vmap, amap))
}

fn strip_circles(g: &Graph) -> Graph {
    let mut b = g.to_builder();
    b.circles.clear();
    b.build().expect("removing circles keeps a graph valid")
}

/// A morphism between circle-free graphs: partial vertex and edge tables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BaseMap {
    pub dom: Graph,
    pub cod: Graph,
    pub vmap: BTreeMap<VertexId, VertexId>,
    pub emap: BTreeMap<EdgeId, EdgeId>,
}

impl BaseMap {
    pub fn identity(g: &Graph) -> Self {
        GraphMorphism::identity(Arc::new(g.clone())).forget_circles()
    }

    /// `g ∘ self` as partial maps.
    pub fn then(&self, g: &BaseMap) -> Option<BaseMap> {
        if self.cod != g.dom {
            return None;
        }
        Some(BaseMap {
            dom: self.dom.clone(),
            cod: g.cod.clone(),
            vmap: self
                .vmap
                .iter()
                .filter_map(|(v, w)| g.vmap.get(w).map(|x| (v.clone(), x.clone())))
                .collect(),
            emap: self
                .emap
                .iter()
                .filter_map(|(a, b)| g.emap.get(b).map(|c| (a.clone(), c.clone())))
                .collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc_e(name: &str) -> ArcId {
        ArcId::Edge(name.into())
    }

    fn arc_o(name: &str) -> ArcId {
        ArcId::Circle(name.into())
    }

    fn loop_to_circle() -> GraphMorphism {
        let dom = Graph::builder()
            .vertex("v")
            .edge("e", "v", "v")
            .build()
            .unwrap();
        let cod = Graph::builder().circle("e").build().unwrap();
        GraphMorphism::new(
            Arc::new(dom),
            Arc::new(cod),
            BTreeMap::new(),
            BTreeMap::from([(arc_e("e"), arc_o("e"))]),
        )
    }

    fn path3() -> Arc<Graph> {
        Arc::new(
            Graph::builder()
                .vertices(["a", "b", "c"])
                .edge("ab", "a", "b")
                .edge("bc", "b", "c")
                .build()
                .unwrap(),
        )
    }

    #[test]
    fn loop_to_circle_is_an_embedding() {
        let f = loop_to_circle();
        assert_eq!(f.classify(), MorphismClass::Embedding);
        assert!(f.flag_map().is_empty());
        let base = f.forget_circles();
        assert_eq!(base.cod, Graph::empty());
        assert!(base.vmap.is_empty() && base.emap.is_empty());
    }

    #[test]
    fn identity_is_an_embedding() {
        let g = path3();
        let id = GraphMorphism::identity(g.clone());
        assert_eq!(id.classify(), MorphismClass::Embedding);
        assert!(id.is_flag_injective() && id.is_flag_surjective() && id.is_flag_bijective());
        let fm = id.flag_map();
        assert_eq!(fm.len(), 4);
        assert!(fm.iter().all(|(a, b)| a == b));
        assert_eq!(id.forget_circles(), BaseMap::identity(&g));
    }

    #[test]
    fn extra_incident_edge_breaks_flag_surjectivity() {
        // v is sent to a vertex that has an edge nobody maps onto
        let dom = Arc::new(Graph::builder().vertex("v").build().unwrap());
        let cod = Arc::new(
            Graph::builder()
                .vertices(["w", "x"])
                .edge("wx", "w", "x")
                .build()
                .unwrap(),
        );
        let f = GraphMorphism::new(
            dom,
            cod,
            BTreeMap::from([("v".into(), "w".into())]),
            BTreeMap::new(),
        );
        assert_eq!(
            f.classify(),
            MorphismClass::Invalid(vec![Violation::NotFlagSurjective("v".into())])
        );
    }

    #[test]
    fn circle_to_edge_is_rejected() {
        let dom = Arc::new(Graph::builder().circle("o").build().unwrap());
        let cod = Arc::new(
            Graph::builder()
                .vertex("v")
                .edge("e", "v", "v")
                .build()
                .unwrap(),
        );
        let f = GraphMorphism::new(
            dom,
            cod,
            BTreeMap::new(),
            BTreeMap::from([(arc_o("o"), arc_e("e"))]),
        );
        assert_eq!(
            f.classify(),
            MorphismClass::Invalid(vec![Violation::CircleToEdge("o".into())])
        );
    }

    #[test]
    fn missing_arc_and_broken_naturality() {
        let g = path3();
        let mut amap: BTreeMap<ArcId, ArcId> = BTreeMap::new();
        amap.insert(arc_e("ab"), arc_e("bc"));
        let vmap = g
            .vertices()
            .iter()
            .map(|v| (v.clone(), v.clone()))
            .collect();
        let f = GraphMorphism::new(g.clone(), g, vmap, amap);
        let MorphismClass::Invalid(v) = f.classify() else {
            panic!("expected invalid");
        };
        assert!(v.contains(&Violation::NotTotalOnArcs(arc_e("bc"))));
        assert!(v.contains(&Violation::LaxNaturalityBroken {
            edge: "ab".into(),
            end: End::Source
        }));
    }

    #[test]
    fn erasing_a_vertex_unmaps_its_flags() {
        // erase b: both path edges survive, the flags at b become undefined
        let g = path3();
        let vmap = BTreeMap::from([("a".into(), "a".into()), ("c".into(), "c".into())]);
        let amap = g.arcs().map(|a| (a.clone(), a)).collect();
        let f = GraphMorphism::new(g.clone(), g, vmap, amap);
        let fm = f.flag_map();
        let expected: FlagMap = [Flag::source("ab"), Flag::target("bc")]
            .into_iter()
            .map(|x| (x.clone(), x))
            .collect();
        assert_eq!(fm, expected);
        assert_eq!(f.classify(), MorphismClass::Embedding);
    }

    #[test]
    fn parallel_boundary_edges_merged_into_a_self_loop() {
        let b = Arc::new(
            Graph::builder()
                .vertices(["d", "db"])
                .edge("e1", "d", "db")
                .edge("e2", "db", "d")
                .build()
                .unwrap(),
        );
        let l = Arc::new(
            Graph::builder()
                .vertex("x")
                .edge("loop", "x", "x")
                .build()
                .unwrap(),
        );
        let f = GraphMorphism::new(
            b,
            l,
            BTreeMap::from([("d".into(), "x".into())]),
            BTreeMap::from([(arc_e("e1"), arc_e("loop")), (arc_e("e2"), arc_e("loop"))]),
        );
        assert!(f.is_flag_injective());
        assert!(f.is_flag_surjective());
        assert_eq!(f.classify(), MorphismClass::Embedding);
    }

    #[test]
    fn surjective_but_not_bijective() {
        // two edges folded onto one edge while keeping the shared vertex
        let dom = Arc::new(
            Graph::builder()
                .vertices(["v", "a", "b"])
                .edge("x", "a", "v")
                .edge("y", "b", "v")
                .build()
                .unwrap(),
        );
        let cod = Arc::new(
            Graph::builder()
                .vertices(["w", "c"])
                .edge("z", "c", "w")
                .build()
                .unwrap(),
        );
        let f = GraphMorphism::new(
            dom,
            cod,
            BTreeMap::from([("v".into(), "w".into())]),
            BTreeMap::from([(arc_e("x"), arc_e("z")), (arc_e("y"), arc_e("z"))]),
        );
        assert!(f.is_flag_surjective());
        assert!(!f.is_flag_bijective());
        assert_eq!(f.classify(), MorphismClass::Morphism);
    }

    #[test]
    fn compose_with_identity() {
        let f = loop_to_circle();
        let id_cod = GraphMorphism::identity(f.cod().clone());
        let id_dom = GraphMorphism::identity(f.dom().clone());
        assert_eq!(compose(&id_cod, &f).unwrap(), f);
        assert_eq!(compose(&f, &id_dom).unwrap(), f);
        assert_eq!(compose(&f, &f), Err(MorphismError::DomainMismatch));
    }

    #[test]
    fn edge_to_circle_then_circle_to_circle() {
        let f = loop_to_circle();
        let other = Arc::new(Graph::builder().circle("o2").build().unwrap());
        let g = GraphMorphism::new(
            f.cod().clone(),
            other,
            BTreeMap::new(),
            BTreeMap::from([(arc_o("e"), arc_o("o2"))]),
        );
        let gf = compose(&g, &f).unwrap();
        assert_eq!(gf.arc(&arc_e("e")), Some(&arc_o("o2")));
        assert_eq!(gf.classify(), MorphismClass::Embedding);
    }

    #[test]
    fn composing_vertex_erasures_erases_the_union() {
        let g = path3();
        let erase = |keep: &[&str]| {
            let vmap = keep.iter().map(|v| ((*v).into(), (*v).into())).collect();
            let amap = g.arcs().map(|a| (a.clone(), a)).collect();
            GraphMorphism::new(g.clone(), g.clone(), vmap, amap)
        };
        let f = erase(&["a", "c"]);
        let h = erase(&["b", "c"]);
        let hf = compose(&h, &f).unwrap();
        assert_eq!(
            hf.vertex_map().keys().cloned().collect::<Vec<VertexId>>(),
            vec![VertexId::from("c")]
        );
        assert!(hf.classify().is_morphism());
    }
}
