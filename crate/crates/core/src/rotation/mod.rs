//! Rotation systems: a cyclic order of flags around every vertex.
//!
//! Cyclic sequences are stored rotated so that their least flag comes
//! first, which makes equality up to rotation plain `==`. Reflections are
//! never identified.

mod faces;

pub use faces::{genus_report, trace_faces, ComponentSurface, FaceWalk, SurfaceReport};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::boundary::{
    enumerate_re_pairings, BoundaryEmbedding, PartitioningSpan, RePairingSolution,
};
use crate::dpo::{
    pushout, pushout_complement, rewrite, ComplementResult, DpoError, PushoutResult, RewriteRule,
    RewriteTrace,
};
use crate::graph::{Flag, Graph, ValidationReport, VertexId};
use crate::morphism::GraphMorphism;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Error)]
pub enum RotationIssue {
    #[error("flag `{flag}` at `{vertex}` is missing from its rotation")]
    MissingFlag { vertex: VertexId, flag: Flag },
    #[error("flag `{flag}` listed at `{vertex}` does not belong there")]
    ExtraFlag { vertex: VertexId, flag: Flag },
    #[error("flag `{flag}` listed twice at `{vertex}`")]
    DuplicateFlag { vertex: VertexId, flag: Flag },
    #[error("rotation given for unknown vertex `{0}`")]
    UnknownVertex(VertexId),
    #[error("`{0}` is not a flag")]
    BadFlag(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RotationError {
    #[error("invalid rotation system: {0}")]
    Invalid(ValidationReport<RotationIssue>),
    #[error("rotation system belongs to a different graph than {0}")]
    GraphMismatch(&'static str),
    #[error("{0} does not preserve rotations")]
    NotRotationPreserving(&'static str),
    #[error("component has odd Euler characteristic {0}")]
    OddEulerDefect(i64),
    #[error(transparent)]
    Dpo(#[from] DpoError),
}

impl From<crate::boundary::BoundaryError> for RotationError {
    fn from(e: crate::boundary::BoundaryError) -> Self {
        RotationError::Dpo(e.into())
    }
}

/// Rotates a cyclic sequence so its least element comes first.
pub fn normalize_cycle<T: Ord + Clone>(seq: &[T]) -> Vec<T> {
    match seq.iter().enumerate().min_by(|a, b| a.1.cmp(b.1)) {
        None => Vec::new(),
        Some((i, _)) => seq[i..].iter().chain(&seq[..i]).cloned().collect(),
    }
}

/// Equality of cyclic sequences up to rotation.
pub fn cyclic_eq<T: Ord + Clone>(a: &[T], b: &[T]) -> bool {
    a.len() == b.len() && normalize_cycle(a) == normalize_cycle(b)
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RotationSystem {
    graph: Arc<Graph>,
    inc: BTreeMap<VertexId, Vec<Flag>>,
}

/// Checks that `inc` lists every flag exactly once, at its own vertex.
/// Vertices absent from `inc` count as listing nothing.
pub fn validate_rotation(
    graph: &Graph,
    inc: &BTreeMap<VertexId, Vec<Flag>>,
) -> ValidationReport<RotationIssue> {
    let mut issues = Vec::new();
    for v in inc.keys() {
        if !graph.has_vertex(v) {
            issues.push(RotationIssue::UnknownVertex(v.clone()));
        }
    }
    for v in graph.vertices() {
        let expected = graph.flags_at_unchecked(v);
        let listed = inc.get(v).map(Vec::as_slice).unwrap_or_default();
        let mut seen = BTreeSet::new();
        for flag in listed {
            if !expected.contains(flag) {
                issues.push(RotationIssue::ExtraFlag {
                    vertex: v.clone(),
                    flag: flag.clone(),
                });
            } else if !seen.insert(flag) {
                issues.push(RotationIssue::DuplicateFlag {
                    vertex: v.clone(),
                    flag: flag.clone(),
                });
            }
        }
        for flag in expected.iter().filter(|f| !seen.contains(f)) {
            issues.push(RotationIssue::MissingFlag {
                vertex: v.clone(),
                flag: flag.clone(),
            });
        }
    }
    ValidationReport { issues }
}

impl RotationSystem {
    pub fn new(
        graph: Arc<Graph>,
        inc: BTreeMap<VertexId, Vec<Flag>>,
    ) -> Result<Self, RotationError> {
        let report = validate_rotation(&graph, &inc);
        if !report.is_ok() {
            return Err(RotationError::Invalid(report));
        }
        let inc = graph
            .vertices()
            .iter()
            .map(|v| {
                let cycle = inc.get(v).map(|c| normalize_cycle(c)).unwrap_or_default();
                (v.clone(), cycle)
            })
            .collect();
        Ok(RotationSystem { graph, inc })
    }

    /// Convenience constructor from `"edge.src"` / `"edge.tgt"` strings.
    pub fn parse<'a>(
        graph: Arc<Graph>,
        inc: impl IntoIterator<Item = (&'a str, Vec<&'a str>)>,
    ) -> Result<Self, RotationError> {
        let mut table = BTreeMap::new();
        for (v, flags) in inc {
            let flags = flags
                .into_iter()
                .map(|f| f.parse::<Flag>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| {
                    RotationError::Invalid(ValidationReport {
                        issues: vec![RotationIssue::BadFlag(e.0)],
                    })
                })?;
            table.insert(VertexId::from(v), flags);
        }
        RotationSystem::new(graph, table)
    }

    /// Any rotation: flags in id order at every vertex.
    pub fn arbitrary(graph: Arc<Graph>) -> Self {
        let inc = graph
            .vertices()
            .iter()
            .map(|v| (v.clone(), graph.flags_at_unchecked(v).into_iter().collect()))
            .collect();
        RotationSystem { graph, inc }
    }

    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn inc(&self) -> &BTreeMap<VertexId, Vec<Flag>> {
        &self.inc
    }

    /// The cyclic sequence at `v`, least flag first.
    pub fn at(&self, v: &VertexId) -> &[Flag] {
        self.inc.get(v).map(Vec::as_slice).unwrap_or_default()
    }

    /// The flag after `flag` in the rotation at its vertex.
    pub fn successor(&self, flag: &Flag) -> Option<&Flag> {
        let v = self.graph.flag_vertex(flag)?;
        let cycle = self.inc.get(v)?;
        let i = cycle.iter().position(|f| f == flag)?;
        cycle.get((i + 1) % cycle.len())
    }

    /// Relabels along a flag bijection onto another graph.
    pub fn relabel(
        &self,
        graph: Arc<Graph>,
        vertex: impl Fn(&VertexId) -> VertexId,
        flag: impl Fn(&Flag) -> Flag,
    ) -> Result<RotationSystem, RotationError> {
        let inc = self
            .inc
            .iter()
            .map(|(v, cycle)| (vertex(v), cycle.iter().map(&flag).collect()))
            .collect();
        RotationSystem::new(graph, inc)
    }
}

impl fmt::Display for RotationSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (v, cycle)) in self.inc.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}: (")?;
            for (j, flag) in cycle.iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{flag}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Whether `f` carries the rotation at each vertex where it is defined onto
/// the rotation at the image vertex. Vertices outside the vertex map impose
/// nothing.
pub fn check_rot_morphism(f: &GraphMorphism, dom: &RotationSystem, cod: &RotationSystem) -> bool {
    if **f.dom() != **dom.graph() || **f.cod() != **cod.graph() {
        return false;
    }
    f.vertex_map().iter().all(|(v, w)| {
        let mapped: Option<Vec<Flag>> = dom.at(v).iter().map(|fl| f.map_flag(fl)).collect();
        mapped.is_some_and(|m| cyclic_eq(&m, cod.at(w)))
    })
}

fn require_graph(rs: &RotationSystem, g: &Graph, what: &'static str) -> Result<(), RotationError> {
    if **rs.graph() == *g {
        Ok(())
    } else {
        Err(RotationError::GraphMismatch(what))
    }
}

/// A partitioning span with rotations on all three graphs.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RotSpan {
    pub span: PartitioningSpan,
    pub boundary: RotationSystem,
    pub left: RotationSystem,
    pub right: RotationSystem,
}

impl RotSpan {
    pub fn new(
        span: PartitioningSpan,
        boundary: RotationSystem,
        left: RotationSystem,
        right: RotationSystem,
    ) -> Result<Self, RotationError> {
        require_graph(&boundary, span.boundary().graph(), "the boundary graph")?;
        require_graph(&left, span.left_graph(), "the left graph")?;
        require_graph(&right, span.right_graph(), "the right graph")?;
        if !check_rot_morphism(span.left(), &boundary, &left) {
            return Err(RotationError::NotRotationPreserving("the left leg"));
        }
        if !check_rot_morphism(span.right(), &boundary, &right) {
            return Err(RotationError::NotRotationPreserving("the right leg"));
        }
        Ok(RotSpan {
            span,
            boundary,
            left,
            right,
        })
    }
}

/// A boundary embedding with rotations on the boundary, pattern and host.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RotEmbedding {
    pub embedding: BoundaryEmbedding,
    pub boundary: RotationSystem,
    pub pattern: RotationSystem,
    pub host: RotationSystem,
}

impl RotEmbedding {
    pub fn new(
        embedding: BoundaryEmbedding,
        boundary: RotationSystem,
        pattern: RotationSystem,
        host: RotationSystem,
    ) -> Result<Self, RotationError> {
        require_graph(
            &boundary,
            embedding.boundary().graph(),
            "the boundary graph",
        )?;
        require_graph(&pattern, embedding.pattern(), "the pattern graph")?;
        require_graph(&host, embedding.host(), "the host graph")?;
        if !check_rot_morphism(embedding.leg(), &boundary, &pattern) {
            return Err(RotationError::NotRotationPreserving("the boundary leg"));
        }
        if !check_rot_morphism(embedding.matching(), &pattern, &host) {
            return Err(RotationError::NotRotationPreserving("the match"));
        }
        Ok(RotEmbedding {
            embedding,
            boundary,
            pattern,
            host,
        })
    }
}

/// A rewrite rule with rotations on `B`, `L` and `R`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RotRule {
    pub rule: RewriteRule,
    pub boundary: RotationSystem,
    pub lhs: RotationSystem,
    pub rhs: RotationSystem,
}

impl RotRule {
    pub fn new(
        rule: RewriteRule,
        boundary: RotationSystem,
        lhs: RotationSystem,
        rhs: RotationSystem,
    ) -> Result<Self, RotationError> {
        require_graph(&boundary, rule.boundary().graph(), "the boundary graph")?;
        require_graph(&lhs, rule.lhs(), "the left-hand side")?;
        require_graph(&rhs, rule.rhs(), "the right-hand side")?;
        if !check_rot_morphism(rule.lhs_leg(), &boundary, &lhs) {
            return Err(RotationError::NotRotationPreserving("the left leg"));
        }
        if !check_rot_morphism(rule.rhs_leg(), &boundary, &rhs) {
            return Err(RotationError::NotRotationPreserving("the right leg"));
        }
        Ok(RotRule {
            rule,
            boundary,
            lhs,
            rhs,
        })
    }
}

/// Pushout of a rotated span. Each vertex of the result takes its rotation
/// from the side it came from.
pub fn rot_pushout(rs: &RotSpan) -> Result<(PushoutResult, RotationSystem), RotationError> {
    let po = pushout(&rs.span)?;
    let rot = pushout_rotation(&po, &rs.left, &rs.right)?;
    Ok((po, rot))
}

fn pushout_rotation(
    po: &PushoutResult,
    left: &RotationSystem,
    right: &RotationSystem,
) -> Result<RotationSystem, RotationError> {
    let mut inc = BTreeMap::new();
    for (leg, rot) in [(&po.m, left), (&po.g, right)] {
        for (v, w) in leg.vertex_map() {
            let cycle: Vec<Flag> = rot
                .at(v)
                .iter()
                .map(|f| leg.map_flag(f).expect("legs are embeddings"))
                .collect();
            inc.insert(w.clone(), cycle);
        }
    }
    RotationSystem::new(po.graph.clone(), inc)
}

/// Complement of a rotated boundary embedding. The new vertex takes the
/// rotation of the dual boundary of `B`; surviving vertices keep theirs
/// from the host.
pub fn rot_complement(
    re: &RotEmbedding,
    solution: &RePairingSolution,
) -> Result<(ComplementResult, RotationSystem), RotationError> {
    let comp = pushout_complement(&re.embedding, solution)?;
    let rot = complement_rotation(&re.embedding, &comp, &re.boundary, &re.host)?;
    Ok((comp, rot))
}

fn complement_rotation(
    be: &BoundaryEmbedding,
    comp: &ComplementResult,
    rot_b: &RotationSystem,
    rot_g: &RotationSystem,
) -> Result<RotationSystem, RotationError> {
    let mut inc = BTreeMap::new();
    let dual: Vec<Flag> = rot_b
        .at(be.boundary().dual_boundary())
        .iter()
        .map(|f| {
            comp.c
                .map_flag(f)
                .expect("c is defined at the dual boundary")
        })
        .collect();
    inc.insert(comp.dual_boundary.clone(), dual);
    let back: BTreeMap<Flag, Flag> = comp.g.flag_map().into_iter().map(|(a, b)| (b, a)).collect();
    for (v, w) in comp.g.vertex_map() {
        let cycle = rot_g
            .at(w)
            .iter()
            .map(|f| {
                back.get(f)
                    .cloned()
                    .expect("g is flag-bijective at kept vertices")
            })
            .collect();
        inc.insert(v.clone(), cycle);
    }
    RotationSystem::new(comp.graph.clone(), inc)
}

/// One re-pairing solution with its rotation-equipped complement.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClassifiedSolution {
    /// Position in [`enumerate_re_pairings`] order.
    pub index: usize,
    pub complement: ComplementResult,
    pub rotation: RotationSystem,
    pub report: SurfaceReport,
}

/// Enumerates re-pairing solutions and reports the surface each complement
/// embeds in.
pub fn classify_re_pairings(
    re: &RotEmbedding,
    cap: usize,
    planar_only: bool,
) -> Result<Vec<ClassifiedSolution>, RotationError> {
    let mut out = Vec::new();
    for (index, solution) in enumerate_re_pairings(&re.embedding, cap)?
        .into_iter()
        .enumerate()
    {
        let (complement, rotation) = rot_complement(re, &solution)?;
        let report = genus_report(&rotation)?;
        if planar_only && !report.is_planar {
            continue;
        }
        out.push(ClassifiedSolution {
            index,
            complement,
            rotation,
            report,
        });
    }
    Ok(out)
}

/// A rewrite step with rotations carried through both squares.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RotRewrite {
    pub trace: RewriteTrace,
    pub complement_rotation: RotationSystem,
    pub result_rotation: RotationSystem,
}

pub fn rot_rewrite(
    rule: &RotRule,
    matching: &GraphMorphism,
    host: &RotationSystem,
    solution_index: Option<usize>,
) -> Result<RotRewrite, RotationError> {
    let trace = rewrite(&rule.rule, matching, solution_index)?;
    RotEmbedding::new(
        trace.boundary_embedding.clone(),
        rule.boundary.clone(),
        rule.lhs.clone(),
        host.clone(),
    )?;
    let complement_rotation = complement_rotation(
        &trace.boundary_embedding,
        &trace.complement,
        &rule.boundary,
        host,
    )?;
    let result_rotation = pushout_rotation(&trace.result, &rule.rhs, &complement_rotation)?;
    Ok(RotRewrite {
        trace,
        complement_rotation,
        result_rotation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::ArcId;

    fn bouquet(order: &[&str]) -> RotationSystem {
        let g = Arc::new(
            Graph::builder()
                .vertex("v")
                .edge("a", "v", "v")
                .edge("b", "v", "v")
                .build()
                .unwrap(),
        );
        RotationSystem::parse(g, [("v", order.to_vec())]).unwrap()
    }

    #[test]
    fn cycles_compare_up_to_rotation_only() {
        assert!(cyclic_eq(&[1, 2, 3], &[2, 3, 1]));
        assert!(!cyclic_eq(&[1, 2, 3], &[1, 3, 2]));
        assert_eq!(normalize_cycle(&[3, 1, 2]), vec![1, 2, 3]);
        assert!(cyclic_eq::<u8>(&[], &[]));
    }

    #[test]
    fn validation_spots_each_problem() {
        let g = Arc::new(
            Graph::builder()
                .vertex("v")
                .edge("a", "v", "v")
                .build()
                .unwrap(),
        );
        let missing = RotationSystem::parse(g.clone(), [("v", vec!["a.src"])]);
        assert!(matches!(
            missing,
            Err(RotationError::Invalid(r)) if matches!(r.issues[..], [RotationIssue::MissingFlag { .. }])
        ));
        let dup = RotationSystem::parse(g.clone(), [("v", vec!["a.src", "a.tgt", "a.src"])]);
        assert!(matches!(
            dup,
            Err(RotationError::Invalid(r)) if matches!(r.issues[..], [RotationIssue::DuplicateFlag { .. }])
        ));
        let extra = RotationSystem::parse(g.clone(), [("v", vec!["a.src", "a.tgt", "z.src"])]);
        assert!(matches!(
            extra,
            Err(RotationError::Invalid(r)) if matches!(r.issues[..], [RotationIssue::ExtraFlag { .. }])
        ));
        let isolated = Arc::new(Graph::builder().vertex("v").build().unwrap());
        assert!(RotationSystem::parse(isolated, [("v", vec![])]).is_ok());
    }

    #[test]
    fn rotations_are_stored_normalized() {
        assert_eq!(
            bouquet(&["b.src", "a.tgt", "a.src", "b.tgt"]),
            bouquet(&["a.src", "b.tgt", "b.src", "a.tgt"])
        );
        assert_ne!(
            bouquet(&["a.src", "b.src", "a.tgt", "b.tgt"]),
            bouquet(&["a.src", "b.tgt", "a.tgt", "b.src"])
        );
    }

    #[test]
    fn transposed_rotation_is_not_preserved() {
        let g = Arc::new(
            Graph::builder()
                .vertices(["v", "x", "y", "z"])
                .edge("a", "v", "x")
                .edge("b", "v", "y")
                .edge("c", "v", "z")
                .build()
                .unwrap(),
        );
        let leaves = |order: Vec<&'static str>| {
            RotationSystem::parse(
                g.clone(),
                [
                    ("v", order),
                    ("x", vec!["a.tgt"]),
                    ("y", vec!["b.tgt"]),
                    ("z", vec!["c.tgt"]),
                ],
            )
            .unwrap()
        };
        let abc = leaves(vec!["a.src", "b.src", "c.src"]);
        let acb = leaves(vec!["a.src", "c.src", "b.src"]);
        let id = GraphMorphism::identity(g.clone());
        assert!(check_rot_morphism(&id, &abc, &abc));
        assert!(!check_rot_morphism(&id, &abc, &acb));
        let forget = GraphMorphism::new(
            g.clone(),
            g.clone(),
            BTreeMap::new(),
            g.arcs()
                .map(|a| (a.clone(), a))
                .collect::<BTreeMap<ArcId, ArcId>>(),
        );
        assert!(check_rot_morphism(&forget, &abc, &acb));
    }
}
