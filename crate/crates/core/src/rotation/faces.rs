//! Face tracing and genus.

use std::collections::{BTreeMap, BTreeSet};

use super::{RotationError, RotationSystem};
use crate::graph::{CircleId, Flag, VertexId};

/// One face boundary.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum FaceWalk {
    /// Flags in walk order, starting from the least.
    Darts(Vec<Flag>),
    /// The single face around a vertex with no flags.
    Isolated(VertexId),
    /// One of the two faces a circle bounds.
    CircleSide(CircleId, u8),
}

/// Walks every face: leave along a flag, arrive at the opposite flag, then
/// turn to the successor of that flag in its vertex's rotation.
/// Faces are listed with dart faces first, in order of their least flag.
pub fn trace_faces(rs: &RotationSystem) -> Vec<FaceWalk> {
    let graph = rs.graph();
    let mut seen = BTreeSet::new();
    let mut faces = Vec::new();
    for start in graph.all_flags() {
        if seen.contains(&start) {
            continue;
        }
        let mut walk = Vec::new();
        let mut cur = start.clone();
        loop {
            seen.insert(cur.clone());
            walk.push(cur.clone());
            cur = rs
                .successor(&cur.opposite())
                .expect("valid rotation lists every flag")
                .clone();
            if cur == start {
                break;
            }
        }
        faces.push(FaceWalk::Darts(walk));
    }
    for v in graph.vertices() {
        if rs.at(v).is_empty() {
            faces.push(FaceWalk::Isolated(v.clone()));
        }
    }
    for o in graph.circles() {
        faces.push(FaceWalk::CircleSide(o.clone(), 0));
        faces.push(FaceWalk::CircleSide(o.clone(), 1));
    }
    faces
}

/// Surface data for one connected component.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ComponentSurface {
    pub vertices: BTreeSet<VertexId>,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub circle_count: usize,
    pub face_count: usize,
    pub euler_characteristic: i64,
    pub genus: u64,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SurfaceReport {
    pub components: Vec<ComponentSurface>,
    pub max_genus: u64,
    pub is_planar: bool,
    /// Set when there is more than one component: the rotation then fixes
    /// each component's surface but not how they sit together.
    pub per_component_only: bool,
}

/// Euler characteristic and genus of each connected component.
pub fn genus_report(rs: &RotationSystem) -> Result<SurfaceReport, RotationError> {
    let graph = rs.graph();
    let faces = trace_faces(rs);
    let mut face_of_vertex: BTreeMap<&VertexId, usize> = BTreeMap::new();
    for face in &faces {
        let v = match face {
            FaceWalk::Darts(walk) => graph.flag_vertex(&walk[0]).expect("own flag"),
            FaceWalk::Isolated(v) => v,
            FaceWalk::CircleSide(..) => continue,
        };
        *face_of_vertex.entry(v).or_insert(0) += 1;
    }
    let mut components = Vec::new();
    for comp in graph.connected_components() {
        let (v, e, o) = (comp.vertices.len(), comp.edge_count(), comp.circle_count());
        let mut f: usize = comp
            .vertices
            .iter()
            .map(|v| face_of_vertex.get(v).copied().unwrap_or(0))
            .sum();
        f += 2 * o;
        let chi = v as i64 - e as i64 + f as i64;
        if chi % 2 != 0 || chi > 2 {
            return Err(RotationError::OddEulerDefect(chi));
        }
        components.push(ComponentSurface {
            vertices: comp.vertices.clone(),
            vertex_count: v,
            edge_count: e,
            circle_count: o,
            face_count: f,
            euler_characteristic: chi,
            genus: ((2 - chi) / 2) as u64,
        });
    }
    let max_genus = components.iter().map(|c| c.genus).max().unwrap_or(0);
    Ok(SurfaceReport {
        per_component_only: components.len() > 1,
        is_planar: max_genus == 0,
        max_genus,
        components,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use std::sync::Arc;

    fn bouquet(order: &[&str]) -> RotationSystem {
        let mut b = Graph::builder().vertex("v");
        for name in ["a", "b"] {
            if order.iter().any(|f| f.starts_with(name)) {
                b = b.edge(name, "v", "v");
            }
        }
        RotationSystem::parse(Arc::new(b.build().unwrap()), [("v", order.to_vec())]).unwrap()
    }

    #[test]
    fn bouquet_faces() {
        let one = bouquet(&["a.src", "a.tgt"]);
        assert_eq!(trace_faces(&one).len(), 2);
        assert_eq!(genus_report(&one).unwrap().max_genus, 0);

        let interleaved = bouquet(&["a.src", "b.src", "a.tgt", "b.tgt"]);
        assert_eq!(trace_faces(&interleaved).len(), 1);
        let r = genus_report(&interleaved).unwrap();
        assert_eq!((r.components[0].euler_characteristic, r.max_genus), (0, 1));
        assert!(!r.is_planar);

        let nested = bouquet(&["a.src", "a.tgt", "b.src", "b.tgt"]);
        assert_eq!(trace_faces(&nested).len(), 3);
        assert!(genus_report(&nested).unwrap().is_planar);
    }

    #[test]
    fn isolated_vertex_and_circle() {
        let g = Arc::new(Graph::builder().vertex("v").circle("o").build().unwrap());
        let rs = RotationSystem::arbitrary(g);
        let r = genus_report(&rs).unwrap();
        assert_eq!(r.components.len(), 2);
        assert!(r.per_component_only && r.is_planar);
        assert_eq!(r.components[0].face_count, 1);
        assert_eq!(r.components[1].face_count, 2);
    }

    #[test]
    fn every_flag_in_one_face() {
        let rs = bouquet(&["a.src", "b.tgt", "a.tgt", "b.src"]);
        let mut all: Vec<Flag> = trace_faces(&rs)
            .into_iter()
            .flat_map(|f| match f {
                FaceWalk::Darts(w) => w,
                _ => Vec::new(),
            })
            .collect();
        all.sort();
        assert_eq!(all, rs.graph().all_flags().collect::<Vec<_>>());
    }
}
