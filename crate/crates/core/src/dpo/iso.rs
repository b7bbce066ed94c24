use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::graph::{ArcId, EdgeId, Graph, VertexId};

/// Search nodes `iso_check` may visit before giving up.
pub const DEFAULT_ISO_STEPS: usize = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsoError {
    #[error("isomorphism search exceeded {0} steps")]
    SizeLimitExceeded(usize),
}

/// A bijection of vertices and arcs preserving sources and targets.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Isomorphism {
    pub vertices: BTreeMap<VertexId, VertexId>,
    pub arcs: BTreeMap<ArcId, ArcId>,
}

pub fn iso_check(g1: &Graph, g2: &Graph) -> Result<Option<Isomorphism>, IsoError> {
    iso_check_with_limit(g1, g2, DEFAULT_ISO_STEPS)
}

struct Profile {
    order: Vec<VertexId>,
    index: BTreeMap<VertexId, usize>,
    /// `(out, in, loops)` per vertex, by index.
    signature: Vec<(usize, usize, usize)>,
    mult: BTreeMap<(usize, usize), usize>,
}

impl Profile {
    fn new(g: &Graph) -> Self {
        let order: Vec<VertexId> = g.vertices().iter().cloned().collect();
        let index: BTreeMap<VertexId, usize> = order
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i))
            .collect();
        let mut signature = vec![(0, 0, 0); order.len()];
        let mut mult = BTreeMap::new();
        for e in g.edges().values() {
            let (s, t) = (index[&e.source], index[&e.target]);
            signature[s].0 += 1;
            signature[t].1 += 1;
            if s == t {
                signature[s].2 += 1;
            }
            *mult.entry((s, t)).or_insert(0) += 1;
        }
        Profile {
            order,
            index,
            signature,
            mult,
        }
    }

    fn mult(&self, s: usize, t: usize) -> usize {
        self.mult.get(&(s, t)).copied().unwrap_or(0)
    }
}

pub fn iso_check_with_limit(
    g1: &Graph,
    g2: &Graph,
    max_steps: usize,
) -> Result<Option<Isomorphism>, IsoError> {
    if g1.vertices().len() != g2.vertices().len()
        || g1.edges().len() != g2.edges().len()
        || g1.circles().len() != g2.circles().len()
    {
        return Ok(None);
    }
    let (p1, p2) = (Profile::new(g1), Profile::new(g2));
    let mut sig1 = p1.signature.clone();
    let mut sig2 = p2.signature.clone();
    sig1.sort();
    sig2.sort();
    if sig1 != sig2 {
        return Ok(None);
    }

    // most constrained vertices first, then neighbours of already placed ones
    let n = p1.order.len();
    let mut placed = Vec::with_capacity(n);
    let mut used = vec![false; n];
    let adjacent = |a: usize, b: usize| p1.mult(a, b) + p1.mult(b, a) > 0;
    while placed.len() < n {
        let next = (0..n)
            .filter(|&i| !used[i])
            .max_by_key(|&i| {
                let links = placed.iter().filter(|&&j| adjacent(i, j)).count();
                let (o, inc, _) = p1.signature[i];
                (links, o + inc, std::cmp::Reverse(i))
            })
            .expect("some vertex left");
        used[next] = true;
        placed.push(next);
    }

    let mut assignment: Vec<Option<usize>> = vec![None; n];
    let mut taken = vec![false; n];
    let mut steps = 0usize;
    if !search(
        &p1,
        &p2,
        &placed,
        0,
        &mut assignment,
        &mut taken,
        &mut steps,
        max_steps,
    )? {
        return Ok(None);
    }

    let vertices: BTreeMap<VertexId, VertexId> = (0..n)
        .map(|i| {
            (
                p1.order[i].clone(),
                p2.order[assignment[i].expect("complete")].clone(),
            )
        })
        .collect();
    let group = |g: &Graph, p: &Profile, f: &dyn Fn(usize) -> usize| {
        let mut out: BTreeMap<(usize, usize), Vec<EdgeId>> = BTreeMap::new();
        for (id, e) in g.edges() {
            out.entry((f(p.index[&e.source]), f(p.index[&e.target])))
                .or_default()
                .push(id.clone());
        }
        out
    };
    let via = |i: usize| assignment[i].expect("complete");
    let edges1 = group(g1, &p1, &via);
    let edges2 = group(g2, &p2, &|i| i);
    let mut arcs = BTreeMap::new();
    for (key, list) in edges1 {
        for (a, b) in list.into_iter().zip(edges2[&key].iter()) {
            arcs.insert(ArcId::Edge(a), ArcId::Edge(b.clone()));
        }
    }
    for (a, b) in g1.circles().iter().zip(g2.circles()) {
        arcs.insert(ArcId::Circle(a.clone()), ArcId::Circle(b.clone()));
    }
    Ok(Some(Isomorphism { vertices, arcs }))
}

#[allow(clippy::too_many_arguments)]
fn search(
    p1: &Profile,
    p2: &Profile,
    order: &[usize],
    depth: usize,
    assignment: &mut Vec<Option<usize>>,
    taken: &mut Vec<bool>,
    steps: &mut usize,
    max_steps: usize,
) -> Result<bool, IsoError> {
    if depth == order.len() {
        return Ok(true);
    }
    let v = order[depth];
    for w in 0..p2.order.len() {
        if taken[w] || p1.signature[v] != p2.signature[w] {
            continue;
        }
        *steps += 1;
        if *steps > max_steps {
            return Err(IsoError::SizeLimitExceeded(max_steps));
        }
        let consistent = order[..depth].iter().all(|&u| {
            let x = assignment[u].expect("placed");
            p1.mult(u, v) == p2.mult(x, w) && p1.mult(v, u) == p2.mult(w, x)
        });
        if !consistent {
            continue;
        }
        assignment[v] = Some(w);
        taken[w] = true;
        if search(
            p1,
            p2,
            order,
            depth + 1,
            assignment,
            taken,
            steps,
            max_steps,
        )? {
            return Ok(true);
        }
        assignment[v] = None;
        taken[w] = false;
    }
    Ok(false)
}

/// Checks that `iso` really is an isomorphism `g1 -> g2`.
pub fn is_isomorphism(g1: &Graph, g2: &Graph, iso: &Isomorphism) -> bool {
    let vs: BTreeSet<&VertexId> = iso.vertices.values().collect();
    let arcs: BTreeSet<&ArcId> = iso.arcs.values().collect();
    if iso.vertices.len() != g1.vertices().len()
        || vs.len() != g2.vertices().len()
        || iso.arcs.len() != g1.arc_count()
        || arcs.len() != g2.arc_count()
    {
        return false;
    }
    g1.arcs().all(|a| {
        let Some(b) = iso.arcs.get(&a) else {
            return false;
        };
        match (a.as_edge(), b.as_edge()) {
            (Some(x), Some(y)) => {
                let (ex, ey) = (g1.edge(x).expect("own"), g2.edge(y));
                ey.is_some_and(|ey| {
                    iso.vertices.get(&ex.source) == Some(&ey.source)
                        && iso.vertices.get(&ex.target) == Some(&ey.target)
                })
            }
            (None, None) => g2.has_arc(b),
            _ => false,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle(names: [&str; 3]) -> Graph {
        Graph::builder()
            .vertices(names)
            .edge("e0", names[0], names[1])
            .edge("e1", names[1], names[2])
            .edge("e2", names[2], names[0])
            .build()
            .unwrap()
    }

    #[test]
    fn identity_and_relabeling() {
        let t = triangle(["a", "b", "c"]);
        let iso = iso_check(&t, &t).unwrap().unwrap();
        assert!(is_isomorphism(&t, &t, &iso));
        let u = triangle(["z", "x", "y"]);
        let iso = iso_check(&t, &u).unwrap().unwrap();
        assert!(is_isomorphism(&t, &u, &iso));
    }

    #[test]
    fn path_is_not_a_triangle() {
        let path = Graph::builder()
            .vertices(["a", "b", "c"])
            .edge("e0", "a", "b")
            .edge("e1", "b", "c")
            .edge("e2", "a", "c")
            .build()
            .unwrap();
        assert_eq!(iso_check(&path, &triangle(["a", "b", "c"])).unwrap(), None);
    }

    #[test]
    fn circles_and_direction_matter() {
        let one = Graph::builder().circle("o").build().unwrap();
        let two = Graph::builder().circle("o").circle("p").build().unwrap();
        assert_eq!(iso_check(&one, &two).unwrap(), None);
        let ab = Graph::builder()
            .vertices(["a", "b"])
            .edge("e", "a", "b")
            .edge("f", "a", "b")
            .build()
            .unwrap();
        let ba = Graph::builder()
            .vertices(["a", "b"])
            .edge("e", "a", "b")
            .edge("f", "b", "a")
            .build()
            .unwrap();
        assert_eq!(iso_check(&ab, &ba).unwrap(), None);
    }

    #[test]
    fn step_limit() {
        let g = Graph::builder()
            .vertices(["a", "b", "c", "d"])
            .build()
            .unwrap();
        assert_eq!(
            iso_check_with_limit(&g, &g, 2),
            Err(IsoError::SizeLimitExceeded(2))
        );
    }
}
