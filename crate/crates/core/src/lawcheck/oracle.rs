//! Brute-force reference implementations. Nothing here calls into the
//! morphism, boundary or dpo algorithms it is used to check.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use itertools::Itertools;

use crate::boundary::{BoundaryEmbedding, Polarity};
use crate::graph::{ArcId, EdgeId, End, Flag, Graph, VertexId};
use crate::morphism::{BaseMap, GraphMorphism};
use crate::rotation::RotationSystem;

/// Flags at `v`, found by scanning the edge table.
pub fn flags_at(g: &Graph, v: &VertexId) -> BTreeSet<Flag> {
    let mut out = BTreeSet::new();
    for (e, x) in g.edges() {
        if &x.source == v {
            out.insert(Flag::new(e.clone(), End::Source));
        }
        if &x.target == v {
            out.insert(Flag::new(e.clone(), End::Target));
        }
    }
    out
}

pub fn degree(g: &Graph, v: &VertexId) -> usize {
    g.edges()
        .values()
        .map(|x| usize::from(&x.source == v) + usize::from(&x.target == v))
        .sum()
}

fn endpoint<'a>(g: &'a Graph, flag: &Flag) -> Option<&'a VertexId> {
    let x = g.edge(&flag.edge)?;
    Some(match flag.end {
        End::Source => &x.source,
        End::Target => &x.target,
    })
}

/// The image of a flag: defined when its vertex is mapped and its edge goes
/// to an edge.
pub fn map_flag(f: &GraphMorphism, flag: &Flag) -> Option<Flag> {
    let v = endpoint(f.dom(), flag)?;
    f.vertex_map().get(v)?;
    match f.arc_map().get(&ArcId::Edge(flag.edge.clone()))? {
        ArcId::Edge(e) => Some(Flag::new(e.clone(), flag.end)),
        ArcId::Circle(_) => None,
    }
}

/// Total on arcs, circles to circles, endpoints respected where defined.
pub fn is_pre_morphism(f: &GraphMorphism) -> bool {
    let (dom, cod) = (f.dom(), f.cod());
    if f.vertex_map()
        .iter()
        .any(|(v, w)| !dom.has_vertex(v) || !cod.has_vertex(w))
    {
        return false;
    }
    if f.arc_map().len() != dom.edges().len() + dom.circles().len() {
        return false;
    }
    for (a, b) in f.arc_map() {
        if !dom.has_arc(a) || !cod.has_arc(b) {
            return false;
        }
    }
    for o in dom.circles() {
        if !f.arc_map()[&ArcId::Circle(o.clone())].is_circle() {
            return false;
        }
    }
    for (e, x) in dom.edges() {
        let image = &f.arc_map()[&ArcId::Edge(e.clone())];
        for (v, end) in [(&x.source, End::Source), (&x.target, End::Target)] {
            if let Some(w) = f.vertex_map().get(v) {
                match image {
                    ArcId::Circle(_) => return false,
                    ArcId::Edge(e2) => {
                        let y = &cod.edges()[e2];
                        let there = if end == End::Source {
                            &y.source
                        } else {
                            &y.target
                        };
                        if there != w {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

pub fn flag_surjective_at(f: &GraphMorphism, v: &VertexId) -> bool {
    let Some(w) = f.vertex_map().get(v) else {
        return true;
    };
    let image: BTreeSet<Flag> = flags_at(f.dom(), v)
        .iter()
        .filter_map(|x| map_flag(f, x))
        .collect();
    flags_at(f.cod(), w).is_subset(&image)
}

pub fn flag_surjective(f: &GraphMorphism) -> bool {
    f.vertex_map().keys().all(|v| flag_surjective_at(f, v))
}

pub fn flag_injective(f: &GraphMorphism) -> bool {
    let mut seen = BTreeSet::new();
    for v in f.vertex_map().keys() {
        for x in flags_at(f.dom(), v) {
            if let Some(y) = map_flag(f, &x) {
                if !seen.insert(y) {
                    return false;
                }
            }
        }
    }
    true
}

pub fn flag_bijective(f: &GraphMorphism) -> bool {
    flag_surjective(f) && flag_injective(f)
}

pub fn is_morphism(f: &GraphMorphism) -> bool {
    is_pre_morphism(f) && flag_surjective(f)
}

pub fn is_embedding(f: &GraphMorphism) -> bool {
    let images: Vec<&VertexId> = f.vertex_map().values().collect();
    let circles: Vec<&ArcId> = f
        .arc_map()
        .iter()
        .filter(|(a, _)| a.is_circle())
        .map(|(_, b)| b)
        .collect();
    is_morphism(f) && images.iter().all_unique() && circles.iter().all_unique() && flag_injective(f)
}

/// `g ∘ f` from the tables.
pub fn compose(f: &GraphMorphism, g: &GraphMorphism) -> GraphMorphism {
    let vmap = f
        .vertex_map()
        .iter()
        .filter_map(|(v, w)| Some((v.clone(), g.vertex_map().get(w)?.clone())))
        .collect();
    let amap = f
        .arc_map()
        .iter()
        .filter_map(|(a, b)| Some((a.clone(), g.arc_map().get(b)?.clone())))
        .collect();
    GraphMorphism::new(f.dom().clone(), g.cod().clone(), vmap, amap)
}

/// Same tables (domain and codomain compared by value).
pub fn same_map(f: &GraphMorphism, g: &GraphMorphism) -> bool {
    f.vertex_map() == g.vertex_map() && f.arc_map() == g.arc_map()
}

pub fn forget(f: &GraphMorphism) -> BaseMap {
    let strip = |g: &Graph| {
        let mut b = Graph::builder();
        for v in g.vertices() {
            b.add_vertex(v.clone());
        }
        for (e, x) in g.edges() {
            b.add_edge(e.clone(), x.source.clone(), x.target.clone());
        }
        b.build().expect("a subgraph of a valid graph")
    };
    BaseMap {
        dom: strip(f.dom()),
        cod: strip(f.cod()),
        vmap: f.vertex_map().clone(),
        emap: f
            .arc_map()
            .iter()
            .filter_map(|(a, b)| match (a, b) {
                (ArcId::Edge(x), ArcId::Edge(y)) => Some((x.clone(), y.clone())),
                _ => None,
            })
            .collect(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Filter {
    /// Total, circles to circles, endpoints respected.
    PreMorphism,
    Morphism,
    Embedding,
}

/// Every vertex table (partial) and arc table (total) from `dom` to `cod`
/// passing `filter`. Vertices in `undefined` are never mapped. Arc images
/// are pruned by endpoint consistency as they are chosen.
pub fn enumerate_morphisms(
    dom: &Arc<Graph>,
    cod: &Arc<Graph>,
    filter: Filter,
    undefined: &BTreeSet<VertexId>,
) -> Vec<GraphMorphism> {
    let dv: Vec<&VertexId> = dom.vertices().iter().collect();
    let choices: Vec<Vec<Option<&VertexId>>> = dv
        .iter()
        .map(|v| {
            let mut c = vec![None];
            if !undefined.contains(*v) {
                c.extend(cod.vertices().iter().map(Some));
            }
            c
        })
        .collect();
    let arcs: Vec<ArcId> = dom.arcs().collect();
    let cod_arcs: Vec<ArcId> = cod.arcs().collect();
    let mut out = Vec::new();
    let tables: Box<dyn Iterator<Item = Vec<Option<&VertexId>>>> = if dv.is_empty() {
        Box::new(std::iter::once(Vec::new()))
    } else {
        Box::new(choices.into_iter().multi_cartesian_product())
    };
    for table in tables {
        let vmap: BTreeMap<VertexId, VertexId> = dv
            .iter()
            .zip(&table)
            .filter_map(|(v, w)| Some(((*v).clone(), (*w)?.clone())))
            .collect();
        if filter == Filter::Embedding && !vmap.values().all_unique() {
            continue;
        }
        let candidates: Vec<Vec<&ArcId>> = arcs
            .iter()
            .map(|a| {
                cod_arcs
                    .iter()
                    .filter(|b| match (a, b) {
                        (ArcId::Circle(_), b) => b.is_circle(),
                        (ArcId::Edge(e), ArcId::Circle(_)) => {
                            let x = &dom.edges()[e];
                            !vmap.contains_key(&x.source) && !vmap.contains_key(&x.target)
                        }
                        (ArcId::Edge(e), ArcId::Edge(e2)) => {
                            let (x, y) = (&dom.edges()[e], &cod.edges()[e2]);
                            vmap.get(&x.source).is_none_or(|w| *w == y.source)
                                && vmap.get(&x.target).is_none_or(|w| *w == y.target)
                        }
                    })
                    .collect()
            })
            .collect();
        if candidates.iter().any(Vec::is_empty) {
            continue;
        }
        let assignments: Box<dyn Iterator<Item = Vec<&ArcId>>> = if arcs.is_empty() {
            Box::new(std::iter::once(Vec::new()))
        } else {
            Box::new(candidates.into_iter().multi_cartesian_product())
        };
        for images in assignments {
            let amap: BTreeMap<ArcId, ArcId> = arcs
                .iter()
                .cloned()
                .zip(images.into_iter().cloned())
                .collect();
            let f = GraphMorphism::new(dom.clone(), cod.clone(), vmap.clone(), amap);
            let keep = match filter {
                Filter::PreMorphism => true,
                Filter::Morphism => flag_surjective(&f),
                Filter::Embedding => is_embedding(&f),
            };
            if keep {
                out.push(f);
            }
        }
    }
    out
}

/// Whether `a` is a rotation of `b`.
pub fn cyclic_equal(a: &[Flag], b: &[Flag]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    a.is_empty() || (0..b.len()).any(|shift| (0..a.len()).all(|i| a[i] == b[(i + shift) % b.len()]))
}

/// Rotation preservation at every mapped vertex, from the definition.
pub fn preserves_rotation(f: &GraphMorphism, dom: &RotationSystem, cod: &RotationSystem) -> bool {
    f.vertex_map().iter().all(|(v, w)| {
        let image: Option<Vec<Flag>> = dom.at(v).iter().map(|x| map_flag(f, x)).collect();
        image.is_some_and(|i| cyclic_equal(&i, cod.at(w)))
    })
}

/// All rotation systems of `g`, or `None` if there are more than `cap`.
pub fn all_rotations(g: &Arc<Graph>, cap: usize) -> Option<Vec<RotationSystem>> {
    let mut per_vertex: Vec<(VertexId, Vec<Vec<Flag>>)> = Vec::new();
    let mut total = 1usize;
    for v in g.vertices() {
        let flags: Vec<Flag> = flags_at(g, v).into_iter().collect();
        let orders: Vec<Vec<Flag>> = match flags.split_first() {
            None => vec![Vec::new()],
            Some((first, rest)) => rest
                .iter()
                .cloned()
                .permutations(rest.len())
                .map(|p| std::iter::once(first.clone()).chain(p).collect())
                .collect(),
        };
        total = total.saturating_mul(orders.len());
        if total > cap {
            return None;
        }
        per_vertex.push((v.clone(), orders));
    }
    if per_vertex.is_empty() {
        return Some(vec![
            RotationSystem::new(g.clone(), BTreeMap::new()).expect("empty rotation")
        ]);
    }
    let names: Vec<VertexId> = per_vertex.iter().map(|(v, _)| v.clone()).collect();
    Some(
        per_vertex
            .into_iter()
            .map(|(_, o)| o)
            .multi_cartesian_product()
            .map(|choice| {
                let inc = names.iter().cloned().zip(choice).collect();
                RotationSystem::new(g.clone(), inc).expect("orders of the flags at each vertex")
            })
            .collect(),
    )
}

/// Connected components of a blue/red multigraph on `nodes`, each with
/// whether it is a cycle (as many edges as nodes).
pub fn pairing_components(
    nodes: &BTreeSet<EdgeId>,
    blue: &BTreeSet<(EdgeId, EdgeId)>,
    red: &BTreeSet<(EdgeId, EdgeId)>,
) -> Vec<(BTreeSet<EdgeId>, bool)> {
    let mut comp: BTreeMap<EdgeId, usize> = nodes
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, n)| (n, i))
        .collect();
    let all: Vec<&(EdgeId, EdgeId)> = blue.iter().chain(red.iter()).collect();
    loop {
        let mut changed = false;
        for (a, b) in &all {
            let (ca, cb) = (comp[a], comp[b]);
            if ca != cb {
                let (lo, hi) = (ca.min(cb), ca.max(cb));
                for c in comp.values_mut() {
                    if *c == hi {
                        *c = lo;
                    }
                }
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let mut groups: BTreeMap<usize, BTreeSet<EdgeId>> = BTreeMap::new();
    for (n, c) in &comp {
        groups.entry(*c).or_default().insert(n.clone());
    }
    groups
        .into_values()
        .map(|members| {
            let edges = all.iter().filter(|(a, _)| members.contains(a)).count();
            let cycle = edges == members.len();
            (members, cycle)
        })
        .collect()
}

/// The host arc each boundary edge lands on, through the tables.
pub fn host_arcs(be: &BoundaryEmbedding) -> BTreeMap<EdgeId, ArcId> {
    be.boundary()
        .edges()
        .map(|e| {
            let mid = &be.leg().arc_map()[&ArcId::Edge(e.clone())];
            (e.clone(), be.matching().arc_map()[mid].clone())
        })
        .collect()
}

/// Blue edges `(positive, negative)`: boundary edges sent to one loop.
pub fn blue_edges(
    boundary: &crate::boundary::BoundaryGraph,
    leg: &GraphMorphism,
) -> BTreeSet<(EdgeId, EdgeId)> {
    let mut out = BTreeSet::new();
    for a in boundary.edges() {
        for b in boundary.edges() {
            if boundary.polarity(a) == Some(Polarity::Positive)
                && boundary.polarity(b) == Some(Polarity::Negative)
                && leg.arc_map().get(&ArcId::Edge(a.clone()))
                    == leg.arc_map().get(&ArcId::Edge(b.clone()))
            {
                out.insert((a.clone(), b.clone()));
            }
        }
    }
    out
}

/// Every set of pairs `(a, b)` using each element at most once.
fn partial_matchings(left: &[&EdgeId], right: &[&EdgeId]) -> Vec<BTreeSet<(EdgeId, EdgeId)>> {
    let Some((a, rest)) = left.split_first() else {
        return vec![BTreeSet::new()];
    };
    let mut out = partial_matchings(rest, right);
    for (i, b) in right.iter().enumerate() {
        let mut remaining = right.to_vec();
        remaining.remove(i);
        for mut m in partial_matchings(rest, &remaining) {
            m.insert(((*a).clone(), (*b).clone()));
            out.push(m);
        }
    }
    out
}

/// Every red half, as `(negative, positive)` pairs with at most one red
/// edge per node, whose components with the blue half are exactly the
/// preimages of host arcs, cycles exactly for circles.
pub fn brute_re_pairings(be: &BoundaryEmbedding) -> BTreeSet<BTreeSet<(EdgeId, EdgeId)>> {
    let b = be.boundary();
    let nodes: BTreeSet<EdgeId> = b.edges().cloned().collect();
    let blue = blue_edges(b, be.leg());
    let arcs = host_arcs(be);
    let mut classes: BTreeMap<&ArcId, BTreeSet<EdgeId>> = BTreeMap::new();
    for (e, a) in &arcs {
        classes.entry(a).or_default().insert(e.clone());
    }
    let neg: Vec<&EdgeId> = nodes
        .iter()
        .filter(|e| b.polarity(e) == Some(Polarity::Negative))
        .collect();
    let pos: Vec<&EdgeId> = nodes
        .iter()
        .filter(|e| b.polarity(e) == Some(Polarity::Positive))
        .collect();
    let mut out = BTreeSet::new();
    for red in partial_matchings(&neg, &pos) {
        let ok = pairing_components(&nodes, &blue, &red)
            .into_iter()
            .all(|(members, cycle)| {
                let arc = &arcs[members.iter().next().expect("components are non-empty")];
                classes[arc] == members && cycle == arc.is_circle()
            });
        if ok {
            out.insert(red);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::lawcheck::gen::exhaustive_graphs;

    #[test]
    fn enumeration_agrees_with_classify_on_small_graphs() {
        let graphs = exhaustive_graphs(2, 2, 1);
        let none = BTreeSet::new();
        for a in graphs.iter().step_by(3) {
            for b in graphs.iter().step_by(2) {
                for f in enumerate_morphisms(a, b, Filter::PreMorphism, &none) {
                    let class = f.classify();
                    assert_eq!(class.is_morphism(), is_morphism(&f), "{f:?}");
                    assert_eq!(class.is_embedding(), is_embedding(&f), "{f:?}");
                }
            }
        }
    }

    #[test]
    fn two_pair_circle_has_one_completion() {
        let re = fixtures::loop_on_circle();
        assert_eq!(brute_re_pairings(&re.embedding).len(), 1);
        let two = fixtures::two_solutions();
        assert_eq!(brute_re_pairings(&two.embedding).len(), 2);
    }

    #[test]
    fn rotations_of_a_bouquet() {
        // Two loops at one vertex: four flags, 3! cyclic orders.
        let g = fixtures::nested_bouquet().graph().clone();
        assert_eq!(all_rotations(&g, 100).unwrap().len(), 6);
        assert!(all_rotations(&g, 5).is_none());
    }
}
