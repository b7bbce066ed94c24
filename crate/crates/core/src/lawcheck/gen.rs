//! Instance generators. Exhaustive when the budget is within
//! [`GenBudget::is_exhaustive`], seeded-random otherwise; either way a pure
//! function of the budget.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::boundary::{
    connected_around, BoundaryEmbedding, BoundaryGraph, PartitioningSpan, Polarity,
};
use crate::dpo::pushout;
use crate::graph::{ArcId, EdgeId, Graph, VertexId};
use crate::morphism::GraphMorphism;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GenBudget {
    pub max_vertices: usize,
    pub max_edges: usize,
    pub max_circles: usize,
    pub max_boundary_edges: usize,
    pub seed: u64,
    /// Instances drawn in random mode.
    pub samples: usize,
}

impl Default for GenBudget {
    fn default() -> Self {
        GenBudget::new(3, 4, 1, 3)
    }
}

impl GenBudget {
    pub const fn new(
        max_vertices: usize,
        max_edges: usize,
        max_circles: usize,
        max_boundary_edges: usize,
    ) -> Self {
        GenBudget {
            max_vertices,
            max_edges,
            max_circles,
            max_boundary_edges,
            seed: 0,
            samples: 1000,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_samples(mut self, samples: usize) -> Self {
        self.samples = samples;
        self
    }

    pub fn is_exhaustive(&self) -> bool {
        self.max_vertices <= 3
            && self.max_edges <= 4
            && self.max_circles <= 1
            && self.max_boundary_edges <= 3
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    /// Componentwise minimum of the size bounds; seed and samples from `self`.
    pub fn min(&self, other: &GenBudget) -> GenBudget {
        GenBudget {
            max_vertices: self.max_vertices.min(other.max_vertices),
            max_edges: self.max_edges.min(other.max_edges),
            max_circles: self.max_circles.min(other.max_circles),
            max_boundary_edges: self.max_boundary_edges.min(other.max_boundary_edges),
            ..*self
        }
    }
}

fn build_graph(n: usize, edges: &[(usize, usize)], circles: usize) -> Graph {
    let mut b = Graph::builder();
    for i in 0..n {
        b.add_vertex(format!("v{i}"));
    }
    for (k, (s, t)) in edges.iter().enumerate() {
        b.add_edge(format!("e{k}"), format!("v{s}"), format!("v{t}"));
    }
    for k in 0..circles {
        b.add_circle(format!("o{k}"));
    }
    b.build().expect("generated graphs are valid")
}

fn canonical_edges(n: usize, edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    (0..n)
        .permutations(n)
        .map(|p| {
            let mut mapped: Vec<(usize, usize)> =
                edges.iter().map(|&(s, t)| (p[s], p[t])).collect();
            mapped.sort_unstable();
            mapped
        })
        .min()
        .unwrap_or_default()
}

/// One graph per isomorphism class with at most the given numbers of
/// vertices, edges and circles.
pub fn exhaustive_graphs(
    max_vertices: usize,
    max_edges: usize,
    max_circles: usize,
) -> Vec<Arc<Graph>> {
    let mut out = Vec::new();
    for n in 0..=max_vertices {
        let pairs: Vec<(usize, usize)> = (0..n).cartesian_product(0..n).collect();
        let mut seen = BTreeSet::new();
        for k in 0..=max_edges {
            if k > 0 && pairs.is_empty() {
                break;
            }
            for combo in pairs.iter().copied().combinations_with_replacement(k) {
                if seen.insert(canonical_edges(n, &combo)) {
                    for o in 0..=max_circles {
                        out.push(Arc::new(build_graph(n, &combo, o)));
                    }
                }
            }
        }
    }
    out
}

pub fn random_graph(rng: &mut impl Rng, budget: &GenBudget) -> Graph {
    let n = rng.gen_range(0..=budget.max_vertices);
    let k = if n == 0 {
        0
    } else {
        rng.gen_range(0..=budget.max_edges)
    };
    let edges: Vec<(usize, usize)> = (0..k)
        .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
        .collect();
    let o = rng.gen_range(0..=budget.max_circles);
    build_graph(n, &edges, o)
}

pub fn gen_graphs(budget: &GenBudget) -> Vec<Arc<Graph>> {
    if budget.is_exhaustive() {
        exhaustive_graphs(budget.max_vertices, budget.max_edges, budget.max_circles)
    } else {
        let mut rng = budget.rng();
        (0..budget.samples)
            .map(|_| Arc::new(random_graph(&mut rng, budget)))
            .collect()
    }
}

/// How to build a random morphism into a given codomain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MorphismShape {
    Embedding,
    Morphism,
}

/// Builds a domain and a morphism into `cod` by choosing preimages of
/// vertices and covering each of their flags.
pub fn random_morphism(
    rng: &mut impl Rng,
    cod: &Arc<Graph>,
    shape: MorphismShape,
) -> GraphMorphism {
    let mut b = Graph::builder();
    let mut vmap = BTreeMap::new();
    let mut amap = BTreeMap::new();
    let mut pre: BTreeMap<&VertexId, Vec<String>> = BTreeMap::new();
    let mut fresh_v = 0usize;
    for w in cod.vertices() {
        let k = match shape {
            MorphismShape::Embedding => rng.gen_range(0..=1),
            MorphismShape::Morphism => [0, 1, 1, 2][rng.gen_range(0..4)],
        };
        for _ in 0..k {
            let v = format!("a{fresh_v}");
            fresh_v += 1;
            b.add_vertex(v.as_str());
            vmap.insert(VertexId::from(v.as_str()), w.clone());
            pre.entry(w).or_default().push(v);
        }
    }
    let mut loose: Vec<String> = Vec::new();
    for i in 0..rng.gen_range(0..=2) {
        let z = format!("z{i}");
        b.add_vertex(z.as_str());
        loose.push(z);
    }
    let need_loose = |b: &mut crate::graph::GraphBuilder,
                      loose: &mut Vec<String>,
                      rng: &mut dyn rand::RngCore| {
        if loose.is_empty() || rng.gen_bool(0.2) {
            let z = format!("z{}", loose.len());
            b.add_vertex(z.as_str());
            loose.push(z);
        }
        loose[rng.gen_range(0..loose.len())].clone()
    };
    let mut fresh_e = 0usize;
    let mut edge = |b: &mut crate::graph::GraphBuilder,
                    s: &str,
                    t: &str,
                    image: ArcId,
                    amap: &mut BTreeMap<ArcId, ArcId>| {
        let id = format!("d{fresh_e}");
        fresh_e += 1;
        b.add_edge(id.as_str(), s, t);
        amap.insert(ArcId::Edge(id.into()), image);
    };
    for (e, x) in cod.edges() {
        let image = ArcId::Edge(e.clone());
        let sources = pre.get(&x.source).cloned().unwrap_or_default();
        let mut targets = pre.get(&x.target).cloned().unwrap_or_default();
        targets.shuffle(rng);
        for s in &sources {
            let copies = match shape {
                MorphismShape::Embedding => 1,
                MorphismShape::Morphism => [1, 1, 1, 2][rng.gen_range(0..4)],
            };
            for c in 0..copies {
                let t = if c == 0 && !targets.is_empty() && rng.gen_bool(0.7) {
                    targets.pop().expect("non-empty")
                } else {
                    need_loose(&mut b, &mut loose, rng)
                };
                edge(&mut b, s, &t, image.clone(), &mut amap);
            }
        }
        for t in targets {
            let s = need_loose(&mut b, &mut loose, rng);
            edge(&mut b, &s, &t, image.clone(), &mut amap);
        }
        if shape == MorphismShape::Morphism && sources.is_empty() && rng.gen_bool(0.2) {
            let s = need_loose(&mut b, &mut loose, rng);
            let t = need_loose(&mut b, &mut loose, rng);
            edge(&mut b, &s, &t, image.clone(), &mut amap);
        }
    }
    let cod_arcs: Vec<ArcId> = cod.arcs().collect();
    if !cod_arcs.is_empty() && !loose.is_empty() {
        for _ in 0..rng.gen_range(0..=1) {
            let s = loose[rng.gen_range(0..loose.len())].clone();
            let t = loose[rng.gen_range(0..loose.len())].clone();
            let image = cod_arcs[rng.gen_range(0..cod_arcs.len())].clone();
            edge(&mut b, &s, &t, image, &mut amap);
        }
    }
    let mut fresh_o = 0usize;
    for o in cod.circles() {
        let k = match shape {
            MorphismShape::Embedding => rng.gen_range(0..=1),
            MorphismShape::Morphism => rng.gen_range(0..=2),
        };
        for _ in 0..k {
            let id = format!("c{fresh_o}");
            fresh_o += 1;
            b.add_circle(id.as_str());
            amap.insert(ArcId::Circle(id.into()), ArcId::Circle(o.clone()));
        }
    }
    let dom = Arc::new(b.build().expect("generated graphs are valid"));
    GraphMorphism::new(dom, cod.clone(), vmap, amap)
}

/// The part of a partitioning span on one side of the boundary graph.
/// Boundary edges are referred to by index, other vertices by index too.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct LegShape {
    others: usize,
    /// `(positive, negative)` boundary edges glued into one loop.
    loops: Vec<(usize, usize)>,
    /// Unlooped boundary edges and the vertex at their far end.
    attach: Vec<(usize, usize)>,
    extra: Vec<(usize, usize)>,
    circles: usize,
}

impl LegShape {
    fn relabel(&self, boundary: &[usize], others: &[usize]) -> LegShape {
        let mut loops: Vec<_> = self
            .loops
            .iter()
            .map(|&(p, n)| (boundary[p], boundary[n]))
            .collect();
        let mut attach: Vec<_> = self
            .attach
            .iter()
            .map(|&(e, v)| (boundary[e], others[v]))
            .collect();
        let mut extra: Vec<_> = self
            .extra
            .iter()
            .map(|&(s, t)| (others[s], others[t]))
            .collect();
        loops.sort_unstable();
        attach.sort_unstable();
        extra.sort_unstable();
        LegShape {
            others: self.others,
            loops,
            attach,
            extra,
            circles: self.circles,
        }
    }

    fn canonical(&self, boundary: &[usize]) -> LegShape {
        (0..self.others)
            .permutations(self.others)
            .map(|p| self.relabel(boundary, &p))
            .min()
            .expect("at least the identity")
    }
}

fn partial_matchings(pos: &[usize], neg: &[usize]) -> Vec<Vec<(usize, usize)>> {
    let Some((&p, rest)) = pos.split_first() else {
        return vec![Vec::new()];
    };
    let mut out = partial_matchings(rest, neg);
    for (i, &n) in neg.iter().enumerate() {
        let mut remaining = neg.to_vec();
        remaining.remove(i);
        for mut m in partial_matchings(rest, &remaining) {
            m.insert(0, (p, n));
            out.push(m);
        }
    }
    out
}

fn leg_shapes(polarity: &[Polarity], budget: &GenBudget) -> Vec<LegShape> {
    let identity: Vec<usize> = (0..polarity.len()).collect();
    let pos: Vec<usize> = identity
        .iter()
        .copied()
        .filter(|&i| polarity[i] == Polarity::Positive)
        .collect();
    let neg: Vec<usize> = identity
        .iter()
        .copied()
        .filter(|&i| polarity[i] == Polarity::Negative)
        .collect();
    let mut seen = BTreeSet::new();
    for others in 0..budget.max_vertices {
        let pairs: Vec<(usize, usize)> = (0..others).cartesian_product(0..others).collect();
        for loops in partial_matchings(&pos, &neg) {
            let looped: BTreeSet<usize> = loops.iter().flat_map(|&(p, n)| [p, n]).collect();
            let free: Vec<usize> = identity
                .iter()
                .copied()
                .filter(|i| !looped.contains(i))
                .collect();
            if others == 0 && !free.is_empty() {
                continue;
            }
            let used = loops.len() + free.len();
            if used > budget.max_edges {
                continue;
            }
            let ends: Vec<Vec<usize>> = if free.is_empty() {
                vec![Vec::new()]
            } else {
                free.iter()
                    .map(|_| 0..others)
                    .multi_cartesian_product()
                    .collect()
            };
            for end in ends {
                let attach: Vec<(usize, usize)> = free.iter().copied().zip(end).collect();
                for k in 0..=budget.max_edges - used {
                    if k > 0 && pairs.is_empty() {
                        break;
                    }
                    for extra in pairs.iter().copied().combinations_with_replacement(k) {
                        for circles in 0..=budget.max_circles {
                            let shape = LegShape {
                                others,
                                loops: loops.clone(),
                                attach: attach.clone(),
                                extra: extra.clone(),
                                circles,
                            };
                            seen.insert(shape.canonical(&identity));
                        }
                    }
                }
            }
        }
    }
    seen.into_iter().collect()
}

/// Which side of the boundary a leg shape is drawn on.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Left,
    Right,
}

fn build_leg(b: &BoundaryGraph, names: &[EdgeId], shape: &LegShape, side: Side) -> GraphMorphism {
    let (anchor, other, edge_prefix, circle_prefix) = match side {
        Side::Left => ("x", "u", "e", "o"),
        Side::Right => ("y", "w", "f", "k"),
    };
    let polarity = |i: usize| b.polarity(&names[i]).expect("boundary edge");
    let mut g = Graph::builder().vertex(anchor);
    for i in 0..shape.others {
        g.add_vertex(format!("{other}{i}"));
    }
    let mut amap = BTreeMap::new();
    let mut next = 0usize;
    let mut fresh = || {
        let id = format!("{edge_prefix}{next}");
        next += 1;
        id
    };
    for &(p, n) in &shape.loops {
        let id = fresh();
        g.add_edge(id.as_str(), anchor, anchor);
        for i in [p, n] {
            amap.insert(
                ArcId::Edge(names[i].clone()),
                ArcId::Edge(id.as_str().into()),
            );
        }
    }
    for &(i, v) in &shape.attach {
        let id = fresh();
        let far = format!("{other}{v}");
        // A positive edge leaves the boundary and enters the dual boundary.
        let outward = (polarity(i) == Polarity::Positive) == (side == Side::Left);
        if outward {
            g.add_edge(id.as_str(), anchor, far.as_str());
        } else {
            g.add_edge(id.as_str(), far.as_str(), anchor);
        }
        amap.insert(
            ArcId::Edge(names[i].clone()),
            ArcId::Edge(id.as_str().into()),
        );
    }
    for &(s, t) in &shape.extra {
        let id = fresh();
        g.add_edge(id.as_str(), format!("{other}{s}"), format!("{other}{t}"));
    }
    for i in 0..shape.circles {
        g.add_circle(format!("{circle_prefix}{i}"));
    }
    let graph = Arc::new(g.build().expect("generated graphs are valid"));
    let kept = match side {
        Side::Left => b.boundary(),
        Side::Right => b.dual_boundary(),
    };
    let vmap = BTreeMap::from([(kept.clone(), VertexId::from(anchor))]);
    GraphMorphism::new(b.graph().clone(), graph, vmap, amap)
}

fn boundary_of(polarity: &[Polarity]) -> (BoundaryGraph, Vec<EdgeId>) {
    let names: Vec<String> = (0..polarity.len()).map(|i| format!("b{i}")).collect();
    let b = BoundaryGraph::from_polarities(
        "d",
        "dbar",
        names
            .iter()
            .map(String::as_str)
            .zip(polarity.iter().copied()),
    )
    .expect("generated boundary graphs are valid");
    (b, names.iter().map(|n| EdgeId::from(n.as_str())).collect())
}

fn assemble(polarity: &[Polarity], left: &LegShape, right: &LegShape) -> PartitioningSpan {
    let (b, names) = boundary_of(polarity);
    let l = build_leg(&b, &names, left, Side::Left);
    let c = build_leg(&b, &names, right, Side::Right);
    PartitioningSpan::new(b, l, c).expect("generated spans are valid")
}

fn polarity_patterns(max_boundary_edges: usize) -> Vec<Vec<Polarity>> {
    let mut out = Vec::new();
    for k in 0..=max_boundary_edges {
        for p in (0..=k).rev() {
            let mut v = vec![Polarity::Positive; p];
            v.extend(std::iter::repeat_n(Polarity::Negative, k - p));
            out.push(v);
        }
    }
    out
}

/// Spans up to renaming of boundary edges of equal polarity and of the
/// vertices away from the boundary.
fn exhaustive_spans(budget: &GenBudget) -> Vec<PartitioningSpan> {
    let mut out = Vec::new();
    for polarity in polarity_patterns(budget.max_boundary_edges) {
        let k = polarity.len();
        let p = polarity
            .iter()
            .filter(|x| **x == Polarity::Positive)
            .count();
        let symmetries: Vec<Vec<usize>> = (0..p)
            .permutations(p)
            .cartesian_product((p..k).permutations(k - p))
            .map(|(a, b)| a.into_iter().chain(b).collect())
            .collect();
        let shapes = leg_shapes(&polarity, budget);
        let mut seen = BTreeSet::new();
        for left in &shapes {
            for right in &shapes {
                let key = symmetries
                    .iter()
                    .map(|s| (left.canonical(s), right.canonical(s)))
                    .min()
                    .expect("identity symmetry");
                if seen.insert(key) {
                    out.push(assemble(&polarity, left, right));
                }
            }
        }
    }
    out
}

fn random_leg(rng: &mut impl Rng, polarity: &[Polarity], budget: &GenBudget) -> LegShape {
    let mut pos: Vec<usize> = (0..polarity.len())
        .filter(|&i| polarity[i] == Polarity::Positive)
        .collect();
    let mut neg: Vec<usize> = (0..polarity.len())
        .filter(|&i| polarity[i] == Polarity::Negative)
        .collect();
    pos.shuffle(rng);
    neg.shuffle(rng);
    let most = pos.len().min(neg.len());
    let n_loops = rng.gen_range(0..=most);
    let mut loops: Vec<(usize, usize)> = pos
        .iter()
        .copied()
        .zip(neg.iter().copied())
        .take(n_loops)
        .collect();
    loops.sort_unstable();
    let looped: BTreeSet<usize> = loops.iter().flat_map(|&(p, n)| [p, n]).collect();
    let free: Vec<usize> = (0..polarity.len())
        .filter(|i| !looped.contains(i))
        .collect();
    let lowest = usize::from(!free.is_empty());
    let others = rng.gen_range(lowest..=budget.max_vertices.saturating_sub(1).max(lowest));
    let attach = free
        .iter()
        .map(|&i| (i, rng.gen_range(0..others)))
        .collect();
    let extra = if others == 0 {
        Vec::new()
    } else {
        (0..rng.gen_range(0..=budget.max_edges))
            .map(|_| (rng.gen_range(0..others), rng.gen_range(0..others)))
            .collect()
    };
    LegShape {
        others,
        loops,
        attach,
        extra,
        circles: rng.gen_range(0..=budget.max_circles),
    }
}

fn random_polarity(rng: &mut impl Rng, max_boundary_edges: usize) -> Vec<Polarity> {
    (0..rng.gen_range(0..=max_boundary_edges))
        .map(|_| {
            if rng.gen_bool(0.5) {
                Polarity::Positive
            } else {
                Polarity::Negative
            }
        })
        .collect()
}

pub fn random_span(rng: &mut impl Rng, budget: &GenBudget) -> PartitioningSpan {
    let polarity = random_polarity(rng, budget.max_boundary_edges);
    let left = random_leg(rng, &polarity, budget);
    let right = random_leg(rng, &polarity, budget);
    assemble(&polarity, &left, &right)
}

pub fn gen_spans(budget: &GenBudget) -> Vec<PartitioningSpan> {
    if budget.is_exhaustive() {
        exhaustive_spans(budget)
    } else {
        let mut rng = budget.rng();
        (0..budget.samples)
            .map(|_| random_span(&mut rng, budget))
            .collect()
    }
}

/// The boundary embedding `B -> L -> G` of a span whose left graph is
/// connected, with `G` its pushout.
pub fn embedding_of(span: &PartitioningSpan) -> Option<BoundaryEmbedding> {
    if !connected_around(span.left_graph(), span.left_boundary()) {
        return None;
    }
    let po = pushout(span).expect("generated spans have pushouts");
    Some(
        BoundaryEmbedding::new(span.boundary().clone(), span.left().clone(), po.m)
            .expect("pushout legs of generated spans are boundary embeddings"),
    )
}

pub fn gen_boundary_embeddings(budget: &GenBudget) -> Vec<BoundaryEmbedding> {
    if budget.is_exhaustive() {
        exhaustive_spans(budget)
            .iter()
            .filter_map(embedding_of)
            .collect()
    } else {
        let mut rng = budget.rng();
        let mut out = Vec::with_capacity(budget.samples);
        while out.len() < budget.samples {
            let span = random_span(&mut rng, budget);
            out.extend(embedding_of(&span));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::pairing_graph;

    #[test]
    fn one_vertex_one_edge_graphs() {
        let gs = exhaustive_graphs(1, 1, 0);
        assert_eq!(gs.len(), 3);
        let sizes: Vec<(usize, usize)> = gs
            .iter()
            .map(|g| (g.vertices().len(), g.edges().len()))
            .collect();
        assert_eq!(sizes, vec![(0, 0), (1, 0), (1, 1)]);
    }

    #[test]
    fn two_vertex_counts_match_brute_force() {
        // Isomorphism classes of directed multigraphs on two labelled
        // vertices with one edge: a loop, or an edge between them.
        let gs = exhaustive_graphs(2, 1, 0);
        let two: Vec<_> = gs.iter().filter(|g| g.vertices().len() == 2).collect();
        assert_eq!(two.len(), 3);
    }

    #[test]
    fn no_boundary_edges_means_edgeless_boundary() {
        let budget = GenBudget::new(2, 1, 0, 0);
        let spans = gen_spans(&budget);
        assert!(!spans.is_empty());
        assert!(spans
            .iter()
            .all(|s| s.boundary().graph().edges().is_empty()));
    }

    #[test]
    fn generated_embeddings_have_connected_patterns() {
        let budget = GenBudget::new(2, 2, 1, 2);
        for be in gen_boundary_embeddings(&budget) {
            assert!(connected_around(be.pattern(), be.pattern_boundary()));
        }
    }

    #[test]
    fn random_generation_is_seeded() {
        let budget = GenBudget::new(5, 6, 2, 4).with_samples(20).with_seed(7);
        assert_eq!(gen_spans(&budget), gen_spans(&budget));
        for s in gen_spans(&budget) {
            pairing_graph(&s).unwrap();
        }
        let other = gen_spans(&budget.with_seed(8));
        assert_ne!(gen_spans(&budget), other);
    }

    #[test]
    fn random_morphisms_classify_as_built() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let budget = GenBudget::new(4, 5, 1, 0);
        for _ in 0..200 {
            let cod = Arc::new(random_graph(&mut rng, &budget));
            let e = random_morphism(&mut rng, &cod, MorphismShape::Embedding);
            assert!(e.classify().is_embedding(), "{:?}", e.classify());
            let m = random_morphism(&mut rng, &cod, MorphismShape::Morphism);
            assert!(m.classify().is_morphism(), "{:?}", m.classify());
        }
    }
}
