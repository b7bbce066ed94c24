//! Executable versions of the structural lemmas: generators, brute-force
//! oracles and a registry of laws run over generated instances.

pub mod gen;
pub mod laws;
pub mod oracle;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::boundary::{
    enumerate_re_pairings, BoundaryEmbedding, PartitioningSpan, DEFAULT_SOLUTION_CAP,
};
use crate::dpo::{pushout, pushout_complement, PushoutResult};
use crate::graph::{ArcId, Flag, Graph, VertexId};
use crate::io::{self, wire, Body, Document, IoError};
use crate::morphism::{compose, GraphMorphism};
use crate::rotation::{check_rot_morphism, rot_pushout, RotSpan, RotationSystem};

pub use gen::GenBudget;
use gen::MorphismShape;
use laws::Verdict;
use oracle::Filter;

/// Graph bounds for laws quantified over pairs of composable morphisms,
/// where the exhaustive corpus grows with the cube of the graph count.
pub const COMPOSABLE_LIMIT: GenBudget = GenBudget::new(2, 2, 1, 0);
/// Graph bounds for laws quantified over single morphisms.
pub const PAIR_LIMIT: GenBudget = GenBudget::new(3, 3, 1, 0);
/// Test graphs for [`check_universal_property`].
pub const TARGET_LIMIT: GenBudget = GenBudget::new(2, 2, 1, 0);
/// Rotation systems tried per graph before falling back to one.
const ROTATION_CAP: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Law {
    FlagBijComposition,
    MorphismComposition,
    DegreePreservation,
    AlmostVertexInjective,
    SelfLoopCreation,
    PairingPathsOrCycles,
    PathInB,
    EdgesAndCircles,
    PushoutLegsAreEmbeddings,
    ComplementRoundTrip,
    ComplementUniqueness,
    RePairingExistence,
    RotPreservationImpliesFlagSurj,
    ForgetfulFunctoriality,
}

impl Law {
    pub const ALL: [Law; 14] = [
        Law::FlagBijComposition,
        Law::MorphismComposition,
        Law::DegreePreservation,
        Law::AlmostVertexInjective,
        Law::SelfLoopCreation,
        Law::PairingPathsOrCycles,
        Law::PathInB,
        Law::EdgesAndCircles,
        Law::PushoutLegsAreEmbeddings,
        Law::ComplementRoundTrip,
        Law::ComplementUniqueness,
        Law::RePairingExistence,
        Law::RotPreservationImpliesFlagSurj,
        Law::ForgetfulFunctoriality,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Law::FlagBijComposition => "FlagBijComposition",
            Law::MorphismComposition => "MorphismComposition",
            Law::DegreePreservation => "DegreePreservation",
            Law::AlmostVertexInjective => "AlmostVertexInjective",
            Law::SelfLoopCreation => "SelfLoopCreation",
            Law::PairingPathsOrCycles => "PairingPathsOrCycles",
            Law::PathInB => "PathInB",
            Law::EdgesAndCircles => "EdgesAndCircles",
            Law::PushoutLegsAreEmbeddings => "PushoutLegsAreEmbeddings",
            Law::ComplementRoundTrip => "ComplementRoundTrip",
            Law::ComplementUniqueness => "ComplementUniqueness",
            Law::RePairingExistence => "RePairingExistence",
            Law::RotPreservationImpliesFlagSurj => "RotPreservationImpliesFlagSurj",
            Law::ForgetfulFunctoriality => "ForgetfulFunctoriality",
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Law {
    type Err = LawError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Law::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| LawError::UnknownLaw(s.to_string()))
    }
}

#[derive(Debug, Error)]
pub enum LawError {
    #[error("unknown law `{0}`")]
    UnknownLaw(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("counterexample does not load: {0}")]
    Replay(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Random,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Exhaustive => "exhaustive",
            Mode::Random => "random",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub description: String,
    /// Documents that reproduce the failing instance.
    pub fixtures: Vec<Document>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawReport {
    pub law: String,
    pub mode: Mode,
    pub instances: u64,
    pub counterexample: Option<Counterexample>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// One generated input to a law.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    Morphism(GraphMorphism),
    Composable(GraphMorphism, GraphMorphism),
    Rotated(GraphMorphism, RotationSystem, RotationSystem),
    Span(PartitioningSpan),
    RotSpan(RotSpan),
    Embedding(BoundaryEmbedding),
}

fn morphism_body(f: &GraphMorphism) -> Document {
    Document::new(Body::Morphism(io::morphism_doc(f)))
}

impl Instance {
    pub fn to_documents(&self) -> Vec<Document> {
        match self {
            Instance::Morphism(f) => vec![morphism_body(f)],
            Instance::Composable(f, g) => vec![morphism_body(f), morphism_body(g)],
            Instance::Rotated(f, rd, rc) => vec![
                morphism_body(f),
                Document::new(Body::RotationGraph(io::graph_doc(f.dom(), Some(rd)))),
                Document::new(Body::RotationGraph(io::graph_doc(f.cod(), Some(rc)))),
            ],
            Instance::Span(s) => vec![Document::new(Body::Span(io::span_doc(s, None)))],
            Instance::RotSpan(rs) => {
                vec![Document::new(Body::Span(io::span_doc(&rs.span, Some(rs))))]
            }
            Instance::Embedding(be) => vec![Document::new(Body::BoundaryEmbedding(
                io::embedding_doc(be, None),
            ))],
        }
    }

    pub fn from_documents(docs: &[Document]) -> Result<Instance, IoError> {
        let bodies: Vec<&Body> = docs.iter().map(|d| &d.body).collect();
        let rotation = |g: &wire::GraphDoc| -> Result<RotationSystem, IoError> {
            io::load_graph(g)?
                .1
                .ok_or_else(|| IoError::invalid("rotation missing"))
        };
        match bodies.as_slice() {
            [Body::Morphism(f)] => Ok(Instance::Morphism(io::load_morphism(f)?)),
            [Body::Morphism(f), Body::Morphism(g)] => Ok(Instance::Composable(
                io::load_morphism(f)?,
                io::load_morphism(g)?,
            )),
            [Body::Morphism(f), Body::RotationGraph(d), Body::RotationGraph(c)] => {
                let f = io::load_morphism(f)?;
                let (rd, rc) = (rotation(d)?, rotation(c)?);
                let rd = rd
                    .relabel(f.dom().clone(), Clone::clone, Clone::clone)
                    .map_err(IoError::invalid)?;
                let rc = rc
                    .relabel(f.cod().clone(), Clone::clone, Clone::clone)
                    .map_err(IoError::invalid)?;
                Ok(Instance::Rotated(f, rd, rc))
            }
            [Body::Span(s)] => {
                let loaded = io::load_span(s)?;
                Ok(match loaded.rotated {
                    Some(rs) => Instance::RotSpan(rs),
                    None => Instance::Span(loaded.plain),
                })
            }
            [Body::BoundaryEmbedding(b)] => Ok(Instance::Embedding(io::load_embedding(b)?.plain)),
            _ => Err(IoError::invalid("fixtures do not describe a law instance")),
        }
    }
}

fn solutions_of(be: &BoundaryEmbedding) -> Result<Vec<crate::boundary::RePairingSolution>, String> {
    enumerate_re_pairings(be, DEFAULT_SOLUTION_CAP).map_err(|e| e.to_string())
}

/// Runs `law` on one instance, computing what the library produces for it.
pub fn run_instance(law: Law, instance: &Instance) -> Verdict {
    use Instance as I;
    use Law as L;
    match (law, instance) {
        (L::FlagBijComposition, I::Composable(f, g)) => {
            laws::flag_bij_composition(f, g, &compose(g, f).map_err(|e| e.to_string())?)
        }
        (L::MorphismComposition, I::Composable(f, g)) => {
            laws::morphism_composition(f, g, &compose(g, f).map_err(|e| e.to_string())?)
        }
        (L::ForgetfulFunctoriality, I::Composable(f, g)) => {
            let gf = compose(g, f).map_err(|e| e.to_string())?;
            laws::forgetful_functoriality(f, g, &gf.forget_circles())
        }
        (L::ForgetfulFunctoriality, I::RotSpan(rs)) => {
            let plain = pushout(&rs.span).map_err(|e| e.to_string())?;
            let (rotated, _) = rot_pushout(rs).map_err(|e| e.to_string())?;
            laws::forgetful_pushout(rs, &plain, &rotated)
        }
        (L::DegreePreservation, I::Morphism(f)) => laws::degree_preservation(f, &f.classify()),
        (L::AlmostVertexInjective, I::Morphism(f)) => {
            laws::almost_vertex_injective(f, f.classify().is_morphism() && f.is_flag_bijective())
        }
        (L::RotPreservationImpliesFlagSurj, I::Rotated(f, rd, rc)) => {
            laws::rot_preservation_implies_flag_surj(f, rd, rc, check_rot_morphism(f, rd, rc))
        }
        (L::SelfLoopCreation, I::Span(s)) => laws::self_loop_creation(s, &laws::span_pairing(s)?),
        (L::PairingPathsOrCycles, I::Span(s)) => {
            let p = laws::span_pairing(s)?;
            laws::pairing_paths_or_cycles(p.nodes(), p.blue(), p.red())
        }
        (L::PairingPathsOrCycles, I::Embedding(be)) => {
            for sol in solutions_of(be)? {
                let p = &sol.pairing;
                laws::pairing_paths_or_cycles(p.nodes(), p.blue(), p.red())?;
            }
            Ok(())
        }
        (L::PathInB | L::EdgesAndCircles | L::PushoutLegsAreEmbeddings, I::Span(s)) => {
            let po = pushout(s).map_err(|e| format!("pushout failed: {e}"))?;
            match law {
                L::PathInB => laws::path_in_b(s, &po),
                L::EdgesAndCircles => laws::edges_and_circles(s, &po),
                _ => laws::pushout_legs_are_embeddings(s, &po),
            }
        }
        (L::ComplementRoundTrip, I::Embedding(be)) => {
            for sol in solutions_of(be)? {
                let comp = pushout_complement(be, &sol).map_err(|e| e.to_string())?;
                laws::complement_round_trip(be, &comp)?;
            }
            Ok(())
        }
        (L::ComplementUniqueness, I::Embedding(be)) => {
            let comps = solutions_of(be)?
                .iter()
                .map(|s| pushout_complement(be, s).map_err(|e| e.to_string()))
                .collect::<Result<Vec<_>, _>>()?;
            laws::complement_uniqueness(be, &comps)
        }
        (L::RePairingExistence, I::Embedding(be)) => {
            laws::re_pairing_existence(be, &solutions_of(be)?)
        }
        (law, _) => Err(format!("{law} does not apply to this kind of instance")),
    }
}

/// Every morphism between every ordered pair of graphs.
fn all_morphisms(
    graphs: &[Arc<Graph>],
    filter: Filter,
) -> BTreeMap<(usize, usize), Vec<GraphMorphism>> {
    let none = BTreeSet::new();
    let mut out = BTreeMap::new();
    for (i, a) in graphs.iter().enumerate() {
        for (j, b) in graphs.iter().enumerate() {
            let found = oracle::enumerate_morphisms(a, b, filter, &none);
            if !found.is_empty() {
                out.insert((i, j), found);
            }
        }
    }
    out
}

fn random_shape(rng: &mut impl Rng) -> MorphismShape {
    if rng.gen_bool(0.5) {
        MorphismShape::Embedding
    } else {
        MorphismShape::Morphism
    }
}

fn morphism_instances(budget: &GenBudget) -> Vec<Instance> {
    if budget.is_exhaustive() {
        let graphs = gen::exhaustive_graphs(
            budget.max_vertices.min(PAIR_LIMIT.max_vertices),
            budget.max_edges.min(PAIR_LIMIT.max_edges),
            budget.max_circles.min(PAIR_LIMIT.max_circles),
        );
        all_morphisms(&graphs, Filter::Morphism)
            .into_values()
            .flatten()
            .map(Instance::Morphism)
            .collect()
    } else {
        let mut rng = budget.rng();
        (0..budget.samples)
            .map(|_| {
                let cod = Arc::new(gen::random_graph(&mut rng, budget));
                let shape = random_shape(&mut rng);
                Instance::Morphism(gen::random_morphism(&mut rng, &cod, shape))
            })
            .collect()
    }
}

fn composable_instances(budget: &GenBudget) -> Vec<Instance> {
    if budget.is_exhaustive() {
        let b = budget.min(&COMPOSABLE_LIMIT);
        let graphs = gen::exhaustive_graphs(b.max_vertices, b.max_edges, b.max_circles);
        let all = all_morphisms(&graphs, Filter::Morphism);
        let mut out = Vec::new();
        for ((_, j), fs) in &all {
            for (_, gs) in all.range((*j, 0)..=(*j, usize::MAX)) {
                for f in fs {
                    for g in gs {
                        out.push(Instance::Composable(f.clone(), g.clone()));
                    }
                }
            }
        }
        out
    } else {
        let mut rng = budget.rng();
        (0..budget.samples)
            .map(|_| {
                let c = Arc::new(gen::random_graph(&mut rng, budget));
                let shape = random_shape(&mut rng);
                let g = gen::random_morphism(&mut rng, &c, shape);
                let shape = random_shape(&mut rng);
                let f = gen::random_morphism(&mut rng, g.dom(), shape);
                Instance::Composable(f, g)
            })
            .collect()
    }
}

fn shuffled_rotation(rng: &mut (impl Rng + ?Sized), g: &Arc<Graph>) -> RotationSystem {
    let inc = g
        .vertices()
        .iter()
        .map(|v| {
            let mut flags: Vec<Flag> = oracle::flags_at(g, v).into_iter().collect();
            flags.shuffle(rng);
            (v.clone(), flags)
        })
        .collect();
    RotationSystem::new(g.clone(), inc).expect("a permutation of the flags at each vertex")
}

/// A rotation of the domain of `f` that follows `cod` where it can: flags
/// are ordered by the position of their image, unmapped flags last.
fn pulled_back(
    f: &GraphMorphism,
    cod: &RotationSystem,
    fallback: &RotationSystem,
) -> RotationSystem {
    let inc = f
        .dom()
        .vertices()
        .iter()
        .map(|v| {
            let mut flags: Vec<Flag> = fallback.at(v).to_vec();
            if let Some(w) = f.vertex_map().get(v) {
                let order = cod.at(w);
                flags.sort_by_key(|x| {
                    oracle::map_flag(f, x)
                        .and_then(|y| order.iter().position(|z| *z == y))
                        .unwrap_or(usize::MAX)
                });
            }
            (v.clone(), flags)
        })
        .collect();
    RotationSystem::new(f.dom().clone(), inc).expect("a permutation of the flags at each vertex")
}

fn rotated_instances(budget: &GenBudget) -> Vec<Instance> {
    let mut rng = budget.rng();
    let mut out = Vec::new();
    let mut add = |f: GraphMorphism, rng: &mut rand_chacha::ChaCha8Rng| {
        let cods = oracle::all_rotations(f.cod(), ROTATION_CAP)
            .unwrap_or_else(|| vec![shuffled_rotation(rng, f.cod())]);
        let base = RotationSystem::arbitrary(f.dom().clone());
        for rc in cods {
            let rd = pulled_back(&f, &rc, &base);
            out.push(Instance::Rotated(f.clone(), base.clone(), rc.clone()));
            out.push(Instance::Rotated(f.clone(), rd, rc));
        }
    };
    if budget.is_exhaustive() {
        let b = budget.min(&COMPOSABLE_LIMIT);
        let graphs = gen::exhaustive_graphs(b.max_vertices, b.max_edges, b.max_circles);
        for f in all_morphisms(&graphs, Filter::PreMorphism)
            .into_values()
            .flatten()
        {
            add(f, &mut rng);
        }
    } else {
        for _ in 0..budget.samples {
            let cod = Arc::new(gen::random_graph(&mut rng, budget));
            let shape = random_shape(&mut rng);
            let f = gen::random_morphism(&mut rng, &cod, shape);
            let f = if rng.gen_bool(0.5) {
                drop_an_edge(&mut rng, &f)
            } else {
                f
            };
            let rc = shuffled_rotation(&mut rng, f.cod());
            let base = shuffled_rotation(&mut rng, f.dom());
            let rd = pulled_back(&f, &rc, &base);
            out.push(Instance::Rotated(f, rd, rc));
        }
    }
    out
}

/// Removes one domain edge, which typically costs flag surjectivity.
fn drop_an_edge(rng: &mut impl Rng, f: &GraphMorphism) -> GraphMorphism {
    let edges: Vec<_> = f.dom().edges().keys().cloned().collect();
    let Some(victim) = edges.choose(rng) else {
        return f.clone();
    };
    let mut b = f.dom().to_builder();
    b.edges.retain(|(e, _, _)| e != victim);
    let dom = Arc::new(b.build().expect("removing an edge keeps a graph valid"));
    let mut amap = f.arc_map().clone();
    amap.remove(&ArcId::Edge(victim.clone()));
    GraphMorphism::new(dom, f.cod().clone(), f.vertex_map().clone(), amap)
}

/// Rotations on all three graphs of `span` that make both legs rotation
/// preserving: arbitrary on the boundary graph, carried over at the two
/// boundary images, shuffled elsewhere.
pub fn rotate_span(rng: &mut impl Rng, span: &PartitioningSpan) -> RotSpan {
    let b = span.boundary();
    let rb = shuffled_rotation(rng, b.graph());
    let carry = |leg: &GraphMorphism, at: &VertexId, rng: &mut dyn rand::RngCore| {
        let mut rs = shuffled_rotation(rng, leg.cod());
        let anchor = leg.vertex_map()[at].clone();
        let cycle: Vec<Flag> = rb
            .at(at)
            .iter()
            .map(|x| oracle::map_flag(leg, x).expect("leg keeps flags"))
            .collect();
        let mut inc = rs.inc().clone();
        inc.insert(anchor, cycle);
        rs = RotationSystem::new(leg.cod().clone(), inc)
            .expect("legs are flag bijective at the boundary");
        rs
    };
    let rl = carry(span.left(), b.boundary(), rng);
    let rc = carry(span.right(), b.dual_boundary(), rng);
    RotSpan::new(span.clone(), rb, rl, rc).expect("rotations carried along the legs")
}

fn span_instances(budget: &GenBudget) -> Vec<Instance> {
    gen::gen_spans(budget)
        .into_iter()
        .map(Instance::Span)
        .collect()
}

fn embedding_instances(budget: &GenBudget) -> Vec<Instance> {
    gen::gen_boundary_embeddings(budget)
        .into_iter()
        .map(Instance::Embedding)
        .collect()
}

/// The instances `law` is checked on for `budget`.
pub fn instances(law: Law, budget: &GenBudget) -> Vec<Instance> {
    use Law as L;
    match law {
        L::FlagBijComposition | L::MorphismComposition => composable_instances(budget),
        L::ForgetfulFunctoriality => {
            let mut out = composable_instances(budget);
            let mut rng = budget.rng();
            let spans = gen::gen_spans(&budget.min(&GenBudget::new(3, 3, 1, 3)));
            out.extend(
                spans
                    .iter()
                    .map(|s| Instance::RotSpan(rotate_span(&mut rng, s))),
            );
            out
        }
        L::DegreePreservation | L::AlmostVertexInjective => morphism_instances(budget),
        L::RotPreservationImpliesFlagSurj => rotated_instances(budget),
        L::SelfLoopCreation | L::PathInB | L::EdgesAndCircles | L::PushoutLegsAreEmbeddings => {
            span_instances(budget)
        }
        L::PairingPathsOrCycles => {
            let mut out = span_instances(budget);
            out.extend(embedding_instances(budget));
            out
        }
        L::ComplementRoundTrip | L::ComplementUniqueness | L::RePairingExistence => {
            embedding_instances(budget)
        }
    }
}

fn mode_of(budget: &GenBudget) -> Mode {
    if budget.is_exhaustive() {
        Mode::Exhaustive
    } else {
        Mode::Random
    }
}

/// Runs `law` over its instances for `budget`, stopping at the first
/// failure.
pub fn check_lemma(law: Law, budget: &GenBudget) -> LawReport {
    let mut report = LawReport {
        law: law.name().to_string(),
        mode: mode_of(budget),
        instances: 0,
        counterexample: None,
    };
    for instance in instances(law, budget) {
        report.instances += 1;
        if let Err(why) = run_instance(law, &instance) {
            report.counterexample = Some(Counterexample {
                description: why,
                fixtures: instance.to_documents(),
            });
            break;
        }
    }
    report
}

pub fn check_lemma_named(name: &str, budget: &GenBudget) -> Result<LawReport, LawError> {
    Ok(check_lemma(name.parse()?, budget))
}

/// Every registered law, run in parallel, reports ordered by law name.
pub fn check_all(budget: &GenBudget) -> Vec<LawReport> {
    let mut reports: Vec<LawReport> = std::thread::scope(|s| {
        let handles: Vec<_> = Law::ALL
            .into_iter()
            .map(|law| s.spawn(move || check_lemma(law, budget)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("law run panicked"))
            .collect()
    });
    reports.sort_by(|a, b| a.law.cmp(&b.law));
    reports
}

/// Re-runs a counterexample from its fixtures: `Ok(Err(_))` means it still
/// fails.
pub fn replay(law: Law, counterexample: &Counterexample) -> Result<Verdict, LawError> {
    let instance = Instance::from_documents(&counterexample.fixtures)
        .map_err(|e| LawError::Replay(e.to_string()))?;
    Ok(run_instance(law, &instance))
}

type TableKey = (BTreeMap<VertexId, VertexId>, BTreeMap<ArcId, ArcId>);

fn key(f: &GraphMorphism) -> TableKey {
    (f.vertex_map().clone(), f.arc_map().clone())
}

/// Pairs examined before giving up.
const UNIVERSAL_PAIR_CAP: usize = 5_000_000;

/// For every target graph within `budget` and every pair of morphisms out
/// of the span's legs into it that agree on the boundary graph, counts the
/// morphisms out of the pushout through which both factor. Passes iff the
/// count is always one.
pub fn check_universal_property(
    span: &PartitioningSpan,
    po: &PushoutResult,
    budget: &GenBudget,
) -> Result<LawReport, LawError> {
    if !budget.is_exhaustive() {
        return Err(LawError::BudgetExceeded(
            "target graphs must be enumerable".into(),
        ));
    }
    let mut report = LawReport {
        law: "UniversalProperty".into(),
        mode: Mode::Exhaustive,
        instances: 0,
        counterexample: None,
    };
    let targets = gen::exhaustive_graphs(budget.max_vertices, budget.max_edges, budget.max_circles);
    let x = BTreeSet::from([span.left_boundary().clone()]);
    let y = BTreeSet::from([span.right_boundary().clone()]);
    let none = BTreeSet::new();
    let mut examined = 0usize;
    for t in &targets {
        let mut by_boundary: BTreeMap<TableKey, (Vec<GraphMorphism>, Vec<GraphMorphism>)> =
            BTreeMap::new();
        for m2 in oracle::enumerate_morphisms(span.left_graph(), t, Filter::Morphism, &x) {
            by_boundary
                .entry(key(&oracle::compose(span.left(), &m2)))
                .or_default()
                .0
                .push(m2);
        }
        for g2 in oracle::enumerate_morphisms(span.right_graph(), t, Filter::Morphism, &y) {
            by_boundary
                .entry(key(&oracle::compose(span.right(), &g2)))
                .or_default()
                .1
                .push(g2);
        }
        let mut factor: BTreeMap<(TableKey, TableKey), usize> = BTreeMap::new();
        for f in oracle::enumerate_morphisms(&po.graph, t, Filter::Morphism, &none) {
            let k = (
                key(&oracle::compose(&po.m, &f)),
                key(&oracle::compose(&po.g, &f)),
            );
            *factor.entry(k).or_default() += 1;
        }
        for (ms, gs) in by_boundary.values() {
            examined += ms.len() * gs.len();
            if examined > UNIVERSAL_PAIR_CAP {
                return Err(LawError::BudgetExceeded(format!(
                    "more than {UNIVERSAL_PAIR_CAP} cospans"
                )));
            }
            for m2 in ms {
                for g2 in gs {
                    report.instances += 1;
                    let count = factor.get(&(key(m2), key(g2))).copied().unwrap_or(0);
                    if count != 1 {
                        report.counterexample = Some(Counterexample {
                            description: format!("{count} mediating morphisms"),
                            fixtures: vec![
                                Document::new(Body::Span(io::span_doc(span, None))),
                                Document::new(Body::Graph(io::graph_doc(t, None))),
                                morphism_body(m2),
                                morphism_body(g2),
                            ],
                        });
                        return Ok(report);
                    }
                }
            }
        }
    }
    Ok(report)
}

fn document_value(doc: &Document) -> serde_json::Value {
    serde_json::from_str(&io::print(doc)).expect("printed documents are JSON")
}

pub fn report_doc(reports: &[LawReport]) -> wire::LawReportDoc {
    wire::LawReportDoc {
        reports: reports
            .iter()
            .map(|r| wire::LawEntryDoc {
                law: r.law.clone(),
                mode: r.mode.name().to_string(),
                instances: r.instances,
                passed: r.passed(),
                counterexample: r.counterexample.as_ref().map(|c| wire::CounterexampleDoc {
                    description: c.description.clone(),
                    fixtures: c.fixtures.iter().map(document_value).collect(),
                }),
            })
            .collect(),
    }
}

/// The counterexample fixtures of a law report entry, parsed back.
pub fn counterexample_from_doc(doc: &wire::CounterexampleDoc) -> Result<Counterexample, IoError> {
    Ok(Counterexample {
        description: doc.description.clone(),
        fixtures: doc
            .fixtures
            .iter()
            .map(|v| io::parse(&serde_json::to_string(v).expect("values serialize")))
            .collect::<Result<_, _>>()?,
    })
}
