//! Plain data shapes of every document body. Field order here is the key
//! order on output.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct EdgeDoc {
    pub id: String,
    pub source: String,
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct GraphDoc {
    #[serde(default)]
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<EdgeDoc>,
    #[serde(default)]
    pub circles: Vec<String>,
    /// Flags around each vertex in cyclic order, written `edge.src` or
    /// `edge.tgt`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rotation: Option<BTreeMap<String, Vec<String>>>,
}

/// A morphism's tables. Absent vertex keys are undefined; arcs are named
/// without saying whether they are edges or circles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct MapTable {
    #[serde(default)]
    pub vertices: BTreeMap<String, String>,
    #[serde(default)]
    pub arcs: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryGraphDoc {
    pub graph: GraphDoc,
    pub boundary: String,
    pub dual_boundary: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismDoc {
    pub dom: GraphDoc,
    pub cod: GraphDoc,
    pub map: MapTable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanDoc {
    pub boundary_graph: BoundaryGraphDoc,
    pub left: GraphDoc,
    pub right: GraphDoc,
    pub left_leg: MapTable,
    pub right_leg: MapTable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleDoc {
    pub boundary_graph: BoundaryGraphDoc,
    pub lhs: GraphDoc,
    pub rhs: GraphDoc,
    pub lhs_leg: MapTable,
    pub rhs_leg: MapTable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryEmbeddingDoc {
    pub boundary_graph: BoundaryGraphDoc,
    pub pattern: GraphDoc,
    pub host: GraphDoc,
    pub boundary_leg: MapTable,
    pub matching: MapTable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchDoc {
    pub matches: Vec<MapTable>,
}

/// A red pairing edge, negative node first.
pub type RedDoc = [String; 2];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplementDoc {
    pub solution_index: usize,
    pub red: Vec<RedDoc>,
    pub graph: GraphDoc,
    pub dual_boundary: String,
    pub boundary_map: MapTable,
    pub host_map: MapTable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairingClassDoc {
    pub nodes: Vec<String>,
    pub cycle: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PushoutDoc {
    pub graph: GraphDoc,
    pub left_map: MapTable,
    pub right_map: MapTable,
    pub arc_classes: BTreeMap<String, PairingClassDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceDoc {
    pub boundary_embedding: BoundaryEmbeddingDoc,
    pub complement: ComplementDoc,
    pub result: PushoutDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentDoc {
    pub vertices: Vec<String>,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub circle_count: usize,
    pub face_count: usize,
    pub euler_characteristic: i64,
    pub genus: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceReportDoc {
    pub components: Vec<ComponentDoc>,
    pub max_genus: u64,
    pub is_planar: bool,
    pub per_component_only: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionDoc {
    pub index: usize,
    pub red: Vec<RedDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub surface: Option<SurfaceReportDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RePairingsDoc {
    pub solutions: Vec<SolutionDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleDoc {
    pub description: String,
    /// Complete documents that reproduce the failure.
    pub fixtures: Vec<serde_json::Value>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawEntryDoc {
    pub law: String,
    pub mode: String,
    pub instances: u64,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<CounterexampleDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawReportDoc {
    pub reports: Vec<LawEntryDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationDoc {
    pub class: String,
    pub violations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationDoc {
    pub kind: String,
    pub ok: bool,
    pub issues: Vec<String>,
}
