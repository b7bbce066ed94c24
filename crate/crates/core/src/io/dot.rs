//! Graphviz output for graph-bearing documents.

use std::fmt::Write;

use thiserror::Error;

use super::wire::{BoundaryGraphDoc, GraphDoc, TraceDoc};
use super::{Body, Document, Kind};
use crate::boundary::{PairingGraph, Polarity};
use crate::graph::EdgeId;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DotError {
    #[error("cannot draw a `{0}` document")]
    UnsupportedKind(Kind),
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Extra attributes for vertices drawn distinctly.
type Marks<'a> = &'a [(&'a str, &'a str)];

const BOUNDARY: &str = "shape=doublecircle";
const DUAL_BOUNDARY: &str = "shape=doubleoctagon";

fn cluster(out: &mut String, name: &str, prefix: &str, g: &GraphDoc, marks: Marks<'_>) {
    let _ = writeln!(out, "  subgraph {} {{", quote(&format!("cluster_{name}")));
    let _ = writeln!(out, "    label={};", quote(name));
    for v in &g.vertices {
        // Ports in rotation order under the name.
        let label = match g.rotation.as_ref().and_then(|r| r.get(v)) {
            Some(ports) if !ports.is_empty() => format!("{v}\n[{}]", ports.join(" ")),
            _ => v.clone(),
        };
        let mut attrs = format!("label={}", quote(&label));
        for (w, style) in marks {
            if w == v {
                attrs.push_str(", ");
                attrs.push_str(style);
            }
        }
        let _ = writeln!(out, "    {} [{attrs}];", quote(&format!("{prefix}{v}")));
    }
    for e in &g.edges {
        let _ = writeln!(
            out,
            "    {} -> {} [label={}];",
            quote(&format!("{prefix}{}", e.source)),
            quote(&format!("{prefix}{}", e.target)),
            quote(&e.id)
        );
    }
    for o in &g.circles {
        let _ = writeln!(
            out,
            "    {} [label={}, shape=circle, style=dashed];",
            quote(&format!("{prefix}circle:{o}")),
            quote(o)
        );
    }
    let _ = writeln!(out, "  }}");
}

fn boundary_marks(b: &BoundaryGraphDoc) -> Vec<(&str, &str)> {
    vec![
        (b.boundary.as_str(), BOUNDARY),
        (b.dual_boundary.as_str(), DUAL_BOUNDARY),
    ]
}

/// One row of nodes, red pairs bent above it and blue pairs below.
fn pairing_rows(
    out: &mut String,
    indent: &str,
    prefix: &str,
    nodes: &[(String, char)],
    blue: &[(String, String)],
    red: &[(String, String)],
) {
    let id = |n: &str| quote(&format!("{prefix}{n}"));
    for (n, pol) in nodes {
        let _ = writeln!(
            out,
            "{indent}{} [label={}, shape=box];",
            id(n),
            quote(&format!("{n}{pol}"))
        );
    }
    let row: Vec<String> = nodes.iter().map(|(n, _)| id(n)).collect();
    let _ = writeln!(out, "{indent}{{ rank=same; {} }}", row.join("; "));
    for (a, b) in red {
        let _ = writeln!(
            out,
            "{indent}{}:n -> {}:n [color=red, dir=none, constraint=false];",
            id(a),
            id(b)
        );
    }
    for (a, b) in blue {
        let _ = writeln!(
            out,
            "{indent}{}:s -> {}:s [color=blue, dir=none, constraint=false];",
            id(a),
            id(b)
        );
    }
}

type Cluster<'a> = (&'a str, &'a GraphDoc, Vec<(&'a str, &'a str)>);
type Pairing = (
    Vec<(String, char)>,
    Vec<(String, String)>,
    Vec<(String, String)>,
);

fn trace_pairing(t: &TraceDoc) -> Pairing {
    let be = &t.boundary_embedding;
    let g = &be.boundary_graph.graph;
    let nodes: Vec<(String, char)> = g
        .edges
        .iter()
        .map(|e| {
            (
                e.id.clone(),
                if e.source == be.boundary_graph.boundary {
                    '+'
                } else {
                    '-'
                },
            )
        })
        .collect();
    let host_arc = |e: &str| {
        be.boundary_leg
            .arcs
            .get(e)
            .and_then(|a| be.matching.arcs.get(a))
    };
    let mut blue = Vec::new();
    for (p, _) in nodes.iter().filter(|(_, pol)| *pol == '+') {
        for (n, _) in nodes.iter().filter(|(_, pol)| *pol == '-') {
            if host_arc(p).is_some() && host_arc(p) == host_arc(n) {
                blue.push((p.clone(), n.clone()));
            }
        }
    }
    let red = t
        .complement
        .red
        .iter()
        .map(|[n, p]| (n.clone(), p.clone()))
        .collect();
    (nodes, blue, red)
}

/// Draws every graph in `doc`, one cluster each. Boundary vertices are
/// double-bordered and rotations are listed under vertex names; a trace
/// also gets its pairing graph.
pub fn export_dot(doc: &Document) -> Result<String, DotError> {
    let graphs: Vec<Cluster<'_>> = match &doc.body {
        Body::Graph(g) | Body::RotationGraph(g) => vec![("graph", g, vec![])],
        Body::Morphism(m) => vec![("dom", &m.dom, vec![]), ("cod", &m.cod, vec![])],
        Body::Rule(r) => vec![
            (
                "boundary",
                &r.boundary_graph.graph,
                boundary_marks(&r.boundary_graph),
            ),
            ("lhs", &r.lhs, vec![]),
            ("rhs", &r.rhs, vec![]),
        ],
        Body::Span(s) => vec![
            (
                "boundary",
                &s.boundary_graph.graph,
                boundary_marks(&s.boundary_graph),
            ),
            ("left", &s.left, vec![]),
            ("right", &s.right, vec![]),
        ],
        Body::BoundaryEmbedding(b) => vec![
            (
                "boundary",
                &b.boundary_graph.graph,
                boundary_marks(&b.boundary_graph),
            ),
            ("pattern", &b.pattern, vec![]),
            ("host", &b.host, vec![]),
        ],
        Body::Pushout(p) => vec![("pushout", &p.graph, vec![])],
        Body::Complement(c) => vec![(
            "complement",
            &c.graph,
            vec![(c.dual_boundary.as_str(), DUAL_BOUNDARY)],
        )],
        Body::Trace(t) => vec![
            ("host", &t.boundary_embedding.host, vec![]),
            (
                "complement",
                &t.complement.graph,
                vec![(t.complement.dual_boundary.as_str(), DUAL_BOUNDARY)],
            ),
            ("result", &t.result.graph, vec![]),
        ],
        _ => return Err(DotError::UnsupportedKind(doc.kind())),
    };
    let mut out = String::from("digraph {\n");
    for (i, (name, g, marks)) in graphs.iter().enumerate() {
        let prefix = if graphs.len() == 1 {
            String::new()
        } else {
            format!("{i}:")
        };
        cluster(&mut out, name, &prefix, g, marks);
    }
    if let Body::Trace(t) = &doc.body {
        let (nodes, blue, red) = trace_pairing(t);
        let _ = writeln!(out, "  subgraph \"cluster_pairing\" {{");
        let _ = writeln!(out, "    label=\"pairing\";");
        pairing_rows(&mut out, "    ", "pairing:", &nodes, &blue, &red);
        let _ = writeln!(out, "  }}");
    }
    out.push_str("}\n");
    Ok(out)
}

/// A pairing graph on its own: blue pairs below the row of nodes, red above.
pub fn pairing_dot(p: &PairingGraph) -> String {
    let nodes: Vec<(String, char)> = p
        .nodes()
        .iter()
        .map(|(n, pol)| {
            (
                n.to_string(),
                if *pol == Polarity::Positive { '+' } else { '-' },
            )
        })
        .collect();
    let pairs = |s: &std::collections::BTreeSet<(EdgeId, EdgeId)>| -> Vec<(String, String)> {
        s.iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect()
    };
    let mut out = String::from("digraph {\n");
    pairing_rows(
        &mut out,
        "  ",
        "",
        &nodes,
        &pairs(p.blue()),
        &pairs(p.red()),
    );
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::graph_doc;

    #[test]
    fn draws_edges_and_rejects_reports() {
        let g = crate::fixtures::triangle_host();
        let doc = Document::new(Body::Graph(graph_doc(g.graph(), None)));
        let dot = export_dot(&doc).unwrap();
        assert!(dot.contains("\"p\" -> \"q\" [label=\"e1\"]"));
        let report = Document::new(Body::RePairings(crate::io::wire::RePairingsDoc {
            solutions: vec![],
        }));
        assert_eq!(
            export_dot(&report),
            Err(DotError::UnsupportedKind(Kind::RePairings))
        );
    }

    #[test]
    fn empty_graph_is_an_empty_digraph() {
        let doc = Document::new(Body::Graph(GraphDoc::default()));
        assert_eq!(
            export_dot(&doc).unwrap(),
            "digraph {\n  subgraph \"cluster_graph\" {\n    label=\"graph\";\n  }\n}\n"
        );
    }

    #[test]
    fn boundary_vertices_and_ports_are_visible() {
        let rs = crate::fixtures::partition_span();
        let doc = Document::new(Body::Span(crate::io::span_doc(&rs.span, Some(&rs))));
        let dot = export_dot(&doc).unwrap();
        assert_eq!(dot.matches(BOUNDARY).count(), 1);
        assert_eq!(dot.matches(DUAL_BOUNDARY).count(), 1);
        assert!(dot.contains(".src") || dot.contains(".tgt"));
    }

    #[test]
    fn pairing_rows_put_red_above_blue() {
        let two = crate::fixtures::two_solutions().embedding;
        let half = crate::boundary::blue_half(&two).unwrap();
        let sol = crate::boundary::solve_re_pairing(&two).unwrap();
        let dot = pairing_dot(&half.with_red(sol.red().clone()).unwrap());
        assert_eq!(dot.matches("color=blue").count(), half.blue().len());
        assert_eq!(dot.matches("color=red").count(), sol.red().len());
        assert!(dot
            .lines()
            .filter(|l| l.contains("color=red"))
            .all(|l| l.contains(":n -> ")));
        assert!(dot.contains("rank=same"));
    }
}
