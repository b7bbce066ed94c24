//! The files under `fixtures/` are exactly what the printer produces for
//! the library fixtures. Set `SURFACE_DPO_BLESS=1` to rewrite them.

use std::fs;
use std::path::PathBuf;

use surface_dpo::dpo::iso_check;
use surface_dpo::fixtures;
use surface_dpo::io::{self, Body};

fn dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

#[test]
fn corpus_files_match_the_printer() {
    let bless = std::env::var_os("SURFACE_DPO_BLESS").is_some();
    for (stem, doc) in fixtures::corpus() {
        let path = dir().join(format!("{stem}.json"));
        let text = io::print(&doc);
        if bless {
            fs::write(&path, &text).unwrap();
        }
        let on_disk =
            fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(on_disk, text, "{stem} is stale");
    }
}

#[test]
fn every_corpus_file_round_trips() {
    let mut seen = 0;
    for entry in fs::read_dir(dir()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_none_or(|e| e != "json") {
            continue;
        }
        let text = fs::read_to_string(&path).unwrap();
        let doc = io::parse(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        io::validate_document(&doc).unwrap();
        assert_eq!(io::print(&doc), text, "{}", path.display());
        assert_eq!(io::parse(&io::print(&doc)).unwrap(), doc);
        seen += 1;
    }
    assert_eq!(seen, fixtures::corpus().len());
}

#[test]
fn invalid_fixtures_are_rejected() {
    for entry in fs::read_dir(dir().join("invalid")).unwrap() {
        let path = entry.unwrap().path();
        let text = fs::read_to_string(&path).unwrap();
        assert!(io::parse(&text).is_err(), "{} parsed", path.display());
    }
}

#[test]
fn one_circle_host_round_trips_as_a_graph() {
    let (_, doc) = fixtures::corpus()
        .into_iter()
        .find(|(s, _)| *s == "one_circle")
        .unwrap();
    let Body::Graph(g) = &doc.body else { panic!() };
    let (back, _) = io::load_graph(g).unwrap();
    let original = fixtures::loop_on_circle().embedding.host().clone();
    assert!(iso_check(&back, &original).unwrap().is_some());
    assert_eq!(back.circles().len(), 1);
}

mod identity {
    use std::sync::Arc;

    use surface_dpo::boundary::{
        connected_around, enumerate_re_pairings, BoundaryGraph, DEFAULT_SOLUTION_CAP,
    };
    use surface_dpo::dpo::{iso_check, rewrite, RewriteRule};
    use surface_dpo::fixtures;
    use surface_dpo::graph::Graph;
    use surface_dpo::io::{self, Body};
    use surface_dpo::matcher::{find_matches, MatchOptions};
    use surface_dpo::morphism::GraphMorphism;
    use surface_dpo::rotation::{genus_report, rot_rewrite, RotationSystem};

    fn hosts() -> Vec<(&'static str, Arc<Graph>, Option<RotationSystem>)> {
        fixtures::corpus()
            .into_iter()
            .filter_map(|(stem, doc)| match &doc.body {
                Body::Graph(g) | Body::RotationGraph(g) => {
                    let (graph, rot) = io::load_graph(g).unwrap();
                    Some((stem, graph, rot))
                }
                _ => None,
            })
            .collect()
    }

    fn edgeless() -> BoundaryGraph {
        BoundaryGraph::from_polarities("d", "dbar", []).unwrap()
    }

    /// `L = R` is the host plus a fresh isolated boundary image.
    fn whole_host_rule(host: &Arc<Graph>) -> (RewriteRule, GraphMorphism) {
        let b = edgeless();
        let mut lb = host.to_builder();
        lb.add_vertex("boundary-image");
        let l = Arc::new(lb.build().unwrap());
        let leg = GraphMorphism::from_names(
            b.graph().clone(),
            l.clone(),
            &[("d", "boundary-image")],
            &[],
        )
        .unwrap();
        let vs: Vec<(String, String)> = host
            .vertices()
            .iter()
            .map(|v| (v.to_string(), v.to_string()))
            .collect();
        let arcs: Vec<(String, String)> = host
            .arcs()
            .map(|a| (a.name().to_string(), a.name().to_string()))
            .collect();
        let vs: Vec<(&str, &str)> = vs.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        let arcs: Vec<(&str, &str)> = arcs.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        let m = GraphMorphism::from_names(l, host.clone(), &vs, &arcs).unwrap();
        (RewriteRule::new(b, leg.clone(), leg).unwrap(), m)
    }

    #[test]
    fn degenerate_identity_rule_at_the_empty_match() {
        let b = edgeless();
        let l = Arc::new(Graph::builder().vertex("x").build().unwrap());
        let leg =
            GraphMorphism::from_names(b.graph().clone(), l.clone(), &[("d", "x")], &[]).unwrap();
        let rule = RewriteRule::new(b, leg.clone(), leg).unwrap();
        for (stem, host, _) in hosts() {
            let m = GraphMorphism::from_names(l.clone(), host.clone(), &[], &[]).unwrap();
            let trace = rewrite(&rule, &m, None).unwrap();
            assert!(
                iso_check(trace.result_graph(), &host).unwrap().is_some(),
                "{stem}"
            );
        }
    }

    #[test]
    fn whole_host_identity_rule() {
        let mut exercised = 0;
        for (stem, host, _) in hosts() {
            let (rule, m) = whole_host_rule(&host);
            // The empty host leaves only the degenerate rule.
            if host.vertices().is_empty() || !connected_around(rule.lhs(), &"boundary-image".into())
            {
                continue;
            }
            exercised += 1;
            let found = find_matches(&rule, &host, &MatchOptions::default()).unwrap();
            assert!(found.iter().any(|f| f.morphism() == &m), "{stem}");
            for f in &found {
                let trace = rewrite(&rule, f.morphism(), None).unwrap();
                assert!(
                    iso_check(trace.result_graph(), &host).unwrap().is_some(),
                    "{stem}"
                );
            }
        }
        assert!(exercised >= 5, "{exercised}");
    }

    #[test]
    fn corpus_identity_rules_at_every_match_and_solution() {
        let rules = [
            fixtures::identity_rule(&fixtures::strand_rule()),
            fixtures::identity_rule(&fixtures::subdivide_edge()),
        ];
        let mut steps = 0;
        for (stem, host, rot) in hosts() {
            for rr in &rules {
                for m in find_matches(&rr.rule, &host, &MatchOptions::default()).unwrap() {
                    let count = enumerate_re_pairings(&m.embedding, DEFAULT_SOLUTION_CAP)
                        .unwrap()
                        .len();
                    for s in 0..count {
                        let trace = rewrite(&rr.rule, m.morphism(), Some(s)).unwrap();
                        assert!(
                            iso_check(trace.result_graph(), &host).unwrap().is_some(),
                            "{stem}"
                        );
                        steps += 1;
                    }
                    if let Some(rh) = &rot {
                        let Ok(step) = rot_rewrite(rr, m.morphism(), rh, None) else {
                            continue;
                        };
                        let before = genus_report(rh).unwrap();
                        let after = genus_report(&step.result_rotation).unwrap();
                        assert_eq!(before.max_genus, after.max_genus, "{stem}");
                    }
                }
            }
        }
        assert!(steps > 0);
    }
}
