use std::path::PathBuf;
use std::process::Command;

use surface_dpo::cli::{run, EXIT_INVALID, EXIT_OK, EXIT_USAGE};
use surface_dpo::dpo::iso_check;
use surface_dpo::io::{self, Body};

fn fx(stem: &str) -> String {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    dir.join(format!("{stem}.json")).display().to_string()
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("surface-dpo").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn body(stdout: &str) -> Body {
    io::parse(stdout)
        .unwrap_or_else(|e| panic!("{e}\n{stdout}"))
        .body
}

#[test]
fn exit_code_matrix() {
    let bad_paths = [
        "missing_self_loop_flag",
        "unknown_field",
        "wrong_version",
        "unknown_kind",
        "dangling_edge",
        "syntax_error",
    ];
    let mut cases: Vec<(Vec<String>, i32)> = vec![
        (vec!["validate".into(), fx("triangle_host")], EXIT_OK),
        (vec!["validate".into(), fx("does_not_exist")], EXIT_USAGE),
        (
            vec!["classify-morphism".into(), fx("fold_onto_edge")],
            EXIT_OK,
        ),
        (
            vec!["classify-morphism".into(), fx("not_flag_surjective")],
            EXIT_INVALID,
        ),
        (
            vec!["classify-morphism".into(), fx("circle_to_edge")],
            EXIT_INVALID,
        ),
        (
            vec!["classify-morphism".into(), fx("triangle_host")],
            EXIT_USAGE,
        ),
        (vec!["pushout".into(), fx("partition_span")], EXIT_OK),
        (
            vec!["pushout".into(), fx("partition_span"), "--rotations".into()],
            EXIT_OK,
        ),
        (
            vec!["pushout".into(), fx("edgeless_span"), "--rotations".into()],
            EXIT_INVALID,
        ),
        (vec!["pushout".into(), fx("loop_on_circle")], EXIT_USAGE),
        (vec!["complement".into(), fx("loop_on_circle")], EXIT_OK),
        (
            vec![
                "complement".into(),
                fx("two_solutions"),
                "--solution".into(),
                "1".into(),
                "--rotations".into(),
            ],
            EXIT_OK,
        ),
        (
            vec![
                "complement".into(),
                fx("two_solutions"),
                "--solution".into(),
                "2".into(),
            ],
            EXIT_USAGE,
        ),
        (
            vec![
                "complement".into(),
                fx("two_solutions"),
                "--solution".into(),
                "x".into(),
            ],
            EXIT_USAGE,
        ),
        (vec!["repairings".into(), fx("two_solutions")], EXIT_OK),
        (
            vec![
                "repairings".into(),
                fx("strand_embedding"),
                "--classify-genus".into(),
            ],
            EXIT_OK,
        ),
        (
            vec!["match".into(), fx("strand_rule"), fx("strand_host")],
            EXIT_OK,
        ),
        (
            vec![
                "match".into(),
                fx("strand_rule"),
                fx("strand_host"),
                "--rotations".into(),
            ],
            EXIT_OK,
        ),
        (
            vec![
                "match".into(),
                fx("strand_rule"),
                fx("triangle_plain"),
                "--rotations".into(),
            ],
            EXIT_INVALID,
        ),
        (
            vec![
                "rewrite".into(),
                fx("strand_identity_rule"),
                fx("strand_host"),
            ],
            EXIT_OK,
        ),
        (
            vec![
                "rewrite".into(),
                fx("subdivide_edge"),
                fx("triangle_host"),
                "--rotations".into(),
            ],
            EXIT_OK,
        ),
        (
            vec![
                "rewrite".into(),
                fx("strand_rule"),
                fx("strand_host"),
                "--match".into(),
                "7".into(),
            ],
            EXIT_USAGE,
        ),
        (
            vec![
                "rewrite".into(),
                fx("strand_rule"),
                fx("strand_host"),
                "--solution".into(),
                "9".into(),
            ],
            EXIT_USAGE,
        ),
        (
            vec!["rewrite".into(), fx("subdivide_edge"), fx("single_loop")],
            EXIT_INVALID,
        ),
        (vec!["genus".into(), fx("interleaved_bouquet")], EXIT_OK),
        (vec!["genus".into(), fx("triangle_plain")], EXIT_USAGE),
        (
            vec![
                "lawcheck".into(),
                "--law".into(),
                "PathInB".into(),
                "--budget".into(),
                "2,2,1,2".into(),
            ],
            EXIT_OK,
        ),
        (
            vec!["lawcheck".into(), "--law".into(), "NoSuchLaw".into()],
            EXIT_USAGE,
        ),
        (
            vec!["lawcheck".into(), "--budget".into(), "1,2".into()],
            EXIT_USAGE,
        ),
        (vec!["export-dot".into(), fx("partition_span")], EXIT_OK),
        (vec!["export-dot".into(), fx("unknown_field")], EXIT_USAGE),
        (vec!["frobnicate".into()], EXIT_USAGE),
        (vec![], EXIT_USAGE),
        (vec!["--help".into()], EXIT_OK),
    ];
    for stem in bad_paths {
        cases.push((
            vec!["validate".into(), fx(&format!("invalid/{stem}"))],
            EXIT_INVALID,
        ));
    }
    for (args, expected) in cases {
        let argv: Vec<&str> = args.iter().map(String::as_str).collect();
        let (code, out, err) = cli(&argv);
        assert_eq!(code, expected, "{argv:?}\nstdout: {out}\nstderr: {err}");
        if code == EXIT_USAGE {
            assert!(out.is_empty(), "{argv:?} wrote to stdout");
            assert!(!err.is_empty(), "{argv:?} gave no diagnostic");
        }
    }
}

#[test]
fn lenient_parsing_accepts_unknown_fields() {
    let path = fx("invalid/unknown_field");
    assert_eq!(cli(&["validate", &path]).0, EXIT_INVALID);
    let (code, out, _) = cli(&["--lenient", "validate", &path]);
    assert_eq!(code, EXIT_OK);
    let Body::Validation(v) = body(&out) else {
        panic!()
    };
    assert!(v.ok);
    assert_eq!(v.kind, "rotation_graph");
}

#[test]
fn validation_names_the_missing_flag() {
    let (_, out, _) = cli(&["validate", &fx("invalid/missing_self_loop_flag")]);
    let Body::Validation(v) = body(&out) else {
        panic!()
    };
    assert!(!v.ok);
    assert!(
        v.issues
            .iter()
            .any(|i| i.contains("a.tgt") && i.contains("missing")),
        "{:?}",
        v.issues
    );
}

#[test]
fn genus_of_the_interleaved_bouquet() {
    let (_, out, _) = cli(&["genus", &fx("interleaved_bouquet")]);
    let Body::SurfaceReport(r) = body(&out) else {
        panic!()
    };
    assert_eq!(r.max_genus, 1);
    let (_, out, _) = cli(&["genus", &fx("nested_bouquet")]);
    let Body::SurfaceReport(r) = body(&out) else {
        panic!()
    };
    assert_eq!(r.max_genus, 0);
}

#[test]
fn strand_fixture_has_one_non_planar_solution() {
    let (_, out, _) = cli(&["repairings", &fx("strand_embedding"), "--classify-genus"]);
    let Body::RePairings(r) = body(&out) else {
        panic!()
    };
    assert_eq!(r.solutions.len(), 1);
    let surface = r.solutions[0].surface.as_ref().unwrap();
    assert!(!surface.is_planar && surface.max_genus >= 1);
    let (code, out, _) = cli(&["repairings", &fx("strand_embedding"), "--planar-only"]);
    assert_eq!(code, EXIT_OK);
    let Body::RePairings(r) = body(&out) else {
        panic!()
    };
    assert!(r.solutions.is_empty());
}

#[test]
fn planar_only_keeps_the_plane_solution() {
    let (_, out, _) = cli(&["repairings", &fx("two_solutions"), "--planar-only"]);
    let Body::RePairings(r) = body(&out) else {
        panic!()
    };
    assert_eq!(r.solutions.len(), 1);
    assert!(r.solutions[0].surface.as_ref().unwrap().is_planar);
}

#[test]
fn identity_rewrite_gives_back_the_host() {
    for rotations in [false, true] {
        let mut args = vec![
            "rewrite".to_string(),
            fx("strand_identity_rule"),
            fx("strand_host"),
        ];
        if rotations {
            args.push("--rotations".into());
        }
        let argv: Vec<&str> = args.iter().map(String::as_str).collect();
        let (code, out, err) = cli(&argv);
        assert_eq!(code, EXIT_OK, "{err}");
        let Body::Trace(t) = body(&out) else { panic!() };
        let (result, _) = io::load_graph(&t.result.graph).unwrap();
        let (host, _) = io::load_graph(&t.boundary_embedding.host).unwrap();
        assert!(iso_check(&result, &host).unwrap().is_some());
    }
}

#[test]
fn outputs_are_byte_stable() {
    let commands: Vec<Vec<String>> = vec![
        vec!["validate".into(), fx("partition_span")],
        vec!["classify-morphism".into(), fx("make_a_self_loop")],
        vec!["pushout".into(), fx("partition_span"), "--rotations".into()],
        vec!["pushout".into(), fx("two_cycle_span")],
        vec![
            "complement".into(),
            fx("two_solutions"),
            "--solution".into(),
            "1".into(),
            "--rotations".into(),
        ],
        vec![
            "repairings".into(),
            fx("two_solutions"),
            "--classify-genus".into(),
        ],
        vec![
            "match".into(),
            fx("subdivide_edge"),
            fx("triangle_host"),
            "--rotations".into(),
        ],
        vec![
            "rewrite".into(),
            fx("subdivide_edge"),
            fx("triangle_host"),
            "--rotations".into(),
        ],
        vec!["genus".into(), fx("strand_host")],
        vec![
            "lawcheck".into(),
            "--law".into(),
            "EdgesAndCircles".into(),
            "--budget".into(),
            "2,2,1,2".into(),
        ],
        vec!["export-dot".into(), fx("two_solutions")],
    ];
    for args in commands {
        let argv: Vec<&str> = args.iter().map(String::as_str).collect();
        let first = cli(&argv);
        assert_eq!(first.0, EXIT_OK, "{argv:?}: {}", first.2);
        for _ in 0..2 {
            assert_eq!(cli(&argv), first, "{argv:?}");
        }
        if args[0] != "export-dot" {
            let doc = io::parse(&first.1).unwrap();
            assert_eq!(
                io::print(&doc),
                first.1,
                "{argv:?} does not re-print to itself"
            );
        }
    }
}

#[test]
fn lawcheck_report_is_replayable_json() {
    let (code, out, _) = cli(&["lawcheck", "--budget", "2,2,1,1", "--seed", "4"]);
    assert_eq!(code, EXIT_OK);
    let Body::LawReport(r) = body(&out) else {
        panic!()
    };
    assert_eq!(r.reports.len(), 14);
    assert!(r
        .reports
        .iter()
        .all(|e| e.passed && e.counterexample.is_none()));
}

#[test]
fn binary_speaks_the_same_contract() {
    let bin = env!("CARGO_BIN_EXE_surface-dpo");
    let ok = Command::new(bin)
        .args(["genus", &fx("nested_bouquet")])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    assert_eq!(
        String::from_utf8(ok.stdout).unwrap(),
        cli(&["genus", &fx("nested_bouquet")]).1
    );
    let bad = Command::new(bin)
        .args(["classify-morphism", &fx("circle_to_edge")])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_INVALID));
    let usage = Command::new(bin).arg("pushout").output().unwrap();
    assert_eq!(usage.status.code(), Some(EXIT_USAGE));
    assert!(usage.stdout.is_empty());
}
