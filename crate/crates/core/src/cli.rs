//! The `surface-dpo` command line. Every subcommand reads documents and
//! prints one document on stdout; diagnostics go to stderr.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand};

use crate::boundary::{enumerate_re_pairings, DEFAULT_SOLUTION_CAP};
use crate::dpo::{pushout, pushout_complement, rewrite, DpoError, RewriteRule};
use crate::graph::Graph;
use crate::io::wire::{LawReportDoc, RePairingsDoc, SolutionDoc, ValidationDoc};
use crate::io::{self, Body, Document, IoError, Kind, TraceRotations};
use crate::lawcheck::{self, GenBudget, Law};
use crate::matcher::{find_matches, MatchOptions};
use crate::rotation::{
    classify_re_pairings, genus_report, rot_complement, rot_pushout, rot_rewrite, RotEmbedding,
    RotRule, RotationError, RotationSystem,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "surface-dpo",
    version,
    about = "DPO rewriting of graphs with circles and rotation systems"
)]
struct Cli {
    /// Ignore unknown fields instead of rejecting them.
    #[arg(long, global = true)]
    lenient: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse a document and re-run its validators.
    Validate { file: PathBuf },
    /// Say whether a morphism document is an embedding, a morphism or neither.
    ClassifyMorphism { file: PathBuf },
    /// Pushout of a partitioning span.
    Pushout {
        span: PathBuf,
        #[arg(long)]
        rotations: bool,
    },
    /// Pushout complement of a boundary embedding.
    Complement {
        embedding: PathBuf,
        #[arg(long, default_value_t = 0)]
        solution: usize,
        #[arg(long)]
        rotations: bool,
    },
    /// All solutions of the re-pairing problem.
    Repairings {
        embedding: PathBuf,
        #[arg(long)]
        classify_genus: bool,
        /// Keep only solutions whose complement is planar; implies
        /// `--classify-genus`.
        #[arg(long)]
        planar_only: bool,
    },
    /// Matches of a rule's left-hand side in a host graph.
    Match {
        rule: PathBuf,
        host: PathBuf,
        #[arg(long)]
        rotations: bool,
    },
    /// One rewrite step.
    Rewrite {
        rule: PathBuf,
        host: PathBuf,
        #[arg(long = "match", default_value_t = 0)]
        match_index: usize,
        #[arg(long)]
        solution: Option<usize>,
        #[arg(long)]
        rotations: bool,
    },
    /// Faces, Euler characteristic and genus of a rotation graph.
    Genus { file: PathBuf },
    /// Run the law suite.
    Lawcheck {
        #[arg(long)]
        law: Option<String>,
        /// `V,E,O` or `V,E,O,B`: vertices, edges, circles, boundary edges.
        #[arg(long, value_parser = parse_budget)]
        budget: Option<GenBudget>,
        #[arg(long)]
        seed: Option<u64>,
        /// Instances drawn per law in seeded-random mode.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Graphviz drawing of a graph-bearing document.
    ExportDot { file: PathBuf },
}

fn parse_budget(s: &str) -> Result<GenBudget, String> {
    let parts: Vec<usize> = s
        .split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|e| format!("`{p}`: {e}")))
        .collect::<Result<_, _>>()?;
    let default = GenBudget::default();
    match parts.as_slice() {
        [v, e, o] => Ok(GenBudget::new(*v, *e, *o, default.max_boundary_edges)),
        [v, e, o, b] => Ok(GenBudget::new(*v, *e, *o, *b)),
        _ => Err("expected V,E,O or V,E,O,B".into()),
    }
}

/// Why a subcommand stopped.
#[derive(Debug)]
enum Failure {
    /// Bad input files or a failed check; exit 1.
    Invalid(String),
    /// Wrong arguments, unreadable files, wrong document kinds; exit 2.
    Usage(String),
    /// A failed check that still produced a document on stdout; exit 1.
    Reported(Box<Document>),
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        match e {
            IoError::WrongKind { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

fn invalid(e: impl std::fmt::Display) -> Failure {
    Failure::Invalid(e.to_string())
}

struct Ctx {
    strict: bool,
}

impl Ctx {
    fn read_text(&self, path: &Path) -> Result<String, Failure> {
        std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
    }

    fn read(&self, path: &Path, kinds: &[Kind]) -> Result<Document, Failure> {
        let text = self.read_text(path)?;
        let doc = io::parse_with(&text, self.strict)
            .map_err(|e| invalid(format!("{}: {e}", path.display())))?;
        io::expect_kind(&doc, kinds)
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        Ok(doc)
    }
}

fn dpo_failure(e: DpoError) -> Failure {
    match e {
        DpoError::SolutionIndexOutOfRange { .. } => Failure::Usage(e.to_string()),
        e => invalid(e),
    }
}

fn need<T>(rotated: Option<T>, what: &str) -> Result<T, Failure> {
    rotated.ok_or_else(|| {
        invalid(format!(
            "--rotations needs a rotation on every graph of the {what}"
        ))
    })
}

/// Runs the command line `args` (program name first) and returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    let ctx = Ctx {
        strict: !cli.lenient,
    };
    let (text, code) = match execute(&ctx, cli.command) {
        Ok(text) => (Some(text), EXIT_OK),
        Err(Failure::Reported(doc)) => (Some(io::print(&doc)), EXIT_INVALID),
        Err(Failure::Invalid(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            (None, EXIT_INVALID)
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            (None, EXIT_USAGE)
        }
    };
    if let Some(text) = text {
        if out.write_all(text.as_bytes()).is_err() {
            return EXIT_USAGE;
        }
    }
    code
}

fn print(body: Body) -> String {
    io::print(&Document::new(body))
}

fn execute(ctx: &Ctx, command: Command) -> Result<String, Failure> {
    match command {
        Command::Validate { file } => validate(ctx, &file),
        Command::ClassifyMorphism { file } => {
            let doc = ctx.read(&file, &[Kind::Morphism])?;
            let Body::Morphism(m) = &doc.body else {
                unreachable!()
            };
            let class = io::load_morphism(m)?.classify();
            let out = Document::new(Body::Classification(io::classification_doc(&class)));
            if class.is_morphism() {
                Ok(io::print(&out))
            } else {
                Err(Failure::Reported(Box::new(out)))
            }
        }
        Command::Pushout { span, rotations } => {
            let doc = ctx.read(&span, &[Kind::Span])?;
            let Body::Span(s) = &doc.body else {
                unreachable!()
            };
            let loaded = io::load_span(s)?;
            if rotations {
                let rs = need(loaded.rotated, "span")?;
                let (po, rot) = rot_pushout(&rs).map_err(invalid)?;
                Ok(print(Body::Pushout(io::pushout_doc(&po, Some(&rot)))))
            } else {
                let po = pushout(&loaded.plain).map_err(invalid)?;
                Ok(print(Body::Pushout(io::pushout_doc(&po, None))))
            }
        }
        Command::Complement {
            embedding,
            solution,
            rotations,
        } => {
            let doc = ctx.read(&embedding, &[Kind::BoundaryEmbedding])?;
            let Body::BoundaryEmbedding(b) = &doc.body else {
                unreachable!()
            };
            let loaded = io::load_embedding(b)?;
            let mut all =
                enumerate_re_pairings(&loaded.plain, DEFAULT_SOLUTION_CAP).map_err(invalid)?;
            if solution >= all.len() {
                return Err(Failure::Usage(format!(
                    "--solution {solution}: only {} solution(s)",
                    all.len()
                )));
            }
            let chosen = all.swap_remove(solution);
            if rotations {
                let re = need(loaded.rotated, "boundary embedding")?;
                let (comp, rot) = rot_complement(&re, &chosen).map_err(invalid)?;
                Ok(print(Body::Complement(io::complement_doc(
                    &comp,
                    solution,
                    Some(&rot),
                ))))
            } else {
                let comp = pushout_complement(&loaded.plain, &chosen).map_err(invalid)?;
                Ok(print(Body::Complement(io::complement_doc(
                    &comp, solution, None,
                ))))
            }
        }
        Command::Repairings {
            embedding,
            classify_genus,
            planar_only,
        } => {
            let doc = ctx.read(&embedding, &[Kind::BoundaryEmbedding])?;
            let Body::BoundaryEmbedding(b) = &doc.body else {
                unreachable!()
            };
            let loaded = io::load_embedding(b)?;
            let solutions = if classify_genus || planar_only {
                let re = need(loaded.rotated, "boundary embedding")?;
                classify_re_pairings(&re, DEFAULT_SOLUTION_CAP, planar_only)
                    .map_err(invalid)?
                    .into_iter()
                    .map(|c| SolutionDoc {
                        index: c.index,
                        red: io::red_doc(&c.complement.solution),
                        surface: Some(io::surface_doc(&c.report)),
                    })
                    .collect()
            } else {
                enumerate_re_pairings(&loaded.plain, DEFAULT_SOLUTION_CAP)
                    .map_err(invalid)?
                    .iter()
                    .enumerate()
                    .map(|(index, s)| SolutionDoc {
                        index,
                        red: io::red_doc(s),
                        surface: None,
                    })
                    .collect()
            };
            Ok(print(Body::RePairings(RePairingsDoc { solutions })))
        }
        Command::Match {
            rule,
            host,
            rotations,
        } => {
            let (rule, host) = load_rule_and_host(ctx, &rule, &host, rotations)?;
            let matches = find_matches(&rule.plain, &host.graph, &host.options).map_err(invalid)?;
            Ok(print(Body::Match(io::match_doc(&matches))))
        }
        Command::Rewrite {
            rule,
            host,
            match_index,
            solution,
            rotations,
        } => {
            let (rule, host) = load_rule_and_host(ctx, &rule, &host, rotations)?;
            let matches = find_matches(&rule.plain, &host.graph, &host.options).map_err(invalid)?;
            if matches.is_empty() {
                return Err(invalid("the left-hand side does not match the host"));
            }
            let Some(m) = matches.get(match_index) else {
                return Err(Failure::Usage(format!(
                    "--match {match_index}: only {} match(es)",
                    matches.len()
                )));
            };
            match (rotations, &rule.rotated, &host.rotation) {
                (true, Some(rr), Some(rh)) => {
                    let step =
                        rot_rewrite(rr, m.morphism(), rh, solution).map_err(|e| match e {
                            RotationError::Dpo(e) => dpo_failure(e),
                            e => invalid(e),
                        })?;
                    let re = RotEmbedding::new(
                        step.trace.boundary_embedding.clone(),
                        rr.boundary.clone(),
                        rr.lhs.clone(),
                        rh.clone(),
                    )
                    .map_err(invalid)?;
                    let rot = TraceRotations {
                        embedding: &re,
                        complement: &step.complement_rotation,
                        result: &step.result_rotation,
                    };
                    Ok(print(Body::Trace(io::trace_doc(&step.trace, Some(rot)))))
                }
                (true, _, _) => Err(invalid(
                    "--rotations needs rotations on the rule and the host",
                )),
                (false, _, _) => {
                    let trace =
                        rewrite(&rule.plain, m.morphism(), solution).map_err(dpo_failure)?;
                    Ok(print(Body::Trace(io::trace_doc(&trace, None))))
                }
            }
        }
        Command::Genus { file } => {
            let doc = ctx.read(&file, &[Kind::RotationGraph])?;
            let Body::RotationGraph(g) = &doc.body else {
                unreachable!()
            };
            let (_, rot) = io::load_graph(g)?;
            let rs = rot.ok_or_else(|| invalid("the graph carries no rotation"))?;
            let report = genus_report(&rs).map_err(invalid)?;
            Ok(print(Body::SurfaceReport(io::surface_doc(&report))))
        }
        Command::Lawcheck {
            law,
            budget,
            seed,
            samples,
        } => {
            let mut budget = budget.unwrap_or_default();
            if let Some(seed) = seed {
                budget = budget.with_seed(seed);
            }
            if let Some(samples) = samples {
                budget = budget.with_samples(samples);
            }
            let reports = match law {
                Some(name) => {
                    let law: Law = name
                        .parse()
                        .map_err(|e: lawcheck::LawError| Failure::Usage(e.to_string()))?;
                    vec![lawcheck::check_lemma(law, &budget)]
                }
                None => lawcheck::check_all(&budget),
            };
            let doc: LawReportDoc = lawcheck::report_doc(&reports);
            let all_passed = reports.iter().all(|r| r.passed());
            let out = Document::new(Body::LawReport(doc));
            if all_passed {
                Ok(io::print(&out))
            } else {
                Err(Failure::Reported(Box::new(out)))
            }
        }
        Command::ExportDot { file } => {
            let text = ctx.read_text(&file)?;
            let doc = io::parse_with(&text, ctx.strict)
                .map_err(|e| invalid(format!("{}: {e}", file.display())))?;
            io::export_dot(&doc).map_err(|e| Failure::Usage(e.to_string()))
        }
    }
}

fn validate(ctx: &Ctx, file: &Path) -> Result<String, Failure> {
    let text = ctx.read_text(file)?;
    let report = |kind: String, issues: Vec<String>| {
        let ok = issues.is_empty();
        let doc = Document::new(Body::Validation(ValidationDoc { kind, ok, issues }));
        if ok {
            Ok(io::print(&doc))
        } else {
            Err(Failure::Reported(Box::new(doc)))
        }
    };
    let doc = match io::parse_unchecked(&text, ctx.strict) {
        Ok(doc) => doc,
        Err(e) => return report(String::new(), vec![e.to_string()]),
    };
    let kind = doc.kind().name().to_string();
    match io::validate_document(&doc) {
        Ok(()) => report(kind, Vec::new()),
        Err(IoError::ValidationFailed(why)) => report(kind, why),
        Err(e) => report(kind, vec![e.to_string()]),
    }
}

type LoadedRule = io::Loaded<RewriteRule, RotRule>;

struct LoadedHost {
    graph: Arc<Graph>,
    rotation: Option<RotationSystem>,
    options: MatchOptions,
}

fn load_rule_and_host(
    ctx: &Ctx,
    rule: &Path,
    host: &Path,
    rotations: bool,
) -> Result<(LoadedRule, LoadedHost), Failure> {
    let rdoc = ctx.read(rule, &[Kind::Rule])?;
    let Body::Rule(r) = &rdoc.body else {
        unreachable!()
    };
    let rule = io::load_rule(r)?;
    let hdoc = ctx.read(host, &[Kind::Graph, Kind::RotationGraph])?;
    let (Body::Graph(h) | Body::RotationGraph(h)) = &hdoc.body else {
        unreachable!()
    };
    let (graph, rotation) = io::load_graph(h)?;
    let mut options = MatchOptions::default();
    if rotations {
        let rr = need(rule.rotated.as_ref(), "rule")?;
        let rh = rotation
            .clone()
            .ok_or_else(|| invalid("--rotations needs a rotation on the host"))?;
        options.rotations = Some((rr.lhs.clone(), rh));
    }
    Ok((
        rule,
        LoadedHost {
            graph,
            rotation,
            options,
        },
    ))
}
