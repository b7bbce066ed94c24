//! The document format: one JSON object per file,
//!
//! ```text
//! { "format_version": "1", "kind": "<kind>", "body": { ... } }
//! ```
//!
//! Printing is deterministic. Parsing is strict by default: unknown fields
//! are rejected with their line and column.

mod convert;
mod dot;
pub mod wire;

pub use convert::*;
pub use dot::{export_dot, pairing_dot, DotError};

use std::cell::Cell;
use std::fmt;
use std::rc::Rc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use wire::*;

pub const FORMAT_VERSION: &str = "1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Graph,
    RotationGraph,
    Morphism,
    Rule,
    Span,
    BoundaryEmbedding,
    Match,
    Trace,
    SurfaceReport,
    LawReport,
    Pushout,
    Complement,
    RePairings,
    Classification,
    Validation,
}

impl Kind {
    pub const ALL: [Kind; 15] = [
        Kind::Graph,
        Kind::RotationGraph,
        Kind::Morphism,
        Kind::Rule,
        Kind::Span,
        Kind::BoundaryEmbedding,
        Kind::Match,
        Kind::Trace,
        Kind::SurfaceReport,
        Kind::LawReport,
        Kind::Pushout,
        Kind::Complement,
        Kind::RePairings,
        Kind::Classification,
        Kind::Validation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Kind::Graph => "graph",
            Kind::RotationGraph => "rotation_graph",
            Kind::Morphism => "morphism",
            Kind::Rule => "rule",
            Kind::Span => "span",
            Kind::BoundaryEmbedding => "boundary_embedding",
            Kind::Match => "match",
            Kind::Trace => "trace",
            Kind::SurfaceReport => "surface_report",
            Kind::LawReport => "law_report",
            Kind::Pushout => "pushout",
            Kind::Complement => "complement",
            Kind::RePairings => "re_pairings",
            Kind::Classification => "classification",
            Kind::Validation => "validation",
        }
    }

    pub fn from_name(s: &str) -> Option<Kind> {
        Kind::ALL.into_iter().find(|k| k.name() == s)
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Body {
    Graph(GraphDoc),
    RotationGraph(GraphDoc),
    Morphism(MorphismDoc),
    Rule(RuleDoc),
    Span(SpanDoc),
    BoundaryEmbedding(BoundaryEmbeddingDoc),
    Match(MatchDoc),
    Trace(TraceDoc),
    SurfaceReport(SurfaceReportDoc),
    LawReport(LawReportDoc),
    Pushout(PushoutDoc),
    Complement(ComplementDoc),
    RePairings(RePairingsDoc),
    Classification(ClassificationDoc),
    Validation(ValidationDoc),
}

impl Body {
    pub fn kind(&self) -> Kind {
        match self {
            Body::Graph(_) => Kind::Graph,
            Body::RotationGraph(_) => Kind::RotationGraph,
            Body::Morphism(_) => Kind::Morphism,
            Body::Rule(_) => Kind::Rule,
            Body::Span(_) => Kind::Span,
            Body::BoundaryEmbedding(_) => Kind::BoundaryEmbedding,
            Body::Match(_) => Kind::Match,
            Body::Trace(_) => Kind::Trace,
            Body::SurfaceReport(_) => Kind::SurfaceReport,
            Body::LawReport(_) => Kind::LawReport,
            Body::Pushout(_) => Kind::Pushout,
            Body::Complement(_) => Kind::Complement,
            Body::RePairings(_) => Kind::RePairings,
            Body::Classification(_) => Kind::Classification,
            Body::Validation(_) => Kind::Validation,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub format_version: String,
    pub body: Body,
}

impl Document {
    pub fn new(body: Body) -> Self {
        Document {
            format_version: FORMAT_VERSION.to_string(),
            body,
        }
    }

    pub fn kind(&self) -> Kind {
        self.body.kind()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IoError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    SyntaxError {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown field `{path}` at line {line}, column {column}")]
    UnknownField {
        path: String,
        line: usize,
        column: usize,
    },
    #[error("format version `{found}` is not supported (expected `{FORMAT_VERSION}`)")]
    VersionMismatch { found: String },
    #[error("unknown document kind `{0}`")]
    UnknownKind(String),
    #[error("expected a `{expected}` document, found `{found}`")]
    WrongKind { expected: String, found: Kind },
    #[error("validation failed: {}", .0.join("; "))]
    ValidationFailed(Vec<String>),
}

impl IoError {
    pub(crate) fn invalid(msg: impl fmt::Display) -> Self {
        IoError::ValidationFailed(vec![msg.to_string()])
    }
}

#[derive(Serialize)]
struct EnvelopeOut<'a, T> {
    format_version: &'a str,
    kind: Kind,
    body: &'a T,
}

#[derive(Deserialize)]
struct Envelope<T> {
    #[allow(dead_code)]
    format_version: String,
    #[allow(dead_code)]
    kind: Kind,
    body: T,
}

/// Pretty-printed JSON with a trailing newline.
pub fn print(doc: &Document) -> String {
    fn out<T: Serialize>(doc: &Document, body: &T) -> String {
        let env = EnvelopeOut {
            format_version: &doc.format_version,
            kind: doc.kind(),
            body,
        };
        let mut s = serde_json::to_string_pretty(&env).expect("documents always serialize");
        s.push('\n');
        s
    }
    match &doc.body {
        Body::Graph(b) | Body::RotationGraph(b) => out(doc, b),
        Body::Morphism(b) => out(doc, b),
        Body::Rule(b) => out(doc, b),
        Body::Span(b) => out(doc, b),
        Body::BoundaryEmbedding(b) => out(doc, b),
        Body::Match(b) => out(doc, b),
        Body::Trace(b) => out(doc, b),
        Body::SurfaceReport(b) => out(doc, b),
        Body::LawReport(b) => out(doc, b),
        Body::Pushout(b) => out(doc, b),
        Body::Complement(b) => out(doc, b),
        Body::RePairings(b) => out(doc, b),
        Body::Classification(b) => out(doc, b),
        Body::Validation(b) => out(doc, b),
    }
}

/// Parses and checks a document, rejecting unknown fields.
pub fn parse(text: &str) -> Result<Document, IoError> {
    parse_with(text, true)
}

/// Like [`parse`] but ignores unknown fields.
pub fn parse_lenient(text: &str) -> Result<Document, IoError> {
    parse_with(text, false)
}

pub fn parse_with(text: &str, strict: bool) -> Result<Document, IoError> {
    let doc = parse_unchecked(text, strict)?;
    validate_document(&doc)?;
    Ok(doc)
}

struct Counting<'a> {
    bytes: &'a [u8],
    pos: Rc<Cell<usize>>,
}

impl std::io::Read for Counting<'_> {
    fn read(&mut self, buf: &mut [u8]) -> std::io::Result<usize> {
        let at = self.pos.get();
        let n = buf.len().min(self.bytes.len() - at);
        buf[..n].copy_from_slice(&self.bytes[at..at + n]);
        self.pos.set(at + n);
        Ok(n)
    }
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
    (line, column)
}

fn syntax(e: serde_json::Error) -> IoError {
    let full = e.to_string();
    let suffix = format!(" at line {} column {}", e.line(), e.column());
    IoError::SyntaxError {
        line: e.line(),
        column: e.column(),
        message: full.strip_suffix(&suffix).unwrap_or(&full).to_string(),
    }
}

fn typed<T: DeserializeOwned>(text: &str, strict: bool) -> Result<T, IoError> {
    let pos = Rc::new(Cell::new(0));
    let reader = Counting {
        bytes: text.as_bytes(),
        pos: pos.clone(),
    };
    let mut de = serde_json::Deserializer::from_reader(reader);
    let mut unknown: Option<(String, String, usize)> = None;
    let env: Envelope<T> = serde_ignored::deserialize(&mut de, |path| {
        if unknown.is_none() {
            let key = match &path {
                serde_ignored::Path::Map { key, .. } => key.clone(),
                _ => String::new(),
            };
            unknown = Some((path.to_string(), key, pos.get()));
        }
    })
    .map_err(syntax)?;
    if strict {
        if let Some((path, key, end)) = unknown {
            let quoted = serde_json::to_string(&key).expect("strings serialize");
            let start = text[..end.min(text.len())].rfind(&quoted).unwrap_or(end);
            let (line, column) = line_col(text, start);
            return Err(IoError::UnknownField { path, line, column });
        }
    }
    Ok(env.body)
}

/// Parses without re-running the domain validators.
pub fn parse_unchecked(text: &str, strict: bool) -> Result<Document, IoError> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(syntax)?;
    let top = value.as_object().ok_or_else(|| IoError::SyntaxError {
        line: 1,
        column: 1,
        message: "a document is a JSON object".into(),
    })?;
    let version = top
        .get("format_version")
        .and_then(|v| v.as_str())
        .ok_or_else(|| IoError::invalid("missing `format_version`"))?;
    if version != FORMAT_VERSION {
        return Err(IoError::VersionMismatch {
            found: version.to_string(),
        });
    }
    let kind_name = top
        .get("kind")
        .and_then(|v| v.as_str())
        .ok_or_else(|| IoError::invalid("missing `kind`"))?;
    let kind = Kind::from_name(kind_name).ok_or_else(|| IoError::UnknownKind(kind_name.into()))?;
    let body = match kind {
        Kind::Graph => Body::Graph(typed(text, strict)?),
        Kind::RotationGraph => Body::RotationGraph(typed(text, strict)?),
        Kind::Morphism => Body::Morphism(typed(text, strict)?),
        Kind::Rule => Body::Rule(typed(text, strict)?),
        Kind::Span => Body::Span(typed(text, strict)?),
        Kind::BoundaryEmbedding => Body::BoundaryEmbedding(typed(text, strict)?),
        Kind::Match => Body::Match(typed(text, strict)?),
        Kind::Trace => Body::Trace(typed(text, strict)?),
        Kind::SurfaceReport => Body::SurfaceReport(typed(text, strict)?),
        Kind::LawReport => Body::LawReport(typed(text, strict)?),
        Kind::Pushout => Body::Pushout(typed(text, strict)?),
        Kind::Complement => Body::Complement(typed(text, strict)?),
        Kind::RePairings => Body::RePairings(typed(text, strict)?),
        Kind::Classification => Body::Classification(typed(text, strict)?),
        Kind::Validation => Body::Validation(typed(text, strict)?),
    };
    Ok(Document {
        format_version: version.to_string(),
        body,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_circle() -> Document {
        Document::new(Body::Graph(GraphDoc {
            circles: vec!["o".into()],
            ..GraphDoc::default()
        }))
    }

    #[test]
    fn round_trip() {
        let doc = one_circle();
        let text = print(&doc);
        assert_eq!(parse(&text).unwrap(), doc);
        assert_eq!(print(&parse(&text).unwrap()), text);
        assert!(text.starts_with("{\n  \"format_version\": \"1\",\n  \"kind\": \"graph\""));
    }

    #[test]
    fn unknown_field_position() {
        let text = "{\n  \"format_version\": \"1\",\n  \"kind\": \"graph\",\n  \"body\": {\n    \"vertices\": [],\n    \"colour\": \"red\"\n  }\n}\n";
        match parse(text) {
            Err(IoError::UnknownField { path, line, column }) => {
                assert_eq!(path, "body.colour");
                assert_eq!((line, column), (6, 5));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_lenient(text).is_ok());
    }

    #[test]
    fn syntax_and_version_errors() {
        assert!(matches!(
            parse("{\n  \"kind\": \n"),
            Err(IoError::SyntaxError { line: 3, .. })
        ));
        let text = print(&one_circle()).replace("\"1\"", "\"2\"");
        assert_eq!(
            parse(&text),
            Err(IoError::VersionMismatch { found: "2".into() })
        );
        let text = print(&one_circle()).replace("\"graph\"", "\"poster\"");
        assert_eq!(parse(&text), Err(IoError::UnknownKind("poster".into())));
    }
}
