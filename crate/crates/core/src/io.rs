//! Versioned JSON documents.
//!
//! Every file is an envelope `{"version": 1, "type": ..., "data": ...}`.
//! Exact angles are written as `"p/q turn"` strings and floats use the
//! shortest decimal that reads back to the same value, so writing a parsed
//! document reproduces it byte for byte.

use serde::de::{DeserializeOwned, IgnoredAny};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::layers::{FoldPlan, Layering};
use crate::orthotree::DualOrthotreeSpec;
use crate::outer::OuterPattern;
use crate::pattern::CreasePattern;
use crate::treefold::{PlaneTree, TreeError};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unsupported schema version {0} (expected {SCHEMA_VERSION})")]
    Version(u32),
    #[error("unknown document type {0:?}")]
    UnknownType(String),
    #[error("expected a {expected} document, found {found}")]
    WrongType { expected: String, found: String },
    #[error("invalid tree: {0}")]
    Tree(#[from] TreeError),
}

impl From<serde_json::Error> for IoError {
    fn from(e: serde_json::Error) -> Self {
        IoError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Document {
    Pattern(CreasePattern),
    Tree(PlaneTree),
    Outer(OuterPattern),
    Layering(Layering),
    Plan(FoldPlan),
    Orthotree(DualOrthotreeSpec),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Pattern(_) => "pattern",
            Document::Tree(_) => "tree",
            Document::Outer(_) => "outer-pattern",
            Document::Layering(_) => "layering",
            Document::Plan(_) => "plan",
            Document::Orthotree(_) => "orthotree",
        }
    }
}

#[derive(Serialize, Deserialize)]
struct Envelope<T> {
    version: u32,
    #[serde(rename = "type")]
    kind: String,
    data: T,
}

fn typed<T: DeserializeOwned>(text: &str) -> Result<T, IoError> {
    Ok(serde_json::from_str::<Envelope<T>>(text)?.data)
}

pub fn parse_document(text: &str) -> Result<Document, IoError> {
    let head: Envelope<IgnoredAny> = serde_json::from_str(text)?;
    if head.version != SCHEMA_VERSION {
        return Err(IoError::Version(head.version));
    }
    Ok(match head.kind.as_str() {
        "pattern" => Document::Pattern(typed(text)?),
        "tree" => {
            let t: PlaneTree = typed(text)?;
            Document::Tree(PlaneTree::new(t.rotation)?)
        }
        "outer-pattern" => Document::Outer(typed(text)?),
        "layering" => Document::Layering(typed(text)?),
        "plan" => Document::Plan(typed(text)?),
        "orthotree" => Document::Orthotree(typed(text)?),
        other => return Err(IoError::UnknownType(other.into())),
    })
}

fn write<T: Serialize>(kind: &str, data: &T) -> String {
    let env = Envelope {
        version: SCHEMA_VERSION,
        kind: kind.into(),
        data,
    };
    let mut s = serde_json::to_string_pretty(&env).expect("documents serialize");
    s.push('\n');
    s
}

pub fn write_document(doc: &Document) -> String {
    let kind = doc.kind();
    match doc {
        Document::Pattern(x) => write(kind, x),
        Document::Tree(x) => write(kind, x),
        Document::Outer(x) => write(kind, x),
        Document::Layering(x) => write(kind, x),
        Document::Plan(x) => write(kind, x),
        Document::Orthotree(x) => write(kind, x),
    }
}

/// Pretty JSON for reports and manifests (no envelope).
pub fn to_json<T: Serialize>(x: &T) -> String {
    let mut s = serde_json::to_string_pretty(x).expect("reports serialize");
    s.push('\n');
    s
}

macro_rules! expect_kind {
    ($name:ident, $variant:ident, $ty:ty, $label:literal) => {
        pub fn $name(text: &str) -> Result<$ty, IoError> {
            match parse_document(text)? {
                Document::$variant(x) => Ok(x),
                other => Err(IoError::WrongType {
                    expected: $label.into(),
                    found: other.kind().into(),
                }),
            }
        }
    };
}

expect_kind!(parse_pattern, Pattern, CreasePattern, "pattern");
expect_kind!(parse_tree, Tree, PlaneTree, "tree");
expect_kind!(parse_outer, Outer, OuterPattern, "outer-pattern");
expect_kind!(parse_orthotree, Orthotree, DualOrthotreeSpec, "orthotree");

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{no_safe_crease, tree_counterexample};
    use crate::treefold::realize_tree;

    fn round_trip(doc: Document) {
        let text = write_document(&doc);
        let back = parse_document(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(write_document(&back), text);
    }

    #[test]
    fn documents_round_trip() {
        let t = PlaneTree::star(6);
        let r = realize_tree(&t).unwrap();
        round_trip(Document::Pattern(r.pattern.clone()));
        round_trip(Document::Pattern(tree_counterexample()));
        round_trip(Document::Tree(t));
        round_trip(Document::Outer(no_safe_crease()));
        round_trip(Document::Layering(r.layering().unwrap()));
        round_trip(Document::Plan(r.plan.clone()));
        round_trip(Document::Orthotree(DualOrthotreeSpec::dali_cross()));
    }

    #[test]
    fn irrational_coordinates_round_trip() {
        use crate::outer::{random_outer_pattern, Region};
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let p = random_outer_pattern(Region::regular_polygon(5), 10, 5, &mut rng);
            round_trip(Document::Outer(p));
        }
    }

    #[test]
    fn exact_angles_are_turn_strings() {
        let text = write_document(&Document::Pattern(tree_counterexample()));
        assert!(text.contains("\"1/8 turn\""), "{text}");
        assert!(text.contains("\"version\": 1"));
    }

    #[test]
    fn parse_errors_carry_lines() {
        let err = parse_document("{\n  \"version\": 1,\n  \"type\": \"pattern\",\n  \"data\": [\n}").unwrap_err();
        assert!(matches!(err, IoError::Parse { line: 5, .. }), "{err}");
        let err = parse_document(r#"{"version": 9, "type": "pattern", "data": {}}"#).unwrap_err();
        assert!(matches!(err, IoError::Version(9)));
        let err = parse_document(r#"{"version": 1, "type": "tree", "data": {"rotation": [[1], [2]]}}"#)
            .unwrap_err();
        assert!(matches!(err, IoError::Tree(_)));
    }
}
