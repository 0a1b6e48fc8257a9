//! Structured text format shared by config files and machine-readable
//! dumps: ordered `key = token ...` lines, `#` comments, blank lines
//! ignored. Serialization is canonical, so parsing a dump and re-serializing
//! it reproduces the bytes exactly.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::mesh::{Diagram, MeshModel, SphericalSequenceSpec, Vertex, Window};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DocumentError {
    #[error("line {line}: expected `key = value ...`")]
    MissingEquals { line: usize },
    #[error("line {line}: invalid key {key:?}")]
    InvalidKey { line: usize, key: String },
    #[error("missing required key {0:?}")]
    MissingKey(String),
    #[error("key {key:?}: {msg}")]
    BadValue { key: String, msg: String },
}

/// An ordered list of `key = tokens` entries.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Document {
    pub entries: Vec<(String, Vec<String>)>,
}

fn valid_key(key: &str) -> bool {
    !key.is_empty()
        && key
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '.' | '_' | '-'))
}

impl Document {
    pub fn new() -> Self {
        Document::default()
    }

    pub fn push(&mut self, key: &str, tokens: impl IntoIterator<Item = String>) {
        debug_assert!(valid_key(key));
        self.entries.push((key.to_string(), tokens.into_iter().collect()));
    }

    pub fn push_value(&mut self, key: &str, value: impl fmt::Display) {
        self.push(key, [value.to_string()]);
    }

    pub fn get(&self, key: &str) -> Option<&[String]> {
        self.entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_slice())
    }

    pub fn get_all<'a>(&'a self, key: &'a str) -> impl Iterator<Item = &'a [String]> + 'a {
        self.entries
            .iter()
            .filter(move |(k, _)| k == key)
            .map(|(_, v)| v.as_slice())
    }

    pub fn require(&self, key: &str) -> Result<&[String], DocumentError> {
        self.get(key)
            .ok_or_else(|| DocumentError::MissingKey(key.to_string()))
    }

    pub fn parse(text: &str) -> Result<Document, DocumentError> {
        let mut doc = Document::new();
        for (i, raw) in text.lines().enumerate() {
            let line = match raw.find('#') {
                Some(p) => &raw[..p],
                None => raw,
            };
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let (key, rest) = line
                .split_once('=')
                .ok_or(DocumentError::MissingEquals { line: i + 1 })?;
            let key = key.trim();
            if !valid_key(key) {
                return Err(DocumentError::InvalidKey {
                    line: i + 1,
                    key: key.to_string(),
                });
            }
            let tokens: Vec<String> = rest.split_whitespace().map(|t| t.to_string()).collect();
            doc.entries.push((key.to_string(), tokens));
        }
        Ok(doc)
    }

    /// Canonical serialization: one `key = tokens` line per entry.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (key, tokens) in &self.entries {
            out.push_str(key);
            out.push_str(" =");
            for t in tokens {
                out.push(' ');
                out.push_str(t);
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl FromStr for Document {
    type Err = DocumentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Document::parse(s)
    }
}

/// A mesh setup read from a config document: diagram, window, and named
/// spherical sequences (`NAME.members`, `NAME.degrees`).
#[derive(Debug, Clone, PartialEq)]
pub struct MeshConfig {
    pub diagram: Diagram,
    pub window: Window,
    pub sequences: Vec<(String, SphericalSequenceSpec)>,
}

impl MeshConfig {
    pub fn parse(text: &str) -> Result<MeshConfig, DocumentError> {
        let doc = Document::parse(text)?;
        MeshConfig::from_document(&doc)
    }

    pub fn from_document(doc: &Document) -> Result<MeshConfig, DocumentError> {
        let bad = |key: &str, msg: String| DocumentError::BadValue {
            key: key.to_string(),
            msg,
        };
        let diagram_tokens = doc.require("diagram")?;
        if diagram_tokens.len() != 1 {
            return Err(bad("diagram", "expected one token".to_string()));
        }
        let diagram: Diagram = diagram_tokens[0]
            .parse()
            .map_err(|e| bad("diagram", format!("{e}")))?;
        let window_tokens = doc.require("window")?;
        if window_tokens.len() != 2 {
            return Err(bad("window", "expected `window = LO HI`".to_string()));
        }
        let lo: i64 = window_tokens[0]
            .parse()
            .map_err(|_| bad("window", format!("invalid integer {:?}", window_tokens[0])))?;
        let hi: i64 = window_tokens[1]
            .parse()
            .map_err(|_| bad("window", format!("invalid integer {:?}", window_tokens[1])))?;
        let mut names = Vec::new();
        for (key, _) in &doc.entries {
            if let Some(name) = key.strip_suffix(".members") {
                if !names.contains(&name.to_string()) {
                    names.push(name.to_string());
                }
            }
        }
        let mut sequences = Vec::new();
        for name in names {
            let members_key = format!("{name}.members");
            let degrees_key = format!("{name}.degrees");
            let member_tokens = doc.require(&members_key)?;
            let degree_tokens = doc.require(&degrees_key)?;
            let members: Vec<Vertex> = member_tokens
                .iter()
                .map(|t| {
                    t.parse()
                        .map_err(|e| bad(&members_key, format!("{e}")))
                })
                .collect::<Result<_, _>>()?;
            let degrees: Vec<i64> = degree_tokens
                .iter()
                .map(|t| {
                    t.parse()
                        .map_err(|_| bad(&degrees_key, format!("invalid integer {t:?}")))
                })
                .collect::<Result<_, _>>()?;
            if members.len() != degrees.len() {
                return Err(bad(
                    &degrees_key,
                    format!(
                        "{} degrees for {} members",
                        degrees.len(),
                        members.len()
                    ),
                ));
            }
            if members.is_empty() {
                return Err(bad(&members_key, "sequence has no members".to_string()));
            }
            sequences.push((name, SphericalSequenceSpec::new(degrees, members)));
        }
        Ok(MeshConfig {
            diagram,
            window: Window::new(lo, hi),
            sequences,
        })
    }

    pub fn build_model(&self) -> Result<MeshModel, crate::mesh::MeshError> {
        MeshModel::build(self.diagram, self.window)
    }

    pub fn sequence(&self, name: &str) -> Option<&SphericalSequenceSpec> {
        self.sequences
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, s)| s)
    }
}
