//! Plain-text defining graphs.
//!
//! ```text
//! # comment
//! vertices a b c d e
//! edges a-b b-c c-d d-e e-a
//! ```
//!
//! Vertex order is declaration order. Names are ASCII letters, digits and `_`.

use std::collections::{HashMap, HashSet};
use std::path::Path;

use horoforge_core::{validate_defining_graph, DefiningGraph, Letter, ValidationReport};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

fn valid_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut rest = line;
    let mut offset = 0;
    std::iter::from_fn(move || {
        let start = rest.find(|c: char| !c.is_whitespace())?;
        let tail = &rest[start..];
        let end = tail.find(char::is_whitespace).unwrap_or(tail.len());
        let col = line[..offset + start].chars().count() + 1;
        offset += start + end;
        rest = &tail[end..];
        Some((col, &tail[..end]))
    })
}

pub fn parse_graph(text: &str) -> Result<DefiningGraph, ParseError> {
    let mut names: Vec<String> = Vec::new();
    let mut index: HashMap<String, Letter> = HashMap::new();
    let mut edges: Vec<(Letter, Letter)> = Vec::new();
    let mut seen: HashSet<(Letter, Letter)> = HashSet::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let err = |col: usize, msg: String| ParseError { line: ln + 1, col, msg };
        let mut toks = tokens(line);
        let Some((kcol, keyword)) = toks.next() else {
            continue;
        };
        match keyword {
            "vertices" => {
                for (col, name) in toks {
                    if !valid_name(name) {
                        return Err(err(col, format!("invalid vertex name `{name}`")));
                    }
                    if index.contains_key(name) {
                        return Err(err(col, format!("duplicate vertex `{name}`")));
                    }
                    index.insert(name.to_string(), names.len() as Letter);
                    names.push(name.to_string());
                }
            }
            "edges" => {
                for (col, tok) in toks {
                    let Some((a, b)) = tok.split_once('-') else {
                        return Err(err(col, format!("expected `u-v`, found `{tok}`")));
                    };
                    let lookup = |name: &str, c: usize| {
                        index
                            .get(name)
                            .copied()
                            .ok_or_else(|| err(c, format!("undeclared vertex `{name}`")))
                    };
                    let x = lookup(a, col)?;
                    let y = lookup(b, col + a.chars().count() + 1)?;
                    if x == y {
                        return Err(err(col, format!("self edge `{tok}`")));
                    }
                    if !seen.insert((x.min(y), x.max(y))) {
                        return Err(err(col, format!("duplicate edge `{tok}`")));
                    }
                    edges.push((x, y));
                }
            }
            other => return Err(err(kcol, format!("unknown keyword `{other}`"))),
        }
    }
    if names.is_empty() {
        return Err(ParseError {
            line: text.lines().count().max(1),
            col: 1,
            msg: "no vertices declared".into(),
        });
    }
    DefiningGraph::new(names, &edges).map_err(|e| ParseError {
        line: 1,
        col: 1,
        msg: e.to_string(),
    })
}

/// Canonical text for `g`, accepted by [`parse_graph`].
pub fn graph_to_text(g: &DefiningGraph) -> String {
    let mut out = format!("vertices {}\n", g.names().join(" "));
    let edges = g.edges();
    if !edges.is_empty() {
        let list: Vec<String> = edges
            .iter()
            .map(|&(a, b)| format!("{}-{}", g.name(a), g.name(b)))
            .collect();
        out.push_str(&format!("edges {}\n", list.join(" ")));
    }
    out
}

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("{path}: graph fails the standing assumptions\n{report}")]
    Invalid { path: String, report: String },
}

pub fn read_graph_file(path: &Path) -> Result<DefiningGraph, LoadError> {
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: shown.clone(),
        source,
    })?;
    parse_graph(&text).map_err(|source| LoadError::Parse { path: shown, source })
}

/// Reads and validates a graph file.
pub fn parse_graph_file(path: &Path) -> Result<(DefiningGraph, ValidationReport), LoadError> {
    let g = read_graph_file(path)?;
    let report = validate_defining_graph(&g);
    if !report.is_valid() {
        return Err(LoadError::Invalid {
            path: path.display().to_string(),
            report: report.describe(&g),
        });
    }
    Ok((g, report))
}
