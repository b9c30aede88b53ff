//! Line-oriented text format for graphs.
//!
//! ```text
//! # optional comments
//! p <vertex_count> <edge_count>
//! e <u> <v>
//! ```
//!
//! Vertices are 0-based. Blank lines and `#` comments may appear anywhere;
//! the `p` header must precede all `e` lines and the edge count must match.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TextFormatError {
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("missing `p <vertices> <edges>` header")]
    MissingHeader,
    #[error("header declares {declared} edges but {found} were listed")]
    EdgeCountMismatch { declared: usize, found: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Parses the graph text format.
pub fn parse_graph_text(input: &str) -> Result<Graph, TextFormatError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();

    for (idx, raw) in input.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split_ascii_whitespace();
        let tag = fields.next().expect("non-empty line has a first field");
        let malformed = |reason: String| TextFormatError::Malformed {
            line: line_no,
            reason,
        };
        match tag {
            "p" => {
                if header.is_some() {
                    return Err(malformed("duplicate `p` header".into()));
                }
                let vertices = parse_field(fields.next(), "vertex count", line_no)?;
                let edge_count = parse_field(fields.next(), "edge count", line_no)?;
                if fields.next().is_some() {
                    return Err(malformed("trailing fields after `p` header".into()));
                }
                header = Some((vertices, edge_count));
            }
            "e" => {
                if header.is_none() {
                    return Err(TextFormatError::MissingHeader);
                }
                let u = parse_field(fields.next(), "edge endpoint", line_no)?;
                let v = parse_field(fields.next(), "edge endpoint", line_no)?;
                if fields.next().is_some() {
                    return Err(malformed("trailing fields after edge".into()));
                }
                edges.push((u, v));
            }
            other => {
                return Err(malformed(format!("unknown line tag `{other}`")));
            }
        }
    }

    let (vertices, declared) = header.ok_or(TextFormatError::MissingHeader)?;
    if declared != edges.len() {
        return Err(TextFormatError::EdgeCountMismatch {
            declared,
            found: edges.len(),
        });
    }
    Ok(Graph::from_edges(vertices, &edges)?)
}

fn parse_field(field: Option<&str>, what: &str, line: usize) -> Result<usize, TextFormatError> {
    let text = field.ok_or_else(|| TextFormatError::Malformed {
        line,
        reason: format!("missing {what}"),
    })?;
    text.parse().map_err(|_| TextFormatError::Malformed {
        line,
        reason: format!("bad {what} `{text}`"),
    })
}

/// Writes the same format `parse_graph_text` reads.
pub fn format_graph_text(graph: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p {} {}", graph.vertex_count(), graph.edge_count());
    for (u, v) in graph.edges() {
        let _ = writeln!(out, "e {u} {v}");
    }
    out
}
