//! Edge-list text format.
//!
//! ```text
//! # nav-graph v1 n=<n>
//! u v
//! ...
//! ```
//! One `u v` pair per line with `u < v`, lexicographically sorted. Any other
//! line starting with `#` is a comment.

use std::io::{BufRead, Write};

use super::{Graph, VertexId};
use crate::error::{Error, Result};

const HEADER: &str = "# nav-graph v1 n=";

pub fn write_edge_list<W: Write>(g: &Graph, out: W) -> Result<()> {
    write_edge_list_annotated(g, &[], out)
}

/// Like [`write_edge_list`], with each of `notes` written as a comment line
/// right after the header.
pub fn write_edge_list_annotated<W: Write>(g: &Graph, notes: &[String], mut out: W) -> Result<()> {
    writeln!(out, "{HEADER}{}", g.vertex_count())?;
    for note in notes {
        writeln!(out, "# {note}")?;
    }
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}")?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_edge_list<R: BufRead>(input: R) -> Result<Graph> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (idx, line) in input.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let trimmed = line.trim();
        if let Some(rest) = trimmed.strip_prefix(HEADER) {
            if n.is_some() {
                return Err(parse_err(lineno, "duplicate header"));
            }
            n = Some(
                rest.trim()
                    .parse()
                    .map_err(|e| parse_err(lineno, format!("bad vertex count: {e}")))?,
            );
            continue;
        }
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if n.is_none() {
            return Err(parse_err(lineno, "edge before `# nav-graph v1 n=` header"));
        }
        let mut fields = trimmed.split_whitespace();
        let mut id = || -> Result<VertexId> {
            fields
                .next()
                .ok_or_else(|| parse_err(lineno, "expected two vertex ids"))?
                .parse()
                .map_err(|e| parse_err(lineno, format!("bad vertex id: {e}")))
        };
        let (u, v) = (id()?, id()?);
        if fields.next().is_some() {
            return Err(parse_err(lineno, "trailing fields"));
        }
        edges.push((u, v));
    }
    let n = n.ok_or_else(|| parse_err(0, "missing `# nav-graph v1 n=` header"))?;
    Graph::from_edges(n, edges)
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}
