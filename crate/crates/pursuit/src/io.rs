//! Arc-list text format and DOT export.
//!
//! Arc-list: a header line `n m`, then exactly `m` lines `tail head` with
//! 0-based ids. Loops and repeated arcs are rejected.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use pursuit_core::{Digraph, GraphError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Graph { line: usize, source: GraphError },
    #[error("{}: {source}", path.display())]
    File { path: PathBuf, source: Box<FormatError> },
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
}

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, msg: msg.into() }
}

fn parse_pair(line: usize, text: &str) -> Result<(usize, usize), FormatError> {
    let mut fields = text.split_whitespace();
    let mut next = |what: &str| -> Result<usize, FormatError> {
        let field = fields.next().ok_or_else(|| syntax(line, format!("missing {what}")))?;
        field.parse().map_err(|_| syntax(line, format!("{what} {field:?} is not a non-negative integer")))
    };
    let pair = (next("first field")?, next("second field")?);
    if fields.next().is_some() {
        return Err(syntax(line, "expected exactly two fields"));
    }
    Ok(pair)
}

pub fn parse_arc_list(text: &str) -> Result<Digraph, FormatError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end_matches('\r')));
    let (_, header) = lines.next().ok_or_else(|| syntax(1, "empty input"))?;
    let (n, m) = parse_pair(1, header)?;
    let mut seen = HashSet::with_capacity(m);
    let mut arcs = Vec::with_capacity(m);
    for _ in 0..m {
        let (line, text) = lines
            .next()
            .ok_or_else(|| syntax(arcs.len() + 2, format!("expected {m} arcs, found {}", arcs.len())))?;
        let (u, v) = parse_pair(line, text)?;
        let bad = if u >= n || v >= n {
            Some(GraphError::VertexOutOfRange { vertex: u.max(v), n })
        } else if u == v {
            Some(GraphError::Loop(u))
        } else if !seen.insert((u, v)) {
            Some(GraphError::DuplicateArc(u, v))
        } else {
            None
        };
        if let Some(source) = bad {
            return Err(FormatError::Graph { line, source });
        }
        arcs.push((u, v));
    }
    if let Some((line, extra)) = lines.find(|(_, l)| !l.trim().is_empty()) {
        return Err(syntax(line, format!("unexpected trailing content {extra:?}")));
    }
    Digraph::new(n, arcs).map_err(|source| FormatError::Graph { line: 1, source })
}

pub fn read_arc_list(path: &Path) -> Result<Digraph, FormatError> {
    let text =
        std::fs::read_to_string(path).map_err(|source| FormatError::Io { path: path.to_owned(), source })?;
    parse_arc_list(&text).map_err(|e| FormatError::File { path: path.to_owned(), source: Box::new(e) })
}

pub fn write_arc_list(d: &Digraph) -> String {
    let mut out = format!("{} {}\n", d.order(), d.arc_count());
    for (u, v) in d.arcs() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn to_dot(d: &Digraph) -> String {
    let mut out = String::from("digraph G {\n");
    for v in 0..d.order() {
        writeln!(out, "  {v};").unwrap();
    }
    for (u, v) in d.arcs() {
        writeln!(out, "  {u} -> {v};").unwrap();
    }
    out.push_str("}\n");
    out
}
