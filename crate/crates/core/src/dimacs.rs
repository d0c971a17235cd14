//! DIMACS `.col` edge lists.
//!
//! ```text
//! c <free text>          comment, kept in order
//! p edge <n> <m>         exactly one, before any edge (`p col` also read)
//! e <u> <v>              1-based endpoints, u != v
//! ```
//!
//! Repeated edges (in either orientation) are collapsed with a warning, as is
//! a header edge count that disagrees with the distinct edges read. Written
//! files list comments first, then the header, then edges sorted by
//! `(min, max)`, so `write(parse(write(g)))` reproduces the text exactly.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Graph, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct DimacsError {
    pub line: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimacsGraph {
    pub graph: Graph,
    /// Comment bodies without the leading `c `.
    pub comments: Vec<String>,
    pub warnings: Vec<String>,
}

fn err(line: usize, message: impl Into<String>) -> DimacsError {
    DimacsError { line, message: message.into() }
}

fn number(line: usize, tok: Option<&str>, what: &str) -> Result<usize, DimacsError> {
    let tok = tok.ok_or_else(|| err(line, format!("missing {what}")))?;
    tok.parse().map_err(|_| err(line, format!("{what} must be a non-negative integer, found `{tok}`")))
}

pub fn parse_dimacs(text: &str) -> Result<DimacsGraph, DimacsError> {
    let mut comments = Vec::new();
    let mut warnings = Vec::new();
    let mut header: Option<(usize, usize)> = None;
    let mut edges = BTreeSet::new();
    let mut last = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last = line;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        let mut toks = trimmed.split_whitespace();
        match toks.next() {
            Some("c") => {
                let body = trimmed[1..].strip_prefix(' ').unwrap_or(&trimmed[1..]);
                comments.push(body.to_string());
            }
            Some("p") => {
                if header.is_some() {
                    return Err(err(line, "second `p` header"));
                }
                match toks.next() {
                    Some("edge") | Some("col") => {}
                    other => return Err(err(line, format!("expected `p edge`, found `p {}`", other.unwrap_or("")))),
                }
                let n = number(line, toks.next(), "vertex count")?;
                let m = number(line, toks.next(), "edge count")?;
                if toks.next().is_some() {
                    return Err(err(line, "trailing tokens after header"));
                }
                header = Some((n, m));
            }
            Some("e") => {
                let (n, _) = header.ok_or_else(|| err(line, "edge before the `p edge` header"))?;
                let u = number(line, toks.next(), "endpoint")?;
                let v = number(line, toks.next(), "endpoint")?;
                if toks.next().is_some() {
                    return Err(err(line, "trailing tokens after edge"));
                }
                for x in [u, v] {
                    if x == 0 || x > n {
                        return Err(err(line, format!("vertex {x} outside 1..={n}")));
                    }
                }
                if u == v {
                    return Err(err(line, format!("loop at vertex {u}")));
                }
                if !edges.insert((u.min(v) - 1, u.max(v) - 1)) {
                    warnings.push(format!("line {line}: duplicate edge {u} {v} ignored"));
                }
            }
            Some(other) => return Err(err(line, format!("unknown line type `{other}`"))),
            None => unreachable!("blank lines are skipped"),
        }
    }
    let (n, m) = header.ok_or_else(|| err(last.max(1), "missing `p edge <n> <m>` header"))?;
    if m != edges.len() {
        warnings.push(format!("header declares {m} edges, found {} distinct", edges.len()));
    }
    for w in &warnings {
        log::warn!("{w}");
    }
    let graph = Graph::from_edges(n, edges.iter().map(|&(u, v)| (u as u32, v as u32)))
        .expect("edges are distinct, in range and loop-free");
    Ok(DimacsGraph { graph, comments, warnings })
}

pub fn write_dimacs(g: &Graph) -> String {
    write_dimacs_with_comments(g, &[])
}

/// Live vertices are renumbered `1..` in id order, which is the identity on
/// graphs without contractions.
pub fn write_dimacs_with_comments(g: &Graph, comments: &[String]) -> String {
    let ids: Vec<VertexId> = g.vertices().collect();
    let mut pos = vec![0u32; g.next_id().index()];
    for (i, v) in ids.iter().enumerate() {
        pos[v.index()] = i as u32 + 1;
    }
    let mut edges: Vec<(u32, u32)> = g
        .edges()
        .map(|(u, v)| {
            let (a, b) = (pos[u.index()], pos[v.index()]);
            (a.min(b), a.max(b))
        })
        .collect();
    edges.sort_unstable();
    let mut out = String::new();
    for c in comments {
        writeln!(out, "c {c}").expect("string write");
    }
    writeln!(out, "p edge {} {}", ids.len(), edges.len()).expect("string write");
    for (u, v) in edges {
        writeln!(out, "e {u} {v}").expect("string write");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn triangle_and_k4() {
        let k3 = parse_dimacs("p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n").unwrap();
        assert_eq!(k3.graph, named::complete(3));
        assert!(k3.warnings.is_empty());
        let k4 = parse_dimacs(&write_dimacs(&named::complete(4))).unwrap().graph;
        assert_eq!(k4.edge_count(), 6);
        assert!(k4.is_complete());
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(parse_dimacs("p edge 2 1\ne 1 1\n").unwrap_err().line, 2);
        assert_eq!(parse_dimacs("c x\ne 1 2\n").unwrap_err().line, 2);
        assert_eq!(parse_dimacs("p edge 2 1\n\ne 1 3\n").unwrap_err().line, 3);
        assert_eq!(parse_dimacs("c only comments\n").unwrap_err().line, 1);
        assert_eq!(parse_dimacs("p edge 2 1\np edge 2 1\n").unwrap_err().line, 2);
        assert!(parse_dimacs("p edge 2 x\n").is_err());
        assert!(parse_dimacs("q 1\n").is_err());
    }

    #[test]
    fn duplicates_collapse_with_warning() {
        let d = parse_dimacs("p edge 3 3\ne 1 2\ne 2 1\ne 2 3\n").unwrap();
        assert_eq!(d.graph.edge_count(), 2);
        assert_eq!(d.warnings.len(), 2);
    }

    #[test]
    fn canonical_text_round_trips() {
        let text = "c gen model=er n=5\np edge 5 4\ne 1 2\ne 1 5\ne 2 3\ne 3 4\n";
        let d = parse_dimacs(text).unwrap();
        assert_eq!(write_dimacs_with_comments(&d.graph, &d.comments), text);
        let pet = named::petersen();
        assert_eq!(parse_dimacs(&write_dimacs(&pet)).unwrap().graph, pet);
    }

    #[test]
    fn contracted_graphs_are_renumbered() {
        let mut g = named::cycle(4);
        g.contract(VertexId(0), VertexId(2)).unwrap();
        assert_eq!(write_dimacs(&g), "p edge 3 2\ne 1 3\ne 2 3\n");
    }
}
