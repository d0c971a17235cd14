//! Line-oriented certificate files. Vertex ids are written 1-based, matching
//! DIMACS, so survivor `s` of the id scheme appears as `s + 1`.
//!
//! ```text
//! uncol  := "cert uncol" COUNT NL step* "k4" ID ID ID ID NL
//! step   := "step" ID ID "diamond" ID ID NL
//!         | "step" ID ID "nested-edge {" NL uncol "}" NL
//!         | "step" ID ID "nested-tadpole" ID ID ID ID "{" NL uncol "}" NL
//! col    := "cert col" NL class*
//! class  := "class" INDEX ID* NL          (INDEX runs 1, 2, 3 in order)
//! ```
//!
//! `COUNT` is the number of top-level steps of that block. The writer indents
//! each nesting level by two spaces; the parser ignores leading whitespace.

use std::fmt::Write as _;

use thiserror::Error;

use super::{ColoringCertificate, ContractionStep, Justification, UncolorabilityCertificate};
use crate::graph::{TadpoleWitness, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Coloring(ColoringCertificate),
    Uncolorability(UncolorabilityCertificate),
}

impl Certificate {
    pub fn to_text(&self) -> String {
        match self {
            Certificate::Coloring(c) => write_coloring(c),
            Certificate::Uncolorability(c) => write_uncolorability(c),
        }
    }
}

pub fn write_coloring(c: &ColoringCertificate) -> String {
    let mut out = String::from("cert col\n");
    for (i, class) in c.classes.iter().enumerate() {
        write!(out, "class {}", i + 1).expect("string write");
        for v in class {
            write!(out, " {}", v.0 + 1).expect("string write");
        }
        out.push('\n');
    }
    out
}

pub fn write_uncolorability(c: &UncolorabilityCertificate) -> String {
    let mut out = String::new();
    write_block(&mut out, c, 0);
    out
}

fn write_block(out: &mut String, c: &UncolorabilityCertificate, depth: usize) {
    let pad = "  ".repeat(depth);
    let id = |v: VertexId| v.0 + 1;
    writeln!(out, "{pad}cert uncol {}", c.steps.len()).expect("string write");
    for step in &c.steps {
        let (u, v) = step.pair;
        match &step.justification {
            Justification::Diamond { spine: (z, w) } => {
                writeln!(out, "{pad}step {} {} diamond {} {}", id(u), id(v), id(*z), id(*w)).expect("string write");
            }
            Justification::NestedEdge(nested) => {
                writeln!(out, "{pad}step {} {} nested-edge {{", id(u), id(v)).expect("string write");
                write_block(out, nested, depth + 1);
                writeln!(out, "{pad}}}").expect("string write");
            }
            Justification::NestedTadpole { tadpole: t, nested } => {
                writeln!(
                    out,
                    "{pad}step {} {} nested-tadpole {} {} {} {} {{",
                    id(u),
                    id(v),
                    id(t.x),
                    id(t.y),
                    id(t.z),
                    id(t.w)
                )
                .expect("string write");
                write_block(out, nested, depth + 1);
                writeln!(out, "{pad}}}").expect("string write");
            }
        }
    }
    let k = c.k4.map(id);
    writeln!(out, "{pad}k4 {} {} {} {}", k[0], k[1], k[2], k[3]).expect("string write");
}

struct Lines<'a> {
    lines: Vec<(usize, Vec<&'a str>)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn next(&mut self) -> Result<(usize, &[&'a str]), FormatError> {
        let last = self.lines.last().map_or(1, |l| l.0);
        let item = self.lines.get(self.pos).ok_or(FormatError { line: last, message: "unexpected end of file".into() })?;
        self.pos += 1;
        Ok((item.0, &item.1))
    }
}

fn err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError { line, message: message.into() }
}

fn parse_id(line: usize, tok: &str) -> Result<VertexId, FormatError> {
    match tok.parse::<u32>() {
        Ok(0) => Err(err(line, "vertex ids are 1-based")),
        Ok(v) => Ok(VertexId(v - 1)),
        Err(_) => Err(err(line, format!("expected a vertex id, found `{tok}`"))),
    }
}

fn parse_ids<const N: usize>(line: usize, toks: &[&str]) -> Result<[VertexId; N], FormatError> {
    let mut out = [VertexId(0); N];
    for (slot, tok) in out.iter_mut().zip(toks) {
        *slot = parse_id(line, tok)?;
    }
    Ok(out)
}

/// Parses either kind of certificate.
pub fn parse_certificate(text: &str) -> Result<Certificate, FormatError> {
    let lines: Vec<(usize, Vec<&str>)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split_whitespace().collect::<Vec<_>>()))
        .filter(|(_, toks)| !toks.is_empty())
        .collect();
    let mut lines = Lines { lines, pos: 0 };
    let (line, head) = lines.next()?;
    let cert = match head {
        ["cert", "col"] => Certificate::Coloring(parse_coloring(&mut lines)?),
        ["cert", "uncol", ..] => {
            lines.pos -= 1;
            Certificate::Uncolorability(parse_block(&mut lines)?)
        }
        _ => return Err(err(line, "expected `cert col` or `cert uncol <count>`")),
    };
    if let Some((line, _)) = lines.lines.get(lines.pos) {
        return Err(err(*line, "trailing content after certificate"));
    }
    Ok(cert)
}

fn parse_coloring(lines: &mut Lines<'_>) -> Result<ColoringCertificate, FormatError> {
    let mut classes = Vec::new();
    while lines.pos < lines.lines.len() {
        let (line, toks) = lines.next()?;
        match toks {
            ["class", index, rest @ ..] => {
                if index.parse::<usize>().ok() != Some(classes.len() + 1) {
                    return Err(err(line, format!("expected class {}", classes.len() + 1)));
                }
                let class = rest.iter().map(|t| parse_id(line, t)).collect::<Result<Vec<_>, _>>()?;
                classes.push(class);
            }
            _ => return Err(err(line, "expected `class <index> <ids...>`")),
        }
    }
    Ok(ColoringCertificate { classes })
}

fn parse_block(lines: &mut Lines<'_>) -> Result<UncolorabilityCertificate, FormatError> {
    let (line, head) = lines.next()?;
    let count = match head {
        ["cert", "uncol", n] => n.parse::<usize>().map_err(|_| err(line, "step count must be a number"))?,
        _ => return Err(err(line, "expected `cert uncol <count>`")),
    };
    let mut steps = Vec::with_capacity(count);
    for _ in 0..count {
        let (line, toks) = lines.next()?;
        let toks = toks.to_vec();
        let step = match toks.as_slice() {
            ["step", u, v, "diamond", z, w] => {
                let [u, v, z, w] = parse_ids::<4>(line, &[u, v, z, w])?;
                ContractionStep { pair: (u, v), justification: Justification::Diamond { spine: (z, w) } }
            }
            ["step", u, v, "nested-edge", "{"] => {
                let [u, v] = parse_ids::<2>(line, &[u, v])?;
                let nested = parse_block(lines)?;
                close(lines)?;
                ContractionStep { pair: (u, v), justification: Justification::NestedEdge(Box::new(nested)) }
            }
            ["step", u, v, "nested-tadpole", x, y, z, w, "{"] => {
                let [u, v, x, y, z, w] = parse_ids::<6>(line, &[u, v, x, y, z, w])?;
                let nested = parse_block(lines)?;
                close(lines)?;
                ContractionStep {
                    pair: (u, v),
                    justification: Justification::NestedTadpole {
                        tadpole: TadpoleWitness { x, y, z, w },
                        nested: Box::new(nested),
                    },
                }
            }
            _ => return Err(err(line, "malformed step line")),
        };
        steps.push(step);
    }
    let (line, toks) = lines.next()?;
    let k4 = match toks {
        ["k4", a, b, c, d] => parse_ids::<4>(line, &[a, b, c, d])?,
        _ => return Err(err(line, "expected `k4 <a> <b> <c> <d>`")),
    };
    Ok(UncolorabilityCertificate { steps, k4 })
}

fn close(lines: &mut Lines<'_>) -> Result<(), FormatError> {
    let (line, toks) = lines.next()?;
    if toks != ["}"] {
        return Err(err(line, "expected `}`"));
    }
    Ok(())
}
