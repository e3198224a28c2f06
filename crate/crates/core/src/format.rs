//! Text formats for graphs and distributions.
//!
//! Graph files:
//!
//! ```text
//! # comment
//! graph 3
//! label 0 a
//! edge 0 1
//! edge 1 2
//! edge 0 2
//! ```
//!
//! or a single generator line such as `family product complete 3 complete 3 complete 5`.
//!
//! Distribution files: a `dist <n>` header followed by `pebbles <vertex> <count>` lines.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{
    build_complete, build_cycle, build_hamming, build_path, cartesian_product, Graph, GraphError,
};
use crate::pebble::Distribution;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: unknown family `{token}`")]
    UnknownFamily { line: usize, token: String },
    #[error("missing `{0}` header")]
    MissingHeader(&'static str),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

/// Non-empty lines with comments stripped, paired with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn parse_usize(line: usize, token: Option<&str>, what: &str) -> Result<usize, ParseError> {
    let token = token.ok_or_else(|| syntax(line, format!("missing {what}")))?;
    token
        .parse()
        .map_err(|_| syntax(line, format!("invalid {what} `{token}`")))
}

pub fn load_graph(text: &str) -> Result<Graph, ParseError> {
    let mut lines = content_lines(text).peekable();
    let (line_no, header) = lines.next().ok_or(ParseError::MissingHeader("graph"))?;
    let mut tokens = header.split_whitespace();
    match tokens.next() {
        Some("family") => {
            let rest: Vec<&str> = tokens.collect();
            if let Some((extra, _)) = lines.next() {
                return Err(syntax(extra, "unexpected content after family line"));
            }
            parse_family(line_no, &rest)
        }
        Some("graph") => {
            let n = parse_usize(line_no, tokens.next(), "vertex count")?;
            if tokens.next().is_some() {
                return Err(syntax(line_no, "trailing tokens after vertex count"));
            }
            let mut labels: Vec<Vec<String>> = (0..n).map(|i| vec![i.to_string()]).collect();
            let mut edges = Vec::new();
            for (line_no, line) in lines {
                let mut tokens = line.split_whitespace();
                match tokens.next() {
                    Some("edge") => {
                        let u = parse_usize(line_no, tokens.next(), "vertex")?;
                        let v = parse_usize(line_no, tokens.next(), "vertex")?;
                        if tokens.next().is_some() {
                            return Err(syntax(line_no, "trailing tokens after edge"));
                        }
                        edges.push((u, v));
                    }
                    Some("label") => {
                        let v = parse_usize(line_no, tokens.next(), "vertex")?;
                        if v >= n {
                            return Err(syntax(
                                line_no,
                                format!("label for vertex {v} outside 0..{n}"),
                            ));
                        }
                        let text: Vec<&str> = tokens.collect();
                        if text.is_empty() {
                            return Err(syntax(line_no, "missing label text"));
                        }
                        labels[v] = vec![text.join(" ")];
                    }
                    Some(other) => {
                        return Err(syntax(line_no, format!("unknown directive `{other}`")))
                    }
                    None => unreachable!("blank lines are filtered"),
                }
            }
            Ok(Graph::with_labels(n, edges, labels)?)
        }
        Some(other) => Err(syntax(
            line_no,
            format!("expected `graph` or `family`, found `{other}`"),
        )),
        None => unreachable!("blank lines are filtered"),
    }
}

/// Expands a generator description such as `hamming 3 2` or
/// `product complete 3 path 4`.
pub fn parse_family(line: usize, tokens: &[&str]) -> Result<Graph, ParseError> {
    let (name, rest) = tokens
        .split_first()
        .ok_or_else(|| syntax(line, "missing family name"))?;
    if *name == "product" {
        let mut rest = rest;
        let mut acc: Option<Graph> = None;
        while !rest.is_empty() {
            let (factor, consumed) = parse_simple_family(line, rest)?;
            rest = &rest[consumed..];
            acc = Some(match acc {
                None => factor,
                Some(g) => cartesian_product(&g, &factor)?,
            });
        }
        return acc.ok_or_else(|| syntax(line, "product needs at least one factor"));
    }
    let (g, consumed) = parse_simple_family(line, tokens)?;
    if consumed != tokens.len() {
        return Err(syntax(
            line,
            format!("unexpected token `{}` after family", tokens[consumed]),
        ));
    }
    Ok(g)
}

fn parse_simple_family(line: usize, tokens: &[&str]) -> Result<(Graph, usize), ParseError> {
    let name = tokens[0];
    let arg = |i: usize, what: &str| parse_usize(line, tokens.get(i).copied(), what);
    match name {
        "complete" => Ok((build_complete(arg(1, "complete size")?)?, 2)),
        "path" => Ok((build_path(arg(1, "path length")?)?, 2)),
        "cycle" => Ok((build_cycle(arg(1, "cycle length")?)?, 2)),
        "hamming" => {
            let m = arg(1, "alphabet size")?;
            let k = arg(2, "word length")?;
            Ok((build_hamming(m, k)?, 3))
        }
        other => Err(ParseError::UnknownFamily {
            line,
            token: other.to_string(),
        }),
    }
}

pub fn save_graph(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "graph {}", g.n()).unwrap();
    for v in 0..g.n() {
        let label = g.label(v);
        if label != v.to_string() {
            writeln!(out, "label {v} {label}").unwrap();
        }
    }
    for (u, v) in g.edges() {
        writeln!(out, "edge {u} {v}").unwrap();
    }
    out
}

pub fn load_distribution(text: &str) -> Result<Distribution, ParseError> {
    let mut lines = content_lines(text);
    let (line_no, header) = lines.next().ok_or(ParseError::MissingHeader("dist"))?;
    let mut tokens = header.split_whitespace();
    if tokens.next() != Some("dist") {
        return Err(syntax(line_no, "expected `dist <n>` header"));
    }
    let n = parse_usize(line_no, tokens.next(), "vertex count")?;
    let mut counts = vec![0u32; n];
    for (line_no, line) in lines {
        let mut tokens = line.split_whitespace();
        if tokens.next() != Some("pebbles") {
            return Err(syntax(line_no, "expected `pebbles <vertex> <count>`"));
        }
        let v = parse_usize(line_no, tokens.next(), "vertex")?;
        let c = parse_usize(line_no, tokens.next(), "count")?;
        if v >= n {
            return Err(syntax(line_no, format!("vertex {v} outside 0..{n}")));
        }
        let c = u32::try_from(c).map_err(|_| syntax(line_no, "count too large"))?;
        counts[v] = counts[v]
            .checked_add(c)
            .ok_or_else(|| syntax(line_no, "count too large"))?;
    }
    Ok(Distribution::from_counts(counts))
}

pub fn save_distribution(p: &Distribution) -> String {
    let mut out = format!("dist {}\n", p.n());
    for (v, c) in p.iter_nonzero() {
        writeln!(out, "pebbles {v} {c}").unwrap();
    }
    out
}
