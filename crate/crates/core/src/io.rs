//! Edge-list text format.
//!
//! ```text
//! # comment
//! L R C
//! x y c
//! ...
//! ```
//!
//! The first non-comment line holds the left size, right size and colour count; every
//! following non-comment line holds one edge. `#` starts a comment anywhere on a line.
//!
//! Coloured digraphs use a similar layout: a vertex count, then `v <vertex> <colour>` lines for
//! coloured vertices and `e <from> <to> <colour>` lines for edges, with `-` for no colour.

use thiserror::Error;

use crate::digraph::LabelledDigraph;
use crate::graph::{ColouredBipartiteMultigraph, Edge, GraphError};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("missing header line `L R C`")]
    MissingHeader,
    #[error("line {line}: expected {expected} integers, found `{text}`")]
    BadLine {
        line: usize,
        expected: usize,
        text: String,
    },
    #[error("line {line}: {reason}")]
    BadDigraphLine { line: usize, reason: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn numbers(line: usize, text: &str, expected: usize) -> Result<Vec<usize>, ParseError> {
    let bad = || ParseError::BadLine {
        line,
        expected,
        text: text.to_string(),
    };
    let values = text
        .split_whitespace()
        .map(|t| t.parse::<usize>().map_err(|_| bad()))
        .collect::<Result<Vec<_>, _>>()?;
    if values.len() != expected {
        return Err(bad());
    }
    Ok(values)
}

pub fn parse_edge_list(text: &str, edge_disjoint: bool) -> Result<ColouredBipartiteMultigraph, ParseError> {
    let mut header = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if header.is_none() {
            header = Some(numbers(i + 1, content, 3)?);
        } else {
            let v = numbers(i + 1, content, 3)?;
            edges.push(Edge::new(v[0], v[1], v[2]));
        }
    }
    let h = header.ok_or(ParseError::MissingHeader)?;
    Ok(ColouredBipartiteMultigraph::new(
        h[0],
        h[1],
        h[2],
        edges,
        edge_disjoint,
    )?)
}

pub fn write_edge_list(g: &ColouredBipartiteMultigraph) -> String {
    let mut out = format!("{} {} {}\n", g.left_size(), g.right_size(), g.colour_count());
    for e in g.edges() {
        out.push_str(&format!("{} {} {}\n", e.x, e.y, e.c));
    }
    out
}

pub fn parse_digraph(text: &str) -> Result<LabelledDigraph, ParseError> {
    let mut d: Option<LabelledDigraph> = None;
    let mut labels: Vec<Option<usize>> = Vec::new();
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let bad = |reason: &str| ParseError::BadDigraphLine {
            line,
            reason: reason.to_string(),
        };
        let fields: Vec<&str> = content.split_whitespace().collect();
        let Some(n) = d.as_ref().map(LabelledDigraph::vertex_count) else {
            let n: usize = content.parse().map_err(|_| bad("expected the vertex count"))?;
            d = Some(LabelledDigraph::unlabelled(n));
            labels = vec![None; n];
            continue;
        };
        let num = |t: &str| t.parse::<usize>().map_err(|_| bad("expected an integer"));
        let colour = |t: &str| if t == "-" { Ok(None) } else { num(t).map(Some) };
        match fields.as_slice() {
            ["v", v, c] => {
                let v = num(v)?;
                if v >= n {
                    return Err(bad("vertex out of range"));
                }
                labels[v] = colour(c)?;
            }
            ["e", a, b, c] => {
                let (a, b) = (num(a)?, num(b)?);
                if a >= n || b >= n {
                    return Err(bad("vertex out of range"));
                }
                edges.push((a, b, colour(c)?));
            }
            _ => return Err(bad("expected `v <vertex> <colour>` or `e <from> <to> <colour>`")),
        }
    }
    if d.is_none() {
        return Err(ParseError::MissingHeader);
    }
    let mut d = LabelledDigraph::new(labels);
    for (a, b, c) in edges {
        d.add_edge(a, b, c);
    }
    Ok(d)
}

pub fn write_digraph(d: &LabelledDigraph) -> String {
    let show = |c: Option<usize>| c.map_or("-".to_string(), |c| c.to_string());
    let mut out = format!("{}\n", d.vertex_count());
    for (v, c) in d.vertex_labels().iter().enumerate() {
        if c.is_some() {
            out.push_str(&format!("v {v} {}\n", show(*c)));
        }
    }
    for e in d.edges() {
        out.push_str(&format!("e {} {} {}\n", e.from, e.to, show(e.label)));
    }
    out
}
