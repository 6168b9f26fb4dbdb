//! Rainbow matchings and the accessor context around a fixed matching.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{ColouredBipartiteMultigraph, Edge};

/// A set of edges with pairwise distinct left vertices, right vertices and colours.
///
/// The type does not enforce the invariant; use [`RainbowMatching::check`] against a host graph.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RainbowMatching {
    edges: Vec<Edge>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchingViolation {
    #[error("edge ({},{},{}) is not in the graph", .0.x, .0.y, .0.c)]
    EdgeNotInGraph(Edge),
    #[error("left vertex {0} is used twice")]
    SharedLeft(usize),
    #[error("right vertex {0} is used twice")]
    SharedRight(usize),
    #[error("colour {0} is used twice")]
    RepeatedColour(usize),
}

impl RainbowMatching {
    pub fn new(edges: Vec<Edge>) -> Self {
        RainbowMatching { edges }
    }

    pub fn empty() -> Self {
        RainbowMatching::default()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn into_edges(self) -> Vec<Edge> {
        self.edges
    }

    pub fn push(&mut self, e: Edge) {
        self.edges.push(e);
    }

    pub fn contains(&self, e: &Edge) -> bool {
        self.edges.contains(e)
    }

    pub fn colours(&self) -> BTreeSet<usize> {
        self.edges.iter().map(|e| e.c).collect()
    }

    pub fn left_cover(&self) -> BTreeSet<usize> {
        self.edges.iter().map(|e| e.x).collect()
    }

    pub fn right_cover(&self) -> BTreeSet<usize> {
        self.edges.iter().map(|e| e.y).collect()
    }

    /// Edges sorted by colour; a canonical form for comparisons and hashing.
    pub fn canonical(&self) -> RainbowMatching {
        let mut edges = self.edges.clone();
        edges.sort_by_key(|e| (e.c, e.x, e.y));
        RainbowMatching { edges }
    }

    /// Reports the first violated rainbow-matching condition against `g`.
    pub fn check(&self, g: &ColouredBipartiteMultigraph) -> Result<(), MatchingViolation> {
        let mut xs = BTreeSet::new();
        let mut ys = BTreeSet::new();
        let mut cs = BTreeSet::new();
        for e in &self.edges {
            if e.c >= g.colour_count() || e.x >= g.left_size() || !g.contains(e) {
                return Err(MatchingViolation::EdgeNotInGraph(*e));
            }
            if !xs.insert(e.x) {
                return Err(MatchingViolation::SharedLeft(e.x));
            }
            if !ys.insert(e.y) {
                return Err(MatchingViolation::SharedRight(e.y));
            }
            if !cs.insert(e.c) {
                return Err(MatchingViolation::RepeatedColour(e.c));
            }
        }
        Ok(())
    }

    /// Swaps left and right endpoints, matching [`ColouredBipartiteMultigraph::transpose`].
    pub fn transpose(&self) -> RainbowMatching {
        RainbowMatching::new(self.edges.iter().map(|e| Edge::new(e.y, e.x, e.c)).collect())
    }
}

/// Verdict form: `Ok(())` when `m` is a rainbow matching of `g`.
pub fn verify_rainbow_matching(
    g: &ColouredBipartiteMultigraph,
    m: &RainbowMatching,
) -> Result<(), MatchingViolation> {
    m.check(g)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContextError {
    #[error("matching is not a rainbow matching of the host graph: {0}")]
    InvalidMatching(#[from] MatchingViolation),
}

/// A host graph with a fixed rainbow matching `M` and the lookup maps
/// `(x)_M, (y)_M, (c)_M` together with the uncovered vertices and missing colours.
#[derive(Debug, Clone)]
pub struct MatchingContext<'g> {
    graph: &'g ColouredBipartiteMultigraph,
    matching: RainbowMatching,
    at_left: Vec<Option<usize>>,
    at_right: Vec<Option<usize>>,
    of_colour: Vec<Option<usize>>,
}

impl<'g> MatchingContext<'g> {
    pub fn new(
        graph: &'g ColouredBipartiteMultigraph,
        matching: RainbowMatching,
    ) -> Result<Self, ContextError> {
        matching.check(graph)?;
        let mut at_left = vec![None; graph.left_size()];
        let mut at_right = vec![None; graph.right_size()];
        let mut of_colour = vec![None; graph.colour_count()];
        for (i, e) in matching.edges().iter().enumerate() {
            at_left[e.x] = Some(i);
            at_right[e.y] = Some(i);
            of_colour[e.c] = Some(i);
        }
        Ok(MatchingContext {
            graph,
            matching,
            at_left,
            at_right,
            of_colour,
        })
    }

    pub fn graph(&self) -> &'g ColouredBipartiteMultigraph {
        self.graph
    }

    pub fn matching(&self) -> &RainbowMatching {
        &self.matching
    }

    pub fn size(&self) -> usize {
        self.matching.len()
    }

    /// `(x)_M`
    pub fn edge_at_left(&self, x: usize) -> Option<Edge> {
        self.at_left
            .get(x)
            .copied()
            .flatten()
            .map(|i| self.matching.edges()[i])
    }

    /// `(y)_M`
    pub fn edge_at_right(&self, y: usize) -> Option<Edge> {
        self.at_right
            .get(y)
            .copied()
            .flatten()
            .map(|i| self.matching.edges()[i])
    }

    /// `(c)_M`
    pub fn edge_of_colour(&self, c: usize) -> Option<Edge> {
        self.of_colour
            .get(c)
            .copied()
            .flatten()
            .map(|i| self.matching.edges()[i])
    }

    /// `(x)_C`
    pub fn colour_at_left(&self, x: usize) -> Option<usize> {
        self.edge_at_left(x).map(|e| e.c)
    }

    /// `(x)_Y`
    pub fn partner_of_left(&self, x: usize) -> Option<usize> {
        self.edge_at_left(x).map(|e| e.y)
    }

    /// `(y)_C`
    pub fn colour_at_right(&self, y: usize) -> Option<usize> {
        self.edge_at_right(y).map(|e| e.c)
    }

    /// `(y)_X`
    pub fn partner_of_right(&self, y: usize) -> Option<usize> {
        self.edge_at_right(y).map(|e| e.x)
    }

    /// `(c)_X`
    pub fn left_of_colour(&self, c: usize) -> Option<usize> {
        self.edge_of_colour(c).map(|e| e.x)
    }

    /// `(c)_Y`
    pub fn right_of_colour(&self, c: usize) -> Option<usize> {
        self.edge_of_colour(c).map(|e| e.y)
    }

    /// `(S)_X` for a set of edges.
    pub fn lefts_of_edges<'a, I: IntoIterator<Item = &'a Edge>>(&self, s: I) -> BTreeSet<usize> {
        s.into_iter().map(|e| e.x).collect()
    }

    /// `(S)_C` for a set of left vertices; uncovered vertices are skipped.
    pub fn colours_of_lefts<I: IntoIterator<Item = usize>>(&self, s: I) -> BTreeSet<usize> {
        s.into_iter().filter_map(|x| self.colour_at_left(x)).collect()
    }

    /// `(S)_M` for a set of colours; missing colours are skipped.
    pub fn edges_of_colours<I: IntoIterator<Item = usize>>(&self, s: I) -> BTreeSet<Edge> {
        s.into_iter().filter_map(|c| self.edge_of_colour(c)).collect()
    }

    /// `(S)_M` for a set of left vertices.
    pub fn edges_at_lefts<I: IntoIterator<Item = usize>>(&self, s: I) -> BTreeSet<Edge> {
        s.into_iter().filter_map(|x| self.edge_at_left(x)).collect()
    }

    /// `(S)_X` for a set of colours.
    pub fn lefts_of_colours<I: IntoIterator<Item = usize>>(&self, s: I) -> BTreeSet<usize> {
        s.into_iter().filter_map(|c| self.left_of_colour(c)).collect()
    }

    /// `X_0`: left vertices not covered by `M`.
    pub fn uncovered_left(&self) -> Vec<usize> {
        (0..self.graph.left_size())
            .filter(|&x| self.at_left[x].is_none())
            .collect()
    }

    /// `Y_0`: right vertices not covered by `M`.
    pub fn uncovered_right(&self) -> Vec<usize> {
        (0..self.graph.right_size())
            .filter(|&y| self.at_right[y].is_none())
            .collect()
    }

    pub fn is_left_covered(&self, x: usize) -> bool {
        self.at_left[x].is_some()
    }

    pub fn is_right_covered(&self, y: usize) -> bool {
        self.at_right[y].is_some()
    }

    /// Colours with no edge in `M`, ascending.
    pub fn missing_colours(&self) -> Vec<usize> {
        (0..self.graph.colour_count())
            .filter(|&c| self.of_colour[c].is_none())
            .collect()
    }

    /// `c*`, defined when exactly one colour is missing.
    pub fn c_star(&self) -> Option<usize> {
        match self.missing_colours().as_slice() {
            [c] => Some(*c),
            _ => None,
        }
    }
}
