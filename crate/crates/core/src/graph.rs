//! Edge-coloured bipartite multigraphs whose colour classes are matchings.

use std::collections::{BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A single coloured edge `x -- y` with `x` on the left side and `y` on the right side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub x: usize,
    pub y: usize,
    pub c: usize,
}

impl Edge {
    pub fn new(x: usize, y: usize, c: usize) -> Self {
        Edge { x, y, c }
    }

    /// True when the two edges share an endpoint on either side.
    pub fn meets(&self, other: &Edge) -> bool {
        self.x == other.x || self.y == other.y
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("colour {colour} has two edges at {side:?} vertex {vertex}")]
    DuplicateEndpointInColourClass {
        colour: usize,
        side: Side,
        vertex: usize,
    },
    #[error("pair ({x},{y}) carries colours {first} and {second} but the graph is declared edge-disjoint")]
    DuplicateEdgeAcrossColours {
        x: usize,
        y: usize,
        first: usize,
        second: usize,
    },
    #[error("edge ({x},{y},{c}) out of range for sizes {left}x{right} with {colours} colours")]
    IdOutOfRange {
        x: usize,
        y: usize,
        c: usize,
        left: usize,
        right: usize,
        colours: usize,
    },
}

/// Bipartite multigraph made of `colour_count` matchings.
///
/// Edges keep their input order; every index below refers to positions in `edges`.
/// Parallel edges of different colours are stored explicitly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColouredBipartiteMultigraph {
    left_size: usize,
    right_size: usize,
    colour_count: usize,
    edges: Vec<Edge>,
    edge_disjoint: bool,
    by_colour: Vec<Vec<usize>>,
    by_left: Vec<Vec<usize>>,
    by_right: Vec<Vec<usize>>,
    colour_at_left: HashMap<(usize, usize), usize>,
    colour_at_right: HashMap<(usize, usize), usize>,
}

impl ColouredBipartiteMultigraph {
    /// Validates the edge list and builds all indexes.
    pub fn new(
        left_size: usize,
        right_size: usize,
        colour_count: usize,
        edges: Vec<Edge>,
        edge_disjoint: bool,
    ) -> Result<Self, GraphError> {
        let mut by_colour = vec![Vec::new(); colour_count];
        let mut by_left = vec![Vec::new(); left_size];
        let mut by_right = vec![Vec::new(); right_size];
        let mut colour_at_left = HashMap::with_capacity(edges.len());
        let mut colour_at_right = HashMap::with_capacity(edges.len());
        let mut pair_colour: HashMap<(usize, usize), usize> = HashMap::new();

        for (i, e) in edges.iter().enumerate() {
            if e.x >= left_size || e.y >= right_size || e.c >= colour_count {
                return Err(GraphError::IdOutOfRange {
                    x: e.x,
                    y: e.y,
                    c: e.c,
                    left: left_size,
                    right: right_size,
                    colours: colour_count,
                });
            }
            if colour_at_left.insert((e.c, e.x), i).is_some() {
                return Err(GraphError::DuplicateEndpointInColourClass {
                    colour: e.c,
                    side: Side::Left,
                    vertex: e.x,
                });
            }
            if colour_at_right.insert((e.c, e.y), i).is_some() {
                return Err(GraphError::DuplicateEndpointInColourClass {
                    colour: e.c,
                    side: Side::Right,
                    vertex: e.y,
                });
            }
            if edge_disjoint {
                if let Some(&first) = pair_colour.get(&(e.x, e.y)) {
                    return Err(GraphError::DuplicateEdgeAcrossColours {
                        x: e.x,
                        y: e.y,
                        first,
                        second: e.c,
                    });
                }
                pair_colour.insert((e.x, e.y), e.c);
            }
            by_colour[e.c].push(i);
            by_left[e.x].push(i);
            by_right[e.y].push(i);
        }

        Ok(ColouredBipartiteMultigraph {
            left_size,
            right_size,
            colour_count,
            edges,
            edge_disjoint,
            by_colour,
            by_left,
            by_right,
            colour_at_left,
            colour_at_right,
        })
    }

    pub fn left_size(&self) -> usize {
        self.left_size
    }

    pub fn right_size(&self) -> usize {
        self.right_size
    }

    pub fn colour_count(&self) -> usize {
        self.colour_count
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> Edge {
        self.edges[index]
    }

    /// Whether the graph was declared (and validated) edge-disjoint.
    pub fn edge_disjoint_flag(&self) -> bool {
        self.edge_disjoint
    }

    /// Whether no `(x, y)` pair carries two colours, regardless of the declared flag.
    pub fn is_edge_disjoint(&self) -> bool {
        let mut seen = HashSet::with_capacity(self.edges.len());
        self.edges.iter().all(|e| seen.insert((e.x, e.y)))
    }

    /// Edges of colour `c`, in input order.
    pub fn colour_class(&self, c: usize) -> impl Iterator<Item = Edge> + '_ {
        self.by_colour[c].iter().map(move |&i| self.edges[i])
    }

    pub fn class_size(&self, c: usize) -> usize {
        self.by_colour[c].len()
    }

    pub fn min_class_size(&self) -> usize {
        self.by_colour.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn edges_at_left(&self, x: usize) -> impl Iterator<Item = Edge> + '_ {
        self.by_left[x].iter().map(move |&i| self.edges[i])
    }

    pub fn edges_at_right(&self, y: usize) -> impl Iterator<Item = Edge> + '_ {
        self.by_right[y].iter().map(move |&i| self.edges[i])
    }

    /// The colour-`c` edge at left vertex `x`, if any.
    pub fn colour_edge_at_left(&self, c: usize, x: usize) -> Option<Edge> {
        self.colour_at_left.get(&(c, x)).map(|&i| self.edges[i])
    }

    /// The colour-`c` edge at right vertex `y`, if any.
    pub fn colour_edge_at_right(&self, c: usize, y: usize) -> Option<Edge> {
        self.colour_at_right.get(&(c, y)).map(|&i| self.edges[i])
    }

    pub fn contains(&self, e: &Edge) -> bool {
        self.colour_edge_at_left(e.c, e.x) == Some(*e)
    }

    /// Keeps only the listed colours, renumbered `0..colours.len()` in the given order, and
    /// only the edges accepted by `keep`. Vertex ids are unchanged.
    ///
    /// Returns the new graph; `colours[i]` is the original id of new colour `i`.
    pub fn restrict<F>(&self, colours: &[usize], keep: F) -> ColouredBipartiteMultigraph
    where
        F: Fn(&Edge) -> bool,
    {
        let mut renumber = vec![usize::MAX; self.colour_count];
        for (new, &old) in colours.iter().enumerate() {
            renumber[old] = new;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| renumber[e.c] != usize::MAX && keep(e))
            .map(|e| Edge::new(e.x, e.y, renumber[e.c]))
            .collect();
        ColouredBipartiteMultigraph::new(
            self.left_size,
            self.right_size,
            colours.len(),
            edges,
            self.edge_disjoint,
        )
        .expect("restriction of a valid graph is valid")
    }

    /// Swaps the roles of the two sides.
    pub fn transpose(&self) -> ColouredBipartiteMultigraph {
        let edges = self.edges.iter().map(|e| Edge::new(e.y, e.x, e.c)).collect();
        ColouredBipartiteMultigraph::new(
            self.right_size,
            self.left_size,
            self.colour_count,
            edges,
            self.edge_disjoint,
        )
        .expect("transpose of a valid graph is valid")
    }

    /// Colours whose class is non-empty.
    pub fn used_colours(&self) -> BTreeSet<usize> {
        self.edges.iter().map(|e| e.c).collect()
    }
}
