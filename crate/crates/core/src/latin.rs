//! Latin squares and rectangles, and their coloured bipartite encodings.
//!
//! A square `S` becomes a proper colouring of `K_{n,n}`: row `i` to column `j` with colour
//! `S[i][j]`, so transversals are exactly perfect rainbow matchings. A rectangle with `m` rows
//! becomes `m` colour classes (one per row) between columns and symbols.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{ColouredBipartiteMultigraph, Edge};
use crate::matching::RainbowMatching;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatinError {
    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedRows {
        row: usize,
        found: usize,
        expected: usize,
    },
    #[error("symbol `{symbol}` repeats in row {row} (columns {first} and {second})")]
    RowRepeat {
        row: usize,
        first: usize,
        second: usize,
        symbol: String,
    },
    #[error("symbol `{symbol}` repeats in column {col} (rows {first} and {second})")]
    ColumnRepeat {
        col: usize,
        first: usize,
        second: usize,
        symbol: String,
    },
    #[error("{found} distinct symbols in a grid with {cols} columns")]
    TooManySymbols { found: usize, cols: usize },
    #[error("{rows} rows exceed {cols} columns")]
    TooManyRows { rows: usize, cols: usize },
    #[error("grid is empty")]
    Empty,
    #[error("{rows}x{cols} grid is not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matching does not come from this square: {0}")]
    MatchingGraphMismatch(String),
}

/// An `m x n` grid over `n` symbols with no repeat in any row or column.
///
/// Symbols are stored as ids `0..n`, numbered in first-appearance order; `tokens[id]` is the
/// original text of the symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatinRectangle {
    rows: usize,
    cols: usize,
    grid: Vec<Vec<usize>>,
    tokens: Vec<String>,
}

/// One cell of a (partial) transversal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
    pub symbol: usize,
}

impl LatinRectangle {
    /// Builds a rectangle from symbol ids `0..cols`, validating the Latin property.
    pub fn from_grid(grid: Vec<Vec<usize>>) -> Result<Self, LatinError> {
        let tokens_needed = grid.iter().flatten().copied().max().map_or(0, |m| m + 1);
        let cols = grid.first().map_or(0, Vec::len);
        let tokens = (0..tokens_needed.max(cols)).map(|s| s.to_string()).collect();
        Self::validated(grid, tokens)
    }

    fn validated(grid: Vec<Vec<usize>>, mut tokens: Vec<String>) -> Result<Self, LatinError> {
        let rows = grid.len();
        if rows == 0 {
            return Err(LatinError::Empty);
        }
        let cols = grid[0].len();
        for (r, row) in grid.iter().enumerate() {
            if row.len() != cols {
                return Err(LatinError::RaggedRows {
                    row: r,
                    found: row.len(),
                    expected: cols,
                });
            }
        }
        let distinct = {
            let mut seen: Vec<usize> = grid.iter().flatten().copied().collect();
            seen.sort_unstable();
            seen.dedup();
            seen.len()
        };
        if distinct > cols || grid.iter().flatten().any(|&s| s >= cols.max(tokens.len())) {
            return Err(LatinError::TooManySymbols {
                found: distinct,
                cols,
            });
        }
        for (r, row) in grid.iter().enumerate() {
            let mut at = HashMap::new();
            for (c, &s) in row.iter().enumerate() {
                if let Some(first) = at.insert(s, c) {
                    return Err(LatinError::RowRepeat {
                        row: r,
                        first,
                        second: c,
                        symbol: tokens[s].clone(),
                    });
                }
            }
        }
        for c in 0..cols {
            let mut at = HashMap::new();
            for (r, row) in grid.iter().enumerate() {
                if let Some(first) = at.insert(row[c], r) {
                    return Err(LatinError::ColumnRepeat {
                        col: c,
                        first,
                        second: r,
                        symbol: tokens[row[c]].clone(),
                    });
                }
            }
        }
        if rows > cols {
            return Err(LatinError::TooManyRows { rows, cols });
        }
        tokens.truncate(cols.max(distinct));
        Ok(LatinRectangle {
            rows,
            cols,
            grid,
            tokens,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> usize {
        self.grid[row][col]
    }

    pub fn grid(&self) -> &[Vec<usize>] {
        &self.grid
    }

    pub fn token(&self, symbol: usize) -> &str {
        &self.tokens[symbol]
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }
}

/// Parses whitespace-separated tokens, one row per non-empty line. Any distinct strings may be
/// used as symbols.
pub fn parse_latin(text: &str) -> Result<LatinRectangle, LatinError> {
    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut tokens = Vec::new();
    let mut grid = Vec::new();
    for line in text.lines() {
        let row: Vec<&str> = line.split_whitespace().collect();
        if row.is_empty() {
            continue;
        }
        let row = row
            .into_iter()
            .map(|t| {
                *ids.entry(t.to_string()).or_insert_with(|| {
                    tokens.push(t.to_string());
                    tokens.len() - 1
                })
            })
            .collect();
        grid.push(row);
    }
    LatinRectangle::validated(grid, tokens)
}

pub fn write_latin(l: &LatinRectangle) -> String {
    let mut out = String::new();
    for row in &l.grid {
        let line: Vec<&str> = row.iter().map(|&s| l.tokens[s].as_str()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// Rows on the left, columns on the right, colour = symbol.
pub fn square_to_graph(l: &LatinRectangle) -> Result<ColouredBipartiteMultigraph, LatinError> {
    if !l.is_square() {
        return Err(LatinError::NotSquare {
            rows: l.rows,
            cols: l.cols,
        });
    }
    let n = l.rows;
    let mut edges = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            edges.push(Edge::new(i, j, l.grid[i][j]));
        }
    }
    Ok(ColouredBipartiteMultigraph::new(n, n, n, edges, true).expect("a Latin square is a proper colouring"))
}

/// Columns on the left, symbols on the right, one colour per row: row `k` with symbol `j` in
/// column `i` gives the colour-`k` edge `i -- j`.
pub fn rectangle_to_graph(l: &LatinRectangle) -> ColouredBipartiteMultigraph {
    let mut edges = Vec::with_capacity(l.rows * l.cols);
    for k in 0..l.rows {
        for i in 0..l.cols {
            edges.push(Edge::new(i, l.grid[k][i], k));
        }
    }
    ColouredBipartiteMultigraph::new(l.cols, l.cols, l.rows, edges, true)
        .expect("rows of a Latin rectangle are edge-disjoint matchings")
}

/// Reads the cells of a partial transversal off a rainbow matching of `square_to_graph(l)`.
pub fn extract_transversal(l: &LatinRectangle, m: &RainbowMatching) -> Result<Vec<Cell>, LatinError> {
    let g = square_to_graph(l)?;
    m.check(&g)
        .map_err(|v| LatinError::MatchingGraphMismatch(v.to_string()))?;
    let mut cells: Vec<Cell> = m
        .edges()
        .iter()
        .map(|e| Cell {
            row: e.x,
            col: e.y,
            symbol: e.c,
        })
        .collect();
    cells.sort();
    Ok(cells)
}

/// True when the cells have pairwise distinct rows, columns and symbols and match the grid.
pub fn is_partial_transversal(l: &LatinRectangle, cells: &[Cell]) -> bool {
    let mut rows = vec![false; l.rows];
    let mut cols = vec![false; l.cols];
    let mut syms = vec![false; l.cols];
    cells.iter().all(|cell| {
        cell.row < l.rows
            && cell.col < l.cols
            && l.grid[cell.row][cell.col] == cell.symbol
            && !std::mem::replace(&mut rows[cell.row], true)
            && !std::mem::replace(&mut cols[cell.col], true)
            && !std::mem::replace(&mut syms[cell.symbol], true)
    })
}

/// Largest partial transversal by row-wise backtracking over cells.
///
/// Each row either contributes one cell whose column and symbol are still free, or is skipped.
/// Works directly on the grid and shares no code with the graph-level search.
pub fn max_partial_transversal(l: &LatinRectangle) -> Vec<Cell> {
    struct Search<'a> {
        l: &'a LatinRectangle,
        col_used: Vec<bool>,
        sym_used: Vec<bool>,
        current: Vec<Cell>,
        best: Vec<Cell>,
    }

    impl Search<'_> {
        fn run(&mut self, row: usize) {
            if self.current.len() + (self.l.rows - row) <= self.best.len() {
                return;
            }
            if row == self.l.rows {
                self.best = self.current.clone();
                return;
            }
            for col in 0..self.l.cols {
                let s = self.l.grid[row][col];
                if self.col_used[col] || self.sym_used[s] {
                    continue;
                }
                self.col_used[col] = true;
                self.sym_used[s] = true;
                self.current.push(Cell { row, col, symbol: s });
                self.run(row + 1);
                self.current.pop();
                self.col_used[col] = false;
                self.sym_used[s] = false;
                if self.best.len() == self.l.rows {
                    return;
                }
            }
            self.run(row + 1);
        }
    }

    let mut search = Search {
        l,
        col_used: vec![false; l.cols],
        sym_used: vec![false; l.cols],
        current: Vec::new(),
        best: Vec::new(),
    };
    search.run(0);
    search.best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances;

    #[test]
    fn parse_2x2() {
        let l = parse_latin("1 2\n2 1").unwrap();
        assert_eq!((l.rows(), l.cols()), (2, 2));
        assert_eq!(l.tokens(), &["1", "2"]);
        let mut got = square_to_graph(&l).unwrap().edges().to_vec();
        let mut want = instances::latin_2x2().edges().to_vec();
        got.sort();
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn parse_1x1_and_cyclic() {
        let l = parse_latin("1").unwrap();
        let g = square_to_graph(&l).unwrap();
        assert_eq!(g.edges(), &[Edge::new(0, 0, 0)]);
        let l = parse_latin("1 2 3\n2 3 1\n3 1 2").unwrap();
        let g = square_to_graph(&l).unwrap();
        assert_eq!(g.edges().len(), 9);
        assert!((0..3).all(|c| g.class_size(c) == 3));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_latin("1 2\n2"),
            Err(LatinError::RaggedRows { row: 1, .. })
        ));
        assert!(matches!(
            parse_latin("1 1\n2 1"),
            Err(LatinError::RowRepeat {
                row: 0,
                first: 0,
                second: 1,
                ..
            })
        ));
        assert!(matches!(
            parse_latin("1 2\n1 3"),
            Err(LatinError::TooManySymbols { found: 3, cols: 2 })
        ));
        assert!(matches!(
            parse_latin("a b\nb a\na b"),
            Err(LatinError::ColumnRepeat { col: 0, .. })
        ));
        assert!(matches!(
            parse_latin("1 2\n1 2"),
            Err(LatinError::ColumnRepeat { .. })
        ));
        assert!(matches!(parse_latin("\n\n"), Err(LatinError::Empty)));
    }

    #[test]
    fn arbitrary_tokens_round_trip() {
        let text = "x yy z\nyy z x\n";
        let l = parse_latin(text).unwrap();
        assert_eq!(write_latin(&l), text);
        assert_eq!(parse_latin(&write_latin(&l)).unwrap(), l);
    }

    #[test]
    fn rectangle_encoding() {
        let l = parse_latin("1 2").unwrap();
        let g = rectangle_to_graph(&l);
        assert_eq!(g.edges(), &[Edge::new(0, 0, 0), Edge::new(1, 1, 0)]);
        let l = parse_latin("1 2 3\n2 3 1").unwrap();
        let g = rectangle_to_graph(&l);
        assert_eq!(g.colour_count(), 2);
        assert_eq!(g.class_size(0), 3);
        assert_eq!(g.class_size(1), 3);
        let l = parse_latin("1 2 3\n2 3 1\n3 1 2").unwrap();
        let g = rectangle_to_graph(&l);
        assert!((0..3).all(|c| g.class_size(c) == 3));
        assert!(matches!(
            square_to_graph(&parse_latin("1 2").unwrap()),
            Err(LatinError::NotSquare { .. })
        ));
    }

    #[test]
    fn transversal_extraction() {
        let l = parse_latin("1 2 3\n2 3 1\n3 1 2").unwrap();
        let m = RainbowMatching::new(vec![Edge::new(0, 0, 0), Edge::new(1, 1, 2), Edge::new(2, 2, 1)]);
        let cells = extract_transversal(&l, &m).unwrap();
        assert_eq!(
            cells.iter().map(|c| (c.row, c.col, c.symbol)).collect::<Vec<_>>(),
            vec![(0, 0, 0), (1, 1, 2), (2, 2, 1)]
        );
        assert!(is_partial_transversal(&l, &cells));
        assert!(extract_transversal(&l, &RainbowMatching::empty())
            .unwrap()
            .is_empty());

        let two = parse_latin("1 2\n2 1").unwrap();
        let cells = extract_transversal(&two, &RainbowMatching::new(vec![Edge::new(0, 0, 0)])).unwrap();
        assert_eq!(cells.len(), 1);
        let bad = RainbowMatching::new(vec![Edge::new(0, 0, 1)]);
        assert!(matches!(
            extract_transversal(&two, &bad),
            Err(LatinError::MatchingGraphMismatch(_))
        ));
    }

    #[test]
    fn backtracker_known_values() {
        assert_eq!(
            max_partial_transversal(&parse_latin("1 2\n2 1").unwrap()).len(),
            1
        );
        let cyclic3 = parse_latin("1 2 3\n2 3 1\n3 1 2").unwrap();
        let t = max_partial_transversal(&cyclic3);
        assert_eq!(t.len(), 3);
        assert!(is_partial_transversal(&cyclic3, &t));
        // even-order cyclic squares have no transversal
        let cyclic4 =
            LatinRectangle::from_grid((0..4).map(|i| (0..4).map(|j| (i + j) % 4).collect()).collect())
                .unwrap();
        assert_eq!(max_partial_transversal(&cyclic4).len(), 3);
    }
}
