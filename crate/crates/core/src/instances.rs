//! Small named instances used in docs, tests and the CLI.

use crate::graph::{ColouredBipartiteMultigraph, Edge};

/// The unique order-2 Latin square `[[0,1],[1,0]]` as a coloured `K_{2,2}`.
pub fn latin_2x2() -> ColouredBipartiteMultigraph {
    let edges = vec![
        Edge::new(0, 0, 0),
        Edge::new(1, 1, 0),
        Edge::new(0, 1, 1),
        Edge::new(1, 0, 1),
    ];
    ColouredBipartiteMultigraph::new(2, 2, 2, edges, true).expect("valid")
}

/// The cyclic order-3 square `S[i][j] = (i + j) mod 3` as a coloured `K_{3,3}`.
pub fn cyclic_3x3() -> ColouredBipartiteMultigraph {
    cyclic_square(3)
}

/// The cyclic Latin square of order `n` as a coloured `K_{n,n}`.
pub fn cyclic_square(n: usize) -> ColouredBipartiteMultigraph {
    let mut edges = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            edges.push(Edge::new(i, j, (i + j) % n));
        }
    }
    ColouredBipartiteMultigraph::new(n, n, n, edges, true).expect("valid")
}

/// Two disjoint colour classes of four edges each on `4 + 4` vertices.
pub fn two_classes_of_four() -> ColouredBipartiteMultigraph {
    let mut edges = Vec::new();
    for i in 0..4 {
        edges.push(Edge::new(i, i, 0));
    }
    for i in 0..4 {
        edges.push(Edge::new(i, (i + 1) % 4, 1));
    }
    ColouredBipartiteMultigraph::new(4, 4, 2, edges, true).expect("valid")
}
