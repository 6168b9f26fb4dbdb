//! Seeded random instances.
//!
//! All randomness comes from `ChaCha8Rng::seed_from_u64(seed)`, so a seed reproduces the same
//! edge list on every platform.

use std::collections::HashSet;

use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::digraph::LabelledDigraph;
use crate::graph::{ColouredBipartiteMultigraph, Edge};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InstanceKind {
    /// Independent uniform matchings, one per colour.
    Random,
    /// A cyclic Latin square with shuffled rows, columns and symbols; `class_size` is ignored.
    Latin,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub kind: InstanceKind,
    pub colours: usize,
    pub left: usize,
    pub right: usize,
    pub class_size: usize,
    pub edge_disjoint: bool,
    pub seed: u64,
}

impl InstanceSpec {
    /// `colours` classes of `class_size` edges on `max(colours, class_size)` vertices per side.
    pub fn random(colours: usize, class_size: usize, edge_disjoint: bool, seed: u64) -> Self {
        let side = colours.max(class_size);
        InstanceSpec {
            kind: InstanceKind::Random,
            colours,
            left: side,
            right: side,
            class_size,
            edge_disjoint,
            seed,
        }
    }

    pub fn latin(n: usize, seed: u64) -> Self {
        InstanceSpec {
            kind: InstanceKind::Latin,
            colours: n,
            left: n,
            right: n,
            class_size: n,
            edge_disjoint: true,
            seed,
        }
    }

    pub fn with_sides(mut self, left: usize, right: usize) -> Self {
        self.left = left;
        self.right = right;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("infeasible parameters: {0}")]
    InfeasibleParameters(String),
    #[error("colour {colour}: no edge-disjoint class found after {attempts} attempts")]
    RejectionBudgetExceeded { colour: usize, attempts: usize },
}

const MAX_ATTEMPTS: usize = 10_000;

pub fn generate_instance(spec: &InstanceSpec) -> Result<ColouredBipartiteMultigraph, GenerateError> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    match spec.kind {
        InstanceKind::Latin => Ok(shuffled_cyclic_square(spec.colours, &mut rng)),
        InstanceKind::Random => {
            if spec.class_size > spec.left || spec.class_size > spec.right {
                return Err(GenerateError::InfeasibleParameters(format!(
                    "class size {} exceeds side sizes {}x{}",
                    spec.class_size, spec.left, spec.right
                )));
            }
            let mut edges = Vec::with_capacity(spec.colours * spec.class_size);
            let mut pairs: HashSet<(usize, usize)> = HashSet::new();
            for c in 0..spec.colours {
                let avoid = if spec.edge_disjoint { Some(&pairs) } else { None };
                let class = (1..=MAX_ATTEMPTS)
                    .find_map(|_| random_matching(spec, c, avoid, &mut rng))
                    .ok_or(GenerateError::RejectionBudgetExceeded {
                        colour: c,
                        attempts: MAX_ATTEMPTS,
                    })?;
                pairs.extend(class.iter().map(|e| (e.x, e.y)));
                edges.extend(class);
            }
            Ok(ColouredBipartiteMultigraph::new(
                spec.left,
                spec.right,
                spec.colours,
                edges,
                spec.edge_disjoint,
            )
            .expect("generated classes are matchings"))
        }
    }
}

/// Picks `class_size` random left vertices and gives each, in random order, a uniformly random
/// right partner among those still free and not paired in `avoid`. Returns `None` on a dead end.
fn random_matching<R: Rng>(
    spec: &InstanceSpec,
    c: usize,
    avoid: Option<&HashSet<(usize, usize)>>,
    rng: &mut R,
) -> Option<Vec<Edge>> {
    let mut xs = sample(rng, spec.left, spec.class_size).into_vec();
    xs.shuffle(rng);
    let mut free_right = vec![true; spec.right];
    let mut class = Vec::with_capacity(spec.class_size);
    for x in xs {
        let options: Vec<usize> = (0..spec.right)
            .filter(|&y| free_right[y] && avoid.is_none_or(|p| !p.contains(&(x, y))))
            .collect();
        let y = *options.choose(rng)?;
        free_right[y] = false;
        class.push(Edge::new(x, y, c));
    }
    class.sort();
    Some(class)
}

fn shuffled_cyclic_square<R: Rng>(n: usize, rng: &mut R) -> ColouredBipartiteMultigraph {
    let mut rows: Vec<usize> = (0..n).collect();
    let mut cols: Vec<usize> = (0..n).collect();
    let mut symbols: Vec<usize> = (0..n).collect();
    rows.shuffle(rng);
    cols.shuffle(rng);
    symbols.shuffle(rng);
    let mut edges = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            edges.push(Edge::new(rows[i], cols[j], symbols[(i + j) % n]));
        }
    }
    edges.sort();
    ColouredBipartiteMultigraph::new(n, n, n, edges, true).expect("a Latin square is a proper colouring")
}

/// A random digraph on `n` vertices with a proper total colouring and pairwise distinct vertex
/// colours. Each vertex gets `out_degree` distinct random out-neighbours.
///
/// Vertex `v` has colour `v`. Edge colours are drawn from `n..n + palette` and assigned greedily
/// in random order, avoiding the colours of both endpoints and of edges already leaving the tail
/// or entering the head.
pub fn random_proper_digraph(n: usize, out_degree: usize, palette: usize, seed: u64) -> LabelledDigraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut d = LabelledDigraph::new((0..n).map(Some).collect());
    let mut arcs = Vec::new();
    for v in 0..n {
        let others: Vec<usize> = (0..n).filter(|&u| u != v).collect();
        let k = out_degree.min(others.len());
        for i in sample(&mut rng, others.len(), k).into_vec() {
            arcs.push((v, others[i]));
        }
    }
    arcs.shuffle(&mut rng);
    let mut out_used: Vec<HashSet<usize>> = vec![HashSet::new(); n];
    let mut in_used: Vec<HashSet<usize>> = vec![HashSet::new(); n];
    for (u, v) in arcs {
        let start = rng.gen_range(0..palette.max(1));
        let colour = (0..palette)
            .map(|i| n + (start + i) % palette)
            .find(|c| !out_used[u].contains(c) && !in_used[v].contains(c));
        if let Some(c) = colour {
            out_used[u].insert(c);
            in_used[v].insert(c);
            d.add_edge(u, v, Some(c));
        }
    }
    d
}

/// The complete biorientation on `q` vertices with every vertex and edge coloured differently.
pub fn rainbow_complete_digraph(q: usize) -> LabelledDigraph {
    let mut d = LabelledDigraph::new((0..q).map(Some).collect());
    let mut next = q;
    for u in 0..q {
        for v in 0..q {
            if u != v {
                d.add_edge(u, v, Some(next));
                next += 1;
            }
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::switching::check_proper_labelling;

    #[test]
    fn random_instances_are_valid_and_reproducible() {
        let spec = InstanceSpec::random(5, 6, true, 42);
        let a = generate_instance(&spec).unwrap();
        let b = generate_instance(&spec).unwrap();
        assert_eq!(a, b);
        assert!(a.is_edge_disjoint());
        assert!((0..5).all(|c| a.class_size(c) == 6));
        let other = generate_instance(&InstanceSpec::random(5, 6, true, 43)).unwrap();
        assert_ne!(a, other);
    }

    #[test]
    fn latin_instance_is_a_latin_square() {
        let g = generate_instance(&InstanceSpec::latin(3, 1)).unwrap();
        assert_eq!(g.edges().len(), 9);
        assert!((0..3).all(|c| g.class_size(c) == 3));
        assert!(g.is_edge_disjoint());
    }

    #[test]
    fn infeasible_and_rejection() {
        let spec = InstanceSpec::random(2, 3, false, 0).with_sides(3, 2);
        assert!(matches!(
            generate_instance(&spec),
            Err(GenerateError::InfeasibleParameters(_))
        ));
        // three perfect matchings of K_{2,2} cannot be edge-disjoint
        let spec = InstanceSpec::random(3, 2, true, 0).with_sides(2, 2);
        assert!(matches!(
            generate_instance(&spec),
            Err(GenerateError::RejectionBudgetExceeded { colour: 2, .. })
        ));
    }

    #[test]
    fn random_digraph_is_properly_coloured() {
        for seed in 0..5 {
            let d = random_proper_digraph(30, 6, 40, seed);
            assert_eq!(check_proper_labelling(&d), Ok(()));
        }
        assert_eq!(check_proper_labelling(&rainbow_complete_digraph(4)), Ok(()));
    }
}
