//! A coloured path family in which every `k` colours can be avoided by some rainbow path yet
//! no two rainbow paths are edge-disjoint, and the fractional path-packing duality that holds
//! regardless.
//!
//! Paths here are rainbow in the edge sense; vertices carry no colour.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::budget::{Exhausted, SearchBudget};
use crate::digraph::{ColourMode, DiPath, LabelledDigraph};
use crate::oracle::enumerate_rainbow_paths;
use crate::simplex::{solve, LinearProgram, LpOutcome, Relation, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MengerError {
    #[error("parameters violate m > 2k + 1, k >= 1: k = {k}, m = {m}")]
    ParameterViolation { k: usize, m: usize },
    #[error("search budget exhausted")]
    BudgetExceeded,
    #[error("more than {limit} rainbow paths")]
    PathBudgetExceeded { limit: usize },
    #[error("linear program failed: {0}")]
    LpNumericalFailure(String),
}

impl From<Exhausted> for MengerError {
    fn from(_: Exhausted) -> Self {
        MengerError::BudgetExceeded
    }
}

/// The path `x_0 -> x_1 -> ... -> x_m` where slot `i` has `k + 1` parallel edges coloured
/// `i, m + 1, ..., m + k`, in that order. Vertex `j` is `x_j`; `u = x_0`, `v = x_m`.
pub fn build_counterexample(k: usize, m: usize) -> Result<LabelledDigraph, MengerError> {
    if k == 0 || m <= 2 * k + 1 {
        return Err(MengerError::ParameterViolation { k, m });
    }
    let mut d = LabelledDigraph::unlabelled(m + 1);
    for i in 0..m {
        d.add_edge(i, i + 1, Some(i));
        for j in 1..=k {
            d.add_edge(i, i + 1, Some(m + j));
        }
    }
    Ok(d)
}

/// Replaces every edge `a -> b` of colour `c` by `a -> w -> b` through a new vertex `w`, the
/// first half keeping colour `c` and the second half getting a fresh colour of its own. The
/// result has no parallel edges.
pub fn subdivide(d: &LabelledDigraph) -> LabelledDigraph {
    let original = d.vertex_count();
    let labels = d
        .vertex_labels()
        .iter()
        .copied()
        .chain(std::iter::repeat_n(None, d.edges().len()))
        .collect();
    let mut out = LabelledDigraph::new(labels);
    let first_fresh = d
        .edges()
        .iter()
        .filter_map(|e| e.label)
        .max()
        .map_or(0, |c| c + 1);
    for (i, e) in d.edges().iter().enumerate() {
        let w = original + i;
        out.add_edge(e.from, w, e.label);
        out.add_edge(w, e.to, Some(first_fresh + i));
    }
    out
}

fn all_paths(
    d: &LabelledDigraph,
    u: usize,
    v: usize,
    budget: &SearchBudget,
) -> Result<Vec<DiPath>, MengerError> {
    let cap = d.vertex_count().saturating_sub(1);
    Ok(enumerate_rainbow_paths(
        d,
        u,
        v,
        cap,
        ColourMode::Edge,
        &BTreeSet::new(),
        budget,
    )?)
}

/// Whether every set of `k` colours (all colours, if there are fewer) is avoided by some rainbow
/// `u -> v` path. Exhaustive over the colour sets.
pub fn verify_property_one(
    d: &LabelledDigraph,
    u: usize,
    v: usize,
    k: usize,
    budget: &SearchBudget,
) -> Result<bool, MengerError> {
    let colours: BTreeSet<usize> = d.edges().iter().filter_map(|e| e.label).collect();
    let cap = d.vertex_count().saturating_sub(1);
    let mut meter = budget.meter();
    for s in colours.iter().copied().combinations(k.min(colours.len())) {
        let s: BTreeSet<usize> = s.into_iter().collect();
        if d.shortest_rainbow_path(u, v, cap, ColourMode::Edge, &s, &mut meter)?
            .is_none()
        {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether every two rainbow `u -> v` paths share an edge. Exhaustive over pairs.
pub fn verify_property_two(
    d: &LabelledDigraph,
    u: usize,
    v: usize,
    budget: &SearchBudget,
) -> Result<bool, MengerError> {
    let paths = all_paths(d, u, v, budget)?;
    let edge_sets: Vec<BTreeSet<usize>> = paths.iter().map(|p| p.edges.iter().copied().collect()).collect();
    Ok(edge_sets
        .iter()
        .tuple_combinations()
        .all(|(a, b)| !a.is_disjoint(b)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Arithmetic {
    Exact,
    Float,
}

/// Both sides of the fractional path-packing duality over the rainbow `u -> v` paths.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathLp {
    pub paths: Vec<DiPath>,
    /// Colours of each path, in path order.
    pub path_colours: Vec<Vec<usize>>,
    /// Colours appearing on some path, in increasing order; `y[i]` belongs to `colours[i]`.
    pub colours: Vec<usize>,
    /// Path weights: at most one unit of weight through each colour.
    pub x: Vec<f64>,
    /// Colour weights: at least one unit on each path.
    pub y: Vec<f64>,
    /// `max Σ x_P`.
    pub packing: f64,
    /// `min Σ y_c`.
    pub cover: f64,
    pub arithmetic: Arithmetic,
    /// The common optimum as a fraction when solved exactly.
    pub exact_value: Option<String>,
}

impl PathLp {
    /// Largest violation of `Σ_{P∋c} x_P <= 1`, `Σ_{c∈P} y_c >= 1` and non-negativity.
    pub fn feasibility_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (&c, &y) in self.colours.iter().zip(&self.y) {
            let load: f64 = self
                .path_colours
                .iter()
                .zip(&self.x)
                .filter(|(pc, _)| pc.contains(&c))
                .map(|(_, x)| x)
                .sum();
            worst = worst.max(load - 1.0).max(-y);
        }
        for (pc, &x) in self.path_colours.iter().zip(&self.x) {
            let weight: f64 = self
                .colours
                .iter()
                .zip(&self.y)
                .filter(|(c, _)| pc.contains(c))
                .map(|(_, y)| y)
                .sum();
            worst = worst.max(1.0 - weight).max(-x);
        }
        worst
    }

    pub fn gap(&self) -> f64 {
        (self.cover - self.packing).abs()
    }
}

/// Paths up to this many are solved in exact rational arithmetic.
pub const EXACT_PATH_LIMIT: usize = 64;

pub fn fractional_menger(
    d: &LabelledDigraph,
    u: usize,
    v: usize,
    tolerance: f64,
    path_limit: usize,
    budget: &SearchBudget,
) -> Result<PathLp, MengerError> {
    let paths = all_paths(d, u, v, budget)?;
    if paths.len() > path_limit {
        return Err(MengerError::PathBudgetExceeded { limit: path_limit });
    }
    let colours: Vec<usize> = paths
        .iter()
        .flat_map(|p| p.edges.iter().filter_map(|&e| d.edge(e).label))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    // incidence[i][j]: colour i lies on path j
    let incidence: Vec<Vec<bool>> = colours
        .iter()
        .map(|&c| {
            paths
                .iter()
                .map(|p| p.edges.iter().any(|&e| d.edge(e).label == Some(c)))
                .collect()
        })
        .collect();
    let path_colours = paths
        .iter()
        .map(|p| p.edges.iter().filter_map(|&e| d.edge(e).label).collect())
        .collect();

    let (x, y, packing, cover, arithmetic, exact_value) = if paths.len() <= EXACT_PATH_LIMIT {
        let one = |b: bool| BigRational::from_integer(BigInt::from(u8::from(b)));
        let (x, packing) = solve_packing(&incidence, one)?;
        let (y, cover) = solve_cover(&incidence, one)?;
        if packing != cover {
            return Err(MengerError::LpNumericalFailure(format!(
                "exact optima differ: {packing} and {cover}"
            )));
        }
        let f = |q: &BigRational| q.to_f64().unwrap_or(f64::NAN);
        (
            x.iter().map(f).collect(),
            y.iter().map(f).collect(),
            f(&packing),
            f(&cover),
            Arithmetic::Exact,
            Some(packing.to_string()),
        )
    } else {
        let one = |b: bool| if b { 1.0 } else { 0.0 };
        let (x, packing) = solve_packing(&incidence, one)?;
        let (y, cover) = solve_cover(&incidence, one)?;
        (x, y, packing, cover, Arithmetic::Float, None)
    };

    let lp = PathLp {
        paths,
        path_colours,
        colours,
        x,
        y,
        packing,
        cover,
        arithmetic,
        exact_value,
    };
    let residual = lp.feasibility_residual();
    if residual > tolerance {
        return Err(MengerError::LpNumericalFailure(format!(
            "feasibility residual {residual:e}"
        )));
    }
    // any feasible pair satisfies weak duality; check it before trusting optimality
    if lp.x.iter().sum::<f64>() > lp.y.iter().sum::<f64>() + tolerance {
        return Err(MengerError::LpNumericalFailure("weak duality violated".into()));
    }
    if lp.gap() > tolerance {
        return Err(MengerError::LpNumericalFailure(format!(
            "duality gap {:e}",
            lp.gap()
        )));
    }
    Ok(lp)
}

/// `max Σ x_P` with every colour carrying at most one unit.
fn solve_packing<T: Scalar>(
    incidence: &[Vec<bool>],
    one: impl Fn(bool) -> T,
) -> Result<(Vec<T>, T), MengerError> {
    let paths = incidence.first().map_or(0, Vec::len);
    let lp = LinearProgram {
        objective: vec![one(true); paths],
        constraints: incidence
            .iter()
            .map(|row| (row.iter().map(|&b| one(b)).collect(), Relation::Le, one(true)))
            .collect(),
    };
    optimum(&lp, paths)
}

/// `min Σ y_c` with every path carrying at least one unit, solved as `max -Σ y_c`.
fn solve_cover<T: Scalar>(
    incidence: &[Vec<bool>],
    one: impl Fn(bool) -> T,
) -> Result<(Vec<T>, T), MengerError> {
    let colours = incidence.len();
    let paths = incidence.first().map_or(0, Vec::len);
    let lp = LinearProgram {
        objective: vec![-one(true); colours],
        constraints: (0..paths)
            .map(|j| {
                (
                    incidence.iter().map(|row| one(row[j])).collect(),
                    Relation::Ge,
                    one(true),
                )
            })
            .collect(),
    };
    let (y, value) = optimum(&lp, colours)?;
    Ok((y, -value))
}

fn optimum<T: Scalar>(lp: &LinearProgram<T>, width: usize) -> Result<(Vec<T>, T), MengerError> {
    if width == 0 {
        return Ok((Vec::new(), T::zero()));
    }
    match solve(lp).map_err(|e| MengerError::LpNumericalFailure(e.to_string()))? {
        LpOutcome::Optimal { x, value } => Ok((x, value)),
        other => Err(MengerError::LpNumericalFailure(format!(
            "unexpected outcome: {}",
            if matches!(other, LpOutcome::Infeasible) {
                "infeasible"
            } else {
                "unbounded"
            }
        ))),
    }
}
