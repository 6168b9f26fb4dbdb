//! The golden-ratio recursion: split a near-perfect maximum matching around a low-expansion ball
//! of colours, fill one part with a large-floor matching and recurse on the other.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::budget::SearchBudget;
use crate::connectivity::{low_expansion_ball, rainbow_distance, ConnectivityError};
use crate::digraph::{ColourMode, LabelledDigraph};
use crate::graph::{ColouredBipartiteMultigraph, Edge};
use crate::matching::{MatchingContext, RainbowMatching};
use crate::oracle::{exact_max_rainbow_matching, Constraints, OracleError};
use crate::switching::{solve_switching_engine, woolbright_floor, EngineConfig, FloorError};

/// `(1 + √5) / 2`.
pub const PHI: f64 = 1.618_033_988_749_895;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GoldenError {
    #[error("context invalid: {0}")]
    ContextInvalid(String),
    #[error("recursion deeper than {max_depth} levels")]
    RecursionBudgetExceeded { max_depth: usize },
    #[error("search budget exhausted")]
    BudgetExceeded,
}

impl From<ConnectivityError> for GoldenError {
    fn from(e: ConnectivityError) -> Self {
        match e {
            ConnectivityError::BudgetExceeded => GoldenError::BudgetExceeded,
            other => GoldenError::ContextInvalid(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LogBase {
    #[default]
    Natural,
    Two,
    Ten,
}

impl LogBase {
    pub fn log(self, x: f64) -> f64 {
        match self {
            LogBase::Natural => x.ln(),
            LogBase::Two => x.log2(),
            LogBase::Ten => x.log10(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GoldenConfig {
    pub log_base: LogBase,
    pub max_depth: usize,
    /// Drop one edge from a perfect maximum matching so the split is exercised anyway.
    pub force_split: bool,
    pub engine: EngineConfig,
}

impl Default for GoldenConfig {
    fn default() -> Self {
        GoldenConfig {
            log_base: LogBase::Natural,
            max_depth: 64,
            force_split: false,
            engine: EngineConfig::default(),
        }
    }
}

/// The colour digraph of a matching missing exactly one colour: an edge `c -> d` labelled `v`
/// for every colour-`c` edge from an uncovered vertex `v` to the colour-`d` edge of `M`.
///
/// Vertices are colours and carry no label. A label is a left id, or `left_size + y` for an
/// uncovered right vertex `y`.
pub fn build_colour_digraph(ctx: &MatchingContext<'_>) -> Result<LabelledDigraph, GoldenError> {
    let g = ctx.graph();
    if ctx.missing_colours().len() != 1 {
        return Err(GoldenError::ContextInvalid(format!(
            "matching of size {} with {} colours; exactly one colour must be missing",
            ctx.size(),
            g.colour_count()
        )));
    }
    let mut d = LabelledDigraph::unlabelled(g.colour_count());
    for e in g.edges() {
        if !ctx.is_left_covered(e.x) {
            if let Some(target) = ctx.colour_at_right(e.y).filter(|&t| t != e.c) {
                d.add_edge(e.c, target, Some(e.x));
            }
        }
        if !ctx.is_right_covered(e.y) {
            if let Some(target) = ctx.colour_at_left(e.x).filter(|&t| t != e.c) {
                d.add_edge(e.c, target, Some(g.left_size() + e.y));
            }
        }
    }
    Ok(d)
}

/// Whether the out-edges at every vertex carry pairwise distinct labels.
pub fn is_out_proper(d: &LabelledDigraph) -> bool {
    (0..d.vertex_count()).all(|v| {
        let labels: Vec<Option<usize>> = d.out_edges(v).iter().map(|&e| d.edge(e).label).collect();
        labels.iter().collect::<BTreeSet<_>>().len() == labels.len()
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundVerdict {
    Holds,
    Fails,
    /// The matching is not certified maximum, so the bound is not claimed.
    UncheckedHypothesis,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct X0Y0Check {
    pub colour: usize,
    /// Colour-`c` edges with both ends uncovered.
    pub count: usize,
    /// Rainbow distance from the missing colour, `None` if there is no rainbow path.
    pub distance: Option<usize>,
    pub verdict: BoundVerdict,
}

/// Compares the number of colour-`c` edges between uncovered vertices with the rainbow distance
/// from the missing colour to `c` in the colour digraph.
pub fn check_x0y0_bound(
    ctx: &MatchingContext<'_>,
    c: usize,
    budget: &SearchBudget,
) -> Result<X0Y0Check, GoldenError> {
    Ok(check_x0y0_bounds(ctx, budget)?.swap_remove(c))
}

/// [`check_x0y0_bound`] for every colour, certifying maximality once.
pub fn check_x0y0_bounds(
    ctx: &MatchingContext<'_>,
    budget: &SearchBudget,
) -> Result<Vec<X0Y0Check>, GoldenError> {
    let g = ctx.graph();
    let d = build_colour_digraph(ctx)?;
    let c_star = ctx.c_star().expect("exactly one colour is missing");
    let maximum = match exact_max_rainbow_matching(g, &Constraints::default(), budget) {
        Ok(m) => m.len() == ctx.size(),
        Err(OracleError::BudgetExceeded { .. }) => return Err(GoldenError::BudgetExceeded),
        Err(OracleError::InfeasibleConstraints(_)) => unreachable!("no constraints"),
    };
    (0..g.colour_count())
        .map(|c| {
            let count = g
                .colour_class(c)
                .filter(|e| !ctx.is_left_covered(e.x) && !ctx.is_right_covered(e.y))
                .count();
            let distance = rainbow_distance(&d, c_star, c, g.colour_count(), ColourMode::Edge, budget)?;
            let verdict = if !maximum {
                BoundVerdict::UncheckedHypothesis
            } else if distance.is_none_or(|dist| count <= dist) {
                BoundVerdict::Holds
            } else {
                BoundVerdict::Fails
            };
            Ok(X0Y0Check {
                colour: c,
                count,
                distance,
                verdict,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LevelOutcome {
    /// The maximum matching already uses every colour.
    Direct,
    /// Two colours or fewer; the maximum matching is returned as is.
    Base,
    /// The maximum matching misses two colours or more, so there is nothing to split.
    BelowNMinusOne,
    /// Split and reassembled with every colour used.
    Assembled,
    /// Split, but the reassembled matching was not larger than the maximum found.
    ShortFall,
}

/// One level of the recursion. Colour ids are those of the input graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenLevel {
    pub depth: usize,
    pub n: usize,
    pub outcome: LevelOutcome,
    /// Whether the level's maximum was confirmed by the exact search or by using every colour.
    pub maximum_certified: bool,
    pub forced: bool,
    pub c_star: Option<usize>,
    pub a: Vec<usize>,
    pub a0: usize,
    pub a1: usize,
    pub m_prime: usize,
    pub m0: usize,
    pub m1: usize,
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenTrace {
    /// Levels in the order they were entered.
    pub levels: Vec<GoldenLevel>,
    /// Whether every class has at least `φn + 20n / log n` edges.
    pub hypothesis_met: bool,
    pub matching: RainbowMatching,
}

impl GoldenTrace {
    /// `|M'| + |A| = n` on every split level.
    pub fn level_identity_holds(&self) -> bool {
        self.levels
            .iter()
            .filter(|l| l.c_star.is_some())
            .all(|l| l.m_prime + l.a.len() == l.n)
    }
}

pub fn golden_hypothesis(g: &ColouredBipartiteMultigraph, base: LogBase) -> bool {
    let n = g.colour_count() as f64;
    let slack = if n > 1.0 { 20.0 * n / base.log(n) } else { 0.0 };
    (0..g.colour_count()).all(|c| g.class_size(c) as f64 >= PHI * n + slack)
}

pub fn golden_solve(
    g: &ColouredBipartiteMultigraph,
    config: &GoldenConfig,
) -> Result<(RainbowMatching, GoldenTrace), GoldenError> {
    let mut levels = Vec::new();
    let origin: Vec<usize> = (0..g.colour_count()).collect();
    let matching = solve_level(g, &origin, 0, config, &mut levels)?.canonical();
    debug_assert!(matching.check(g).is_ok());
    let trace = GoldenTrace {
        levels,
        hypothesis_met: golden_hypothesis(g, config.log_base),
        matching: matching.clone(),
    };
    Ok((matching, trace))
}

/// Largest matching the engine finds, confirmed or improved by the exact search when the engine
/// misses a colour. The flag says whether the result is known to be maximum.
fn maximum_matching(g: &ColouredBipartiteMultigraph, config: &EngineConfig) -> (RainbowMatching, bool) {
    let engine = solve_switching_engine(g, config).matching;
    if engine.len() == g.colour_count() {
        return (engine, true);
    }
    match exact_max_rainbow_matching(g, &Constraints::default(), &config.budget) {
        Ok(m) if m.len() > engine.len() => (m, true),
        Ok(_) => (engine, true),
        Err(OracleError::BudgetExceeded { best }) if best.len() > engine.len() => (best, false),
        Err(_) => (engine, false),
    }
}

fn relabel<'a>(m: &'a RainbowMatching, colours: &'a [usize]) -> impl Iterator<Item = Edge> + 'a {
    m.edges().iter().map(move |e| Edge::new(e.x, e.y, colours[e.c]))
}

/// Solves one level. `g` uses level-local colours; `origin[c]` is the input id of colour `c`.
fn solve_level(
    g: &ColouredBipartiteMultigraph,
    origin: &[usize],
    depth: usize,
    config: &GoldenConfig,
    levels: &mut Vec<GoldenLevel>,
) -> Result<RainbowMatching, GoldenError> {
    if depth >= config.max_depth {
        return Err(GoldenError::RecursionBudgetExceeded {
            max_depth: config.max_depth,
        });
    }
    let n = g.colour_count();
    let slot = levels.len();
    let (best, certified) = maximum_matching(g, &config.engine);
    let mut level = GoldenLevel {
        depth,
        n,
        outcome: LevelOutcome::Direct,
        maximum_certified: certified,
        forced: false,
        c_star: None,
        a: Vec::new(),
        a0: 0,
        a1: 0,
        m_prime: 0,
        m0: 0,
        m1: 0,
        size: best.len(),
    };
    let mut m = best.clone();
    if n <= 2 || m.len() + 1 < n || (m.len() == n && !config.force_split) {
        level.outcome = match () {
            _ if m.len() == n => LevelOutcome::Direct,
            _ if n <= 2 => LevelOutcome::Base,
            _ => LevelOutcome::BelowNMinusOne,
        };
        levels.push(level);
        return Ok(best);
    }
    if m.len() == n {
        let mut edges = m.into_edges();
        edges.sort_by_key(|e| e.c);
        edges.pop();
        m = RainbowMatching::new(edges);
        level.forced = true;
    }
    levels.push(level);

    let ctx = MatchingContext::new(g, m.clone()).map_err(|e| GoldenError::ContextInvalid(e.to_string()))?;
    let c_star = ctx.c_star().expect("one colour missing");
    let d = build_colour_digraph(&ctx)?;
    let epsilon = (1.0 / config.log_base.log(n as f64)).min(1.0);
    let ball = low_expansion_ball(&d, c_star, epsilon, &config.engine.budget)?;
    let a = ball.vertices;
    let in_a: BTreeSet<usize> = a.iter().copied().collect();

    let m_prime: Vec<Edge> = m
        .edges()
        .iter()
        .copied()
        .filter(|e| !in_a.contains(&e.c))
        .collect();
    let a_edges: Vec<Edge> = m
        .edges()
        .iter()
        .copied()
        .filter(|e| in_a.contains(&e.c))
        .collect();
    let a_x: BTreeSet<usize> = a_edges.iter().map(|e| e.x).collect();
    let a_y: BTreeSet<usize> = a_edges.iter().map(|e| e.y).collect();
    let x0: BTreeSet<usize> = ctx.uncovered_left().into_iter().collect();
    let y0: BTreeSet<usize> = ctx.uncovered_right().into_iter().collect();

    let g0 = g.restrict(&a, |e| x0.contains(&e.x) && a_y.contains(&e.y));
    let m0 = match woolbright_floor(&g0, &config.engine) {
        Ok(m) => m,
        Err(FloorError::FloorNotCertified { best, .. }) => best,
    };
    let a0: BTreeSet<usize> = m0.edges().iter().map(|e| a[e.c]).collect();
    let a1: Vec<usize> = a.iter().copied().filter(|c| !a0.contains(c)).collect();

    let g1 = g.restrict(&a1, |e| a_x.contains(&e.x) && y0.contains(&e.y));
    let origin1: Vec<usize> = a1.iter().map(|&c| origin[c]).collect();
    let m1 = solve_level(&g1, &origin1, depth + 1, config, levels)?;

    let mut assembled = m_prime.clone();
    assembled.extend(relabel(&m0, &a));
    assembled.extend(relabel(&m1, &a1));
    let assembled = RainbowMatching::new(assembled);
    debug_assert!(assembled.check(g).is_ok(), "parts overlap");

    let level = &mut levels[slot];
    level.c_star = Some(origin[c_star]);
    level.a = a.iter().map(|&c| origin[c]).collect();
    level.a0 = a0.len();
    level.a1 = a1.len();
    level.m_prime = m_prime.len();
    level.m0 = m0.len();
    level.m1 = m1.len();
    if assembled.len() == n {
        level.outcome = LevelOutcome::Assembled;
        level.size = n;
        Ok(assembled)
    } else {
        level.outcome = LevelOutcome::ShortFall;
        Ok(if assembled.len() > best.len() {
            assembled
        } else {
            best
        })
    }
}
