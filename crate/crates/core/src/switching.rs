//! Switchings: alternating sequences of non-matching and matching edges that rewrite a rainbow
//! matching into another one of the same size missing a different colour.
//!
//! For a matching `M` missing exactly one colour `c*` and a set `X'` of left vertices, the switch
//! digraph has one vertex per colour (labelled by the left end of its matching edge, or [`STAR`]
//! for `c*`) and an edge `u -> v` labelled `x` for every colour-`u` edge from `x` in `X'` to the
//! right end of the colour-`v` matching edge. Rainbow paths from `c*` are exactly the switchings
//! starting at `c*`, and the augmentation engine searches them for a colour with a free edge.

use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::budget::{Exhausted, Meter, SearchBudget};
use crate::digraph::{ColourMode, DiPath, LabelledDigraph, Visit, STAR};
use crate::graph::{ColouredBipartiteMultigraph, Edge, Side};
use crate::greedy::greedy_rainbow_matching;
use crate::matching::{MatchingContext, RainbowMatching};
use crate::oracle::{exact_max_rainbow_matching, Constraints, OracleError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SwitchDigraphError {
    #[error("matching misses colours {0:?}; exactly one missing colour is required")]
    MultipleMissingColours(Vec<usize>),
    #[error("matching is empty")]
    EmptyMatching,
}

/// The switch digraph for a fixed matching and left vertex set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwitchDigraph {
    pub digraph: LabelledDigraph,
    pub x_prime: BTreeSet<usize>,
    pub c_star: usize,
}

pub fn build_switch_digraph(
    ctx: &MatchingContext<'_>,
    x_prime: &BTreeSet<usize>,
) -> Result<SwitchDigraph, SwitchDigraphError> {
    if ctx.size() == 0 {
        return Err(SwitchDigraphError::EmptyMatching);
    }
    let missing = ctx.missing_colours();
    if missing.len() != 1 {
        return Err(SwitchDigraphError::MultipleMissingColours(missing));
    }
    let c_star = missing[0];
    let g = ctx.graph();
    let labels = (0..g.colour_count())
        .map(|c| Some(ctx.left_of_colour(c).unwrap_or(STAR)))
        .collect();
    let mut d = LabelledDigraph::new(labels);
    for &x in x_prime {
        for e in g.edges_at_left(x) {
            if let Some(v) = ctx.colour_at_right(e.y) {
                if v != e.c {
                    d.add_edge(e.c, v, Some(x));
                }
            }
        }
    }
    Ok(SwitchDigraph {
        digraph: d,
        x_prime: x_prime.clone(),
        c_star,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabellingViolation {
    #[error("vertex {vertex} has two out-edges labelled {label}")]
    OutLabelRepeated { vertex: usize, label: usize },
    #[error("vertex {vertex} has two in-edges labelled {label}")]
    InLabelRepeated { vertex: usize, label: usize },
    #[error("edge {edge} carries the label {label} of its endpoint {vertex}")]
    EdgeMatchesEndpoint {
        edge: usize,
        vertex: usize,
        label: usize,
    },
    #[error("vertices {first} and {second} share label {label}")]
    VertexLabelRepeated {
        first: usize,
        second: usize,
        label: usize,
    },
}

/// Checks that the labelling is a proper total labelling with pairwise distinct vertex labels.
/// Unlabelled vertices and edges are ignored.
pub fn check_proper_labelling(d: &LabelledDigraph) -> Result<(), LabellingViolation> {
    let mut owner = std::collections::HashMap::new();
    for v in 0..d.vertex_count() {
        if let Some(l) = d.vertex_label(v) {
            if let Some(first) = owner.insert(l, v) {
                return Err(LabellingViolation::VertexLabelRepeated {
                    first,
                    second: v,
                    label: l,
                });
            }
        }
    }
    for v in 0..d.vertex_count() {
        let mut seen = HashSet::new();
        for &e in d.out_edges(v) {
            if let Some(l) = d.edge(e).label {
                if !seen.insert(l) {
                    return Err(LabellingViolation::OutLabelRepeated { vertex: v, label: l });
                }
            }
        }
        let mut seen = HashSet::new();
        for &e in d.in_edges(v) {
            if let Some(l) = d.edge(e).label {
                if !seen.insert(l) {
                    return Err(LabellingViolation::InLabelRepeated { vertex: v, label: l });
                }
            }
        }
    }
    for (id, e) in d.edges().iter().enumerate() {
        if let Some(l) = e.label {
            for vertex in [e.from, e.to] {
                if d.vertex_label(vertex) == Some(l) {
                    return Err(LabellingViolation::EdgeMatchesEndpoint {
                        edge: id,
                        vertex,
                        label: l,
                    });
                }
            }
        }
    }
    Ok(())
}

/// `(e_0, m_1, e_1, ..., e_{l-1}, m_l)` starting at colour `start`.
///
/// `e_edges[i]` is `e_i` and `m_edges[i]` is `m_{i+1}`. A length-0 switching has no edges and
/// starts and ends at `start`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Switching {
    pub start: usize,
    pub e_edges: Vec<Edge>,
    pub m_edges: Vec<Edge>,
}

impl Switching {
    pub fn trivial(start: usize) -> Self {
        Switching {
            start,
            e_edges: Vec::new(),
            m_edges: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.m_edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.m_edges.is_empty()
    }

    pub fn end(&self) -> usize {
        self.m_edges.last().map_or(self.start, |m| m.c)
    }

    /// Left vertices of all edges of the switching.
    pub fn left_vertices(&self) -> BTreeSet<usize> {
        self.e_edges.iter().chain(&self.m_edges).map(|e| e.x).collect()
    }

    pub fn e_lefts(&self) -> BTreeSet<usize> {
        self.e_edges.iter().map(|e| e.x).collect()
    }

    pub fn m_lefts(&self) -> BTreeSet<usize> {
        self.m_edges.iter().map(|e| e.x).collect()
    }

    /// Colours `c_0, ..., c_l`.
    pub fn colours(&self) -> Vec<usize> {
        std::iter::once(self.start)
            .chain(self.m_edges.iter().map(|m| m.c))
            .collect()
    }

    /// Swaps sides of every edge.
    pub fn transpose(&self) -> Switching {
        let t = |v: &Vec<Edge>| v.iter().map(|e| Edge::new(e.y, e.x, e.c)).collect();
        Switching {
            start: self.start,
            e_edges: t(&self.e_edges),
            m_edges: t(&self.m_edges),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Clause {
    I,
    II,
    III,
    IV,
    V,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SwitchingViolation {
    #[error("malformed switching: {0}")]
    Malformed(String),
    #[error("clause {clause:?} fails: {detail}")]
    Clause { clause: Clause, detail: String },
}

fn violated(clause: Clause, detail: String) -> Result<(), SwitchingViolation> {
    Err(SwitchingViolation::Clause { clause, detail })
}

/// Checks the five defining clauses of an `X'`-switching against the matching in `ctx`.
pub fn validate_switching(
    ctx: &MatchingContext<'_>,
    x_prime: &BTreeSet<usize>,
    s: &Switching,
) -> Result<(), SwitchingViolation> {
    let g = ctx.graph();
    let l = s.len();
    if s.e_edges.len() != l {
        return Err(SwitchingViolation::Malformed(format!(
            "{} e-edges for {} m-edges",
            s.e_edges.len(),
            l
        )));
    }
    if let Some(e) = s.e_edges.iter().chain(&s.m_edges).find(|e| !g.contains(e)) {
        return Err(SwitchingViolation::Malformed(format!(
            "({},{},{}) is not an edge of the graph",
            e.x, e.y, e.c
        )));
    }
    if l > 0 && s.e_edges[0].c != s.start {
        return Err(SwitchingViolation::Malformed(
            "e_0 does not have the start colour".into(),
        ));
    }
    let m = ctx.matching();
    for (i, mi) in s.m_edges.iter().enumerate() {
        if !m.contains(mi) {
            return violated(Clause::I, format!("m_{} is not a matching edge", i + 1));
        }
    }
    for (i, ei) in s.e_edges.iter().enumerate() {
        if m.contains(ei) {
            return violated(Clause::I, format!("e_{i} is a matching edge"));
        }
    }
    for i in 1..l {
        if s.m_edges[i - 1].c != s.e_edges[i].c {
            return violated(Clause::II, format!("m_{i} and e_{i} have different colours"));
        }
    }
    for i in 1..=l {
        let (e, mi) = (s.e_edges[i - 1], s.m_edges[i - 1]);
        if e.y != mi.y || e.x == mi.x {
            return violated(
                Clause::III,
                format!("e_{} does not meet m_{i} exactly in its right end", i - 1),
            );
        }
    }
    for i in 0..l {
        for j in 0..l {
            if i == j {
                continue;
            }
            if i < j && s.e_edges[i].meets(&s.e_edges[j]) {
                return violated(Clause::IV, format!("e_{i} meets e_{j}"));
            }
            if s.e_edges[i].meets(&s.m_edges[j]) {
                return violated(Clause::IV, format!("e_{i} meets m_{}", j + 1));
            }
        }
    }
    let colours = s.colours();
    if colours.iter().collect::<BTreeSet<_>>().len() != colours.len() {
        return violated(Clause::IV, "colours repeat".into());
    }
    for (i, e) in s.e_edges.iter().enumerate() {
        if !x_prime.contains(&e.x) {
            return violated(Clause::V, format!("e_{i} starts outside X'"));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("path is not a walk in the switch digraph")]
    PathNotInDigraph,
    #[error("path is not rainbow")]
    PathNotRainbow,
}

/// The switching read off a rainbow path: `e_i` is the colour-`v_i` edge from the label of
/// `v_i v_{i+1}` to the right end of the colour-`v_{i+1}` matching edge, and `m_i` is the
/// colour-`v_i` matching edge.
pub fn path_to_switching(
    ctx: &MatchingContext<'_>,
    d: &SwitchDigraph,
    path: &DiPath,
) -> Result<Switching, PathError> {
    if !d.digraph.is_walk(path) {
        return Err(PathError::PathNotInDigraph);
    }
    if !d
        .digraph
        .is_rainbow_path(path, ColourMode::Total, &BTreeSet::new())
    {
        return Err(PathError::PathNotRainbow);
    }
    let g = ctx.graph();
    let mut s = Switching::trivial(path.start());
    for (i, &id) in path.edges.iter().enumerate() {
        let x = d
            .digraph
            .edge(id)
            .label
            .expect("switch digraph edges are labelled");
        let (u, v) = (path.vertices[i], path.vertices[i + 1]);
        s.e_edges
            .push(g.colour_edge_at_left(u, x).expect("edge behind a digraph edge"));
        s.m_edges.push(
            ctx.edge_of_colour(v)
                .expect("non-start vertices are matched colours"),
        );
    }
    Ok(s)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ApplyError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("exchange not applicable: {0}")]
    ExchangeNotApplicable(String),
}

/// Replaces `m(σ)` by `e(σ)` in `base`.
///
/// `a` is a set of edges that must survive unchanged and `b` a set of left vertices the result
/// must avoid. The result has the size and right cover of `base` and misses the end colour of σ.
pub fn apply_switching(
    g: &ColouredBipartiteMultigraph,
    s: &Switching,
    a: &[Edge],
    b: &BTreeSet<usize>,
    base: &RainbowMatching,
) -> Result<RainbowMatching, ApplyError> {
    let pre = |msg: &str| Err(ApplyError::PreconditionViolated(msg.to_string()));
    let sx = s.left_vertices();
    let ax: BTreeSet<usize> = a.iter().map(|e| e.x).collect();
    if !sx.is_disjoint(&ax) {
        return pre("switching meets the left ends of A");
    }
    if !sx.is_disjoint(b) {
        return pre("switching meets B");
    }
    if !ax.is_disjoint(b) {
        return pre("A meets B");
    }
    if let Some(m) = s.m_edges.iter().find(|m| !base.contains(m)) {
        return Err(ApplyError::ExchangeNotApplicable(format!(
            "({},{},{}) is not in the base matching",
            m.x, m.y, m.c
        )));
    }
    if a.iter().any(|e| !base.contains(e)) {
        return pre("base matching does not contain A");
    }
    if base.colours().contains(&s.start) {
        return pre("base matching uses the start colour");
    }
    let blocked: BTreeSet<usize> = s.e_lefts().union(b).copied().collect();
    if base.edges().iter().any(|e| blocked.contains(&e.x)) {
        return pre("base matching meets B or the left ends of e(σ)");
    }
    let removed: HashSet<Edge> = s.m_edges.iter().copied().collect();
    let mut edges: Vec<Edge> = base
        .edges()
        .iter()
        .copied()
        .filter(|e| !removed.contains(e))
        .collect();
    edges.extend(s.e_edges.iter().copied());
    let out = RainbowMatching::new(edges);
    out.check(g)
        .map_err(|v| ApplyError::ExchangeNotApplicable(format!("result is not a rainbow matching: {v}")))?;
    Ok(out)
}

/// A successful augmentation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Augmentation {
    pub matching: RainbowMatching,
    pub switching: Switching,
    pub final_edge: Edge,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum FailureReason {
    /// Every rainbow path up to the depth cap was tried.
    DepthCapExhausted,
    /// The node budget ran out first.
    BudgetExhausted,
    /// The matching does not miss exactly one colour, or is empty.
    NotApplicable(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureReport {
    pub reason: FailureReason,
    pub depth_reached: usize,
    pub paths_explored: u64,
    /// Colours reached by some rainbow path from the missing colour.
    pub frontier: Vec<usize>,
}

/// Outcome of scanning the switchings from the missing colour.
enum Scan {
    Augmented(Augmentation),
    Exhausted {
        depth_reached: usize,
        paths: u64,
        frontier: BTreeSet<usize>,
        /// Matchings of the same size reached by non-trivial switchings.
        neighbours: Vec<RainbowMatching>,
    },
}

/// Walks rainbow paths from `c*` in the switch digraph on the uncovered left vertices by
/// iterative deepening. For each path it applies the switching and looks for an edge of the end
/// colour from a left vertex left free by the exchanged matching to an uncovered right vertex.
fn scan(
    ctx: &MatchingContext<'_>,
    depth_cap: usize,
    collect_neighbours: bool,
    meter: &mut Meter,
) -> Result<Scan, Exhausted> {
    let g = ctx.graph();
    let x0: BTreeSet<usize> = ctx.uncovered_left().into_iter().collect();
    let y0: Vec<usize> = ctx.uncovered_right();
    let d = build_switch_digraph(ctx, &x0).expect("caller checked the context");
    let base = ctx.matching().clone();
    let mut paths = 0u64;
    let mut frontier = BTreeSet::new();
    let mut neighbours = Vec::new();
    let mut depth_reached = 0;
    let none = BTreeSet::new();
    for depth in 0..=depth_cap {
        depth_reached = depth;
        let mut hit = None;
        let mut longest = 0;
        d.digraph
            .for_each_rainbow_path(d.c_star, depth, ColourMode::Total, &none, meter, |p| {
                longest = longest.max(p.len());
                if p.len() < depth {
                    return Visit::Extend;
                }
                paths += 1;
                let v = p.end();
                frontier.insert(v);
                let s = path_to_switching(ctx, &d, p).expect("paths come from the digraph");
                let exchanged = apply_switching(g, &s, &[], &BTreeSet::new(), &base)
                    .expect("switchings from rainbow paths apply to their own matching");
                let covered = exchanged.left_cover();
                for &y in &y0 {
                    if let Some(e) = g.colour_edge_at_right(v, y) {
                        if !covered.contains(&e.x) {
                            let mut m = exchanged.clone();
                            m.push(e);
                            hit = Some(Augmentation {
                                matching: m,
                                switching: s,
                                final_edge: e,
                            });
                            return Visit::Stop;
                        }
                    }
                }
                if collect_neighbours && depth > 0 {
                    neighbours.push(exchanged);
                }
                Visit::Prune
            })?;
        if let Some(a) = hit {
            return Ok(Scan::Augmented(a));
        }
        if longest < depth {
            break;
        }
    }
    Ok(Scan::Exhausted {
        depth_reached,
        paths,
        frontier,
        neighbours,
    })
}

fn context_problem(ctx: &MatchingContext<'_>) -> Option<String> {
    if ctx.size() == 0 {
        return Some("matching is empty".into());
    }
    let missing = ctx.missing_colours();
    if missing.len() != 1 {
        return Some(format!("matching misses colours {missing:?}"));
    }
    None
}

/// Tries to grow the matching by one edge via a switching of length at most `depth_cap`.
pub fn augment(
    ctx: &MatchingContext<'_>,
    depth_cap: usize,
    budget: &SearchBudget,
) -> Result<Augmentation, FailureReport> {
    if let Some(why) = context_problem(ctx) {
        return Err(FailureReport {
            reason: FailureReason::NotApplicable(why),
            depth_reached: 0,
            paths_explored: 0,
            frontier: Vec::new(),
        });
    }
    let mut meter = budget.meter();
    match scan(ctx, depth_cap, false, &mut meter) {
        Ok(Scan::Augmented(a)) => Ok(a),
        Ok(Scan::Exhausted {
            depth_reached,
            paths,
            frontier,
            ..
        }) => Err(FailureReport {
            reason: FailureReason::DepthCapExhausted,
            depth_reached,
            paths_explored: paths,
            frontier: frontier.into_iter().collect(),
        }),
        Err(_) => Err(FailureReport {
            reason: FailureReason::BudgetExhausted,
            depth_reached: depth_cap,
            paths_explored: meter.nodes(),
            frontier: Vec::new(),
        }),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EngineConfig {
    /// Longest switching tried; `None` means the number of colours.
    pub depth_cap: Option<usize>,
    /// Matchings of equal size visited while searching for a better starting point.
    pub reroot_states: usize,
    /// Relative slack in the class-size hypothesis `(1 + ε₀) n`, reported but not required.
    pub epsilon0: f64,
    pub budget: SearchBudget,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            depth_cap: None,
            reroot_states: 2_000,
            epsilon0: 0.1,
            budget: SearchBudget::default(),
        }
    }
}

impl EngineConfig {
    pub fn with_depth_cap(depth_cap: usize) -> Self {
        EngineConfig {
            depth_cap: Some(depth_cap),
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AugmentStep {
    /// Colour added to the matching (original id).
    pub colour: usize,
    pub side: Side,
    pub path_length: usize,
    /// Equal-size exchanges made before this step found a free edge.
    pub reroots: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EngineResult {
    pub matching: RainbowMatching,
    pub initial_size: usize,
    pub steps: Vec<AugmentStep>,
    /// Whether every class has at least `(1 + ε₀) n` edges and the classes are edge-disjoint.
    pub hypothesis_met: bool,
    /// Set when the search stopped on the node budget rather than by exhausting its options.
    pub budget_exhausted: bool,
}

/// A matching `m` of `g` viewed in `g.restrict(colours, ..)` with one extra missing colour.
struct Restricted {
    graph: ColouredBipartiteMultigraph,
    colours: Vec<usize>,
}

impl Restricted {
    fn new(g: &ColouredBipartiteMultigraph, m: &RainbowMatching, c_star: usize, side: Side) -> Self {
        let mut colours: Vec<usize> = m.colours().into_iter().collect();
        colours.push(c_star);
        colours.sort_unstable();
        let mut graph = g.restrict(&colours, |_| true);
        if side == Side::Right {
            graph = graph.transpose();
        }
        Restricted { graph, colours }
    }

    fn to_local(&self, m: &RainbowMatching, side: Side) -> RainbowMatching {
        let local = RainbowMatching::new(
            m.edges()
                .iter()
                .map(|e| {
                    Edge::new(
                        e.x,
                        e.y,
                        self.colours.binary_search(&e.c).expect("restricted colour"),
                    )
                })
                .collect(),
        );
        if side == Side::Right {
            local.transpose()
        } else {
            local
        }
    }

    fn to_global(&self, m: &RainbowMatching, side: Side) -> RainbowMatching {
        let m = if side == Side::Right {
            m.transpose()
        } else {
            m.clone()
        };
        RainbowMatching::new(
            m.edges()
                .iter()
                .map(|e| Edge::new(e.x, e.y, self.colours[e.c]))
                .collect(),
        )
    }
}

struct Explored {
    augmented: Option<(RainbowMatching, AugmentStep)>,
    neighbours: Vec<RainbowMatching>,
}

/// Scans every missing colour on both sides of `m`.
fn explore(
    g: &ColouredBipartiteMultigraph,
    m: &RainbowMatching,
    depth_cap: usize,
    collect_neighbours: bool,
    meter: &mut Meter,
) -> Result<Explored, Exhausted> {
    let used = m.colours();
    let mut neighbours = Vec::new();
    if m.is_empty() {
        // with nothing matched, any edge of an unused colour is an augmentation
        if let Some(e) = g.edges().first() {
            let step = AugmentStep {
                colour: e.c,
                side: Side::Left,
                path_length: 0,
                reroots: 0,
            };
            return Ok(Explored {
                augmented: Some((RainbowMatching::new(vec![*e]), step)),
                neighbours,
            });
        }
        return Ok(Explored {
            augmented: None,
            neighbours,
        });
    }
    for c_star in (0..g.colour_count()).filter(|c| !used.contains(c) && g.class_size(*c) > 0) {
        for side in [Side::Left, Side::Right] {
            let r = Restricted::new(g, m, c_star, side);
            let local = r.to_local(m, side);
            let ctx = MatchingContext::new(&r.graph, local).expect("restriction keeps the matching valid");
            match scan(&ctx, depth_cap, collect_neighbours, meter)? {
                Scan::Augmented(a) => {
                    let step = AugmentStep {
                        colour: c_star,
                        side,
                        path_length: a.switching.len(),
                        reroots: 0,
                    };
                    return Ok(Explored {
                        augmented: Some((r.to_global(&a.matching, side), step)),
                        neighbours,
                    });
                }
                Scan::Exhausted {
                    neighbours: found, ..
                } => {
                    neighbours.extend(found.iter().map(|n| r.to_global(n, side)));
                }
            }
        }
    }
    Ok(Explored {
        augmented: None,
        neighbours,
    })
}

/// Starting from the greedy matching, repeatedly grows the matching by switchings on either
/// side. When no missing colour admits an augmenting switching, the search moves breadth-first
/// through equal-size matchings reachable by switchings (up to `reroot_states` of them) and
/// retries from each.
pub fn solve_switching_engine(g: &ColouredBipartiteMultigraph, config: &EngineConfig) -> EngineResult {
    let depth_cap = config.depth_cap.unwrap_or(g.colour_count());
    let mut m = greedy_rainbow_matching(g);
    let initial_size = m.len();
    let target = g.colour_count().min(g.left_size()).min(g.right_size());
    let mut steps = Vec::new();
    let mut meter = config.budget.meter();
    let mut budget_exhausted = false;

    'grow: while m.len() < target {
        let mut seen: HashSet<RainbowMatching> = HashSet::new();
        let mut queue = VecDeque::from([(m.canonical(), 0usize)]);
        seen.insert(m.canonical());
        while let Some((current, reroots)) = queue.pop_front() {
            let collect = seen.len() < config.reroot_states;
            let explored = match explore(g, &current, depth_cap, collect, &mut meter) {
                Ok(e) => e,
                Err(_) => {
                    budget_exhausted = true;
                    break 'grow;
                }
            };
            if let Some((bigger, mut step)) = explored.augmented {
                step.reroots = reroots;
                steps.push(step);
                m = bigger;
                continue 'grow;
            }
            for n in explored.neighbours {
                let key = n.canonical();
                if seen.len() < config.reroot_states && seen.insert(key.clone()) {
                    queue.push_back((key, reroots + 1));
                }
            }
        }
        break;
    }
    debug_assert!(m.check(g).is_ok());
    EngineResult {
        matching: m.canonical(),
        initial_size,
        steps,
        hypothesis_met: class_size_hypothesis(g, config.epsilon0),
        budget_exhausted,
    }
}

/// Whether the classes are edge-disjoint and each has at least `(1 + ε₀) n` edges, `n + 1`
/// being the number of colours.
pub fn class_size_hypothesis(g: &ColouredBipartiteMultigraph, epsilon0: f64) -> bool {
    let n = g.colour_count().saturating_sub(1) as f64;
    g.is_edge_disjoint() && (0..g.colour_count()).all(|c| g.class_size(c) as f64 >= (1.0 + epsilon0) * n)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FloorError {
    #[error("could not certify a matching of size {floor}; best found has {}", best.len())]
    FloorNotCertified { floor: usize, best: RainbowMatching },
}

/// The guaranteed size `t - ceil(sqrt(t))` for `t` colours with at least `t` edges each, with
/// `t` the smaller of the colour count and the smallest class size.
pub fn woolbright_bound(g: &ColouredBipartiteMultigraph) -> usize {
    let t = g.colour_count().min(g.min_class_size());
    t - ceil_sqrt(t)
}

fn ceil_sqrt(t: usize) -> usize {
    let mut r = (t as f64).sqrt() as usize;
    while r * r < t {
        r += 1;
    }
    while r > 0 && (r - 1) * (r - 1) >= t {
        r -= 1;
    }
    r
}

/// A rainbow matching of at least [`woolbright_bound`] edges: the engine first, the exact search
/// if the engine falls short.
pub fn woolbright_floor(
    g: &ColouredBipartiteMultigraph,
    config: &EngineConfig,
) -> Result<RainbowMatching, FloorError> {
    let floor = woolbright_bound(g);
    let engine = solve_switching_engine(g, config).matching;
    if engine.len() >= floor {
        return Ok(engine);
    }
    let exact = match exact_max_rainbow_matching(g, &Constraints::default(), &config.budget) {
        Ok(m) => m,
        Err(OracleError::BudgetExceeded { best }) => best,
        Err(OracleError::InfeasibleConstraints(_)) => RainbowMatching::empty(),
    };
    let best = if exact.len() > engine.len() { exact } else { engine };
    if best.len() >= floor {
        Ok(best)
    } else {
        Err(FloorError::FloorNotCertified { floor, best })
    }
}
