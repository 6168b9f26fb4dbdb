//! Exhaustive ground truth: exact maximum rainbow matchings, rainbow path enumeration and the
//! connectivity and free-set quantifier checks.
//!
//! Every quantifier check returns a [`Verdict`] that records whether it enumerated the whole
//! quantifier space or a seeded random sample of it.

use std::collections::BTreeSet;

use itertools::Itertools;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::budget::{Exhausted, Meter, SearchBudget};
use crate::digraph::{ColourMode, DiPath, LabelledDigraph, Visit};
use crate::graph::{ColouredBipartiteMultigraph, Edge};
use crate::matching::{MatchingContext, RainbowMatching};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Constraints {
    /// Edges the matching must contain.
    pub required: Vec<Edge>,
    /// Left vertices no matching edge may touch.
    pub forbidden_x: BTreeSet<usize>,
    /// Colours the matching may not use.
    pub forbidden_colours: BTreeSet<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("search budget exhausted; best matching found has {} edges and may not be optimal", best.len())]
    BudgetExceeded { best: RainbowMatching },
    #[error("constraints cannot be met: {0}")]
    InfeasibleConstraints(String),
}

/// Maximum rainbow matching under `constraints`, by branch and bound over colours.
///
/// Colours are branched in ascending order of class size; each colour either takes one of its
/// still-available edges or stays unused. A branch is cut when its size plus the number of later
/// colours that still have an available edge cannot beat the incumbent.
pub fn exact_max_rainbow_matching(
    g: &ColouredBipartiteMultigraph,
    constraints: &Constraints,
    budget: &SearchBudget,
) -> Result<RainbowMatching, OracleError> {
    let mut used_left = vec![false; g.left_size()];
    let mut used_right = vec![false; g.right_size()];
    let mut used_colour = vec![false; g.colour_count()];
    for e in &constraints.required {
        let why = if !g.contains(e) {
            Some("required edge not in graph")
        } else if constraints.forbidden_x.contains(&e.x) {
            Some("required edge touches a forbidden left vertex")
        } else if constraints.forbidden_colours.contains(&e.c) {
            Some("required edge has a forbidden colour")
        } else if used_left[e.x] || used_right[e.y] || used_colour[e.c] {
            Some("required edges are not a rainbow matching")
        } else {
            None
        };
        if let Some(why) = why {
            return Err(OracleError::InfeasibleConstraints(format!(
                "{why}: ({},{},{})",
                e.x, e.y, e.c
            )));
        }
        used_left[e.x] = true;
        used_right[e.y] = true;
        used_colour[e.c] = true;
    }

    let mut order: Vec<usize> = (0..g.colour_count())
        .filter(|c| !used_colour[*c] && !constraints.forbidden_colours.contains(c))
        .collect();
    order.sort_by_key(|&c| (g.class_size(c), c));
    let candidates: Vec<Vec<Edge>> = order
        .iter()
        .map(|&c| {
            g.colour_class(c)
                .filter(|e| !constraints.forbidden_x.contains(&e.x) && !used_left[e.x] && !used_right[e.y])
                .collect()
        })
        .collect();
    let free_left = (0..g.left_size())
        .filter(|x| !used_left[*x] && !constraints.forbidden_x.contains(x))
        .count();
    let free_right = used_right.iter().filter(|u| !**u).count();
    let ceiling = candidates
        .iter()
        .filter(|c| !c.is_empty())
        .count()
        .min(free_left)
        .min(free_right);

    let mut search = BranchAndBound {
        candidates: &candidates,
        used_left,
        used_right,
        current: Vec::new(),
        best: Vec::new(),
        ceiling,
        meter: budget.meter(),
    };
    let finished = search.run(0);
    let mut edges = constraints.required.clone();
    edges.extend(search.best.iter().copied());
    let result = RainbowMatching::new(edges).canonical();
    match finished {
        Ok(()) => Ok(result),
        Err(_) => Err(OracleError::BudgetExceeded { best: result }),
    }
}

/// Size of a maximum rainbow matching with no constraints.
pub fn max_rainbow_matching_size(
    g: &ColouredBipartiteMultigraph,
    budget: &SearchBudget,
) -> Result<usize, OracleError> {
    exact_max_rainbow_matching(g, &Constraints::default(), budget).map(|m| m.len())
}

struct BranchAndBound<'a> {
    candidates: &'a [Vec<Edge>],
    used_left: Vec<bool>,
    used_right: Vec<bool>,
    current: Vec<Edge>,
    best: Vec<Edge>,
    ceiling: usize,
    meter: Meter,
}

impl BranchAndBound<'_> {
    fn available(&self, e: &Edge) -> bool {
        !self.used_left[e.x] && !self.used_right[e.y]
    }

    fn done(&self) -> bool {
        self.best.len() >= self.ceiling
    }

    fn run(&mut self, i: usize) -> Result<(), Exhausted> {
        self.meter.tick()?;
        if self.current.len() > self.best.len() {
            self.best = self.current.clone();
        }
        if i == self.candidates.len() || self.done() {
            return Ok(());
        }
        let open = self.candidates[i..]
            .iter()
            .filter(|class| class.iter().any(|e| self.available(e)))
            .count();
        if self.current.len() + open <= self.best.len() {
            return Ok(());
        }
        for k in 0..self.candidates[i].len() {
            let e = self.candidates[i][k];
            if !self.available(&e) {
                continue;
            }
            self.used_left[e.x] = true;
            self.used_right[e.y] = true;
            self.current.push(e);
            let r = self.run(i + 1);
            self.current.pop();
            self.used_left[e.x] = false;
            self.used_right[e.y] = false;
            r?;
            if self.done() {
                return Ok(());
            }
        }
        self.run(i + 1)
    }
}

/// All rainbow `u` to `v` paths of length at most `max_len` internally avoiding `forbidden`,
/// in lexicographic order. `u == v` gives the single trivial path.
pub fn enumerate_rainbow_paths(
    d: &LabelledDigraph,
    u: usize,
    v: usize,
    max_len: usize,
    mode: ColourMode,
    forbidden: &BTreeSet<usize>,
    budget: &SearchBudget,
) -> Result<Vec<DiPath>, Exhausted> {
    let mut out = Vec::new();
    let mut meter = budget.meter();
    d.for_each_rainbow_path(u, max_len, mode, forbidden, &mut meter, |p| {
        if p.end() == v {
            out.push(p.clone());
            Visit::Prune
        } else {
            Visit::Extend
        }
    })?;
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum VerdictMode {
    /// The whole quantifier space was enumerated.
    Exhaustive,
    /// Only `samples` seeded random choices were checked; `holds = true` is not a proof.
    Sampled { samples: usize },
    /// The statement holds for trivial reasons (nothing to quantify over).
    Vacuous,
}

/// A counterexample to a connectivity statement: no suitable path from `from` to `to` avoiding
/// `avoided`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub from: usize,
    pub to: usize,
    pub avoided: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub holds: bool,
    pub mode: VerdictMode,
    pub witness: Option<Violation>,
}

impl Verdict {
    pub fn is_exhaustive(&self) -> bool {
        self.mode == VerdictMode::Exhaustive
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    r
}

/// Calls `check` on every `size`-subset of `pool` (or on `sample_limit` seeded random subsets
/// when there are more than `node_limit` of them) until it returns `false`.
///
/// Returns the mode used and the first failing subset.
fn for_each_subset<F>(
    pool: &[usize],
    size: usize,
    budget: &SearchBudget,
    mut check: F,
) -> Result<(VerdictMode, Option<Vec<usize>>), Exhausted>
where
    F: FnMut(&[usize]) -> Result<bool, Exhausted>,
{
    if binomial(pool.len(), size) <= budget.node_limit as u128 {
        for s in pool.iter().copied().combinations(size) {
            if !check(&s)? {
                return Ok((VerdictMode::Exhaustive, Some(s)));
            }
        }
        return Ok((VerdictMode::Exhaustive, None));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    for _ in 0..budget.sample_limit {
        let mut s: Vec<usize> = sample(&mut rng, pool.len(), size)
            .into_iter()
            .map(|i| pool[i])
            .collect();
        s.sort_unstable();
        if !check(&s)? {
            return Ok((
                VerdictMode::Sampled {
                    samples: budget.sample_limit,
                },
                Some(s),
            ));
        }
    }
    Ok((
        VerdictMode::Sampled {
            samples: budget.sample_limit,
        },
        None,
    ))
}

fn edge_labels(d: &LabelledDigraph) -> Vec<usize> {
    d.edges()
        .iter()
        .filter_map(|e| e.label)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

fn verdict(mode: VerdictMode, witness: Option<Violation>) -> Verdict {
    Verdict {
        holds: witness.is_none(),
        mode,
        witness,
    }
}

/// Whether for every set `S` of at most `k - 1` edge labels and every ordered pair of distinct
/// vertices there is a rainbow path (edge labels) avoiding `S`.
///
/// Only sets of exactly `min(k - 1, labels)` colours are tried, which suffices since avoiding a
/// subset is never harder.
pub fn is_rainbow_k_edge_connected(
    d: &LabelledDigraph,
    k: usize,
    budget: &SearchBudget,
) -> Result<Verdict, Exhausted> {
    let pairs: Vec<(usize, usize)> = (0..d.vertex_count())
        .flat_map(|u| (0..d.vertex_count()).map(move |v| (u, v)))
        .filter(|(u, v)| u != v)
        .collect();
    rainbow_connected_over(d, &pairs, k, budget)
}

/// As [`is_rainbow_k_edge_connected`] for the single ordered pair `(u, v)`.
pub fn is_rainbow_k_edge_connected_between(
    d: &LabelledDigraph,
    u: usize,
    v: usize,
    k: usize,
    budget: &SearchBudget,
) -> Result<Verdict, Exhausted> {
    if u == v {
        return Ok(verdict(VerdictMode::Vacuous, None));
    }
    rainbow_connected_over(d, &[(u, v)], k, budget)
}

fn rainbow_connected_over(
    d: &LabelledDigraph,
    pairs: &[(usize, usize)],
    k: usize,
    budget: &SearchBudget,
) -> Result<Verdict, Exhausted> {
    if pairs.is_empty() || k == 0 {
        return Ok(verdict(VerdictMode::Vacuous, None));
    }
    let labels = edge_labels(d);
    let size = (k - 1).min(labels.len());
    let mut meter = budget.meter();
    let max_len = d.vertex_count().saturating_sub(1);
    let mut witness = None;
    let (mode, _) = for_each_subset(&labels, size, budget, |s| {
        let forbidden: BTreeSet<usize> = s.iter().copied().collect();
        for &(u, v) in pairs {
            let mut found = false;
            d.for_each_rainbow_path(u, max_len, ColourMode::Edge, &forbidden, &mut meter, |p| {
                if p.end() == v {
                    found = true;
                    Visit::Stop
                } else {
                    Visit::Extend
                }
            })?;
            if !found {
                witness = Some(Violation {
                    from: u,
                    to: v,
                    avoided: s.to_vec(),
                });
                return Ok(false);
            }
        }
        Ok(true)
    })?;
    Ok(verdict(mode, witness))
}

/// Connectivity notion for (k,d)-connected sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KdMode {
    /// Paths of length at most `d` avoiding up to `k - 1` vertices (endpoints exempt).
    Uncoloured,
    /// Rainbow paths of length at most `d` internally avoiding up to `k - 1` colours.
    Coloured(ColourMode),
}

/// Whether `a` is (k,d)-connected in `d`: for every forbidden set of at most `k - 1` vertices
/// (uncoloured) or colours (coloured) and every ordered pair `x != y` in `a`, a suitable path of
/// length at most `len` from `x` to `y` exists.
pub fn is_kd_connected(
    d: &LabelledDigraph,
    a: &[usize],
    k: usize,
    len: usize,
    mode: KdMode,
    budget: &SearchBudget,
) -> Result<Verdict, Exhausted> {
    if a.len() <= 1 || k == 0 {
        return Ok(verdict(VerdictMode::Vacuous, None));
    }
    let mut meter = budget.meter();
    match mode {
        KdMode::Uncoloured => {
            let n = d.vertex_count();
            let mut mode_used = VerdictMode::Exhaustive;
            for &x in a {
                for &y in a {
                    if x == y {
                        continue;
                    }
                    let pool: Vec<usize> = (0..n).filter(|&v| v != x && v != y).collect();
                    let size = (k - 1).min(pool.len());
                    let (m, fail) = for_each_subset(&pool, size, budget, |s| {
                        meter.tick()?;
                        let mut blocked = vec![false; n];
                        for &v in s {
                            blocked[v] = true;
                        }
                        Ok(bfs_distance(d, x, y, &blocked).is_some_and(|dist| dist <= len))
                    })?;
                    if let VerdictMode::Sampled { .. } = m {
                        mode_used = m;
                    }
                    if let Some(s) = fail {
                        return Ok(verdict(
                            m,
                            Some(Violation {
                                from: x,
                                to: y,
                                avoided: s,
                            }),
                        ));
                    }
                }
            }
            Ok(verdict(mode_used, None))
        }
        KdMode::Coloured(cm) => {
            let mut pool: BTreeSet<usize> = BTreeSet::new();
            if cm != ColourMode::Vertex {
                pool.extend(d.edges().iter().filter_map(|e| e.label));
            }
            if cm != ColourMode::Edge {
                pool.extend(d.vertex_labels().iter().flatten());
            }
            let pool: Vec<usize> = pool.into_iter().collect();
            let size = (k - 1).min(pool.len());
            let mut witness = None;
            let (m, _) = for_each_subset(&pool, size, budget, |s| {
                let forbidden: BTreeSet<usize> = s.iter().copied().collect();
                for &x in a {
                    let mut reached = vec![false; d.vertex_count()];
                    let mut missing: BTreeSet<usize> = a.iter().copied().filter(|&y| y != x).collect();
                    d.for_each_rainbow_path(x, len, cm, &forbidden, &mut meter, |p| {
                        let v = p.end();
                        if !reached[v] {
                            reached[v] = true;
                            missing.remove(&v);
                        }
                        if missing.is_empty() {
                            Visit::Stop
                        } else {
                            Visit::Extend
                        }
                    })?;
                    if let Some(&y) = missing.iter().next() {
                        witness = Some(Violation {
                            from: x,
                            to: y,
                            avoided: s.to_vec(),
                        });
                        return Ok(false);
                    }
                }
                Ok(true)
            })?;
            Ok(verdict(m, witness))
        }
    }
}

/// Length of a shortest `x` to `y` path whose interior avoids `blocked` (edge labels ignored).
pub fn bfs_distance(d: &LabelledDigraph, x: usize, y: usize, blocked: &[bool]) -> Option<usize> {
    let n = d.vertex_count();
    let mut dist = vec![usize::MAX; n];
    dist[x] = 0;
    let mut queue = std::collections::VecDeque::from([x]);
    while let Some(u) = queue.pop_front() {
        if u == y {
            return Some(dist[u]);
        }
        if u != x && blocked[u] {
            continue;
        }
        for &e in d.out_edges(u) {
            let w = d.edge(e).to;
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeSetVerdict {
    pub free: bool,
    /// Why the set fails, if it does.
    pub reason: Option<String>,
    /// A pinned edge set and avoided vertex set with no suitable matching.
    pub failing: Option<(Vec<Edge>, Vec<usize>)>,
    /// Number of (pinned, avoided) pairs decided by the exact search.
    pub pairs_checked: usize,
}

/// Decides whether `x_prime` is (k, T, c)-free for the matching in `ctx`.
///
/// Pinned sets `A` range over `k`-subsets of the matching edges outside `(T)_M` and the colour-`c`
/// edge; avoided sets `B` range over `k`-subsets of `x_prime` disjoint from `(A)_X`. For each pair
/// the exact search must find a matching of the current size that contains `A`, touches no
/// vertex of `B` and does not use colour `c`. When no such `A` or `B` exists the condition holds
/// vacuously.
pub fn free_set_check(
    ctx: &MatchingContext<'_>,
    x_prime: &BTreeSet<usize>,
    t: &BTreeSet<usize>,
    c: usize,
    k: usize,
    budget: &SearchBudget,
) -> Result<FreeSetVerdict, OracleError> {
    let fail = |reason: &str| FreeSetVerdict {
        free: false,
        reason: Some(reason.to_string()),
        failing: None,
        pairs_checked: 0,
    };
    if !x_prime.is_disjoint(t) {
        return Ok(fail("X' meets T"));
    }
    if ctx
        .colours_of_lefts(x_prime.iter().chain(t).copied())
        .contains(&c)
    {
        return Ok(fail("c is the colour of a matching edge at X' or T"));
    }
    let g = ctx.graph();
    let n = ctx.size();
    let excluded = ctx.edges_at_lefts(t.iter().copied());
    let pool: Vec<Edge> = ctx
        .matching()
        .edges()
        .iter()
        .copied()
        .filter(|e| !excluded.contains(e) && e.c != c)
        .collect();
    let mut pairs_checked = 0;
    for a in pool.iter().copied().combinations(k) {
        let a_x: BTreeSet<usize> = a.iter().map(|e| e.x).collect();
        let b_pool: Vec<usize> = x_prime.iter().copied().filter(|x| !a_x.contains(x)).collect();
        for b in b_pool.into_iter().combinations(k) {
            let constraints = Constraints {
                required: a.clone(),
                forbidden_x: b.iter().copied().collect(),
                forbidden_colours: [c].into(),
            };
            pairs_checked += 1;
            let best = match exact_max_rainbow_matching(g, &constraints, budget) {
                Ok(m) => m,
                Err(OracleError::InfeasibleConstraints(_)) => RainbowMatching::empty(),
                Err(e) => return Err(e),
            };
            if best.len() < n {
                return Ok(FreeSetVerdict {
                    free: false,
                    reason: Some("no matching of full size for a pinned/avoided pair".into()),
                    failing: Some((a.clone(), b)),
                    pairs_checked,
                });
            }
        }
    }
    Ok(FreeSetVerdict {
        free: true,
        reason: None,
        failing: None,
        pairs_checked,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{cyclic_3x3, cyclic_square, latin_2x2};

    fn budget() -> SearchBudget {
        SearchBudget::default()
    }

    #[test]
    fn latin_squares() {
        assert_eq!(max_rainbow_matching_size(&latin_2x2(), &budget()), Ok(1));
        assert_eq!(max_rainbow_matching_size(&cyclic_3x3(), &budget()), Ok(3));
        assert_eq!(max_rainbow_matching_size(&cyclic_square(4), &budget()), Ok(3));
        assert_eq!(max_rainbow_matching_size(&cyclic_square(5), &budget()), Ok(5));
    }

    #[test]
    fn forced_required_matching_is_returned() {
        let g = cyclic_3x3();
        let required = vec![Edge::new(0, 0, 0), Edge::new(1, 1, 2), Edge::new(2, 2, 1)];
        let c = Constraints {
            required: required.clone(),
            ..Default::default()
        };
        let m = exact_max_rainbow_matching(&g, &c, &budget()).unwrap();
        assert_eq!(m, RainbowMatching::new(required).canonical());
    }

    #[test]
    fn incompatible_required_edges() {
        let g = latin_2x2();
        let c = Constraints {
            required: vec![Edge::new(0, 0, 0), Edge::new(0, 1, 1)],
            ..Default::default()
        };
        assert!(matches!(
            exact_max_rainbow_matching(&g, &c, &budget()),
            Err(OracleError::InfeasibleConstraints(_))
        ));
    }

    #[test]
    fn forbidden_vertices_and_colours() {
        let g = cyclic_3x3();
        let c = Constraints {
            forbidden_x: [0].into(),
            forbidden_colours: [1].into(),
            ..Default::default()
        };
        let m = exact_max_rainbow_matching(&g, &c, &budget()).unwrap();
        assert_eq!(m.len(), 2);
        assert!(m.edges().iter().all(|e| e.x != 0 && e.c != 1));
    }

    #[test]
    fn budget_exhaustion_reports_best() {
        let g = cyclic_square(6);
        let err = exact_max_rainbow_matching(&g, &Constraints::default(), &SearchBudget::with_nodes(5))
            .unwrap_err();
        assert!(matches!(err, OracleError::BudgetExceeded { .. }));
    }

    #[test]
    fn path_enumeration_basics() {
        let mut d = LabelledDigraph::unlabelled(2);
        d.add_edge(0, 1, Some(7));
        let none = BTreeSet::new();
        let same = enumerate_rainbow_paths(&d, 0, 0, 3, ColourMode::Edge, &none, &budget()).unwrap();
        assert_eq!(same, vec![DiPath::trivial(0)]);
        let f: BTreeSet<usize> = [7].into();
        assert!(
            enumerate_rainbow_paths(&d, 0, 1, 3, ColourMode::Edge, &f, &budget())
                .unwrap()
                .is_empty()
        );
    }

    #[test]
    fn rainbow_edge_connectivity_examples() {
        let mut complete = LabelledDigraph::unlabelled(3);
        let mut label = 0;
        for u in 0..3 {
            for v in 0..3 {
                if u != v {
                    complete.add_edge(u, v, Some(label));
                    label += 1;
                }
            }
        }
        assert!(
            is_rainbow_k_edge_connected(&complete, 1, &budget())
                .unwrap()
                .holds
        );
        let mut single = LabelledDigraph::unlabelled(2);
        single.add_edge(0, 1, Some(0));
        let v = is_rainbow_k_edge_connected_between(&single, 0, 1, 2, &budget()).unwrap();
        assert!(!v.holds);
        assert_eq!(v.mode, VerdictMode::Exhaustive);
    }

    #[test]
    fn kd_connectivity_examples() {
        // complete biorientation of K_{3,2}; class X = {0,1,2}
        let mut d = LabelledDigraph::unlabelled(5);
        for x in 0..3 {
            for y in 3..5 {
                d.add_edge(x, y, None);
                d.add_edge(y, x, None);
            }
        }
        let v = is_kd_connected(&d, &[0, 1, 2], 2, 2, KdMode::Uncoloured, &budget()).unwrap();
        assert!(v.holds && v.is_exhaustive());
        let v = is_kd_connected(&d, &[0, 1, 2], 3, 2, KdMode::Uncoloured, &budget()).unwrap();
        assert!(!v.holds);

        let single = is_kd_connected(&d, &[4], 9, 1, KdMode::Uncoloured, &budget()).unwrap();
        assert_eq!(single.mode, VerdictMode::Vacuous);

        let mut path = LabelledDigraph::unlabelled(3);
        path.add_edge(0, 1, None);
        path.add_edge(1, 2, None);
        let v = is_kd_connected(&path, &[0, 2], 2, 2, KdMode::Uncoloured, &budget()).unwrap();
        assert!(!v.holds);
    }

    #[test]
    fn free_set_examples() {
        let g = cyclic_3x3();
        let m = RainbowMatching::new(vec![Edge::new(0, 0, 0), Edge::new(1, 1, 2)]);
        let ctx = MatchingContext::new(&g, m).unwrap();
        let x0: BTreeSet<usize> = ctx.uncovered_left().into_iter().collect();
        let c_star = ctx.c_star().unwrap();
        for k in 0..=2 {
            let v = free_set_check(&ctx, &x0, &BTreeSet::new(), c_star, k, &budget()).unwrap();
            assert!(v.free, "k = {k}");
        }
        let overlap = free_set_check(&ctx, &x0, &x0, c_star, 1, &budget()).unwrap();
        assert!(!overlap.free);
    }

    #[test]
    fn free_set_failure_found_by_enumeration() {
        // colour 0: 0-0 and 1-1; colour 1: 0-1 only; colour 2 missing with a single edge 2-2.
        let g = ColouredBipartiteMultigraph::new(
            3,
            3,
            3,
            vec![
                Edge::new(0, 0, 0),
                Edge::new(1, 1, 0),
                Edge::new(0, 1, 1),
                Edge::new(2, 2, 2),
            ],
            true,
        )
        .unwrap();
        let m = RainbowMatching::new(vec![Edge::new(0, 0, 0), Edge::new(2, 2, 2)]);
        let ctx = MatchingContext::new(&g, m).unwrap();
        // pinning colour 0 at 0-0 and avoiding vertex 1 leaves colour 2 only: size 2 reachable
        let xp: BTreeSet<usize> = [1].into();
        let v = free_set_check(&ctx, &xp, &BTreeSet::new(), 1, 1, &budget()).unwrap();
        assert!(v.free);
        // with X' = {2} the pinned edge 0-0 forces avoiding vertex 2, which kills colour 2
        let xp: BTreeSet<usize> = [2].into();
        let v = free_set_check(&ctx, &xp, &BTreeSet::new(), 1, 1, &budget()).unwrap();
        assert!(!v.free);
        assert!(v.failing.is_some());
    }
}
