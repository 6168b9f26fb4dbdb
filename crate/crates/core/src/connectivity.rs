//! Rainbow connectivity in totally coloured digraphs: rainbow distances and balls, the
//! length-two path digraph `D_m` with per-edge certificates, highly connected sets, and rainbow
//! paths through prescribed vertices.
//!
//! Unless stated otherwise paths are rainbow in the total sense (vertex and edge colours all
//! distinct) and radii derived from `ε` are rounded up.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::budget::{Exhausted, Meter, SearchBudget};
use crate::digraph::{ColourMode, DiPath, LabelledDigraph};
use crate::oracle::{is_kd_connected, KdMode, Verdict, VerdictMode};
use crate::switching::check_proper_labelling;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConnectivityError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("search budget exhausted")]
    BudgetExceeded,
    #[error("no candidate set passed verification")]
    NoVerifiedSetFound,
    #[error("no rainbow path for leg {leg} (anchor {from} to anchor {to})")]
    SegmentNotFound { leg: usize, from: usize, to: usize },
    #[error("certificate of edge {from}->{to} has no usable triple left")]
    CertificateExhausted { from: usize, to: usize },
}

impl From<Exhausted> for ConnectivityError {
    fn from(_: Exhausted) -> Self {
        ConnectivityError::BudgetExceeded
    }
}

/// `ceil(1/ε)`.
pub fn inverse_radius(epsilon: f64) -> usize {
    (1.0 / epsilon - 1e-12).ceil().max(0.0) as usize
}

fn check_epsilon(epsilon: f64) -> Result<(), ConnectivityError> {
    if epsilon > 0.0 && epsilon <= 1.0 {
        Ok(())
    } else {
        Err(ConnectivityError::PreconditionViolated(format!(
            "ε = {epsilon} is outside (0, 1]"
        )))
    }
}

/// Length of a shortest rainbow path from `u` to `v`, or `None` if every one is longer than `cap`.
pub fn rainbow_distance(
    d: &LabelledDigraph,
    u: usize,
    v: usize,
    cap: usize,
    mode: ColourMode,
    budget: &SearchBudget,
) -> Result<Option<usize>, ConnectivityError> {
    let mut meter = budget.meter();
    Ok(
        d.shortest_rainbow_path(u, v, cap, mode, &BTreeSet::new(), &mut meter)?
            .map(|p| p.len()),
    )
}

/// A rainbow ball `N^{t0}(v)` whose next layer adds at most `ε|D|` vertices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ball {
    pub centre: usize,
    pub epsilon: f64,
    pub t0: usize,
    pub vertices: Vec<usize>,
    /// `|N^t(v)|` for `t = 0..=ceil(1/ε) + 1`.
    pub layer_sizes: Vec<usize>,
    /// Rainbow distance from the centre, `None` beyond the largest layer.
    pub distances: Vec<Option<usize>>,
}

impl Ball {
    /// Re-checks `|N^{t0+1}| <= |N^{t0}| + ε|D|` and `t0 <= ceil(1/ε)` from the stored layers.
    pub fn growth_holds(&self, order: usize) -> bool {
        self.t0 <= inverse_radius(self.epsilon)
            && self.layer_sizes[self.t0 + 1] as f64
                <= self.layer_sizes[self.t0] as f64 + self.epsilon * order as f64
    }
}

pub fn low_expansion_ball(
    d: &LabelledDigraph,
    v: usize,
    epsilon: f64,
    budget: &SearchBudget,
) -> Result<Ball, ConnectivityError> {
    check_epsilon(epsilon)?;
    let radius = inverse_radius(epsilon);
    let mut meter = budget.meter();
    let distances = d.rainbow_distances(v, radius + 1, ColourMode::Total, &mut meter)?;
    let layer_sizes: Vec<usize> = (0..=radius + 1)
        .map(|t| distances.iter().filter(|x| x.is_some_and(|x| x <= t)).count())
        .collect();
    let order = d.vertex_count() as f64;
    let t0 = (0..=radius)
        .find(|&t| layer_sizes[t + 1] as f64 <= layer_sizes[t] as f64 + epsilon * order)
        .expect("layers cannot grow by more than ε|D| for more than 1/ε steps");
    let vertices = (0..d.vertex_count())
        .filter(|&x| distances[x].is_some_and(|dx| dx <= t0))
        .collect();
    Ok(Ball {
        centre: v,
        epsilon,
        t0,
        vertices,
        layer_sizes,
        distances,
    })
}

/// A set near a vertex whose induced minimum out-degree is close to the minimum out-degree over
/// the whole ball of radius `ceil(1/ε)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CloseSubgraph {
    pub vertices: Vec<usize>,
    pub t0: usize,
    /// Minimum out-degree in `D` over vertices within rainbow distance `ceil(1/ε)`.
    pub ball_min_degree: usize,
    /// Minimum out-degree of the subgraph induced on `vertices`.
    pub induced_min_degree: usize,
    /// `ball_min_degree - 2ε|D|`.
    pub bound: f64,
}

impl CloseSubgraph {
    pub fn bound_holds(&self) -> bool {
        self.induced_min_degree as f64 >= self.bound
    }
}

pub fn close_high_degree_subgraph(
    d: &LabelledDigraph,
    v: usize,
    epsilon: f64,
    budget: &SearchBudget,
) -> Result<CloseSubgraph, ConnectivityError> {
    check_epsilon(epsilon)?;
    let need = 2.0 / (epsilon * epsilon);
    if (d.vertex_count() as f64) < need {
        return Err(ConnectivityError::PreconditionViolated(format!(
            "{} vertices, at least {need:.1} needed",
            d.vertex_count()
        )));
    }
    check_total_colouring(d)?;
    let ball = low_expansion_ball(d, v, epsilon, budget)?;
    let radius = inverse_radius(epsilon);
    let ball_min_degree = (0..d.vertex_count())
        .filter(|&x| ball.distances[x].is_some_and(|dx| dx <= radius))
        .map(|x| d.out_degree(x))
        .min()
        .unwrap_or(0);
    let mut member = vec![false; d.vertex_count()];
    for &x in &ball.vertices {
        member[x] = true;
    }
    let induced_min_degree = ball
        .vertices
        .iter()
        .map(|&x| d.out_degree_into(x, &member))
        .min()
        .unwrap_or(0);
    Ok(CloseSubgraph {
        vertices: ball.vertices,
        t0: ball.t0,
        ball_min_degree,
        induced_min_degree,
        bound: ball_min_degree as f64 - 2.0 * epsilon * d.vertex_count() as f64,
    })
}

fn check_total_colouring(d: &LabelledDigraph) -> Result<(), ConnectivityError> {
    if d.vertex_labels().iter().any(Option::is_none) || d.edges().iter().any(|e| e.label.is_none()) {
        return Err(ConnectivityError::PreconditionViolated(
            "colouring is not total".into(),
        ));
    }
    check_proper_labelling(d).map_err(|v| ConnectivityError::PreconditionViolated(v.to_string()))
}

/// One length-two path `from -> midpoint -> to` of a `D_m` certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MidpointTriple {
    pub midpoint: usize,
    pub edge_in: usize,
    pub edge_out: usize,
    /// Colours of the first edge, the midpoint and the second edge.
    pub colours: [usize; 3],
}

/// `m` length-two paths from `from` to `to` with distinct midpoints whose union is rainbow.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DmCertificate {
    pub from: usize,
    pub to: usize,
    pub triples: Vec<MidpointTriple>,
}

impl DmCertificate {
    /// Re-checks the certificate against `d`: each triple is a rainbow length-two path, the
    /// midpoints are distinct and the union of all paths is rainbow.
    pub fn validate(&self, d: &LabelledDigraph, m: usize) -> bool {
        if self.triples.len() < m {
            return false;
        }
        let mut colours: BTreeSet<usize> = BTreeSet::new();
        let mut ends = vec![self.from, self.to];
        for v in &ends {
            match d.vertex_label(*v) {
                Some(l) if colours.insert(l) => {}
                _ => return false,
            }
        }
        for t in &self.triples {
            let (a, b) = (d.edge(t.edge_in), d.edge(t.edge_out));
            if a.from != self.from || a.to != t.midpoint || b.from != t.midpoint || b.to != self.to {
                return false;
            }
            let actual = [a.label, d.vertex_label(t.midpoint), b.label];
            if actual != t.colours.map(Some) {
                return false;
            }
            if ends.contains(&t.midpoint) {
                return false;
            }
            ends.push(t.midpoint);
            if !t.colours.iter().all(|c| colours.insert(*c)) {
                return false;
            }
        }
        true
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DmDigraph {
    pub m: usize,
    pub digraph: LabelledDigraph,
    pub certificates: BTreeMap<(usize, usize), DmCertificate>,
}

/// Builds `D_m`: an edge `x -> y` whenever `m` length-two rainbow paths from `x` to `y` have
/// distinct midpoints and a rainbow union.
///
/// Candidate paths conflict when their colour triples meet. A greedy independent set of the
/// conflict graph (fewest conflicts first) is tried before an exact search.
pub fn build_dm(
    d: &LabelledDigraph,
    m: usize,
    budget: &SearchBudget,
) -> Result<DmDigraph, ConnectivityError> {
    if m == 0 {
        return Err(ConnectivityError::PreconditionViolated(
            "m must be at least 1".into(),
        ));
    }
    if d.vertex_labels().iter().any(Option::is_none) || d.edges().iter().any(|e| e.label.is_none()) {
        return Err(ConnectivityError::PreconditionViolated(
            "colouring is not total".into(),
        ));
    }
    let n = d.vertex_count();
    let mut meter = budget.meter();
    let mut out = LabelledDigraph::unlabelled(n);
    let mut certificates = BTreeMap::new();
    for x in 0..n {
        let cx = d.vertex_label(x).expect("total");
        let mut by_target: BTreeMap<usize, Vec<MidpointTriple>> = BTreeMap::new();
        for &e1 in d.out_edges(x) {
            let a = d.edge(e1);
            let u = a.to;
            for &e2 in d.out_edges(u) {
                let b = d.edge(e2);
                let y = b.to;
                if y == x {
                    continue;
                }
                let colours = [
                    a.label.expect("total"),
                    d.vertex_label(u).expect("total"),
                    b.label.expect("total"),
                ];
                let cy = d.vertex_label(y).expect("total");
                let all = [cx, colours[0], colours[1], colours[2], cy];
                if all.iter().collect::<BTreeSet<_>>().len() == all.len() {
                    by_target.entry(y).or_default().push(MidpointTriple {
                        midpoint: u,
                        edge_in: e1,
                        edge_out: e2,
                        colours,
                    });
                }
            }
        }
        for (y, candidates) in by_target {
            meter.tick()?;
            if candidates.len() < m {
                continue;
            }
            if let Some(chosen) = independent_triples(&candidates, m, &mut meter)? {
                out.add_edge(x, y, None);
                certificates.insert(
                    (x, y),
                    DmCertificate {
                        from: x,
                        to: y,
                        triples: chosen,
                    },
                );
            }
        }
    }
    Ok(DmDigraph {
        m,
        digraph: out,
        certificates,
    })
}

fn triples_conflict(a: &MidpointTriple, b: &MidpointTriple) -> bool {
    a.midpoint == b.midpoint || a.colours.iter().any(|c| b.colours.contains(c))
}

fn independent_triples(
    candidates: &[MidpointTriple],
    m: usize,
    meter: &mut Meter,
) -> Result<Option<Vec<MidpointTriple>>, Exhausted> {
    let k = candidates.len();
    let conflicts: Vec<Vec<usize>> = (0..k)
        .map(|i| {
            (0..k)
                .filter(|&j| j != i && triples_conflict(&candidates[i], &candidates[j]))
                .collect()
        })
        .collect();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&i| (conflicts[i].len(), i));
    let mut blocked = vec![false; k];
    let mut chosen = Vec::new();
    for &i in &order {
        if !blocked[i] {
            chosen.push(i);
            blocked[i] = true;
            for &j in &conflicts[i] {
                blocked[j] = true;
            }
            if chosen.len() == m {
                return Ok(Some(chosen.iter().map(|&i| candidates[i]).collect()));
            }
        }
    }
    fn search(
        order: &[usize],
        conflicts: &[Vec<usize>],
        pos: usize,
        chosen: &mut Vec<usize>,
        m: usize,
        meter: &mut Meter,
    ) -> Result<bool, Exhausted> {
        meter.tick()?;
        if chosen.len() == m {
            return Ok(true);
        }
        if chosen.len() + (order.len() - pos) < m {
            return Ok(false);
        }
        let i = order[pos];
        if chosen.iter().all(|c| !conflicts[i].contains(c)) {
            chosen.push(i);
            if search(order, conflicts, pos + 1, chosen, m, meter)? {
                return Ok(true);
            }
            chosen.pop();
        }
        search(order, conflicts, pos + 1, chosen, m, meter)
    }
    let mut chosen = Vec::new();
    if search(&order, &conflicts, 0, &mut chosen, m, meter)? {
        Ok(Some(chosen.iter().map(|&i| candidates[i]).collect()))
    } else {
        Ok(None)
    }
}

/// Path length used for (k,d)-connected sets: `ceil(40/ε²)` uncoloured, `ceil(1280/ε²)` coloured.
pub fn kd_length(epsilon: f64, mode: KdMode) -> usize {
    let factor = match mode {
        KdMode::Uncoloured => 40.0,
        KdMode::Coloured(_) => 1280.0,
    };
    (factor / (epsilon * epsilon) - 1e-9).ceil() as usize
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KdSet {
    pub vertices: Vec<usize>,
    pub k: usize,
    /// Path length bound checked (the full-scale value, capped at `|D| - 1`).
    pub d: usize,
    pub verdict: Verdict,
    /// `δ⁺(D) - ε|D|`, the size the existence statement promises at large orders.
    pub target: f64,
}

/// A (k,d)-connected set found by peeling and checked by exhaustive verification.
///
/// Vertices whose out-degree into the current set is below `δ⁺(D) - ε|D|/4` are removed until
/// none is left; of the survivors those with in-degree at least `ε|D|/2` from the survivors are
/// kept. When nothing survives, the lowest-numbered vertex is returned as a vacuously connected
/// singleton.
pub fn find_kd_connected_set(
    d: &LabelledDigraph,
    k: usize,
    epsilon: f64,
    mode: KdMode,
    budget: &SearchBudget,
) -> Result<KdSet, ConnectivityError> {
    check_epsilon(epsilon)?;
    let n = d.vertex_count();
    if n == 0 {
        return Err(ConnectivityError::NoVerifiedSetFound);
    }
    let len = kd_length(epsilon, mode).min(n.saturating_sub(1)).max(1);
    let delta = d.min_out_degree() as f64;
    let order = n as f64;
    let mut alive = vec![true; n];
    loop {
        let drop: Vec<usize> = (0..n)
            .filter(|&v| alive[v] && (d.out_degree_into(v, &alive) as f64) < delta - epsilon * order / 4.0)
            .collect();
        if drop.is_empty() {
            break;
        }
        for v in drop {
            alive[v] = false;
        }
    }
    let in_from_alive = |v: usize| d.in_neighbours(v).into_iter().filter(|&u| alive[u]).count();
    let candidate: Vec<usize> = (0..n)
        .filter(|&v| alive[v] && in_from_alive(v) as f64 >= epsilon * order / 2.0)
        .collect();
    let target = delta - epsilon * order;
    if candidate.is_empty() {
        return Ok(KdSet {
            vertices: vec![0],
            k,
            d: len,
            verdict: Verdict {
                holds: true,
                mode: VerdictMode::Vacuous,
                witness: None,
            },
            target,
        });
    }
    let verdict = is_kd_connected(d, &candidate, k, len, mode, budget)?;
    if !verdict.holds {
        return Err(ConnectivityError::NoVerifiedSetFound);
    }
    Ok(KdSet {
        vertices: candidate,
        k,
        d: len,
        verdict,
        target,
    })
}

/// A rainbow path from the first anchor to the last visiting every anchor in order, built leg by
/// leg. Each leg is a shortest rainbow path of length at most `d` whose interior avoids `s`, the
/// colours already used by earlier legs and the colours of later anchors.
pub fn rainbow_path_through(
    d: &LabelledDigraph,
    anchors: &[usize],
    s: &BTreeSet<usize>,
    len: usize,
    budget: &SearchBudget,
) -> Result<DiPath, ConnectivityError> {
    let Some(&first) = anchors.first() else {
        return Err(ConnectivityError::PreconditionViolated("no anchors".into()));
    };
    let anchor_colours: Vec<Option<usize>> = anchors.iter().map(|&a| d.vertex_label(a)).collect();
    if anchor_colours.iter().flatten().any(|c| s.contains(c)) {
        return Err(ConnectivityError::PreconditionViolated(
            "an anchor is coloured from S".into(),
        ));
    }
    let mut meter = budget.meter();
    let mut path = DiPath::trivial(first);
    let mut used: BTreeSet<usize> = BTreeSet::new();
    for leg in 0..anchors.len().saturating_sub(1) {
        let (a, b) = (anchors[leg], anchors[leg + 1]);
        let mut forbidden: BTreeSet<usize> = s.union(&used).copied().collect();
        forbidden.extend(anchor_colours[leg + 2..].iter().flatten());
        // earlier vertices other than the current start must not be revisited
        forbidden.extend(
            path.vertices[..path.vertices.len() - 1]
                .iter()
                .filter_map(|&v| d.vertex_label(v)),
        );
        let segment = d
            .shortest_rainbow_path(a, b, len, ColourMode::Total, &forbidden, &mut meter)?
            .filter(|p| p.vertices[1..].iter().all(|v| !path.vertices.contains(v)))
            .ok_or(ConnectivityError::SegmentNotFound { leg, from: a, to: b })?;
        for &v in &segment.vertices {
            used.extend(d.vertex_label(v));
        }
        for &e in &segment.edges {
            used.extend(d.edge(e).label);
        }
        path.vertices.extend(&segment.vertices[1..]);
        path.edges.extend(&segment.edges);
    }
    debug_assert!(d.is_rainbow_path(&path, ColourMode::Total, s));
    Ok(path)
}

/// Replaces each edge `u -> v` of a path in `D_m` by a length-two path `u -> y -> v` of `D` taken
/// from its certificate, choosing triples whose colours avoid `s`, the vertex colours of the
/// path and the triples already chosen.
pub fn lift_path_through_dm(
    d: &LabelledDigraph,
    dm: &DmDigraph,
    path: &[usize],
    s: &BTreeSet<usize>,
) -> Result<DiPath, ConnectivityError> {
    let Some(&first) = path.first() else {
        return Err(ConnectivityError::PreconditionViolated("empty path".into()));
    };
    let interior = if path.len() > 2 {
        &path[1..path.len() - 1]
    } else {
        &[][..]
    };
    if interior
        .iter()
        .any(|&v| d.vertex_label(v).is_some_and(|c| s.contains(&c)))
    {
        return Err(ConnectivityError::PreconditionViolated(
            "path interior is coloured from S".into(),
        ));
    }
    let mut taken: BTreeSet<usize> = s.clone();
    taken.extend(path.iter().filter_map(|&v| d.vertex_label(v)));
    let mut out = DiPath::trivial(first);
    for w in path.windows(2) {
        let (u, v) = (w[0], w[1]);
        let cert = dm
            .certificates
            .get(&(u, v))
            .ok_or(ConnectivityError::PreconditionViolated(format!(
                "{u}->{v} is not an edge of D_m"
            )))?;
        let t = cert
            .triples
            .iter()
            .find(|t| t.colours.iter().all(|c| !taken.contains(c)))
            .ok_or(ConnectivityError::CertificateExhausted { from: u, to: v })?;
        taken.extend(t.colours);
        out.vertices.extend([t.midpoint, v]);
        out.edges.extend([t.edge_in, t.edge_out]);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{rainbow_complete_digraph, random_proper_digraph};

    fn budget() -> SearchBudget {
        SearchBudget::default()
    }

    #[test]
    fn distances() {
        let d = rainbow_complete_digraph(3);
        assert_eq!(
            rainbow_distance(&d, 1, 1, 3, ColourMode::Total, &budget()),
            Ok(Some(0))
        );
        assert_eq!(
            rainbow_distance(&d, 0, 1, 3, ColourMode::Total, &budget()),
            Ok(Some(1))
        );
        let e = LabelledDigraph::new(vec![Some(0), Some(1)]);
        assert_eq!(
            rainbow_distance(&e, 0, 1, 3, ColourMode::Total, &budget()),
            Ok(None)
        );
    }

    #[test]
    fn radius_rounding() {
        assert_eq!(inverse_radius(1.0), 1);
        assert_eq!(inverse_radius(0.5), 2);
        assert_eq!(inverse_radius(0.3), 4);
        assert_eq!(inverse_radius(0.25), 4);
    }

    #[test]
    fn ball_of_isolated_vertex() {
        let d = LabelledDigraph::new(vec![Some(0), Some(1)]);
        let b = low_expansion_ball(&d, 0, 0.5, &budget()).unwrap();
        assert_eq!((b.t0, b.vertices.clone()), (0, vec![0]));
        assert!(b.growth_holds(2));
    }

    #[test]
    fn ball_on_random_digraph() {
        let d = random_proper_digraph(60, 5, 30, 7);
        for eps in [1.0, 0.5, 0.25] {
            let b = low_expansion_ball(&d, 0, eps, &budget()).unwrap();
            assert!(b.growth_holds(60));
        }
    }

    #[test]
    fn close_subgraph_on_complete_digraph() {
        let d = rainbow_complete_digraph(10);
        let c = close_high_degree_subgraph(&d, 0, 0.5, &budget()).unwrap();
        assert_eq!(c.vertices.len(), 10);
        assert_eq!(c.induced_min_degree, 9);
        assert!(c.bound_holds());
        assert!(matches!(
            close_high_degree_subgraph(&d, 0, 0.3, &budget()),
            Err(ConnectivityError::PreconditionViolated(_))
        ));
    }

    #[test]
    fn dm_basics() {
        let mut single = LabelledDigraph::new(vec![Some(0), Some(1)]);
        single.add_edge(0, 1, Some(2));
        assert!(build_dm(&single, 1, &budget())
            .unwrap()
            .digraph
            .edges()
            .is_empty());

        let d = rainbow_complete_digraph(5);
        let d1 = build_dm(&d, 1, &budget()).unwrap();
        assert_eq!(d1.digraph.edges().len(), 20);
        let d3 = build_dm(&d, 3, &budget()).unwrap();
        for cert in d3.certificates.values() {
            assert!(cert.validate(&d, 3));
        }
        assert_eq!(d3.digraph.edges().len(), 20);
        assert!(build_dm(&d, 4, &budget()).unwrap().digraph.edges().is_empty());
    }

    #[test]
    fn kd_sets() {
        let d = rainbow_complete_digraph(5);
        let s = find_kd_connected_set(&d, 3, 0.5, KdMode::Uncoloured, &budget()).unwrap();
        assert_eq!(s.vertices, vec![0, 1, 2, 3, 4]);
        assert!(s.verdict.holds && s.verdict.is_exhaustive());
        let s = find_kd_connected_set(&d, 2, 0.5, KdMode::Coloured(ColourMode::Total), &budget()).unwrap();
        assert_eq!(s.vertices.len(), 5);
        assert!(s.verdict.holds);

        let empty = LabelledDigraph::new(vec![Some(0), Some(1), Some(2)]);
        let s = find_kd_connected_set(&empty, 1, 0.5, KdMode::Uncoloured, &budget()).unwrap();
        assert_eq!(s.vertices, vec![0]);
        assert_eq!(s.verdict.mode, VerdictMode::Vacuous);
    }

    #[test]
    fn paths_through_anchors() {
        let d = rainbow_complete_digraph(5);
        let none = BTreeSet::new();
        let p = rainbow_path_through(&d, &[2], &none, 3, &budget()).unwrap();
        assert!(p.is_empty());
        let p = rainbow_path_through(&d, &[0, 3, 1], &none, 2, &budget()).unwrap();
        assert_eq!(p.vertices, vec![0, 3, 1]);
        assert!(d.is_rainbow_path(&p, ColourMode::Total, &none));
    }

    #[test]
    fn lifting() {
        let d = rainbow_complete_digraph(6);
        let dm = build_dm(&d, 3, &budget()).unwrap();
        let none = BTreeSet::new();
        let p = lift_path_through_dm(&d, &dm, &[0, 1], &none).unwrap();
        assert_eq!(p.len(), 2);
        assert!(d.is_rainbow_path(&p, ColourMode::Total, &none));
        let all: BTreeSet<usize> = dm.certificates[&(0, 1)]
            .triples
            .iter()
            .flat_map(|t| t.colours)
            .collect();
        assert_eq!(
            lift_path_through_dm(&d, &dm, &[0, 1], &all),
            Err(ConnectivityError::CertificateExhausted { from: 0, to: 1 })
        );
    }

    /// Every length-two rainbow path from `x` to `y`, enumerated directly from the edge list.
    fn length_two_paths(d: &LabelledDigraph, x: usize, y: usize) -> Vec<(usize, [usize; 3])> {
        let mut out = Vec::new();
        for a in d.edges().iter().filter(|a| a.from == x && a.to != y) {
            for b in d.edges().iter().filter(|b| b.from == a.to && b.to == y) {
                let cs = [
                    d.vertex_label(x).unwrap(),
                    a.label.unwrap(),
                    d.vertex_label(a.to).unwrap(),
                    b.label.unwrap(),
                    d.vertex_label(y).unwrap(),
                ];
                if cs.iter().collect::<BTreeSet<_>>().len() == 5 {
                    out.push((a.to, [cs[1], cs[2], cs[3]]));
                }
            }
        }
        out
    }

    #[test]
    fn dm_agrees_with_pairwise_enumeration() {
        let d = random_proper_digraph(20, 6, 25, 3);
        let dm = build_dm(&d, 2, &budget()).unwrap();
        let mut absent = 0;
        for x in 0..20 {
            for y in (0..20).filter(|&y| y != x) {
                let paths = length_two_paths(&d, x, y);
                let exists = paths.iter().enumerate().any(|(i, p)| {
                    paths[i + 1..]
                        .iter()
                        .any(|q| p.0 != q.0 && p.1.iter().all(|c| !q.1.contains(c)))
                });
                assert_eq!(dm.digraph.has_edge(x, y), exists, "{x}->{y}");
                absent += usize::from(!exists);
                if exists {
                    assert!(dm.certificates[&(x, y)].validate(&d, 2));
                }
            }
        }
        assert!(absent > 0);
    }

    #[test]
    fn middle_leg_takes_a_detour() {
        // 0 -> 1 is direct; 1 -> 2 has a direct edge whose colour is already used on the first
        // leg, so the second leg goes round through 3.
        let mut d = LabelledDigraph::new((0..4).map(Some).collect());
        d.add_edge(0, 1, Some(10));
        d.add_edge(1, 2, Some(10 + 1));
        d.add_edge(1, 3, Some(12));
        d.add_edge(3, 2, Some(13));
        let mut s = BTreeSet::new();
        let p = rainbow_path_through(&d, &[0, 1, 2], &s, 2, &budget()).unwrap();
        assert_eq!(p.vertices, vec![0, 1, 2]);
        s.insert(11);
        let p = rainbow_path_through(&d, &[0, 1, 2], &s, 2, &budget()).unwrap();
        assert_eq!(p.vertices, vec![0, 1, 3, 2]);
        assert!(p.len() <= 3 * 2);
        assert!(d.is_rainbow_path(&p, ColourMode::Total, &s));
        assert_eq!(
            rainbow_path_through(&d, &[0, 1, 2], &s, 1, &budget()),
            Err(ConnectivityError::SegmentNotFound {
                leg: 1,
                from: 1,
                to: 2
            })
        );
    }

    #[test]
    fn lifting_a_three_edge_path() {
        let d = rainbow_complete_digraph(12);
        let dm = build_dm(&d, 9, &budget()).unwrap();
        let s: BTreeSet<usize> = [dm.certificates[&(0, 1)].triples[0].colours[0]].into();
        let p = lift_path_through_dm(&d, &dm, &[0, 1, 2, 3], &s).unwrap();
        assert_eq!(p.len(), 6);
        assert_eq!(p.vertices[0], 0);
        assert_eq!(p.vertices[6], 3);
        assert!(d.is_rainbow_path(&p, ColourMode::Total, &s));
    }
}
