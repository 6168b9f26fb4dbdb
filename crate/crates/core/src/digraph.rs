//! Directed multigraphs with optional labels (colours) on vertices and edges, and bounded
//! rainbow-path search over them.
//!
//! Labels are plain `usize` values; [`STAR`] is reserved for the distinguished start vertex of a
//! switch digraph. Parallel edges are allowed and kept apart by edge id.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::budget::{Exhausted, Meter};

/// Label of the vertex standing for the missing colour.
pub const STAR: usize = usize::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DiEdge {
    pub from: usize,
    pub to: usize,
    pub label: Option<usize>,
}

/// Which labels must be pairwise distinct along a rainbow path and which labels a forbidden set
/// applies to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ColourMode {
    /// Edge labels only.
    Edge,
    /// Vertex labels only; forbidden labels apply to interior vertices.
    Vertex,
    /// Vertex and edge labels together; forbidden labels apply to edges and interior vertices.
    Total,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelledDigraph {
    vertex_labels: Vec<Option<usize>>,
    edges: Vec<DiEdge>,
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
}

/// A walk given by its vertex sequence and the ids of the edges between consecutive vertices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DiPath {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

impl DiPath {
    pub fn trivial(v: usize) -> Self {
        DiPath {
            vertices: vec![v],
            edges: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn start(&self) -> usize {
        self.vertices[0]
    }

    pub fn end(&self) -> usize {
        *self.vertices.last().expect("paths have a vertex")
    }
}

/// What the path visitor wants next.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Visit {
    /// Keep extending this path.
    Extend,
    /// Do not extend this path, but continue with siblings.
    Prune,
    /// Abort the whole search.
    Stop,
}

impl LabelledDigraph {
    pub fn new(vertex_labels: Vec<Option<usize>>) -> Self {
        let n = vertex_labels.len();
        LabelledDigraph {
            vertex_labels,
            edges: Vec::new(),
            out: vec![Vec::new(); n],
            inc: vec![Vec::new(); n],
        }
    }

    /// `n` vertices with no labels.
    pub fn unlabelled(n: usize) -> Self {
        Self::new(vec![None; n])
    }

    /// Adds an edge and returns its id. Out- and in-lists stay sorted by (neighbour, id).
    pub fn add_edge(&mut self, from: usize, to: usize, label: Option<usize>) -> usize {
        let id = self.edges.len();
        self.edges.push(DiEdge { from, to, label });
        let key = (to, id);
        let pos = self.out[from].partition_point(|&e| (self.edges[e].to, e) < key);
        self.out[from].insert(pos, id);
        let key = (from, id);
        let pos = self.inc[to].partition_point(|&e| (self.edges[e].from, e) < key);
        self.inc[to].insert(pos, id);
        id
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_labels.len()
    }

    pub fn vertex_label(&self, v: usize) -> Option<usize> {
        self.vertex_labels[v]
    }

    pub fn vertex_labels(&self) -> &[Option<usize>] {
        &self.vertex_labels
    }

    pub fn edges(&self) -> &[DiEdge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> DiEdge {
        self.edges[id]
    }

    /// Ids of edges leaving `v`, sorted by (head, id).
    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    /// Ids of edges entering `v`, sorted by (tail, id).
    pub fn in_edges(&self, v: usize) -> &[usize] {
        &self.inc[v]
    }

    pub fn out_neighbours(&self, v: usize) -> BTreeSet<usize> {
        self.out[v].iter().map(|&e| self.edges[e].to).collect()
    }

    pub fn in_neighbours(&self, v: usize) -> BTreeSet<usize> {
        self.inc[v].iter().map(|&e| self.edges[e].from).collect()
    }

    /// Number of distinct out-neighbours.
    pub fn out_degree(&self, v: usize) -> usize {
        self.out_neighbours(v).len()
    }

    pub fn min_out_degree(&self) -> usize {
        (0..self.vertex_count())
            .map(|v| self.out_degree(v))
            .min()
            .unwrap_or(0)
    }

    /// Number of distinct out-neighbours inside `set` (a membership mask).
    pub fn out_degree_into(&self, v: usize, set: &[bool]) -> usize {
        self.out_neighbours(v).into_iter().filter(|&u| set[u]).count()
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        self.out[from].iter().any(|&e| self.edges[e].to == to)
    }

    /// Induced subgraph on `keep` (in the given order). Returns the subgraph; vertex `i` of the
    /// result is `keep[i]`.
    pub fn induced(&self, keep: &[usize]) -> LabelledDigraph {
        let mut index = HashMap::new();
        for (i, &v) in keep.iter().enumerate() {
            index.insert(v, i);
        }
        let mut d = LabelledDigraph::new(keep.iter().map(|&v| self.vertex_labels[v]).collect());
        for e in &self.edges {
            if let (Some(&a), Some(&b)) = (index.get(&e.from), index.get(&e.to)) {
                d.add_edge(a, b, e.label);
            }
        }
        d
    }

    /// Checks that `path` is a walk in this digraph.
    pub fn is_walk(&self, path: &DiPath) -> bool {
        if path.vertices.is_empty() || path.vertices.len() != path.edges.len() + 1 {
            return false;
        }
        if path.vertices.iter().any(|&v| v >= self.vertex_count()) {
            return false;
        }
        path.edges.iter().enumerate().all(|(i, &e)| {
            e < self.edges.len()
                && self.edges[e].from == path.vertices[i]
                && self.edges[e].to == path.vertices[i + 1]
        })
    }

    /// Whether `path` is a path (no repeated vertex) that is rainbow under `mode` and internally
    /// avoids `forbidden`.
    pub fn is_rainbow_path(&self, path: &DiPath, mode: ColourMode, forbidden: &BTreeSet<usize>) -> bool {
        if !self.is_walk(path) {
            return false;
        }
        let distinct_vertices: BTreeSet<_> = path.vertices.iter().collect();
        if distinct_vertices.len() != path.vertices.len() {
            return false;
        }
        let mut seen = BTreeSet::new();
        let last = path.vertices.len() - 1;
        if mode != ColourMode::Edge {
            for (i, &v) in path.vertices.iter().enumerate() {
                if let Some(l) = self.vertex_labels[v] {
                    if !seen.insert(l) {
                        return false;
                    }
                    if i != 0 && i != last && forbidden.contains(&l) {
                        return false;
                    }
                }
            }
        }
        if mode != ColourMode::Vertex {
            for &e in &path.edges {
                if let Some(l) = self.edges[e].label {
                    if !seen.insert(l) || forbidden.contains(&l) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Depth-first enumeration of rainbow paths from `source` of length at most `max_len`.
    ///
    /// The visitor sees every path (including the trivial one) in lexicographic order of
    /// (vertex sequence, edge ids). Extending a path is only attempted when the visitor returns
    /// [`Visit::Extend`]. Each visited path costs one meter tick.
    pub fn for_each_rainbow_path<F>(
        &self,
        source: usize,
        max_len: usize,
        mode: ColourMode,
        forbidden: &BTreeSet<usize>,
        meter: &mut Meter,
        mut visit: F,
    ) -> Result<(), Exhausted>
    where
        F: FnMut(&DiPath) -> Visit,
    {
        let mut search = PathSearch::new(self, mode, forbidden);
        search.start(source);
        search.run(max_len, meter, &mut visit).map(|_| ())
    }

    /// Rainbow distances from `source`, `None` when above `cap` or unreachable.
    pub fn rainbow_distances(
        &self,
        source: usize,
        cap: usize,
        mode: ColourMode,
        meter: &mut Meter,
    ) -> Result<Vec<Option<usize>>, Exhausted> {
        let none = BTreeSet::new();
        (0..self.vertex_count())
            .map(|v| {
                Ok(self
                    .shortest_rainbow_path(source, v, cap, mode, &none, meter)?
                    .map(|p| p.len()))
            })
            .collect()
    }

    /// Shortest rainbow path from `u` to `v` of length at most `cap`, lexicographically first
    /// among the shortest.
    ///
    /// Iterative deepening from the uncoloured distance, pruning any partial path whose end is
    /// too far from `v` in the uncoloured sense to finish within the current depth.
    pub fn shortest_rainbow_path(
        &self,
        u: usize,
        v: usize,
        cap: usize,
        mode: ColourMode,
        forbidden: &BTreeSet<usize>,
        meter: &mut Meter,
    ) -> Result<Option<DiPath>, Exhausted> {
        let to_v = self.distances_to(v);
        let Some(lower) = to_v[u] else {
            return Ok(None);
        };
        for depth in lower..=cap {
            let mut found = None;
            self.for_each_rainbow_path(u, depth, mode, forbidden, meter, |p| {
                if p.end() == v && p.len() == depth {
                    found = Some(p.clone());
                    return Visit::Stop;
                }
                match to_v[p.end()] {
                    Some(rest) if p.end() != v && p.len() + rest <= depth => Visit::Extend,
                    _ => Visit::Prune,
                }
            })?;
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }

    /// Uncoloured distances from every vertex to `target`.
    fn distances_to(&self, target: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count()];
        dist[target] = Some(0);
        let mut queue = VecDeque::from([target]);
        while let Some(x) = queue.pop_front() {
            let next = dist[x].map(|d| d + 1);
            for &e in &self.inc[x] {
                let w = self.edges[e].from;
                if dist[w].is_none() {
                    dist[w] = next;
                    queue.push_back(w);
                }
            }
        }
        dist
    }
}

/// Incremental rainbow path state with dense label bookkeeping.
struct PathSearch<'d> {
    d: &'d LabelledDigraph,
    mode: ColourMode,
    vertex_label_id: Vec<Option<usize>>,
    edge_label_id: Vec<Option<usize>>,
    used: Vec<bool>,
    forbidden: Vec<bool>,
    on_path: Vec<bool>,
    path: DiPath,
}

impl<'d> PathSearch<'d> {
    fn new(d: &'d LabelledDigraph, mode: ColourMode, forbidden: &BTreeSet<usize>) -> Self {
        let mut ids: HashMap<usize, usize> = HashMap::new();
        let mut id_of = |l: Option<usize>| {
            l.map(|l| {
                let next = ids.len();
                *ids.entry(l).or_insert(next)
            })
        };
        let vertex_label_id: Vec<_> = d.vertex_labels.iter().map(|&l| id_of(l)).collect();
        let edge_label_id: Vec<_> = d.edges.iter().map(|e| id_of(e.label)).collect();
        let mut forbidden_mask = vec![false; ids.len()];
        for l in forbidden {
            if let Some(&i) = ids.get(l) {
                forbidden_mask[i] = true;
            }
        }
        PathSearch {
            d,
            mode,
            vertex_label_id,
            edge_label_id,
            used: vec![false; ids.len()],
            forbidden: forbidden_mask,
            on_path: vec![false; d.vertex_count()],
            path: DiPath::trivial(0),
        }
    }

    fn uses_vertices(&self) -> bool {
        self.mode != ColourMode::Edge
    }

    fn uses_edges(&self) -> bool {
        self.mode != ColourMode::Vertex
    }

    fn start(&mut self, source: usize) {
        self.path = DiPath::trivial(source);
        self.on_path[source] = true;
        if self.uses_vertices() {
            if let Some(l) = self.vertex_label_id[source] {
                self.used[l] = true;
            }
        }
    }

    /// Returns `Ok(false)` when the visitor asked to stop.
    fn run<F>(&mut self, max_len: usize, meter: &mut Meter, visit: &mut F) -> Result<bool, Exhausted>
    where
        F: FnMut(&DiPath) -> Visit,
    {
        meter.tick()?;
        match visit(&self.path) {
            Visit::Stop => return Ok(false),
            Visit::Prune => return Ok(true),
            Visit::Extend => {}
        }
        if self.path.len() >= max_len {
            return Ok(true);
        }
        let last = self.path.end();
        // the current end becomes interior once we extend past it
        if self.uses_vertices() && !self.path.is_empty() {
            if let Some(l) = self.vertex_label_id[last] {
                if self.forbidden[l] {
                    return Ok(true);
                }
            }
        }
        let d = self.d;
        for &e in d.out_edges(last) {
            let w = d.edges[e].to;
            if self.on_path[w] {
                continue;
            }
            let el = if self.uses_edges() {
                self.edge_label_id[e]
            } else {
                None
            };
            if let Some(l) = el {
                if self.used[l] || self.forbidden[l] {
                    continue;
                }
            }
            let wl = if self.uses_vertices() {
                self.vertex_label_id[w]
            } else {
                None
            };
            if let Some(l) = wl {
                if self.used[l] || Some(l) == el {
                    continue;
                }
            }
            if let Some(l) = el {
                self.used[l] = true;
            }
            if let Some(l) = wl {
                self.used[l] = true;
            }
            self.on_path[w] = true;
            self.path.vertices.push(w);
            self.path.edges.push(e);
            let go_on = self.run(max_len, meter, visit);
            self.path.vertices.pop();
            self.path.edges.pop();
            self.on_path[w] = false;
            if let Some(l) = el {
                self.used[l] = false;
            }
            if let Some(l) = wl {
                self.used[l] = false;
            }
            if !go_on? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
