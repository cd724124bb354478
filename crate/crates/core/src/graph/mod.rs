//! The directed-graph FSM model.
//!
//! A model is a directed multigraph with a start vertex and a (possibly
//! empty) set of end vertices. Vertices and edges are addressed by compact
//! indices ([`VertexId`], [`EdgeId`]) assigned in lexicographic order of
//! their string names, so index order doubles as the canonical order used
//! everywhere for tie-breaking and output.

mod dot;
mod json;

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};

pub use dot::parse_graph_dot;
pub use json::{graph_to_json, parse_graph_json, parse_graph_value, GraphDoc};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn from_index(i: usize) -> Self {
        VertexId(i as u32)
    }
}

impl EdgeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn from_index(i: usize) -> Self {
        EdgeId(i as u32)
    }
}

/// Mealy stimulus/response pair carried by a transition.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MealyLabel {
    pub input: String,
    pub output: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub source: String,
    pub target: String,
    pub label: Option<MealyLabel>,
}

impl Edge {
    pub fn new(id: impl Into<String>, source: impl Into<String>, target: impl Into<String>) -> Self {
        Edge {
            id: id.into(),
            source: source.into(),
            target: target.into(),
            label: None,
        }
    }

    pub fn with_label(mut self, input: impl Into<String>, output: impl Into<String>) -> Self {
        self.label = Some(MealyLabel {
            input: input.into(),
            output: output.into(),
        });
        self
    }
}

/// A validated, immutable FSM graph.
#[derive(Debug, Clone)]
pub struct FsmGraph {
    vertex_names: Vec<String>,
    edges: Vec<Edge>,
    start: VertexId,
    ends: Vec<VertexId>,
    is_end: Vec<bool>,
    source: Vec<VertexId>,
    target: Vec<VertexId>,
    outgoing: Vec<Vec<EdgeId>>,
    incoming: Vec<Vec<EdgeId>>,
    vertex_index: HashMap<String, VertexId>,
    edge_index: HashMap<String, EdgeId>,
}

impl PartialEq for FsmGraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_names == other.vertex_names
            && self.edges == other.edges
            && self.start == other.start
            && self.ends == other.ends
    }
}

impl Eq for FsmGraph {}

impl FsmGraph {
    /// Builds and validates a graph. Vertex, end and edge lists may come in
    /// any order; they are stored canonically sorted.
    pub fn new<V, W, S, T>(vertices: V, start: &str, ends: W, edges: Vec<Edge>) -> Result<Self>
    where
        V: IntoIterator<Item = S>,
        W: IntoIterator<Item = T>,
        S: Into<String>,
        T: Into<String>,
    {
        let mut vertex_names: Vec<String> = vertices.into_iter().map(Into::into).collect();
        if vertex_names.is_empty() {
            return Err(Error::Model("vertex set is empty".into()));
        }
        vertex_names.sort();
        if let Some(w) = vertex_names.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Model(format!("duplicate vertex `{}`", w[0])));
        }
        let vertex_index: HashMap<String, VertexId> = vertex_names
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), VertexId(i as u32)))
            .collect();
        let lookup = |name: &str, what: &str| {
            vertex_index
                .get(name)
                .copied()
                .ok_or_else(|| Error::Model(format!("{what} `{name}` is not a vertex")))
        };

        let start_id = lookup(start, "start vertex")?;
        let mut end_ids = Vec::new();
        for e in ends {
            end_ids.push(lookup(&e.into(), "end vertex")?);
        }
        end_ids.sort();
        end_ids.dedup();

        let mut edges = edges;
        edges.sort_by(|a, b| a.id.cmp(&b.id));
        if let Some(w) = edges.windows(2).find(|w| w[0].id == w[1].id) {
            return Err(Error::Model(format!("duplicate edge id `{}`", w[0].id)));
        }

        let n = vertex_names.len();
        let mut source = Vec::with_capacity(edges.len());
        let mut target = Vec::with_capacity(edges.len());
        let mut outgoing = vec![Vec::new(); n];
        let mut incoming = vec![Vec::new(); n];
        let mut edge_index = HashMap::with_capacity(edges.len());
        for (i, e) in edges.iter().enumerate() {
            let s = lookup(&e.source, &format!("source of edge `{}`", e.id))?;
            let t = lookup(&e.target, &format!("target of edge `{}`", e.id))?;
            let id = EdgeId(i as u32);
            source.push(s);
            target.push(t);
            outgoing[s.index()].push(id);
            incoming[t.index()].push(id);
            edge_index.insert(e.id.clone(), id);
        }

        // Deterministic on labelled transitions.
        for (v, outs) in outgoing.iter().enumerate() {
            let mut seen = BTreeSet::new();
            for e in outs {
                if let Some(label) = &edges[e.index()].label {
                    if !seen.insert(label.input.as_str()) {
                        return Err(Error::Determinism {
                            vertex: vertex_names[v].clone(),
                            input: label.input.clone(),
                        });
                    }
                }
            }
        }

        let mut is_end = vec![false; n];
        for v in &end_ids {
            is_end[v.index()] = true;
        }

        Ok(FsmGraph {
            vertex_names,
            edges,
            start: start_id,
            ends: end_ids,
            is_end,
            source,
            target,
            outgoing,
            incoming,
            vertex_index,
            edge_index,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertex_names.len() as u32).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len() as u32).map(EdgeId)
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e.index()]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v.index()]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edges[e.index()].id
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.vertex_index.get(name).copied()
    }

    pub fn edge_id(&self, name: &str) -> Option<EdgeId> {
        self.edge_index.get(name).copied()
    }

    pub fn source(&self, e: EdgeId) -> VertexId {
        self.source[e.index()]
    }

    pub fn target(&self, e: EdgeId) -> VertexId {
        self.target[e.index()]
    }

    /// Outgoing edges of `v` in canonical (edge id) order.
    pub fn outgoing(&self, v: VertexId) -> &[EdgeId] {
        &self.outgoing[v.index()]
    }

    pub fn incoming(&self, v: VertexId) -> &[EdgeId] {
        &self.incoming[v.index()]
    }

    pub fn start(&self) -> VertexId {
        self.start
    }

    pub fn ends(&self) -> &[VertexId] {
        &self.ends
    }

    pub fn is_end(&self, v: VertexId) -> bool {
        self.is_end[v.index()]
    }

    pub fn end_mask(&self) -> &[bool] {
        &self.is_end
    }

    /// True when every edge carries a Mealy label.
    pub fn is_mealy(&self) -> bool {
        !self.edges.is_empty() && self.edges.iter().all(|e| e.label.is_some())
    }

    pub fn input(&self, e: EdgeId) -> Option<&str> {
        self.edges[e.index()].label.as_ref().map(|l| l.input.as_str())
    }

    pub fn output(&self, e: EdgeId) -> Option<&str> {
        self.edges[e.index()].label.as_ref().map(|l| l.output.as_str())
    }

    /// The transition taken from `v` on `input`, if any.
    pub fn step(&self, v: VertexId, input: &str) -> Option<EdgeId> {
        self.outgoing(v).iter().copied().find(|&e| self.input(e) == Some(input))
    }

    /// Sorted, deduplicated input alphabet.
    pub fn input_alphabet(&self) -> Vec<String> {
        let set: BTreeSet<&str> = self.edge_ids().filter_map(|e| self.input(e)).collect();
        set.into_iter().map(str::to_owned).collect()
    }

    /// Vertices reachable from the start vertex (start included).
    pub fn reachable_vertices(&self) -> BTreeSet<VertexId> {
        self.reachable_mask()
            .iter()
            .enumerate()
            .filter(|(_, &r)| r)
            .map(|(i, _)| VertexId(i as u32))
            .collect()
    }

    pub fn reachable_mask(&self) -> Vec<bool> {
        self.forward_closure(&[self.start])
    }

    /// Vertices from which some end vertex is reachable.
    pub fn coreachable_mask(&self) -> Vec<bool> {
        let mut seen = vec![false; self.vertex_count()];
        let mut queue: VecDeque<VertexId> = self.ends.iter().copied().collect();
        for v in &self.ends {
            seen[v.index()] = true;
        }
        while let Some(v) = queue.pop_front() {
            for &e in self.incoming(v) {
                let u = self.source(e);
                if !seen[u.index()] {
                    seen[u.index()] = true;
                    queue.push_back(u);
                }
            }
        }
        seen
    }

    fn forward_closure(&self, roots: &[VertexId]) -> Vec<bool> {
        let mut seen = vec![false; self.vertex_count()];
        let mut queue: VecDeque<VertexId> = roots.iter().copied().collect();
        for v in roots {
            seen[v.index()] = true;
        }
        while let Some(v) = queue.pop_front() {
            for &e in self.outgoing(v) {
                let w = self.target(e);
                if !seen[w.index()] {
                    seen[w.index()] = true;
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// Non-fatal observations about the model.
    pub fn warnings(&self) -> Vec<String> {
        let reach = self.reachable_mask();
        self.vertices()
            .filter(|v| !reach[v.index()])
            .map(|v| format!("vertex `{}` is unreachable from the start vertex", self.vertex_name(v)))
            .collect()
    }

    pub fn has_cycle(&self) -> bool {
        // Kahn's algorithm: a cycle exists iff some vertex never reaches in-degree 0.
        let mut indeg: Vec<usize> = self.incoming.iter().map(Vec::len).collect();
        let mut queue: VecDeque<usize> = (0..indeg.len()).filter(|&v| indeg[v] == 0).collect();
        let mut removed = 0;
        while let Some(v) = queue.pop_front() {
            removed += 1;
            for &e in &self.outgoing[v] {
                let w = self.target(e).index();
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push_back(w);
                }
            }
        }
        removed != self.vertex_count()
    }

    /// Shortest edge path from `from` to any vertex flagged in `targets`.
    /// Among shortest paths the lexicographically smallest edge sequence wins.
    /// Returns an empty path when `from` is itself a target.
    pub fn shortest_path_to(&self, from: VertexId, targets: &[bool]) -> Option<Vec<EdgeId>> {
        let dist = self.distance_to(targets);
        let mut d = dist[from.index()]?;
        let mut cur = from;
        let mut path = Vec::with_capacity(d);
        while d > 0 {
            let e = self
                .outgoing(cur)
                .iter()
                .copied()
                .find(|&e| dist[self.target(e).index()] == Some(d - 1))?;
            path.push(e);
            cur = self.target(e);
            d -= 1;
        }
        Some(path)
    }

    /// Shortest path between two vertices (see [`Self::shortest_path_to`]).
    pub fn shortest_path(&self, from: VertexId, to: VertexId) -> Option<Vec<EdgeId>> {
        let mut mask = vec![false; self.vertex_count()];
        mask[to.index()] = true;
        self.shortest_path_to(from, &mask)
    }

    /// Edge distance from every vertex to the nearest flagged vertex.
    pub fn distance_to(&self, targets: &[bool]) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count()];
        let mut queue = VecDeque::new();
        for (i, &t) in targets.iter().enumerate() {
            if t {
                dist[i] = Some(0);
                queue.push_back(VertexId(i as u32));
            }
        }
        while let Some(v) = queue.pop_front() {
            let d = dist[v.index()].unwrap_or(0);
            for &e in self.incoming(v) {
                let u = self.source(e);
                if dist[u.index()].is_none() {
                    dist[u.index()] = Some(d + 1);
                    queue.push_back(u);
                }
            }
        }
        dist
    }

    /// Subgraph induced by `keep`; the start vertex must be kept.
    pub fn induced_subgraph(&self, keep: &BTreeSet<VertexId>) -> Result<FsmGraph> {
        let names: Vec<&str> = keep.iter().map(|&v| self.vertex_name(v)).collect();
        let ends: Vec<&str> = self
            .ends
            .iter()
            .filter(|v| keep.contains(v))
            .map(|&v| self.vertex_name(v))
            .collect();
        let edges = self
            .edge_ids()
            .filter(|&e| keep.contains(&self.source(e)) && keep.contains(&self.target(e)))
            .map(|e| self.edge(e).clone())
            .collect();
        FsmGraph::new(names, self.vertex_name(self.start), ends, edges)
    }

    /// Resolves a list of edge names into ids.
    pub fn edge_ids_by_name<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<EdgeId>> {
        names
            .iter()
            .map(|n| {
                let n = n.as_ref();
                self.edge_id(n).ok_or_else(|| Error::UnknownEdge(n.to_owned()))
            })
            .collect()
    }

    pub fn edge_names(&self, edges: &[EdgeId]) -> Vec<String> {
        edges.iter().map(|&e| self.edge_name(e).to_owned()).collect()
    }
}
