//! Random graph models for the lab.
//!
//! Every sampled graph has all vertices reachable from the start vertex,
//! at least one end vertex, a start vertex that is not an end, and every
//! vertex able to reach some end vertex.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeId, FsmGraph, VertexId};
use crate::path::Path;
use crate::requirements::characterization_set;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CycleMode {
    /// Cycles may or may not occur.
    Allowed,
    /// Only acyclic graphs.
    Forbidden,
    /// At least one cycle.
    Required,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MealySpec {
    pub min_inputs: usize,
    pub max_inputs: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RandomGraphSpec {
    pub min_vertices: usize,
    pub max_vertices: usize,
    pub min_out_degree: usize,
    pub max_out_degree: usize,
    pub parallel_edge_prob: f64,
    pub cycles: CycleMode,
    /// Chance that a vertex other than the start becomes an extra end vertex.
    pub extra_end_prob: f64,
    /// End vertices are exactly the sinks. Needs `CycleMode::Forbidden`;
    /// `extra_end_prob` is ignored.
    pub sink_ends: bool,
    /// Attach deterministic Mealy labels; only minimal machines are kept.
    pub mealy: Option<MealySpec>,
    /// Rejection-sampling budget.
    pub max_attempts: usize,
}

impl Default for RandomGraphSpec {
    fn default() -> Self {
        RandomGraphSpec {
            min_vertices: 4,
            max_vertices: 8,
            min_out_degree: 1,
            max_out_degree: 3,
            parallel_edge_prob: 0.15,
            cycles: CycleMode::Allowed,
            extra_end_prob: 0.1,
            sink_ends: false,
            mealy: None,
            max_attempts: 2_000,
        }
    }
}

impl RandomGraphSpec {
    pub fn validate(&self) -> Result<()> {
        if self.min_vertices < 2 || self.min_vertices > self.max_vertices || self.max_vertices > 26 {
            return Err(Error::Config("vertex range must lie within 2..=26".into()));
        }
        if self.min_out_degree > self.max_out_degree || self.max_out_degree == 0 {
            return Err(Error::Config("out-degree range is empty".into()));
        }
        if !(0.0..=1.0).contains(&self.parallel_edge_prob) || !(0.0..=1.0).contains(&self.extra_end_prob) {
            return Err(Error::Config("probabilities must lie in [0, 1]".into()));
        }
        if self.sink_ends && self.cycles != CycleMode::Forbidden {
            return Err(Error::Config("sink-only end vertices need acyclic graphs".into()));
        }
        if let Some(m) = &self.mealy {
            if m.min_inputs == 0 || m.min_inputs > m.max_inputs || m.max_inputs > 3 {
                return Err(Error::Config("input alphabet size must lie within 1..=3".into()));
            }
        }
        Ok(())
    }

    /// Draws one graph, retrying until every constraint holds.
    pub fn sample<R: Rng>(&self, rng: &mut R) -> Result<FsmGraph> {
        self.validate()?;
        for _ in 0..self.max_attempts {
            if let Some(g) = self.try_sample(rng) {
                return Ok(g);
            }
        }
        Err(Error::Config(format!(
            "no graph satisfying the spec after {} attempts",
            self.max_attempts
        )))
    }

    fn try_sample<R: Rng>(&self, rng: &mut R) -> Option<FsmGraph> {
        let n = rng.gen_range(self.min_vertices..=self.max_vertices);
        let dag = self.cycles == CycleMode::Forbidden;
        let inputs: Vec<&str> = match &self.mealy {
            Some(m) => ["x", "y", "z"][..rng.gen_range(m.min_inputs..=m.max_inputs)].to_vec(),
            None => Vec::new(),
        };
        let max_out = if inputs.is_empty() {
            self.max_out_degree
        } else {
            self.max_out_degree.min(inputs.len())
        };

        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        // Spanning tree from vertex 0 keeps everything reachable. Vertex
        // i - 1 has no out-edges yet when i is attached, so a parent with
        // spare out-degree always exists.
        for i in 1..n {
            let parents: Vec<usize> = (0..i).filter(|&j| adj[j].len() < max_out).collect();
            let p = *parents.choose(rng)?;
            adj[p].push(i);
        }
        for (v, out) in adj.iter_mut().enumerate() {
            let want = rng.gen_range(self.min_out_degree..=max_out);
            let mut guard = 0;
            while out.len() < want && guard < 20 {
                guard += 1;
                let t = if !out.is_empty() && rng.gen_bool(self.parallel_edge_prob) {
                    *out.choose(rng)?
                } else if dag {
                    if v + 1 >= n {
                        break;
                    }
                    rng.gen_range(v + 1..n)
                } else {
                    rng.gen_range(0..n)
                };
                out.push(t);
            }
        }
        if dag && self.mealy.is_some() {
            // Two sinks are indistinguishable, so Mealy DAGs get exactly one.
            for (v, out) in adj.iter_mut().enumerate().take(n - 1) {
                if out.is_empty() {
                    out.push(rng.gen_range(v + 1..n));
                }
            }
        }

        let extra = if self.sink_ends { 0.0 } else { self.extra_end_prob };
        let ends = choose_ends(&adj, rng, extra)?;
        let mut edges = Vec::new();
        for (v, out) in adj.iter().enumerate() {
            let mut labels: Vec<&str> = inputs.clone();
            labels.shuffle(rng);
            for (k, &t) in out.iter().enumerate() {
                let id = format!("e{:03}", edges.len());
                let mut e = Edge::new(id, vname(v), vname(t));
                if !inputs.is_empty() {
                    let out_sym = if rng.gen_bool(0.5) { "0" } else { "1" };
                    e = e.with_label(labels[k], out_sym);
                }
                edges.push(e);
            }
        }
        let names: Vec<String> = (0..n).map(vname).collect();
        let end_names: Vec<String> = ends.into_iter().map(vname).collect();
        let g = FsmGraph::new(names, &vname(0), end_names, edges).ok()?;

        match self.cycles {
            CycleMode::Required if !g.has_cycle() => return None,
            CycleMode::Forbidden if g.has_cycle() => return None,
            _ => {}
        }
        if self.mealy.is_some() && characterization_set(&g).is_err() {
            return None;
        }
        Some(g)
    }

    /// Whether `g` belongs to the graph family this spec describes, sizes
    /// aside: cycle mode, Mealy labels and sink-only ends.
    pub fn admits(&self, g: &FsmGraph) -> bool {
        let cycles_ok = match self.cycles {
            CycleMode::Allowed => true,
            CycleMode::Forbidden => !g.has_cycle(),
            CycleMode::Required => g.has_cycle(),
        };
        let sinks_ok = !self.sink_ends || g.vertices().all(|v| g.is_end(v) == g.outgoing(v).is_empty());
        cycles_ok && sinks_ok && (self.mealy.is_none() || g.is_mealy())
    }
}

fn vname(i: usize) -> String {
    format!("v{i:02}")
}

/// One non-start vertex of every closed strongly connected component
/// becomes an end (sinks included), so every vertex reaches an end.
fn choose_ends<R: Rng>(adj: &[Vec<usize>], rng: &mut R, extra: f64) -> Option<Vec<usize>> {
    let n = adj.len();
    let reach: Vec<Vec<bool>> = (0..n)
        .map(|s| {
            let mut seen = vec![false; n];
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            seen
        })
        .collect();
    let mut is_end = vec![false; n];
    let mut done = vec![false; n];
    for v in 0..n {
        if done[v] {
            continue;
        }
        let comp: Vec<usize> = (0..n).filter(|&w| reach[v][w] && reach[w][v]).collect();
        for &w in &comp {
            done[w] = true;
        }
        let closed = comp.iter().all(|&w| adj[w].iter().all(|t| comp.contains(t)));
        if closed {
            let options: Vec<usize> = comp.iter().copied().filter(|&w| w != 0).collect();
            is_end[*options.choose(rng)?] = true;
        }
    }
    for end in is_end.iter_mut().skip(1) {
        if rng.gen_bool(extra) {
            *end = true;
        }
    }
    Some((0..n).filter(|&v| is_end[v]).collect())
}

/// A random path from the start vertex to an end vertex. At an end vertex
/// the walk stops with probability `stop_prob`; after `max_len` edges it
/// takes the shortest way to an end.
pub fn random_complete_path<R: Rng>(g: &FsmGraph, rng: &mut R, stop_prob: f64, max_len: usize) -> Option<Path> {
    let mut edges: Vec<EdgeId> = Vec::new();
    let mut v: VertexId = g.start();
    loop {
        let out = g.outgoing(v);
        if g.is_end(v) && !edges.is_empty() && (out.is_empty() || rng.gen_bool(stop_prob)) {
            break;
        }
        if edges.len() >= max_len || out.is_empty() {
            edges.extend(g.shortest_path_to(v, g.end_mask())?);
            break;
        }
        let e = *out.choose(rng)?;
        edges.push(e);
        v = g.target(e);
    }
    if edges.is_empty() {
        return None;
    }
    Some(Path::from_edges(edges))
}
