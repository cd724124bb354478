//! Paths, test suites and the predicates every criterion is phrased in.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, FsmGraph, VertexId};

/// A non-empty edge sequence. Validity (adjacency) is relative to a graph
/// and is checked when a path is built from names via [`Path::parse`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path(Vec<EdgeId>);

impl Path {
    /// Wraps an edge sequence without checking adjacency.
    ///
    /// Panics on an empty sequence.
    pub fn from_edges(edges: Vec<EdgeId>) -> Self {
        assert!(!edges.is_empty(), "paths have at least one edge");
        Path(edges)
    }

    /// Resolves edge names and checks adjacency in `g`.
    pub fn parse<S: AsRef<str>>(g: &FsmGraph, names: &[S]) -> Result<Self> {
        let edges = g.edge_ids_by_name(names)?;
        if edges.is_empty() {
            return Err(Error::InvalidPath("empty path".into()));
        }
        if let Some(w) = edges.windows(2).find(|w| g.target(w[0]) != g.source(w[1])) {
            return Err(Error::InvalidPath(format!(
                "edge `{}` does not continue from `{}`",
                g.edge_name(w[1]),
                g.edge_name(w[0])
            )));
        }
        Ok(Path(edges))
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first_vertex(&self, g: &FsmGraph) -> VertexId {
        g.source(self.0[0])
    }

    pub fn last_vertex(&self, g: &FsmGraph) -> VertexId {
        g.target(*self.0.last().expect("non-empty"))
    }

    /// Vertex trace: `len() + 1` vertices.
    pub fn vertices(&self, g: &FsmGraph) -> Vec<VertexId> {
        let mut out = Vec::with_capacity(self.0.len() + 1);
        out.push(g.source(self.0[0]));
        out.extend(self.0.iter().map(|&e| g.target(e)));
        out
    }

    pub fn is_cycle(&self, g: &FsmGraph) -> bool {
        self.first_vertex(g) == self.last_vertex(g)
    }

    /// Starts at the start vertex and ends in an end vertex.
    pub fn is_complete(&self, g: &FsmGraph) -> bool {
        self.first_vertex(g) == g.start() && g.is_end(self.last_vertex(g))
    }

    pub fn names(&self, g: &FsmGraph) -> Vec<String> {
        g.edge_names(&self.0)
    }

    pub fn display(&self, g: &FsmGraph) -> String {
        self.names(g).join("-")
    }

    /// Edge traversal counts, indexed by edge id.
    pub fn edge_counts(&self, edge_count: usize) -> Vec<i64> {
        let mut v = vec![0; edge_count];
        for e in &self.0 {
            v[e.index()] += 1;
        }
        v
    }

    pub fn concat(&self, other: &Path) -> Path {
        let mut edges = self.0.clone();
        edges.extend_from_slice(&other.0);
        Path(edges)
    }
}

/// True iff `names` resolves to an adjacency-respecting edge sequence.
/// Unknown ids are an error rather than `false`.
pub fn is_valid_path<S: AsRef<str>>(g: &FsmGraph, names: &[S]) -> Result<bool> {
    match Path::parse(g, names) {
        Ok(_) => Ok(true),
        Err(Error::InvalidPath(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

/// No repeated vertex, except that the first may equal the last.
pub fn is_simple(g: &FsmGraph, p: &Path) -> bool {
    let vs = p.vertices(g);
    let (body, last) = vs.split_at(vs.len() - 1);
    let mut seen = vec![false; g.vertex_count()];
    for v in body {
        if std::mem::replace(&mut seen[v.index()], true) {
            return false;
        }
    }
    !seen[last[0].index()] || last[0] == vs[0]
}

/// Simple, and not a proper contiguous subpath of any other simple path.
///
/// A simple path inside a longer simple path always extends by one edge
/// at some end to another simple path, so only one-edge extensions need
/// checking.
pub fn is_prime(g: &FsmGraph, p: &Path) -> bool {
    is_simple(g, p) && !extends_simply(g, p)
}

pub(crate) fn extends_simply(g: &FsmGraph, p: &Path) -> bool {
    let vs = p.vertices(g);
    let first = vs[0];
    let last = vs[vs.len() - 1];
    if first == last {
        return false;
    }
    let mut on_path = vec![false; g.vertex_count()];
    for v in &vs {
        on_path[v.index()] = true;
    }
    let back = g
        .outgoing(last)
        .iter()
        .any(|&e| !on_path[g.target(e).index()] || g.target(e) == first);
    let front = g
        .incoming(first)
        .iter()
        .any(|&e| !on_path[g.source(e).index()] || g.source(e) == last);
    back || front
}

/// `r` occurs contiguously inside `t`.
pub fn contains_subpath(t: &Path, r: &Path) -> bool {
    contains_slice(t.edges(), r.edges())
}

pub(crate) fn contains_slice(hay: &[EdgeId], needle: &[EdgeId]) -> bool {
    needle.len() <= hay.len() && hay.windows(needle.len()).any(|w| w == needle)
}

/// A set of test paths. Order and duplicates are kept as given;
/// [`TestSuite::canonical`] sorts and deduplicates.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TestSuite {
    pub paths: Vec<Path>,
}

#[derive(Debug, Serialize, Deserialize)]
struct SuiteDoc {
    paths: Vec<Vec<String>>,
}

impl TestSuite {
    pub fn new(paths: Vec<Path>) -> Self {
        TestSuite { paths }
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn canonical(&self) -> TestSuite {
        let set: BTreeSet<Path> = self.paths.iter().cloned().collect();
        TestSuite {
            paths: set.into_iter().collect(),
        }
    }

    pub fn from_names<S: AsRef<str>>(g: &FsmGraph, paths: &[Vec<S>]) -> Result<Self> {
        let paths = paths.iter().map(|p| Path::parse(g, p)).collect::<Result<Vec<_>>>()?;
        Ok(TestSuite { paths })
    }

    pub fn parse_json(g: &FsmGraph, text: &str) -> Result<Self> {
        let doc: SuiteDoc = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        Self::from_names(g, &doc.paths)
    }

    pub fn to_value(&self, g: &FsmGraph) -> serde_json::Value {
        let canon = self.canonical();
        serde_json::json!({ "paths": canon.paths.iter().map(|p| p.names(g)).collect::<Vec<_>>() })
    }

    /// Canonical Suite JSON: sorted and deduplicated.
    pub fn to_json(&self, g: &FsmGraph) -> String {
        self.to_value(g).to_string()
    }
}
