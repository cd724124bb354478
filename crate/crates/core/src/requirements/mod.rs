//! Test requirements per criterion.
//!
//! A [`RequirementSet`] lists the obligations (vertices, edges, paths or
//! input sequences) a suite has to cover. Items are unique and sorted in
//! canonical order, so output is stable across runs.

mod basis;
mod boundary;
mod paths;
mod prime;
mod structural;
mod wmethod;

use serde_json::{json, Map, Value};

use crate::criterion::Criterion;
use crate::error::Result;
use crate::graph::{EdgeId, FsmGraph, VertexId};
use crate::path::Path;

pub use basis::{basis_paths, cyclomatic_number};
pub use boundary::{boundary_interior_classes, class_representative, count_elementary_cycles};
pub use paths::{all_path_requirements, specified_path_requirements};
pub use prime::{prime_paths, prime_paths_with_cap, round_trip_requirements, simple_paths, RoundTripMode};
pub use structural::{
    branch_requirements, edge_pair_requirements, edge_requirements, n_switch_requirements, node_requirements,
};
pub use wmethod::{
    characterization_set, run_inputs, testing_tree, w_method_test_set, Observation, TestingTree, TreeNode,
};

/// Caps that turn exponential enumerations into `Error::Resource`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Simple paths explored while enumerating prime paths.
    pub max_simple_paths: usize,
    /// Walks produced for N-switch and edge-pair requirements, and walks
    /// explored while enumerating boundary-interior classes.
    pub max_walks: usize,
    /// Complete paths produced for all-path and boundary-interior requirements.
    pub max_paths: usize,
    /// Elementary cycles tolerated by boundary-interior requirements.
    pub max_cycles: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_simple_paths: 100_000,
            max_walks: 2_000_000,
            max_paths: 200_000,
            max_cycles: 10_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RequirementKind {
    Vertex,
    Edge,
    Path,
    Basis,
    WmcSequences,
}

impl RequirementKind {
    pub fn as_str(self) -> &'static str {
        match self {
            RequirementKind::Vertex => "vertex",
            RequirementKind::Edge => "edge",
            RequirementKind::Path => "path",
            RequirementKind::Basis => "basis",
            RequirementKind::WmcSequences => "wmc-sequences",
        }
    }
}

/// An input sequence `p·w` of the W-method together with the edge walk it
/// drives from the start vertex. When some input has no transition the walk
/// stops there and `blocked` is set.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InputSequence {
    pub inputs: Vec<String>,
    pub walk: Vec<EdgeId>,
    pub blocked: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Requirement {
    Vertex(VertexId),
    Edge(EdgeId),
    Path(Path),
    Sequence(InputSequence),
}

impl Requirement {
    pub fn as_path(&self) -> Option<&Path> {
        match self {
            Requirement::Path(p) => Some(p),
            _ => None,
        }
    }

    pub fn to_value(&self, g: &FsmGraph) -> Value {
        match self {
            Requirement::Vertex(v) => json!(g.vertex_name(*v)),
            Requirement::Edge(e) => json!(g.edge_name(*e)),
            Requirement::Path(p) => json!(p.names(g)),
            Requirement::Sequence(s) => json!(s.inputs),
        }
    }

    pub fn display(&self, g: &FsmGraph) -> String {
        match self {
            Requirement::Vertex(v) => g.vertex_name(*v).to_owned(),
            Requirement::Edge(e) => g.edge_name(*e).to_owned(),
            Requirement::Path(p) => p.display(g),
            Requirement::Sequence(s) => s.inputs.join("·"),
        }
    }
}

/// Per-kind payload.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RequirementMeta {
    /// Basis paths: required rank.
    pub cyclomatic: Option<usize>,
    /// Round trips: anchor vertex of each item, parallel to `items`.
    pub anchors: Option<Vec<VertexId>>,
    /// W-method: characterization set.
    pub characterization: Option<Vec<Vec<String>>>,
    /// W-method: root-to-leaf input sequences of the testing tree.
    pub prefixes: Option<Vec<Vec<String>>>,
    /// Boundary-interior: indices of representatives that could not reach an end vertex.
    pub truncated: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RequirementSet {
    pub criterion: Criterion,
    pub kind: RequirementKind,
    pub items: Vec<Requirement>,
    pub meta: RequirementMeta,
}

impl RequirementSet {
    pub(crate) fn new(criterion: Criterion, kind: RequirementKind, mut items: Vec<Requirement>) -> Self {
        items.sort();
        items.dedup();
        RequirementSet {
            criterion,
            kind,
            items,
            meta: RequirementMeta::default(),
        }
    }

    pub(crate) fn from_paths(criterion: Criterion, paths: Vec<Path>) -> Self {
        Self::new(
            criterion,
            RequirementKind::Path,
            paths.into_iter().map(Requirement::Path).collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Path items (empty for vertex/edge/sequence kinds).
    pub fn paths(&self) -> impl Iterator<Item = &Path> {
        self.items.iter().filter_map(Requirement::as_path)
    }

    pub fn to_value(&self, g: &FsmGraph) -> Value {
        let mut meta = Map::new();
        if let Some(c) = self.meta.cyclomatic {
            meta.insert("cyclomatic".into(), json!(c));
        }
        if let Some(anchors) = &self.meta.anchors {
            let names: Vec<&str> = anchors.iter().map(|&v| g.vertex_name(v)).collect();
            meta.insert("anchors".into(), json!(names));
        }
        if let Some(w) = &self.meta.characterization {
            meta.insert("W".into(), json!(w));
        }
        if let Some(p) = &self.meta.prefixes {
            meta.insert("P".into(), json!(p));
        }
        if !self.meta.truncated.is_empty() {
            meta.insert("truncated".into(), json!(self.meta.truncated));
        }
        if self.kind == RequirementKind::WmcSequences {
            let walks: Vec<Vec<String>> = self
                .items
                .iter()
                .filter_map(|r| match r {
                    Requirement::Sequence(s) => Some(g.edge_names(&s.walk)),
                    _ => None,
                })
                .collect();
            meta.insert("walks".into(), json!(walks));
        }
        json!({
            "criterion": self.criterion.to_string(),
            "kind": self.kind.as_str(),
            "items": self.items.iter().map(|r| r.to_value(g)).collect::<Vec<_>>(),
            "meta": Value::Object(meta),
        })
    }

    pub fn to_json(&self, g: &FsmGraph) -> String {
        self.to_value(g).to_string()
    }
}

/// Requirements of `criterion` on `g` under default [`Limits`].
pub fn requirements(g: &FsmGraph, criterion: &Criterion) -> Result<RequirementSet> {
    requirements_with_limits(g, criterion, &Limits::default())
}

pub fn requirements_with_limits(g: &FsmGraph, criterion: &Criterion, limits: &Limits) -> Result<RequirementSet> {
    match criterion {
        Criterion::Node => Ok(node_requirements(g)),
        Criterion::Edge => Ok(edge_requirements(g)),
        Criterion::Branch => Ok(branch_requirements(g)),
        Criterion::EdgePair => {
            let mut set = structural::bounded_walks(g, 2, limits.max_walks)?;
            set.criterion = Criterion::EdgePair;
            Ok(set)
        }
        Criterion::NSwitch(n) => structural::bounded_walks(g, *n as usize + 1, limits.max_walks),
        Criterion::PrimePath => prime_paths_with_cap(g, limits.max_simple_paths),
        Criterion::SimpleRoundTrip => prime::round_trips_with_cap(g, RoundTripMode::Simple, limits.max_simple_paths),
        Criterion::CompleteRoundTrip => {
            prime::round_trips_with_cap(g, RoundTripMode::Complete, limits.max_simple_paths)
        }
        Criterion::BasisPath => basis_paths(g),
        Criterion::BoundaryInterior(depth) => boundary::classes_with_limits(g, *depth, limits),
        Criterion::AllPaths => paths::all_paths_with_cap(g, limits.max_paths),
        Criterion::SpecifiedPath(s) => specified_path_requirements(g, s),
        Criterion::WMethod => w_method_test_set(g),
    }
}
