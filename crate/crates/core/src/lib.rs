//! Coverage criteria for finite-state-machine test suites.
//!
//! Models are directed graphs with a start vertex and a set of end
//! vertices. For each criterion the crate computes test requirements,
//! checks suites against them, generates satisfying suites, and verifies
//! the subsumption relations between criteria by randomized search.

pub mod coverage;
pub mod criterion;
pub mod error;
pub mod fixtures;
pub mod generate;
pub mod graph;
pub mod lab;
pub mod linalg;
pub mod path;
pub mod requirements;

pub use coverage::{check, check_all, CoverageReport};
pub use criterion::{Criterion, DEFAULT_BIC_DEPTH};
pub use error::{Error, Result};
pub use generate::{generate, minimize, GenConfig};
pub use graph::{
    graph_to_json, parse_graph_dot, parse_graph_json, parse_graph_value, Edge, EdgeId, FsmGraph, MealyLabel, VertexId,
};
pub use path::{contains_subpath, is_prime, is_simple, is_valid_path, Path, TestSuite};
pub use requirements::{requirements, requirements_with_limits, Limits, Requirement, RequirementKind, RequirementSet};
