//! Named fixture graphs used as canonical counterexamples.
//!
//! Each fixture is small enough to check by hand. Edge ids are single
//! letters; vertex ids are short strings.

use crate::graph::{Edge, FsmGraph};

fn build(vertices: &[&str], start: &str, ends: &[&str], edges: &[(&str, &str, &str)]) -> FsmGraph {
    let edges = edges.iter().map(|&(id, s, t)| Edge::new(id, s, t)).collect();
    FsmGraph::new(vertices.iter().copied(), start, ends.iter().copied(), edges).expect("fixture is a valid model")
}

/// Two parallel edge pairs in sequence: `a, c: 1→2` and `b, d: 2→3`.
pub fn diamond() -> FsmGraph {
    build(
        &["1", "2", "3"],
        "1",
        &["3"],
        &[("a", "1", "2"), ("c", "1", "2"), ("b", "2", "3"), ("d", "2", "3")],
    )
}

/// A decision vertex with a self-loop `d` and two exits.
pub fn selfloop() -> FsmGraph {
    build(
        &["1", "2", "3", "4"],
        "1",
        &["3", "4"],
        &[("a", "1", "2"), ("b", "2", "3"), ("c", "2", "4"), ("d", "2", "2")],
    )
}

/// Three stages of parallel edge pairs; every complete path is prime.
pub fn triple() -> FsmGraph {
    build(
        &["1", "2", "3", "4"],
        "1",
        &["4"],
        &[
            ("a", "1", "2"),
            ("b", "1", "2"),
            ("c", "2", "3"),
            ("d", "2", "3"),
            ("e", "3", "4"),
            ("f", "3", "4"),
        ],
    )
}

/// Two loops `c·d` and `e·f` hanging off vertex 2.
pub fn twoloops() -> FsmGraph {
    build(
        &["1", "2", "3", "4", "5"],
        "1",
        &["3"],
        &[
            ("a", "1", "2"),
            ("b", "2", "3"),
            ("c", "2", "4"),
            ("d", "4", "2"),
            ("e", "2", "5"),
            ("f", "5", "2"),
        ],
    )
}

/// One loop `c·d` at vertex 2.
pub fn oneloop() -> FsmGraph {
    build(
        &["1", "2", "3", "4"],
        "1",
        &["3"],
        &[("a", "1", "2"), ("b", "2", "3"), ("c", "2", "4"), ("d", "4", "2")],
    )
}

/// Deterministic, minimal Mealy machine with a loop `d·e` through `r`.
///
/// `b` and `c` both lead into the single final state `t`; a second sink
/// state would be indistinguishable from `t`.
pub fn wgraph() -> FsmGraph {
    let edges = vec![
        Edge::new("a", "s", "q").with_label("x", "0"),
        Edge::new("b", "q", "t").with_label("x", "1"),
        Edge::new("c", "q", "t").with_label("y", "1"),
        Edge::new("d", "q", "r").with_label("z", "0"),
        Edge::new("e", "r", "q").with_label("x", "1"),
    ];
    FsmGraph::new(["s", "q", "r", "t"], "s", ["t"], edges).expect("fixture is a valid model")
}

pub const NAMES: [&str; 6] = [
    "fix-diamond",
    "fix-selfloop",
    "fix-triple",
    "fix-twoloops",
    "fix-oneloop",
    "fix-wgraph",
];

pub fn by_name(name: &str) -> Option<FsmGraph> {
    let g = match name.to_ascii_lowercase().as_str() {
        "fix-diamond" | "diamond" => diamond(),
        "fix-selfloop" | "selfloop" => selfloop(),
        "fix-triple" | "triple" => triple(),
        "fix-twoloops" | "twoloops" => twoloops(),
        "fix-oneloop" | "oneloop" => oneloop(),
        "fix-wgraph" | "wgraph" => wgraph(),
        _ => return None,
    };
    Some(g)
}

/// All fixtures with their canonical names, in a fixed order.
pub fn all() -> Vec<(&'static str, FsmGraph)> {
    NAMES.iter().map(|&n| (n, by_name(n).expect("known fixture"))).collect()
}
