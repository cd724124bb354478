//! Workloads shared by the benchmarks.

use fsmcov_core::{Edge, FsmGraph};

/// A chain of `n` decision vertices, each with a two-edge loop back to
/// itself and a forward edge. Prime-path and basis counts grow with `n`.
pub fn loop_ladder(n: usize) -> FsmGraph {
    let mut vertices = vec!["s".to_string(), "t".to_string()];
    let mut edges = Vec::new();
    let name = |i: usize| format!("v{i}");
    edges.push(Edge::new("in", "s", name(0)));
    for i in 0..n {
        vertices.push(name(i));
        vertices.push(format!("w{i}"));
        edges.push(Edge::new(format!("l{i}"), name(i), format!("w{i}")));
        edges.push(Edge::new(format!("r{i}"), format!("w{i}"), name(i)));
        let next = if i + 1 == n { "t".to_string() } else { name(i + 1) };
        edges.push(Edge::new(format!("f{i}"), name(i), next));
    }
    FsmGraph::new(vertices, "s", ["t"], edges).expect("ladder is a valid model")
}
