use super::{Requirement, RequirementKind, RequirementSet};
use crate::criterion::Criterion;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, FsmGraph};
use crate::path::Path;

pub fn node_requirements(g: &FsmGraph) -> RequirementSet {
    RequirementSet::new(
        Criterion::Node,
        RequirementKind::Vertex,
        g.vertices().map(Requirement::Vertex).collect(),
    )
}

pub fn edge_requirements(g: &FsmGraph) -> RequirementSet {
    RequirementSet::new(
        Criterion::Edge,
        RequirementKind::Edge,
        g.edge_ids().map(Requirement::Edge).collect(),
    )
}

/// Maximal decision-free segments.
///
/// Cut vertices are the start vertex, every vertex with two or more
/// outgoing edges, and every end vertex. A branch leaves a cut vertex and
/// follows the forced successor edges until it enters a cut vertex, a sink,
/// or a vertex it already visited. Edges left over (only possible off the
/// reachable part) seed further branches, so the branches partition the
/// edge set.
pub fn branch_requirements(g: &FsmGraph) -> RequirementSet {
    let cut: Vec<bool> = g
        .vertices()
        .map(|v| v == g.start() || g.outgoing(v).len() >= 2 || g.is_end(v))
        .collect();
    let mut covered = vec![false; g.edge_count()];
    let mut branches = Vec::new();

    let trace = |first: EdgeId, covered: &mut Vec<bool>| {
        let mut edges = vec![first];
        let mut on_branch = vec![false; g.vertex_count()];
        on_branch[g.source(first).index()] = true;
        covered[first.index()] = true;
        let mut v = g.target(first);
        while !cut[v.index()] && !on_branch[v.index()] {
            on_branch[v.index()] = true;
            let Some(&next) = g.outgoing(v).first() else { break };
            covered[next.index()] = true;
            edges.push(next);
            v = g.target(next);
        }
        Path::from_edges(edges)
    };

    for v in g.vertices().filter(|v| cut[v.index()]) {
        for &e in g.outgoing(v) {
            branches.push(trace(e, &mut covered));
        }
    }
    for e in g.edge_ids() {
        if !covered[e.index()] {
            branches.push(trace(e, &mut covered));
        }
    }
    RequirementSet::from_paths(Criterion::Branch, branches)
}

/// Edge pairs: the N-switch set for N = 1.
pub fn edge_pair_requirements(g: &FsmGraph) -> Result<RequirementSet> {
    let mut set = bounded_walks(g, 2, usize::MAX)?;
    set.criterion = Criterion::EdgePair;
    Ok(set)
}

/// N-switch requirements: every walk of exactly `n + 1` edges, plus every
/// shorter walk that cannot be extended at either end (it starts at a vertex
/// without incoming edges and stops at one without outgoing edges). The
/// second part keeps isolated edges and short dead-end chains as
/// obligations, so N-switch coverage implies edge coverage.
pub fn n_switch_requirements(g: &FsmGraph, n: u32) -> Result<RequirementSet> {
    bounded_walks(g, n as usize + 1, usize::MAX)
}

pub(crate) fn bounded_walks(g: &FsmGraph, k: usize, cap: usize) -> Result<RequirementSet> {
    let n = k.saturating_sub(1) as u32;
    let mut out: Vec<Path> = Vec::new();
    let mut stack: Vec<EdgeId> = Vec::with_capacity(k);

    fn extend(
        g: &FsmGraph,
        stack: &mut Vec<EdgeId>,
        k: usize,
        from_source: bool,
        out: &mut Vec<Path>,
        cap: usize,
    ) -> Result<()> {
        let last = g.target(*stack.last().expect("non-empty"));
        let done = stack.len() == k;
        let dead_end = from_source && g.outgoing(last).is_empty();
        if done || dead_end {
            // A dead-end walk of full length is already counted once.
            if out.len() >= cap {
                return Err(Error::Resource(format!("more than {cap} bounded walks")));
            }
            out.push(Path::from_edges(stack.clone()));
            return Ok(());
        }
        for &e in g.outgoing(last) {
            stack.push(e);
            extend(g, stack, k, from_source, out, cap)?;
            stack.pop();
        }
        Ok(())
    }

    for e in g.edge_ids() {
        let from_source = g.incoming(g.source(e)).is_empty();
        stack.push(e);
        extend(g, &mut stack, k, from_source, &mut out, cap)?;
        stack.pop();
    }
    // Walks from non-source vertices only count at full length.
    out.retain(|p| p.len() == k || g.incoming(p.first_vertex(g)).is_empty());
    Ok(RequirementSet::from_paths(Criterion::NSwitch(n), out))
}
