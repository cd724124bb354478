use super::{Limits, Requirement, RequirementKind, RequirementSet};
use crate::criterion::Criterion;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, FsmGraph};
use crate::path::Path;

/// Number of elementary cycles, counting each cycle once regardless of
/// rotation. Stops counting past `cap` and reports a resource error.
pub fn count_elementary_cycles(g: &FsmGraph, cap: usize) -> Result<usize> {
    // Cycles are counted from their smallest vertex, exploring only larger ones.
    let mut count = 0usize;
    let mut on_path = vec![false; g.vertex_count()];
    fn dfs(g: &FsmGraph, root: usize, v: usize, on_path: &mut Vec<bool>, count: &mut usize, cap: usize) -> Result<()> {
        for &e in g.outgoing(crate::graph::VertexId::from_index(v)) {
            let w = g.target(e).index();
            if w == root {
                *count += 1;
                if *count > cap {
                    return Err(Error::Resource(format!("more than {cap} elementary cycles")));
                }
            } else if w > root && !on_path[w] {
                on_path[w] = true;
                dfs(g, root, w, on_path, count, cap)?;
                on_path[w] = false;
            }
        }
        Ok(())
    }
    for root in 0..g.vertex_count() {
        on_path[root] = true;
        dfs(g, root, root, &mut on_path, &mut count, cap)?;
        on_path[root] = false;
    }
    Ok(count)
}

/// Boundary-interior classes: one representative per class, namely every
/// path from the start vertex to an end vertex that uses each edge at most
/// `depth + 1` times and visits each vertex at most `depth + 2` times (a
/// loop head is seen on entry and once per repetition). Paths that get
/// stuck in a non-end sink are kept as items too; their indices are listed
/// in `meta.truncated`.
pub fn boundary_interior_classes(g: &FsmGraph, depth: u32) -> Result<RequirementSet> {
    classes_with_limits(g, depth, &Limits::default())
}

pub(crate) fn classes_with_limits(g: &FsmGraph, depth: u32, limits: &Limits) -> Result<RequirementSet> {
    count_elementary_cycles(g, limits.max_cycles)?;
    let budget = depth as usize + 1;
    let mut uses = vec![0usize; g.edge_count()];
    let mut stack: Vec<EdgeId> = Vec::new();
    let mut out: Vec<Path> = Vec::new();
    let mut explored = 0usize;

    struct Walk<'a> {
        g: &'a FsmGraph,
        budget: usize,
        limits: &'a Limits,
    }

    impl Walk<'_> {
        fn go(
            &self,
            uses: &mut Vec<usize>,
            visits: &mut Vec<usize>,
            stack: &mut Vec<EdgeId>,
            out: &mut Vec<Path>,
            explored: &mut usize,
        ) -> Result<()> {
            let g = self.g;
            let v = stack.last().map_or(g.start(), |&e| g.target(e));
            if !stack.is_empty() && (g.is_end(v) || g.outgoing(v).is_empty()) {
                if out.len() >= self.limits.max_paths {
                    return Err(Error::Resource(format!(
                        "more than {} boundary-interior classes",
                        self.limits.max_paths
                    )));
                }
                out.push(Path::from_edges(stack.clone()));
            }
            for &e in g.outgoing(v) {
                let w = g.target(e).index();
                if uses[e.index()] >= self.budget || visits[w] > self.budget {
                    continue;
                }
                *explored += 1;
                if *explored > self.limits.max_walks {
                    return Err(Error::Resource(format!(
                        "boundary-interior search explored more than {} walks",
                        self.limits.max_walks
                    )));
                }
                uses[e.index()] += 1;
                visits[w] += 1;
                stack.push(e);
                self.go(uses, visits, stack, out, explored)?;
                stack.pop();
                visits[w] -= 1;
                uses[e.index()] -= 1;
            }
            Ok(())
        }
    }

    let mut visits = vec![0usize; g.vertex_count()];
    visits[g.start().index()] = 1;
    Walk { g, budget, limits }.go(&mut uses, &mut visits, &mut stack, &mut out, &mut explored)?;

    let mut set = RequirementSet::new(
        Criterion::BoundaryInterior(depth),
        RequirementKind::Path,
        out.into_iter().map(Requirement::Path).collect(),
    );
    set.meta.truncated = set
        .paths()
        .enumerate()
        .filter(|(_, p)| !g.is_end(p.last_vertex(g)))
        .map(|(i, _)| i)
        .collect();
    Ok(set)
}

/// Reduces `p` to its class representative: any closed block repeated
/// consecutively more than `depth + 1` times is cut back to `depth + 1`
/// copies. The leftmost position and then the shortest block are reduced
/// first, until nothing changes.
pub fn class_representative(g: &FsmGraph, p: &Path, depth: u32) -> Path {
    let keep = depth as usize + 1;
    let mut edges = p.edges().to_vec();
    'outer: loop {
        let n = edges.len();
        for i in 0..n {
            for len in 1..=(n - i) / (keep + 1) {
                let block = &edges[i..i + len];
                if g.source(block[0]) != g.target(block[len - 1]) {
                    continue;
                }
                let mut reps = 1;
                while i + (reps + 1) * len <= n && edges[i + reps * len..i + (reps + 1) * len] == *block {
                    reps += 1;
                }
                if reps > keep {
                    edges.drain(i + keep * len..i + reps * len);
                    continue 'outer;
                }
            }
        }
        break;
    }
    Path::from_edges(edges)
}
