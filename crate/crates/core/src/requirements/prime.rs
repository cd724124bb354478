use super::{RequirementKind, RequirementSet};
use crate::criterion::Criterion;
use crate::error::{Error, Result};
use crate::graph::FsmGraph;
use crate::path::{extends_simply, Path};

/// Default cap on enumerated simple paths.
pub const DEFAULT_SIMPLE_PATH_CAP: usize = 100_000;

/// Every simple path with at least one edge, grown edge by edge from each
/// single edge. Cycles are not extended further.
pub fn simple_paths(g: &FsmGraph, cap: usize) -> Result<Vec<Path>> {
    let mut all: Vec<Vec<_>> = g.edge_ids().map(|e| vec![e]).collect();
    if all.len() > cap {
        return Err(Error::Resource(format!("more than {cap} simple paths")));
    }
    let mut frontier_start = 0;
    while frontier_start < all.len() {
        let frontier_end = all.len();
        for i in frontier_start..frontier_end {
            let first = g.source(all[i][0]);
            let last = g.target(*all[i].last().expect("non-empty"));
            if first == last {
                continue;
            }
            let mut on_path = vec![false; g.vertex_count()];
            on_path[first.index()] = true;
            for &e in &all[i] {
                on_path[g.target(e).index()] = true;
            }
            for &e in g.outgoing(last) {
                let t = g.target(e);
                if !on_path[t.index()] || t == first {
                    let mut next = all[i].clone();
                    next.push(e);
                    all.push(next);
                    if all.len() > cap {
                        return Err(Error::Resource(format!("more than {cap} simple paths")));
                    }
                }
            }
        }
        frontier_start = frontier_end;
    }
    Ok(all.into_iter().map(Path::from_edges).collect())
}

/// Prime paths: maximal simple paths. Length-zero paths are never listed.
pub fn prime_paths(g: &FsmGraph) -> Result<RequirementSet> {
    prime_paths_with_cap(g, DEFAULT_SIMPLE_PATH_CAP)
}

pub fn prime_paths_with_cap(g: &FsmGraph, cap: usize) -> Result<RequirementSet> {
    let primes = simple_paths(g, cap)?
        .into_iter()
        .filter(|p| !extends_simply(g, p))
        .collect();
    Ok(RequirementSet::from_paths(Criterion::PrimePath, primes))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RoundTripMode {
    /// One round trip per reachable anchor vertex.
    Simple,
    /// Every round trip of every reachable anchor vertex.
    Complete,
}

/// Prime cycles grouped by the vertex they start and end at. Only anchors
/// reachable from the start vertex are listed. The anchor of each item is
/// stored in `meta.anchors`.
pub fn round_trip_requirements(g: &FsmGraph, mode: RoundTripMode) -> Result<RequirementSet> {
    round_trips_with_cap(g, mode, DEFAULT_SIMPLE_PATH_CAP)
}

pub(crate) fn round_trips_with_cap(g: &FsmGraph, mode: RoundTripMode, cap: usize) -> Result<RequirementSet> {
    let reach = g.reachable_mask();
    let cycles = simple_paths(g, cap)?
        .into_iter()
        .filter(|p| p.is_cycle(g) && reach[p.first_vertex(g).index()])
        .collect();
    let criterion = match mode {
        RoundTripMode::Simple => Criterion::SimpleRoundTrip,
        RoundTripMode::Complete => Criterion::CompleteRoundTrip,
    };
    let mut set = RequirementSet::from_paths(criterion, cycles);
    set.kind = RequirementKind::Path;
    set.meta.anchors = Some(set.paths().map(|p| p.first_vertex(g)).collect());
    Ok(set)
}
