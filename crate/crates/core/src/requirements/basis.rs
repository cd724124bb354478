use std::collections::{BTreeSet, VecDeque};

use super::{Requirement, RequirementKind, RequirementSet};
use crate::criterion::Criterion;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, FsmGraph};
use crate::linalg::RowSpace;
use crate::path::Path;

/// Dimension of the space spanned by complete paths.
///
/// `E - V + 2` with a single end vertex. With several end vertices they are
/// joined to a virtual sink first, which gives `E + |ends| - V + 1`; the
/// two formulas agree when there is exactly one end.
pub fn cyclomatic_number(g: &FsmGraph) -> usize {
    let e = g.edge_count() as i64;
    let v = g.vertex_count() as i64;
    let ends = g.ends().len().max(1) as i64;
    (e + ends - v + 1).max(0) as usize
}

pub(crate) fn check_basis_preconditions(g: &FsmGraph) -> Result<()> {
    if g.ends().is_empty() {
        return Err(Error::Model("basis paths need at least one end vertex".into()));
    }
    if g.is_end(g.start()) {
        return Err(Error::Model(
            "basis paths need a start vertex that is not an end vertex".into(),
        ));
    }
    let reach = g.reachable_mask();
    let coreach = g.coreachable_mask();
    if let Some(v) = g.vertices().find(|v| !reach[v.index()] || !coreach[v.index()]) {
        return Err(Error::Model(format!(
            "basis paths need every vertex on some complete path; `{}` is not",
            g.vertex_name(v)
        )));
    }
    Ok(())
}

/// A basis of complete paths (start to an end vertex) whose edge-count
/// vectors are linearly independent and span every complete path.
///
/// Construction: begin with the shortest completion from the start vertex.
/// Then walk the generated paths in order; at the first visit of each
/// vertex `u` (reached by prefix `π`) propose `π·f·C(f)` for every outgoing
/// edge `f`, where `C` is the shortest completion to an end vertex, and
/// `π` itself when `u` is an end vertex. A proposal joins the basis when it
/// raises the rank. Ties are broken by edge-id order, so the result is
/// deterministic.
pub fn basis_paths(g: &FsmGraph) -> Result<RequirementSet> {
    check_basis_preconditions(g)?;
    let target = cyclomatic_number(g);
    let ends = g.end_mask().to_vec();
    let completion = |v| g.shortest_path_to(v, &ends).expect("every vertex is co-reachable");

    let baseline = completion(g.start());
    let mut space = RowSpace::new();
    let mut basis = Vec::new();
    let mut proposed: BTreeSet<Vec<EdgeId>> = BTreeSet::new();
    let mut queue: VecDeque<Vec<EdgeId>> = VecDeque::new();
    let mut seen = vec![false; g.vertex_count()];

    let mut offer = |p: Vec<EdgeId>, space: &mut RowSpace, basis: &mut Vec<Path>, queue: &mut VecDeque<Vec<EdgeId>>| {
        if p.is_empty() || !proposed.insert(p.clone()) {
            return;
        }
        let path = Path::from_edges(p.clone());
        if space.insert(&path.edge_counts(g.edge_count())) {
            basis.push(path);
        }
        queue.push_back(p);
    };
    offer(baseline, &mut space, &mut basis, &mut queue);

    while let Some(p) = queue.pop_front() {
        if space.rank() >= target {
            break;
        }
        let mut u = g.start();
        for i in 0..=p.len() {
            if i > 0 {
                u = g.target(p[i - 1]);
            }
            if std::mem::replace(&mut seen[u.index()], true) {
                continue;
            }
            let prefix = &p[..i];
            if g.is_end(u) {
                offer(prefix.to_vec(), &mut space, &mut basis, &mut queue);
            }
            for &f in g.outgoing(u) {
                let mut cand = prefix.to_vec();
                cand.push(f);
                cand.extend(completion(g.target(f)));
                offer(cand, &mut space, &mut basis, &mut queue);
            }
        }
    }
    debug_assert_eq!(space.rank(), target, "basis construction reaches full rank");

    let mut set = RequirementSet::new(
        Criterion::BasisPath,
        RequirementKind::Basis,
        basis.into_iter().map(Requirement::Path).collect(),
    );
    set.meta.cyclomatic = Some(target);
    Ok(set)
}
