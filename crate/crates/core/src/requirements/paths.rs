use super::RequirementSet;
use crate::criterion::Criterion;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, FsmGraph};
use crate::path::Path;

/// Every path from the start vertex to an end vertex. Only defined for
/// acyclic graphs; a path may pass through an end vertex and continue.
pub fn all_path_requirements(g: &FsmGraph) -> Result<RequirementSet> {
    all_paths_with_cap(g, super::Limits::default().max_paths)
}

pub(crate) fn all_paths_with_cap(g: &FsmGraph, cap: usize) -> Result<RequirementSet> {
    if g.ends().is_empty() {
        return Err(Error::Model("all-path coverage needs at least one end vertex".into()));
    }
    if g.has_cycle() {
        return Err(Error::CyclicGraph);
    }
    let mut out = Vec::new();
    let mut stack: Vec<EdgeId> = Vec::new();

    fn dfs(g: &FsmGraph, stack: &mut Vec<EdgeId>, out: &mut Vec<Path>, cap: usize) -> Result<()> {
        let v = stack.last().map_or(g.start(), |&e| g.target(e));
        if !stack.is_empty() && g.is_end(v) {
            if out.len() >= cap {
                return Err(Error::Resource(format!("more than {cap} complete paths")));
            }
            out.push(Path::from_edges(stack.clone()));
        }
        for &e in g.outgoing(v) {
            stack.push(e);
            dfs(g, stack, out, cap)?;
            stack.pop();
        }
        Ok(())
    }

    dfs(g, &mut stack, &mut out, cap)?;
    Ok(RequirementSet::from_paths(Criterion::AllPaths, out))
}

/// The caller-supplied paths, checked for adjacency in `g`.
pub fn specified_path_requirements(g: &FsmGraph, paths: &[Path]) -> Result<RequirementSet> {
    for p in paths {
        if let Some(&e) = p.edges().iter().find(|e| e.index() >= g.edge_count()) {
            return Err(Error::UnknownEdge(format!("#{}", e.index())));
        }
        if p.edges().windows(2).any(|w| g.target(w[0]) != g.source(w[1])) {
            return Err(Error::InvalidPath(p.display(g)));
        }
    }
    Ok(RequirementSet::from_paths(
        Criterion::SpecifiedPath(paths.to_vec()),
        paths.to_vec(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::requirements::test_util::{p, shown};

    #[test]
    fn triple_has_eight_complete_paths() {
        let g = fixtures::triple();
        assert_eq!(all_path_requirements(&g).unwrap().len(), 8);
        let d = fixtures::diamond();
        assert_eq!(
            shown(&d, &all_path_requirements(&d).unwrap()),
            ["a-b", "a-d", "c-b", "c-d"]
        );
    }

    #[test]
    fn cyclic_graph_is_rejected() {
        assert_eq!(all_path_requirements(&fixtures::oneloop()), Err(Error::CyclicGraph));
    }

    #[test]
    fn specified_paths_are_kept() {
        let g = fixtures::oneloop();
        let set = specified_path_requirements(&g, &[p(&g, "c-d"), p(&g, "a-b")]).unwrap();
        assert_eq!(shown(&g, &set), ["a-b", "c-d"]);
        let bad = Path::from_edges(vec![g.edge_id("b").unwrap(), g.edge_id("a").unwrap()]);
        assert!(matches!(
            specified_path_requirements(&g, &[bad]),
            Err(Error::InvalidPath(_))
        ));
    }
}
