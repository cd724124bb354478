//! W-method obligations for deterministic Mealy machines.
//!
//! Machines may be partial. Applying an input without a transition yields
//! the observation [`Observation::Blocked`] and ends the run.

use std::collections::{BTreeSet, VecDeque};

use super::{InputSequence, Requirement, RequirementKind, RequirementSet};
use crate::criterion::Criterion;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, FsmGraph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Observation {
    Output(String),
    Blocked,
}

/// Runs `inputs` from `v`. Returns the observations and the edges taken;
/// the observation list is one longer than the edge list when a run blocks.
pub fn run_inputs<S: AsRef<str>>(g: &FsmGraph, v: VertexId, inputs: &[S]) -> (Vec<Observation>, Vec<EdgeId>) {
    let mut obs = Vec::with_capacity(inputs.len());
    let mut walk = Vec::with_capacity(inputs.len());
    let mut cur = v;
    for i in inputs {
        match g.step(cur, i.as_ref()) {
            Some(e) => {
                obs.push(Observation::Output(g.output(e).unwrap_or_default().to_owned()));
                walk.push(e);
                cur = g.target(e);
            }
            None => {
                obs.push(Observation::Blocked);
                break;
            }
        }
    }
    (obs, walk)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeNode {
    pub vertex: VertexId,
    /// Edge from the parent; `None` at the root.
    pub edge: Option<EdgeId>,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
}

/// Breadth-first unrolling from the start vertex. Node 0 is the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TestingTree {
    pub nodes: Vec<TreeNode>,
}

impl TestingTree {
    pub fn leaves(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.nodes.len()).filter(|&i| self.nodes[i].children.is_empty())
    }

    /// Edges from the root down to `node`.
    pub fn edge_path(&self, node: usize) -> Vec<EdgeId> {
        let mut out = Vec::new();
        let mut cur = node;
        while let Some(e) = self.nodes[cur].edge {
            out.push(e);
            cur = self.nodes[cur].parent.expect("non-root node has a parent");
        }
        out.reverse();
        out
    }

    pub fn depth(&self, node: usize) -> usize {
        self.edge_path(node).len()
    }
}

/// Children follow edge-id order. A node is not expanded when its vertex
/// already occurred earlier in breadth-first order or has no outgoing edges.
pub fn testing_tree(g: &FsmGraph) -> TestingTree {
    let mut nodes = vec![TreeNode {
        vertex: g.start(),
        edge: None,
        parent: None,
        children: Vec::new(),
    }];
    let mut seen = vec![false; g.vertex_count()];
    seen[g.start().index()] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(n) = queue.pop_front() {
        let v = nodes[n].vertex;
        for &e in g.outgoing(v) {
            let w = g.target(e);
            let id = nodes.len();
            nodes.push(TreeNode {
                vertex: w,
                edge: Some(e),
                parent: Some(n),
                children: Vec::new(),
            });
            nodes[n].children.push(id);
            if !std::mem::replace(&mut seen[w.index()], true) {
                queue.push_back(id);
            }
        }
    }
    TestingTree { nodes }
}

fn require_labels(g: &FsmGraph) -> Result<()> {
    if g.is_mealy() {
        Ok(())
    } else {
        Err(Error::MealyLabelsMissing)
    }
}

/// Shortest input sequence separating `u` and `v`, lexicographically
/// smallest among the shortest. Breadth-first search over state pairs.
fn distinguishing_sequence(g: &FsmGraph, alphabet: &[String], u: VertexId, v: VertexId) -> Option<Vec<String>> {
    let n = g.vertex_count();
    let mut prev: Vec<Option<(usize, usize)>> = vec![None; n * n];
    let key = |a: VertexId, b: VertexId| a.index() * n + b.index();
    let mut visited = vec![false; n * n];
    visited[key(u, v)] = true;
    let mut queue = VecDeque::from([(u, v)]);
    let rebuild = |prev: &Vec<Option<(usize, usize)>>, mut k: usize, last: usize| {
        let mut seq = vec![alphabet[last].clone()];
        while let Some((pk, sym)) = prev[k] {
            seq.push(alphabet[sym].clone());
            k = pk;
        }
        seq.reverse();
        seq
    };
    while let Some((a, b)) = queue.pop_front() {
        let k = key(a, b);
        for (sym, input) in alphabet.iter().enumerate() {
            match (g.step(a, input), g.step(b, input)) {
                (None, None) => {}
                (Some(_), None) | (None, Some(_)) => return Some(rebuild(&prev, k, sym)),
                (Some(ea), Some(eb)) => {
                    if g.output(ea) != g.output(eb) {
                        return Some(rebuild(&prev, k, sym));
                    }
                    let (na, nb) = (g.target(ea), g.target(eb));
                    if na != nb && !visited[key(na, nb)] {
                        visited[key(na, nb)] = true;
                        prev[key(na, nb)] = Some((k, sym));
                        queue.push_back((na, nb));
                    }
                }
            }
        }
    }
    None
}

fn separates(g: &FsmGraph, w: &[String], u: VertexId, v: VertexId) -> bool {
    run_inputs(g, u, w).0 != run_inputs(g, v, w).0
}

/// A characterization set: for every pair of distinct states some member
/// yields different observations. Built from pairwise shortest
/// distinguishing sequences, then thinned by greedy elimination.
pub fn characterization_set(g: &FsmGraph) -> Result<Vec<Vec<String>>> {
    require_labels(g)?;
    let alphabet = g.input_alphabet();
    let states: Vec<VertexId> = g.vertices().collect();
    let mut pairs = Vec::new();
    let mut w: BTreeSet<Vec<String>> = BTreeSet::new();
    for (i, &u) in states.iter().enumerate() {
        for &v in &states[i + 1..] {
            let seq = distinguishing_sequence(g, &alphabet, u, v).ok_or_else(|| {
                Error::IndistinguishableStates(g.vertex_name(u).to_owned(), g.vertex_name(v).to_owned())
            })?;
            w.insert(seq);
            pairs.push((u, v));
        }
    }
    // Try to drop longer sequences first; ties in canonical order.
    let mut order: Vec<Vec<String>> = w.iter().cloned().collect();
    order.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    for cand in order {
        w.remove(&cand);
        let still = pairs.iter().all(|&(u, v)| w.iter().any(|s| separates(g, s, u, v)));
        if !still {
            w.insert(cand);
        }
    }
    Ok(w.into_iter().collect())
}

/// Items are `p·w` for every `p` in `P` and `w` in `W`, where `P` holds the
/// input sequences from the root to every other node of the testing tree.
/// Each item records the walk it drives from the start vertex.
pub fn w_method_test_set(g: &FsmGraph) -> Result<RequirementSet> {
    require_labels(g)?;
    let w = characterization_set(g)?;
    let tree = testing_tree(g);
    let inputs_of = |edges: &[EdgeId]| -> Vec<String> {
        edges
            .iter()
            .map(|&e| g.input(e).unwrap_or_default().to_owned())
            .collect()
    };
    let p: BTreeSet<Vec<String>> = (1..tree.nodes.len()).map(|n| inputs_of(&tree.edge_path(n))).collect();
    let suffixes: Vec<Vec<String>> = if w.is_empty() { vec![Vec::new()] } else { w.clone() };
    let mut items = Vec::new();
    for prefix in &p {
        for suffix in &suffixes {
            let mut inputs = prefix.clone();
            inputs.extend(suffix.iter().cloned());
            let (obs, walk) = run_inputs(g, g.start(), &inputs);
            let blocked = obs.last() == Some(&Observation::Blocked);
            items.push(Requirement::Sequence(InputSequence { inputs, walk, blocked }));
        }
    }
    let mut set = RequirementSet::new(Criterion::WMethod, RequirementKind::WmcSequences, items);
    set.meta.characterization = Some(w);
    set.meta.prefixes = Some(p.into_iter().collect());
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::Edge;

    fn two_state() -> FsmGraph {
        FsmGraph::new(
            ["A", "B"],
            "A",
            Vec::<String>::new(),
            vec![
                Edge::new("p", "A", "B").with_label("x", "0"),
                Edge::new("q", "B", "A").with_label("x", "1"),
            ],
        )
        .unwrap()
    }

    fn strs(v: &[&[&str]]) -> Vec<Vec<String>> {
        v.iter().map(|s| s.iter().map(|x| x.to_string()).collect()).collect()
    }

    #[test]
    fn two_state_machine() {
        let g = two_state();
        assert_eq!(characterization_set(&g).unwrap(), strs(&[&["x"]]));
        let set = w_method_test_set(&g).unwrap();
        assert_eq!(set.meta.prefixes.clone().unwrap(), strs(&[&["x"], &["x", "x"]]));
        let items: Vec<Vec<String>> = set
            .items
            .iter()
            .map(|r| match r {
                Requirement::Sequence(s) => s.inputs.clone(),
                _ => unreachable!(),
            })
            .collect();
        assert_eq!(items, strs(&[&["x", "x"], &["x", "x", "x"]]));
    }

    #[test]
    fn wgraph_tree() {
        let g = fixtures::wgraph();
        let tree = testing_tree(&g);
        let leaves: Vec<String> = tree
            .leaves()
            .map(|n| g.edge_names(&tree.edge_path(n)).join("-"))
            .collect();
        assert_eq!(leaves, ["a-b", "a-c", "a-d-e"]);
    }

    #[test]
    fn wgraph_characterization_separates_every_pair() {
        let g = fixtures::wgraph();
        let w = characterization_set(&g).unwrap();
        assert!(w.len() <= 2, "{w:?}");
        let states: Vec<VertexId> = g.vertices().collect();
        for &u in &states {
            for &v in &states {
                if u != v {
                    assert!(w.iter().any(|s| separates(&g, s, u, v)));
                }
            }
        }
    }

    #[test]
    fn unlabeled_graph_is_rejected() {
        assert_eq!(
            characterization_set(&fixtures::oneloop()),
            Err(Error::MealyLabelsMissing)
        );
        assert!(matches!(
            w_method_test_set(&fixtures::oneloop()),
            Err(Error::MealyLabelsMissing)
        ));
    }

    #[test]
    fn identical_rows_are_indistinguishable() {
        let g = FsmGraph::new(
            ["A", "B"],
            "A",
            Vec::<String>::new(),
            vec![
                Edge::new("p", "A", "B").with_label("x", "0"),
                Edge::new("q", "B", "A").with_label("x", "0"),
            ],
        )
        .unwrap();
        assert!(matches!(
            characterization_set(&g),
            Err(Error::IndistinguishableStates(_, _))
        ));
    }

    #[test]
    fn blocked_runs_stop() {
        let g = fixtures::wgraph();
        let (obs, walk) = run_inputs(&g, g.start(), &["x", "y", "x"]);
        assert_eq!(
            obs,
            [
                Observation::Output("0".into()),
                Observation::Output("1".into()),
                Observation::Blocked
            ]
        );
        assert_eq!(walk.len(), 2);
    }
}
