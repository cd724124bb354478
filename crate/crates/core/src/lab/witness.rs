//! Hand-built counterexamples and the extra graphs the lab searches first.

use serde_json::{json, Value};

use crate::coverage::{check, complete_path_rank};
use crate::criterion::Criterion;
use crate::error::{Error, Result};
use crate::fixtures;
use crate::graph::{graph_to_json, parse_graph_json, Edge, FsmGraph};
use crate::path::{Path, TestSuite};

/// A stored counterexample: `suite` satisfies `c1` on `graph` but not `c2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    /// `explicit`, `fixture` or `search`.
    pub source: String,
    /// Fixture name, or `trial <i>` for random search.
    pub origin: String,
    pub graph: FsmGraph,
    pub suite: TestSuite,
    /// Items of `c2` left uncovered, or the reason `c2` cannot be met.
    pub missing: Vec<String>,
}

impl Witness {
    pub fn to_value(&self) -> Value {
        let graph: Value = serde_json::from_str(&graph_to_json(&self.graph)).expect("graph JSON is valid");
        json!({
            "source": self.source,
            "origin": self.origin,
            "graph": graph,
            "suite": self.suite.to_value(&self.graph),
            "missing": self.missing,
        })
    }

    /// Re-parses the stored JSON and confirms the verdicts again.
    pub fn recheck(&self, c1: &Criterion, c2: &Criterion) -> Result<bool> {
        let g = parse_graph_json(&graph_to_json(&self.graph))?;
        let suite = TestSuite::parse_json(&g, &self.suite.to_json(&self.graph))?;
        let first = satisfies(&g, &suite, c1)?;
        let second = satisfies(&g, &suite, c2)?;
        Ok(first && !second)
    }
}

/// Whether `suite` satisfies `c` on `g`. All-path coverage on a cyclic
/// graph counts as not satisfied, since no finite suite meets it. Other
/// inapplicable criteria (the W-method without labels) stay errors.
pub fn satisfies(g: &FsmGraph, suite: &TestSuite, c: &Criterion) -> Result<bool> {
    match check(g, suite, c) {
        Ok(r) => Ok(r.satisfied),
        Err(Error::CriterionInapplicable { .. }) if *c == Criterion::AllPaths => Ok(false),
        Err(e) => Err(e),
    }
}

/// Items of `c` that `suite` leaves uncovered, for witness reports.
pub fn describe_missing(g: &FsmGraph, suite: &TestSuite, c: &Criterion) -> Vec<String> {
    match check(g, suite, c) {
        Ok(r) => {
            let mut out: Vec<String> = r.missing.iter().map(|m| m.display(g)).collect();
            if let (Some(rank), Some(req)) = (r.rank, r.required) {
                out.push(format!("rank {rank} of {req}"));
            }
            out
        }
        Err(e) => vec![e.to_string()],
    }
}

fn suite(g: &FsmGraph, paths: &[&str]) -> TestSuite {
    let parsed = paths
        .iter()
        .map(|s| {
            let names: Vec<&str> = s.split('-').collect();
            Path::parse(g, &names).expect("witness path is valid")
        })
        .collect();
    TestSuite::new(parsed)
}

/// Chain `1 -a-> 2 -b-> 3` where both 2 and 3 are end vertices, so `a`
/// alone is a complete path as well as `a-b`. The suite `{a-b}` covers
/// both as subpaths and meets all-path coverage, yet its rank is 1 of 2.
pub fn chain_with_inner_end() -> FsmGraph {
    FsmGraph::new(
        ["1", "2", "3"],
        "1",
        ["2", "3"],
        vec![Edge::new("a", "1", "2"), Edge::new("b", "2", "3")],
    )
    .expect("valid model")
}

/// Two-state Mealy machine `s -a x/0-> t` with a self-loop `t -b x/1-> t`.
/// Its W-method suite `{a-b-b}` has rank 1 while the cyclomatic number is 2.
pub fn mealy_selfloop() -> FsmGraph {
    FsmGraph::new(
        ["s", "t"],
        "s",
        ["t"],
        vec![
            Edge::new("a", "s", "t").with_label("x", "0"),
            Edge::new("b", "t", "t").with_label("x", "1"),
        ],
    )
    .expect("valid model")
}

/// Graphs tried with generated suites before any random search: the named
/// fixtures followed by the two lab graphs above.
pub fn search_graphs() -> Vec<(String, FsmGraph)> {
    let mut out: Vec<(String, FsmGraph)> = fixtures::all().into_iter().map(|(n, g)| (n.to_owned(), g)).collect();
    out.push(("lab-chain".into(), chain_with_inner_end()));
    out.push(("lab-mealy-loop".into(), mealy_selfloop()));
    out
}

/// The edge-pair suite discussed for the two-loop graph.
pub fn twoloops_edge_pair_claim() -> (FsmGraph, TestSuite) {
    let g = fixtures::twoloops();
    let s = suite(&g, &["a-b", "a-c-d-e-f-b", "a-e-f-c-d-b"]);
    (g, s)
}

/// The four complete paths listed as a basis for the Mealy fixture.
pub fn wgraph_claimed_basis() -> (FsmGraph, TestSuite) {
    let g = fixtures::wgraph();
    let s = suite(&g, &["a-b", "a-c", "a-d-e-b", "a-d-e-c"]);
    (g, s)
}

/// Hand-built candidates for `c1 ⇏ c2`, tried before anything else.
pub fn explicit_witnesses(c1: &Criterion, c2: &Criterion) -> Vec<(String, FsmGraph, TestSuite)> {
    let mut out = Vec::new();
    let mut add = |name: &str, g: FsmGraph, paths: &[&str]| {
        let s = suite(&g, paths);
        out.push((name.to_owned(), g, s));
    };
    let triple_minus_ace = ["a-c-f", "a-d-e", "a-d-f", "b-c-e", "b-c-f", "b-d-e", "b-d-f"];
    match (c1.code(), c2.code()) {
        ("EC", "EPC") | ("BC", "EPC") | ("NC", "EPC") => add("fix-diamond", fixtures::diamond(), &["a-b", "c-d"]),
        ("PPC", "EPC") => add("fix-selfloop", fixtures::selfloop(), &["a-b", "a-c", "d"]),
        ("EPC", "PPC") | ("EPC", "APC") => add("fix-triple", fixtures::triple(), &triple_minus_ace),
        ("BPC", "EPC") => add("fix-twoloops", fixtures::twoloops(), &["a-b", "a-c-d-b", "a-e-f-b"]),
        ("EPC", "BPC") => {
            add(
                "fix-twoloops",
                fixtures::twoloops(),
                &["a-b", "a-c-d-e-f-b", "a-e-f-c-d-b"],
            );
            add(
                "fix-twoloops",
                fixtures::twoloops(),
                &["a-b", "a-c-d-e-f-b", "a-e-f-c-d-b", "a-c-d-c-d-e-f-e-f-b"],
            );
        }
        ("BPC", "PPC") => add("fix-oneloop", fixtures::oneloop(), &["a-b", "a-c-d-b"]),
        ("SRTC", "CRTC") => add("fix-twoloops", fixtures::twoloops(), &["c-d-c", "f-e"]),
        ("SRTC", other) | ("CRTC", other) if !matches!(other, "SRTC" | "WMC") => {
            add("fix-triple", fixtures::triple(), &[])
        }
        ("WMC", "BPC") => add("lab-mealy-loop", mealy_selfloop(), &["a-b-b"]),
        ("WMC", "EPC") | ("WMC", "PPC") => add("fix-wgraph", fixtures::wgraph(), &["a-b", "a-c", "a-d-e-b", "a-d-e-c"]),
        // On acyclic graphs prime paths reach every sink, so the gap only
        // shows where all-path coverage cannot be met at all.
        ("PPC", "APC") => add("fix-oneloop", fixtures::oneloop(), &["a-b", "a-c-d-c-d-b"]),
        _ => {}
    }
    out
}

/// Discrepancies between claims about the fixtures and what the checker
/// computes. Each entry is computed, not hard-coded.
pub fn open_questions() -> Vec<String> {
    let mut out = Vec::new();
    let (g, s) = twoloops_edge_pair_claim();
    if let Ok(r) = check(&g, &s, &Criterion::EdgePair) {
        if !r.satisfied {
            let missing: Vec<String> = r.missing.iter().map(|m| m.display(&g)).collect();
            out.push(format!(
                "fix-twoloops edge-pair claim: the suite {{a-b, a-c-d-e-f-b, a-e-f-c-d-b}} leaves {} uncovered, so it \
                 does not satisfy EPC; EPC does not subsume BPC is shown with a different witness",
                missing.join(", ")
            ));
        }
    }
    let (g, s) = wgraph_claimed_basis();
    let rank = complete_path_rank(&g, &s);
    if rank < s.len() {
        out.push(format!(
            "fix-wgraph basis independence: the paths {{a-b, a-c, a-d-e-b, a-d-e-c}} have edge-count rank {rank} of {}, \
             so they are not linearly independent (cyclomatic number {})",
            s.len(),
            crate::requirements::cyclomatic_number(&g)
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lab::table::{table_criterion, RelationTable, TABLE_CODES};

    #[test]
    fn explicit_witnesses_refute_their_pairs() {
        let table = RelationTable::new();
        for (r, c, _) in table.cells() {
            let c1 = table_criterion(TABLE_CODES[r]).unwrap();
            let c2 = table_criterion(TABLE_CODES[c]).unwrap();
            let cands = explicit_witnesses(&c1, &c2);
            if cands.is_empty() {
                continue;
            }
            let any = cands
                .iter()
                .any(|(_, g, s)| satisfies(g, s, &c1).unwrap() && !satisfies(g, s, &c2).unwrap());
            assert!(any, "{} vs {}", c1, c2);
        }
    }

    #[test]
    fn two_open_questions() {
        let q = open_questions();
        assert_eq!(q.len(), 2, "{q:?}");
        assert!(q[0].contains("d-c") && q[0].contains("f-e"));
        assert!(q[1].contains("rank 3 of 4"));
    }
}
