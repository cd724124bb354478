//! Checking a suite against a criterion.

use std::collections::HashMap;

use serde_json::{json, Value};

use crate::criterion::Criterion;
use crate::error::{Error, Result};
use crate::graph::FsmGraph;
use crate::linalg::RowSpace;
use crate::path::{contains_slice, contains_subpath, Path, TestSuite};
use crate::requirements::{
    class_representative, requirements_with_limits, Limits, Requirement, RequirementKind, RequirementSet,
};

/// Outcome of checking one suite against one criterion.
///
/// `covered` and `missing` partition the requirement items. For basis
/// paths, `covered` holds the basis items inside the span of the suite and
/// `rank`/`required` carry the rank condition that decides satisfaction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverageReport {
    pub criterion: Criterion,
    pub satisfied: bool,
    pub covered: Vec<Requirement>,
    pub missing: Vec<Requirement>,
    pub rank: Option<usize>,
    pub required: Option<usize>,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl CoverageReport {
    pub fn total(&self) -> usize {
        self.covered.len() + self.missing.len()
    }

    /// `covered / total` in lowest terms; an empty requirement set gives `1/1`.
    pub fn ratio(&self) -> (usize, usize) {
        let (c, t) = (self.covered.len(), self.total());
        if t == 0 {
            return (1, 1);
        }
        let g = gcd(c, t).max(1);
        (c / g, t / g)
    }

    /// The ratio as written in reports: covered over total, unreduced, so
    /// both counts stay visible.
    pub fn ratio_string(&self) -> String {
        if self.total() == 0 {
            "1/1".to_owned()
        } else {
            format!("{}/{}", self.covered.len(), self.total())
        }
    }

    pub fn to_value(&self, g: &FsmGraph) -> Value {
        let mut v = json!({
            "criterion": self.criterion.to_string(),
            "satisfied": self.satisfied,
            "ratio": self.ratio_string(),
            "missing": self.missing.iter().map(|r| r.to_value(g)).collect::<Vec<_>>(),
        });
        if let (Some(rank), Some(required)) = (self.rank, self.required) {
            v["rank"] = json!(rank);
            v["required"] = json!(required);
        }
        v
    }

    pub fn to_json(&self, g: &FsmGraph) -> String {
        self.to_value(g).to_string()
    }
}

/// Checks suite paths against `g`: ids in range and adjacency respected.
pub fn validate_suite(g: &FsmGraph, suite: &TestSuite) -> Result<()> {
    for p in &suite.paths {
        if p.edges().iter().any(|e| e.index() >= g.edge_count()) {
            return Err(Error::InvalidPath("edge id outside the graph".into()));
        }
        if p.edges().windows(2).any(|w| g.target(w[0]) != g.source(w[1])) {
            return Err(Error::InvalidPath(p.display(g)));
        }
    }
    Ok(())
}

/// Requirements for checking and generation. Applicability failures become
/// `CriterionInapplicable`.
pub(crate) fn applicable_requirements(g: &FsmGraph, c: &Criterion, limits: &Limits) -> Result<RequirementSet> {
    requirements_with_limits(g, c, limits).map_err(|e| match e {
        Error::CyclicGraph => Error::CriterionInapplicable {
            criterion: c.to_string(),
            reason: "the graph has a cycle, so there are infinitely many complete paths".into(),
        },
        Error::MealyLabelsMissing => Error::CriterionInapplicable {
            criterion: c.to_string(),
            reason: "not every edge carries an input/output label".into(),
        },
        other => other,
    })
}

pub fn check(g: &FsmGraph, suite: &TestSuite, c: &Criterion) -> Result<CoverageReport> {
    check_with_limits(g, suite, c, &Limits::default())
}

pub fn check_with_limits(g: &FsmGraph, suite: &TestSuite, c: &Criterion, limits: &Limits) -> Result<CoverageReport> {
    validate_suite(g, suite)?;
    let reqs = applicable_requirements(g, c, limits)?;
    Ok(check_against(g, suite, &reqs))
}

/// Checks a suite against precomputed requirements.
pub fn check_against(g: &FsmGraph, suite: &TestSuite, reqs: &RequirementSet) -> CoverageReport {
    if reqs.kind == RequirementKind::Basis {
        return check_basis(g, suite, reqs);
    }
    let mut hit = vec![false; reqs.items.len()];
    let coverer = Coverer::new(g, reqs);
    for t in &suite.paths {
        for i in coverer.items(t) {
            hit[i] = true;
        }
    }
    let mut report = CoverageReport {
        criterion: reqs.criterion.clone(),
        satisfied: satisfied_by(g, reqs, &hit),
        covered: Vec::new(),
        missing: Vec::new(),
        rank: None,
        required: None,
    };
    for (r, &h) in reqs.items.iter().zip(&hit) {
        if h {
            report.covered.push(r.clone());
        } else {
            report.missing.push(r.clone());
        }
    }
    report
}

/// Per-path coverage against one requirement set. Boundary-interior items
/// are looked up by class representative instead of scanned.
pub(crate) struct Coverer<'a> {
    g: &'a FsmGraph,
    reqs: &'a RequirementSet,
    classes: Option<(u32, HashMap<&'a Path, usize>)>,
}

impl<'a> Coverer<'a> {
    pub(crate) fn new(g: &'a FsmGraph, reqs: &'a RequirementSet) -> Self {
        let classes = match reqs.criterion {
            Criterion::BoundaryInterior(depth) => Some((
                depth,
                reqs.items
                    .iter()
                    .enumerate()
                    .filter_map(|(i, r)| Some((r.as_path()?, i)))
                    .collect(),
            )),
            _ => None,
        };
        Coverer { g, reqs, classes }
    }

    /// Indices of the items that `t` covers. Basis sets are judged by rank
    /// instead and are not handled here.
    pub(crate) fn items(&self, t: &Path) -> Vec<usize> {
        if let Some((depth, index)) = &self.classes {
            // The representative keeps the first vertex, so equality is enough.
            let rep = class_representative(self.g, t, *depth);
            return index.get(&rep).copied().into_iter().collect();
        }
        self.reqs
            .items
            .iter()
            .enumerate()
            .filter(|(_, r)| match r {
                Requirement::Path(p) => contains_slice(t.edges(), p.edges()),
                _ => covers(self.g, t, r, &self.reqs.criterion),
            })
            .map(|(i, _)| i)
            .collect()
    }
}

/// Satisfaction given which items are covered. Simple round trips need one
/// covered trip per anchor vertex; everything else needs all items.
pub(crate) fn satisfied_by(g: &FsmGraph, reqs: &RequirementSet, hit: &[bool]) -> bool {
    match (&reqs.criterion, &reqs.meta.anchors) {
        (Criterion::SimpleRoundTrip, Some(anchors)) => {
            let mut anchor_ok = vec![None; g.vertex_count()];
            for (a, &h) in anchors.iter().zip(hit) {
                let slot = anchor_ok[a.index()].get_or_insert(false);
                *slot |= h;
            }
            anchor_ok.iter().all(|s| s.unwrap_or(true))
        }
        _ => hit.iter().all(|&h| h),
    }
}

/// Whether path `t` covers requirement `r` under criterion `c`.
pub fn covers(g: &FsmGraph, t: &Path, r: &Requirement, c: &Criterion) -> bool {
    match r {
        Requirement::Vertex(v) => t.vertices(g).contains(v),
        Requirement::Edge(e) => t.edges().contains(e),
        Requirement::Path(p) => match c {
            Criterion::BoundaryInterior(depth) => {
                t.first_vertex(g) == p.first_vertex(g) && &class_representative(g, t, *depth) == p
            }
            _ => contains_subpath(t, p),
        },
        Requirement::Sequence(s) => {
            s.walk.is_empty() || (t.first_vertex(g) == g.start() && t.edges().starts_with(&s.walk))
        }
    }
}

fn check_basis(g: &FsmGraph, suite: &TestSuite, reqs: &RequirementSet) -> CoverageReport {
    let required = reqs.meta.cyclomatic.unwrap_or(reqs.items.len());
    let mut space = RowSpace::new();
    for t in suite.paths.iter().filter(|t| t.is_complete(g)) {
        space.insert(&t.edge_counts(g.edge_count()));
    }
    let rank = space.rank();
    let (covered, missing) = reqs.items.iter().cloned().partition(|r| {
        r.as_path()
            .is_some_and(|p| space.contains(&p.edge_counts(g.edge_count())))
    });
    CoverageReport {
        criterion: reqs.criterion.clone(),
        satisfied: rank >= required,
        covered,
        missing,
        rank: Some(rank),
        required: Some(required),
    }
}

/// Checks every criterion in order; failures are reported per entry.
pub fn check_all(g: &FsmGraph, suite: &TestSuite, criteria: &[Criterion]) -> Vec<Result<CoverageReport>> {
    criteria.iter().map(|c| check(g, suite, c)).collect()
}

/// Rank of the complete paths of `suite`, as used by basis-path checking.
pub fn complete_path_rank(g: &FsmGraph, suite: &TestSuite) -> usize {
    let mut space = RowSpace::new();
    for t in suite.paths.iter().filter(|t| t.is_complete(g)) {
        space.insert(&t.edge_counts(g.edge_count()));
    }
    space.rank()
}
