//! Suite generation and greedy minimization.

use std::collections::BTreeSet;

use crate::coverage::{applicable_requirements, check_against, check_with_limits, covers, satisfied_by, Coverer};
use crate::criterion::Criterion;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, FsmGraph, VertexId};
use crate::path::{Path, TestSuite};
use crate::requirements::{Limits, Requirement, RequirementKind, RequirementSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenConfig {
    /// Every generated path starts at the start vertex.
    pub anchor_start: bool,
    /// Every generated path ends in an end vertex. `None` means "when the
    /// graph has end vertices".
    pub anchor_end: Option<bool>,
    /// Kept for reproducibility records. Generation is deterministic and
    /// does not draw from it.
    pub seed: u64,
    pub max_paths: usize,
    pub limits: Limits,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            anchor_start: true,
            anchor_end: None,
            seed: 0,
            max_paths: 200_000,
            limits: Limits::default(),
        }
    }
}

impl GenConfig {
    pub fn anchor_end_for(&self, g: &FsmGraph) -> bool {
        self.anchor_end.unwrap_or(!g.ends().is_empty())
    }
}

struct Stitcher<'a> {
    g: &'a FsmGraph,
    anchor_start: bool,
    anchor_end: bool,
    ends: Vec<bool>,
}

impl Stitcher<'_> {
    fn unsatisfiable(&self, what: &str) -> Error {
        Error::Unsatisfiable(what.to_owned())
    }

    fn prefix(&self, head: VertexId, what: &str) -> Result<Vec<EdgeId>> {
        if !self.anchor_start {
            return Ok(Vec::new());
        }
        self.g
            .shortest_path(self.g.start(), head)
            .ok_or_else(|| self.unsatisfiable(&format!("{what} is unreachable from the start vertex")))
    }

    fn suffix(&self, tail: VertexId, what: &str) -> Result<Vec<EdgeId>> {
        if !self.anchor_end {
            return Ok(Vec::new());
        }
        self.g
            .shortest_path_to(tail, &self.ends)
            .ok_or_else(|| self.unsatisfiable(&format!("no end vertex is reachable from {what}")))
    }

    fn around(&self, core: &[EdgeId], what: &str) -> Result<Path> {
        let g = self.g;
        let mut edges = self.prefix(g.source(core[0]), what)?;
        edges.extend_from_slice(core);
        edges.extend(self.suffix(g.target(*core.last().expect("non-empty")), what)?);
        Ok(Path::from_edges(edges))
    }

    fn through_vertex(&self, v: VertexId) -> Result<Path> {
        let g = self.g;
        let what = format!("vertex `{}`", g.vertex_name(v));
        let mut edges = self.prefix(v, &what)?;
        edges.extend(self.suffix(v, &what)?);
        if !edges.is_empty() {
            return Ok(Path::from_edges(edges));
        }
        // Both anchors are satisfied at `v` itself, or neither applies: use
        // one incident edge and repair the anchors around it.
        let candidates = g.outgoing(v).iter().chain(g.incoming(v)).copied();
        let mut last_err = self.unsatisfiable(&format!("{what} has no incident edge"));
        for e in candidates {
            match self.around(&[e], &what) {
                Ok(p) => return Ok(p),
                Err(err) => last_err = err,
            }
        }
        Err(last_err)
    }

    fn embed(&self, r: &Requirement) -> Result<Path> {
        let g = self.g;
        match r {
            Requirement::Vertex(v) => self.through_vertex(*v),
            Requirement::Edge(e) => self.around(&[*e], &format!("edge `{}`", g.edge_name(*e))),
            Requirement::Path(p) => self.around(p.edges(), &format!("path {}", p.display(g))),
            Requirement::Sequence(s) => {
                // Walks already start at the start vertex.
                let mut edges = s.walk.clone();
                let tail = edges.last().map_or(g.start(), |&e| g.target(e));
                if let Ok(extra) = self.suffix(tail, "walk") {
                    edges.extend(extra);
                }
                if edges.is_empty() {
                    return Err(self.unsatisfiable("empty walk"));
                }
                Ok(Path::from_edges(edges))
            }
        }
    }
}

fn req_len(r: &Requirement) -> usize {
    match r {
        Requirement::Vertex(_) => 0,
        Requirement::Edge(_) => 1,
        Requirement::Path(p) => p.len(),
        Requirement::Sequence(s) => s.walk.len(),
    }
}

fn push_path(out: &mut Vec<Path>, seen: &mut BTreeSet<Path>, p: Path, cap: usize) -> Result<()> {
    if seen.insert(p.clone()) {
        if out.len() >= cap {
            return Err(Error::Resource(format!("more than {cap} generated paths")));
        }
        out.push(p);
    }
    Ok(())
}

/// Builds a suite satisfying `c` on `g`.
///
/// Requirements are taken longest first and each uncovered one is embedded
/// in a walk: the shortest path from the start vertex to its head (when
/// anchoring at the start), the requirement itself, and the shortest path
/// to the nearest end vertex (when anchoring at the end). Requirements
/// covered along the way are marked off. Basis, all-path and
/// boundary-interior items are complete paths already and are emitted
/// directly; W-method items emit their walks.
pub fn generate(g: &FsmGraph, c: &Criterion, cfg: &GenConfig) -> Result<TestSuite> {
    let reqs = applicable_requirements(g, c, &cfg.limits)?;
    let suite = generate_from(g, &reqs, cfg)?;
    let report = check_against(g, &suite, &reqs);
    if !report.satisfied {
        return Err(Error::Unsatisfiable(format!(
            "{} requirement(s) of {c} could not be covered",
            report.missing.len()
        )));
    }
    Ok(suite)
}

pub(crate) fn generate_from(g: &FsmGraph, reqs: &RequirementSet, cfg: &GenConfig) -> Result<TestSuite> {
    let stitch = Stitcher {
        g,
        anchor_start: cfg.anchor_start,
        anchor_end: cfg.anchor_end_for(g),
        ends: g.end_mask().to_vec(),
    };
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    let cap = cfg.max_paths.max(1);

    match &reqs.criterion {
        Criterion::BasisPath | Criterion::AllPaths | Criterion::BoundaryInterior(_) => {
            for p in reqs.paths() {
                push_path(&mut out, &mut seen, p.clone(), cap)?;
            }
            return Ok(TestSuite::new(out));
        }
        Criterion::WMethod => {
            for r in &reqs.items {
                if let Requirement::Sequence(s) = r {
                    if s.walk.is_empty() {
                        continue;
                    }
                    push_path(&mut out, &mut seen, stitch.embed(r)?, cap)?;
                }
            }
            return Ok(TestSuite::new(out));
        }
        _ => {}
    }

    let mut order: Vec<usize> = (0..reqs.items.len()).collect();
    order.sort_by(|&a, &b| req_len(&reqs.items[b]).cmp(&req_len(&reqs.items[a])).then(a.cmp(&b)));
    let mut done = vec![false; reqs.items.len()];

    // Simple round trips need one covered cycle per anchor vertex.
    let anchors = match (&reqs.criterion, &reqs.meta.anchors) {
        (Criterion::SimpleRoundTrip, Some(a)) => Some(a.clone()),
        _ => None,
    };
    let mut anchor_done = vec![false; g.vertex_count()];

    for &i in &order {
        if done[i] {
            continue;
        }
        if let Some(a) = &anchors {
            if anchor_done[a[i].index()] {
                continue;
            }
        }
        let walk = stitch.embed(&reqs.items[i])?;
        for (j, r) in reqs.items.iter().enumerate() {
            if !done[j] && covers(g, &walk, r, &reqs.criterion) {
                done[j] = true;
                if let Some(a) = &anchors {
                    anchor_done[a[j].index()] = true;
                }
            }
        }
        push_path(&mut out, &mut seen, walk, cap)?;
    }
    Ok(TestSuite::new(out))
}

/// Drops paths while `c` stays satisfied, scanning the canonical order
/// repeatedly until nothing can be removed. A suite that does not satisfy
/// `c` comes back deduplicated but otherwise unchanged.
pub fn minimize(g: &FsmGraph, suite: &TestSuite, c: &Criterion) -> Result<TestSuite> {
    let limits = Limits::default();
    let mut current = suite.canonical();
    if !check_with_limits(g, &current, c, &limits)?.satisfied {
        return Ok(current);
    }
    let reqs = applicable_requirements(g, c, &limits)?;
    if reqs.kind == RequirementKind::Basis {
        return Ok(minimize_by_check(g, current, &reqs));
    }
    // Per-path coverage is computed once; removals only adjust counts.
    let coverer = Coverer::new(g, &reqs);
    let mut cover: Vec<Vec<usize>> = current.paths.iter().map(|t| coverer.items(t)).collect();
    let mut counts = vec![0usize; reqs.items.len()];
    for &i in cover.iter().flatten() {
        counts[i] += 1;
    }
    loop {
        let mut changed = false;
        let mut j = 0;
        while j < current.paths.len() {
            for &i in &cover[j] {
                counts[i] -= 1;
            }
            let hit: Vec<bool> = counts.iter().map(|&n| n > 0).collect();
            if satisfied_by(g, &reqs, &hit) {
                current.paths.remove(j);
                cover.remove(j);
                changed = true;
            } else {
                for &i in &cover[j] {
                    counts[i] += 1;
                }
                j += 1;
            }
        }
        if !changed {
            return Ok(current);
        }
    }
}

fn minimize_by_check(g: &FsmGraph, mut current: TestSuite, reqs: &RequirementSet) -> TestSuite {
    loop {
        let mut changed = false;
        let mut i = 0;
        while i < current.paths.len() {
            let mut trial = current.clone();
            trial.paths.remove(i);
            if check_against(g, &trial, reqs).satisfied {
                current = trial;
                changed = true;
            } else {
                i += 1;
            }
        }
        if !changed {
            return current;
        }
    }
}
