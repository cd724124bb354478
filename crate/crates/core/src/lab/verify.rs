use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::sampler::{random_complete_path, CycleMode, MealySpec, RandomGraphSpec};
use super::table::{table_criterion, Relation, RelationTable, TABLE_CODES};
use super::witness::{describe_missing, explicit_witnesses, open_questions, satisfies, search_graphs, Witness};
use crate::criterion::Criterion;
use crate::error::Result;
use crate::generate::{generate, minimize, GenConfig};
use crate::graph::FsmGraph;
use crate::path::TestSuite;
use crate::requirements::Limits;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    /// No violation in any trial. Evidence, not proof.
    Confirmed,
    /// A stored witness shows the implication fails.
    Refuted,
    /// Neither: no effective trials, or no witness found.
    Inconclusive,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Confirmed => "confirmed",
            Status::Refuted => "refuted",
            Status::Inconclusive => "inconclusive",
        }
    }
}

/// Result of testing "every suite satisfying `c1` satisfies `c2`".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationVerdict {
    pub c1: Criterion,
    pub c2: Criterion,
    pub status: Status,
    /// Random trials run.
    pub trials: usize,
    /// Trials that produced no usable graph or suite (resource caps,
    /// unsatisfiable anchoring).
    pub skipped: usize,
    pub violations: usize,
    pub witness: Option<Witness>,
}

impl RelationVerdict {
    fn new(c1: &Criterion, c2: &Criterion) -> Self {
        RelationVerdict {
            c1: c1.clone(),
            c2: c2.clone(),
            status: Status::Inconclusive,
            trials: 0,
            skipped: 0,
            violations: 0,
            witness: None,
        }
    }

    pub fn to_value(&self) -> Value {
        let mut v = json!({
            "pair": [self.c1.to_string(), self.c2.to_string()],
            "status": self.status.as_str(),
            "trials": self.trials,
            "skipped": self.skipped,
            "violations": self.violations,
        });
        if let Some(w) = &self.witness {
            v["witness"] = w.to_value();
        }
        v
    }
}

/// Stateless 64-bit mixer (splitmix64 finalizer) for per-trial seeds.
pub fn mix(seed: u64, k: u64) -> u64 {
    let mut z = seed ^ k.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Graph distribution suited to a criterion pair: acyclic with sink-only
/// end vertices when all-path coverage is involved, Mealy-labelled for the
/// W-method, cyclic for round trips, and smaller graphs for
/// boundary-interior coverage.
pub fn pair_spec(c1: &Criterion, c2: &Criterion) -> RandomGraphSpec {
    let involves = |code: &str| c1.code() == code || c2.code() == code;
    let mut spec = RandomGraphSpec::default();
    if involves("APC") {
        spec.cycles = CycleMode::Forbidden;
        spec.sink_ends = true;
    } else if involves("SRTC") || involves("CRTC") {
        spec.cycles = CycleMode::Required;
    }
    if involves("BIC") {
        spec.max_vertices = 6;
        spec.max_out_degree = 2;
    }
    if involves("WMC") {
        spec.min_vertices = 3;
        spec.max_vertices = 6;
        spec.mealy = Some(MealySpec {
            min_inputs: 2,
            max_inputs: 3,
        });
    }
    spec
}

fn lab_config() -> GenConfig {
    GenConfig {
        max_paths: 2_000,
        limits: Limits {
            max_simple_paths: 20_000,
            max_walks: 50_000,
            max_paths: 5_000,
            max_cycles: 500,
        },
        ..GenConfig::default()
    }
}

enum Outcome {
    Skipped,
    Holds,
    Violation(Box<(FsmGraph, TestSuite)>),
}

/// `Some(true)` when `suite` meets `c1` but not `c2`; `None` on errors.
fn is_counterexample(g: &FsmGraph, suite: &TestSuite, c1: &Criterion, c2: &Criterion) -> Option<bool> {
    if !satisfies(g, suite, c1).ok()? {
        return None;
    }
    Some(!satisfies(g, suite, c2).ok()?)
}

fn witness(source: &str, origin: String, g: FsmGraph, suite: TestSuite, c2: &Criterion) -> Witness {
    let suite = suite.canonical();
    let missing = describe_missing(&g, &suite, c2);
    Witness {
        source: source.to_owned(),
        origin,
        graph: g,
        suite,
        missing,
    }
}

/// c1 suites built by the generator on each search graph: minimized first,
/// then as generated.
fn fixture_candidates(c1: &Criterion) -> Vec<(String, FsmGraph, TestSuite)> {
    let cfg = lab_config();
    let mut out = Vec::new();
    for (name, g) in search_graphs() {
        let Ok(base) = generate(&g, c1, &cfg) else { continue };
        if let Ok(min) = minimize(&g, &base, c1) {
            out.push((name.clone(), g.clone(), min));
        }
        out.push((name, g, base));
    }
    out
}

fn verify_trial(c1: &Criterion, c2: &Criterion, spec: &RandomGraphSpec, seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let Ok(g) = spec.sample(&mut rng) else {
        return Outcome::Skipped;
    };
    let Ok(base) = generate(&g, c1, &lab_config()) else {
        return Outcome::Skipped;
    };
    let suite = match rng.gen_range(0..3) {
        0 => base,
        1 => match minimize(&g, &base, c1) {
            Ok(s) => s,
            Err(_) => return Outcome::Skipped,
        },
        _ => {
            let mut s = base;
            for _ in 0..rng.gen_range(1..=3) {
                if let Some(p) = random_complete_path(&g, &mut rng, 0.3, 4 * g.vertex_count()) {
                    s.paths.push(p);
                }
            }
            s
        }
    };
    match is_counterexample(&g, &suite, c1, c2) {
        None => Outcome::Skipped,
        Some(false) => Outcome::Holds,
        Some(true) => Outcome::Violation(Box::new((g, suite))),
    }
}

/// Randomized implication trials: generated suites satisfying `c1`, used
/// as they are, minimized, or padded with random complete paths, are
/// checked against `c2`. Hand-built witnesses and the search graphs are
/// checked first, those outside the family `spec` describes skipped.
pub fn verify_subsumes(
    c1: &Criterion,
    c2: &Criterion,
    spec: &RandomGraphSpec,
    trials: usize,
    seed: u64,
) -> RelationVerdict {
    let mut v = RelationVerdict::new(c1, c2);
    let seeded = explicit_witnesses(c1, c2)
        .into_iter()
        .map(|(n, g, s)| ("explicit", n, g, s))
        .chain(fixture_candidates(c1).into_iter().map(|(n, g, s)| ("fixture", n, g, s)))
        .filter(|(_, _, g, _)| spec.admits(g));
    for (source, name, g, suite) in seeded {
        if is_counterexample(&g, &suite, c1, c2) == Some(true) {
            v.violations += 1;
            v.witness.get_or_insert_with(|| witness(source, name, g, suite, c2));
        }
    }
    for i in 0..trials {
        v.trials += 1;
        match verify_trial(c1, c2, spec, mix(seed, i as u64)) {
            Outcome::Skipped => v.skipped += 1,
            Outcome::Holds => {}
            Outcome::Violation(found) => {
                let (g, suite) = *found;
                v.violations += 1;
                v.witness
                    .get_or_insert_with(|| witness("search", format!("trial {i}"), g, suite, c2));
            }
        }
    }
    v.status = if v.violations > 0 {
        Status::Refuted
    } else if v.trials > v.skipped {
        Status::Confirmed
    } else {
        Status::Inconclusive
    };
    v
}

/// Looks for a suite satisfying `c1` but not `c2`: hand-built witnesses,
/// then generated suites on the search graphs, then up to `budget` random
/// graphs. Stops at the first witness.
pub fn search_counterexample(
    c1: &Criterion,
    c2: &Criterion,
    spec: &RandomGraphSpec,
    budget: usize,
    seed: u64,
) -> RelationVerdict {
    let mut v = RelationVerdict::new(c1, c2);
    let found = |v: &mut RelationVerdict, w: Witness| {
        v.violations = 1;
        v.witness = Some(w);
        v.status = Status::Refuted;
    };
    for (name, g, suite) in explicit_witnesses(c1, c2) {
        if is_counterexample(&g, &suite, c1, c2) == Some(true) {
            found(&mut v, witness("explicit", name, g, suite, c2));
            return v;
        }
    }
    for (name, g, suite) in fixture_candidates(c1) {
        if is_counterexample(&g, &suite, c1, c2) == Some(true) {
            found(&mut v, witness("fixture", name, g, suite, c2));
            return v;
        }
    }
    let cfg = lab_config();
    for i in 0..budget {
        v.trials += 1;
        let mut rng = ChaCha8Rng::seed_from_u64(mix(seed, i as u64));
        let Ok(g) = spec.sample(&mut rng) else {
            v.skipped += 1;
            continue;
        };
        let Ok(base) = generate(&g, c1, &cfg) else {
            v.skipped += 1;
            continue;
        };
        let min = minimize(&g, &base, c1).unwrap_or_else(|_| base.clone());
        for suite in [min, base] {
            if is_counterexample(&g, &suite, c1, c2) == Some(true) {
                found(&mut v, witness("search", format!("trial {i}"), g, suite, c2));
                return v;
            }
        }
    }
    v
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellMode {
    /// S and E cells: implication trials.
    Verify,
    /// NS and I cells: counterexample search.
    Refute,
    /// N and IorS cells: search reported without a pass/fail reading.
    Explore,
}

impl CellMode {
    pub fn as_str(self) -> &'static str {
        match self {
            CellMode::Verify => "verify",
            CellMode::Refute => "refute",
            CellMode::Explore => "explore",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellReport {
    pub row: &'static str,
    pub col: &'static str,
    pub expected: Relation,
    pub mode: CellMode,
    pub status: Status,
    /// Row against column.
    pub forward: RelationVerdict,
    /// Column against row, for E and I cells.
    pub reverse: Option<RelationVerdict>,
}

impl CellReport {
    /// An S or E cell with a violation.
    pub fn is_contradiction(&self) -> bool {
        self.mode == CellMode::Verify && self.status == Status::Refuted
    }

    pub fn is_unresolved(&self) -> bool {
        self.mode != CellMode::Explore && self.status == Status::Inconclusive
    }

    pub fn to_value(&self) -> Value {
        let mut v = json!({
            "pair": [self.row, self.col],
            "expected": self.expected.as_str(),
            "mode": self.mode.as_str(),
            "status": self.status.as_str(),
            "trials": self.forward.trials,
            "skipped": self.forward.skipped,
            "violations": self.forward.violations,
        });
        if let Some(w) = &self.forward.witness {
            v["witness"] = w.to_value();
        }
        if let Some(r) = &self.reverse {
            v["reverse"] = r.to_value();
        }
        v
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableConfig {
    pub trials: usize,
    pub seed: u64,
}

impl Default for TableConfig {
    fn default() -> Self {
        TableConfig { trials: 200, seed: 42 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableReport {
    pub config: TableConfig,
    pub cells: Vec<CellReport>,
    pub open_questions: Vec<String>,
}

impl TableReport {
    pub fn contradictions(&self) -> usize {
        self.cells.iter().filter(|c| c.is_contradiction()).count()
    }

    pub fn unresolved(&self) -> usize {
        self.cells.iter().filter(|c| c.is_unresolved()).count()
    }

    pub fn count(&self, mode: CellMode, status: Status) -> usize {
        self.cells
            .iter()
            .filter(|c| c.mode == mode && c.status == status)
            .count()
    }

    pub fn cell(&self, row: &str, col: &str) -> Option<&CellReport> {
        self.cells.iter().find(|c| c.row == row && c.col == col)
    }

    pub fn to_value(&self) -> Value {
        let decided = |s| {
            self.cells
                .iter()
                .filter(|c| c.mode != CellMode::Explore && c.status == s)
                .count()
        };
        json!({
            "seed": self.config.seed,
            "trials": self.config.trials,
            "cells": self.cells.iter().map(CellReport::to_value).collect::<Vec<_>>(),
            "summary": {
                "cells": self.cells.len(),
                "confirmed": decided(Status::Confirmed),
                "refuted": decided(Status::Refuted),
                "inconclusive": decided(Status::Inconclusive),
                "exploratory": self.cells.iter().filter(|c| c.mode == CellMode::Explore).count(),
                "exploratory_refuted": self.count(CellMode::Explore, Status::Refuted),
                "contradictions": self.contradictions(),
                "unresolved": self.unresolved(),
            },
            "open_questions": self.open_questions,
        })
    }

    pub fn to_json(&self) -> String {
        self.to_value().to_string()
    }
}

fn run_cell(index: usize, row: usize, col: usize, expected: Relation, cfg: &TableConfig) -> Result<CellReport> {
    let c1 = table_criterion(TABLE_CODES[row])?;
    let c2 = table_criterion(TABLE_CODES[col])?;
    let spec = pair_spec(&c1, &c2);
    let fwd_seed = mix(cfg.seed, 2 * index as u64);
    let rev_seed = mix(cfg.seed, 2 * index as u64 + 1);
    let (mode, forward, reverse) = match expected {
        Relation::S => (
            CellMode::Verify,
            verify_subsumes(&c1, &c2, &spec, cfg.trials, fwd_seed),
            None,
        ),
        Relation::E => (
            CellMode::Verify,
            verify_subsumes(&c1, &c2, &spec, cfg.trials, fwd_seed),
            Some(verify_subsumes(&c2, &c1, &spec, cfg.trials, rev_seed)),
        ),
        Relation::NS => (
            CellMode::Refute,
            search_counterexample(&c1, &c2, &spec, cfg.trials, fwd_seed),
            None,
        ),
        Relation::I => (
            CellMode::Refute,
            search_counterexample(&c1, &c2, &spec, cfg.trials, fwd_seed),
            Some(search_counterexample(&c2, &c1, &spec, cfg.trials, rev_seed)),
        ),
        Relation::N | Relation::IorS => (
            CellMode::Explore,
            search_counterexample(&c1, &c2, &spec, cfg.trials, fwd_seed),
            None,
        ),
    };
    let statuses: Vec<Status> = std::iter::once(forward.status)
        .chain(reverse.as_ref().map(|r| r.status))
        .collect();
    let status = match mode {
        CellMode::Verify if statuses.contains(&Status::Refuted) => Status::Refuted,
        CellMode::Verify | CellMode::Refute if statuses.iter().all(|&s| s == statuses[0]) => statuses[0],
        CellMode::Verify | CellMode::Refute => Status::Inconclusive,
        CellMode::Explore => forward.status,
    };
    Ok(CellReport {
        row: TABLE_CODES[row],
        col: TABLE_CODES[col],
        expected,
        mode,
        status,
        forward,
        reverse,
    })
}

/// Runs every non-empty cell of the relation table. Cells run in parallel;
/// each derives its seeds from the master seed and its position, so the
/// report is identical across runs and thread counts.
pub fn run_table_verification(cfg: &TableConfig) -> Result<TableReport> {
    let cells = RelationTable::new().cells();
    let reports = cells
        .par_iter()
        .map(|&(r, c, e)| run_cell(r * TABLE_CODES.len() + c, r, c, e, cfg))
        .collect::<Result<Vec<_>>>()?;
    Ok(TableReport {
        config: *cfg,
        cells: reports,
        open_questions: open_questions(),
    })
}
