//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails. Every tolerance is a constant below.

use std::collections::{BTreeSet, HashSet};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use fsmcov_core::coverage::check;
use fsmcov_core::lab::{
    random_complete_path, run_table_verification, CellMode, CycleMode, MealySpec, RandomGraphSpec, Relation, Status,
    TableConfig, TableReport,
};
use fsmcov_core::requirements::{
    all_path_requirements, basis_paths, characterization_set, cyclomatic_number, n_switch_requirements, prime_paths,
    run_inputs, testing_tree,
};
use fsmcov_core::{fixtures, generate, minimize, Criterion, EdgeId, Error, FsmGraph, GenConfig, Path, TestSuite};

const FIXTURE_LIMIT: Duration = Duration::from_secs(1);
const PRIME_GRAPHS: usize = 300;
const PRIME_LIMIT: Duration = Duration::from_secs(60);
const EQUIV_PAIRS: usize = 500;
const TABLE_TRIALS: usize = 200;
const TABLE_SEED: u64 = 42;
const TABLE_LIMIT: Duration = Duration::from_secs(300);
const GEN_GRAPHS: usize = 100;
const GEN_LIMIT: Duration = Duration::from_secs(120);
const BASIS_GRAPHS: usize = 200;
const WMETHOD_MACHINES: usize = 100;
const NSC_GRAPHS: usize = 100;
const SEED: u64 = 20_240_601;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn p(g: &FsmGraph, s: &str) -> Path {
    Path::parse(g, &s.split('-').collect::<Vec<_>>()).unwrap()
}

fn suite(g: &FsmGraph, paths: &[&str]) -> TestSuite {
    TestSuite::new(paths.iter().map(|s| p(g, s)).collect())
}

fn missing(g: &FsmGraph, s: &TestSuite, c: &Criterion) -> BTreeSet<String> {
    check(g, s, c).unwrap().missing.iter().map(|m| m.display(g)).collect()
}

fn set(items: &[&str]) -> BTreeSet<String> {
    items.iter().map(|s| s.to_string()).collect()
}

fn rng(k: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED ^ k.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn fixture_fidelity() -> Outcome {
    let start = Instant::now();
    let mut fails = Vec::new();

    let g = fixtures::diamond();
    let s = suite(&g, &["a-b", "c-d"]);
    if !check(&g, &s, &Criterion::Edge).unwrap().satisfied {
        fails.push("diamond EC");
    }
    let epc = check(&g, &s, &Criterion::EdgePair).unwrap();
    if epc.satisfied || missing(&g, &s, &Criterion::EdgePair) != set(&["a-d", "c-b"]) {
        fails.push("diamond EPC");
    }

    let g = fixtures::triple();
    let all = ["a-c-e", "a-c-f", "a-d-e", "a-d-f", "b-c-e", "b-c-f", "b-d-e", "b-d-f"];
    let s = suite(&g, &all[1..]);
    if !check(&g, &s, &Criterion::EdgePair).unwrap().satisfied {
        fails.push("triple EPC");
    }
    if check(&g, &s, &Criterion::PrimePath).unwrap().satisfied
        || missing(&g, &s, &Criterion::PrimePath) != set(&["a-c-e"])
    {
        fails.push("triple PPC");
    }

    let g = fixtures::oneloop();
    let s = suite(&g, &["a-b", "a-c-d-b"]);
    let bpc = check(&g, &s, &Criterion::BasisPath).unwrap();
    if !bpc.satisfied || bpc.rank != Some(2) {
        fails.push("oneloop BPC");
    }
    let ppc = missing(&g, &s, &Criterion::PrimePath);
    if check(&g, &s, &Criterion::PrimePath).unwrap().satisfied || !ppc.contains("d-c") {
        fails.push("oneloop PPC");
    }

    let g = fixtures::selfloop();
    let primes: BTreeSet<String> = prime_paths(&g).unwrap().paths().map(|q| q.display(&g)).collect();
    if primes != set(&["a-b", "a-c", "d"]) {
        fails.push("selfloop primes");
    }

    let elapsed = start.elapsed();
    if elapsed > FIXTURE_LIMIT {
        fails.push("time");
    }
    outcome(
        fails.is_empty(),
        format!("4 fixtures, exact sets, {elapsed:.2?} (limit {FIXTURE_LIMIT:?}) {fails:?}"),
    )
}

/// Brute force: every simple path (vertices distinct, except that the last
/// may equal the first), minus every proper contiguous window of one.
fn oracle_primes(g: &FsmGraph) -> BTreeSet<Vec<EdgeId>> {
    let mut simple: Vec<Vec<EdgeId>> = Vec::new();
    fn dfs(g: &FsmGraph, first: usize, seen: &mut Vec<bool>, stack: &mut Vec<EdgeId>, out: &mut Vec<Vec<EdgeId>>) {
        let v = stack.last().map_or(first, |&e| g.target(e).index());
        if !stack.is_empty() {
            out.push(stack.clone());
            if v == first {
                return;
            }
        }
        for &e in g.outgoing(fsmcov_core::VertexId::from_index(v)) {
            let w = g.target(e).index();
            if w == first || !seen[w] {
                seen[w] = true;
                stack.push(e);
                dfs(g, first, seen, stack, out);
                stack.pop();
                if w != first {
                    seen[w] = false;
                }
            }
        }
    }
    for v in 0..g.vertex_count() {
        let mut seen = vec![false; g.vertex_count()];
        seen[v] = true;
        dfs(g, v, &mut seen, &mut Vec::new(), &mut simple);
    }
    let mut inner: HashSet<Vec<EdgeId>> = HashSet::new();
    for q in &simple {
        for len in 1..q.len() {
            for w in q.windows(len) {
                inner.insert(w.to_vec());
            }
        }
    }
    simple.into_iter().filter(|q| !inner.contains(q)).collect()
}

fn prime_oracle() -> Outcome {
    let start = Instant::now();
    let spec = RandomGraphSpec {
        min_vertices: 4,
        max_vertices: 7,
        max_out_degree: 3,
        parallel_edge_prob: 0.2,
        ..RandomGraphSpec::default()
    };
    let mut r = rng(2);
    let (mut bad, mut cyclic, mut parallel) = (0, 0, 0);
    for _ in 0..PRIME_GRAPHS {
        let g = spec.sample(&mut r).unwrap();
        cyclic += g.has_cycle() as usize;
        parallel += g.vertices().any(|v| {
            let t: Vec<_> = g.outgoing(v).iter().map(|&e| g.target(e)).collect();
            t.iter().collect::<HashSet<_>>().len() < t.len()
        }) as usize;
        let fast: BTreeSet<Vec<EdgeId>> = prime_paths(&g).unwrap().paths().map(|q| q.edges().to_vec()).collect();
        if fast != oracle_primes(&g) {
            bad += 1;
        }
    }
    let elapsed = start.elapsed();
    outcome(
        bad == 0 && elapsed <= PRIME_LIMIT,
        format!(
            "{PRIME_GRAPHS} graphs ({cyclic} cyclic, {parallel} with parallel edges), {bad} mismatches, {elapsed:.2?} (limit {PRIME_LIMIT:?})"
        ),
    )
}

fn random_suite(g: &FsmGraph, r: &mut ChaCha8Rng) -> TestSuite {
    let n = r.gen_range(1..=5);
    let paths = (0..n)
        .filter_map(|_| random_complete_path(g, r, 0.4, 3 * g.vertex_count()))
        .collect();
    TestSuite::new(paths)
}

fn equivalences() -> Outcome {
    let spec = RandomGraphSpec::default();
    let pairs = [
        (Criterion::Edge, Criterion::Branch),
        (Criterion::NSwitch(0), Criterion::Edge),
        (Criterion::NSwitch(1), Criterion::EdgePair),
    ];
    let mut details = Vec::new();
    let mut ok = true;
    for (k, (a, b)) in pairs.iter().enumerate() {
        let mut r = rng(30 + k as u64);
        let (mut differ, mut sat) = (0, 0);
        for i in 0..EQUIV_PAIRS {
            let g = spec.sample(&mut r).unwrap();
            // Every other suite starts from a generated one, so satisfied
            // verdicts are well represented.
            let s = if i % 2 == 0 {
                let mut s = generate(&g, a, &GenConfig::default()).unwrap();
                if r.gen_bool(0.5) && !s.is_empty() {
                    let drop = r.gen_range(0..s.len());
                    s.paths.remove(drop);
                }
                s
            } else {
                random_suite(&g, &mut r)
            };
            let va = check(&g, &s, a).unwrap().satisfied;
            let vb = check(&g, &s, b).unwrap().satisfied;
            sat += va as usize;
            differ += (va != vb) as usize;
        }
        ok &= differ == 0;
        details.push(format!("{a}/{b}: {differ} differ, {sat} satisfied"));
    }
    outcome(ok, format!("{EQUIV_PAIRS} pairs each; {}", details.join("; ")))
}

fn table_report() -> (TableReport, Duration) {
    let start = Instant::now();
    let report = run_table_verification(&TableConfig {
        trials: TABLE_TRIALS,
        seed: TABLE_SEED,
    })
    .unwrap();
    (report, start.elapsed())
}

fn table_check(report: &TableReport, elapsed: Duration) -> Outcome {
    let mut fails: Vec<String> = Vec::new();
    for cell in &report.cells {
        let c1 = fsmcov_core::lab::table_criterion(cell.row).unwrap();
        let c2 = fsmcov_core::lab::table_criterion(cell.col).unwrap();
        let recheck = |v: &fsmcov_core::lab::RelationVerdict, a: &Criterion, b: &Criterion| {
            v.witness.as_ref().is_some_and(|w| w.recheck(a, b).unwrap_or(false))
        };
        let name = format!("{}/{}", cell.row, cell.col);
        match cell.expected {
            Relation::S | Relation::E => {
                let dirs = std::iter::once(&cell.forward).chain(cell.reverse.as_ref());
                if cell.status != Status::Confirmed || dirs.clone().any(|v| v.violations > 0 || v.trials == v.skipped) {
                    fails.push(name);
                }
            }
            Relation::NS => {
                if cell.status != Status::Refuted || !recheck(&cell.forward, &c1, &c2) {
                    fails.push(name);
                }
            }
            Relation::I => {
                let rev = cell.reverse.as_ref();
                if cell.status != Status::Refuted
                    || !recheck(&cell.forward, &c1, &c2)
                    || !rev.is_some_and(|v| recheck(v, &c2, &c1))
                {
                    fails.push(name);
                }
            }
            Relation::N | Relation::IorS => {
                if cell.mode != CellMode::Explore {
                    fails.push(name);
                }
            }
        }
    }
    let q = &report.open_questions;
    let questions_ok = q.len() == 2 && q[0].contains("fix-twoloops") && q[1].contains("fix-wgraph");
    let ok = fails.is_empty() && report.contradictions() == 0 && questions_ok && elapsed <= TABLE_LIMIT;
    outcome(
        ok,
        format!(
            "{} cells, {} S/E confirmed, {} NS/I refuted, {} exploratory, {} contradictions, {} open questions, {elapsed:.2?} (limit {TABLE_LIMIT:?}) {fails:?}",
            report.cells.len(),
            report.count(CellMode::Verify, Status::Confirmed),
            report.count(CellMode::Refute, Status::Refuted),
            report.cells.iter().filter(|c| c.mode == CellMode::Explore).count(),
            report.contradictions(),
            q.len(),
        ),
    )
}

fn generation_criteria(g: &FsmGraph, r: &mut ChaCha8Rng) -> Vec<Criterion> {
    let mut out = vec![
        Criterion::Node,
        Criterion::Edge,
        Criterion::Branch,
        Criterion::EdgePair,
        Criterion::PrimePath,
        Criterion::SimpleRoundTrip,
        Criterion::CompleteRoundTrip,
        Criterion::BasisPath,
        Criterion::NSwitch(2),
        Criterion::BoundaryInterior(1),
    ];
    if !g.has_cycle() {
        out.push(Criterion::AllPaths);
    }
    if g.is_mealy() {
        out.push(Criterion::WMethod);
    }
    let specified: Vec<Path> = (0..2).filter_map(|_| random_complete_path(g, r, 0.5, 8)).collect();
    out.push(Criterion::SpecifiedPath(specified));
    out
}

fn generation_graph(i: usize, r: &mut ChaCha8Rng) -> FsmGraph {
    let spec = match i % 4 {
        0 => RandomGraphSpec {
            min_vertices: 3,
            max_vertices: 6,
            mealy: Some(MealySpec {
                min_inputs: 2,
                max_inputs: 3,
            }),
            ..RandomGraphSpec::default()
        },
        1 => RandomGraphSpec {
            cycles: CycleMode::Forbidden,
            ..RandomGraphSpec::default()
        },
        _ => RandomGraphSpec {
            max_vertices: 7,
            ..RandomGraphSpec::default()
        },
    };
    spec.sample(r).unwrap()
}

/// Returns the outcome and a JSON record of every generated suite.
fn generator_soundness() -> (Outcome, String) {
    let start = Instant::now();
    let mut r = rng(5);
    let (mut runs, mut bad, mut refused) = (0, Vec::new(), Vec::new());
    let mut record = Vec::new();
    let mut inapplicable_seen = false;
    for i in 0..GEN_GRAPHS {
        let g = generation_graph(i, &mut r);
        for c in generation_criteria(&g, &mut r) {
            runs += 1;
            match generate(&g, &c, &GenConfig::default()) {
                Ok(s) if check(&g, &s, &c).is_ok_and(|rep| rep.satisfied) => {
                    record.push(json!({"graph": i, "criterion": c.to_string(), "suite": s.to_value(&g)}));
                }
                Ok(_) => bad.push(format!("{i}:{c} unsatisfied")),
                // A refusal at a resource cap is reported, not a wrong suite.
                Err(Error::Resource(e)) => refused.push(format!("{i}:{c} {e}")),
                Err(e) => bad.push(format!("{i}:{c} {e}")),
            }
        }
        if g.has_cycle() && !inapplicable_seen {
            inapplicable_seen = matches!(
                generate(&g, &Criterion::AllPaths, &GenConfig::default()),
                Err(Error::CriterionInapplicable { .. })
            );
            if !inapplicable_seen {
                bad.push(format!("{i}: APC on a cyclic graph is not inapplicable"));
            }
        }
    }
    let elapsed = start.elapsed();
    let ok = bad.is_empty() && inapplicable_seen && elapsed <= GEN_LIMIT;
    (
        outcome(
            ok,
            format!(
                "{GEN_GRAPHS} graphs, {runs} generations, {} unsound, {} refused at resource caps {refused:?}, APC on cyclic inapplicable: {inapplicable_seen}, {elapsed:.2?} (limit {GEN_LIMIT:?}) {bad:?}",
                bad.len(),
                refused.len()
            ),
        ),
        serde_json::Value::Array(record).to_string(),
    )
}

fn rank(g: &FsmGraph, paths: &[&Path]) -> usize {
    let rows: Vec<Vec<i64>> = paths.iter().map(|q| q.edge_counts(g.edge_count())).collect();
    fsmcov_core::linalg::rank(&rows)
}

fn basis_rank_law() -> Outcome {
    let spec = RandomGraphSpec::default();
    let mut r = rng(6);
    let (mut bad, mut multi_end) = (0, 0);
    for _ in 0..BASIS_GRAPHS {
        let g = spec.sample(&mut r).unwrap();
        let ends = g.ends().len();
        multi_end += (ends > 1) as usize;
        // E - V + 2 on the graph with one extra sink joined to every end.
        let expected = (g.edge_count() + ends) - (g.vertex_count() + 1) + 2;
        let basis = basis_paths(&g).unwrap();
        let paths: Vec<&Path> = basis.paths().collect();
        let base_rank = rank(&g, &paths);
        let extra = random_complete_path(&g, &mut r, 0.3, 4 * g.vertex_count()).unwrap();
        let mut more = paths.clone();
        more.push(&extra);
        if paths.len() != expected
            || cyclomatic_number(&g) != expected
            || base_rank != expected
            || rank(&g, &more) > base_rank
        {
            bad += 1;
        }
    }
    outcome(
        bad == 0,
        format!("{BASIS_GRAPHS} graphs ({multi_end} with several ends), {bad} violations"),
    )
}

fn wmethod() -> Outcome {
    let spec = RandomGraphSpec {
        min_vertices: 3,
        max_vertices: 6,
        mealy: Some(MealySpec {
            min_inputs: 2,
            max_inputs: 3,
        }),
        ..RandomGraphSpec::default()
    };
    let mut r = rng(7);
    let (mut unseparated, mut bad_leaves) = (0, 0);
    for _ in 0..WMETHOD_MACHINES {
        let g = spec.sample(&mut r).unwrap();
        let w = characterization_set(&g).unwrap();
        for u in g.vertices() {
            for v in g.vertices().filter(|&v| v != u) {
                if !w.iter().any(|seq| run_inputs(&g, u, seq).0 != run_inputs(&g, v, seq).0) {
                    unseparated += 1;
                }
            }
        }
        let tree = testing_tree(&g);
        let leaves: HashSet<usize> = tree.leaves().collect();
        for (i, node) in tree.nodes.iter().enumerate() {
            let revisit = tree.nodes[..i].iter().any(|m| m.vertex == node.vertex);
            let sink = g.outgoing(node.vertex).is_empty();
            if leaves.contains(&i) != (revisit || sink) {
                bad_leaves += 1;
            }
        }
    }
    outcome(
        unseparated == 0 && bad_leaves == 0,
        format!("{WMETHOD_MACHINES} machines, {unseparated} unseparated pairs, {bad_leaves} misplaced leaves"),
    )
}

fn longest_path(g: &FsmGraph) -> usize {
    fn from(g: &FsmGraph, v: fsmcov_core::VertexId, memo: &mut Vec<Option<usize>>) -> usize {
        if let Some(d) = memo[v.index()] {
            return d;
        }
        let d = g
            .outgoing(v)
            .iter()
            .map(|&e| 1 + from(g, g.target(e), memo))
            .max()
            .unwrap_or(0);
        memo[v.index()] = Some(d);
        d
    }
    let mut memo = vec![None; g.vertex_count()];
    g.vertices().map(|v| from(g, v, &mut memo)).max().unwrap_or(0)
}

fn nsc_limits() -> Outcome {
    let dag = RandomGraphSpec {
        cycles: CycleMode::Forbidden,
        sink_ends: true,
        ..RandomGraphSpec::default()
    };
    let mut r = rng(8);
    let mut dag_bad = 0;
    for _ in 0..NSC_GRAPHS {
        let g = dag.sample(&mut r).unwrap();
        let m = longest_path(&g);
        let nsc: BTreeSet<Path> = n_switch_requirements(&g, m as u32 - 1)
            .unwrap()
            .paths()
            .cloned()
            .collect();
        let apc: BTreeSet<Path> = all_path_requirements(&g).unwrap().paths().cloned().collect();
        dag_bad += (nsc != apc) as usize;
    }

    let cyclic = RandomGraphSpec {
        min_vertices: 4,
        max_vertices: 6,
        max_out_degree: 2,
        cycles: CycleMode::Required,
        ..RandomGraphSpec::default()
    };
    let (mut cyc_bad, mut suites) = (0, 0);
    for _ in 0..NSC_GRAPHS {
        let g = cyclic.sample(&mut r).unwrap();
        let l = prime_paths(&g).unwrap().paths().map(Path::len).max().unwrap();
        let c = Criterion::NSwitch(l as u32 - 1);
        let base = generate(&g, &c, &GenConfig::default()).unwrap();
        let min = minimize(&g, &base, &c).unwrap();
        let mut padded = min.clone();
        padded.paths.extend(random_complete_path(&g, &mut r, 0.3, 12));
        for s in [base, min, padded] {
            if !check(&g, &s, &c).unwrap().satisfied {
                continue;
            }
            suites += 1;
            cyc_bad += !check(&g, &s, &Criterion::PrimePath).unwrap().satisfied as usize;
        }
    }
    outcome(
        dag_bad == 0 && cyc_bad == 0 && suites > 0,
        format!(
            "{NSC_GRAPHS} DAGs: {dag_bad} set mismatches with APC; {NSC_GRAPHS} cyclic graphs, {suites} NSC suites: {cyc_bad} fail PPC"
        ),
    )
}

fn main() {
    let mut failed = 0;
    let mut report = |id: u32, name: &str, o: Outcome| {
        println!("{} {id} {name}: {}", if o.ok { "PASS" } else { "FAIL" }, o.detail);
        failed += (!o.ok) as usize;
    };
    report(1, "fixture fidelity", fixture_fidelity());
    report(2, "prime-path oracle", prime_oracle());
    report(3, "equivalent criteria", equivalences());
    let (table, elapsed) = table_report();
    report(4, "relation table", table_check(&table, elapsed));
    let (gen, gen_json) = generator_soundness();
    report(5, "generator soundness", gen);
    report(6, "basis rank law", basis_rank_law());
    report(7, "w-method separation", wmethod());
    report(8, "n-switch limits", nsc_limits());

    let (table_again, _) = table_report();
    let (_, gen_json_again) = generator_soundness();
    let same_table = table.to_json() == table_again.to_json();
    let same_gen = gen_json == gen_json_again;
    report(
        9,
        "determinism",
        outcome(
            same_table && same_gen,
            format!(
                "table JSON identical: {same_table} ({} bytes), generator JSON identical: {same_gen} ({} bytes)",
                table.to_json().len(),
                gen_json.len()
            ),
        ),
    );

    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
