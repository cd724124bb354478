use std::fs;
use std::io::{self, Write};
use std::path::{Path as FsPath, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use fsmcov_core::lab::{
    expected_relation, pair_spec, run_table_verification, verify_subsumes, CellMode, RelationVerdict, Status,
    TableConfig, TableReport, TABLE_CODES,
};
use fsmcov_core::{
    check, fixtures, generate, graph_to_json, minimize, parse_graph_dot, parse_graph_json, requirements, Criterion,
    Error, FsmGraph, GenConfig, Path, RequirementSet, TestSuite,
};

const CRITERION_HELP: &str = "\
Criterion spec, `name[:param]`:
  nc, ec, bc, epc, ppc, apc, srtc, crtc, bpc, wmc   no parameter
  nsc:N        N-switch coverage (nsc:0 = ec, nsc:1 = epc)
  bic[:D]      boundary-interior coverage, loops repeated at most D times (default 1)
  spc:@FILE    specified paths from a suite JSON file {\"paths\": [[\"a\",\"b\"], ...]}
  spc:a-b,c-d  specified paths given inline";

/// Coverage criteria for state-machine test suites.
///
/// Exit codes: 0 ok or satisfied, 1 not satisfied, 2 input error,
/// 3 criterion inapplicable or unsatisfiable, 4 resource limit hit.
#[derive(Debug, Parser)]
#[command(name = "fsmcov", version, about, long_about = None, after_help = CRITERION_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the test requirements of a criterion.
    Requirements {
        #[command(flatten)]
        target: Target,
    },
    /// Check a suite against a criterion; exit 1 when not satisfied.
    Check {
        #[command(flatten)]
        target: Target,
        /// Suite JSON file, `{"paths": [["a", "b"], ...]}`.
        #[arg(long)]
        suite: PathBuf,
    },
    /// Generate a suite satisfying a criterion.
    Generate {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        gen: GenArgs,
    },
    /// Drop redundant paths from a suite while keeping the criterion met.
    Minimize {
        #[command(flatten)]
        target: Target,
        /// Suite JSON file, `{"paths": [["a", "b"], ...]}`.
        #[arg(long)]
        suite: PathBuf,
    },
    /// Test whether every suite meeting C1 also meets C2.
    Subsume {
        c1: String,
        c2: String,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Verify the whole relation table between the compared criteria.
    Table {
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Dump the named fixture graphs, or write them as `<name>.json` files.
    Fixtures {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct Target {
    /// Graph file, JSON or DOT (`.dot`/`.gv`).
    #[arg(long)]
    graph: PathBuf,
    /// Criterion spec; see below.
    #[arg(long)]
    criterion: String,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 200_000)]
    max_paths: usize,
    #[arg(long, action = clap::ArgAction::Set, default_value_t = true)]
    anchor_start: bool,
    /// Defaults to true when the graph has end vertices.
    #[arg(long, action = clap::ArgAction::Set)]
    anchor_end: Option<bool>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = io::stdout().lock();
    match run(&cli, &mut out).and_then(|code| Ok(out.flush().map(|_| code)?)) {
        Ok(code) => ExitCode::from(code),
        // The reader went away, e.g. `fsmcov ... | head`.
        Err(e) if is_broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.downcast_ref::<io::Error>()
        .is_some_and(|e| e.kind() == io::ErrorKind::BrokenPipe)
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(
            Error::CriterionInapplicable { .. }
            | Error::CyclicGraph
            | Error::MealyLabelsMissing
            | Error::IndistinguishableStates(..)
            | Error::Unsatisfiable(_),
        ) => 3,
        Some(Error::Resource(_)) => 4,
        _ => 2,
    }
}

fn color() -> bool {
    std::env::var("FSMCOV_COLOR").is_ok_and(|v| v == "1")
}

fn paint(text: &str, good: bool) -> String {
    if color() {
        let code = if good { 32 } else { 31 };
        format!("\x1b[{code}m{text}\x1b[0m")
    } else {
        text.to_owned()
    }
}

fn load_graph(path: &FsPath) -> anyhow::Result<FsmGraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let dot = matches!(path.extension().and_then(|e| e.to_str()), Some("dot" | "gv"))
        || text.trim_start().starts_with("digraph");
    let g = if dot {
        parse_graph_dot(&text)?
    } else {
        parse_graph_json(&text)?
    };
    for w in g.warnings() {
        eprintln!("warning: {w}");
    }
    Ok(g)
}

fn load_suite(g: &FsmGraph, path: &FsPath) -> anyhow::Result<TestSuite> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(TestSuite::parse_json(g, &text)?)
}

/// Parses `name[:param]`. Specified-path lists need the graph to resolve
/// edge names.
fn parse_criterion(spec: &str, g: Option<&FsmGraph>) -> anyhow::Result<Criterion> {
    let (name, param) = match spec.split_once(':') {
        Some((n, p)) => (n, Some(p)),
        None => (spec, None),
    };
    let bad = |msg: &str| Error::Config(format!("criterion `{spec}`: {msg}"));
    let c = match (name.to_ascii_lowercase().as_str(), param) {
        ("nsc", Some(n)) => Criterion::NSwitch(n.parse().map_err(|_| bad("N must be a non-negative integer"))?),
        ("bic", Some(d)) => {
            Criterion::BoundaryInterior(d.parse().map_err(|_| bad("depth must be a non-negative integer"))?)
        }
        ("spc", Some(list)) => {
            let g = g.ok_or_else(|| bad("specified paths need a graph"))?;
            let suite = match list.strip_prefix('@') {
                Some(file) => load_suite(g, FsPath::new(file))?,
                None => {
                    let paths = list
                        .split(',')
                        .map(|p| Path::parse(g, &p.split('-').collect::<Vec<_>>()))
                        .collect::<Result<Vec<_>, _>>()?;
                    TestSuite::new(paths)
                }
            };
            Criterion::SpecifiedPath(suite.paths)
        }
        (_, Some(_)) => return Err(bad("this criterion takes no parameter").into()),
        (n, None) => Criterion::from_code(n)?,
    };
    Ok(c)
}

fn print_json(w: &mut dyn Write, v: &Value) -> io::Result<()> {
    writeln!(w, "{v}")
}

fn run(cli: &Cli, w: &mut dyn Write) -> anyhow::Result<u8> {
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::Requirements { target } => {
            let g = load_graph(&target.graph)?;
            let c = parse_criterion(&target.criterion, Some(&g))?;
            let set = requirements(&g, &c)?;
            if json {
                writeln!(w, "{}", set.to_json(&g))?;
            } else {
                print_requirements(w, &g, &c, &set)?;
            }
            Ok(0)
        }
        Command::Check { target, suite } => {
            let g = load_graph(&target.graph)?;
            let c = parse_criterion(&target.criterion, Some(&g))?;
            let suite = load_suite(&g, suite)?;
            let report = check(&g, &suite, &c)?;
            if json {
                writeln!(w, "{}", report.to_json(&g))?;
            } else {
                let verdict = if report.satisfied { "satisfied" } else { "not satisfied" };
                writeln!(
                    w,
                    "{}: {} ({})",
                    c,
                    paint(verdict, report.satisfied),
                    report.ratio_string()
                )?;
                if let (Some(rank), Some(req)) = (report.rank, report.required) {
                    writeln!(w, "  rank {rank} of {req}")?;
                }
                for m in &report.missing {
                    writeln!(w, "  missing {}", m.display(&g))?;
                }
            }
            Ok(if report.satisfied { 0 } else { 1 })
        }
        Command::Generate { target, gen } => {
            let g = load_graph(&target.graph)?;
            let c = parse_criterion(&target.criterion, Some(&g))?;
            let cfg = GenConfig {
                anchor_start: gen.anchor_start,
                anchor_end: gen.anchor_end,
                seed: gen.seed,
                max_paths: gen.max_paths,
                ..GenConfig::default()
            };
            let suite = generate(&g, &c, &cfg)?;
            print_suite(w, &g, &suite, json)?;
            Ok(0)
        }
        Command::Minimize { target, suite } => {
            let g = load_graph(&target.graph)?;
            let c = parse_criterion(&target.criterion, Some(&g))?;
            let suite = load_suite(&g, suite)?;
            let min = minimize(&g, &suite, &c)?;
            print_suite(w, &g, &min, json)?;
            Ok(0)
        }
        Command::Subsume { c1, c2, trials, seed } => {
            let c1 = parse_criterion(c1, None)?;
            let c2 = parse_criterion(c2, None)?;
            let expected = expected_relation(&c1, &c2).ok();
            let verdict = verify_subsumes(&c1, &c2, &pair_spec(&c1, &c2), *trials, *seed);
            if json {
                let mut v = verdict.to_value();
                v["seed"] = json!(seed);
                v["expected"] = json!(expected.map(|e| e.as_str()));
                print_json(w, &v)?;
            } else {
                print_verdict(w, &verdict, expected.map(|e| e.as_str()))?;
            }
            Ok(0)
        }
        Command::Table { trials, seed } => {
            let report = run_table_verification(&TableConfig {
                trials: *trials,
                seed: *seed,
            })?;
            if json {
                writeln!(w, "{}", report.to_json())?;
            } else {
                print_table(w, &report)?;
            }
            Ok(if report.contradictions() == 0 { 0 } else { 1 })
        }
        Command::Fixtures { out } => {
            match out {
                Some(dir) => {
                    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
                    for (name, g) in fixtures::all() {
                        let file = dir.join(format!("{name}.json"));
                        fs::write(&file, graph_to_json(&g)).with_context(|| format!("writing {}", file.display()))?;
                        if !json {
                            writeln!(w, "{}", file.display())?;
                        }
                    }
                }
                None => {
                    let mut map = serde_json::Map::new();
                    for (name, g) in fixtures::all() {
                        map.insert(name.to_owned(), serde_json::from_str(&graph_to_json(&g))?);
                    }
                    print_json(w, &Value::Object(map))?;
                }
            }
            Ok(0)
        }
    }
}

fn print_requirements(w: &mut dyn Write, g: &FsmGraph, c: &Criterion, set: &RequirementSet) -> io::Result<()> {
    writeln!(w, "{}: {} {} requirement(s)", c, set.len(), set.kind.as_str())?;
    for item in &set.items {
        writeln!(w, "  {}", item.display(g))?;
    }
    if let Some(n) = set.meta.cyclomatic {
        writeln!(w, "  cyclomatic number {n}")?;
    }
    if !set.meta.truncated.is_empty() {
        writeln!(
            w,
            "  {} item(s) stop at a vertex that reaches no end",
            set.meta.truncated.len()
        )?;
    }
    Ok(())
}

fn print_suite(w: &mut dyn Write, g: &FsmGraph, suite: &TestSuite, json: bool) -> io::Result<()> {
    if json {
        writeln!(w, "{}", suite.to_json(g))?;
    } else {
        for p in &suite.canonical().paths {
            writeln!(w, "{}", p.display(g))?;
        }
    }
    Ok(())
}

fn status_text(s: Status) -> String {
    paint(s.as_str(), s != Status::Inconclusive)
}

fn print_verdict(w: &mut dyn Write, v: &RelationVerdict, expected: Option<&str>) -> io::Result<()> {
    writeln!(w, "{} => {}: {}", v.c1, v.c2, status_text(v.status))?;
    if let Some(e) = expected {
        writeln!(w, "  table entry {e}")?;
    }
    writeln!(
        w,
        "  trials {} skipped {} violations {}",
        v.trials, v.skipped, v.violations
    )?;
    if let Some(wit) = &v.witness {
        writeln!(w, "  witness ({} {})", wit.source, wit.origin)?;
        for p in &wit.suite.paths {
            writeln!(w, "    path {}", p.display(&wit.graph))?;
        }
        for m in &wit.missing {
            writeln!(w, "    missing {m}")?;
        }
    }
    Ok(())
}

fn print_table(w: &mut dyn Write, report: &TableReport) -> io::Result<()> {
    let mark = |s: Status| match s {
        Status::Confirmed => "+",
        Status::Refuted => "x",
        Status::Inconclusive => "?",
    };
    write!(w, "{:>6}", "")?;
    for c in TABLE_CODES {
        write!(w, "{c:>8}")?;
    }
    writeln!(w)?;
    for r in TABLE_CODES {
        write!(w, "{r:>6}")?;
        for c in TABLE_CODES {
            let text = match report.cell(r, c) {
                Some(cell) => format!("{}{}", cell.expected.as_str(), mark(cell.status)),
                None => "-".to_owned(),
            };
            write!(w, "{text:>8}")?;
        }
        writeln!(w)?;
    }
    writeln!(
        w,
        "(+ confirmed, x refuted, ? inconclusive; seed {}, {} trials)",
        report.config.seed, report.config.trials
    )?;
    let verify = report.count(CellMode::Verify, Status::Confirmed);
    let refute = report.count(CellMode::Refute, Status::Refuted);
    writeln!(w, "subsumption cells confirmed: {verify}")?;
    writeln!(w, "non-subsumption cells refuted: {refute}")?;
    writeln!(
        w,
        "contradictions: {}",
        paint(&report.contradictions().to_string(), report.contradictions() == 0)
    )?;
    writeln!(w, "unresolved: {}", report.unresolved())?;
    for cell in report.cells.iter().filter(|c| c.is_contradiction()) {
        writeln!(w, "contradiction {} => {}", cell.row, cell.col)?;
    }
    for q in &report.open_questions {
        writeln!(w, "open question: {q}")?;
    }
    Ok(())
}
