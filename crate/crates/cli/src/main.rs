//! `gridmp`: matching preclusion of n-grid graphs from the command line.
//!
//! Exit codes: 0 success, 1 prediction mismatch or failed self-check,
//! 2 usage or precondition error, 3 search budget exceeded.

mod report;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use gridmp::constructions::{
    apm_all_even, apm_avoiding_edge, apm_even_sum, avoiding_edge_uncovered, canonical_pm,
    pm_of_vertex_deleted,
};
use gridmp::matching::{is_matching, FaultSet, Matching};
use gridmp::preclusion::{
    brute_force_mp, predicted_mp, sweep, verify_grid, SearchOptions, DEFAULT_BUDGET,
};
use gridmp::trials::{nice_cycle_trials, DEFAULT_SEED};
use gridmp::{Grid, PreclusionError};

use report::{
    Budget, BudgetSource, ConstructJson, Format, MpJson, Report, Results, Skipped, Summary,
    TrialsJson, SCHEMA,
};

const BUDGET_ENV: &str = "GRIDMP_BUDGET";

#[derive(Parser, Debug)]
#[command(
    name = "gridmp",
    version,
    about = "Matching preclusion of n-grid graphs"
)]
struct Cli {
    /// Output encoding.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Worker threads for exhaustive search (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Add wall-clock runtime to the report (makes output non-reproducible).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Brute-force mp(G) and compare it with the closed form.
    Mp(MpArgs),
    /// Build one of the explicit matchings and self-check it.
    Construct(ConstructArgs),
    /// Full check of mp and the shape of every optimal set, for one grid or a family.
    Verify(VerifyArgs),
    /// Seeded random checks of nice-cycle augmentation.
    NiceCycles(TrialArgs),
}

#[derive(Args, Debug)]
struct BudgetArgs {
    /// Maximum subset tests per search level (overrides GRIDMP_BUDGET).
    #[arg(long)]
    budget: Option<u128>,
}

#[derive(Args, Debug)]
struct MpArgs {
    /// Grid dimensions, e.g. 6,3.
    #[arg(long)]
    dims: String,
    /// List every optimal preclusion set.
    #[arg(long)]
    enumerate: bool,
    /// Classify optimal sets as trivial, special or other.
    #[arg(long)]
    classify: bool,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    /// Canonical perfect matching M_d of an even-order grid.
    Pm,
    /// Almost-perfect matching missing an all-even vertex.
    ApmAlleven,
    /// Almost-perfect matching missing an even-sum vertex.
    ApmEvensum,
    /// Almost-perfect matching avoiding an edge.
    ApmAvoid,
    /// Perfect matching of (G - u) - F.
    PmMinusVertex,
}

#[derive(Args, Debug)]
struct ConstructArgs {
    #[arg(value_enum)]
    kind: Kind,
    #[arg(long)]
    dims: String,
    /// Even-length position d for `pm` (default: the smallest one).
    #[arg(long)]
    position: Option<usize>,
    /// Vertex left uncovered or deleted, e.g. 2,0.
    #[arg(long)]
    uncover: Option<String>,
    /// Edge to avoid, e.g. "0,0|1,0".
    #[arg(long)]
    edge: Option<String>,
    /// Fault edges for `pm-minus-vertex`.
    #[arg(long = "fault", alias = "faults", num_args = 1..)]
    faults: Vec<String>,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Target {
    #[arg(long)]
    dims: Option<String>,
    /// File with one dims string per line; `#` starts a comment.
    #[arg(long)]
    family: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    target: Target,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Args, Debug)]
struct TrialArgs {
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    count: usize,
}

/// A failure that ends the run with a specific exit code.
struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl ToString) -> Failure {
    Failure {
        code: 2,
        message: message.to_string(),
    }
}

fn parse_grid(dims: &str) -> Result<Grid, Failure> {
    dims.parse::<Grid>()
        .map_err(|e| usage(format!("dims `{dims}`: {e}")))
}

fn resolve_budget(flag: Option<u128>) -> Result<Budget, Failure> {
    if let Some(b) = flag {
        return Ok(Budget {
            subset_tests_per_level: b,
            source: BudgetSource::Flag,
        });
    }
    match std::env::var(BUDGET_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .map(|b| Budget {
                subset_tests_per_level: b,
                source: BudgetSource::Env,
            })
            .map_err(|_| usage(format!("{BUDGET_ENV}=`{s}` is not a non-negative integer"))),
        Err(_) => Ok(Budget {
            subset_tests_per_level: DEFAULT_BUDGET,
            source: BudgetSource::Default,
        }),
    }
}

fn options(budget: &Budget) -> SearchOptions {
    SearchOptions {
        budget: budget.subset_tests_per_level,
        ..SearchOptions::default()
    }
}

fn budget_failure(e: &PreclusionError) -> u8 {
    match e {
        PreclusionError::BudgetExceeded { .. } | PreclusionError::LimitReached { .. } => 3,
        _ => 2,
    }
}

fn read_family(path: &Path) -> Result<Vec<Grid>, Failure> {
    let text =
        std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let mut grids = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let g = parse_grid(line)
            .map_err(|f| usage(format!("{} line {}: {}", path.display(), i + 1, f.message)))?;
        grids.push(g);
    }
    if grids.is_empty() {
        return Err(usage(format!("{}: no grids listed", path.display())));
    }
    Ok(grids)
}

fn envelope(dims: Vec<String>, budget: Option<Budget>, results: Results) -> Report {
    Report {
        schema: SCHEMA,
        version: env!("CARGO_PKG_VERSION"),
        command: std::env::args().skip(1).collect(),
        dims,
        budget,
        results,
        summary: None,
        error: None,
        runtime_ms: None,
    }
}

/// The report to print and the exit code that goes with it.
type Outcome = (Report, u8);

fn cmd_mp(args: &MpArgs) -> Result<Outcome, Failure> {
    let grid = parse_grid(&args.dims)?;
    let budget = resolve_budget(args.budget.budget)?;
    let opts = options(&budget);
    let result = if args.enumerate || args.classify {
        verify_grid(&grid, &opts)
            .map(|r| MpJson::full(&grid, &r, args.enumerate || args.classify, args.classify))
    } else {
        brute_force_mp(&grid, &opts).map(|mp| MpJson::bare(&grid, mp, predicted_mp(&grid)))
    };
    let dims = vec![grid.to_string()];
    match result {
        Ok(r) => {
            let code = if r.prediction_match { 0 } else { 1 };
            Ok((envelope(dims, Some(budget), Results::Mp(vec![r])), code))
        }
        Err(e) => {
            let mut report = envelope(dims, Some(budget), Results::Mp(Vec::new()));
            report.error = Some(e.to_string());
            Ok((report, budget_failure(&e)))
        }
    }
}

fn cmd_verify(args: &VerifyArgs) -> Result<Outcome, Failure> {
    let grids = match (&args.target.dims, &args.target.family) {
        (Some(d), _) => vec![parse_grid(d)?],
        (None, Some(path)) => read_family(path)?,
        (None, None) => unreachable!("clap enforces the target group"),
    };
    let budget = resolve_budget(args.budget.budget)?;
    let outcomes = sweep(&grids, &options(&budget));
    let mut results = Vec::new();
    let mut skipped = Vec::new();
    for (g, outcome) in grids.iter().zip(outcomes) {
        match outcome {
            Ok(r) => results.push(MpJson::full(g, &r, true, true)),
            Err(e) => skipped.push(Skipped {
                dims: g.to_string(),
                error: e.to_string(),
            }),
        }
    }
    let matched = results.iter().filter(|r| r.prediction_match).count();
    let summary = Summary {
        total: grids.len(),
        matched,
        mismatched: results.len() - matched,
        skipped,
    };
    let code = if summary.mismatched > 0 {
        1
    } else if !summary.skipped.is_empty() {
        3
    } else {
        0
    };
    let mut report = envelope(
        grids.iter().map(|g| g.to_string()).collect(),
        Some(budget),
        Results::Mp(results),
    );
    report.summary = Some(summary);
    Ok((report, code))
}

fn cmd_construct(args: &ConstructArgs) -> Result<Outcome, Failure> {
    let grid = parse_grid(&args.dims)?;
    let kind = args.kind;
    fn need<'a>(flag: &'a Option<String>, name: &str, kind: Kind) -> Result<&'a str, Failure> {
        flag.as_deref()
            .ok_or_else(|| usage(format!("construct {kind:?} requires --{name}")))
    }
    let vertex = |s: &str| {
        grid.parse_vertex(s)
            .map_err(|e| usage(format!("vertex `{s}`: {e}")))
    };
    let precondition = |e: gridmp::ConstructionError| usage(format!("precondition violated: {e}"));
    let mut params = BTreeMap::new();

    let (name, m, expect_uncovered, avoid): (&str, Matching, Vec<usize>, Vec<gridmp::EdgeId>) =
        match args.kind {
            Kind::Pm => {
                let d = match args.position {
                    Some(d) => d,
                    None => grid.dims().iter().position(|k| k % 2 == 0).ok_or_else(|| {
                        usage("precondition violated: grid has no even dimension")
                    })?,
                };
                params.insert("position", json!(d));
                (
                    "pm",
                    canonical_pm(&grid, d).map_err(precondition)?,
                    Vec::new(),
                    Vec::new(),
                )
            }
            Kind::ApmAlleven | Kind::ApmEvensum => {
                let s = need(&args.uncover, "uncover", kind)?;
                let u = vertex(s)?;
                params.insert("uncover", json!(grid.format_vertex(u)));
                if args.kind == Kind::ApmAlleven {
                    (
                        "apm-alleven",
                        apm_all_even(&grid, u).map_err(precondition)?,
                        vec![u],
                        Vec::new(),
                    )
                } else {
                    (
                        "apm-evensum",
                        apm_even_sum(&grid, u).map_err(precondition)?,
                        vec![u],
                        Vec::new(),
                    )
                }
            }
            Kind::ApmAvoid => {
                let s = need(&args.edge, "edge", kind)?;
                let f = grid
                    .parse_edge(s)
                    .map_err(|e| usage(format!("edge `{s}`: {e}")))?;
                params.insert("edge", json!(grid.format_edge(f)));
                let m = apm_avoiding_edge(&grid, f).map_err(precondition)?;
                let corner = avoiding_edge_uncovered(&grid, f).map_err(precondition)?;
                ("apm-avoid", m, vec![corner], vec![f])
            }
            Kind::PmMinusVertex => {
                let s = need(&args.uncover, "uncover", kind)?;
                let u = vertex(s)?;
                let faults = FaultSet::parse(&grid, args.faults.iter().map(String::as_str))
                    .map_err(|e| usage(format!("fault set: {e}")))?;
                params.insert("uncover", json!(grid.format_vertex(u)));
                params.insert("faults", json!(faults.format(&grid)));
                let m = pm_of_vertex_deleted(&grid, u, &faults).map_err(precondition)?;
                ("pm-minus-vertex", m, vec![u], faults.iter().collect())
            }
        };
    let self_check = is_matching(&grid, m.iter()).unwrap_or(false)
        && m.uncovered(&grid) == expect_uncovered
        && avoid.iter().all(|&f| !m.contains(f));
    let payload = ConstructJson::new(name, &grid, params, &m, self_check);
    let report = envelope(
        vec![grid.to_string()],
        None,
        Results::Construct(vec![payload]),
    );
    Ok((report, if self_check { 0 } else { 1 }))
}

fn cmd_nice_cycles(args: &TrialArgs) -> Result<Outcome, Failure> {
    let s = nice_cycle_trials(args.seed, args.count);
    let passed = s.passed();
    let payload = TrialsJson {
        seed: args.seed,
        count: args.count,
        instances: s.instances,
        disjoint_cycle_instances: s.disjoint_cycle_instances,
        passed,
        failures: s.failures,
    };
    let report = envelope(Vec::new(), None, Results::Trials(vec![payload]));
    Ok((report, if passed { 0 } else { 1 }))
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Mp(a) => cmd_mp(a),
        Command::Construct(a) => cmd_construct(a),
        Command::Verify(a) => cmd_verify(a),
        Command::NiceCycles(a) => cmd_nice_cycles(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = match cli.jobs {
        Some(0) => Err(usage("--jobs must be at least 1")),
        Some(j) => match rayon::ThreadPoolBuilder::new().num_threads(j).build() {
            Ok(pool) => pool.install(|| run(&cli)),
            Err(e) => Err(usage(format!("thread pool: {e}"))),
        },
        None => run(&cli),
    };
    match outcome {
        Ok((mut report, code)) => {
            if cli.timing {
                report.runtime_ms = Some(start.elapsed().as_millis());
            }
            print!("{}", report.render(cli.format));
            if let Some(e) = &report.error {
                eprintln!("gridmp: {e}");
            }
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("gridmp: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
