//! Command-line front end: `solve`, `classify`, `validate`, `generate`,
//! `oracle` and `bench`.
//!
//! Data goes to standard output, diagnostics to standard error. Exit codes:
//! 0 solved, 2 unreachable within the horizon, 3 precondition or bound
//! failure, 1 I/O or parse error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::dispatch::{solve, SolveOptions};
use crate::exact::{brute_force_cover, BruteForceLimits, CoverQuery};
use crate::generators::{
    gen_3partition_comb, gen_3partition_spider, gen_hamiltonian_p2, gen_random_tvg, gen_setcover_comb,
    gen_setcover_star, Gadget, RandomParams, RandomShape,
};
use crate::solution::{Algorithm, SolveError, Solution};
use crate::topology::detect_topology;
use crate::tvg::{classify, normalize, parse_instance, validate_journey, ClassKind, Journey, TemporalGraph, TvgInstance};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_UNREACHABLE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;

/// Environment variable overriding the brute-force state bound `n * 2^n`.
pub const STATE_BOUND_ENV: &str = "DMVP_STATE_BOUND";

#[derive(Parser, Debug)]
#[command(name = "dmvp", version, about = "Foremost waypoint coverage on time-varying graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve an instance with a named or automatically chosen algorithm.
    Solve(SolveArgs),
    /// Report topology and observed TVG class properties.
    Classify(InputArgs),
    /// Check a journey against an instance and the cover requirement.
    Validate(ValidateArgs),
    /// Generate a gadget or random instance.
    Generate(GenerateArgs),
    /// Exact optimum by exhaustive state-space search.
    Oracle(OracleArgs),
    /// Run algorithms over a seeded random family and print a CSV report.
    Bench(BenchArgs),
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Instance file (JSON).
    #[arg(long)]
    input: PathBuf,
    /// Emit the full structure as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[command(flatten)]
    input: InputArgs,
    /// auto, exact, brute, path, cycle, tree, almost-tree, tree-b-approx,
    /// spanning-approx, p2-tree, spider-p, comb-online or uniform-nowait.
    #[arg(long, default_value = "auto")]
    algo: String,
    /// Period for the periodic solvers.
    #[arg(long)]
    period: Option<usize>,
    /// Recurrence bound for the approximations.
    #[arg(long)]
    delta: Option<u64>,
    /// Also write the journey to this file.
    #[arg(long)]
    journey_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ValidateArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Journey file (JSON).
    #[arg(long)]
    journey: PathBuf,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Require the journey to end at this vertex.
    #[arg(long)]
    finish_at: Option<usize>,
}

#[derive(Args, Debug)]
struct GenerateArgs {
    /// random, setcover-star, setcover-comb, partition-spider, partition-comb or hamiltonian.
    kind: String,
    /// Set family, sets separated by ';' and elements by ',' (e.g. "1,2;2,3").
    #[arg(long)]
    sets: Option<String>,
    /// Universe size; defaults to the largest element of the family.
    #[arg(long)]
    universe: Option<usize>,
    /// Cover size bound.
    #[arg(long)]
    k: Option<usize>,
    /// Multiset for the 3-partition gadgets (e.g. "1,1,1,1,1,1").
    #[arg(long)]
    multiset: Option<String>,
    /// Long-arm length of the 3-partition gadgets.
    #[arg(long)]
    long_arm: Option<u64>,
    /// Vertex count (hamiltonian: |V(G)|; random: |V|).
    #[arg(long)]
    n: Option<usize>,
    /// Graph edges for the hamiltonian gadget (e.g. "0-1,1-2").
    #[arg(long)]
    graph_edges: Option<String>,
    /// Start vertex.
    #[arg(long)]
    start: Option<usize>,
    /// Horizon of the hamiltonian gadget.
    #[arg(long)]
    horizon: Option<u64>,
    /// Random: class R, B or P.
    #[arg(long, default_value = "R")]
    class: String,
    /// Random: general, path, cycle, tree, spider, comb or almost-tree:<c>.
    #[arg(long, default_value = "general")]
    shape: String,
    #[arg(long)]
    snapshots: Option<usize>,
    #[arg(long)]
    max_duration: Option<u64>,
    #[arg(long)]
    delta: Option<u64>,
    #[arg(long)]
    period: Option<u64>,
    #[arg(long)]
    density: Option<u32>,
    #[arg(long)]
    edge_percent: Option<u32>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the instance here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BenchArgs {
    /// Underlying graph family (see `generate --shape`).
    #[arg(long, default_value = "tree")]
    shape: String,
    /// TVG class R, B or P.
    #[arg(long, default_value = "B")]
    class: String,
    #[arg(long, default_value_t = 7)]
    n: usize,
    #[arg(long)]
    snapshots: Option<usize>,
    #[arg(long)]
    delta: Option<u64>,
    #[arg(long)]
    period: Option<u64>,
    #[arg(long)]
    density: Option<u32>,
    /// Seeds: a range "a..b" (exclusive end) or a list "1,2,3".
    #[arg(long, default_value = "0..10")]
    seeds: String,
    /// Comma-separated algorithm names.
    #[arg(long, default_value = "auto")]
    algos: String,
    /// Add a wall-time column in microseconds (not reproducible).
    #[arg(long)]
    timing: bool,
}

/// A failure that ends the command with a specific exit code.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn io(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_IO,
            message: message.into(),
        }
    }

    fn precondition(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_PRECONDITION,
            message: message.into(),
        }
    }
}

impl From<SolveError> for Failure {
    fn from(err: SolveError) -> Self {
        Failure {
            code: exit_code(&err),
            message: err.to_string(),
        }
    }
}

/// Exit status for a solver error.
pub fn exit_code(err: &SolveError) -> i32 {
    match err {
        SolveError::Unreachable(_) => EXIT_UNREACHABLE,
        _ => EXIT_PRECONDITION,
    }
}

type CmdResult = Result<i32, Failure>;

/// Runs the CLI on `args` (including the program name), writing data to
/// `out` and diagnostics to `err`; returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_IO } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Solve(a) => cmd_solve(a, out, err),
        Command::Classify(a) => cmd_classify(a, out),
        Command::Validate(a) => cmd_validate(a, out),
        Command::Generate(a) => cmd_generate(a, out, err),
        Command::Oracle(a) => cmd_oracle(a, out, err),
        Command::Bench(a) => cmd_bench(a, out),
    };
    match result {
        Ok(code) => code,
        Err(failure) => {
            let _ = writeln!(err, "error: {}", failure.message);
            failure.code
        }
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::io(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::io(format!("cannot write {}: {e}", path.display())))
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    writeln!(out, "{text}").map_err(|e| Failure::io(format!("cannot write output: {e}")))
}

fn load_instance(path: &Path) -> Result<TvgInstance, Failure> {
    parse_instance(&read_file(path)?).map_err(|e| Failure::io(format!("{}: {e}", path.display())))
}

fn brute_limits() -> Result<BruteForceLimits, Failure> {
    let mut limits = BruteForceLimits::default();
    if let Ok(value) = std::env::var(STATE_BOUND_ENV) {
        limits.state_bound = value
            .trim()
            .parse()
            .map_err(|_| Failure::io(format!("{STATE_BOUND_ENV} must be a non-negative integer, got {value:?}")))?;
    }
    Ok(limits)
}

fn parse_algorithm(name: &str) -> Result<Option<Algorithm>, Failure> {
    if name == "auto" {
        return Ok(None);
    }
    Algorithm::from_name(name)
        .map(Some)
        .ok_or_else(|| Failure::io(format!("unknown algorithm {name:?}")))
}

fn solution_text(sol: &Solution) -> String {
    format!(
        "algorithm {}\ncost {}\narrival {}\nstates {}\ncandidates {}\njourney {}",
        sol.algorithm,
        sol.cost,
        sol.journey.arrival_time(),
        sol.stats.states_expanded,
        sol.stats.candidates,
        sol.journey.to_json()
    )
}

fn report_solution(sol: &Solution, json: bool, out: &mut dyn Write) -> Result<(), Failure> {
    emit(out, &if json { sol.to_json() } else { solution_text(sol) })
}

fn cmd_solve(a: &SolveArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let instance = load_instance(&a.input.input)?;
    let options = SolveOptions {
        algorithm: parse_algorithm(&a.algo)?,
        period: a.period,
        delta: a.delta,
        brute_limits: brute_limits()?,
    };
    let sol = solve(&instance, &options)?;
    report_solution(&sol, a.input.json, out)?;
    if let Some(path) = &a.journey_out {
        write_file(path, &sol.journey.to_json())?;
    }
    let _ = writeln!(err, "solved with {} at cost {}", sol.algorithm, sol.cost);
    Ok(EXIT_OK)
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct ClassifyReport {
    n: usize,
    m: usize,
    horizon: u64,
    normalized_steps: usize,
    topology: crate::topology::TopologyInfo,
    class: crate::tvg::ClassReport,
}

fn cmd_classify(a: &InputArgs, out: &mut dyn Write) -> CmdResult {
    let instance = load_instance(&a.input)?;
    let tvg = normalize(&instance);
    let report = ClassifyReport {
        n: instance.graph().vertex_count(),
        m: instance.graph().edge_count(),
        horizon: instance.horizon(),
        normalized_steps: tvg.total_steps(),
        topology: detect_topology(instance.graph()),
        class: classify(&instance),
    };
    if a.json {
        emit(out, &serde_json::to_string(&report).expect("report serialisation cannot fail"))?;
    } else {
        let t = &report.topology;
        let c = &report.class;
        let mut text = String::new();
        let _ = writeln!(text, "vertices {}", report.n);
        let _ = writeln!(text, "edges {}", report.m);
        let _ = writeln!(text, "horizon {}", report.horizon);
        let _ = writeln!(text, "normalized-steps {}", report.normalized_steps);
        let _ = writeln!(text, "shape {}", serde_json::to_string(&t.shape).expect("shape").trim_matches('"'));
        let _ = writeln!(text, "cycle-rank {}", t.cycle_rank);
        let _ = writeln!(text, "leaves {}", t.leaves.len());
        let _ = writeln!(text, "class-r {}", c.is_r);
        let _ = writeln!(
            text,
            "min-delta {}",
            c.min_delta_observed.map_or("none".to_string(), |d| d.to_string())
        );
        let _ = write!(
            text,
            "periods {}",
            c.periods.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
        );
        emit(out, &text)?;
    }
    Ok(EXIT_OK)
}

fn cmd_validate(a: &ValidateArgs, out: &mut dyn Write) -> CmdResult {
    let instance = load_instance(&a.input.input)?;
    let text = read_file(&a.journey)?;
    let journey = Journey::from_json(&text).map_err(|e| Failure::io(format!("{}: {e}", a.journey.display())))?;
    let report = validate_journey(&instance, &journey);
    if a.input.json {
        emit(out, &serde_json::to_string(&report).expect("report serialisation cannot fail"))?;
    } else {
        let mut text = format!(
            "valid {}\ncovers-all {}\nlength {}",
            report.valid, report.covers_all, report.temporal_length
        );
        if let Some(v) = &report.first_violation {
            let _ = write!(text, "\nviolation move {} {:?}", v.move_index, v.reason);
        }
        emit(out, &text)?;
    }
    if report.valid && report.covers_all {
        Ok(EXIT_OK)
    } else {
        Err(Failure::precondition("journey is not a valid covering journey"))
    }
}

fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>, Failure> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| Failure::io(format!("bad {what} entry {s:?}"))))
        .collect()
}

fn parse_sets(text: &str) -> Result<Vec<Vec<usize>>, Failure> {
    text.split(';').map(|set| parse_list(set, "set element")).collect()
}

fn parse_edges(text: &str) -> Result<Vec<(usize, usize)>, Failure> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|pair| {
            let (u, v) = pair.split_once('-').ok_or_else(|| Failure::io(format!("bad edge {pair:?}")))?;
            let parse = |x: &str| x.trim().parse().map_err(|_| Failure::io(format!("bad edge {pair:?}")));
            Ok((parse(u)?, parse(v)?))
        })
        .collect()
}

fn parse_class(text: &str) -> Result<ClassKind, Failure> {
    match text {
        "R" | "r" => Ok(ClassKind::R),
        "B" | "b" => Ok(ClassKind::B),
        "P" | "p" => Ok(ClassKind::P),
        _ => Err(Failure::io(format!("unknown class {text:?}; expected R, B or P"))),
    }
}

fn parse_shape(text: &str) -> Result<RandomShape, Failure> {
    Ok(match text {
        "general" => RandomShape::General,
        "path" => RandomShape::Path,
        "cycle" => RandomShape::Cycle,
        "tree" => RandomShape::Tree,
        "spider" => RandomShape::Spider,
        "comb" => RandomShape::Comb,
        _ => match text.strip_prefix("almost-tree:").map(str::parse) {
            Some(Ok(c)) => RandomShape::AlmostTree(c),
            _ => return Err(Failure::io(format!("unknown shape {text:?}"))),
        },
    })
}

fn required<T: Copy>(value: Option<T>, flag: &str) -> Result<T, Failure> {
    value.ok_or_else(|| Failure::io(format!("missing --{flag}")))
}

fn set_family(a: &GenerateArgs) -> Result<(usize, Vec<Vec<usize>>, usize), Failure> {
    let sets = parse_sets(a.sets.as_deref().ok_or_else(|| Failure::io("missing --sets"))?)?;
    let universe = a
        .universe
        .unwrap_or_else(|| sets.iter().flatten().copied().max().unwrap_or(0));
    Ok((universe, sets, required(a.k, "k")?))
}

fn multiset(a: &GenerateArgs) -> Result<Vec<u64>, Failure> {
    parse_list(a.multiset.as_deref().ok_or_else(|| Failure::io("missing --multiset"))?, "multiset")
}

fn cmd_generate(a: &GenerateArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let invalid = |e: crate::generators::GeneratorError| Failure::precondition(e.to_string());
    let (instance, deadline) = match a.kind.as_str() {
        "random" => {
            let defaults = RandomParams::default();
            let params = RandomParams {
                class: parse_class(&a.class)?,
                n: a.n.unwrap_or(defaults.n),
                shape: parse_shape(&a.shape)?,
                snapshots: a.snapshots.unwrap_or(defaults.snapshots),
                max_duration: a.max_duration.unwrap_or(defaults.max_duration),
                delta: a.delta.unwrap_or(defaults.delta),
                period: a.period.unwrap_or(defaults.period),
                density_percent: a.density.unwrap_or(defaults.density_percent),
                edge_percent: a.edge_percent.unwrap_or(defaults.edge_percent),
                start: a.start,
            };
            (gen_random_tvg(&params, a.seed).map_err(invalid)?, None)
        }
        kind => {
            let Gadget { instance, deadline } = match kind {
                "setcover-star" => {
                    let (m, sets, k) = set_family(a)?;
                    gen_setcover_star(m, &sets, k)
                }
                "setcover-comb" => {
                    let (m, sets, k) = set_family(a)?;
                    gen_setcover_comb(m, &sets, k)
                }
                "partition-spider" => gen_3partition_spider(&multiset(a)?, a.delta.unwrap_or(2), a.long_arm),
                "partition-comb" => gen_3partition_comb(&multiset(a)?, a.delta.unwrap_or(2), a.long_arm),
                "hamiltonian" => {
                    let edges = parse_edges(a.graph_edges.as_deref().unwrap_or(""))?;
                    gen_hamiltonian_p2(required(a.n, "n")?, &edges, a.start.unwrap_or(0), a.horizon)
                }
                other => return Err(Failure::io(format!("unknown generator kind {other:?}"))),
            }
            .map_err(invalid)?;
            (instance, Some(deadline))
        }
    };
    let text = instance.to_json();
    match &a.out {
        Some(path) => write_file(path, &text)?,
        None => emit(out, &text)?,
    }
    if let Some(d) = deadline {
        let _ = writeln!(err, "deadline {d}");
    }
    Ok(EXIT_OK)
}

fn cmd_oracle(a: &OracleArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let instance = load_instance(&a.input.input)?;
    let tvg = normalize(&instance);
    let n = tvg.graph().vertex_count();
    if let Some(f) = a.finish_at.filter(|&f| f >= n) {
        return Err(Failure::io(format!("--finish-at {f} is not a vertex (n = {n})")));
    }
    let query = CoverQuery {
        start: tvg.start(),
        start_time: 0,
        finish_at: a.finish_at,
    };
    let sol = brute_force_cover(&tvg, query, brute_limits()?)?.restore(&tvg);
    report_solution(&sol, a.input.json, out)?;
    let _ = writeln!(err, "oracle optimum {}", sol.cost);
    Ok(EXIT_OK)
}

fn parse_seeds(text: &str) -> Result<Vec<u64>, Failure> {
    if let Some((a, b)) = text.split_once("..") {
        let parse = |x: &str| x.trim().parse::<u64>().map_err(|_| Failure::io(format!("bad seed range {text:?}")));
        let (a, b) = (parse(a)?, parse(b)?);
        return Ok((a..b).collect());
    }
    parse_list(text, "seed")
}

/// `ceil(1000 * cost / exact)`; the ratio in thousandths, rounded up.
pub fn ratio_milli(cost: u64, exact: u64) -> Option<u64> {
    (exact > 0).then(|| (cost * 1000).div_ceil(exact))
}

fn cmd_bench(a: &BenchArgs, out: &mut dyn Write) -> CmdResult {
    let class = parse_class(&a.class)?;
    let shape = parse_shape(&a.shape)?;
    let seeds = parse_seeds(&a.seeds)?;
    let algos: Vec<Option<Algorithm>> = a
        .algos
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(parse_algorithm)
        .collect::<Result<_, _>>()?;
    let defaults = RandomParams::default();
    let params = RandomParams {
        class,
        n: a.n,
        shape,
        snapshots: a.snapshots.unwrap_or(4 * a.n),
        max_duration: defaults.max_duration,
        delta: a.delta.unwrap_or(defaults.delta),
        period: a.period.unwrap_or(defaults.period),
        density_percent: a.density.unwrap_or(defaults.density_percent),
        edge_percent: defaults.edge_percent,
        start: None,
    };
    let mut csv = String::from("shape,class,n,seed,algo,used,status,cost,exact,ratio_milli");
    if a.timing {
        csv.push_str(",micros");
    }
    csv.push('\n');
    let limits = brute_limits()?;
    for &seed in &seeds {
        let instance = gen_random_tvg(&params, seed).map_err(|e| Failure::precondition(e.to_string()))?;
        let reference = solve(
            &instance,
            &SolveOptions {
                brute_limits: limits,
                ..SolveOptions::default()
            },
        )
        .ok()
        .map(|s| s.cost);
        for algo in &algos {
            let options = SolveOptions {
                algorithm: *algo,
                period: None,
                delta: a.delta.filter(|_| class == ClassKind::B),
                brute_limits: limits,
            };
            let clock = Instant::now();
            let result = solve(&instance, &options);
            let micros = clock.elapsed().as_micros();
            let (used, status, cost) = match &result {
                Ok(sol) => (sol.algorithm.name().to_string(), "ok", sol.cost.to_string()),
                Err(SolveError::Unreachable(_)) => (String::new(), "unreachable", String::new()),
                Err(_) => (String::new(), "precondition", String::new()),
            };
            let ratio = match (&result, reference) {
                (Ok(sol), Some(exact)) => ratio_milli(sol.cost, exact).map_or(String::new(), |r| r.to_string()),
                _ => String::new(),
            };
            let _ = write!(
                csv,
                "{},{},{},{},{},{},{},{},{},{}",
                a.shape,
                a.class,
                a.n,
                seed,
                algo.map_or("auto", Algorithm::name),
                used,
                status,
                cost,
                reference.map_or(String::new(), |r| r.to_string()),
                ratio
            );
            if a.timing {
                let _ = write!(csv, ",{micros}");
            }
            csv.push('\n');
        }
    }
    out.write_all(csv.as_bytes())
        .map_err(|e| Failure::io(format!("cannot write output: {e}")))?;
    Ok(EXIT_OK)
}
