use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use turan_core::chromatic::criticality;
use turan_core::constructions::{
    build_recipe, union_extremal_graph, union_extremal_value, union_wheels_value,
    wheel_extremal_recipe, wheel_extremal_value, FormulaValue,
};
use turan_core::embed::is_free;
use turan_core::oracle::{
    brute_force_ex, maximality_audit, threshold_scan, Budget, ExtremalResult, OracleConfig,
    DEFAULT_CAP,
};
use turan_core::stability::{
    min_internal_partition, structure_audit, PartitionMode, DEFAULT_STARTS, DEFAULT_THETA,
};
use turan_core::standard::{self, turan_edge_count, StandardKind};
use turan_core::{graph6, Error, ForbiddenFamily, Graph, Pattern};

const FORMULA_SCHEMA: &str = "turan.formula-value/v1";
const VERIFY_SCHEMA: &str = "turan.verify-report/v1";
const PARTITION_SCHEMA: &str = "turan.partition/v1";
const CRITICALITY_SCHEMA: &str = "turan.criticality/v1";

/// Extremal graphs for forbidden disjoint unions: constructions, closed
/// forms and an exact small-order oracle.
#[derive(Parser, Debug)]
#[command(name = "turan", version)]
struct Cli {
    /// Worker threads; output does not depend on this
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a graph: odd-wheel extremal, union join, or a standard graph
    Gen {
        #[command(subcommand)]
        what: GenCommand,
    },
    /// Evaluate a closed-form extremal number
    ExFormula(ExFormulaArgs),
    /// Exact extremal number by exhaustive search
    BruteForce(BruteForceArgs),
    /// Compare the oracle with the union formula over a range of orders
    Scan(ScanArgs),
    /// Report freeness, maximality and structure for graphs in a graph6 file
    Verify(VerifyArgs),
    /// Vertex- and edge-criticality of patterns
    Criticality(CriticalityArgs),
    /// Minimum internal-edge partition and its high-degree set
    Stability(StabilityArgs),
}

#[derive(Subcommand, Debug)]
enum GenCommand {
    /// Extremal graph for the odd wheel W_{2k+1}
    Wheel {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Size of the regular side; defaults to the largest feasible maximiser
        #[arg(long)]
        n0: Option<usize>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// K_{ell-1} joined with the graph H read from a graph6 string
    Union {
        #[arg(long)]
        ell: usize,
        /// graph6 string of H
        #[arg(long)]
        h: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// cycle:N, path:N, complete:N, wheel:N, turan:N,R or multipartite:A,B,..
    Standard {
        spec: String,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Args, Debug)]
struct OutputArgs {
    /// Write JSON here
    #[arg(long)]
    json: Option<PathBuf>,
    /// Write graph6 here, one graph per line
    #[arg(long)]
    graph6: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Provider {
    /// odd-wheel closed form for W7, W9, ..., e(T(m, χ(F)-1)) otherwise
    Formula,
    /// e(T(m, χ(F)-1)); exact for cliques
    Turan,
    /// exhaustive oracle per member
    Oracle,
}

#[derive(Args, Debug)]
struct ExFormulaArgs {
    #[arg(long)]
    n: usize,
    /// Single odd wheel W_{2k+1}
    #[arg(long, conflicts_with_all = ["wheel_ks", "family"])]
    wheel_k: Option<usize>,
    /// Union of odd wheels, e.g. 5,3
    #[arg(long, value_delimiter = ',', conflicts_with = "family")]
    wheel_ks: Option<Vec<usize>>,
    /// Family spec for the union composition, e.g. k3,k3
    #[arg(long)]
    family: Option<String>,
    #[arg(long, value_enum, default_value = "formula")]
    provider: Provider,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct OracleArgs {
    /// Stop after this many search nodes
    #[arg(long)]
    max_nodes: Option<u64>,
    /// Stop after this many seconds
    #[arg(long)]
    time_limit: Option<f64>,
    /// Permit orders above the default cap
    #[arg(long)]
    allow_large: bool,
}

impl OracleArgs {
    fn config(&self) -> OracleConfig {
        OracleConfig {
            cap: DEFAULT_CAP,
            allow_over_cap: self.allow_large,
            budget: Budget {
                max_nodes: self.max_nodes,
                time_limit: self.time_limit.map(Duration::from_secs_f64),
            },
        }
    }
}

#[derive(Args, Debug)]
struct BruteForceArgs {
    #[arg(long)]
    family: String,
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    oracle: OracleArgs,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct ScanArgs {
    #[arg(long)]
    family: String,
    #[arg(long)]
    from: usize,
    #[arg(long)]
    to: usize,
    #[arg(long, value_enum, default_value = "formula")]
    provider: Provider,
    #[command(flatten)]
    oracle: OracleArgs,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// graph6 file, one graph per line
    graph6: PathBuf,
    #[arg(long)]
    family: String,
    #[arg(long, default_value_t = DEFAULT_THETA)]
    theta: f64,
    #[arg(long, value_enum, default_value = "formula")]
    provider: Provider,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CriticalityArgs {
    /// Pattern tokens, e.g. w5,w6,k4
    patterns: String,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Mode {
    Exact,
    Local,
}

#[derive(Args, Debug)]
struct StabilityArgs {
    /// graph6 file, one graph per line
    graph6: PathBuf,
    #[arg(long, default_value_t = 2)]
    r: usize,
    #[arg(long, default_value_t = DEFAULT_THETA)]
    theta: f64,
    #[arg(long, value_enum, default_value = "exact")]
    mode: Mode,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_STARTS)]
    starts: usize,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Debug)]
enum CliError {
    Core(Error),
    Usage(String),
    Io(PathBuf, std::io::Error),
    /// partial results were already written
    Budget(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::BudgetExceeded { .. }) | CliError::Budget(_) => 3,
            CliError::Core(_) | CliError::Usage(_) => 2,
            CliError::Io(..) => 1,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Core(e) => e.to_string(),
            CliError::Usage(m) | CliError::Budget(m) => m.clone(),
            CliError::Io(path, e) => format!("{}: {e}", path.display()),
        }
    }
}

type CliResult<T = ()> = Result<T, CliError>;

/// JSON payload tagged with its schema name.
#[derive(Serialize, Deserialize)]
struct Tagged<T> {
    schema: String,
    #[serde(flatten)]
    body: T,
}

#[derive(Serialize, Deserialize)]
struct Entries<T> {
    entries: Vec<T>,
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serialisable");
    text.push('\n');
    text
}

fn write_file(path: &Path, text: &str) -> CliResult {
    fs::write(path, text).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

fn read_file(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

fn write_json<T: Serialize>(path: Option<&PathBuf>, value: &T) -> CliResult {
    match path {
        Some(p) => write_file(p, &to_json(value)),
        None => Ok(()),
    }
}

fn write_graphs(path: Option<&PathBuf>, graphs: &[Graph]) -> CliResult {
    match path {
        Some(p) => {
            let text: String = graphs.iter().map(|g| graph6::encode(g) + "\n").collect();
            write_file(p, &text)
        }
        None => Ok(()),
    }
}

fn set_text(values: &[usize]) -> String {
    let items: Vec<String> = values.iter().map(usize::to_string).collect();
    format!("{{{}}}", items.join(","))
}

fn parse_standard(spec: &str) -> CliResult<StandardKind> {
    let (name, args) = spec
        .split_once(':')
        .ok_or_else(|| CliError::Usage(format!("`{spec}`: expected NAME:ARGS, e.g. turan:7,3")))?;
    let nums = args
        .split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| CliError::Usage(format!("`{args}`: expected comma-separated integers")))?;
    let one = || match nums.as_slice() {
        [n] => Ok(*n),
        _ => Err(CliError::Usage(format!("`{spec}` takes exactly one number"))),
    };
    Ok(match name {
        "cycle" => StandardKind::Cycle(one()?),
        "path" => StandardKind::Path(one()?),
        "complete" => StandardKind::Complete(one()?),
        "wheel" => StandardKind::Wheel(one()?),
        "multipartite" => StandardKind::CompleteMultipartite(nums),
        "turan" => match nums.as_slice() {
            [n, r] => StandardKind::Turan { n: *n, r: *r },
            _ => return Err(CliError::Usage("turan takes N,R".into())),
        },
        _ => {
            return Err(CliError::Usage(format!(
                "unknown standard graph `{name}`; use cycle, path, complete, wheel, turan or multipartite"
            )))
        }
    })
}

fn emit_graph(out: &mut String, g: &Graph, json: Option<&PathBuf>, g6: Option<&PathBuf>, recipe: Option<&impl Serialize>) -> CliResult {
    let code = graph6::encode(g);
    writeln!(out, "order: {}", g.n()).unwrap();
    writeln!(out, "edges: {}", g.edge_count()).unwrap();
    writeln!(out, "graph6: {code}").unwrap();
    write_graphs(g6, std::slice::from_ref(g))?;
    match recipe {
        Some(r) => write_json(json, r),
        None => write_json(
            json,
            &Tagged {
                schema: "turan.graph/v1".into(),
                body: GraphRecord { n: g.n(), edges: g.edge_count(), graph6: code },
            },
        ),
    }
}

#[derive(Serialize, Deserialize)]
struct GraphRecord {
    n: usize,
    edges: usize,
    graph6: String,
}

fn gen(cmd: &GenCommand, out: &mut String) -> CliResult {
    match cmd {
        GenCommand::Wheel { n, k, n0, out: o } => {
            let recipe = wheel_extremal_recipe(*n, *k, *n0)?;
            let g = build_recipe(&recipe)?;
            writeln!(out, "n0: {}", recipe.n0.unwrap_or(0)).unwrap();
            emit_graph(out, &g, o.json.as_ref(), o.graph6.as_ref(), Some(&recipe))
        }
        GenCommand::Union { ell, h, out: o } => {
            let h = graph6::decode(h)?;
            let n = h.n() + ell - 1;
            let g = union_extremal_graph(n, *ell, &h)?;
            emit_graph(out, &g, o.json.as_ref(), o.graph6.as_ref(), None::<&()>)
        }
        GenCommand::Standard { spec, out: o } => {
            let g = standard::build(&parse_standard(spec)?)?;
            emit_graph(out, &g, o.json.as_ref(), o.graph6.as_ref(), None::<&()>)
        }
    }
}

fn member_ex(family: &ForbiddenFamily, provider: Provider, m: usize, i: usize, config: &OracleConfig) -> turan_core::Result<u64> {
    let pattern = &family.patterns()[i];
    let odd_wheel_k = pattern
        .name
        .strip_prefix('w')
        .and_then(|t| t.parse::<usize>().ok())
        .filter(|order| order % 2 == 1 && *order >= 7)
        .map(|order| (order - 1) / 2);
    match provider {
        Provider::Formula if odd_wheel_k.is_some() => {
            Ok(wheel_extremal_value(m, odd_wheel_k.unwrap()).value)
        }
        Provider::Formula | Provider::Turan => Ok(turan_edge_count(m, pattern.chi.saturating_sub(1).max(1)) as u64),
        Provider::Oracle => {
            brute_force_ex(m, &ForbiddenFamily::single(pattern.clone()), config).map(|r| r.ex_value as u64)
        }
    }
}

#[derive(Serialize, Deserialize)]
struct FormulaRecord {
    n: usize,
    #[serde(flatten)]
    value: FormulaValue,
}

fn ex_formula(args: &ExFormulaArgs, out: &mut String) -> CliResult {
    let n = args.n;
    let value = if let Some(k) = args.wheel_k {
        if k < 3 {
            return Err(CliError::Usage("--wheel-k: the closed form needs k >= 3".into()));
        }
        wheel_extremal_value(n, k)
    } else if let Some(ks) = &args.wheel_ks {
        if ks.is_empty() || ks.iter().any(|&k| k < 2) {
            return Err(CliError::Usage("--wheel-ks needs values of at least 2".into()));
        }
        let v = union_wheels_value(n, ks)?;
        for c in &v.caveats {
            writeln!(out, "caveat: {c:?}").unwrap();
        }
        v.per_index
    } else if let Some(spec) = &args.family {
        let family = ForbiddenFamily::parse(spec)?;
        let config = OracleConfig::default();
        union_extremal_value(n, family.len(), |m, i| member_ex(&family, args.provider, m, i, &config))?
    } else {
        return Err(CliError::Usage("give one of --wheel-k, --wheel-ks or --family".into()));
    };
    writeln!(out, "value: {}", value.value).unwrap();
    writeln!(out, "argmax: {}", set_text(&value.argmax)).unwrap();
    write_json(
        args.json.as_ref(),
        &Tagged {
            schema: FORMULA_SCHEMA.into(),
            body: FormulaRecord { n, value },
        },
    )
}

fn report_result(res: &ExtremalResult, out: &mut String, o: &OutputArgs) -> CliResult {
    writeln!(out, "family: {}", res.family).unwrap();
    writeln!(out, "n: {}", res.n).unwrap();
    writeln!(out, "ex: {}", res.ex_value).unwrap();
    writeln!(out, "exhaustive: {}", res.exhaustive).unwrap();
    writeln!(out, "witnesses: {}", res.witnesses.len()).unwrap();
    for w in &res.witnesses {
        writeln!(out, "  {}", graph6::encode(w)).unwrap();
    }
    write_json(o.json.as_ref(), &res.to_record())?;
    write_graphs(o.graph6.as_ref(), &res.witnesses)
}

fn brute_force(args: &BruteForceArgs, out: &mut String) -> CliResult {
    let family = ForbiddenFamily::parse(&args.family)?;
    match brute_force_ex(args.n, &family, &args.oracle.config()) {
        Ok(res) => report_result(&res, out, &args.out),
        Err(Error::BudgetExceeded { nodes, partial }) => {
            report_result(&partial, out, &args.out)?;
            Err(CliError::Budget(format!(
                "budget exhausted after {nodes} nodes; partial result is a lower bound"
            )))
        }
        Err(e) => Err(e.into()),
    }
}

fn scan(args: &ScanArgs, out: &mut String) -> CliResult {
    if args.from > args.to || args.from == 0 {
        return Err(CliError::Usage("need 1 <= --from <= --to".into()));
    }
    let family = ForbiddenFamily::parse(&args.family)?;
    let config = args.oracle.config();
    let formula_config = OracleConfig::default();
    let formula = (args.from..=args.to)
        .map(|n| {
            union_extremal_value(n, family.len(), |m, i| {
                member_ex(&family, args.provider, m, i, &formula_config)
            })
            .map(|v| v.value)
        })
        .collect::<turan_core::Result<Vec<u64>>>()?;
    let report = threshold_scan(&family, args.from..=args.to, |n| formula[n - args.from], &config)?;
    out.push_str(&report.to_table());
    write_json(args.json.as_ref(), &report)?;
    if report.rows.iter().any(|r| r.oracle.is_none()) {
        return Err(CliError::Budget("budget exhausted for some orders; rows left blank".into()));
    }
    Ok(())
}

#[derive(Serialize, Deserialize)]
struct VerifyEntry {
    graph6: String,
    free: bool,
    maximal: bool,
    /// absent when the graph is not free
    audit: Option<turan_core::stability::StructureReport>,
}

#[derive(Serialize, Deserialize)]
struct VerifyRecord {
    family: Vec<String>,
    graphs: Vec<VerifyEntry>,
}

fn verify(args: &VerifyArgs, out: &mut String) -> CliResult {
    let family = ForbiddenFamily::parse(&args.family)?;
    let graphs = graph6::decode_lines(&read_file(&args.graph6)?)?;
    let config = OracleConfig::default();
    let mut entries = Vec::new();
    writeln!(out, "{:<24} {:>5} {:>8} {:>6}", "graph6", "free", "maximal", "audit").unwrap();
    for g in &graphs {
        let free = is_free(g, &family);
        let maximal = free && maximality_audit(g, &family);
        let audit = if free {
            Some(structure_audit(g, &family, args.theta, |m, i| {
                member_ex(&family, args.provider, m, i, &config)
            })?)
        } else {
            None
        };
        let code = graph6::encode(g);
        let verdict = match &audit {
            Some(a) if a.pass => "pass",
            Some(_) => "fail",
            None => "n/a",
        };
        writeln!(out, "{code:<24} {free:>5} {maximal:>8} {verdict:>6}").unwrap();
        entries.push(VerifyEntry {
            graph6: code,
            free,
            maximal,
            audit,
        });
    }
    write_json(
        args.json.as_ref(),
        &Tagged {
            schema: VERIFY_SCHEMA.into(),
            body: VerifyRecord {
                family: family.tokens(),
                graphs: entries,
            },
        },
    )
}

#[derive(Serialize, Deserialize)]
struct CriticalityEntry {
    pattern: String,
    #[serde(flatten)]
    report: turan_core::chromatic::CriticalityReport,
    vertex_critical: bool,
    edge_critical: bool,
}

fn criticality_cmd(args: &CriticalityArgs, out: &mut String) -> CliResult {
    let family = ForbiddenFamily::parse(&args.patterns)?;
    writeln!(out, "{:<12} {:>3} {:>15} {:>13}", "pattern", "chi", "vertex-critical", "edge-critical").unwrap();
    let mut entries = Vec::new();
    for Pattern { name, graph, .. } in family.patterns() {
        let report = criticality(graph);
        let (v, e) = (report.is_vertex_critical(), report.is_edge_critical());
        writeln!(out, "{name:<12} {:>3} {v:>15} {e:>13}", report.chi).unwrap();
        entries.push(CriticalityEntry {
            pattern: name.clone(),
            report,
            vertex_critical: v,
            edge_critical: e,
        });
    }
    write_json(
        args.json.as_ref(),
        &Tagged {
            schema: CRITICALITY_SCHEMA.into(),
            body: Entries { entries },
        },
    )
}

#[derive(Serialize, Deserialize)]
struct PartitionEntry {
    graph6: String,
    #[serde(flatten)]
    diagnostics: turan_core::stability::PartitionDiagnostics,
}

fn stability(args: &StabilityArgs, out: &mut String) -> CliResult {
    let graphs = graph6::decode_lines(&read_file(&args.graph6)?)?;
    let mode = match args.mode {
        Mode::Exact => PartitionMode::Exact,
        Mode::Local => PartitionMode::LocalSearch {
            seed: args.seed,
            starts: args.starts,
        },
    };
    let mut entries = Vec::new();
    for g in &graphs {
        let d = min_internal_partition(g, args.r, mode, args.theta)?;
        let code = graph6::encode(g);
        writeln!(out, "{code}: internal edges {}, W = {}", d.internal_edges, set_text(&d.w_set)).unwrap();
        for (i, part) in d.parts.iter().enumerate() {
            writeln!(out, "  part {i}: {}", set_text(part)).unwrap();
        }
        entries.push(PartitionEntry {
            graph6: code,
            diagnostics: d,
        });
    }
    write_json(
        args.json.as_ref(),
        &Tagged {
            schema: PARTITION_SCHEMA.into(),
            body: Entries { entries },
        },
    )
}

fn run(cli: &Cli, out: &mut String) -> CliResult {
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads.max(1))
            .build_global()
            .map_err(|e| CliError::Usage(format!("--threads: {e}")))?;
    }
    match &cli.command {
        Command::Gen { what } => gen(what, out),
        Command::ExFormula(a) => ex_formula(a, out),
        Command::BruteForce(a) => brute_force(a, out),
        Command::Scan(a) => scan(a, out),
        Command::Verify(a) => verify(a, out),
        Command::Criticality(a) => criticality_cmd(a, out),
        Command::Stability(a) => stability(a, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let result = run(&cli, &mut out);
    print!("{out}");
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
