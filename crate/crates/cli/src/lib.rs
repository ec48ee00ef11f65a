//! Batch front end: generate graphs, run the pipeline, write JSON reports.
//!
//! Every command produces a [`RunReport`]. Reports are written to
//! `--report <path>`, to `$REGULARITY_REPORT_DIR/<command>.json` when that
//! variable is set, or to standard output otherwise. Apart from
//! `timing_ms`, rerunning a command with the same arguments yields
//! byte-identical output.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use regularity::format::{parse_edge_list, parse_partition, to_dot, write_edge_list, write_partition};
use regularity::generate::{generate, GraphKind};
use regularity::refinement::szemeredi_partition_with;
use regularity::regularity::{is_regular_partition_with, CheckerConfig, DEFAULT_SIZE_CAP};
use regularity::removal::triangle_removal_with;
use regularity::report::{
    CensusPayload, ExactValues, PartitionPayload, RegularityPayload, RemovalPayload, RothAuxPayload, RothPayload,
};
use regularity::roth::{build_roth_graph, diamond_free_inequality, roth_aux_verify};
use regularity::triangles::triangle_census;
use regularity::{parse_rational, EdgeSet, ExactRational, Rational, UGraph, VertexPartition, VertexSet};
use regularity_oracles::{all_partitions, brute_regular_pair, brute_triangles, max_ap_free, OracleConfig};

pub const SCHEMA_VERSION: &str = "regularity-report/1";
pub const REPORT_DIR_ENV: &str = "REGULARITY_REPORT_DIR";

#[derive(Debug, Parser)]
#[command(name = "regularity", version, about = "Exact regularity partitions, triangle removal and the Roth construction")]
pub struct Cli {
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
    /// Write a Graphviz rendering of the graph (and partition) here.
    #[arg(long, global = true)]
    pub dot: Option<PathBuf>,
    /// Seed for randomised generators.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest part the exact regularity checker accepts.
    #[arg(long, global = true, default_value_t = DEFAULT_SIZE_CAP)]
    pub cap_checker: usize,
    /// Largest pair side for the brute-force pair oracle.
    #[arg(long, global = true, default_value_t = 6)]
    pub cap_subset: usize,
    /// Largest ground set for partition enumeration.
    #[arg(long, global = true, default_value_t = 7)]
    pub cap_partition: usize,
    /// Largest N for the progression-free search.
    #[arg(long, global = true, default_value_t = 20)]
    pub cap_ap: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Random,
    Complete,
    Tripartite,
    BipartiteHalf,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a graph and write it as an edge list.
    Gen {
        #[arg(long, value_enum)]
        kind: Kind,
        /// Vertex count (random, complete, bipartite-half).
        #[arg(long)]
        n: Option<usize>,
        /// Edge probability for `random`, e.g. 1/2 or 0.25.
        #[arg(long)]
        p: Option<String>,
        /// Part sizes for `tripartite`, e.g. 2,3,3.
        #[arg(long)]
        sizes: Option<String>,
        /// Edge-list destination; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Refine to an ε-regular partition.
    Partition {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        epsilon: String,
        /// Also write the partition file here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check whether a given partition is ε-regular.
    Check {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        partition: PathBuf,
        #[arg(long)]
        epsilon: String,
    },
    /// Count and list triangles.
    Triangles {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Partition, clean and count: the triangle removal procedure.
    Clean {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        epsilon: String,
        /// Write the cleaned edge list here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the tripartite graph for N and A, or verify every A for N.
    Roth {
        #[arg(long)]
        n: usize,
        /// Comma-separated residues or `file:<path>`.
        #[arg(long, default_value = "")]
        a: String,
        /// Evaluate `|E| ≤ ε|V|²` (single instance) or compare with `εN` (`--aux`).
        #[arg(long)]
        epsilon: Option<String>,
        /// Check the construction for every subset of {0..N−1}.
        #[arg(long)]
        aux: bool,
    },
    /// Brute-force reference computations.
    Oracle {
        #[command(subcommand)]
        sub: OracleCommand,
    },
}

#[derive(Debug, Subcommand)]
pub enum OracleCommand {
    /// Full subset enumeration for one pair.
    RegularPair {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        epsilon: String,
        /// Only proper subsets.
        #[arg(long)]
        strict: bool,
    },
    /// Enumerate the set partitions of {0..n−1}.
    Partitions {
        #[arg(long)]
        n: usize,
        /// Include every partition in the report.
        #[arg(long)]
        list: bool,
    },
    /// Triangles by triple loop.
    Triangles {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Largest progression-free subset of {0..N−1}.
    ApFree {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Domain(#[from] regularity::Error),
    #[error("invalid argument: {0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) | CliError::Usage(_) => 1,
            CliError::Io { .. } => 2,
        }
    }

    pub fn to_json(&self) -> Value {
        let kind = match self {
            CliError::Domain(e) => e.kind(),
            CliError::Usage(_) => "usage",
            CliError::Io { .. } => "io",
        };
        json!({ "error": { "kind": kind, "message": self.to_string(), "exit_code": self.exit_code() } })
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema_version: String,
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub exact_values: BTreeMap<String, ExactRational>,
    pub timing_ms: u64,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("reports serialise");
        text.push('\n');
        text
    }
}

/// Structural check of a serialised report against [`SCHEMA_VERSION`].
pub fn validate_report(value: &Value) -> std::result::Result<(), String> {
    let obj = value.as_object().ok_or("report is not an object")?;
    match obj.get("schema_version").and_then(Value::as_str) {
        Some(SCHEMA_VERSION) => {}
        other => return Err(format!("unexpected schema_version {other:?}")),
    }
    if !obj.get("command").is_some_and(Value::is_string) {
        return Err("command must be a string".into());
    }
    for key in ["inputs", "results", "exact_values"] {
        if !obj.get(key).is_some_and(Value::is_object) {
            return Err(format!("{key} must be an object"));
        }
    }
    if !obj.get("timing_ms").is_some_and(Value::is_u64) {
        return Err("timing_ms must be a natural number".into());
    }
    for (name, exact) in obj["exact_values"].as_object().into_iter().flatten() {
        let parsed: ExactRational =
            serde_json::from_value(exact.clone()).map_err(|e| format!("exact value {name}: {e}"))?;
        Rational::try_from(&parsed).map_err(|e| format!("exact value {name}: {e}"))?;
    }
    let allowed = ["schema_version", "command", "inputs", "results", "exact_values", "timing_ms"];
    if let Some(extra) = obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        return Err(format!("unexpected field {extra}"));
    }
    Ok(())
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn write(path: &Path, contents: &str) -> CliResult<()> {
    fs::write(path, contents).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn load_graph(path: &Path) -> CliResult<UGraph> {
    Ok(parse_edge_list(&read(path)?)?)
}

fn epsilon_arg(text: &str) -> CliResult<Rational> {
    Ok(parse_rational(text)?)
}

fn exact_json(r: &Rational) -> Value {
    serde_json::to_value(ExactRational::from(r)).expect("rationals serialise")
}

fn to_json<T: Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("payloads serialise")
}

/// Parses `"0,1,5"` or `"file:<path>"` (commas or whitespace in the file).
pub fn parse_set_spec(spec: &str) -> CliResult<VertexSet> {
    let text = match spec.strip_prefix("file:") {
        Some(path) => read(Path::new(path))?,
        None => spec.to_string(),
    };
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| CliError::Usage(format!("{s:?} is not a natural number"))))
        .collect()
}

fn graph_summary(path: &Path, g: &UGraph) -> Value {
    json!({ "path": path.display().to_string(), "vertices": g.vertex_count(), "edges": g.edge_count() })
}

fn write_dot(cli: &Cli, g: &UGraph, p: Option<&VertexPartition>, highlight: &EdgeSet) -> CliResult<()> {
    match &cli.dot {
        Some(path) => write(path, &to_dot(g, p, highlight)),
        None => Ok(()),
    }
}

struct Outcome {
    command: &'static str,
    inputs: Value,
    results: Value,
    exact_values: ExactValues,
}

/// Runs the command and builds its report; files named by `--out` and
/// `--dot` are written along the way.
pub fn execute(cli: &Cli) -> CliResult<RunReport> {
    let start = Instant::now();
    let checker = CheckerConfig { size_cap: cli.cap_checker };
    let oracle = OracleConfig { subset_cap: cli.cap_subset, partition_cap: cli.cap_partition, ap_cap: cli.cap_ap };
    oracle.validate()?;
    let outcome = match &cli.command {
        Command::Gen { kind, n, p, sizes, out } => cmd_gen(cli, *kind, *n, p.as_deref(), sizes.as_deref(), out.as_deref())?,
        Command::Partition { graph, epsilon, out } => cmd_partition(cli, graph, epsilon, out.as_deref(), &checker)?,
        Command::Check { graph, partition, epsilon } => cmd_check(cli, graph, partition, epsilon, &checker)?,
        Command::Triangles { graph } => cmd_triangles(cli, graph)?,
        Command::Clean { graph, epsilon, out } => cmd_clean(cli, graph, epsilon, out.as_deref(), &checker)?,
        Command::Roth { n, a, epsilon, aux } => cmd_roth(cli, *n, a, epsilon.as_deref(), *aux)?,
        Command::Oracle { sub } => cmd_oracle(cli, sub, &oracle)?,
    };
    Ok(RunReport {
        schema_version: SCHEMA_VERSION.into(),
        command: outcome.command.into(),
        inputs: outcome.inputs,
        results: outcome.results,
        exact_values: outcome.exact_values,
        timing_ms: start.elapsed().as_millis() as u64,
    })
}

fn cmd_gen(
    cli: &Cli,
    kind: Kind,
    n: Option<usize>,
    p: Option<&str>,
    sizes: Option<&str>,
    out: Option<&Path>,
) -> CliResult<Outcome> {
    let need_n = || n.ok_or_else(|| CliError::Usage("--n is required for this kind".into()));
    let mut exact_values = ExactValues::new();
    let graph_kind = match kind {
        Kind::Random => {
            let p = parse_rational(p.ok_or_else(|| CliError::Usage("--p is required for random graphs".into()))?)?;
            exact_values.insert("p".into(), ExactRational::from(&p));
            GraphKind::Random { n: need_n()?, p, seed: cli.seed }
        }
        Kind::Complete => GraphKind::Complete(need_n()?),
        Kind::BipartiteHalf => GraphKind::BipartiteHalf(need_n()?),
        Kind::Tripartite => {
            let spec = sizes.ok_or_else(|| CliError::Usage("--sizes a,b,c is required for tripartite".into()))?;
            let parts: Vec<usize> = spec
                .split(',')
                .map(|s| s.trim().parse().map_err(|_| CliError::Usage(format!("bad part size {s:?}"))))
                .collect::<CliResult<_>>()?;
            let [a, b, c] = parts[..] else {
                return Err(CliError::Usage("--sizes needs exactly three values".into()));
            };
            GraphKind::CompleteTripartite(a, b, c)
        }
    };
    let g = generate(&graph_kind)?;
    let text = write_edge_list(&g)?;
    if let Some(path) = out {
        write(path, &text)?;
    }
    write_dot(cli, &g, None, &EdgeSet::new())?;
    let inputs = json!({
        "kind": format!("{kind:?}").to_lowercase(),
        "n": n,
        "p": p,
        "sizes": sizes,
        "seed": cli.seed,
        "out": out.map(|p| p.display().to_string()),
    });
    let mut results = json!({ "vertices": g.vertex_count(), "edges": g.edge_count() });
    if out.is_none() {
        results["edge_list"] = Value::String(text);
    }
    Ok(Outcome { command: "gen", inputs, results, exact_values })
}

fn cmd_partition(cli: &Cli, graph: &Path, epsilon: &str, out: Option<&Path>, checker: &CheckerConfig) -> CliResult<Outcome> {
    let g = load_graph(graph)?;
    let eps = epsilon_arg(epsilon)?;
    let srl = szemeredi_partition_with(&g, &eps, None, checker)?;
    if let Some(path) = out {
        write(path, &write_partition(&srl.partition))?;
    }
    write_dot(cli, &g, Some(&srl.partition), &EdgeSet::new())?;
    let payload = PartitionPayload::from(&srl);
    Ok(Outcome {
        command: "partition",
        inputs: json!({ "graph": graph_summary(graph, &g), "epsilon": exact_json(&eps), "cap_checker": checker.size_cap }),
        exact_values: payload.exact_values(),
        results: to_json(&payload),
    })
}

fn cmd_check(cli: &Cli, graph: &Path, partition: &Path, epsilon: &str, checker: &CheckerConfig) -> CliResult<Outcome> {
    let g = load_graph(graph)?;
    let p = parse_partition(&read(partition)?, g.vertices())?;
    let eps = epsilon_arg(epsilon)?;
    let verdict = is_regular_partition_with(&eps, &g, &p, checker)?;
    write_dot(cli, &g, Some(&p), &EdgeSet::new())?;
    let payload = RegularityPayload::from(&verdict);
    let parts: Vec<Vec<usize>> = p.iter().map(|part| part.iter().copied().collect()).collect();
    let mut exact_values = ExactValues::new();
    exact_values.insert("epsilon".into(), ExactRational::from(&eps));
    exact_values.insert("defect".into(), payload.defect.clone());
    exact_values.insert("threshold".into(), payload.threshold.clone());
    Ok(Outcome {
        command: "check",
        inputs: json!({
            "graph": graph_summary(graph, &g),
            "partition": partition.display().to_string(),
            "epsilon": exact_json(&eps),
            "cap_checker": checker.size_cap,
        }),
        results: json!({ "parts": parts, "regularity": to_json(&payload) }),
        exact_values,
    })
}

fn cmd_triangles(cli: &Cli, graph: &Path) -> CliResult<Outcome> {
    let g = load_graph(graph)?;
    let v = g.vertices().clone();
    let census = triangle_census(&v, &v, &v, &g);
    write_dot(cli, &g, None, &EdgeSet::new())?;
    Ok(Outcome {
        command: "triangles",
        inputs: json!({ "graph": graph_summary(graph, &g) }),
        results: to_json(&CensusPayload::new(g.vertex_count(), g.edge_count(), &census)),
        exact_values: ExactValues::new(),
    })
}

fn cmd_clean(cli: &Cli, graph: &Path, epsilon: &str, out: Option<&Path>, checker: &CheckerConfig) -> CliResult<Outcome> {
    let g = load_graph(graph)?;
    let eps = epsilon_arg(epsilon)?;
    let removal = triangle_removal_with(&g, &eps, checker)?;
    if let Some(path) = out {
        write(path, &write_edge_list(&removal.cleaned)?)?;
    }
    let removed: EdgeSet = g.edges().difference(removal.cleaned.edges()).copied().collect();
    let partition = removal.clean.as_ref().map(|c| &c.partition_used);
    write_dot(cli, &removal.cleaned, partition, &removed)?;
    let payload = RemovalPayload::from(&removal);
    let mut results = to_json(&payload);
    if out.is_none() {
        results["cleaned_edge_list"] = Value::String(write_edge_list(&removal.cleaned)?);
    }
    Ok(Outcome {
        command: "clean",
        inputs: json!({
            "graph": graph_summary(graph, &g),
            "epsilon": exact_json(&eps),
            "cap_checker": checker.size_cap,
            "out": out.map(|p| p.display().to_string()),
        }),
        exact_values: payload.exact_values(),
        results,
    })
}

fn cmd_roth(cli: &Cli, n: usize, a_spec: &str, epsilon: Option<&str>, aux: bool) -> CliResult<Outcome> {
    let eps = epsilon.map(epsilon_arg).transpose()?;
    let mut exact_values = ExactValues::new();
    if let Some(e) = &eps {
        exact_values.insert("epsilon".into(), ExactRational::from(e));
    }
    if aux {
        let eps = eps.ok_or_else(|| CliError::Usage("--aux needs --epsilon".into()))?;
        let report = roth_aux_verify(n, &eps)?;
        let payload = RothAuxPayload::from(&report);
        exact_values.insert("eps_n".into(), payload.eps_n.clone());
        return Ok(Outcome {
            command: "roth",
            inputs: json!({ "n": n, "aux": true, "epsilon": exact_json(&eps) }),
            results: to_json(&payload),
            exact_values,
        });
    }
    let a = parse_set_spec(a_spec)?;
    let inst = build_roth_graph(n, &a)?;
    let labels = VertexPartition::from_parts(inst.parts.iter().cloned().collect())?;
    write_dot(cli, &inst.graph, Some(&labels), &EdgeSet::new())?;
    let mut results = to_json(&RothPayload::from(&inst));
    if let Some(e) = &eps {
        let diamond = diamond_free_inequality(&inst.graph, e)?;
        exact_values.insert("edge_bound".into(), ExactRational::from(&diamond.edge_bound));
        results["diamond_free"] = json!({
            "edges": diamond.edges,
            "triangles": diamond.triangles,
            "edge_bound": exact_json(&diamond.edge_bound),
            "holds": diamond.holds,
        });
    }
    Ok(Outcome {
        command: "roth",
        inputs: json!({ "n": n, "a": a, "epsilon": eps.as_ref().map(exact_json) }),
        results,
        exact_values,
    })
}

fn cmd_oracle(cli: &Cli, sub: &OracleCommand, config: &OracleConfig) -> CliResult<Outcome> {
    let caps = json!({ "subset": config.subset_cap, "partition": config.partition_cap, "ap": config.ap_cap });
    let mut exact_values = ExactValues::new();
    let (inputs, results) = match sub {
        OracleCommand::RegularPair { graph, x, y, epsilon, strict } => {
            let g = load_graph(graph)?;
            let (xs, ys) = (parse_set_spec(x)?, parse_set_spec(y)?);
            let eps = epsilon_arg(epsilon)?;
            let outcome = brute_regular_pair(&xs, &ys, &g, &eps, *strict, config)?;
            exact_values.insert("epsilon".into(), ExactRational::from(&eps));
            let witness = outcome.witness().map(|w| {
                exact_values.insert("deviation".into(), ExactRational::from(&w.deviation));
                json!({ "a": w.a, "b": w.b, "deviation": exact_json(&w.deviation) })
            });
            write_dot(cli, &g, None, &EdgeSet::new())?;
            (
                json!({ "oracle": "regular-pair", "graph": graph_summary(graph, &g), "x": xs, "y": ys,
                        "epsilon": exact_json(&eps), "strict": strict, "caps": caps }),
                json!({ "regular": outcome.is_regular(), "witness": witness }),
            )
        }
        OracleCommand::Partitions { n, list } => {
            let ground: VertexSet = (0..*n).collect();
            let all: Vec<VertexPartition> = all_partitions(&ground, config)?.collect();
            let mut results = json!({ "count": all.len() });
            if *list {
                let listed: Vec<Vec<Vec<usize>>> =
                    all.iter().map(|p| p.iter().map(|part| part.iter().copied().collect()).collect()).collect();
                results["partitions"] = to_json(&listed);
            }
            (json!({ "oracle": "partitions", "n": n, "list": list, "caps": caps }), results)
        }
        OracleCommand::Triangles { graph } => {
            let g = load_graph(graph)?;
            let triangles = brute_triangles(&g)?;
            write_dot(cli, &g, None, &EdgeSet::new())?;
            (
                json!({ "oracle": "triangles", "graph": graph_summary(graph, &g), "caps": caps }),
                json!({ "count": triangles.len(), "triangles": triangles }),
            )
        }
        OracleCommand::ApFree { n } => {
            let (size, witness) = max_ap_free(*n, config)?;
            (json!({ "oracle": "ap-free", "n": n, "caps": caps }), json!({ "size": size, "witness": witness }))
        }
    };
    Ok(Outcome { command: "oracle", inputs, results, exact_values })
}

/// Where the report for `cli` goes, if not to stdout.
pub fn report_destination(cli: &Cli, command: &str) -> Option<PathBuf> {
    cli.report
        .clone()
        .or_else(|| std::env::var_os(REPORT_DIR_ENV).map(|dir| Path::new(&dir).join(format!("{command}.json"))))
}

/// Runs `cli`, emits the report, and returns the process exit code. Errors
/// go to stderr as a JSON object.
pub fn run(cli: &Cli) -> i32 {
    let result = execute(cli).and_then(|report| {
        let text = report.to_json();
        match report_destination(cli, &report.command) {
            Some(path) => write(&path, &text),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("{}", e.to_json());
            e.exit_code()
        }
    }
}
