//! `wspoly` — exact weighted-set chromatic polynomials from the shell.
//!
//! Exit status: 0 on success, 1 when an identity or oracle comparison fails
//! (the ledger is still printed), 2 on usage or input errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use wspoly::asymptotics::{phi_circuit, qc_circuit};
use wspoly::engine::{self, compute_envelope, oracle_ph_capped, oracle_z_capped, EngineOptions, Mode};
use wspoly::identities::{run_suite, Suite};
use wspoly::zeros;
use wspoly::{families, make_family, strips, FamilyKind, Graph, MultiPoly, Var};

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{flag}: {message}")]
    Usage { flag: &'static str, message: String },
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Engine(#[from] wspoly::Error),
}

fn usage(flag: &'static str, message: impl Into<String>) -> CliError {
    CliError::Usage { flag, message: message.into() }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Parser)]
#[command(
    name = "wspoly",
    version,
    about = "Weighted-set chromatic polynomials and Potts partition functions in a field"
)]
struct Cli {
    /// Seed for randomized property sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for subgraph enumeration (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,
    /// Edge cap for subgraph enumeration (default from WSPOLY_EDGE_CAP, else 30).
    #[arg(long, global = true)]
    edge_cap: Option<usize>,
    /// Report `wall_ms` as 0 so that output is byte-identical across runs.
    #[arg(long, global = true)]
    no_timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Z, Ph or the Tutte polynomial of a graph by subgraph enumeration.
    Compute {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, value_enum, default_value_t = ModeArg::Ph)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Closed form for a named family, valid far beyond the enumeration cap.
    Family {
        #[arg(long)]
        kind: FamilyKind,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Ph)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run an identity suite and print the pass/fail ledger.
    Check {
        #[arg(long, default_value = "all")]
        suite: Suite,
        /// Graph file, or a directory of graph files; built-in fixtures when omitted.
        #[arg(long)]
        graphs: Option<PathBuf>,
    },
    /// Strip-coefficient multiplicity tables.
    Strips {
        #[arg(long, default_value_t = 6)]
        ly_max: usize,
        /// Write the table here instead of stdout.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Zeros of Z or Ph in one variable with the others fixed.
    Zeros {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, value_enum, default_value_t = ModeArg::Ph)]
        mode: ModeArg,
        #[arg(long)]
        var: char,
        /// Fixed values, e.g. `s=1,w=0.5`.
        #[arg(long, default_value = "")]
        fix: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dominant eigenvalue modulus of the circuit transfer matrix.
    Phi {
        #[arg(long, allow_negative_numbers = true)]
        q: f64,
        #[arg(long, allow_negative_numbers = true)]
        s: f64,
        #[arg(long, allow_negative_numbers = true)]
        w: f64,
    },
    /// Rightmost real crossing q_c of the circuit zero locus.
    Qc {
        #[arg(long)]
        s: u32,
        #[arg(long)]
        w: f64,
    },
    /// Brute-force coloring sum at integer q, s compared with the engine.
    Oracle {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        s: u32,
        #[arg(long, value_enum, default_value_t = ModeArg::Ph)]
        mode: ModeArg,
    },
}

#[derive(Args)]
struct GraphArg {
    /// Graph file: JSON or `n <count>` edge list.
    #[arg(long, conflicts_with = "family", required_unless_present = "family")]
    graph: Option<PathBuf>,
    /// Named family instead of a file (with --n).
    #[arg(long, requires = "n")]
    family: Option<FamilyKind>,
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Z,
    Ph,
    Tutte,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Latex,
    Text,
}

struct Outcome {
    text: String,
    ok: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self { text, ok: true }
    }
}

fn pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serializes")
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn write(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn load_graph(arg: &GraphArg) -> CliResult<Graph> {
    match (&arg.graph, arg.family) {
        (Some(path), _) => Graph::parse_any(&read(path)?).map_err(|e| usage("--graph", e.to_string())),
        (None, Some(kind)) => make_family(kind, arg.n.unwrap_or(0)).map_err(|e| usage("--n", e.to_string())),
        (None, None) => Err(usage("--graph", "a graph file or --family is required")),
    }
}

fn load_graphs(path: &Path) -> CliResult<Vec<(String, Graph)>> {
    let files = if path.is_dir() {
        let mut files: Vec<PathBuf> = fs::read_dir(path)
            .map_err(|source| CliError::Io { path: path.to_path_buf(), source })?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.is_file())
            .collect();
        files.sort();
        files
    } else {
        vec![path.to_path_buf()]
    };
    files
        .iter()
        .map(|f| {
            let name = f.file_stem().map_or_else(|| f.display().to_string(), |s| s.to_string_lossy().into_owned());
            let g = Graph::parse_any(&read(f)?).map_err(|e| usage("--graphs", format!("{}: {e}", f.display())))?;
            Ok((name, g))
        })
        .collect()
}

fn parse_var(c: char, allow_v: bool) -> CliResult<Var> {
    let var = Var::from_symbol(c)
        .filter(|v| Var::ALL.contains(v))
        .ok_or_else(|| usage("--var", format!("`{c}` is not one of q, s, v, w")))?;
    if var == Var::V && !allow_v {
        return Err(usage("--var", "Ph is the v = -1 specialization; v is not free"));
    }
    Ok(var)
}

/// `s=1,w=0.5` → bindings; empty input gives none.
fn parse_fix(text: &str) -> CliResult<Vec<(Var, f64)>> {
    text.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|pair| {
            let (name, value) =
                pair.split_once('=').ok_or_else(|| usage("--fix", format!("expected `name=value`, found `{pair}`")))?;
            let mut chars = name.trim().chars();
            let var = match (chars.next(), chars.next()) {
                (Some(c), None) => Var::from_symbol(c).filter(|v| Var::ALL.contains(v)),
                _ => None,
            }
            .ok_or_else(|| usage("--fix", format!("unknown variable `{name}`")))?;
            let value: f64 = value.trim().parse().map_err(|_| usage("--fix", format!("bad number `{value}`")))?;
            if !value.is_finite() {
                return Err(usage("--fix", format!("`{pair}` is not finite")));
            }
            Ok((var, value))
        })
        .collect()
}

fn render(poly: &MultiPoly, format: Format) -> String {
    match format {
        Format::Json => pretty(&poly.to_json()),
        Format::Latex => poly.to_latex(),
        Format::Text => poly.to_string(),
    }
}

fn engine_options(cli: &Cli) -> EngineOptions {
    let mut opts = EngineOptions::from_env().with_workers(cli.workers);
    if let Some(cap) = cli.edge_cap {
        opts = opts.with_edge_cap(cap);
    }
    opts
}

fn dispatch(cli: &Cli) -> CliResult<Outcome> {
    let opts = engine_options(cli);
    match &cli.command {
        Command::Compute { graph, mode, format } => {
            let g = load_graph(graph)?;
            match (mode, format) {
                (_, Format::Json) => {
                    let mode = match mode {
                        ModeArg::Z => Mode::Z,
                        ModeArg::Ph => Mode::Ph,
                        ModeArg::Tutte => Mode::Tutte,
                    };
                    let mut envelope = compute_envelope(&g, mode, &opts)?;
                    if cli.no_timing {
                        envelope.wall_ms = 0.0;
                    }
                    Ok(Outcome::ok(pretty(&envelope)))
                }
                (ModeArg::Tutte, _) => Err(usage("--format", "the Tutte polynomial is emitted as JSON only")),
                (ModeArg::Z, f) => Ok(Outcome::ok(render(&engine::z_subgraph_sum_with(&g, &opts)?, *f))),
                (ModeArg::Ph, f) => Ok(Outcome::ok(render(&engine::ph_with(&g, &opts)?, *f))),
            }
        }
        Command::Family { kind, n, mode, format } => {
            let poly = match mode {
                ModeArg::Z => families::family_z(*kind, *n),
                ModeArg::Ph => families::family_ph(*kind, *n),
                ModeArg::Tutte => return Err(usage("--mode", "families provide z and ph closed forms")),
            }
            .map_err(|e| match e {
                wspoly::Error::BadSize { .. } => usage("--n", e.to_string()),
                other => CliError::Engine(other),
            })?;
            Ok(Outcome::ok(render(&poly, *format)))
        }
        Command::Check { suite, graphs } => {
            let graphs = match graphs {
                Some(path) => load_graphs(path)?,
                None => Vec::new(),
            };
            let ledger = run_suite(*suite, &graphs, cli.seed)?;
            Ok(Outcome { ok: ledger.passed(), text: pretty(&ledger) })
        }
        Command::Strips { ly_max, emit } => {
            if *ly_max == 0 {
                return Err(usage("--ly-max", "must be at least 1"));
            }
            let tables = strips::build_counts(*ly_max)?;
            let mut problems = Vec::new();
            for ly in 1..=*ly_max {
                if let Err(e) = strips::verify_sum_identities(&tables[ly - 1]) {
                    problems.push(e.to_string());
                }
                if let Err(e) = strips::verify_relation_and_totals(&tables, ly) {
                    problems.push(e.to_string());
                }
            }
            let ok = problems.is_empty();
            let text = pretty(&json!({
                "tables": tables.iter().map(|t| t.to_json()).collect::<Vec<Value>>(),
                "verified": ok,
                "problems": problems,
            }));
            match emit {
                Some(path) => {
                    write(path, &text)?;
                    Ok(Outcome { ok, text: String::new() })
                }
                None => Ok(Outcome { ok, text }),
            }
        }
        Command::Zeros { graph, mode, var, fix, out } => {
            let g = load_graph(graph)?;
            let (poly, allow_v) = match mode {
                ModeArg::Z => (engine::z_subgraph_sum_with(&g, &opts)?, true),
                ModeArg::Ph => (engine::ph_with(&g, &opts)?, false),
                ModeArg::Tutte => return Err(usage("--mode", "zeros are computed for z or ph")),
            };
            let var = parse_var(*var, allow_v)?;
            let fixed = parse_fix(fix)?;
            if fixed.iter().any(|(v, _)| *v == var) {
                return Err(usage("--fix", format!("{var} is the free variable")));
            }
            let slice = zeros::zeros(&poly, var, &fixed, zeros::DEFAULT_TOLERANCE).map_err(|e| match e {
                wspoly::Error::MissingBinding(_) | wspoly::Error::ZeroPolynomial => usage("--fix", e.to_string()),
                other => CliError::Engine(other),
            })?;
            let text = pretty(&slice.roots);
            match out {
                Some(path) => {
                    write(path, &text)?;
                    Ok(Outcome::ok(String::new()))
                }
                None => Ok(Outcome::ok(text)),
            }
        }
        Command::Phi { q, s, w } => Ok(Outcome::ok(pretty(&phi_circuit(*q, *s, *w)))),
        Command::Qc { s, w } => {
            if !w.is_finite() || *w < 0.0 {
                return Err(usage("--w", "must be a finite w >= 0"));
            }
            Ok(Outcome::ok(pretty(&qc_circuit(*s, *w))))
        }
        Command::Oracle { graph, q, s, mode } => {
            if s > q {
                return Err(usage("--s", format!("s = {s} exceeds q = {q}")));
            }
            let g = load_graph(graph)?;
            let cap = engine::DEFAULT_COLORING_CAP;
            let (oracle, full) = match mode {
                ModeArg::Z => (oracle_z_capped(&g, *q, *s, cap)?, engine::z_subgraph_sum_with(&g, &opts)?),
                ModeArg::Ph => (oracle_ph_capped(&g, *q, *s, cap)?, engine::ph_with(&g, &opts)?),
                ModeArg::Tutte => return Err(usage("--mode", "the oracle evaluates z or ph")),
            };
            let engine_value = full.subs_int(Var::Q, i64::from(*q)).subs_int(Var::S, i64::from(*s));
            let matches = oracle == engine_value;
            let doc = json!({
                "graph_hash": g.digest(),
                "q": q,
                "s": s,
                "oracle": oracle.to_string(),
                "engine": engine_value.to_string(),
                "match": matches,
            });
            Ok(Outcome { ok: matches, text: pretty(&doc) })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(outcome) => {
            if !outcome.text.is_empty() {
                // A closed pipe (`| head`) is not an error worth a panic.
                let _ = writeln!(std::io::stdout().lock(), "{}", outcome.text);
            }
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
