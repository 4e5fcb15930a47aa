//! `cartham`: products, Hamiltonian cycle construction, factors, toughness,
//! oracle checks and exploratory scans from the command line.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use cartham::factor::{self, FactorCertificate};
use cartham::ham::{self, BuildError, HamCycle, Mode};
use cartham::oracle::{self, Verdict};
use cartham::toughness::{self, OneTough, ToughnessError};
use cartham::{Budget, Graph, Product};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "cartham", version, about = "Hamiltonian cycles in Cartesian products P_n □ G")]
struct Cli {
    /// Emit a machine-readable JSON record on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for the parallel searches.
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the edge list of P_n □ G.
    Product {
        #[arg(long)]
        n: usize,
        /// Edge-list file, or `fixture:NAME`.
        #[arg(long)]
        graph: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a Hamiltonian cycle of P_n □ G from a factor of G.
    Hamcycle {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        graph: String,
        #[arg(long, value_enum, default_value_t = CliMode::Auto)]
        mode: CliMode,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write a DOT rendering with the cycle in bold.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Find a perfect matching or {P2,P3}-factor, or a certificate that none exists.
    Pathfactor {
        #[arg(long)]
        graph: String,
        #[arg(long, value_enum, default_value_t = Kind::P23)]
        kind: Kind,
    },
    /// Exact toughness, or a 1-toughness decision with witness.
    Toughness {
        #[arg(long)]
        graph: String,
        /// Only decide whether the graph is 1-tough.
        #[arg(long)]
        one_tough: bool,
        #[arg(long, default_value_t = 60.0)]
        budget_seconds: f64,
    },
    /// Exhaustive Hamiltonicity check of G, or of P_n □ G when --n is given.
    Check {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 60.0)]
        budget_seconds: f64,
    },
    /// Validate a cycle file against P_n □ G.
    Verify {
        /// The base graph G.
        #[arg(long)]
        graph: String,
        #[arg(long)]
        cycle: PathBuf,
    },
    /// Exploratory scans: 1 = maximum degree k against P_{4k-4}, 2 = balanced bipartite products.
    Scan {
        family: u8,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = 8)]
        max_order: usize,
        #[arg(long, default_value_t = 6)]
        max_h: usize,
        #[arg(long, default_value_t = 9)]
        max_n: usize,
        #[arg(long, default_value_t = 60.0)]
        budget_seconds: f64,
        #[arg(long, default_value_t = 0)]
        resume_from: usize,
        /// Report log file; counterexample edge lists go next to it.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CliMode {
    Auto,
    Matching,
    Pathfactor,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Pm,
    P23,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum ErrorKind {
    Usage,
    Parse,
    Precondition,
    NoFactor,
    Budget,
}

impl ErrorKind {
    fn code(self) -> u8 {
        match self {
            ErrorKind::Usage => 1,
            ErrorKind::Parse => 2,
            ErrorKind::Precondition => 3,
            ErrorKind::NoFactor => 4,
            ErrorKind::Budget => 5,
        }
    }

    fn name(self) -> &'static str {
        match self {
            ErrorKind::Usage => "usage",
            ErrorKind::Parse => "parse",
            ErrorKind::Precondition => "precondition",
            ErrorKind::NoFactor => "no-factor",
            ErrorKind::Budget => "budget",
        }
    }
}

struct CliError {
    kind: ErrorKind,
    message: String,
    payload: Value,
}

impl CliError {
    fn new(kind: ErrorKind, message: impl Into<String>) -> Self {
        CliError {
            kind,
            message: message.into(),
            payload: Value::Null,
        }
    }

    fn with(mut self, payload: Value) -> Self {
        self.payload = payload;
        self
    }
}

/// Payload plus human-readable text of a successful command.
struct Output {
    payload: Value,
    text: String,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    if let Some(w) = cli.workers {
        if rayon::ThreadPoolBuilder::new().num_threads(w).build_global().is_err() {
            eprintln!("error: could not start {w} workers");
            return ExitCode::from(1);
        }
    }
    match run(cli.command) {
        Ok(out) => {
            if cli.json {
                let mut payload = out.payload;
                payload["status"] = json!("ok");
                println!("{}", serde_json::to_string(&payload).expect("payload serializes"));
            } else {
                print!("{}", out.text);
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            if cli.json {
                let payload = json!({
                    "status": "error",
                    "kind": err.kind.name(),
                    "message": err.message,
                    "details": err.payload,
                });
                println!("{}", serde_json::to_string(&payload).expect("payload serializes"));
            } else {
                eprintln!("error ({}): {}", err.kind.name(), err.message);
                if !err.payload.is_null() {
                    eprintln!("{}", serde_json::to_string_pretty(&err.payload).expect("payload serializes"));
                }
            }
            ExitCode::from(err.kind.code())
        }
    }
}

fn run(command: Command) -> Result<Output, CliError> {
    match command {
        Command::Product { n, graph, out } => cmd_product(n, &graph, out.as_deref()),
        Command::Hamcycle { n, graph, mode, out, dot } => {
            cmd_hamcycle(n, &graph, mode, out.as_deref(), dot.as_deref())
        }
        Command::Pathfactor { graph, kind } => cmd_pathfactor(&graph, kind),
        Command::Toughness { graph, one_tough, budget_seconds } => {
            cmd_toughness(&graph, one_tough, budget(budget_seconds)?)
        }
        Command::Check { graph, n, budget_seconds } => cmd_check(&graph, n, budget(budget_seconds)?),
        Command::Verify { graph, cycle } => cmd_verify(&graph, &cycle),
        Command::Scan {
            family,
            k,
            max_order,
            max_h,
            max_n,
            budget_seconds,
            resume_from,
            out,
        } => {
            let budget = budget(budget_seconds)?;
            let report = match family {
                1 => oracle::scan_degree_bound(k, max_order, budget, resume_from),
                2 => oracle::scan_balanced_products(max_h, max_n, budget, resume_from),
                other => {
                    return Err(CliError::new(ErrorKind::Usage, format!("unknown scan family {other}; use 1 or 2")))
                }
            }
            .map_err(|e| CliError::new(ErrorKind::Usage, e.to_string()))?;
            cmd_scan(report, out.as_deref())
        }
    }
}

fn budget(seconds: f64) -> Result<Budget, CliError> {
    if !(seconds.is_finite() && seconds > 0.0) {
        return Err(CliError::new(ErrorKind::Usage, "--budget-seconds must be positive"));
    }
    Ok(Budget::seconds(seconds))
}

fn load_graph(source: &str) -> Result<Graph, CliError> {
    if let Some(name) = source.strip_prefix("fixture:") {
        let fixtures = oracle::fixtures();
        return fixtures
            .get(name)
            .map(|f| f.graph.clone())
            .ok_or_else(|| CliError::new(ErrorKind::Parse, format!("unknown fixture {name:?}")));
    }
    let text = std::fs::read_to_string(source)
        .map_err(|e| CliError::new(ErrorKind::Parse, format!("{source}: {e}")))?;
    Graph::parse_edge_list(&text).map_err(|e| CliError::new(ErrorKind::Parse, format!("{source}: {e}")))
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents)
        .map_err(|e| CliError::new(ErrorKind::Parse, format!("{}: {e}", path.display())))
}

fn need_layers(n: usize) -> Result<(), CliError> {
    if n == 0 {
        return Err(CliError::new(ErrorKind::Precondition, "--n must be at least 1"));
    }
    Ok(())
}

fn certificate_json(c: &FactorCertificate) -> Value {
    json!({
        "cut": c.cut,
        "isolated": c.isolated,
        "isolated_count": c.isolated_count(),
        "bound": 2 * c.cut.len(),
        "text": c.to_string(),
    })
}

fn cmd_product(n: usize, graph: &str, out: Option<&Path>) -> Result<Output, CliError> {
    need_layers(n)?;
    let g = load_graph(graph)?;
    let p = Product::path(n, &g);
    let list = p.graph().to_edge_list();
    let mut payload = json!({
        "command": "product",
        "order": p.graph().order(),
        "size": p.graph().size(),
    });
    let text = match out {
        Some(path) => {
            write_file(path, &list)?;
            payload["out"] = json!(path.display().to_string());
            format!(
                "wrote P_{n} product: {} vertices, {} edges\n",
                p.graph().order(),
                p.graph().size()
            )
        }
        None => {
            payload["edge_list"] = json!(list);
            list
        }
    };
    Ok(Output { payload, text })
}

fn build_error(e: BuildError) -> CliError {
    match e {
        BuildError::NoFactor { certificate } => {
            let details = certificate.as_ref().map_or(Value::Null, |c| json!({ "certificate": certificate_json(c) }));
            let msg = match &certificate {
                Some(c) => format!("base graph has no suitable factor: {c}"),
                None => "base graph has no suitable factor".to_string(),
            };
            CliError::new(ErrorKind::NoFactor, msg).with(details)
        }
        other => CliError::new(ErrorKind::Precondition, other.to_string()),
    }
}

fn cmd_hamcycle(
    n: usize,
    graph: &str,
    mode: CliMode,
    out: Option<&Path>,
    dot: Option<&Path>,
) -> Result<Output, CliError> {
    need_layers(n)?;
    let g = load_graph(graph)?;
    let mode = match mode {
        CliMode::Auto => Mode::Auto,
        CliMode::Matching => Mode::Matching,
        CliMode::Pathfactor => Mode::PathFactor,
    };
    let built = ham::build_ham_main(n, &g, mode).map_err(build_error)?;
    let product = Product::path(n, &g);
    if !ham::verify_cycle(&product, &built.cycle) {
        return Err(CliError::new(ErrorKind::Precondition, "constructed cycle failed validation"));
    }
    let cycle_text = built.cycle.to_text(g.order());
    let mut payload = json!({
        "command": "hamcycle",
        "mode": built.mode,
        "layers": n,
        "length": built.cycle.len(),
        "factor": built.factor.to_string(),
    });
    if let Some(path) = dot {
        write_file(path, &product.to_dot(&built.cycle.edge_ids(&product)))?;
        payload["dot"] = json!(path.display().to_string());
    }
    let text = match out {
        Some(path) => {
            write_file(path, &cycle_text)?;
            payload["out"] = json!(path.display().to_string());
            format!(
                "Hamiltonian cycle of length {} via factor {}\n",
                built.cycle.len(),
                built.factor
            )
        }
        None => {
            payload["cycle"] = json!(cycle_text);
            cycle_text
        }
    };
    Ok(Output { payload, text })
}

fn cmd_pathfactor(graph: &str, kind: Kind) -> Result<Output, CliError> {
    let g = load_graph(graph)?;
    let (found, kind_name) = match kind {
        Kind::Pm => (factor::find_perfect_matching(&g), "pm"),
        Kind::P23 => (factor::find_p23_factor(&g), "p23"),
    };
    if let Some(f) = found {
        let payload = json!({
            "command": "pathfactor",
            "kind": kind_name,
            "components": f.components(),
            "text": f.to_string(),
        });
        return Ok(Output {
            text: format!("{f}\n"),
            payload,
        });
    }
    let certificate = factor::wang_certificate(&g).map_err(|e| CliError::new(ErrorKind::Budget, e.to_string()))?;
    let reason = if matches!(kind, Kind::Pm) && g.order() % 2 == 1 {
        "no perfect matching: odd order".to_string()
    } else if let Some(c) = &certificate {
        format!("no {{P2,P3}}-factor: {c}")
    } else {
        "no perfect matching".to_string()
    };
    let mut details = json!({ "command": "pathfactor", "kind": kind_name });
    if let Some(c) = &certificate {
        details["certificate"] = certificate_json(c);
    }
    Err(CliError::new(ErrorKind::NoFactor, reason).with(details))
}

fn cmd_toughness(graph: &str, one_tough: bool, budget: Budget) -> Result<Output, CliError> {
    let g = load_graph(graph)?;
    if !one_tough {
        match toughness::toughness_exact(&g) {
            Ok(t) => {
                let witness = t.witness.as_ref().map(|w| json!({ "cut": w.cut, "components": w.components }));
                let payload = json!({
                    "command": "toughness",
                    "value": t.value.to_string(),
                    "witness": witness,
                });
                let text = match &t.witness {
                    Some(w) => format!("{} (S = {:?}, c(G-S) = {})\n", t.value, w.cut, w.components),
                    None => format!("{}\n", t.value),
                };
                return Ok(Output { payload, text });
            }
            Err(ToughnessError::BudgetExceeded { .. }) => {}
            Err(e) => return Err(CliError::new(ErrorKind::Precondition, e.to_string())),
        }
    }
    let (answer, witness) = match toughness::is_one_tough(&g, budget) {
        OneTough::Yes => ("yes", None),
        OneTough::No(w) => ("no", Some(w)),
        OneTough::Unknown => ("unknown", None),
    };
    let payload = json!({
        "command": "toughness",
        "one_tough": answer,
        "witness": witness.as_ref().map(|w| json!({ "cut": w.cut, "components": w.components })),
    });
    let text = match &witness {
        Some(w) => format!("1-tough: no ({w})\n"),
        None => format!("1-tough: {answer}\n"),
    };
    Ok(Output { payload, text })
}

fn cmd_check(graph: &str, n: Option<usize>, budget: Budget) -> Result<Output, CliError> {
    let g = load_graph(graph)?;
    let (verdict, rendered) = match n {
        Some(n) => {
            need_layers(n)?;
            let p = Product::path(n, &g);
            let v = oracle::hamiltonian_product(&p, budget);
            let r = match &v {
                Verdict::Found(c) => Some(c.to_text(g.order())),
                _ => None,
            };
            (v.map(|_| ()), r)
        }
        None => {
            let v = oracle::brute_hamiltonian(&g, budget);
            let r = match &v {
                Verdict::Found(c) => Some(c.iter().map(usize::to_string).collect::<Vec<_>>().join(" ") + "\n"),
                _ => None,
            };
            (v.map(|_| ()), r)
        }
    };
    let name = match verdict {
        Verdict::Found(()) => "hamiltonian",
        Verdict::Absent => "non-hamiltonian",
        Verdict::Unknown => {
            return Err(CliError::new(ErrorKind::Budget, "search budget exhausted before a verdict")
                .with(json!({ "command": "check", "verdict": "unknown" })))
        }
    };
    let payload = json!({ "command": "check", "verdict": name, "cycle": rendered });
    let text = match rendered {
        Some(c) => format!("{name}\n{c}"),
        None => format!("{name}\n"),
    };
    Ok(Output { payload, text })
}

fn cmd_verify(graph: &str, cycle: &Path) -> Result<Output, CliError> {
    let g = load_graph(graph)?;
    let text = std::fs::read_to_string(cycle)
        .map_err(|e| CliError::new(ErrorKind::Parse, format!("{}: {e}", cycle.display())))?;
    let (c, base_order): (HamCycle, usize) =
        HamCycle::parse(&text).map_err(|e| CliError::new(ErrorKind::Parse, e.to_string()))?;
    let valid = base_order == g.order() && c.layers() >= 1 && {
        let product = Product::path(c.layers(), &g);
        ham::verify_cycle(&product, &c)
    };
    Ok(Output {
        payload: json!({ "command": "verify", "valid": valid, "layers": c.layers() }),
        text: format!("{valid}\n"),
    })
}

fn cmd_scan(report: oracle::ScanReport, out: Option<&Path>) -> Result<Output, CliError> {
    let log = report.log_lines().join("\n") + "\n";
    let summary = serde_json::to_value(report.summary()).expect("summary serializes");
    let mut payload = json!({ "command": "scan", "summary": summary });
    let text = match out {
        Some(path) => {
            let mut file_text = log.clone();
            file_text.push_str(&serde_json::to_string(&payload["summary"]).expect("summary serializes"));
            file_text.push('\n');
            write_file(path, &file_text)?;
            if !report.counterexamples.is_empty() {
                let dir = path.with_extension("counterexamples");
                let files = report
                    .write_counterexamples(&dir)
                    .map_err(|e| CliError::new(ErrorKind::Parse, format!("{}: {e}", dir.display())))?;
                payload["counterexample_files"] =
                    json!(files.iter().map(|p| p.display().to_string()).collect::<Vec<_>>());
            }
            payload["out"] = json!(path.display().to_string());
            log.lines().last().unwrap_or_default().to_string() + "\n"
        }
        None => log,
    };
    Ok(Output { payload, text })
}
