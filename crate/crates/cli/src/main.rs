//! `sublab` command-line driver.
//!
//! Exit codes: 0 success, 1 negative verdict (or inconclusive obstruction),
//! 2 input error, 3 internal invariant violation.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use sublab::catalog::{builtin_catalog, load_catalog, CatalogEntry};
use sublab::fixtures::{fixture, fixtures, run_scenario, sweep, RunOptions, ScenarioError};
use sublab::homotopy::{obstruct_quotient, SpaceDescriptor};
use sublab::isotropy::{DEFAULT_SEED, DEFAULT_TOL};
use sublab::report::{certificate_text, Sections, REPORT_VERSION};

#[derive(Parser, Debug)]
#[command(name = "sublab", version, about = "Exact checks for Riemannian submersions from compact Lie groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Parameter n of the scenario family (defaults to the smallest legal value).
    #[arg(long, global = true)]
    n: Option<usize>,

    /// Seed for the randomized splitting steps.
    #[arg(long, global = true, env = "SUBLAB_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Tolerance for the floating-point eigensplit.
    #[arg(long, global = true, env = "SUBLAB_TOL", default_value_t = DEFAULT_TOL)]
    tol: f64,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Expected outcome; with `fail`, a negative result exits 0 and a positive one exits 1.
    #[arg(long, global = true, value_enum, default_value_t = Expect::Pass)]
    expect: Expect,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Expect {
    Pass,
    Fail,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum SweepWhat {
    Full,
    Decompose,
    Metric,
    Verdict,
    Obstruct,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Isotropy decomposition of m1 + m2 under h.
    Decompose {
        #[arg(long)]
        scenario: String,
    },
    /// Decomposition, metric, condition check and obstruction.
    CheckSubmersion {
        #[arg(long)]
        scenario: String,
    },
    /// Constants of the induced metric on each summand.
    MetricConstants {
        #[arg(long)]
        scenario: String,
    },
    /// Nonexistence certificate for a free action with the given quotient.
    Obstruct {
        #[arg(long, conflicts_with_all = ["total", "base"], required_unless_present_all = ["total", "base"])]
        scenario: Option<String>,
        /// Total space, e.g. `SO(16)`.
        #[arg(long, requires = "base")]
        total: Option<String>,
        /// Base space, e.g. `S^8`, `V_3(R^11)`, `S^1\V_3(R^11)`.
        #[arg(long, requires = "total")]
        base: Option<String>,
    },
    /// Catalog of triples (g, k1, k2).
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Run a scenario over a range of n.
    Sweep {
        #[arg(long)]
        scenario: String,
        #[arg(long)]
        from: Option<usize>,
        #[arg(long)]
        to: Option<usize>,
        #[arg(long, value_enum, default_value_t = SweepWhat::Full)]
        what: SweepWhat,
        #[arg(long)]
        parallel: bool,
    },
    /// List the built-in scenarios.
    Scenarios,
}

#[derive(Subcommand, Debug)]
enum CatalogAction {
    List {
        /// Catalog file; the built-in one when omitted.
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
}

enum Failure {
    Input(String),
    Invariant(String),
}

impl From<ScenarioError> for Failure {
    fn from(e: ScenarioError) -> Self {
        if e.is_input_error() {
            Failure::Input(e.to_string())
        } else {
            Failure::Invariant(e.to_string())
        }
    }
}

struct Output {
    json: String,
    text: String,
    negative: bool,
}

#[derive(Serialize)]
struct CatalogListing<'a> {
    version: &'static str,
    entries: &'a [CatalogEntry],
}

#[derive(Serialize)]
struct ScenarioListing {
    id: &'static str,
    chain: String,
    base: &'static str,
    n_min: usize,
    n_max: Option<usize>,
    supported: bool,
    expected_verdict: Option<bool>,
}

fn options(cli: &Cli, sections: Sections) -> Result<RunOptions, Failure> {
    if !(cli.tol.is_finite() && cli.tol > 0.0) {
        return Err(Failure::Input(format!("--tol must be positive, got {}", cli.tol)));
    }
    Ok(RunOptions {
        seed: cli.seed,
        tol: cli.tol,
        sections,
    })
}

fn scenario_report(cli: &Cli, id: &str, sections: Sections) -> Result<Output, Failure> {
    let fx = fixture(id)?;
    let n = cli.n.unwrap_or_else(|| fx.default_n());
    let report = run_scenario(fx, n, &options(cli, sections)?)?;
    Ok(Output {
        json: report.to_json(),
        text: report.to_text(),
        negative: report.is_negative(),
    })
}

fn execute(cli: &Cli) -> Result<Output, Failure> {
    let only = |f: fn(&mut Sections)| {
        let mut s = Sections::none();
        f(&mut s);
        s
    };
    match &cli.command {
        Command::Decompose { scenario } => scenario_report(cli, scenario, only(|s| s.decomposition = true)),
        Command::MetricConstants { scenario } => scenario_report(
            cli,
            scenario,
            only(|s| {
                s.decomposition = true;
                s.metric = true;
            }),
        ),
        Command::CheckSubmersion { scenario } => scenario_report(cli, scenario, Sections::all()),
        Command::Obstruct {
            scenario: Some(id), ..
        } => {
            let fx = fixture(id)?;
            if fx.obstruction_problem(fx.default_n()).is_none() {
                return Err(Failure::Input(format!("scenario {id} has no obstruction problem")));
            }
            scenario_report(cli, id, only(|s| s.obstruction = true))
        }
        Command::Obstruct { total, base, .. } => {
            let parse = |s: &Option<String>| -> Result<SpaceDescriptor, Failure> {
                s.as_deref()
                    .unwrap_or_default()
                    .parse()
                    .map_err(|e: sublab::homotopy::HomotopyError| Failure::Input(e.to_string()))
            };
            let (total, base) = (parse(total)?, parse(base)?);
            let cert = obstruct_quotient(&total, &base).map_err(|e| Failure::Input(e.to_string()))?;
            Ok(Output {
                json: serde_json::to_string_pretty(&cert).expect("certificate serializes"),
                text: certificate_text(&cert),
                negative: !cert.is_certificate(),
            })
        }
        Command::Catalog {
            action: CatalogAction::List { catalog },
        } => {
            let entries = match catalog {
                Some(p) => load_catalog(p).map_err(|e| Failure::Input(e.to_string()))?,
                None => builtin_catalog(),
            };
            let mut text = String::new();
            for e in &entries {
                text.push_str(&format!(
                    "{:<4} {:<44} {:<14} {:<13} {}\n",
                    e.line,
                    e.name(),
                    e.space,
                    if e.symmetric { "symmetric" } else { "non-symmetric" },
                    if e.supported { "supported" } else { "unsupported" }
                ));
            }
            let listing = CatalogListing {
                version: REPORT_VERSION,
                entries: &entries,
            };
            Ok(Output {
                json: serde_json::to_string_pretty(&listing).expect("catalog serializes"),
                text,
                negative: false,
            })
        }
        Command::Sweep {
            scenario,
            from,
            to,
            what,
            parallel,
        } => {
            let fx = fixture(scenario)?;
            let sections = match what {
                SweepWhat::Full => Sections::all(),
                SweepWhat::Decompose => only(|s| s.decomposition = true),
                SweepWhat::Metric => only(|s| {
                    s.decomposition = true;
                    s.metric = true;
                }),
                SweepWhat::Verdict => only(|s| s.verdict = true),
                SweepWhat::Obstruct => only(|s| s.obstruction = true),
            };
            let lo = from.or(cli.n).unwrap_or(fx.n_min);
            let hi = to.unwrap_or(lo);
            let report = sweep(fx, lo, hi, &options(cli, sections)?, *parallel);
            Ok(Output {
                json: report.to_json(),
                text: report.to_text(),
                negative: report.is_negative(),
            })
        }
        Command::Scenarios => {
            let list: Vec<ScenarioListing> = fixtures()
                .iter()
                .map(|f| ScenarioListing {
                    id: f.id,
                    chain: f.chain_label(f.n_min),
                    base: f.base,
                    n_min: f.n_min,
                    n_max: f.n_max,
                    supported: f.supported,
                    expected_verdict: f.expected_verdict,
                })
                .collect();
            let text = list
                .iter()
                .map(|l| format!("{:<22} n >= {:<3} {}\n", l.id, l.n_min, l.chain))
                .collect();
            Ok(Output {
                json: serde_json::to_string_pretty(&list).expect("listing serializes"),
                text,
                negative: false,
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match execute(&cli) {
        Ok(out) => out,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Invariant(msg)) => {
            eprintln!("internal invariant violated: {msg}");
            return ExitCode::from(3);
        }
    };
    let mut body = match cli.format {
        Format::Json => out.json,
        Format::Text => out.text,
    };
    if !body.ends_with('\n') {
        body.push('\n');
    }
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &body) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{body}"),
    }
    let failed = match cli.expect {
        Expect::Pass => out.negative,
        Expect::Fail => !out.negative,
    };
    if failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
