//! `grasscas`: tables, decompositions and verification suites as batch commands.
//!
//! Exit status: 0 when every check passes, 2 for usage errors, 3 when a check
//! fails or the engine reports an internal error.

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use serde::Serialize;

use grasscas_core::forms::{decompose_forms, eigenvalue_table, tractor_T_series, IrreducibleBundle};
use grasscas_core::report::{self, format_q, Report};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Command {
    Eigenvalues,
    DecomposeForms,
    Series,
    VerifyAction,
    VerifyBalpha,
    VerifyMdVanish,
    VerifySymbolPaths,
    VerifyObstruction,
    VerifyAll,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "grasscas", version, about = "Exact checks for Casimir eigenvalues, tractor series and nonstandard-operator symbols")]
struct RunConfig {
    /// Computation to run.
    #[arg(long, value_enum)]
    command: Command,
    /// Rank of the unprimed bundle.
    #[arg(long)]
    n: usize,
    /// Column height of the tractor bundle (2 ≤ k ≤ n).
    #[arg(long)]
    k: Option<usize>,
    /// Form degree for decompose-forms.
    #[arg(long)]
    j: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Seed of the linear congruential generator used for sampled sections.
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Engine(#[from] grasscas_core::Error),
}

#[derive(Serialize)]
struct BundleRecord {
    s: usize,
    columns: Vec<usize>,
    w: i32,
    rank: String,
}

impl BundleRecord {
    fn new(b: &IrreducibleBundle, n: usize) -> Self {
        BundleRecord { s: b.s, columns: b.diagram.columns().to_vec(), w: b.w, rank: b.dimension(n).to_string() }
    }
}

#[derive(Serialize)]
struct SlotRecord {
    slot: &'static str,
    bundle: BundleRecord,
    beta: String,
}

#[derive(Serialize)]
struct CheckRecord<'a> {
    id: &'a str,
    anchor: &'a str,
    status: &'static str,
    details: &'a str,
}

#[derive(Serialize)]
struct ReportRecord<'a> {
    command: &'a str,
    n: usize,
    k: Option<usize>,
    seed: u64,
    passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    table: Option<&'a [SlotRecord]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bundles: Option<&'a [BundleRecord]>,
    checks: Vec<CheckRecord<'a>>,
}

const SLOT_LABELS: [&str; 6] = ["0", "1", "2a", "2b", "3", "4"];

fn require_k(cfg: &RunConfig) -> Result<usize, CliError> {
    let k = cfg.k.ok_or_else(|| CliError::Usage(String::from("--k is required for this command")))?;
    if k < 2 || k > cfg.n {
        return Err(CliError::Usage(format!("need 2 ≤ k ≤ n, got n={} k={k}", cfg.n)));
    }
    Ok(k)
}

fn form_degree(cfg: &RunConfig) -> Result<usize, CliError> {
    let j = match (cfg.j, cfg.k) {
        (Some(j), _) => j,
        (None, Some(k)) => 2 * k,
        (None, None) => return Err(CliError::Usage(String::from("--j (or --k) is required for decompose-forms"))),
    };
    if j > 2 * cfg.n {
        return Err(CliError::Usage(format!("form degree {j} exceeds 2n = {}", 2 * cfg.n)));
    }
    Ok(j)
}

struct Output {
    report: Report,
    table: Option<Vec<SlotRecord>>,
    bundles: Option<Vec<BundleRecord>>,
}

fn run(cfg: &RunConfig) -> Result<Output, CliError> {
    if cfg.n < 2 {
        return Err(CliError::Usage(format!("n = {} < 2", cfg.n)));
    }
    let n = cfg.n;
    let mut out = Output { report: Report::new("none", n, None), table: None, bundles: None };
    out.report = match cfg.command {
        Command::Eigenvalues => {
            let k = require_k(cfg)?;
            let series = tractor_T_series(k, n)?;
            let table = eigenvalue_table(&series, n + 2)?;
            out.table = Some(
                series
                    .constituents()
                    .zip(table.iter().flatten())
                    .zip(SLOT_LABELS)
                    .map(|((b, beta), slot)| SlotRecord { slot, bundle: BundleRecord::new(b, n), beta: format_q(beta) })
                    .collect(),
            );
            report::eigenvalues(n, k)?
        }
        Command::DecomposeForms => {
            let j = form_degree(cfg)?;
            out.bundles = Some(decompose_forms(j, n)?.iter().map(|b| BundleRecord::new(b, n)).collect());
            report::forms(j, n)?
        }
        Command::Series => report::series(n, require_k(cfg)?)?,
        Command::VerifyAction => report::verify_action(n, require_k(cfg)?, cfg.seed, 100)?,
        Command::VerifyBalpha => report::verify_balpha(n, require_k(cfg)?, cfg.seed)?,
        Command::VerifyMdVanish => report::verify_md_vanish(n, require_k(cfg)?)?,
        Command::VerifySymbolPaths => report::verify_symbol_paths(n, require_k(cfg)?, cfg.seed, 3)?,
        Command::VerifyObstruction => report::verify_obstruction_report(n, require_k(cfg)?)?,
        Command::VerifyAll => report::verify_all(n, require_k(cfg)?, cfg.seed)?,
    };
    Ok(out)
}

fn render(cfg: &RunConfig, out: &Output) -> String {
    match cfg.format {
        Format::Text => {
            let mut s = String::new();
            if let Some(t) = &out.table {
                for r in t {
                    s.push_str(&format!(
                        "slot {:<2} s={} columns={:?} w={} beta={}\n",
                        r.slot, r.bundle.s, r.bundle.columns, r.bundle.w, r.beta
                    ));
                }
            }
            if let Some(b) = &out.bundles {
                for r in b {
                    s.push_str(&format!("bundle s={} columns={:?} w={} rank={}\n", r.s, r.columns, r.w, r.rank));
                }
            }
            s.push_str(&out.report.to_text());
            s
        }
        Format::Json => {
            let rec = ReportRecord {
                command: &out.report.command,
                n: out.report.n,
                k: out.report.k,
                seed: cfg.seed,
                passed: out.report.passed(),
                table: out.table.as_deref(),
                bundles: out.bundles.as_deref(),
                checks: out
                    .report
                    .checks
                    .iter()
                    .map(|c| CheckRecord { id: &c.id, anchor: &c.anchor, status: c.status.as_str(), details: &c.details })
                    .collect(),
            };
            let mut s = serde_json::to_string_pretty(&rec).expect("report serializes");
            s.push('\n');
            s
        }
    }
}

fn main() -> ExitCode {
    let cfg = RunConfig::parse();
    match run(&cfg) {
        Ok(out) => {
            let text = render(&cfg, &out);
            let _ = std::io::stdout().write_all(text.as_bytes());
            if out.report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            }
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Engine(e)) => {
            eprintln!("engine error: {e}");
            ExitCode::from(3)
        }
    }
}
