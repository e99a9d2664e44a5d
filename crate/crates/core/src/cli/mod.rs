//! The `redpair` command line.
//!
//! Single queries print pretty JSON, scans print TSV (or JSON with
//! `--format json`). Every document carries `schema_version`.
//!
//! Exit codes: 0 Yes/ProvenYes (or success), 1 error, 2 a simple character
//! is outside the supported region (supply a table), 3 No, 4 Inconclusive,
//! 5 a check failed (oracle disagreement, identity or selftest failure).

mod cache;
mod scan;
mod selftest;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::a2lat::A2Weight;
use crate::charlat::Prime;
use crate::error::{Error, Result};
use crate::sl2chars::{y_identity_check, YIdentity};
use crate::sl2verdict::{
    simple_verdict, sufficiency_oracle_simple, weyl_oracle, weyl_verdict, Verdict, VerdictKind,
};
use crate::sl3verdict::{example_machine, CharTable, FactorStatus, MaskReport, SimpleCharsA2};

pub use cache::{CharCache, CACHE_DIR_ENV};

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_ADAPTATION: i32 = 2;
pub const EXIT_NO: i32 = 3;
pub const EXIT_INCONCLUSIVE: i32 = 4;
pub const EXIT_CHECK_FAILED: i32 = 5;

#[derive(Debug, Parser)]
#[command(
    name = "redpair",
    version,
    about = "Reductive-pair verdicts for SL2 and SL3 modules in positive characteristic"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// SL2: simple and Weyl modules.
    #[command(subcommand)]
    Sl2(Sl2Command),
    /// Check the three Y recursions by exact character equality.
    VerifyIdentities(VerifyArgs),
    /// SL3: composition-factor analysis of L(a,b) (x) L(a,b)*.
    #[command(subcommand)]
    Sl3(Sl3Command),
    /// Run the golden fixtures and invariant checks.
    Selftest(SelftestArgs),
}

#[derive(Debug, Subcommand)]
enum Sl2Command {
    /// Verdict for the simple module L(lambda).
    Simple(SimpleArgs),
    /// Verdict for the Weyl module with highest weight n.
    Weyl(WeylArgs),
    /// Verdicts for every weight 1..=max.
    Scan(scan::ScanArgs),
}

#[derive(Debug, Args)]
struct SimpleArgs {
    #[arg(short = 'p')]
    p: u64,
    #[arg(short = 'l', long = "lambda")]
    lambda: u64,
    /// Add human-readable explanations.
    #[arg(long)]
    explain: bool,
    /// Also run the composition-factor oracle.
    #[arg(long)]
    oracle: bool,
}

#[derive(Debug, Args)]
struct WeylArgs {
    #[arg(short = 'p')]
    p: u64,
    #[arg(short = 'n')]
    n: u64,
    #[arg(long)]
    explain: bool,
    /// Also run the tilting-peel oracle and report agreement.
    #[arg(long)]
    oracle: bool,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(short = 'p')]
    p: u64,
    #[arg(long = "max-m")]
    max_m: u64,
}

#[derive(Debug, Subcommand)]
enum Sl3Command {
    /// Per-factor extension mask for L(a,b) (x) L(a,b)*.
    Analyze(AnalyzeArgs),
    /// Certify lambda + p^n mu from a certified restricted lambda.
    ExampleMachine(MachineArgs),
}

#[derive(Debug, Args)]
struct TableArgs {
    /// Character table (JSON lines) for weights outside a+b+2 <= p.
    #[arg(long)]
    table: Option<PathBuf>,
    /// Leave factors with the adjoint restricted part open.
    #[arg(long)]
    strict: bool,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    #[arg(short = 'p')]
    p: u64,
    /// Highest weight "a,b".
    #[arg(short = 'w', long = "weight")]
    weight: A2Weight,
    #[command(flatten)]
    table: TableArgs,
    #[arg(long)]
    explain: bool,
}

#[derive(Debug, Args)]
struct MachineArgs {
    #[arg(short = 'p')]
    p: u64,
    /// Restricted base weight "a,b".
    #[arg(short = 'l', long = "lambda")]
    lambda: A2Weight,
    /// Twisted weight "a,b".
    #[arg(short = 'm', long = "mu")]
    mu: A2Weight,
    #[arg(short = 'n', default_value_t = 1)]
    n: u32,
    #[command(flatten)]
    table: TableArgs,
}

#[derive(Debug, Args)]
struct SelftestArgs {
    /// Run the SL3 fixtures against this table as well.
    #[arg(long)]
    table: Option<PathBuf>,
    /// Substitute a deliberately broken component (for checking the alarms).
    #[arg(long, value_enum, hide = true)]
    mutate: Option<selftest::Mutation>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub(crate) enum Format {
    Tsv,
    Json,
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_ERROR,
            };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            report_error(&e, out, err);
            exit_code_for_error(&e)
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Sl2(Sl2Command::Simple(a)) => cmd_sl2_simple(a, out),
        Command::Sl2(Sl2Command::Weyl(a)) => cmd_sl2_weyl(a, out),
        Command::Sl2(Sl2Command::Scan(a)) => scan::cmd_scan(a, out, err),
        Command::VerifyIdentities(a) => cmd_verify_identities(a, out),
        Command::Sl3(Sl3Command::Analyze(a)) => cmd_sl3_analyze(a, out),
        Command::Sl3(Sl3Command::ExampleMachine(a)) => cmd_example_machine(a, out),
        Command::Selftest(a) => selftest::cmd_selftest(a, out),
    }
}

pub fn exit_code_for_error(e: &Error) -> i32 {
    match e {
        Error::AdaptationFailure { .. } => EXIT_ADAPTATION,
        _ => EXIT_ERROR,
    }
}

pub fn exit_code_for_kind(kind: VerdictKind) -> i32 {
    match kind {
        VerdictKind::Yes | VerdictKind::ProvenYes => EXIT_OK,
        VerdictKind::No => EXIT_NO,
        VerdictKind::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

fn error_json(e: &Error) -> Value {
    let mut body = json!({ "code": e.code(), "message": e.to_string() });
    if let Error::AdaptationFailure {
        weight,
        digit,
        level,
        ..
    } = e
    {
        body["weight"] = json!(weight);
        body["missing_weight"] = json!(digit);
        body["twist"] = json!(level);
    }
    json!({ "schema_version": SCHEMA_VERSION, "error": body })
}

fn report_error(e: &Error, out: &mut dyn Write, err: &mut dyn Write) {
    let _ = writeln!(out, "{}", pretty(&error_json(e)));
    let _ = writeln!(err, "error: {e}");
}

fn pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

fn emit(out: &mut dyn Write, doc: &Value) -> Result<()> {
    writeln!(out, "{}", pretty(doc))?;
    Ok(())
}

fn prime(p: u64) -> Result<Prime> {
    Prime::new(p)
}

fn explain_verdict(v: &Verdict) -> Vec<String> {
    v.reasons.iter().map(ToString::to_string).collect()
}

fn cmd_sl2_simple(a: SimpleArgs, out: &mut dyn Write) -> Result<i32> {
    let p = prime(a.p)?;
    let verdict = simple_verdict(p, a.lambda)?;
    let mut doc = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "sl2 simple",
        "verdict": verdict,
    });
    if a.oracle {
        match sufficiency_oracle_simple(p, a.lambda) {
            Ok(o) => {
                // The oracle is one-sided: it can only contradict a No.
                let consistent =
                    !(o.kind == VerdictKind::ProvenYes && verdict.kind == VerdictKind::No);
                doc["oracle"] = json!(o);
                doc["agreement"] = json!(consistent);
            }
            Err(e @ Error::Unsupported(_)) => doc["oracle"] = json!({ "skipped": e.to_string() }),
            Err(e) => return Err(e),
        }
    }
    if a.explain {
        doc["explanation"] = json!(explain_verdict(&verdict));
    }
    emit(out, &doc)?;
    if doc["agreement"] == json!(false) {
        return Ok(EXIT_CHECK_FAILED);
    }
    Ok(exit_code_for_kind(verdict.kind))
}

fn cmd_sl2_weyl(a: WeylArgs, out: &mut dyn Write) -> Result<i32> {
    let p = prime(a.p)?;
    let verdict = weyl_verdict(p, a.n);
    let mut doc = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "sl2 weyl",
        "verdict": verdict,
    });
    let mut agree = true;
    if a.oracle {
        let o = weyl_oracle(p, a.n)?;
        agree = o.kind == verdict.kind;
        doc["oracle"] = json!(o);
        doc["agreement"] = json!(agree);
    }
    if a.explain {
        doc["explanation"] = json!(explain_verdict(&verdict));
    }
    emit(out, &doc)?;
    Ok(if agree {
        exit_code_for_kind(verdict.kind)
    } else {
        EXIT_CHECK_FAILED
    })
}

fn cmd_verify_identities(a: VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let p = prime(a.p)?;
    if p.get() == 2 {
        return Err(Error::Unsupported(
            "the Y recursions are stated for odd primes".into(),
        ));
    }
    let mut rows: Vec<(&'static str, u64, u64)> = Vec::new();
    let mut failures = Vec::new();
    for identity in YIdentity::all(p) {
        let idx = match rows.iter().position(|r| r.0 == identity.name()) {
            Some(i) => i,
            None => {
                rows.push((identity.name(), 0, 0));
                rows.len() - 1
            }
        };
        for m in 0..=a.max_m {
            rows[idx].1 += 1;
            if y_identity_check(p, m, identity)? {
                rows[idx].2 += 1;
            } else {
                failures.push((identity, m));
            }
        }
    }
    writeln!(out, "# schema_version={SCHEMA_VERSION}")?;
    writeln!(out, "identity\tp\tmax_m\tchecked\tpassed\tfailed")?;
    for (name, checked, passed) in &rows {
        writeln!(
            out,
            "{name}\t{p}\t{}\t{checked}\t{passed}\t{}",
            a.max_m,
            checked - passed
        )?;
    }
    for (identity, m) in &failures {
        writeln!(out, "# FAIL {identity:?} m={m}")?;
    }
    Ok(if failures.is_empty() {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    })
}

fn load_table(path: &Option<PathBuf>) -> Result<Option<CharTable>> {
    path.as_deref().map(CharTable::load).transpose()
}

fn explain_report(report: &MaskReport) -> Vec<String> {
    let mut lines: Vec<String> = report
        .factors
        .iter()
        .map(|f| {
            let why = match f.status {
                FactorStatus::SelfFactor => "the adjoint factor itself",
                FactorStatus::ExtZeroByLinkage => "not linked to (1,1): extensions split",
                FactorStatus::ExtZeroByYehia => "restricted part rules out a non-split extension",
                FactorStatus::PossiblyNonzero => "a non-split extension is not ruled out",
            };
            format!("L{} x{}: {:?} ({why})", f.weight, f.multiplicity, f.status)
        })
        .collect();
    lines.extend(explain_verdict(&report.verdict));
    lines
}

fn cmd_sl3_analyze(a: AnalyzeArgs, out: &mut dyn Write) -> Result<i32> {
    let p = prime(a.p)?;
    let table = load_table(&a.table.table)?;
    let chars = SimpleCharsA2::new(p, table.as_ref());
    // Cached characters are only valid without a user table.
    let cache = if table.is_none() {
        CharCache::from_env()
    } else {
        None
    };
    if let Some(c) = &cache {
        c.preload(&chars);
    }
    let result = chars.verdict(a.weight, a.table.strict);
    if let Some(c) = &cache {
        c.store(&chars)?;
    }
    let report = result?;
    let mut doc = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "sl3 analyze",
        "report": report,
    });
    if a.explain {
        doc["explanation"] = json!(explain_report(&report));
    }
    emit(out, &doc)?;
    Ok(exit_code_for_kind(report.kind()))
}

fn cmd_example_machine(a: MachineArgs, out: &mut dyn Write) -> Result<i32> {
    let p = prime(a.p)?;
    let table = load_table(&a.table.table)?;
    let cert = example_machine(p, a.lambda, a.mu, a.n, table.as_ref(), a.table.strict)?;
    emit(
        out,
        &json!({
            "schema_version": SCHEMA_VERSION,
            "command": "sl3 example-machine",
            "certificate": cert,
        }),
    )?;
    Ok(EXIT_OK)
}
