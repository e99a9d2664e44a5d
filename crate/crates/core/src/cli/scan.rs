use std::io::Write;
use std::time::Instant;

use clap::{Args, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use super::{prime, Format, EXIT_CHECK_FAILED, EXIT_OK, SCHEMA_VERSION};
use crate::charlat::Prime;
use crate::error::{Error, Result};
use crate::sl2verdict::{
    simple_verdict, sufficiency_oracle_simple, weyl_oracle, weyl_verdict, Reason, VerdictKind,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub(crate) enum ScanKind {
    Simple,
    Weyl,
}

#[derive(Debug, Args)]
pub(crate) struct ScanArgs {
    #[arg(long, value_enum)]
    kind: ScanKind,
    #[arg(short = 'p')]
    p: u64,
    /// Scan weights 1..=max.
    #[arg(long)]
    max: u64,
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    format: Format,
    /// Run the matching oracle on every row and compare.
    #[arg(long)]
    oracle: bool,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Record per-row wall time (makes output non-reproducible).
    #[arg(long)]
    timing: bool,
}

#[derive(Debug, Clone, Serialize)]
pub(crate) struct ScanRow {
    p: u64,
    weight: u64,
    kind: VerdictKind,
    reasons: Vec<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<VerdictKind>,
    #[serde(skip_serializing_if = "Option::is_none")]
    agreement: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    micros: Option<u128>,
}

fn scan_row(kind: ScanKind, p: Prime, weight: u64, oracle: bool, timing: bool) -> Result<ScanRow> {
    let start = Instant::now();
    let verdict = match kind {
        ScanKind::Simple => simple_verdict(p, weight)?,
        ScanKind::Weyl => weyl_verdict(p, weight),
    };
    let (oracle_kind, agreement) = if !oracle {
        (None, None)
    } else {
        match kind {
            ScanKind::Weyl => {
                let o = weyl_oracle(p, weight)?.kind;
                (Some(o), Some(o == verdict.kind))
            }
            ScanKind::Simple => match sufficiency_oracle_simple(p, weight) {
                // One-sided: only a certified Yes against a No is a conflict.
                Ok(o) => (
                    Some(o.kind),
                    Some(!(o.kind == VerdictKind::ProvenYes && verdict.kind == VerdictKind::No)),
                ),
                Err(Error::Unsupported(_)) => (None, None),
                Err(e) => return Err(e),
            },
        }
    };
    Ok(ScanRow {
        p: p.get(),
        weight,
        kind: verdict.kind,
        reasons: verdict.reasons.iter().map(Reason::code).collect(),
        oracle: oracle_kind,
        agreement,
        micros: timing.then(|| start.elapsed().as_micros()),
    })
}

/// Rows for weights `1..=max`, disagreements first, otherwise in weight order.
pub(crate) fn scan_rows(
    kind: ScanKind,
    p: Prime,
    max: u64,
    oracle: bool,
    jobs: usize,
    timing: bool,
) -> Result<Vec<ScanRow>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Unsupported(format!("cannot start worker pool: {e}")))?;
    let rows: Vec<ScanRow> = pool.install(|| {
        (1..=max)
            .into_par_iter()
            .map(|w| scan_row(kind, p, w, oracle, timing))
            .collect::<Result<_>>()
    })?;
    let (mut bad, good): (Vec<_>, Vec<_>) =
        rows.into_iter().partition(|r| r.agreement == Some(false));
    bad.extend(good);
    Ok(bad)
}

pub(crate) fn cmd_scan(a: ScanArgs, out: &mut dyn Write, _err: &mut dyn Write) -> Result<i32> {
    let p = prime(a.p)?;
    let rows = scan_rows(a.kind, p, a.max, a.oracle, a.jobs, a.timing)?;
    let disagreements = rows.iter().filter(|r| r.agreement == Some(false)).count();
    match a.format {
        Format::Json => {
            let doc = json!({
                "schema_version": SCHEMA_VERSION,
                "command": "sl2 scan",
                "kind": a.kind,
                "p": p.get(),
                "max": a.max,
                "disagreements": disagreements,
                "rows": rows,
            });
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&doc).expect("serializable")
            )?;
        }
        Format::Tsv => {
            let kind = match a.kind {
                ScanKind::Simple => "simple",
                ScanKind::Weyl => "weyl",
            };
            writeln!(out, "# schema_version={SCHEMA_VERSION}")?;
            writeln!(
                out,
                "# kind={kind} p={p} max={} disagreements={disagreements}",
                a.max
            )?;
            let mut header = vec!["p", "weight", "kind", "reasons"];
            if a.oracle {
                header.extend(["oracle", "agreement"]);
            }
            if a.timing {
                header.push("micros");
            }
            writeln!(out, "{}", header.join("\t"))?;
            for r in &rows {
                let mut cols = vec![
                    r.p.to_string(),
                    r.weight.to_string(),
                    r.kind.to_string(),
                    r.reasons.join(","),
                ];
                if a.oracle {
                    cols.push(r.oracle.map_or("-".into(), |k| k.to_string()));
                    cols.push(r.agreement.map_or("-".into(), |b| b.to_string()));
                }
                if let Some(t) = r.micros {
                    cols.push(t.to_string());
                }
                writeln!(out, "{}", cols.join("\t"))?;
            }
        }
    }
    Ok(if disagreements == 0 {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    })
}
