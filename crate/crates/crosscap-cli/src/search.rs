//! The `search` subcommand: sweep an n-range, emit a report.
//!
//! Reports are rendered fully in memory and written atomically (temp file +
//! rename), so an interrupted run never leaves a partial file. `--jobs`
//! bounds the worker threads but can never change a byte of output: rows
//! are merged in n-order regardless of scheduling.

use clap::{Args, ValueEnum};
use crosscap_core::familysearch::{summarize, sweep, SearchFamily, SearchQuery, SearchReport};
use serde_json::json;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use crate::record::{records_of, to_csv, JsonSummary, OutputRecord};
use crate::{CliError, Format};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepFamilyArg {
    K4,
    K4neg,
    Km1,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// Family to sweep (cables have no free n)
    #[arg(long, value_enum)]
    family: SweepFamilyArg,
    /// Odd band parameter p, fixed across the sweep
    #[arg(short = 'p', value_name = "P", allow_negative_numbers = true)]
    p: i64,
    /// First n of the inclusive range
    #[arg(long, value_name = "N", allow_negative_numbers = true)]
    n_min: i64,
    /// Last n of the inclusive range
    #[arg(long, value_name = "N", allow_negative_numbers = true)]
    n_max: i64,
    /// Keep only rows whose obstruction is certified by a closed-form argument
    #[arg(long)]
    certify_only: bool,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write the report here instead of stdout (atomic: temp file + rename)
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Worker thread count (output is byte-identical for every value)
    #[arg(long, value_name = "K")]
    jobs: Option<usize>,
}

pub fn run(args: &SearchArgs) -> Result<(), CliError> {
    let family = match args.family {
        SweepFamilyArg::K4 => SearchFamily::K4,
        SweepFamilyArg::K4neg => SearchFamily::K4Neg,
        SweepFamilyArg::Km1 => SearchFamily::Km1,
    };
    let query = SearchQuery::new(family, args.p, args.n_min, args.n_max, args.certify_only)?;
    let report = match args.jobs {
        Some(0) => return Err(CliError::Usage("--jobs must be at least 1".into())),
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| CliError::Internal(format!("worker pool: {e}")))?
            .install(|| sweep(&query)),
        None => sweep(&query),
    };

    let records = records_of(&report);
    let summary = summarize(&report);
    let bytes = match args.format {
        Format::Csv => to_csv(&records)?,
        Format::Json => {
            let mut v = serde_json::to_vec_pretty(&json!({
                "records": records,
                "summary": JsonSummary::from(&summary),
            }))?;
            v.push(b'\n');
            v
        }
        Format::Text => render_text(&report, &records).into_bytes(),
    };

    match &args.out {
        Some(path) => {
            write_atomic(path, &bytes)?;
            eprintln!("wrote {} ({} rows)", path.display(), records.len());
        }
        None => std::io::stdout().lock().write_all(&bytes)?,
    }
    let c = report.counts;
    eprintln!(
        "{} rows: {} obstructed ({} certified), {} not obstructed, {} out of domain",
        c.total, c.obstructed, c.certified, c.not_obstructed, c.out_of_domain
    );
    Ok(())
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.persist(path).map_err(|e| {
        CliError::Internal(format!("renaming into {}: {}", path.display(), e.error))
    })?;
    Ok(())
}

fn render_text(report: &SearchReport, records: &[OutputRecord]) -> String {
    use std::fmt::Write as _;
    let q = &report.query;
    let mut s = String::new();
    let _ = writeln!(
        s,
        "sweep: family={:?} p={} n={}..{}{}",
        q.family,
        q.p,
        q.n_min,
        q.n_max,
        if q.certify_only {
            " (certified rows only)"
        } else {
            ""
        }
    );
    for r in records {
        let _ = writeln!(
            s,
            "n={:<8} det={:<12} sigma={:<8} gamma4={}..{} gammac={}..{} {:<14} {}",
            r.n,
            r.det,
            r.sigma,
            r.gamma4_lo,
            r.gamma4_hi,
            r.gammac_lo,
            r.gammac_hi,
            r.verdict,
            r.certificate
        );
    }
    let summary = summarize(report);
    let c = summary.counts;
    let _ = writeln!(
        s,
        "summary: {} rows, {} obstructed ({} certified), {} not obstructed, {} out of domain",
        c.total, c.obstructed, c.certified, c.not_obstructed, c.out_of_domain
    );
    if let (Some(first), Some(last)) = (summary.first_certified_n, summary.last_certified_n) {
        let _ = writeln!(s, "certified n spans {first}..{last}");
    }
    s
}
