//! The `classify` subcommand: one knot in, one record out.

use clap::{Args, ValueEnum};
use crosscap_core::exactmath::isqrt;
use crosscap_core::familysearch::{certificate_for, Certificate};
use crosscap_core::knotmodel::{goeritz_of, FamilySpec};
use crosscap_core::obstruction::{classify, Classification, VerdictStatus};
use std::fmt::Write as _;
use std::io::Write as _;

use crate::record::{certificate_label, to_csv, verdict_label, OutputRecord};
use crate::{CliError, Format};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    K4,
    K4neg,
    Km1,
    Cable2,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    /// Knot family
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// Full-twist count n (pretzel families only)
    #[arg(short = 'n', value_name = "N", allow_negative_numbers = true)]
    n: Option<i64>,
    /// Odd band parameter p (pretzel families only)
    #[arg(short = 'p', value_name = "P", allow_negative_numbers = true)]
    p: Option<i64>,
    /// Odd cable parameter q (cable2 only)
    #[arg(short = 'q', value_name = "Q", allow_negative_numbers = true)]
    q: Option<i64>,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

fn spec_of(args: &ClassifyArgs) -> Result<FamilySpec, CliError> {
    let missing = |flag: &str| {
        CliError::Usage(format!("--family {:?} requires {flag}", args.family).to_lowercase())
    };
    match args.family {
        FamilyArg::Cable2 => {
            if args.n.is_some() || args.p.is_some() {
                return Err(CliError::Usage(
                    "cable2 takes only -q; -n and -p apply to the pretzel families".into(),
                ));
            }
            let q = args.q.ok_or_else(|| missing("-q"))?;
            Ok(FamilySpec::cable2(q)?)
        }
        family => {
            if args.q.is_some() {
                return Err(CliError::Usage(
                    "-q applies only to cable2; pretzel families take -n and -p".into(),
                ));
            }
            let n = args.n.ok_or_else(|| missing("-n"))?;
            let p = args.p.ok_or_else(|| missing("-p"))?;
            Ok(match family {
                FamilyArg::K4 => FamilySpec::k4(n, p)?,
                FamilyArg::K4neg => FamilySpec::k4neg(n, p)?,
                FamilyArg::Km1 => FamilySpec::km1(n, p)?,
                FamilyArg::Cable2 => unreachable!(),
            })
        }
    }
}

pub fn run(args: &ClassifyArgs) -> Result<(), CliError> {
    let spec = spec_of(args)?;
    let classification = classify(spec);
    let certificate = certificate_for(spec);
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match args.format {
        Format::Csv => {
            let record = OutputRecord::new(&classification, certificate);
            out.write_all(&to_csv(&[record])?)?;
        }
        Format::Json => {
            let record = OutputRecord::new(&classification, certificate);
            serde_json::to_writer_pretty(&mut out, &record)?;
            out.write_all(b"\n")?;
        }
        Format::Text => {
            out.write_all(render_text(&classification, certificate).as_bytes())?;
        }
    }
    Ok(())
}

/// Human-readable narrative: every number the verdict rests on, spelled out.
fn render_text(c: &Classification, certificate: Option<Certificate>) -> String {
    let inv = &c.invariants;
    let g = goeritz_of(inv.spec);
    let mut s = String::new();
    let _ = writeln!(s, "knot: {}", inv.spec);
    if let Some(pr) = inv.pretzel {
        let _ = writeln!(s, "pretzel form: {pr}");
    }
    let rows: Vec<String> = g
        .matrix
        .rows()
        .map(|r| {
            let cells: Vec<String> = r.iter().map(|e| e.to_string()).collect();
            format!("[{}]", cells.join(" "))
        })
        .collect();
    let _ = writeln!(
        s,
        "goeritz matrix: {} ({}, normal euler number {})",
        rows.join(" "),
        if g.orientable {
            "orientable surface"
        } else {
            "non-orientable surface"
        },
        g.euler
    );
    let _ = writeln!(s, "determinant: {}", inv.determinant);
    let _ = writeln!(s, "signature: {}", inv.signature);
    let _ = writeln!(
        s,
        "4-ball crosscap bounds: {}..{}",
        inv.gamma4_lower, inv.gamma4_upper
    );

    match c.verdict.status {
        VerdictStatus::OutOfTheoremDomain => {
            let _ = writeln!(
                s,
                "verdict: {} (the cable condition is stated only for n >= 1)",
                verdict_label(c.verdict.status)
            );
        }
        _ => {
            let qs: Vec<String> = c
                .verdict
                .candidates
                .iter()
                .map(|cand| cand.q.to_string())
                .collect();
            let _ = writeln!(
                s,
                "admissible cable parameters (sign(q) - q = {}): q in {{{}}}",
                inv.signature,
                qs.join(", ")
            );
            for cand in &c.verdict.candidates {
                match cand.root {
                    Some(l) => {
                        let _ = writeln!(
                            s,
                            "  q = {}: {} * {} = {} = {l}^2, an odd square (witness l={l})",
                            cand.q,
                            cand.q.abs(),
                            inv.determinant,
                            cand.product
                        );
                    }
                    None => {
                        let r = isqrt(cand.product).expect("products are positive");
                        let _ = writeln!(
                            s,
                            "  q = {}: {} * {} = {} is not a perfect square ({r}^2 = {} < {} < {} = {}^2)",
                            cand.q,
                            cand.q.abs(),
                            inv.determinant,
                            cand.product,
                            r * r,
                            cand.product,
                            (r + 1) * (r + 1),
                            r + 1
                        );
                    }
                }
            }
            let meaning = match c.verdict.status {
                VerdictStatus::Obstructed => "concordance crosscap number 1 is impossible",
                _ => "concordance crosscap number 1 is not excluded",
            };
            let _ = writeln!(
                s,
                "verdict: {} ({meaning})",
                verdict_label(c.verdict.status)
            );
        }
    }
    let _ = writeln!(
        s,
        "concordance crosscap bounds: {}..{}",
        c.gammac_lower, c.gammac_upper
    );
    let _ = writeln!(s, "certificate: {}", certificate_label(certificate, c));
    if !c.notes.is_empty() {
        let _ = writeln!(s, "notes:");
        for note in &c.notes {
            let _ = writeln!(s, "  - {note}");
        }
    }
    s
}
