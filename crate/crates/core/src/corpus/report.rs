//! Report serialization: TSV summary rows, JSON lines and a text summary.

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use crate::verify::{CheckStatus, VerificationReport};

pub const TSV_HEADER: &str =
    "name\torder\tp\tk\tn_subgroups\tn_max_abelian\tresidue\tchecks_passed\tchecks_failed\tstatus";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Tsv,
    Jsonl,
    Text,
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "tsv" => Ok(ReportFormat::Tsv),
            "jsonl" => Ok(ReportFormat::Jsonl),
            "text" => Ok(ReportFormat::Text),
            _ => Err(format!(
                "unknown format {s:?} (expected tsv, jsonl or text)"
            )),
        }
    }
}

impl fmt::Display for ReportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReportFormat::Tsv => "tsv",
            ReportFormat::Jsonl => "jsonl",
            ReportFormat::Text => "text",
        })
    }
}

fn dash<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

pub fn tsv_row(r: &VerificationReport) -> String {
    [
        r.name.clone(),
        r.order.to_string(),
        dash(r.p),
        dash(r.k),
        dash(r.n_subgroups),
        dash(r.n_max_abelian),
        dash(r.residue),
        r.checks_passed().to_string(),
        r.checks_failed().to_string(),
        r.status.label().to_string(),
    ]
    .join("\t")
}

fn status_label(s: CheckStatus) -> &'static str {
    match s {
        CheckStatus::Pass => "pass",
        CheckStatus::Fail => "FAIL",
        CheckStatus::NotApplicable => "n/a",
        CheckStatus::Skipped => "skip",
    }
}

fn write_text(reports: &[VerificationReport], out: &mut dyn Write) -> io::Result<()> {
    for r in reports {
        writeln!(
            out,
            "{} (order {}, p={}, k={}): {} in {:.3}s",
            r.name,
            r.order,
            dash(r.p),
            dash(r.k),
            r.status.label(),
            r.elapsed.as_secs_f64()
        )?;
        if let Some(note) = &r.note {
            writeln!(out, "  note: {note}")?;
        }
        if let (Some(s), Some(m)) = (r.n_subgroups, r.n_max_abelian) {
            writeln!(
                out,
                "  subgroups={s} maximal_abelian={m} residue={}",
                dash(r.residue)
            )?;
        }
        for c in &r.checks {
            writeln!(
                out,
                "  [{:>4}] {:<22} {:>8.3}ms  {}",
                status_label(c.status),
                c.check_name,
                c.elapsed.as_secs_f64() * 1e3,
                c.detail
            )?;
        }
    }
    let count = |s| reports.iter().filter(|r| r.status == s).count();
    use crate::verify::ReportStatus::*;
    writeln!(
        out,
        "{} groups: {} pass, {} fail, {} n/a, {} skipped",
        reports.len(),
        count(Pass),
        count(Fail),
        count(NotApplicable),
        count(Skipped)
    )
}

/// Writes reports in input order. TSV and JSONL carry no timing data.
pub fn write_report(
    reports: &[VerificationReport],
    format: ReportFormat,
    out: &mut dyn Write,
) -> io::Result<()> {
    match format {
        ReportFormat::Tsv => {
            writeln!(out, "{TSV_HEADER}")?;
            for r in reports {
                writeln!(out, "{}", tsv_row(r))?;
            }
            Ok(())
        }
        ReportFormat::Jsonl => {
            for r in reports {
                serde_json::to_writer(&mut *out, r)?;
                writeln!(out)?;
            }
            Ok(())
        }
        ReportFormat::Text => write_text(reports, out),
    }
}

pub fn render_report(reports: &[VerificationReport], format: ReportFormat) -> String {
    let mut buf = Vec::new();
    write_report(reports, format, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("reports are ASCII")
}
