//! Text and machine renderings of profiles, verdicts, search results and
//! corpus verification. Machine output is pretty-printed JSON in which every
//! integer is a decimal string.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::arith::Factorization;
use crate::classify::ClassificationVerdict;
use crate::corpus::VerificationReport;
use crate::error::Error;
use crate::invariants::{InvariantProfile, Multidegree};
use crate::search::{PairCheck, PairReport, SearchConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Text,
    Machine,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "text" => Ok(Self::Text),
            "machine" => Ok(Self::Machine),
            other => Err(Error::InvalidInput(format!(
                "unknown format `{other}` (expected text or machine)"
            ))),
        }
    }
}

fn json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

pub fn render_profile(p: &InvariantProfile, format: OutputFormat) -> String {
    match format {
        OutputFormat::Machine => json(p),
        OutputFormat::Text => {
            let mut out = format!("X_{}{}\n", p.n, p.multidegree);
            for (k, v) in p.to_record() {
                if k == "degrees" {
                    continue;
                }
                let _ = writeln!(out, "  {k:<6} {v}");
            }
            out
        }
    }
}

fn verdict_lines(v: &ClassificationVerdict, out: &mut String, indent: &str) {
    let criteria: Vec<_> = v.criteria.iter().map(|c| c.as_str()).collect();
    let _ = writeln!(
        out,
        "{indent}X_{n}{a} vs X_{n}{b}: {s}",
        n = v.n,
        a = v.first,
        b = v.second,
        s = v.summary()
    );
    if !criteria.is_empty() {
        let _ = writeln!(out, "{indent}  criteria: {}", criteria.join(", "));
    }
    for c in &v.compared {
        let mark = if c.agrees() { "=" } else { "!=" };
        let _ = writeln!(
            out,
            "{indent}  {:<6} {} {mark} {}",
            c.name, c.first, c.second
        );
    }
    for note in &v.notes {
        let _ = writeln!(out, "{indent}  note: {note}");
    }
}

pub fn render_verdict(v: &ClassificationVerdict, format: OutputFormat) -> String {
    match format {
        OutputFormat::Machine => json(v),
        OutputFormat::Text => {
            let mut out = String::new();
            verdict_lines(v, &mut out, "");
            out
        }
    }
}

fn report_lines(r: &PairReport, out: &mut String) {
    let _ = writeln!(out, "  key: {}", r.key);
    for ((m, d), c1) in r.members.iter().zip(&r.total_degrees).zip(&r.c1) {
        let _ = writeln!(out, "    {m}  r={} d={d} c1={c1}", m.codim());
    }
    for p in &r.pairs {
        verdict_lines(&p.verdict, out, "    ");
    }
}

#[derive(Serialize)]
struct SearchDocument<'a> {
    n: u32,
    max_degree: u32,
    min_codim: usize,
    max_codim: usize,
    max_total_degree: Option<String>,
    mode: String,
    c1_filter: crate::search::C1Filter,
    rigidity_pruning: bool,
    groups: &'a [PairReport],
}

/// Rendering deliberately omits the worker count so output is identical
/// for every degree of parallelism.
pub fn render_search(
    config: &SearchConfig,
    reports: &[PairReport],
    format: OutputFormat,
) -> String {
    match format {
        OutputFormat::Machine => json(&SearchDocument {
            n: config.n,
            max_degree: config.max_degree,
            min_codim: config.min_codim,
            max_codim: config.max_codim,
            max_total_degree: config.max_total_degree.as_ref().map(ToString::to_string),
            mode: config.mode.to_string(),
            c1_filter: config.c1_filter,
            rigidity_pruning: config.rigidity_pruning,
            groups: reports,
        }),
        OutputFormat::Text => {
            let mut out = format!(
                "search n={} max-degree={} codim={}..={} mode={} c1-filter={:?} rigidity-pruning={}",
                config.n,
                config.max_degree,
                config.min_codim,
                config.max_codim,
                config.mode,
                config.c1_filter,
                config.rigidity_pruning
            );
            if let Some(cap) = &config.max_total_degree {
                let _ = write!(out, " max-total-degree={cap}");
            }
            out.push('\n');
            if reports.is_empty() {
                out.push_str("no pairs found\n");
                return out;
            }
            for (i, r) in reports.iter().enumerate() {
                let _ = writeln!(out, "group {}", i + 1);
                report_lines(r, &mut out);
            }
            let _ = writeln!(out, "{} group(s) found", reports.len());
            out
        }
    }
}

pub fn render_pair_check(check: &PairCheck, format: OutputFormat) -> String {
    match format {
        OutputFormat::Machine => json(check),
        OutputFormat::Text => match check {
            PairCheck::Match(r) => {
                let mut out = String::from("keys match\n");
                report_lines(r, &mut out);
                out
            }
            PairCheck::Mismatch(m) => {
                format!("keys differ at {}: {} vs {}\n", m.field, m.first, m.second)
            }
        },
    }
}

#[derive(Serialize)]
struct FactorDocument {
    degrees: String,
    value: String,
    factorization: String,
    nu2: String,
    nu3: String,
}

pub fn render_factorization(md: &Multidegree, f: &Factorization, format: OutputFormat) -> String {
    let doc = FactorDocument {
        degrees: md.to_string(),
        value: f.value().to_string(),
        factorization: f.to_string(),
        nu2: f.exponent(2).to_string(),
        nu3: f.exponent(3).to_string(),
    };
    match format {
        OutputFormat::Machine => json(&doc),
        OutputFormat::Text => format!(
            "d = {} = {}\n  nu_2(d) = {}\n  nu_3(d) = {}\n",
            doc.value, doc.factorization, doc.nu2, doc.nu3
        ),
    }
}

#[derive(Serialize)]
struct VerificationDocument<'a> {
    passed: bool,
    failed_records: usize,
    failed_claims: usize,
    #[serde(flatten)]
    report: &'a VerificationReport,
}

pub fn render_verification(report: &VerificationReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Machine => json(&VerificationDocument {
            passed: report.passed(),
            failed_records: report.failed_records(),
            failed_claims: report.failed_claims(),
            report,
        }),
        OutputFormat::Text => {
            let mut out = String::new();
            for r in &report.records {
                match r.first_failure() {
                    None => {
                        let _ = writeln!(out, "PASS {} X_{}{}", r.id, r.n, r.degrees);
                    }
                    Some(f) => {
                        let _ = writeln!(
                            out,
                            "FAIL {} X_{}{}: {} expected {} computed {}",
                            r.id, r.n, r.degrees, f.field, f.expected, f.computed
                        );
                    }
                }
                for c in r.checks.iter().filter(|c| c.informational) {
                    let _ = writeln!(
                        out,
                        "  info {}: listed {} computed {}{}",
                        c.field,
                        c.expected,
                        c.computed,
                        if c.passed() { "" } else { " (differs)" }
                    );
                }
            }
            for c in &report.claims {
                let _ = writeln!(
                    out,
                    "{} claim {} ~ {} (n={}): expected {} got {}{}",
                    if c.passed() { "PASS" } else { "FAIL" },
                    c.first,
                    c.second,
                    c.n,
                    c.claim.relation(),
                    c.relation,
                    if c.distinct_c1 { ", distinct c_1" } else { "" }
                );
            }
            let _ = writeln!(
                out,
                "{} records ({} failed), {} pair claims ({} failed)",
                report.records.len(),
                report.failed_records(),
                report.claims.len(),
                report.failed_claims()
            );
            out
        }
    }
}
