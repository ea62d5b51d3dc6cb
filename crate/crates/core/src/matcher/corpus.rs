use std::collections::BTreeMap;
use std::fmt::Write;

use rayon::prelude::*;
use serde::Serialize;

use super::{match_formula, MatchResult, Outcome};
use crate::logic::{parse_formula, Formula, Logic};

#[derive(Debug, Clone, Serialize)]
pub struct CorpusEntry {
    pub line: usize,
    pub source: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub logic: Option<Logic>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<MatchResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CorpusReport {
    pub entries: Vec<CorpusEntry>,
    /// Occurrences per pattern (short name), plus `init` and
    /// `non-matching` and `parse-error` buckets.
    pub histogram: BTreeMap<String, usize>,
}

pub const REPORT_HEADER: &str = "# A combination of patterns is a top-level conjunction whose conjuncts are \
partitioned into pattern instances; matching is syntactic modulo AC of & and |.";

fn parse_any(s: &str) -> Result<(Logic, Formula), String> {
    match parse_formula(s, Logic::Ltl) {
        Ok(f) => Ok((Logic::Ltl, f)),
        Err(ltl_err) => parse_formula(s, Logic::Ctl).map(|f| (Logic::Ctl, f)).map_err(|_| ltl_err.to_string()),
    }
}

/// Classifies one formula per non-empty line; `#` starts a comment.
pub fn match_corpus(text: &str) -> CorpusReport {
    let lines: Vec<(usize, String)> = text
        .lines()
        .enumerate()
        .filter_map(|(i, l)| {
            let body = l.split('#').next().unwrap_or("").trim();
            (!body.is_empty()).then(|| (i + 1, body.to_string()))
        })
        .collect();
    let entries: Vec<CorpusEntry> = lines
        .par_iter()
        .map(|(line, src)| match parse_any(src) {
            Ok((logic, f)) => CorpusEntry {
                line: *line,
                source: src.clone(),
                logic: Some(logic),
                result: Some(match_formula(&f)),
                error: None,
            },
            Err(e) => CorpusEntry { line: *line, source: src.clone(), logic: None, result: None, error: Some(e) },
        })
        .collect();

    let mut histogram: BTreeMap<String, usize> = BTreeMap::new();
    let mut bump = |k: &str| *histogram.entry(k.to_string()).or_default() += 1;
    for e in &entries {
        match &e.result {
            None => bump("parse-error"),
            Some(r) => match &r.outcome {
                Outcome::SinglePattern { binding } => bump(binding.id.short_name()),
                Outcome::Conjunction { parts } => {
                    for p in parts {
                        bump(p.id.short_name());
                    }
                    for res in &r.residue {
                        bump(if res.is_propositional() { "init" } else { "non-matching" });
                    }
                }
                Outcome::Init => bump("init"),
                Outcome::NonMatching => bump("non-matching"),
            },
        }
    }
    CorpusReport { entries, histogram }
}

impl CorpusReport {
    /// Human-readable report: one line per formula, then the histogram.
    pub fn render(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{REPORT_HEADER}").unwrap();
        for e in &self.entries {
            let class = match (&e.result, &e.error) {
                (Some(r), _) => describe(r),
                (None, Some(err)) => format!("parse-error: {err}"),
                _ => unreachable!(),
            };
            writeln!(out, "{:>4}  {:<40}  {}", e.line, class, e.source).unwrap();
        }
        out.push_str("\npattern occurrences\n");
        for (k, v) in &self.histogram {
            writeln!(out, "  {k:<20} {v}").unwrap();
        }
        out
    }
}

fn describe(r: &MatchResult) -> String {
    let b = |b: &super::Binding| {
        let mut args: Vec<String> = b.params.atoms().iter().map(|a| a.to_string()).collect();
        if let Some(k) = b.params.count {
            args.push(format!("k={k}"));
        }
        format!("{}[{}]", b.id.short_name(), args.join(","))
    };
    match &r.outcome {
        Outcome::SinglePattern { binding } => b(binding),
        Outcome::Conjunction { parts } => {
            let mut s = parts.iter().map(b).collect::<Vec<_>>().join(" & ");
            if !r.residue.is_empty() {
                write!(s, " + {} unmatched", r.residue.len()).unwrap();
            }
            s
        }
        Outcome::Init => "init".into(),
        Outcome::NonMatching => "non-matching".into(),
    }
}
