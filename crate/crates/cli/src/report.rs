//! Classification report: digest, per-point rows, verdicts and timing.

use std::collections::BTreeMap;
use std::fmt::Write;

use moco_supported::{Analysis, CrossCheckReport, Label, OutcomeSet, Rational, WeightVector};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Digest {
    pub p: usize,
    pub points: usize,
    /// Every label, including those with a zero count.
    pub counts: BTreeMap<Label, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub id: String,
    pub coords: Vec<Rational>,
    pub label: Label,
    pub frontier: bool,
    pub boundary: bool,
    pub weak_witness: Option<WeightVector>,
    pub strict_witness: Option<WeightVector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dominated_by: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub digest: Digest,
    pub rows: Vec<Row>,
    pub verdicts: CrossCheckReport,
    pub elapsed_us: u64,
}

impl Report {
    pub fn new(set: &OutcomeSet, analysis: Analysis, elapsed_us: u64) -> Self {
        let mut counts: BTreeMap<Label, usize> = Label::ALL.iter().map(|&l| (l, 0)).collect();
        let rows: Vec<Row> = set
            .points()
            .iter()
            .zip(analysis.classifications)
            .map(|(y, c)| {
                *counts.entry(c.label).or_default() += 1;
                Row {
                    id: c.id,
                    coords: y.coords.clone(),
                    label: c.label,
                    frontier: c.frontier,
                    boundary: c.boundary,
                    weak_witness: c.weak_witness,
                    strict_witness: c.strict_witness,
                    dominated_by: c.dominated_by,
                }
            })
            .collect();
        Report {
            digest: Digest {
                p: set.p(),
                points: rows.len(),
                counts,
            },
            rows,
            verdicts: analysis.cross_check,
            elapsed_us,
        }
    }

    /// Whether the digest agrees with the rows.
    pub fn is_consistent(&self) -> bool {
        let mut tally: BTreeMap<Label, usize> = Label::ALL.iter().map(|&l| (l, 0)).collect();
        for r in &self.rows {
            *tally.entry(r.label).or_default() += 1;
        }
        tally == self.digest.counts && self.digest.points == self.rows.len()
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let cells: Vec<[String; 6]> = self
            .rows
            .iter()
            .map(|r| {
                let witness = r
                    .strict_witness
                    .as_ref()
                    .or(r.weak_witness.as_ref())
                    .map(|w| vector(w.as_slice()))
                    .or_else(|| r.dominated_by.as_ref().map(|d| format!("by {d}")))
                    .unwrap_or_else(|| "-".into());
                [
                    r.id.clone(),
                    vector(&r.coords),
                    r.label.to_string(),
                    flag(r.frontier),
                    flag(r.boundary),
                    witness,
                ]
            })
            .collect();
        let header = ["id", "point", "label", "frontier", "boundary", "witness"];
        let mut width: Vec<usize> = header.iter().map(|h| h.len()).collect();
        for c in &cells {
            for (w, s) in width.iter_mut().zip(c) {
                *w = (*w).max(s.chars().count());
            }
        }
        let line = |out: &mut String, cols: &[&str]| {
            let padded: Vec<String> = cols
                .iter()
                .zip(&width)
                .map(|(s, w)| format!("{s:<w$}"))
                .collect();
            let _ = writeln!(out, "{}", padded.join("  ").trim_end());
        };
        line(&mut out, &header);
        for c in &cells {
            let refs: Vec<&str> = c.iter().map(String::as_str).collect();
            line(&mut out, &refs);
        }
        let counts: Vec<String> = self
            .digest
            .counts
            .iter()
            .rev()
            .map(|(l, n)| format!("{l}={n}"))
            .collect();
        let _ = writeln!(
            out,
            "\np={} points={} {} ({} us)",
            self.digest.p,
            self.digest.points,
            counts.join(" "),
            self.elapsed_us
        );
        out
    }
}

pub fn vector(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

fn flag(b: bool) -> String {
    if b { "yes" } else { "no" }.into()
}

/// One PASS/FAIL line per equivalence, then one per failing point.
pub fn verdict_table(r: &CrossCheckReport) -> String {
    let mut out = String::new();
    let mark = |ok: bool| if ok { "PASS" } else { "FAIL" };
    let _ = writeln!(out, "{} weakly supported <=> boundary of upper image", mark(r.weak_iff_boundary()));
    let _ = writeln!(out, "{} supported <=> non-dominated frontier", mark(r.strict_iff_frontier()));
    match r.biobjective_collapse() {
        Some(ok) => {
            let _ = writeln!(out, "{} weakly supported <=> supported (p = 2)", mark(ok));
        }
        None => {
            let _ = writeln!(out, "SKIP weakly supported <=> supported (p = {})", r.p);
        }
    }
    let _ = writeln!(out, "{} witnesses certify their points", mark(r.certificates_sound()));
    for v in r.points.iter().filter(|v| !v.passed()) {
        let _ = writeln!(out, "  failing point {}: {v:?}", v.id);
    }
    out
}
