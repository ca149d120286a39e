//! Text renderings for the terminal.

use std::fmt::Write;

use msvkit::ci::{CIReport, FailureReason};
use msvkit::detideal::{GroebnerReport, LabeledMinor};
use msvkit::frlab::{Lemma2Report, VerificationReport};
use msvkit::poly::Rational;
use msvkit::{Cell, PartialPermutation};

pub use msvkit::detideal::describe;

/// The matrix of `w` inside a border: `1` for entries, `*` for diagram cells
/// of positive rank, `.` for rank-zero diagram cells.
pub fn grid(w: &PartialPermutation) -> String {
    let diagram = w.diagram();
    let border = format!("+{}+\n", "-".repeat(w.cols()));
    let mut out = border.clone();
    for p in 1..=w.rows() {
        out.push('|');
        for q in 1..=w.cols() {
            let ch = if w.image(p) == Some(q) {
                '1'
            } else {
                match diagram.rank(Cell::new(p, q)) {
                    Some(0) => '.',
                    Some(_) => '*',
                    None => ' ',
                }
            };
            out.push(ch);
        }
        out.push_str("|\n");
    }
    out.push_str(&border);
    out
}

pub fn generators(gens: &[LabeledMinor<Rational>]) -> String {
    let mut out = String::new();
    for g in gens {
        if g.size() == 1 {
            writeln!(out, "{}", g.label()).unwrap();
        } else {
            writeln!(out, "{} = {}", g.label(), g.poly).unwrap();
        }
    }
    out
}

pub fn ci_report(report: &CIReport) -> String {
    let mut out = String::new();
    writeln!(out, "w = {}", report.w).unwrap();
    let verdict = if report.verdict {
        "complete intersection"
    } else {
        "not a complete intersection"
    };
    writeln!(out, "verdict: {verdict}").unwrap();
    writeln!(out, "codim: {}", report.codim).unwrap();
    match report.mu {
        Some(mu) => writeln!(out, "mu: {mu}").unwrap(),
        None => writeln!(out, "mu: not computed").unwrap(),
    }
    if let Some(w) = &report.witness {
        let reason = match w.reason {
            FailureReason::BlockNotPermutation => "block is not a permutation matrix",
            FailureReason::BlockNotCompleteIntersection => "block is not a complete intersection",
        };
        writeln!(out, "witness: {} r={}: {reason}", w.cell, w.rank).unwrap();
        for v in &w.lemma51_violations {
            writeln!(out, "  {} in D(w) at distance {}", v.offending, v.i).unwrap();
        }
    }
    if let Some(gens) = &report.generators {
        writeln!(out, "generators ({}):", gens.len()).unwrap();
        for g in gens {
            writeln!(out, "  {}", g.label()).unwrap();
        }
    }
    out
}

pub fn groebner_report(report: &GroebnerReport) -> String {
    let mut out = String::new();
    let status = if report.matches { "match" } else { "MISMATCH" };
    writeln!(out, "initial ideal of I_{} vs antidiagonal ideal: {status}", report.w).unwrap();
    if !report.matches {
        writeln!(out, "  from Groebner basis: {}", report.gb_leading.join(", ")).unwrap();
        writeln!(out, "  antidiagonals:       {}", report.antidiagonal.join(", ")).unwrap();
    }
    out
}

pub fn lemma2_report(c: Cell, report: &Lemma2Report) -> String {
    let mut out = String::new();
    writeln!(out, "c = x[{},{}]", c.p, c.q).unwrap();
    writeln!(out, "in(<c> + I_w) = <c> + J_w: {}", report.holds).unwrap();
    writeln!(out, "in(<c> + I_w) contains <c> + J_w: {}", report.contains).unwrap();
    out
}

pub fn localization_report(report: &VerificationReport) -> String {
    let mut out = String::new();
    writeln!(out, "w = {}", report.w).unwrap();
    let Some([p, q]) = report.c else {
        writeln!(out, "skipped: w is regular").unwrap();
        return out;
    };
    writeln!(out, "c = x[{p},{q}]").unwrap();
    for (name, ok) in [
        ("window", report.d0_window),
        ("lemma1", report.lemma1),
        ("lemma2", report.lemma2),
        ("lemma3_nzd", report.lemma3_nzd),
        ("I = I'", report.i_eq_iprime),
    ] {
        writeln!(out, "{name}: {}", if ok { "ok" } else { "FAILED" }).unwrap();
    }
    out
}

pub fn census_line(report: &CIReport) -> String {
    let verdict = if report.verdict { "ci" } else { "non-ci" };
    let mu = report.mu.map_or("-".to_string(), |m| m.to_string());
    format!("{} {verdict} codim={} mu={mu}", report.w, report.codim)
}
