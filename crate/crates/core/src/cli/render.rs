//! Text and JSON rendering of reports.

use std::fmt::Write as _;

use serde::Serialize;

use super::{ContractionView, FunctionsReport, MinimalSReport, Report, SolveReport, SpaceCheck};
use crate::contraction::PairVerdict;
use crate::rational::label_for;
use crate::spaces::AxiomReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// Pretty JSON with sorted keys. Rendering the parsed output again gives the
/// same bytes.
pub fn to_canonical_json(report: &Report) -> String {
    // serde_json's Map is a BTreeMap without `preserve_order`, so going
    // through Value sorts every object.
    let value = serde_json::to_value(report).expect("reports are always serializable");
    serde_json::to_string_pretty(&value).expect("values are always serializable")
}

pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => to_canonical_json(report),
        Format::Text => {
            let mut out = String::new();
            match report {
                Report::VerifySpace(r) => space(&mut out, r),
                Report::MinimalS(r) => minimal_s(&mut out, r),
                Report::CheckFunctions(r) => functions(&mut out, r),
                Report::CheckContraction(r) => contraction(&mut out, r),
                Report::Solve(r) => solve(&mut out, r),
                Report::Replicate { cases, passed } => {
                    for case in cases {
                        let _ = writeln!(out, "{} {}", case.case, verdict(case.passed));
                        for c in &case.checks {
                            let mark = if c.ok { "ok " } else { "BAD" };
                            let _ = writeln!(
                                out,
                                "  {mark} {:<44} expected {:<14} actual {:<14} [{}]",
                                c.field, c.expected, c.actual, c.location
                            );
                        }
                    }
                    let _ = writeln!(out, "replication: {}", verdict(*passed));
                }
                Report::Error { message } => {
                    let _ = writeln!(out, "error: {message}");
                }
            }
            out
        }
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

/// The serde name of a unit enum value.
fn tag<T: Serialize>(v: &T) -> String {
    match serde_json::to_value(v) {
        Ok(serde_json::Value::String(s)) => s,
        Ok(other) => other.to_string(),
        Err(_) => "?".to_owned(),
    }
}

fn axiom(out: &mut String, r: &AxiomReport) {
    let _ = writeln!(
        out,
        "{:<14} s = {:<6} {}  ({} violations over {} points)",
        r.axiom.to_string(),
        label_for(&r.parameter_s),
        verdict(r.verdict),
        r.violations,
        r.points
    );
    for w in &r.witnesses {
        let _ = writeln!(
            out,
            "  path {:<28} d = {:<8} sum = {:<8} bound = {}",
            w.path.join(" -> "),
            label_for(&w.lhs),
            label_for(&w.path_sum),
            label_for(&w.rhs)
        );
    }
    if r.violations > r.witnesses.len() {
        let _ = writeln!(out, "  ... {} more", r.violations - r.witnesses.len());
    }
}

fn space(out: &mut String, r: &SpaceCheck) {
    let claimed = r.claimed_s.as_ref().map_or("none".to_owned(), label_for);
    let _ = writeln!(out, "points: {}  claimed s: {claimed}", r.points);
    for a in &r.reports {
        axiom(out, a);
    }
    let _ = writeln!(out, "result: {}", verdict(r.passed));
}

fn minimal_s(out: &mut String, r: &MinimalSReport) {
    let _ = writeln!(out, "points: {}", r.points);
    let _ = writeln!(out, "minimal s: {}", label_for(&r.coefficient.s));
    let _ = writeln!(
        out,
        "argmax: {} ({} ordered maximizers)",
        r.coefficient.argmax.join(" -> "),
        r.coefficient.argmax_count
    );
    axiom(out, &r.check);
}

fn functions(out: &mut String, r: &FunctionsReport) {
    for p in &r.reports {
        let _ = writeln!(
            out,
            "{:<16} {}  {}  grid {} ({} samples, {} violations){}",
            tag(&p.property),
            p.function,
            verdict(p.verdict),
            p.grid,
            p.samples,
            p.violations,
            if p.approximate { " approximate" } else { "" }
        );
        let _ = writeln!(out, "  continuity: {}", tag(&p.continuity));
        for w in &p.witnesses {
            let args: Vec<_> = w.args.iter().map(label_for).collect();
            let vals: Vec<_> = w.values.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(out, "  at ({}): {} [{}]", args.join(", "), vals.join(", "), w.reason);
        }
        if !p.equality_locus.is_empty() {
            let shown: Vec<_> = p
                .equality_locus
                .iter()
                .take(6)
                .map(|[s, t]| format!("({s}, {t})"))
                .collect();
            let more = p.equality_locus.len().saturating_sub(6);
            let tail = if more > 0 {
                format!(" ... {more} more")
            } else {
                String::new()
            };
            let _ = writeln!(out, "  F(s, t) = s at: {}{tail}", shown.join(" "));
        }
        for n in &p.notes {
            let _ = writeln!(out, "  note: {n}");
        }
    }
    let _ = writeln!(out, "result: {}", verdict(r.passed));
}

fn pair_row(out: &mut String, v: &PairVerdict) {
    let l = v.l.as_ref().map(|l| format!(" l = {l}")).unwrap_or_default();
    let _ = writeln!(
        out,
        "  {:>6} {:>6} -> {:>6} {:>6}  lhs {:<14} M {:<14}{l} rhs {:<14} {}{}",
        v.x,
        v.y,
        v.tx,
        v.ty,
        v.lhs.to_string(),
        v.m.to_string(),
        v.rhs.to_string(),
        if v.holds { "ok" } else { "FAILS" },
        if v.degenerate { " (degenerate)" } else { "" }
    );
}

fn contraction(out: &mut String, r: &ContractionView) {
    let _ = writeln!(out, "variant: {}  s = {}  exact: {}", r.variant, r.s, r.exact);
    let _ = writeln!(out, "pairs checked: {}  failures: {}", r.pairs_checked, r.failures);
    for v in &r.verdicts {
        pair_row(out, v);
    }
    if let Some(w) = &r.worst_pair {
        let _ = writeln!(out, "tightest pair (margin {}):", w.margin);
        pair_row(out, w);
    }
    if let Some(sym) = r.symmetric {
        let _ = writeln!(out, "symmetry self-check: {}", verdict(sym));
    }
    if let Some(c) = &r.side_condition {
        let _ = writeln!(out, "side condition psi > control: {}", verdict(c.holds));
        for t in &c.violations {
            let _ = writeln!(out, "  fails at t = {}", label_for(t));
        }
    }
    for n in &r.notes {
        let _ = writeln!(out, "note: {n}");
    }
    let _ = writeln!(out, "result: {}", verdict(r.passed));
}

fn solve(out: &mut String, r: &SolveReport) {
    let _ = writeln!(
        out,
        "contraction holds: {}  max iterations: {}  tol: {}",
        r.contraction_holds,
        r.max_iter,
        short(&r.tol)
    );
    for run in &r.runs {
        let res = &run.result;
        let point = res.point.as_deref().unwrap_or("-");
        let period = res.period.map(|p| format!(" period {p}")).unwrap_or_default();
        let _ = writeln!(
            out,
            "start {}: {} {point}{period} after {} steps",
            run.start,
            tag(&res.status),
            res.iterations
        );
        let _ = writeln!(
            out,
            "  {:>3}  {:>8}  {:>12}  {:>12}  {:>12}  {:>14}",
            "n", "x_n", "d(x_n,x_n+1)", "d(x_n,x_n+2)", "phi(x_n)", "augmented"
        );
        let t = &res.trace;
        let cell = |v: Option<String>| v.unwrap_or_else(|| "-".to_owned());
        for (n, x) in t.orbit.iter().enumerate() {
            let _ = writeln!(
                out,
                "  {:>3}  {:>8}  {:>12}  {:>12}  {:>12}  {:>14}",
                n,
                x,
                cell(t.step_dist.get(n).map(label_for)),
                cell(t.skip_dist.get(n).map(label_for)),
                cell(t.weights.get(n).map(|v| v.to_string())),
                cell(t.augmented.get(n).map(|v| v.to_string()))
            );
        }
        let from = |s: &crate::solver::TailStatus| s.from_index.map_or("never".to_owned(), |i| format!("from {i}"));
        let _ = writeln!(
            out,
            "  decreasing: {}  vanishing: step {}, skip {}, weight {}",
            verdict(run.decreasing.holds),
            from(&run.vanishing.step_dist),
            from(&run.vanishing.skip_dist),
            from(&run.vanishing.weights)
        );
    }
    let _ = writeln!(
        out,
        "fixed points: {}",
        if r.uniqueness.fixed_points.is_empty() {
            "none".to_owned()
        } else {
            r.uniqueness.fixed_points.join(", ")
        }
    );
    for f in &r.fixed_points {
        let _ = writeln!(
            out,
            "  {} -> {}  d = {}  phi = {}  {}",
            f.point,
            f.image,
            label_for(&f.distance),
            f.weight,
            verdict(f.passes)
        );
    }
    if !r.uniqueness.nonzero_weight.is_empty() {
        let _ = writeln!(out, "  nonzero weight at: {}", r.uniqueness.nonzero_weight.join(", "));
    }
}

/// Drops a `/1` denominator from a serialized rational.
fn short(s: &str) -> &str {
    s.strip_suffix("/1").unwrap_or(s)
}
