//! Built-in replication cases with embedded expected values.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::Serialize;

use super::CliError;
use crate::contraction::{check_all, check_pair_by_label, compute_m_max, ContractionInstance};
use crate::fixtures;
use crate::functions::{check_monotone_tripled, default_cclass_tolerance, grid_1d, grid_2d, verify_cclass};
use crate::numeric::Value;
use crate::rational::{format_rational, int, rat, ten_pow_neg, Rational};
use crate::solver::{check_vanishing, picard_iterate, uniqueness_scan, verify_decreasing, verify_fixed_point, Status};
use crate::spaces::{check_b_rectangular, check_b_triangle, check_rectangular, check_triangle, ScanOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CaseId {
    Ex2Space,
    MainSpaceNegatives,
    MainContraction,
    MainSolve,
    CclassCatalog,
    MonotoneTripled,
}

impl CaseId {
    pub const ALL: [CaseId; 6] = [
        CaseId::Ex2Space,
        CaseId::MainSpaceNegatives,
        CaseId::MainContraction,
        CaseId::MainSolve,
        CaseId::CclassCatalog,
        CaseId::MonotoneTripled,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CaseId::Ex2Space => "EX2_SPACE",
            CaseId::MainSpaceNegatives => "MAIN_SPACE_NEGATIVES",
            CaseId::MainContraction => "MAIN_CONTRACTION",
            CaseId::MainSolve => "MAIN_SOLVE",
            CaseId::CclassCatalog => "CCLASS_CATALOG",
            CaseId::MonotoneTripled => "MONOTONE_TRIPLED",
        }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for CaseId {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.to_ascii_uppercase().replace('-', "_");
        CaseId::ALL.into_iter().find(|c| c.name() == norm).ok_or_else(|| {
            let names: Vec<_> = CaseId::ALL.iter().map(|c| c.name()).collect();
            CliError::Usage(format!("unknown case {s:?}; use one of {}", names.join(", ")))
        })
    }
}

/// One compared field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReplicationCheck {
    pub field: String,
    /// Where the expected value comes from.
    pub location: String,
    pub expected: String,
    pub actual: String,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReplicationReport {
    pub case: CaseId,
    pub passed: bool,
    pub checks: Vec<ReplicationCheck>,
    pub mismatches: Vec<String>,
}

#[derive(Default)]
struct Checks(Vec<ReplicationCheck>);

impl Checks {
    fn push(&mut self, field: impl Into<String>, location: &str, expected: String, actual: String) {
        let ok = expected == actual;
        self.0.push(ReplicationCheck {
            field: field.into(),
            location: location.to_owned(),
            expected,
            actual,
            ok,
        });
    }

    fn rational(&mut self, field: impl Into<String>, location: &str, expected: Rational, actual: &Rational) {
        self.push(field, location, format_rational(&expected), format_rational(actual));
    }

    fn value(&mut self, field: impl Into<String>, location: &str, expected: Rational, actual: &Value) {
        self.push(
            field,
            location,
            format_rational(&expected),
            actual.to_canonical_string(),
        );
    }

    fn flag(&mut self, field: impl Into<String>, location: &str, expected: bool, actual: bool) {
        self.push(field, location, expected.to_string(), actual.to_string());
    }

    fn text(&mut self, field: impl Into<String>, location: &str, expected: &str, actual: &str) {
        self.push(field, location, expected.to_owned(), actual.to_owned());
    }

    /// Records an evaluation error as a mismatch instead of aborting the case.
    fn fallible<T, E: fmt::Display>(&mut self, field: &str, location: &str, r: Result<T, E>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.push(field, location, "no error".to_owned(), format!("error: {e}"));
                None
            }
        }
    }

    fn finish(self, case: CaseId) -> ReplicationReport {
        let mismatches = self
            .0
            .iter()
            .filter(|c| !c.ok)
            .map(|c| c.field.clone())
            .collect::<Vec<_>>();
        ReplicationReport {
            case,
            passed: mismatches.is_empty(),
            checks: self.0,
            mismatches,
        }
    }
}

const EX2: &str = "coefficient-three example";
const SPACE: &str = "worked example, space";
const CASE_I: &str = "worked example, case I";
const CASE_II: &str = "worked example, case II";
const CASE_IV: &str = "worked example, case IV";
const CONCLUSION: &str = "worked example, conclusion";
const DERIVED: &str = "direct evaluation";

/// Runs a case end to end against its embedded expected values.
pub fn replicate(case: CaseId) -> ReplicationReport {
    let mut c = Checks::default();
    match case {
        CaseId::Ex2Space => ex2_space(&mut c),
        CaseId::MainSpaceNegatives => main_space_negatives(&mut c),
        CaseId::MainContraction => main_contraction(&mut c),
        CaseId::MainSolve => main_solve(&mut c),
        CaseId::CclassCatalog => cclass_catalog(&mut c),
        CaseId::MonotoneTripled => monotone_tripled(&mut c),
    }
    c.finish(case)
}

fn ex2_space(c: &mut Checks) {
    let space = fixtures::ex2_space(&fixtures::ex2_default_step());
    for (a, b, d) in [
        ("1/2", "1/3", rat(1, 20)),
        ("1/2", "1/4", rat(2, 25)),
        ("1/2", "1/6", rat(2, 5)),
        ("1/2", "1/5", rat(6, 25)),
        ("1/2", "1/7", rat(3, 20)),
    ] {
        if let Some(v) = c.fallible(&format!("d({a}, {b})"), EX2, space.distance(a, b)) {
            c.rational(format!("d({a}, {b})"), EX2, d, v);
        }
    }
    if let Some(r) = c.fallible(
        "b_rectangular",
        EX2,
        check_b_rectangular(&space, &int(3), ScanOptions::default()),
    ) {
        c.flag("b_rectangular(s = 3)", EX2, true, r.verdict);
    }
}

fn main_space_negatives(c: &mut Checks) {
    let space = fixtures::main_space(&fixtures::main_default_step());
    let opts = ScanOptions::all_witnesses();
    if let Some(d) = c.fallible("d(1/5, 1/9)", SPACE, space.distance("1/5", "1/9")) {
        c.rational("d(1/5, 1/9)", SPACE, rat(1, 2), d);
    }

    let tri = check_triangle(&space, opts);
    c.flag("triangle.verdict", "worked example, item 1", false, tri.verdict);
    match tri.witness(&["1/5", "1/16", "1/9"]) {
        Some(w) => {
            c.rational("triangle.lhs", "worked example, item 1", rat(1, 2), &w.lhs);
            c.rational("triangle.rhs", "worked example, item 1", rat(3, 20), &w.rhs);
        }
        None => c.text("triangle.witness", "worked example, item 1", "1/5, 1/16, 1/9", "absent"),
    }

    if let Some(bt) = c.fallible(
        "b_triangle",
        "worked example, item 2",
        check_b_triangle(&space, &int(3), opts),
    ) {
        c.flag("b_triangle(s = 3).verdict", "worked example, item 2", false, bt.verdict);
        match bt.witness(&["1/5", "1/16", "1/9"]) {
            Some(w) => c.rational("b_triangle(s = 3).rhs", "worked example, item 2", rat(9, 20), &w.rhs),
            None => c.text(
                "b_triangle.witness",
                "worked example, item 2",
                "1/5, 1/16, 1/9",
                "absent",
            ),
        }
    }

    let rect = check_rectangular(&space, opts);
    c.flag("rectangular.verdict", "worked example, item 3", false, rect.verdict);
    match rect.witness(&["1/5", "1/16", "0", "1/9"]) {
        Some(w) => c.rational("rectangular.rhs", "worked example, item 3", rat(1, 4), &w.rhs),
        None => c.text(
            "rectangular.witness",
            "worked example, item 3",
            "1/5, 1/16, 0, 1/9",
            "absent",
        ),
    }

    if let Some(br) = c.fallible(
        "b_rectangular",
        SPACE,
        check_b_rectangular(&space, &int(3), ScanOptions::default()),
    ) {
        c.flag("b_rectangular(s = 3).verdict", SPACE, true, br.verdict);
    }
}

#[allow(clippy::too_many_arguments)]
fn pair(
    c: &mut Checks,
    inst: &ContractionInstance,
    x: &str,
    y: &str,
    location: &str,
    lhs: Rational,
    m: Option<Rational>,
    rhs: Option<Rational>,
) {
    let Some(v) = c.fallible(&format!("pair({x}, {y})"), location, check_pair_by_label(inst, x, y)) else {
        return;
    };
    c.value(format!("lhs({x}, {y})"), location, lhs, &v.lhs);
    if let Some(m) = m {
        c.value(format!("M({x}, {y})"), location, m, &v.m);
    }
    if let Some(rhs) = rhs {
        c.value(format!("rhs({x}, {y})"), location, rhs, &v.rhs);
    }
    c.flag(format!("holds({x}, {y})"), location, true, v.holds);
}

fn main_contraction(c: &mut Checks) {
    let inst = fixtures::main_instance(&fixtures::main_default_step());
    let report = c.fallible("check_all", CONCLUSION, check_all(&inst));
    if let Some(r) = &report {
        c.flag("global_holds", CONCLUSION, true, r.global_holds);
        c.flag("exact", DERIVED, true, r.exact);
    }

    // x, y in B: LHS = psi(9 d(1/16, 1/16) + 1/16 + 1/16)
    pair(
        c,
        &inst,
        "1/2",
        "1/2",
        CASE_IV,
        rat(3, 16),
        Some(int(1)),
        Some(rat(23, 16)),
    );
    pair(c, &inst, "1", "3/4", CASE_IV, rat(3, 16), None, None);
    // x in A, y in B: LHS = (3/2)(9/20 + 1/16)
    pair(
        c,
        &inst,
        "0",
        "1/2",
        CASE_II,
        rat(123, 160),
        Some(rat(193, 256)),
        Some(rat(4439, 4096)),
    );
    pair(
        c,
        &inst,
        "1/16",
        "1/2",
        CASE_II,
        rat(123, 160),
        Some(rat(193, 256)),
        Some(rat(4439, 4096)),
    );
    // x, y in A: everything maps to 0
    pair(c, &inst, "1/5", "1/16", CASE_I, int(0), None, None);

    if let (Ok(x), Ok(y)) = (inst.index("1/5"), inst.index("1/16")) {
        c.value("A(1/5, 1/16)", DERIVED, rat(29, 80), &inst.terms(x, y)[0]);
        c.value("M_max(1/5, 1/16)", DERIVED, rat(7, 10), &compute_m_max(&inst, x, y));
    }

    for (m, expected, location) in [
        (int(1), rat(23, 16), CASE_IV),
        (rat(59, 100), rat(1357, 1600), CASE_II),
        (rat(193, 256), rat(4439, 4096), CASE_II),
        (rat(1, 20), rat(23, 320), CASE_I),
        (rat(9, 80), rat(207, 1280), CASE_I),
    ] {
        let field = format!("rhs_at({})", format_rational(&m));
        if let Some(v) = c.fallible(&field, location, inst.rhs_at(&Value::Exact(m))) {
            c.value(field, location, expected, &v);
        }
    }
    if let Some(r) = report {
        // every x in A, y in B pair clears the smallest case II bound
        let a = ["0", "1/5", "1/9", "1/16"];
        let worst_case_ii = r
            .verdicts
            .iter()
            .filter(|v| a.contains(&v.x.as_str()) && !a.contains(&v.y.as_str()))
            .all(|v| v.rhs.cmp_value(&Value::Exact(rat(123, 160))).is_ge());
        c.flag("case II rhs >= 123/160", CASE_II, true, worst_case_ii);
    }
}

fn main_solve(c: &mut Checks) {
    let inst = fixtures::main_instance(&fixtures::main_default_step());
    let zero = Rational::zero();
    let max_iter = 10 * inst.space.len();
    if let Some(r) = c.fallible("picard(1/2)", DERIVED, picard_iterate(&inst, "1/2", max_iter, &zero)) {
        c.text("orbit(1/2)", DERIVED, "1/2 1/16 0 0 0", &r.trace.orbit.join(" "));
        c.text("status(1/2)", DERIVED, "FixedPoint", &format!("{:?}", r.status));
        let v = check_vanishing(&r.trace, &zero);
        let idx = |t: &crate::solver::TailStatus| format!("{:?}", t.from_index);
        c.text("step_dist vanishes from", DERIVED, "Some(2)", &idx(&v.step_dist));
        c.text("skip_dist vanishes from", DERIVED, "Some(2)", &idx(&v.skip_dist));
        c.text("weights vanish from", DERIVED, "Some(2)", &idx(&v.weights));
    }
    let mut all_fixed_at_zero = true;
    let mut diagnostics = true;
    for p in inst.space.points() {
        match picard_iterate(&inst, &p.label, max_iter, &zero) {
            Ok(r) => {
                all_fixed_at_zero &= r.status == Status::FixedPoint && r.point.as_deref() == Some("0");
                diagnostics &= verify_decreasing(&r.trace).holds && check_vanishing(&r.trace, &zero).all_vanish();
            }
            Err(_) => all_fixed_at_zero = false,
        }
    }
    c.flag("every start reaches 0", CONCLUSION, true, all_fixed_at_zero);
    c.flag("decreasing and vanishing on every trace", DERIVED, true, diagnostics);
    let u = uniqueness_scan(&inst, &zero);
    c.text("fixed points", CONCLUSION, "0", &u.fixed_points.join(" "));
    if let Some(f) = c.fallible(
        "verify_fixed_point(0)",
        CONCLUSION,
        verify_fixed_point(&inst, "0", &zero),
    ) {
        c.flag("fixed_point(0).passes", CONCLUSION, true, f.passes);
        c.value("weight(0)", CONCLUSION, zero.clone(), &f.weight);
    }
    if let Some(f) = c.fallible(
        "verify_fixed_point(1/2)",
        DERIVED,
        verify_fixed_point(&inst, "1/2", &zero),
    ) {
        c.rational("d(1/2, T(1/2))", DERIVED, rat(49, 256), &f.distance);
        c.flag("fixed_point(1/2).passes", DERIVED, false, f.passes);
    }
}

fn cclass_catalog(c: &mut Checks) {
    let grid = grid_2d(&int(10), &rat(1, 8));
    let zero = Rational::zero();
    for (i, f) in fixtures::cclass_catalog().iter().enumerate() {
        let n = i + 1;
        let location = format!("C-class catalog, entry {n}");
        let tol = default_cclass_tolerance(f);
        let Some(r) = c.fallible(
            &format!("entry {n}"),
            &location,
            verify_cclass(f, &grid, &tol, &zero, ScanOptions::default()),
        ) else {
            continue;
        };
        c.flag(format!("entry {n}.verdict"), &location, true, r.verdict);
        let locus = r.locus();
        match n {
            1 => c.flag(
                "entry 1 equality locus is {t = 0}",
                &location,
                true,
                locus.len() == 81 && locus.iter().all(|(_, t)| t.is_zero()),
            ),
            2 => c.flag(
                "entry 2 equality locus is {s = 0}",
                &location,
                true,
                locus.len() == 81 && locus.iter().all(|(s, _)| s.is_zero()),
            ),
            _ => {}
        }
    }
}

fn monotone_tripled(c: &mut Checks) {
    let grid = grid_1d(&int(0), &int(4), &rat(1, 16));
    let tol = ten_pow_neg(20);
    let location = "monotone tripled example";
    if let Some(r) = c.fallible(
        "monotone",
        location,
        check_monotone_tripled(&fixtures::monotone_tripled(), &grid, &tol, ScanOptions::default()),
    ) {
        c.flag("monotone.verdict", location, true, r.verdict);
    }
    let location = "non-monotone tripled example";
    let t = fixtures::non_monotone_tripled();
    if let Some(r) = c.fallible(
        "non_monotone",
        location,
        check_monotone_tripled(&t, &grid, &tol, ScanOptions::all_witnesses()),
    ) {
        c.flag("non_monotone.verdict", location, false, r.verdict);
        match r.witness(&[rat(1, 4), int(2)]) {
            Some(w) => {
                c.value("G(1/4)", DERIVED, rat(7, 16), &w.values[0]);
                c.value("G(2)", DERIVED, int(0), &w.values[1]);
            }
            None => c.text("witness (1/4, 2)", DERIVED, "present", "absent"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case_names_round_trip() {
        for c in CaseId::ALL {
            assert_eq!(c.name().parse::<CaseId>().unwrap(), c);
        }
        assert_eq!("main-solve".parse::<CaseId>().unwrap(), CaseId::MainSolve);
        assert!("nope".parse::<CaseId>().is_err());
    }
}
