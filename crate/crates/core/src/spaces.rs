//! Finite generalized metric spaces with exact distances, and brute-force
//! checkers for the triangle, b-triangle, rectangular and b-rectangular
//! inequalities.
//!
//! Points are kept sorted by label, so every scan visits tuples in
//! lexicographic label order and reports are reproducible bit for bit.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::rational::{format_rational, label_for, rat, Rational};

/// Default number of witnesses kept by the axiom checkers.
pub const DEFAULT_WITNESS_CAP: usize = 16;

/// Default grid step for sampled intervals.
pub fn default_interval_step() -> Rational {
    rat(1, 32)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpaceError {
    #[error("duplicate point label {0:?}")]
    DuplicateLabel(String),
    #[error("negative distance {d} between {a:?} and {b:?}")]
    NegativeDistance { a: String, b: String, d: String },
    #[error("conflicting distances for {{{a}, {b}}}: {first} vs {second}")]
    AsymmetricEntry {
        a: String,
        b: String,
        first: String,
        second: String,
    },
    #[error("no table entry and no fallback for {{{a}, {b}}}")]
    UnresolvablePair { a: String, b: String },
    #[error("distinct points {a:?} and {b:?} are at distance zero")]
    ZeroDistance { a: String, b: String },
    #[error("nonzero self-distance {d} at {label:?}")]
    NonzeroSelfDistance { label: String, d: String },
    #[error("unknown point {0:?}")]
    UnknownPoint(String),
    #[error("coefficient s = {0} must be at least 1")]
    InvalidParameter(String),
    #[error("invalid range lo = {lo}, hi = {hi}, step = {step}")]
    InvalidRange { lo: String, hi: String, step: String },
    #[error("need at least 4 points, space has {0}")]
    TooFewPoints(usize),
    #[error("quadruple {0:?} has zero right-hand side and positive left-hand side")]
    NoFiniteCoefficient(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Point {
    pub label: String,
    #[serde(with = "crate::rational::serde_str")]
    pub value: Rational,
}

impl Point {
    pub fn new(label: impl Into<String>, value: Rational) -> Self {
        Point {
            label: label.into(),
            value,
        }
    }

    /// A point labelled by its own value, e.g. `1/16`.
    pub fn at(value: Rational) -> Self {
        Point {
            label: label_for(&value),
            value,
        }
    }
}

/// Formula used for pairs absent from the table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Fallback {
    #[default]
    None,
    /// `d(x, y) = (x - y)^2` on point values.
    SquaredDifference,
}

impl Fallback {
    fn resolve(self, x: &Rational, y: &Rational) -> Option<Rational> {
        match self {
            Fallback::None => None,
            Fallback::SquaredDifference => {
                let diff = x - y;
                Some(&diff * &diff)
            }
        }
    }
}

/// Explicit pair distances plus a fallback formula.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DistanceTable {
    /// Keyed by the label pair in sorted order.
    pub entries: BTreeMap<(String, String), Rational>,
    pub fallback: Fallback,
}

fn pair_key(a: &str, b: &str) -> (String, String) {
    if a <= b {
        (a.to_owned(), b.to_owned())
    } else {
        (b.to_owned(), a.to_owned())
    }
}

/// A finite space with a fully resolved, symmetric distance matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralizedMetricSpace {
    points: Vec<Point>,
    table: DistanceTable,
    claimed_s: Option<Rational>,
    index: BTreeMap<String, usize>,
    dist: Vec<Rational>,
}

/// One `(a, b, d)` table row as supplied by the caller.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairDistance {
    pub a: String,
    pub b: String,
    pub d: Rational,
}

impl PairDistance {
    pub fn new(a: impl Into<String>, b: impl Into<String>, d: Rational) -> Self {
        PairDistance {
            a: a.into(),
            b: b.into(),
            d,
        }
    }
}

/// Builds a space; table entries take precedence over the fallback.
pub fn build_space(
    points: Vec<Point>,
    entries: &[PairDistance],
    fallback: Fallback,
) -> Result<GeneralizedMetricSpace, SpaceError> {
    let mut points = points;
    points.sort_by(|a, b| a.label.cmp(&b.label));
    let mut index = BTreeMap::new();
    for (i, p) in points.iter().enumerate() {
        if index.insert(p.label.clone(), i).is_some() {
            return Err(SpaceError::DuplicateLabel(p.label.clone()));
        }
    }

    let mut table = DistanceTable {
        entries: BTreeMap::new(),
        fallback,
    };
    for e in entries {
        for label in [&e.a, &e.b] {
            if !index.contains_key(label) {
                return Err(SpaceError::UnknownPoint(label.clone()));
            }
        }
        if e.d.is_negative() {
            return Err(SpaceError::NegativeDistance {
                a: e.a.clone(),
                b: e.b.clone(),
                d: format_rational(&e.d),
            });
        }
        if e.a == e.b {
            if !e.d.is_zero() {
                return Err(SpaceError::NonzeroSelfDistance {
                    label: e.a.clone(),
                    d: format_rational(&e.d),
                });
            }
            continue;
        }
        let key = pair_key(&e.a, &e.b);
        if let Some(prev) = table.entries.get(&key) {
            if prev != &e.d {
                return Err(SpaceError::AsymmetricEntry {
                    a: key.0,
                    b: key.1,
                    first: format_rational(prev),
                    second: format_rational(&e.d),
                });
            }
        }
        table.entries.insert(key, e.d.clone());
    }

    let n = points.len();
    let mut dist = vec![Rational::zero(); n * n];
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (&points[i], &points[j]);
            let d = match table.entries.get(&pair_key(&a.label, &b.label)) {
                Some(d) => d.clone(),
                None => fallback
                    .resolve(&a.value, &b.value)
                    .ok_or_else(|| SpaceError::UnresolvablePair {
                        a: a.label.clone(),
                        b: b.label.clone(),
                    })?,
            };
            if d.is_zero() {
                return Err(SpaceError::ZeroDistance {
                    a: a.label.clone(),
                    b: b.label.clone(),
                });
            }
            dist[i * n + j] = d.clone();
            dist[j * n + i] = d;
        }
    }

    Ok(GeneralizedMetricSpace {
        points,
        table,
        claimed_s: None,
        index,
        dist,
    })
}

impl GeneralizedMetricSpace {
    pub fn with_claimed_s(mut self, s: Option<Rational>) -> Self {
        self.claimed_s = s;
        self
    }

    pub fn claimed_s(&self) -> Option<&Rational> {
        self.claimed_s.as_ref()
    }

    /// Points in label order.
    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn table(&self) -> &DistanceTable {
        &self.table
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn index_of(&self, label: &str) -> Result<usize, SpaceError> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| SpaceError::UnknownPoint(label.to_owned()))
    }

    pub fn point(&self, i: usize) -> &Point {
        &self.points[i]
    }

    pub fn label(&self, i: usize) -> &str {
        &self.points[i].label
    }

    /// Index of the point carrying `value`, if any.
    pub fn index_of_value(&self, value: &Rational) -> Option<usize> {
        self.points.iter().position(|p| &p.value == value)
    }

    /// Distance by index.
    #[inline]
    pub fn d(&self, i: usize, j: usize) -> &Rational {
        &self.dist[i * self.points.len() + j]
    }

    /// Distance by label.
    pub fn distance(&self, x: &str, y: &str) -> Result<&Rational, SpaceError> {
        Ok(self.d(self.index_of(x)?, self.index_of(y)?))
    }

    /// The space restricted to the given labels (table entries are kept).
    pub fn restrict(&self, labels: &[&str]) -> Result<GeneralizedMetricSpace, SpaceError> {
        let keep: BTreeSet<&str> = labels.iter().copied().collect();
        let mut points = Vec::new();
        for l in &keep {
            points.push(self.points[self.index_of(l)?].clone());
        }
        let entries: Vec<PairDistance> = self
            .table
            .entries
            .iter()
            .filter(|((a, b), _)| keep.contains(a.as_str()) && keep.contains(b.as_str()))
            .map(|((a, b), d)| PairDistance::new(a.clone(), b.clone(), d.clone()))
            .collect();
        Ok(build_space(points, &entries, self.table.fallback)?.with_claimed_s(self.claimed_s.clone()))
    }

    /// A copy of this space with an extra set of points (e.g. a sampled interval).
    pub fn extended(&self, extra: Vec<Point>) -> Result<GeneralizedMetricSpace, SpaceError> {
        let mut points = self.points.clone();
        points.extend(extra);
        let entries: Vec<PairDistance> = self
            .table
            .entries
            .iter()
            .map(|((a, b), d)| PairDistance::new(a.clone(), b.clone(), d.clone()))
            .collect();
        Ok(build_space(points, &entries, self.table.fallback)?.with_claimed_s(self.claimed_s.clone()))
    }
}

/// The inequality family being checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    Triangle,
    BTriangle,
    Rectangular,
    BRectangular,
}

impl Axiom {
    pub fn arity(self) -> usize {
        match self {
            Axiom::Triangle | Axiom::BTriangle => 3,
            Axiom::Rectangular | Axiom::BRectangular => 4,
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::Triangle => "triangle",
            Axiom::BTriangle => "b-triangle",
            Axiom::Rectangular => "rectangular",
            Axiom::BRectangular => "b-rectangular",
        })
    }
}

/// A violated instance: `lhs > s * path_sum`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomWitness {
    /// `[x, u, y]` or `[x, u, v, y]`: the path in visiting order.
    pub path: Vec<String>,
    #[serde(with = "crate::rational::serde_str")]
    pub lhs: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub path_sum: Rational,
    /// `s * path_sum`.
    #[serde(with = "crate::rational::serde_str")]
    pub rhs: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub axiom: Axiom,
    #[serde(with = "crate::rational::serde_str")]
    pub parameter_s: Rational,
    pub verdict: bool,
    /// Number of violating tuples, including those beyond the witness cap.
    pub violations: usize,
    pub witnesses: Vec<AxiomWitness>,
    pub points: usize,
}

impl AxiomReport {
    /// Finds a witness by its path labels.
    pub fn witness(&self, path: &[&str]) -> Option<&AxiomWitness> {
        self.witnesses
            .iter()
            .find(|w| w.path.iter().map(String::as_str).eq(path.iter().copied()))
    }
}

/// Witness cap: `None` keeps every violation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanOptions {
    pub witness_cap: Option<usize>,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            witness_cap: Some(DEFAULT_WITNESS_CAP),
        }
    }
}

impl ScanOptions {
    pub fn all_witnesses() -> Self {
        ScanOptions { witness_cap: None }
    }
}

struct Collector {
    cap: Option<usize>,
    violations: usize,
    witnesses: Vec<AxiomWitness>,
}

impl Collector {
    fn new(opts: ScanOptions) -> Self {
        Collector {
            cap: opts.witness_cap,
            violations: 0,
            witnesses: Vec::new(),
        }
    }

    fn record(&mut self, make: impl FnOnce() -> AxiomWitness) {
        self.violations += 1;
        if self.cap.is_none_or(|c| self.witnesses.len() < c) {
            self.witnesses.push(make());
        }
    }
}

fn scan_triples(space: &GeneralizedMetricSpace, s: &Rational, opts: ScanOptions) -> (usize, Vec<AxiomWitness>) {
    let n = space.len();
    let mut c = Collector::new(opts);
    for x in 0..n {
        for y in 0..n {
            if x == y {
                continue;
            }
            let lhs = space.d(x, y);
            for u in 0..n {
                if u == x || u == y {
                    continue;
                }
                let sum = space.d(x, u) + space.d(u, y);
                let rhs = s * &sum;
                if lhs > &rhs {
                    c.record(|| AxiomWitness {
                        path: vec![space.label(x).into(), space.label(u).into(), space.label(y).into()],
                        lhs: lhs.clone(),
                        path_sum: sum,
                        rhs,
                    });
                }
            }
        }
    }
    (c.violations, c.witnesses)
}

fn scan_quadruples(space: &GeneralizedMetricSpace, s: &Rational, opts: ScanOptions) -> (usize, Vec<AxiomWitness>) {
    let n = space.len();
    let mut c = Collector::new(opts);
    for x in 0..n {
        for y in 0..n {
            if x == y {
                continue;
            }
            let lhs = space.d(x, y);
            for u in 0..n {
                if u == x || u == y {
                    continue;
                }
                let head = space.d(x, u);
                for v in 0..n {
                    if v == x || v == y || v == u {
                        continue;
                    }
                    let sum = head + space.d(u, v) + space.d(v, y);
                    let rhs = s * &sum;
                    if lhs > &rhs {
                        c.record(|| AxiomWitness {
                            path: vec![
                                space.label(x).into(),
                                space.label(u).into(),
                                space.label(v).into(),
                                space.label(y).into(),
                            ],
                            lhs: lhs.clone(),
                            path_sum: sum,
                            rhs,
                        });
                    }
                }
            }
        }
    }
    (c.violations, c.witnesses)
}

/// Scans an axiom at coefficient `s` without the `s >= 1` precondition.
/// Used where the tight coefficient of a space may be below 1.
pub fn scan_axiom(space: &GeneralizedMetricSpace, axiom: Axiom, s: &Rational, opts: ScanOptions) -> AxiomReport {
    let (violations, witnesses) = match axiom.arity() {
        3 => scan_triples(space, s, opts),
        _ => scan_quadruples(space, s, opts),
    };
    AxiomReport {
        axiom,
        parameter_s: s.clone(),
        verdict: violations == 0,
        violations,
        witnesses,
        points: space.len(),
    }
}

fn require_s(s: &Rational) -> Result<(), SpaceError> {
    if s < &Rational::one() {
        return Err(SpaceError::InvalidParameter(format_rational(s)));
    }
    Ok(())
}

/// `d(x,y) <= d(x,u) + d(u,y)` over all `x != y`, `u` outside `{x, y}`.
pub fn check_triangle(space: &GeneralizedMetricSpace, opts: ScanOptions) -> AxiomReport {
    scan_axiom(space, Axiom::Triangle, &Rational::one(), opts)
}

pub fn check_b_triangle(
    space: &GeneralizedMetricSpace,
    s: &Rational,
    opts: ScanOptions,
) -> Result<AxiomReport, SpaceError> {
    require_s(s)?;
    Ok(scan_axiom(space, Axiom::BTriangle, s, opts))
}

/// Four distinct points `x, u, v, y`; vacuous below four points.
pub fn check_rectangular(space: &GeneralizedMetricSpace, opts: ScanOptions) -> AxiomReport {
    scan_axiom(space, Axiom::Rectangular, &Rational::one(), opts)
}

pub fn check_b_rectangular(
    space: &GeneralizedMetricSpace,
    s: &Rational,
    opts: ScanOptions,
) -> Result<AxiomReport, SpaceError> {
    require_s(s)?;
    Ok(scan_axiom(space, Axiom::BRectangular, s, opts))
}

pub fn check_axiom(
    space: &GeneralizedMetricSpace,
    axiom: Axiom,
    s: &Rational,
    opts: ScanOptions,
) -> Result<AxiomReport, SpaceError> {
    match axiom {
        Axiom::Triangle => Ok(check_triangle(space, opts)),
        Axiom::Rectangular => Ok(check_rectangular(space, opts)),
        Axiom::BTriangle => check_b_triangle(space, s, opts),
        Axiom::BRectangular => check_b_rectangular(space, s, opts),
    }
}

/// Tight b-rectangular coefficient of a finite space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinimalCoefficient {
    #[serde(with = "crate::rational::serde_str")]
    pub s: Rational,
    /// First maximizing quadruple `[x, u, v, y]` in label order.
    pub argmax: Vec<String>,
    /// Number of ordered quadruples attaining the maximum. Each geometric
    /// maximizer is counted at least twice (the path and its reverse).
    pub argmax_count: usize,
}

/// Maximum of `d(x,y) / (d(x,u) + d(u,v) + d(v,y))` over all quadruples of
/// distinct points.
pub fn minimal_b_rect_s(space: &GeneralizedMetricSpace) -> Result<MinimalCoefficient, SpaceError> {
    let n = space.len();
    if n < 4 {
        return Err(SpaceError::TooFewPoints(n));
    }
    let mut best: Option<(Rational, [usize; 4])> = None;
    let mut count = 0;
    for x in 0..n {
        for y in 0..n {
            if x == y {
                continue;
            }
            let lhs = space.d(x, y);
            for u in 0..n {
                if u == x || u == y {
                    continue;
                }
                for v in 0..n {
                    if v == x || v == y || v == u {
                        continue;
                    }
                    let sum = space.d(x, u) + space.d(u, v) + space.d(v, y);
                    if sum.is_zero() {
                        if lhs.is_zero() {
                            continue;
                        }
                        return Err(SpaceError::NoFiniteCoefficient(
                            [x, u, v, y].iter().map(|&i| space.label(i).to_owned()).collect(),
                        ));
                    }
                    let ratio = lhs / &sum;
                    match &best {
                        Some((b, _)) if &ratio < b => {}
                        Some((b, _)) if &ratio == b => count += 1,
                        _ => {
                            best = Some((ratio, [x, u, v, y]));
                            count = 1;
                        }
                    }
                }
            }
        }
    }
    let (s, q) = best.expect("at least one quadruple exists with four points");
    Ok(MinimalCoefficient {
        s,
        argmax: q.iter().map(|&i| space.label(i).to_owned()).collect(),
        argmax_count: count,
    })
}

/// Grid `lo, lo + step, ...` capped by `hi`, with `hi` always included.
pub fn sample_interval(lo: &Rational, hi: &Rational, step: &Rational) -> Result<Vec<Point>, SpaceError> {
    if lo > hi || !step.is_positive() {
        return Err(SpaceError::InvalidRange {
            lo: format_rational(lo),
            hi: format_rational(hi),
            step: format_rational(step),
        });
    }
    let mut out = Vec::new();
    let mut x = lo.clone();
    while &x < hi {
        out.push(Point::at(x.clone()));
        x += step;
    }
    out.push(Point::at(hi.clone()));
    Ok(out)
}

/// Construction used by [`generate_random_space`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RandomProfile {
    /// Independent symmetric distances in `{1/8, ..., 5}`.
    Generic,
    /// Generic draw closed under shortest paths, so the triangle inequality holds.
    Metric,
}

/// Deterministic random space with labels `p00, p01, ...` and integer values.
#[allow(clippy::needless_range_loop)]
pub fn generate_random_space(n: usize, seed: u64, profile: RandomProfile) -> GeneralizedMetricSpace {
    let n = n.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<Point> = (0..n)
        .map(|i| Point::new(format!("p{i:02}"), Rational::from_integer(i.into())))
        .collect();
    let mut d = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let v = rat(rng.gen_range(1..=40), 8);
            d[i][j] = v.clone();
            d[j][i] = v;
        }
    }
    if profile == RandomProfile::Metric {
        // shortest-path closure
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let via = &d[i][k] + &d[k][j];
                    if via < d[i][j] {
                        d[i][j] = via;
                    }
                }
            }
        }
    }
    let mut entries = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            entries.push(PairDistance::new(
                points[i].label.clone(),
                points[j].label.clone(),
                d[i][j].clone(),
            ));
        }
    }
    build_space(points, &entries, Fallback::None).expect("generated tables are complete and positive")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn unit_space(n: usize) -> GeneralizedMetricSpace {
        let points: Vec<Point> = (0..n).map(|i| Point::new(format!("q{i}"), int(i as i64))).collect();
        let mut entries = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                entries.push(PairDistance::new(format!("q{i}"), format!("q{j}"), int(1)));
            }
        }
        build_space(points, &entries, Fallback::None).unwrap()
    }

    #[test]
    fn single_point_space() {
        let space = build_space(vec![Point::new("p", int(0))], &[], Fallback::None).unwrap();
        assert_eq!(space.distance("p", "p").unwrap(), &int(0));
    }

    #[test]
    fn build_errors() {
        let pts = || vec![Point::new("a", int(0)), Point::new("b", int(1))];
        assert!(matches!(
            build_space(pts(), &[PairDistance::new("a", "b", int(-1))], Fallback::None),
            Err(SpaceError::NegativeDistance { .. })
        ));
        assert!(matches!(
            build_space(
                pts(),
                &[PairDistance::new("a", "b", int(1)), PairDistance::new("b", "a", int(2))],
                Fallback::None
            ),
            Err(SpaceError::AsymmetricEntry { .. })
        ));
        assert!(matches!(
            build_space(pts(), &[], Fallback::None),
            Err(SpaceError::UnresolvablePair { .. })
        ));
        assert!(matches!(
            build_space(
                vec![Point::new("a", int(0)), Point::new("a", int(1))],
                &[],
                Fallback::None
            ),
            Err(SpaceError::DuplicateLabel(_))
        ));
        assert!(matches!(
            build_space(
                pts(),
                &[PairDistance::new("a", "a", int(1))],
                Fallback::SquaredDifference
            ),
            Err(SpaceError::NonzeroSelfDistance { .. })
        ));
        assert!(matches!(
            build_space(
                vec![Point::new("a", int(1)), Point::new("b", int(1))],
                &[],
                Fallback::SquaredDifference
            ),
            Err(SpaceError::ZeroDistance { .. })
        ));
        // the same value given in both orders is fine
        assert!(build_space(
            pts(),
            &[PairDistance::new("a", "b", int(1)), PairDistance::new("b", "a", int(1))],
            Fallback::None
        )
        .is_ok());
    }

    #[test]
    fn fallback_is_squared_difference() {
        let space = build_space(
            vec![Point::at(rat(3, 4)), Point::at(rat(1, 2))],
            &[],
            Fallback::SquaredDifference,
        )
        .unwrap();
        assert_eq!(space.distance("3/4", "1/2").unwrap(), &rat(1, 16));
        assert_eq!(space.distance("1/2", "3/4").unwrap(), &rat(1, 16));
        assert!(matches!(space.distance("1/2", "9"), Err(SpaceError::UnknownPoint(_))));
    }

    #[test]
    fn vacuous_checks_on_small_spaces() {
        let two = unit_space(2);
        assert!(check_triangle(&two, ScanOptions::default()).verdict);
        let three = unit_space(3);
        assert!(check_rectangular(&three, ScanOptions::default()).verdict);
        assert!(matches!(minimal_b_rect_s(&three), Err(SpaceError::TooFewPoints(3))));
    }

    #[test]
    fn equilateral_space_coefficient() {
        let space = unit_space(5);
        assert!(check_rectangular(&space, ScanOptions::default()).verdict);
        let m = minimal_b_rect_s(&space).unwrap();
        assert_eq!(m.s, rat(1, 3));
    }

    #[test]
    fn b_checks_reject_small_s() {
        let space = unit_space(4);
        assert!(matches!(
            check_b_triangle(&space, &rat(1, 2), ScanOptions::default()),
            Err(SpaceError::InvalidParameter(_))
        ));
        assert!(matches!(
            check_b_rectangular(&space, &rat(99, 100), ScanOptions::default()),
            Err(SpaceError::InvalidParameter(_))
        ));
    }

    #[test]
    fn witness_cap_and_count() {
        // one long edge; every route around it is short
        let pts: Vec<Point> = (0..6).map(|i| Point::new(format!("q{i}"), int(i))).collect();
        let mut entries = Vec::new();
        for i in 0..6 {
            for j in i + 1..6 {
                let d = if (i, j) == (0, 1) { int(100) } else { int(1) };
                entries.push(PairDistance::new(format!("q{i}"), format!("q{j}"), d));
            }
        }
        let space = build_space(pts, &entries, Fallback::None).unwrap();
        let capped = check_rectangular(&space, ScanOptions { witness_cap: Some(3) });
        let all = check_rectangular(&space, ScanOptions::all_witnesses());
        assert!(!capped.verdict);
        assert_eq!(capped.witnesses.len(), 3);
        // x, y in {q0, q1} both orders; u, v any ordered pair of the other 4
        assert_eq!(all.violations, 2 * 4 * 3);
        assert_eq!(capped.violations, all.violations);
        assert_eq!(&all.witnesses[..3], &capped.witnesses[..]);
    }

    #[test]
    fn sample_interval_grid() {
        let g = sample_interval(&rat(1, 2), &int(1), &rat(1, 4)).unwrap();
        let vals: Vec<_> = g.iter().map(|p| p.value.clone()).collect();
        assert_eq!(vals, vec![rat(1, 2), rat(3, 4), int(1)]);
        assert_eq!(sample_interval(&int(1), &int(1), &rat(7, 3)).unwrap().len(), 1);
        assert_eq!(sample_interval(&rat(1, 2), &int(1), &rat(1, 32)).unwrap().len(), 17);
        // a step that does not divide the range still ends at hi
        let g = sample_interval(&int(0), &int(1), &rat(2, 5)).unwrap();
        assert_eq!(g.last().unwrap().value, int(1));
        assert_eq!(g.len(), 4);
        assert!(sample_interval(&int(2), &int(1), &rat(1, 4)).is_err());
        assert!(sample_interval(&int(0), &int(1), &int(0)).is_err());
    }

    #[test]
    fn random_spaces_are_deterministic() {
        let a = generate_random_space(4, 7, RandomProfile::Generic);
        let b = generate_random_space(4, 7, RandomProfile::Generic);
        assert_eq!(a.dist, b.dist);
        assert_eq!(generate_random_space(1, 3, RandomProfile::Generic).len(), 1);
        let m = generate_random_space(7, 11, RandomProfile::Metric);
        assert!(check_triangle(&m, ScanOptions::default()).verdict);
    }
}
