//! Grid verifiers for the function classes and the monotone-tripled property.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::{FunctionError, FunctionSpec};
use crate::numeric::Value;
use crate::rational::{int, label_for, serde_vec, ten_pow_neg, Rational};
use crate::spaces::ScanOptions;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Property {
    Altering,
    PhiU,
    Cclass,
    Lsc,
    Usc,
    MonotoneTripled,
}

/// How continuity of the function under test is known.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Continuity {
    /// Built-in catalog formula, continuous by construction.
    ProvenByCatalog,
    /// User-supplied pieces; only breakpoints and sample points were examined.
    Sampled,
    NotApplicable,
}

#[derive(Debug, Clone, Serialize)]
pub struct PropertyWitness {
    #[serde(with = "serde_vec")]
    pub args: Vec<Rational>,
    pub values: Vec<Value>,
    pub reason: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct PropertyReport {
    pub property: Property,
    pub function: String,
    pub verdict: bool,
    pub grid: String,
    pub samples: usize,
    pub violations: usize,
    pub witnesses: Vec<PropertyWitness>,
    pub continuity: Continuity,
    pub approximate: bool,
    /// C-class only: sample points where `|F(s, t) - s| <= tolerance`.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub equality_locus: Vec<[String; 2]>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl PropertyReport {
    fn new(property: Property, f: &FunctionSpec, grid: String, samples: usize) -> Self {
        PropertyReport {
            property,
            function: f.to_string(),
            verdict: true,
            grid,
            samples,
            violations: 0,
            witnesses: Vec::new(),
            continuity: continuity_of(f),
            approximate: false,
            equality_locus: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn violate(&mut self, opts: ScanOptions, args: Vec<Rational>, values: Vec<Value>, reason: impl Into<String>) {
        self.verdict = false;
        self.violations += 1;
        if opts.witness_cap.is_none_or(|cap| self.witnesses.len() < cap) {
            self.witnesses.push(PropertyWitness {
                args,
                values,
                reason: reason.into(),
            });
        }
    }

    /// Equality-locus points as rationals.
    pub fn locus(&self) -> Vec<(Rational, Rational)> {
        self.equality_locus
            .iter()
            .map(|[s, t]| {
                (
                    crate::rational::parse_rational(s).expect("locus labels are rationals"),
                    crate::rational::parse_rational(t).expect("locus labels are rationals"),
                )
            })
            .collect()
    }
}

fn continuity_of(f: &FunctionSpec) -> Continuity {
    match f {
        FunctionSpec::Piecewise(_) => Continuity::Sampled,
        FunctionSpec::CClass(c) => match c.inner.as_deref() {
            Some(inner) => continuity_of(inner),
            None => Continuity::ProvenByCatalog,
        },
        FunctionSpec::SecondArgument => Continuity::ProvenByCatalog,
    }
}

fn breakpoint_notes(f: &FunctionSpec, report: &mut PropertyReport) {
    if let FunctionSpec::Piecewise(p) = f {
        for b in p.jumps() {
            report.notes.push(format!(
                "pieces disagree at breakpoint {}; not continuous there",
                label_for(&b)
            ));
        }
    }
}

/// `lo, lo + step, ..., hi` (hi always included).
pub fn grid_1d(lo: &Rational, hi: &Rational, step: &Rational) -> Vec<Rational> {
    assert!(step.is_positive(), "grid step must be positive");
    let mut out = Vec::new();
    let mut x = lo.clone();
    while &x < hi {
        out.push(x.clone());
        x += step;
    }
    out.push(hi.clone());
    out
}

/// All pairs of `grid_1d(0, max, step)`, row-major in `s`.
pub fn grid_2d(max: &Rational, step: &Rational) -> Vec<(Rational, Rational)> {
    let axis = grid_1d(&Rational::zero(), max, step);
    axis.iter()
        .flat_map(|s| axis.iter().map(move |t| (s.clone(), t.clone())))
        .collect()
}

fn describe_1d(grid: &[Rational]) -> String {
    match (grid.first(), grid.last()) {
        (Some(lo), Some(hi)) => format!("{} points in [{}, {}]", grid.len(), label_for(lo), label_for(hi)),
        _ => "empty grid".to_owned(),
    }
}

fn describe_2d(grid: &[(Rational, Rational)]) -> String {
    let s_max = grid.iter().map(|(s, _)| s).max();
    let t_max = grid.iter().map(|(_, t)| t).max();
    match (s_max, t_max) {
        (Some(s), Some(t)) => format!("{} pairs with s <= {}, t <= {}", grid.len(), label_for(s), label_for(t)),
        _ => "empty grid".to_owned(),
    }
}

fn check_grid(grid: &[Rational], needs_zero: bool) -> Result<(), FunctionError> {
    let sorted = grid.windows(2).all(|w| w[0] <= w[1]);
    let has_zero = grid.iter().any(Zero::is_zero);
    if grid.is_empty() || !sorted || (needs_zero && !has_zero) || grid.iter().any(Signed::is_negative) {
        return Err(FunctionError::InvalidGrid);
    }
    Ok(())
}

/// Class Φ on a grid: `psi(0) = 0`, `psi(t) > 0` for `t > 0`, nondecreasing
/// between consecutive grid points. Continuity is reported, not decided.
pub fn verify_altering(
    psi: &FunctionSpec,
    grid: &[Rational],
    opts: ScanOptions,
) -> Result<PropertyReport, FunctionError> {
    check_grid(grid, true)?;
    let mut report = PropertyReport::new(Property::Altering, psi, describe_1d(grid), grid.len());
    let values = grid.iter().map(|t| psi.eval1(t)).collect::<Result<Vec<_>, _>>()?;
    for (t, v) in grid.iter().zip(&values) {
        if t.is_zero() && !v.is_zero() {
            report.violate(opts, vec![t.clone()], vec![v.clone()], "psi(0) != 0");
        } else if t.is_positive() && v.cmp_zero() != Ordering::Greater {
            report.violate(opts, vec![t.clone()], vec![v.clone()], "psi(t) <= 0 for t > 0");
        }
    }
    for i in 1..grid.len() {
        if values[i].cmp_value(&values[i - 1]) == Ordering::Less {
            report.violate(
                opts,
                vec![grid[i - 1].clone(), grid[i].clone()],
                vec![values[i - 1].clone(), values[i].clone()],
                "decreases between consecutive grid points",
            );
        }
    }
    breakpoint_notes(psi, &mut report);
    Ok(report)
}

/// Class Φ_u on a grid: `phi(0) >= 0` and `phi(t) > 0` for `t > 0`.
pub fn verify_phi_u(phi: &FunctionSpec, grid: &[Rational], opts: ScanOptions) -> Result<PropertyReport, FunctionError> {
    check_grid(grid, true)?;
    let mut report = PropertyReport::new(Property::PhiU, phi, describe_1d(grid), grid.len());
    for t in grid {
        let v = phi.eval1(t)?;
        if t.is_zero() && v.cmp_zero() == Ordering::Less {
            report.violate(opts, vec![t.clone()], vec![v], "phi(0) < 0");
        } else if t.is_positive() && v.cmp_zero() != Ordering::Greater {
            report.violate(opts, vec![t.clone()], vec![v], "phi(t) <= 0 for t > 0");
        }
    }
    breakpoint_notes(phi, &mut report);
    Ok(report)
}

/// Tolerance used for C-class checks: `10^-20` for transcendental specs,
/// `10^-30` otherwise.
pub fn default_cclass_tolerance(f: &FunctionSpec) -> Rational {
    if f.is_transcendental() {
        ten_pow_neg(20)
    } else {
        ten_pow_neg(30)
    }
}

/// C-class axioms on a grid of `(s, t)` pairs:
/// (1) `F(s, t) <= s + tol`; (2) no sample with `s, t > floor` and `|F(s, t) - s| <= tol`.
pub fn verify_cclass(
    f: &FunctionSpec,
    grid: &[(Rational, Rational)],
    tol: &Rational,
    floor: &Rational,
    opts: ScanOptions,
) -> Result<PropertyReport, FunctionError> {
    if grid.is_empty() {
        return Err(FunctionError::InvalidGrid);
    }
    f.validate()?;
    let mut report = PropertyReport::new(Property::Cclass, f, describe_2d(grid), grid.len());
    report.approximate = f.is_transcendental();
    for (s, t) in grid {
        let v = f.eval2(s, t)?;
        let sv = Value::Exact(s.clone());
        if !v.le_within(&sv, tol) {
            report.violate(opts, vec![s.clone(), t.clone()], vec![v.clone()], "F(s, t) > s");
        }
        if v.approx_eq(&sv, tol) {
            report.equality_locus.push([label_for(s), label_for(t)]);
            if s > floor && t > floor {
                report.violate(opts, vec![s.clone(), t.clone()], vec![v], "F(s, t) = s with s, t > 0");
            }
        }
    }
    Ok(report)
}

/// Radii and tolerance for the sampled semicontinuity checks.
#[derive(Debug, Clone)]
pub struct SemicontinuityOptions {
    pub radii: Vec<Rational>,
    pub tol: Rational,
}

impl Default for SemicontinuityOptions {
    /// Radii `2^-10, 2^-20, 2^-30, 2^-40`, tolerance `10^-6`.
    fn default() -> Self {
        let two = int(2);
        let radii = (1..=4).map(|k| num_traits::pow(two.clone(), 10 * k).recip()).collect();
        SemicontinuityOptions {
            radii,
            tol: ten_pow_neg(6),
        }
    }
}

fn verify_semicontinuity(
    f: &FunctionSpec,
    grid: &[Rational],
    sc: &SemicontinuityOptions,
    opts: ScanOptions,
    lower: bool,
) -> Result<PropertyReport, FunctionError> {
    let property = if lower { Property::Lsc } else { Property::Usc };
    let mut report = PropertyReport::new(property, f, describe_1d(grid), grid.len());
    report.approximate = true;
    report.continuity = Continuity::Sampled;
    let radii = sc.radii.iter().map(label_for).collect::<Vec<_>>().join(", ");
    report
        .notes
        .push(format!("neighbours at radii {radii}; tolerance {}", label_for(&sc.tol)));
    for x in grid {
        let fx = f.eval1(x)?;
        let mut extremes = Vec::new();
        for r in &sc.radii {
            let neighbours: Vec<Value> = [x - r, x + r].iter().filter_map(|y| f.eval1(y).ok()).collect();
            let pick = neighbours.into_iter().reduce(|a, b| {
                let keep_a = if lower {
                    a.cmp_value(&b).is_le()
                } else {
                    a.cmp_value(&b).is_ge()
                };
                if keep_a {
                    a
                } else {
                    b
                }
            });
            if let Some(v) = pick {
                extremes.push(v);
            }
        }
        let Some(limit) = extremes.last() else { continue };
        let ok = if lower {
            fx.le_within(limit, &sc.tol)
        } else {
            limit.le_within(&fx, &sc.tol)
        };
        if !ok {
            let mut values = vec![fx];
            values.extend(extremes);
            let reason = if lower {
                "f(x) exceeds the neighbourhood minimum"
            } else {
                "f(x) is below the neighbourhood maximum"
            };
            report.violate(opts, vec![x.clone()], values, reason);
        }
    }
    Ok(report)
}

/// Sampled lower semicontinuity: `f(x) <= min f(x +- r) + tol` at the smallest radius.
pub fn verify_lsc(
    f: &FunctionSpec,
    grid: &[Rational],
    sc: &SemicontinuityOptions,
    opts: ScanOptions,
) -> Result<PropertyReport, FunctionError> {
    verify_semicontinuity(f, grid, sc, opts, true)
}

/// Sampled upper semicontinuity: `f(x) >= max f(x +- r) - tol` at the smallest radius.
pub fn verify_usc(
    f: &FunctionSpec,
    grid: &[Rational],
    sc: &SemicontinuityOptions,
    opts: ScanOptions,
) -> Result<PropertyReport, FunctionError> {
    verify_semicontinuity(f, grid, sc, opts, false)
}

/// `(psi, phi, F)` with `psi` altering, `phi` in Φ_u and `F` in the C-class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripledSpec {
    pub psi: FunctionSpec,
    pub phi: FunctionSpec,
    pub f: FunctionSpec,
}

impl TripledSpec {
    /// `G(x) = F(psi(x), phi(x))`.
    pub fn compose(&self, x: &Rational) -> Result<Value, FunctionError> {
        let p = self.psi.eval1(x)?;
        let q = self.phi.eval1(x)?;
        self.f.eval(&[p, q])
    }

    /// Runs each component's own verifier; C-class on all pairs of `grid`.
    pub fn verify_components(
        &self,
        grid: &[Rational],
        opts: ScanOptions,
    ) -> Result<Vec<PropertyReport>, FunctionError> {
        let pairs: Vec<_> = grid
            .iter()
            .flat_map(|s| grid.iter().map(move |t| (s.clone(), t.clone())))
            .collect();
        let tol = default_cclass_tolerance(&self.f);
        Ok(vec![
            verify_altering(&self.psi, grid, opts)?,
            verify_phi_u(&self.phi, grid, opts)?,
            verify_cclass(&self.f, &pairs, &tol, &Rational::zero(), opts)?,
        ])
    }
}

/// Brute force over every grid pair `x <= y`: `G(x) <= G(y) + tol`.
pub fn check_monotone_tripled(
    t: &TripledSpec,
    grid: &[Rational],
    tol: &Rational,
    opts: ScanOptions,
) -> Result<PropertyReport, FunctionError> {
    check_grid(grid, false)?;
    let mut report = PropertyReport::new(Property::MonotoneTripled, &t.f, describe_1d(grid), 0);
    report.function = format!("F = {}, psi = {}, phi = {}", t.f, t.psi, t.phi);
    report.continuity = Continuity::NotApplicable;
    let g = grid.iter().map(|x| t.compose(x)).collect::<Result<Vec<_>, _>>()?;
    for i in 0..grid.len() {
        for j in i..grid.len() {
            report.samples += 1;
            if !g[i].le_within(&g[j], tol) {
                report.violate(
                    opts,
                    vec![grid[i].clone(), grid[j].clone()],
                    vec![g[i].clone(), g[j].clone()],
                    "x <= y but F(psi(x), phi(x)) > F(psi(y), phi(y))",
                );
            }
        }
    }
    Ok(report)
}

impl PropertyReport {
    /// Witness whose arguments are exactly `args`.
    pub fn witness(&self, args: &[Rational]) -> Option<&PropertyWitness> {
        self.witnesses.iter().find(|w| w.args == args)
    }
}
