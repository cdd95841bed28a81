//! Command dispatch shared by the `fprect` binary and the examples.

mod render;
mod replicate;

use std::path::PathBuf;
use std::str::FromStr;

use num_traits::Zero;
use serde::Serialize;

pub use render::{render, to_canonical_json, Format};
pub use replicate::{replicate, CaseId, ReplicationCheck, ReplicationReport};

use crate::config::{load_function, load_instance, load_space, load_tripled, ConfigError};
use crate::contraction::{check_all, check_mdk_phi_side_condition, CheckReport, PairVerdict, SideCondition};
use crate::functions::{
    check_monotone_tripled, default_cclass_tolerance, grid_1d, grid_2d, verify_altering, verify_cclass, verify_lsc,
    verify_phi_u, verify_usc, FunctionError, FunctionSpec, Property, PropertyReport, SemicontinuityOptions,
};
use crate::rational::{format_rational, int, rat, ten_pow_neg, Rational};
use crate::solver::{
    check_vanishing, default_max_iter, default_tol, picard_iterate, uniqueness_scan, verify_decreasing,
    verify_fixed_point, DecreasingCheck, FixedPointCheck, FixedPointResult, Status, UniquenessReport, VanishingReport,
};
use crate::spaces::{
    check_axiom, minimal_b_rect_s, scan_axiom, Axiom, AxiomReport, MinimalCoefficient, ScanOptions, SpaceError,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_MAX_ITER: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Config(Box<ConfigError>),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Function(#[from] FunctionError),
    #[error(transparent)]
    Contraction(#[from] crate::contraction::ContractionError),
    #[error("{0}")]
    Usage(String),
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Config(Box::new(e))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    VerifySpace {
        space: PathBuf,
        axiom: Option<Axiom>,
        s: Option<Rational>,
    },
    MinimalS {
        space: PathBuf,
    },
    CheckFunctions {
        function: Option<PathBuf>,
        tripled: Option<PathBuf>,
        property: Option<Property>,
        max: Option<Rational>,
    },
    CheckContraction {
        instance: PathBuf,
    },
    Solve {
        instance: PathBuf,
        from: Option<String>,
        max_iter: Option<usize>,
    },
    Replicate {
        case: Option<CaseId>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    /// Interval sampling step (spaces) or grid step (function checks).
    pub step: Option<Rational>,
    pub tol: Option<Rational>,
    pub format: Format,
    pub scan: ScanOptions,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            step: None,
            tol: None,
            format: Format::Text,
            scan: ScanOptions::default(),
        }
    }
}

pub fn parse_axiom(s: &str) -> Result<Axiom, CliError> {
    match s {
        "triangle" => Ok(Axiom::Triangle),
        "b-triangle" => Ok(Axiom::BTriangle),
        "rectangular" => Ok(Axiom::Rectangular),
        "b-rectangular" => Ok(Axiom::BRectangular),
        other => Err(CliError::Usage(format!(
            "unknown axiom {other:?}; use triangle, b-triangle, rectangular or b-rectangular"
        ))),
    }
}

pub fn parse_property(s: &str) -> Result<Property, CliError> {
    match s {
        "altering" => Ok(Property::Altering),
        "phi-u" => Ok(Property::PhiU),
        "cclass" => Ok(Property::Cclass),
        "lsc" => Ok(Property::Lsc),
        "usc" => Ok(Property::Usc),
        "monotone-tripled" => Ok(Property::MonotoneTripled),
        other => Err(CliError::Usage(format!(
            "unknown property {other:?}; use altering, phi-u, cclass, lsc, usc or monotone-tripled"
        ))),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SpaceCheck {
    pub points: usize,
    #[serde(with = "crate::rational::serde_opt")]
    pub claimed_s: Option<Rational>,
    pub reports: Vec<AxiomReport>,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct MinimalSReport {
    pub points: usize,
    pub coefficient: MinimalCoefficient,
    /// The b-rectangular check at the returned coefficient.
    pub check: AxiomReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct FunctionsReport {
    pub reports: Vec<PropertyReport>,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ContractionView {
    pub variant: String,
    pub s: String,
    pub pairs_checked: usize,
    pub global_holds: bool,
    pub failures: usize,
    pub exact: bool,
    pub symmetric: Option<bool>,
    pub worst_pair: Option<PairVerdict>,
    /// One entry per unordered pair for symmetric variants, per ordered pair otherwise.
    pub verdicts: Vec<PairVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub side_condition: Option<SideCondition>,
    pub notes: Vec<String>,
    pub passed: bool,
}

impl ContractionView {
    pub fn new(report: &CheckReport, side_condition: Option<SideCondition>) -> Self {
        let mut notes = vec![
            "right side evaluated as F(psi(M), control(M)); with F(s, t) = s - t this is psi(M) - control(M)"
                .to_owned(),
        ];
        if report.verdicts.iter().any(|v| v.degenerate) {
            notes.push("pairs with M = 0 and LHS = 0 are counted as holding".to_owned());
        }
        if report.symmetric == Some(false) {
            notes.push("symmetry self-check failed: (x, y) and (y, x) disagree".to_owned());
        }
        let passed = report.global_holds && side_condition.as_ref().is_none_or(|c| c.holds);
        ContractionView {
            variant: report.variant.clone(),
            s: report.s.clone(),
            pairs_checked: report.verdicts.len(),
            global_holds: report.global_holds,
            failures: report.failures,
            exact: report.exact,
            symmetric: report.symmetric,
            worst_pair: report.worst_pair.clone(),
            verdicts: report.presented().into_iter().cloned().collect(),
            side_condition,
            notes,
            passed,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveRun {
    pub start: String,
    pub result: FixedPointResult,
    pub decreasing: DecreasingCheck,
    pub vanishing: VanishingReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveReport {
    pub contraction_holds: bool,
    pub max_iter: usize,
    pub tol: String,
    pub runs: Vec<SolveRun>,
    pub uniqueness: UniquenessReport,
    pub fixed_points: Vec<FixedPointCheck>,
}

/// One report per invocation, so variant sizes do not matter.
#[allow(clippy::large_enum_variant)]
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "snake_case", tag = "command")]
pub enum Report {
    VerifySpace(SpaceCheck),
    MinimalS(MinimalSReport),
    CheckFunctions(FunctionsReport),
    CheckContraction(ContractionView),
    Solve(SolveReport),
    Replicate {
        cases: Vec<ReplicationReport>,
        passed: bool,
    },
    Error {
        message: String,
    },
}

/// Exit status and report of one invocation.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub exit: i32,
    pub report: Report,
}

/// Dispatches `config.command`. Input problems yield exit status 2 and an
/// `Error` report rather than an `Err`.
pub fn run(config: &RunConfig) -> RunOutcome {
    match dispatch(config) {
        Ok(outcome) => outcome,
        Err(e) => RunOutcome {
            exit: EXIT_INPUT,
            report: Report::Error { message: e.to_string() },
        },
    }
}

fn pass_fail(ok: bool) -> i32 {
    if ok {
        EXIT_OK
    } else {
        EXIT_FAIL
    }
}

fn dispatch(config: &RunConfig) -> Result<RunOutcome, CliError> {
    let step = config.step.as_ref();
    match &config.command {
        Command::VerifySpace { space, axiom, s } => {
            let space = load_space(space, step)?;
            let s = s.clone().or_else(|| space.claimed_s().cloned());
            let axioms = match axiom {
                Some(a) => vec![*a],
                None => vec![
                    Axiom::Triangle,
                    Axiom::BTriangle,
                    Axiom::Rectangular,
                    Axiom::BRectangular,
                ],
            };
            let mut reports = Vec::new();
            for a in axioms {
                let needs_s = matches!(a, Axiom::BTriangle | Axiom::BRectangular);
                let param = match (&s, needs_s) {
                    (_, false) => int(1),
                    (Some(s), true) => s.clone(),
                    (None, true) if axiom.is_some() => {
                        return Err(CliError::Usage(format!(
                            "{a} needs --s or a claimed_s in the space file"
                        )));
                    }
                    (None, true) => continue,
                };
                reports.push(check_axiom(&space, a, &param, config.scan)?);
            }
            let passed = reports.iter().all(|r| r.verdict);
            Ok(RunOutcome {
                exit: pass_fail(passed),
                report: Report::VerifySpace(SpaceCheck {
                    points: space.len(),
                    claimed_s: space.claimed_s().cloned(),
                    reports,
                    passed,
                }),
            })
        }
        Command::MinimalS { space } => {
            let space = load_space(space, step)?;
            let coefficient = minimal_b_rect_s(&space)?;
            let check = scan_axiom(&space, Axiom::BRectangular, &coefficient.s, config.scan);
            Ok(RunOutcome {
                exit: pass_fail(check.verdict),
                report: Report::MinimalS(MinimalSReport {
                    points: space.len(),
                    coefficient,
                    check,
                }),
            })
        }
        Command::CheckFunctions {
            function,
            tripled,
            property,
            max,
        } => {
            let reports = check_functions(config, function.as_ref(), tripled.as_ref(), *property, max.as_ref())?;
            let passed = reports.iter().all(|r| r.verdict);
            Ok(RunOutcome {
                exit: pass_fail(passed),
                report: Report::CheckFunctions(FunctionsReport { reports, passed }),
            })
        }
        Command::CheckContraction { instance } => {
            let mut inst = load_instance(instance, step)?;
            if let Some(t) = &config.tol {
                inst = inst.with_approx_tol(t.clone());
            }
            let report = check_all(&inst)?;
            let side = match inst.f {
                FunctionSpec::SecondArgument => {
                    let grid = grid_1d(&Rational::zero(), &int(10), &rat(1, 8));
                    Some(check_mdk_phi_side_condition(&inst.psi, &inst.control_phi, &grid)?)
                }
                _ => None,
            };
            let view = ContractionView::new(&report, side);
            Ok(RunOutcome {
                exit: pass_fail(view.passed),
                report: Report::CheckContraction(view),
            })
        }
        Command::Solve {
            instance,
            from,
            max_iter,
        } => {
            let inst = load_instance(instance, step)?;
            let tol = config.tol.clone().unwrap_or_else(|| default_tol(&inst));
            let max_iter = max_iter.unwrap_or_else(|| default_max_iter(&inst));
            let starts: Vec<String> = match from {
                Some(x) => vec![x.clone()],
                None => inst.space.points().iter().map(|p| p.label.clone()).collect(),
            };
            let mut runs = Vec::new();
            for start in starts {
                let result = picard_iterate(&inst, &start, max_iter, &tol)?;
                runs.push(SolveRun {
                    decreasing: verify_decreasing(&result.trace),
                    vanishing: check_vanishing(&result.trace, &tol),
                    start,
                    result,
                });
            }
            let uniqueness = uniqueness_scan(&inst, &tol);
            let mut fixed_points = Vec::new();
            for z in &uniqueness.fixed_points {
                fixed_points.push(verify_fixed_point(&inst, z, &tol)?);
            }
            let exit = if runs.iter().any(|r| r.result.status == Status::MaxIter) {
                EXIT_MAX_ITER
            } else if runs.iter().any(|r| r.result.status == Status::Periodic) {
                EXIT_FAIL
            } else {
                EXIT_OK
            };
            Ok(RunOutcome {
                exit,
                report: Report::Solve(SolveReport {
                    contraction_holds: check_all(&inst)?.global_holds,
                    max_iter,
                    tol: format_rational(&tol),
                    runs,
                    uniqueness,
                    fixed_points,
                }),
            })
        }
        Command::Replicate { case } => {
            let cases: Vec<CaseId> = match case {
                Some(c) => vec![*c],
                None => CaseId::ALL.to_vec(),
            };
            let reports: Vec<ReplicationReport> = cases.into_iter().map(replicate).collect();
            let passed = reports.iter().all(|r| r.passed);
            Ok(RunOutcome {
                exit: pass_fail(passed),
                report: Report::Replicate { cases: reports, passed },
            })
        }
    }
}

fn check_functions(
    config: &RunConfig,
    function: Option<&PathBuf>,
    tripled: Option<&PathBuf>,
    property: Option<Property>,
    max: Option<&Rational>,
) -> Result<Vec<PropertyReport>, CliError> {
    let max = max.cloned().unwrap_or_else(|| int(10));
    let zero = Rational::zero();
    let opts = config.scan;
    if let Some(path) = tripled {
        let t = load_tripled(path)?;
        let grid = grid_1d(&zero, &max, config.step.as_ref().unwrap_or(&rat(1, 8)));
        let exact = !(t.psi.is_transcendental() || t.phi.is_transcendental() || t.f.is_transcendental());
        let tol = config
            .tol
            .clone()
            .unwrap_or_else(|| if exact { zero.clone() } else { ten_pow_neg(20) });
        return Ok(vec![check_monotone_tripled(&t, &grid, &tol, opts)?]);
    }
    let path = function.ok_or_else(|| CliError::Usage("check-functions needs --function or --tripled".to_owned()))?;
    let f = load_function(path)?;
    let property = property.unwrap_or(if f.arity() == 2 {
        Property::Cclass
    } else {
        Property::Altering
    });
    let step_1d = config.step.clone().unwrap_or_else(|| rat(1, 8));
    let grid = || grid_1d(&zero, &max, &step_1d);
    let report = match property {
        Property::Altering => verify_altering(&f, &grid(), opts)?,
        Property::PhiU => verify_phi_u(&f, &grid(), opts)?,
        Property::Cclass => {
            let step = config.step.clone().unwrap_or_else(|| rat(1, 4));
            let tol = config.tol.clone().unwrap_or_else(|| default_cclass_tolerance(&f));
            verify_cclass(&f, &grid_2d(&max, &step), &tol, &zero, opts)?
        }
        Property::Lsc | Property::Usc => {
            let mut sc = SemicontinuityOptions::default();
            if let Some(t) = &config.tol {
                sc.tol = t.clone();
            }
            if property == Property::Lsc {
                verify_lsc(&f, &grid(), &sc, opts)?
            } else {
                verify_usc(&f, &grid(), &sc, opts)?
            }
        }
        Property::MonotoneTripled => {
            return Err(CliError::Usage("monotone-tripled needs --tripled <file>".to_owned()));
        }
    };
    Ok(vec![report])
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            other => Err(CliError::Usage(format!("unknown format {other:?}; use text or json"))),
        }
    }
}
