//! Picard iteration with the diagnostics used by the existence proof:
//! augmented step distances, vanishing tails, and brute-force uniqueness.

use std::collections::HashMap;

use num_traits::Zero;
use serde::Serialize;

use crate::contraction::{ContractionError, ContractionInstance};
use crate::numeric::Value;
use crate::rational::{serde_vec, ten_pow_neg, Rational};

/// Extra `T` applications recorded after the orbit terminates, so that the
/// step and skip distances have a visible tail.
const TAIL_STEPS: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    FixedPoint,
    Periodic,
    MaxIter,
}

/// Orbit `x0, Tx0, ...` with `d(x_n, x_{n+1})`, `d(x_n, x_{n+2})`, `phi(x_n)` and
/// `d(x_n, x_{n+1}) + phi(x_n) + phi(x_{n+1})`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IterationTrace {
    pub orbit: Vec<String>,
    #[serde(with = "serde_vec")]
    pub step_dist: Vec<Rational>,
    #[serde(with = "serde_vec")]
    pub skip_dist: Vec<Rational>,
    pub weights: Vec<Value>,
    pub augmented: Vec<Value>,
}

impl IterationTrace {
    fn from_orbit(inst: &ContractionInstance, orbit: &[usize]) -> Self {
        let space = &inst.space;
        let step_dist = orbit.windows(2).map(|w| space.d(w[0], w[1]).clone()).collect();
        let skip_dist = orbit.windows(3).map(|w| space.d(w[0], w[2]).clone()).collect();
        let weights = orbit.iter().map(|&i| inst.weight(i).clone()).collect();
        let augmented = orbit.windows(2).map(|w| inst.augmented(w[0], w[1])).collect();
        IterationTrace {
            orbit: orbit.iter().map(|&i| space.label(i).to_owned()).collect(),
            step_dist,
            skip_dist,
            weights,
            augmented,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FixedPointResult {
    pub status: Status,
    pub point: Option<String>,
    pub period: Option<usize>,
    /// Applications of `T` before termination was detected.
    pub iterations: usize,
    pub trace: IterationTrace,
}

/// `10 |X|`.
pub fn default_max_iter(inst: &ContractionInstance) -> usize {
    10 * inst.space.len()
}

/// Zero when the weight values are exact, `10^-12` otherwise.
pub fn default_tol(inst: &ContractionInstance) -> Rational {
    let exact = (0..inst.space.len()).all(|i| inst.weight(i).is_exact());
    if exact {
        Rational::zero()
    } else {
        ten_pow_neg(12)
    }
}

/// Iterates `x_{n+1} = T x_n` from `x0` until `d(x_n, T x_n) <= tol`, a point
/// repeats, or `max_iter` applications have been made.
pub fn picard_iterate(
    inst: &ContractionInstance,
    x0: &str,
    max_iter: usize,
    tol: &Rational,
) -> Result<FixedPointResult, ContractionError> {
    if max_iter == 0 {
        return Err(ContractionError::InvalidParameter(
            "max_iter must be at least 1".to_owned(),
        ));
    }
    let start = inst.index(x0)?;
    let mut orbit = vec![start];
    let mut seen = HashMap::from([(start, 0usize)]);
    let mut outcome = (Status::MaxIter, None, None, max_iter);
    for n in 0..max_iter {
        let x = orbit[n];
        let tx = inst.image(x);
        if inst.space.d(x, tx) <= tol {
            outcome = (Status::FixedPoint, Some(x), None, n);
            break;
        }
        if let Some(&first) = seen.get(&tx) {
            orbit.push(tx);
            outcome = (Status::Periodic, Some(tx), Some(n + 1 - first), n + 1);
            break;
        }
        seen.insert(tx, n + 1);
        orbit.push(tx);
    }
    for _ in 0..TAIL_STEPS {
        let last = *orbit.last().expect("orbit starts nonempty");
        orbit.push(inst.image(last));
    }
    let (status, point, period, iterations) = outcome;
    Ok(FixedPointResult {
        status,
        point: point.map(|i| inst.space.label(i).to_owned()),
        period,
        iterations,
        trace: IterationTrace::from_orbit(inst, &orbit),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DecreasingCheck {
    pub holds: bool,
    /// First `n` with `augmented[n] > augmented[n - 1]`.
    pub first_violation: Option<usize>,
}

/// Whether the augmented step sequence is nonincreasing.
pub fn verify_decreasing(trace: &IterationTrace) -> DecreasingCheck {
    let first_violation =
        (1..trace.augmented.len()).find(|&n| trace.augmented[n].cmp_value(&trace.augmented[n - 1]).is_gt());
    DecreasingCheck {
        holds: first_violation.is_none(),
        first_violation,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TailStatus {
    pub vanishes: bool,
    /// Start of the final run of entries `<= tol`.
    pub from_index: Option<usize>,
}

impl TailStatus {
    fn of(values: &[Value], tol: &Rational) -> Self {
        let small = |v: &Value| v.le_within(&Value::zero(), tol);
        let from_index = match values.iter().rposition(|v| !small(v)) {
            None if values.is_empty() => None,
            None => Some(0),
            Some(i) if i + 1 < values.len() => Some(i + 1),
            Some(_) => None,
        };
        TailStatus {
            vanishes: from_index.is_some(),
            from_index,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VanishingReport {
    pub step_dist: TailStatus,
    pub skip_dist: TailStatus,
    pub weights: TailStatus,
}

impl VanishingReport {
    pub fn all_vanish(&self) -> bool {
        self.step_dist.vanishes && self.skip_dist.vanishes && self.weights.vanishes
    }
}

/// Whether the tails of the step distances, skip distances and weights fall
/// to `tol` or below, and from which index.
pub fn check_vanishing(trace: &IterationTrace, tol: &Rational) -> VanishingReport {
    let exact = |v: &[Rational]| v.iter().cloned().map(Value::Exact).collect::<Vec<_>>();
    VanishingReport {
        step_dist: TailStatus::of(&exact(&trace.step_dist), tol),
        skip_dist: TailStatus::of(&exact(&trace.skip_dist), tol),
        weights: TailStatus::of(&trace.weights, tol),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FixedPointCheck {
    pub point: String,
    pub image: String,
    #[serde(with = "crate::rational::serde_str")]
    pub distance: Rational,
    pub weight: Value,
    pub is_fixed: bool,
    pub weight_vanishes: bool,
    pub passes: bool,
}

/// `d(z, Tz) <= tol` and `phi(z) <= tol`, reported separately.
pub fn verify_fixed_point(
    inst: &ContractionInstance,
    z: &str,
    tol: &Rational,
) -> Result<FixedPointCheck, ContractionError> {
    let i = inst.index(z)?;
    let tz = inst.image(i);
    let distance = inst.space.d(i, tz).clone();
    let weight = inst.weight(i).clone();
    let is_fixed = &distance <= tol;
    let weight_vanishes = weight.le_within(&Value::zero(), tol);
    Ok(FixedPointCheck {
        point: z.to_owned(),
        image: inst.space.label(tz).to_owned(),
        distance,
        weight,
        is_fixed,
        weight_vanishes,
        passes: is_fixed && weight_vanishes,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct UniquenessReport {
    pub fixed_points: Vec<String>,
    /// Fixed points whose weight exceeds `tol`; the uniqueness argument assumes none.
    pub nonzero_weight: Vec<String>,
}

impl UniquenessReport {
    pub fn is_unique(&self) -> bool {
        self.fixed_points.len() == 1
    }
}

/// Every point with `d(z, Tz) <= tol`, in label order.
pub fn uniqueness_scan(inst: &ContractionInstance, tol: &Rational) -> UniquenessReport {
    let mut fixed_points = Vec::new();
    let mut nonzero_weight = Vec::new();
    for i in 0..inst.space.len() {
        if inst.space.d(i, inst.image(i)) <= tol {
            let label = inst.space.label(i).to_owned();
            if !inst.weight(i).le_within(&Value::zero(), tol) {
                nonzero_weight.push(label.clone());
            }
            fixed_points.push(label);
        }
    }
    UniquenessReport {
        fixed_points,
        nonzero_weight,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contraction::{InstanceSpec, SelfMap, Variant};
    use crate::functions::FunctionSpec;
    use crate::rational::{int, rat};
    use crate::spaces::{build_space, Fallback, Point};

    fn instance(map: SelfMap, weight: FunctionSpec) -> ContractionInstance {
        let space = build_space(
            (0..3).map(|i| Point::at(int(i))).collect(),
            &[],
            Fallback::SquaredDifference,
        )
        .unwrap();
        ContractionInstance::new(
            space,
            map,
            InstanceSpec {
                psi: FunctionSpec::linear(int(1)),
                weight_phi: weight,
                control_phi: FunctionSpec::linear(rat(1, 2)),
                f: FunctionSpec::cclass(1, &[]).unwrap(),
                s: int(1),
                variant: Variant::MMax,
            },
        )
        .unwrap()
    }

    #[test]
    fn permutation_is_periodic() {
        let inst = instance(
            SelfMap::table([("0", "1"), ("1", "2"), ("2", "0")]),
            FunctionSpec::poly(&[]),
        );
        let r = picard_iterate(&inst, "0", 30, &int(0)).unwrap();
        assert_eq!(r.status, Status::Periodic);
        assert_eq!(r.period, Some(3));
        assert_eq!(r.trace.orbit, ["0", "1", "2", "0", "1", "2"]);
        assert!(!check_vanishing(&r.trace, &int(0)).step_dist.vanishes);
    }

    #[test]
    fn already_fixed_start() {
        let inst = instance(SelfMap::Constant(int(0)), FunctionSpec::linear(int(1)));
        let r = picard_iterate(&inst, "0", 30, &int(0)).unwrap();
        assert_eq!(r.status, Status::FixedPoint);
        assert_eq!(r.iterations, 0);
        assert_eq!(r.trace.orbit, ["0", "0", "0"]);
        assert!(verify_decreasing(&r.trace).holds);
        let v = check_vanishing(&r.trace, &int(0));
        assert!(v.all_vanish());
        assert_eq!(v.step_dist.from_index, Some(0));
    }

    #[test]
    fn lengths_are_consistent() {
        let inst = instance(
            SelfMap::table([("0", "0"), ("1", "0"), ("2", "1")]),
            FunctionSpec::linear(int(1)),
        );
        let r = picard_iterate(&inst, "2", 30, &int(0)).unwrap();
        assert_eq!(r.point.as_deref(), Some("0"));
        let n = r.trace.orbit.len();
        assert_eq!(r.trace.step_dist.len(), n - 1);
        assert_eq!(r.trace.skip_dist.len(), n - 2);
        assert_eq!(r.trace.augmented.len(), n - 1);
        assert_eq!(r.trace.weights.len(), n);
    }

    #[test]
    fn increase_is_located() {
        let mut trace = IterationTrace {
            orbit: vec![],
            step_dist: vec![],
            skip_dist: vec![],
            weights: vec![],
            augmented: [3, 2, 5, 1].iter().map(|&v| Value::Exact(int(v))).collect(),
        };
        assert_eq!(verify_decreasing(&trace).first_violation, Some(2));
        trace.augmented.truncate(2);
        assert!(verify_decreasing(&trace).holds);
    }

    #[test]
    fn identity_lists_every_point() {
        let inst = instance(SelfMap::Identity, FunctionSpec::poly(&[]));
        let u = uniqueness_scan(&inst, &int(0));
        assert_eq!(u.fixed_points, ["0", "1", "2"]);
        assert!(u.nonzero_weight.is_empty());
        assert!(verify_fixed_point(&inst, "2", &int(0)).unwrap().passes);
    }
}
