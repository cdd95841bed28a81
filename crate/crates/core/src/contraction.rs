//! Self-maps, M-functions, and the C-class weakly contractive inequality
//!
//! ```text
//! psi(s^2 d(Tx, Ty) + phi(Tx) + phi(Ty)) <= F(psi(M), control(M))
//! ```
//!
//! checked over every ordered pair of a finite space.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::functions::{FunctionError, FunctionSpec};
use crate::numeric::Value;
use crate::rational::{format_rational, int, label_for, rat, ten_pow_neg, Rational};
use crate::spaces::{GeneralizedMetricSpace, SpaceError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ContractionError {
    #[error("T maps {point} to {image}, which is not a point of the space")]
    NotClosed { point: String, image: String },
    #[error("T is not defined at {0}")]
    Unmapped(String),
    #[error("invalid convex weights: need a, b, c >= 0 with a + b + c > 0")]
    InvalidWeights,
    #[error("operation needs the {expected} variant, instance uses {got}")]
    VariantMismatch { expected: &'static str, got: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("preset {preset}: {param} = {value} must satisfy {constraint}")]
    ParameterOutOfRange {
        preset: &'static str,
        param: &'static str,
        value: String,
        constraint: &'static str,
    },
    #[error(transparent)]
    Function(#[from] FunctionError),
    #[error(transparent)]
    Space(#[from] SpaceError),
}

/// One rule of a value-based map: points with value in `[lo, hi]` go to `to`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapPiece {
    pub lo: Rational,
    pub hi: Rational,
    pub to: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SelfMap {
    /// Explicit label-to-label assignment.
    Table(BTreeMap<String, String>),
    /// First matching interval by point value, then `else_to`.
    Pieces {
        pieces: Vec<MapPiece>,
        else_to: Option<Rational>,
    },
    /// Every point goes to the point carrying this value.
    Constant(Rational),
    Identity,
}

impl SelfMap {
    pub fn table<'a>(pairs: impl IntoIterator<Item = (&'a str, &'a str)>) -> Self {
        SelfMap::Table(pairs.into_iter().map(|(a, b)| (a.to_owned(), b.to_owned())).collect())
    }
}

/// Image of point `i` under `map`, as an index into `space`.
pub fn apply_map(space: &GeneralizedMetricSpace, map: &SelfMap, i: usize) -> Result<usize, ContractionError> {
    let p = space.point(i);
    let by_value = |v: &Rational| {
        space.index_of_value(v).ok_or_else(|| ContractionError::NotClosed {
            point: p.label.clone(),
            image: label_for(v),
        })
    };
    match map {
        SelfMap::Identity => Ok(i),
        SelfMap::Constant(v) => by_value(v),
        SelfMap::Table(t) => {
            let image = t
                .get(&p.label)
                .ok_or_else(|| ContractionError::Unmapped(p.label.clone()))?;
            space.index_of(image).map_err(|_| ContractionError::NotClosed {
                point: p.label.clone(),
                image: image.clone(),
            })
        }
        SelfMap::Pieces { pieces, else_to } => {
            let hit = pieces.iter().find(|r| r.lo <= p.value && p.value <= r.hi);
            match (hit, else_to) {
                (Some(r), _) => by_value(&r.to),
                (None, Some(v)) => by_value(v),
                (None, None) => Err(ContractionError::Unmapped(p.label.clone())),
            }
        }
    }
}

/// How the bound `M` is formed from the three augmented distances
/// `A = d(x,y)+phi(x)+phi(y)`, `B = d(x,Tx)+phi(x)+phi(Tx)`, `C = d(y,Ty)+phi(y)+phi(Ty)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Variant {
    /// `max{A, B, C}`.
    MMax,
    /// `(aA + bB + cC) / (a + b + c)`.
    MConvex { a: Rational, b: Rational, c: Rational },
    /// Metric setting (`s = 1`): right side `psi(m) - control(l)`.
    ChoMetric,
    /// `b1 A + b2 B + b3 C` with `b1 + b2 + b3 <= 1`, not normalised.
    Weighted { betas: [Rational; 3] },
}

impl Variant {
    pub fn name(&self) -> &'static str {
        match self {
            Variant::MMax => "m_max",
            Variant::MConvex { .. } => "m_convex",
            Variant::ChoMetric => "cho_metric",
            Variant::Weighted { .. } => "weighted",
        }
    }

    /// Whether `M(x, y) = M(y, x)` and the right side is symmetric, so
    /// verdicts can be presented per unordered pair.
    pub fn is_symmetric(&self) -> bool {
        match self {
            Variant::MMax => true,
            Variant::MConvex { b, c, .. } => b == c,
            Variant::ChoMetric => false,
            Variant::Weighted { betas } => betas[1] == betas[2],
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variant::MConvex { a, b, c } => {
                write!(f, "m_convex({}, {}, {})", label_for(a), label_for(b), label_for(c))
            }
            Variant::Weighted { betas } => {
                let [b1, b2, b3] = betas;
                write!(f, "weighted({}, {}, {})", label_for(b1), label_for(b2), label_for(b3))
            }
            v => f.write_str(v.name()),
        }
    }
}

/// Space, self-map, function triple, coefficient and bound variant.
#[derive(Debug, Clone)]
pub struct ContractionInstance {
    pub space: GeneralizedMetricSpace,
    pub map: SelfMap,
    pub psi: FunctionSpec,
    pub weight_phi: FunctionSpec,
    pub control_phi: FunctionSpec,
    pub f: FunctionSpec,
    pub s: Rational,
    pub variant: Variant,
    /// Slack allowed when a margin is only known approximately.
    pub approx_tol: Rational,
    images: Vec<usize>,
    weights: Vec<Value>,
}

/// Function triple and variant, before a space and map are attached.
#[derive(Debug, Clone)]
pub struct InstanceSpec {
    pub psi: FunctionSpec,
    pub weight_phi: FunctionSpec,
    pub control_phi: FunctionSpec,
    pub f: FunctionSpec,
    pub s: Rational,
    pub variant: Variant,
}

impl ContractionInstance {
    pub fn new(space: GeneralizedMetricSpace, map: SelfMap, spec: InstanceSpec) -> Result<Self, ContractionError> {
        let InstanceSpec {
            psi,
            weight_phi,
            control_phi,
            f,
            s,
            variant,
        } = spec;
        if s < Rational::one() {
            return Err(ContractionError::InvalidParameter(format!(
                "s = {} must be >= 1",
                format_rational(&s)
            )));
        }
        match &variant {
            Variant::MConvex { a, b, c } => {
                if a.is_negative() || b.is_negative() || c.is_negative() || (a + b + c).is_zero() {
                    return Err(ContractionError::InvalidWeights);
                }
            }
            Variant::Weighted { betas } => {
                let sum: Rational = betas.iter().sum();
                if betas.iter().any(Signed::is_negative) || sum.is_zero() || sum > Rational::one() {
                    return Err(ContractionError::InvalidWeights);
                }
            }
            Variant::ChoMetric if !s.is_one() => {
                return Err(ContractionError::InvalidParameter(
                    "the metric-space variant needs s = 1".to_owned(),
                ));
            }
            _ => {}
        }
        for (name, spec, arity) in [
            ("psi", &psi, 1),
            ("weight_phi", &weight_phi, 1),
            ("control_phi", &control_phi, 1),
        ] {
            if spec.arity() != arity {
                return Err(FunctionError::ArityMismatch {
                    name: format!("{name} = {spec}"),
                    expected: arity,
                    got: spec.arity(),
                }
                .into());
            }
        }
        if matches!(variant, Variant::ChoMetric) {
            // F is not used by this variant.
        } else if f.arity() != 2 {
            return Err(FunctionError::ArityMismatch {
                name: format!("F = {f}"),
                expected: 2,
                got: f.arity(),
            }
            .into());
        }
        f.validate()?;
        let images = (0..space.len())
            .map(|i| apply_map(&space, &map, i))
            .collect::<Result<Vec<_>, _>>()?;
        let weights = space
            .points()
            .iter()
            .map(|p| weight_phi.eval1(&p.value))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ContractionInstance {
            space,
            map,
            psi,
            weight_phi,
            control_phi,
            f,
            s,
            variant,
            approx_tol: ten_pow_neg(20),
            images,
            weights,
        })
    }

    pub fn with_approx_tol(mut self, tol: Rational) -> Self {
        self.approx_tol = tol;
        self
    }

    /// Index of `T(x_i)`.
    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    /// Weight `phi` at point `i`.
    pub fn weight(&self, i: usize) -> &Value {
        &self.weights[i]
    }

    fn d(&self, i: usize, j: usize) -> Value {
        Value::Exact(self.space.d(i, j).clone())
    }

    /// `d(x, y) + phi(x) + phi(y)`.
    pub fn augmented(&self, i: usize, j: usize) -> Value {
        self.d(i, j).add(&self.weights[i]).add(&self.weights[j])
    }

    /// The three augmented terms `[A, B, C]`.
    pub fn terms(&self, x: usize, y: usize) -> [Value; 3] {
        [
            self.augmented(x, y),
            self.augmented(x, self.images[x]),
            self.augmented(y, self.images[y]),
        ]
    }

    pub fn index(&self, label: &str) -> Result<usize, ContractionError> {
        Ok(self.space.index_of(label)?)
    }

    /// `psi(s^2 d(Tx, Ty) + phi(Tx) + phi(Ty))`.
    pub fn lhs(&self, x: usize, y: usize) -> Result<Value, ContractionError> {
        let (tx, ty) = (self.images[x], self.images[y]);
        let s2 = Value::Exact(&self.s * &self.s);
        let arg = s2.mul(&self.d(tx, ty)).add(&self.weights[tx]).add(&self.weights[ty]);
        Ok(self.psi.eval(&[arg])?)
    }

    /// `F(psi(M), control(M))` at a given bound value.
    pub fn rhs_at(&self, m: &Value) -> Result<Value, ContractionError> {
        let p = self.psi.eval(std::slice::from_ref(m))?;
        let q = self.control_phi.eval(std::slice::from_ref(m))?;
        Ok(self.f.eval(&[p, q])?)
    }
}

/// `max{A, B, C}`.
pub fn compute_m_max(inst: &ContractionInstance, x: usize, y: usize) -> Value {
    let [a, b, c] = inst.terms(x, y);
    a.max(b).max(c)
}

/// `(aA + bB + cC) / (a + b + c)` for the given weights.
pub fn compute_m_convex(
    inst: &ContractionInstance,
    x: usize,
    y: usize,
    weights: (&Rational, &Rational, &Rational),
) -> Result<Value, ContractionError> {
    let (a, b, c) = weights;
    if a.is_negative() || b.is_negative() || c.is_negative() || (a + b + c).is_zero() {
        return Err(ContractionError::InvalidWeights);
    }
    let [ta, tb, tc] = inst.terms(x, y);
    let sum = Value::Exact(a.clone())
        .mul(&ta)
        .add(&Value::Exact(b.clone()).mul(&tb))
        .add(&Value::Exact(c.clone()).mul(&tc));
    Ok(sum.div(&Value::Exact(a + b + c)).expect("positive weight sum"))
}

fn require_cho(inst: &ContractionInstance) -> Result<(), ContractionError> {
    match inst.variant {
        Variant::ChoMetric => Ok(()),
        ref v => Err(ContractionError::VariantMismatch {
            expected: "cho_metric",
            got: v.to_string(),
        }),
    }
}

/// `max{A, B, C, (d(x,Ty)+phi(x)+phi(Ty) + d(y,Tx)+phi(Tx)+phi(y)) / 2}`.
pub fn compute_m_cho(inst: &ContractionInstance, x: usize, y: usize) -> Result<Value, ContractionError> {
    require_cho(inst)?;
    let half = inst
        .augmented(x, inst.images[y])
        .add(&inst.augmented(y, inst.images[x]))
        .mul(&Value::Exact(rat(1, 2)));
    Ok(compute_m_max(inst, x, y).max(half))
}

/// `max{A, C}`.
pub fn compute_l_cho(inst: &ContractionInstance, x: usize, y: usize) -> Result<Value, ContractionError> {
    require_cho(inst)?;
    let [a, _, c] = inst.terms(x, y);
    Ok(a.max(c))
}

/// The bound `M` for the instance's variant (`m` for the metric variant).
pub fn compute_m(inst: &ContractionInstance, x: usize, y: usize) -> Result<Value, ContractionError> {
    match &inst.variant {
        Variant::MMax => Ok(compute_m_max(inst, x, y)),
        Variant::MConvex { a, b, c } => compute_m_convex(inst, x, y, (a, b, c)),
        Variant::ChoMetric => compute_m_cho(inst, x, y),
        Variant::Weighted { betas } => {
            let terms = inst.terms(x, y);
            Ok(betas
                .iter()
                .zip(&terms)
                .fold(Value::zero(), |acc, (b, t)| acc.add(&Value::Exact(b.clone()).mul(t))))
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PairVerdict {
    pub x: String,
    pub y: String,
    pub tx: String,
    pub ty: String,
    pub lhs: Value,
    pub m: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<Value>,
    pub rhs: Value,
    pub margin: Value,
    pub holds: bool,
    /// `M = 0` and `LHS = 0`: counted as holding whatever the sign of the right side.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub degenerate: bool,
}

impl PairVerdict {
    pub fn is_exact(&self) -> bool {
        self.margin.is_exact()
    }
}

/// Evaluates the inequality at the ordered pair `(x, y)`.
pub fn check_pair(inst: &ContractionInstance, x: usize, y: usize) -> Result<PairVerdict, ContractionError> {
    let lhs = inst.lhs(x, y)?;
    let m = compute_m(inst, x, y)?;
    let (rhs, l) = match inst.variant {
        Variant::ChoMetric => {
            let l = compute_l_cho(inst, x, y)?;
            let rhs = inst
                .psi
                .eval(std::slice::from_ref(&m))?
                .sub(&inst.control_phi.eval(std::slice::from_ref(&l))?);
            (rhs, Some(l))
        }
        _ => (inst.rhs_at(&m)?, None),
    };
    let margin = rhs.sub(&lhs);
    let degenerate = m.is_zero() && lhs.is_zero();
    let tol = if margin.is_exact() {
        Rational::zero()
    } else {
        inst.approx_tol.clone()
    };
    let holds = degenerate || Value::zero().le_within(&margin, &tol);
    Ok(PairVerdict {
        x: inst.space.label(x).to_owned(),
        y: inst.space.label(y).to_owned(),
        tx: inst.space.label(inst.images[x]).to_owned(),
        ty: inst.space.label(inst.images[y]).to_owned(),
        lhs,
        m,
        l,
        rhs,
        margin,
        holds,
        degenerate,
    })
}

/// Label-based convenience wrapper around [`check_pair`].
pub fn check_pair_by_label(inst: &ContractionInstance, x: &str, y: &str) -> Result<PairVerdict, ContractionError> {
    check_pair(inst, inst.index(x)?, inst.index(y)?)
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub variant: String,
    pub s: String,
    /// Every ordered pair, row-major over sorted labels.
    pub verdicts: Vec<PairVerdict>,
    pub global_holds: bool,
    pub failures: usize,
    pub worst_pair: Option<PairVerdict>,
    /// `Some(true)` when the variant is symmetric and `(x, y)`, `(y, x)` agree.
    pub symmetric: Option<bool>,
    pub exact: bool,
}

impl CheckReport {
    pub fn verdict(&self, x: &str, y: &str) -> Option<&PairVerdict> {
        self.verdicts.iter().find(|v| v.x == x && v.y == y)
    }

    /// Unordered presentation for symmetric variants, every ordered pair otherwise.
    pub fn presented(&self) -> Vec<&PairVerdict> {
        if self.symmetric.is_some() {
            self.verdicts.iter().filter(|v| v.x <= v.y).collect()
        } else {
            self.verdicts.iter().collect()
        }
    }
}

/// Checks every ordered pair, including the diagonal.
pub fn check_all(inst: &ContractionInstance) -> Result<CheckReport, ContractionError> {
    let n = inst.space.len();
    let mut verdicts = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            verdicts.push(check_pair(inst, x, y)?);
        }
    }
    let failures = verdicts.iter().filter(|v| !v.holds).count();
    let worst_pair = verdicts
        .iter()
        .reduce(|best, v| {
            if v.margin.cmp_value(&best.margin).is_lt() {
                v
            } else {
                best
            }
        })
        .cloned();
    let symmetric = inst.variant.is_symmetric().then(|| {
        (0..n).all(|x| {
            (x + 1..n).all(|y| {
                let (a, b) = (&verdicts[x * n + y], &verdicts[y * n + x]);
                a.holds == b.holds && a.margin.cmp_value(&b.margin).is_eq()
            })
        })
    });
    Ok(CheckReport {
        variant: inst.variant.to_string(),
        s: format_rational(&inst.s),
        exact: verdicts.iter().all(PairVerdict::is_exact),
        global_holds: failures == 0,
        failures,
        worst_pair,
        symmetric,
        verdicts,
    })
}

/// Named corollary forms of the inequality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Preset {
    /// `F(s, t) = k s`, `0 < k < 1`, over `max{A, B, C}`.
    KMax { k: Rational },
    /// `alpha (B + C)`, `0 < alpha < 1/2`.
    AlphaSum { alpha: Rational },
    /// `lambda (A + B + C)`, `0 < lambda < 1/3`.
    LambdaSum { lambda: Rational },
    /// `k (b1 A + b2 B + b3 C)`, `0 < k < 1`, `b_i >= 0`, `sum b_i <= 1`.
    Weighted { k: Rational, betas: [Rational; 3] },
    /// `F(s, t) = s log_{t + a} a`, `a > 1`.
    Log { a: Rational },
    /// `F(s, t) = s / (1 + t)`.
    Ratio,
    /// `F(s, t) = s - t`.
    MdkDiff,
    /// Right side is the bare control value; needs `psi(t) > control(t)` for `t > 0`.
    MdkPhi,
}

impl Preset {
    pub fn name(&self) -> &'static str {
        match self {
            Preset::KMax { .. } => "K_MAX",
            Preset::AlphaSum { .. } => "ALPHA_SUM",
            Preset::LambdaSum { .. } => "LAMBDA_SUM",
            Preset::Weighted { .. } => "WEIGHTED",
            Preset::Log { .. } => "LOG",
            Preset::Ratio => "RATIO",
            Preset::MdkDiff => "MDK_DIFF",
            Preset::MdkPhi => "MDK_PHI",
        }
    }
}

/// A preset's function choices; `psi(t) = t` unless replaced.
#[derive(Debug, Clone)]
pub struct InstanceTemplate {
    pub preset: Preset,
    pub psi: FunctionSpec,
    pub f: FunctionSpec,
    pub variant: Variant,
}

impl InstanceTemplate {
    pub fn with_psi(mut self, psi: FunctionSpec) -> Self {
        self.psi = psi;
        self
    }

    pub fn with_variant(mut self, variant: Variant) -> Self {
        self.variant = variant;
        self
    }

    pub fn instantiate(
        &self,
        space: GeneralizedMetricSpace,
        map: SelfMap,
        weight_phi: FunctionSpec,
        control_phi: FunctionSpec,
        s: Rational,
    ) -> Result<ContractionInstance, ContractionError> {
        ContractionInstance::new(
            space,
            map,
            InstanceSpec {
                psi: self.psi.clone(),
                weight_phi,
                control_phi,
                f: self.f.clone(),
                s,
                variant: self.variant.clone(),
            },
        )
    }
}

fn open_interval(
    preset: &'static str,
    param: &'static str,
    value: &Rational,
    hi: &Rational,
    constraint: &'static str,
) -> Result<(), ContractionError> {
    if value.is_positive() && value < hi {
        Ok(())
    } else {
        Err(ContractionError::ParameterOutOfRange {
            preset,
            param,
            value: format_rational(value),
            constraint,
        })
    }
}

pub fn make_preset(preset: Preset) -> Result<InstanceTemplate, ContractionError> {
    let name = preset.name();
    let one = Rational::one();
    let k_times = |k: &Rational| FunctionSpec::cclass(2, &[("m", k.clone())]);
    let (f, variant) = match &preset {
        Preset::KMax { k } => {
            open_interval(name, "k", k, &one, "0 < k < 1")?;
            (k_times(k)?, Variant::MMax)
        }
        Preset::AlphaSum { alpha } => {
            open_interval(name, "alpha", alpha, &rat(1, 2), "0 < alpha < 1/2")?;
            let variant = Variant::MConvex {
                a: Rational::zero(),
                b: one.clone(),
                c: one.clone(),
            };
            (k_times(&(alpha * int(2)))?, variant)
        }
        Preset::LambdaSum { lambda } => {
            open_interval(name, "lambda", lambda, &rat(1, 3), "0 < lambda < 1/3")?;
            let variant = Variant::MConvex {
                a: one.clone(),
                b: one.clone(),
                c: one.clone(),
            };
            (k_times(&(lambda * int(3)))?, variant)
        }
        Preset::Weighted { k, betas } => {
            open_interval(name, "k", k, &one, "0 < k < 1")?;
            let sum: Rational = betas.iter().sum();
            if betas.iter().any(Signed::is_negative) || !sum.is_positive() || sum > one {
                return Err(ContractionError::ParameterOutOfRange {
                    preset: name,
                    param: "betas",
                    value: betas.iter().map(format_rational).collect::<Vec<_>>().join(", "),
                    constraint: "b_i >= 0, 0 < b1 + b2 + b3 <= 1",
                });
            }
            (k_times(k)?, Variant::Weighted { betas: betas.clone() })
        }
        Preset::Log { a } => {
            if a <= &one {
                return Err(ContractionError::ParameterOutOfRange {
                    preset: name,
                    param: "a",
                    value: format_rational(a),
                    constraint: "a > 1",
                });
            }
            (FunctionSpec::cclass(7, &[("a", a.clone())])?, Variant::MMax)
        }
        Preset::Ratio => (FunctionSpec::cclass(3, &[("r", one.clone())])?, Variant::MMax),
        Preset::MdkDiff => (FunctionSpec::cclass(1, &[])?, Variant::MMax),
        Preset::MdkPhi => (FunctionSpec::SecondArgument, Variant::MMax),
    };
    Ok(InstanceTemplate {
        preset,
        psi: FunctionSpec::linear(one),
        f,
        variant,
    })
}

/// Outcome of the `psi(t) > control(t)` side condition on a grid.
#[derive(Debug, Clone, Serialize)]
pub struct SideCondition {
    pub holds: bool,
    #[serde(with = "crate::rational::serde_vec")]
    pub violations: Vec<Rational>,
}

/// Checks `psi(t) > control(t)` at every positive grid point.
pub fn check_mdk_phi_side_condition(
    psi: &FunctionSpec,
    control: &FunctionSpec,
    grid: &[Rational],
) -> Result<SideCondition, ContractionError> {
    let mut violations = Vec::new();
    for t in grid.iter().filter(|t| t.is_positive()) {
        let (p, q) = (psi.eval1(t)?, control.eval1(t)?);
        if p.cmp_value(&q).is_le() {
            violations.push(t.clone());
        }
    }
    Ok(SideCondition {
        holds: violations.is_empty(),
        violations,
    })
}
