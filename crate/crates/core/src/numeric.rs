//! Values produced by function evaluation.
//!
//! Rational pipelines stay in [`Value::Exact`]. As soon as a transcendental
//! operation (logarithm, exponential, irrational root) is needed the value is
//! promoted to [`Value::Approx`], a binary floating-point number carrying
//! [`precision_digits`] significant decimal digits. Approximate values are
//! only ever compared against an explicit tolerance.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};

use dashu_base::SquareRoot;
use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use dashu_int::IBig;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::rational::{format_rational, Rational};

/// Default number of significant decimal digits for approximate values.
pub const DEFAULT_PRECISION_DIGITS: usize = 60;

/// Environment variable overriding [`DEFAULT_PRECISION_DIGITS`].
pub const PRECISION_ENV: &str = "FPRECT_PRECISION";

const MIN_PRECISION_DIGITS: usize = 20;

static PRECISION: AtomicUsize = AtomicUsize::new(0);

/// Significant decimal digits used for transcendental evaluation.
///
/// Read once from `FPRECT_PRECISION`; values below 20 are raised to 20.
pub fn precision_digits() -> usize {
    match PRECISION.load(AtomicOrdering::Relaxed) {
        0 => {
            let digits = std::env::var(PRECISION_ENV)
                .ok()
                .and_then(|v| v.trim().parse::<usize>().ok())
                .unwrap_or(DEFAULT_PRECISION_DIGITS)
                .max(MIN_PRECISION_DIGITS);
            PRECISION.store(digits, AtomicOrdering::Relaxed);
            digits
        }
        d => d,
    }
}

/// Overrides the precision for the rest of the process.
pub fn set_precision_digits(digits: usize) {
    PRECISION.store(digits.max(MIN_PRECISION_DIGITS), AtomicOrdering::Relaxed);
}

fn precision_bits() -> usize {
    // log2(10) ~ 3.3219; the extra word absorbs rounding in chained operations.
    (precision_digits() as f64 * std::f64::consts::LOG2_10).ceil() as usize + 64
}

type Float = FBig<HalfEven>;

/// A high-precision real number.
#[derive(Clone, Debug)]
pub struct Real(Float);

impl Real {
    pub fn from_rational(r: &Rational) -> Self {
        let p = precision_bits();
        let num = Float::from(to_ibig(r.numer())).with_precision(p).value();
        let den = Float::from(to_ibig(r.denom())).with_precision(p).value();
        Real(num / den)
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().value()
    }

    /// Decimal rendering with `digits` significant digits.
    pub fn to_decimal_string(&self, digits: usize) -> String {
        if self.0 == Float::ZERO {
            return "0".to_owned();
        }
        let dec = self.0.to_decimal().value();
        dec.with_precision(digits).value().to_string()
    }

    fn ln(&self) -> Real {
        Real(self.0.ln())
    }

    fn exp(&self) -> Real {
        Real(self.0.exp())
    }

    fn sqrt(&self) -> Real {
        Real(self.0.sqrt())
    }

    fn is_zero(&self) -> bool {
        self.0 == Float::ZERO
    }
}

thread_local! {
    // Grid scans take logarithms of the same few exact arguments many times.
    static LN_CACHE: RefCell<HashMap<(Rational, usize), Real>> = RefCell::new(HashMap::new());
}

const LN_CACHE_CAP: usize = 1 << 14;

fn cached_ln(r: &Rational) -> Real {
    let key = (r.clone(), precision_bits());
    if let Some(hit) = LN_CACHE.with(|c| c.borrow().get(&key).cloned()) {
        return hit;
    }
    let v = Real::from_rational(r).ln();
    LN_CACHE.with(|c| {
        let mut c = c.borrow_mut();
        if c.len() >= LN_CACHE_CAP {
            c.clear();
        }
        c.insert(key, v.clone());
    });
    v
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

fn to_ibig(n: &BigInt) -> IBig {
    IBig::from_str(&n.to_string()).expect("BigInt renders as a decimal integer")
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NumericError {
    #[error("logarithm of non-positive value {0}")]
    LogOfNonPositive(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("power of negative base {base} with non-integer exponent {exponent}")]
    NegativeBase { base: String, exponent: String },
    #[error("zero raised to a negative power")]
    ZeroToNegativePower,
}

/// Result of evaluating a formula: exact when every step was rational.
#[derive(Clone, Debug)]
pub enum Value {
    Exact(Rational),
    Approx(Real),
}

impl From<Rational> for Value {
    fn from(r: Rational) -> Self {
        Value::Exact(r)
    }
}

impl Value {
    pub fn zero() -> Self {
        Value::Exact(Rational::zero())
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Value::Exact(_))
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Value::Exact(r) => Some(r),
            Value::Approx(_) => None,
        }
    }

    pub fn to_real(&self) -> Real {
        match self {
            Value::Exact(r) => Real::from_rational(r),
            Value::Approx(x) => x.clone(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Value::Approx(x) => x.to_f64(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Value::Exact(r) => r.is_zero(),
            Value::Approx(x) => x.is_zero(),
        }
    }

    fn binary(
        &self,
        other: &Value,
        exact: impl FnOnce(&Rational, &Rational) -> Rational,
        approx: impl FnOnce(&Float, &Float) -> Float,
    ) -> Value {
        match (self, other) {
            (Value::Exact(a), Value::Exact(b)) => Value::Exact(exact(a, b)),
            _ => Value::Approx(Real(approx(&self.to_real().0, &other.to_real().0))),
        }
    }

    pub fn add(&self, other: &Value) -> Value {
        self.binary(other, |a, b| a + b, |a, b| a + b)
    }

    pub fn sub(&self, other: &Value) -> Value {
        self.binary(other, |a, b| a - b, |a, b| a - b)
    }

    pub fn mul(&self, other: &Value) -> Value {
        self.binary(other, |a, b| a * b, |a, b| a * b)
    }

    pub fn div(&self, other: &Value) -> Result<Value, NumericError> {
        if other.is_zero() {
            return Err(NumericError::DivisionByZero);
        }
        Ok(self.binary(other, |a, b| a / b, |a, b| a / b))
    }

    pub fn neg(&self) -> Value {
        match self {
            Value::Exact(r) => Value::Exact(-r),
            Value::Approx(x) => Value::Approx(Real(-x.0.clone())),
        }
    }

    /// Natural logarithm; `ln 1 = 0` stays exact.
    pub fn ln(&self) -> Result<Value, NumericError> {
        if self.cmp_zero() != Ordering::Greater {
            return Err(NumericError::LogOfNonPositive(self.to_string()));
        }
        match self {
            Value::Exact(r) if r.is_one() => Ok(Value::zero()),
            Value::Exact(r) => Ok(Value::Approx(cached_ln(r))),
            Value::Approx(x) => Ok(Value::Approx(x.ln())),
        }
    }

    pub fn exp(&self) -> Value {
        if self.is_zero() {
            return Value::Exact(Rational::one());
        }
        Value::Approx(self.to_real().exp())
    }

    /// `self^exponent` for a rational exponent. Exact when the base is exact
    /// and has an exact root of the exponent's denominator.
    pub fn pow(&self, exponent: &Rational) -> Result<Value, NumericError> {
        if exponent.is_zero() {
            return Ok(Value::Exact(Rational::one()));
        }
        let sign = self.cmp_zero();
        if sign == Ordering::Equal {
            return if exponent.is_positive() {
                Ok(Value::zero())
            } else {
                Err(NumericError::ZeroToNegativePower)
            };
        }
        if let Value::Exact(base) = self {
            if exponent.is_integer() {
                return Ok(Value::Exact(pow_int(base, exponent.numer())));
            }
            if sign == Ordering::Less {
                return Err(NumericError::NegativeBase {
                    base: format_rational(base),
                    exponent: format_rational(exponent),
                });
            }
            if let Some(root) = exact_root(base, exponent.denom()) {
                return Ok(Value::Exact(pow_int(&root, exponent.numer())));
            }
        } else if sign == Ordering::Less && !exponent.is_integer() {
            return Err(NumericError::NegativeBase {
                base: self.to_string(),
                exponent: format_rational(exponent),
            });
        }
        let real = self.to_real();
        if exponent.is_integer() {
            let n = exponent.numer().to_i64().expect("integer exponent fits in i64");
            let mut acc = Float::ONE.with_precision(precision_bits()).value();
            for _ in 0..n.unsigned_abs() {
                acc *= &real.0;
            }
            if n < 0 {
                acc = Float::ONE.with_precision(precision_bits()).value() / acc;
            }
            return Ok(Value::Approx(Real(acc)));
        }
        if exponent == &Rational::new(BigInt::one(), BigInt::from(2)) {
            return Ok(Value::Approx(real.sqrt()));
        }
        // base > 0 here
        let e = Real::from_rational(exponent);
        let ln = match self {
            Value::Exact(r) => cached_ln(r),
            Value::Approx(_) => real.ln(),
        };
        Ok(Value::Approx(Real(&e.0 * &ln.0).exp()))
    }

    /// `self^exponent` for a (possibly inexact) real exponent. Requires a positive base.
    pub fn pow_value(&self, exponent: &Value) -> Result<Value, NumericError> {
        match exponent {
            Value::Exact(e) => self.pow(e),
            Value::Approx(e) => {
                if self.cmp_zero() != Ordering::Greater {
                    return Err(NumericError::NegativeBase {
                        base: self.to_string(),
                        exponent: e.to_decimal_string(20),
                    });
                }
                let ln = match self.ln()? {
                    Value::Approx(l) => l,
                    Value::Exact(_) => return Ok(Value::Exact(Rational::one())),
                };
                Ok(Value::Approx(Real(&e.0 * &ln.0).exp()))
            }
        }
    }

    pub fn cmp_zero(&self) -> Ordering {
        match self {
            Value::Exact(r) => r.cmp(&Rational::zero()),
            Value::Approx(x) => x.0.partial_cmp(&Float::ZERO).unwrap_or(Ordering::Equal),
        }
    }

    /// Total order on values; exact pairs compare exactly, mixed pairs at the
    /// working precision.
    pub fn cmp_value(&self, other: &Value) -> Ordering {
        match (self, other) {
            (Value::Exact(a), Value::Exact(b)) => a.cmp(b),
            _ => self.to_real().partial_cmp(&other.to_real()).unwrap_or(Ordering::Equal),
        }
    }

    /// `self <= other + tol`. With two exact operands and `tol = 0` this is an
    /// exact comparison.
    pub fn le_within(&self, other: &Value, tol: &Rational) -> bool {
        self.sub(other).cmp_value(&Value::Exact(tol.clone())) != Ordering::Greater
    }

    /// `|self - other| <= tol`.
    pub fn approx_eq(&self, other: &Value, tol: &Rational) -> bool {
        self.le_within(other, tol) && other.le_within(self, tol)
    }

    pub fn max(self, other: Value) -> Value {
        if other.cmp_value(&self) == Ordering::Greater {
            other
        } else {
            self
        }
    }

    /// Machine-readable rendering: `p/q` when exact, `~<decimal>` otherwise.
    pub fn to_canonical_string(&self) -> String {
        match self {
            Value::Exact(r) => format_rational(r),
            Value::Approx(x) => format!("~{}", x.to_decimal_string(40)),
        }
    }
}

/// Exact values compare exactly; approximate values at the working precision.
/// An exact value never equals an approximate one.
impl PartialEq for Value {
    fn eq(&self, other: &Self) -> bool {
        self.is_exact() == other.is_exact() && self.cmp_value(other).is_eq()
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(r) => write!(f, "{}", crate::rational::Short(r)),
            Value::Approx(x) => write!(f, "~{}", x.to_decimal_string(20)),
        }
    }
}

impl serde::Serialize for Value {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_canonical_string())
    }
}

fn pow_int(base: &Rational, exponent: &BigInt) -> Rational {
    let n = exponent.to_i32().expect("exponent fits in i32");
    num_traits::pow::Pow::pow(base, n)
}

/// Exact `k`-th root of a nonnegative rational, if it exists.
fn exact_root(r: &Rational, k: &BigInt) -> Option<Rational> {
    let k = k.to_u32()?;
    let root_of = |n: &BigInt| {
        let c = n.nth_root(k);
        (num_traits::pow(c.clone(), k as usize) == *n).then_some(c)
    };
    Some(Rational::new(root_of(r.numer())?, root_of(r.denom())?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ten_pow_neg};

    #[test]
    fn exact_roots_stay_exact() {
        let v = Value::Exact(rat(1, 4)).pow(&rat(1, 2)).unwrap();
        assert_eq!(v.as_rational(), Some(&rat(1, 2)));
        let v = Value::Exact(rat(8, 27)).pow(&rat(2, 3)).unwrap();
        assert_eq!(v.as_rational(), Some(&rat(4, 9)));
        let v = Value::Exact(rat(2, 1)).pow(&rat(-2, 1)).unwrap();
        assert_eq!(v.as_rational(), Some(&rat(1, 4)));
    }

    #[test]
    fn irrational_root_is_approximate() {
        let v = Value::Exact(rat(2, 1)).pow(&rat(1, 2)).unwrap();
        assert!(!v.is_exact());
        let sq = v.mul(&v);
        assert!(sq.approx_eq(&Value::Exact(rat(2, 1)), &ten_pow_neg(50)));
    }

    #[test]
    fn ln_exp_roundtrip_at_precision() {
        let x = Value::Exact(rat(7, 3));
        let back = x.ln().unwrap().exp();
        assert!(back.approx_eq(&x, &ten_pow_neg(50)));
    }

    #[test]
    fn ln_of_nonpositive_is_domain_error() {
        assert!(Value::zero().ln().is_err());
        assert!(Value::Exact(rat(-1, 2)).ln().is_err());
        assert_eq!(Value::Exact(rat(1, 1)).ln().unwrap().as_rational(), Some(&rat(0, 1)));
    }

    #[test]
    fn general_power_matches_known_value() {
        // 2^(1/3) = 1.259921049894873164767210607278228350570251464701507980081975...
        let v = Value::Exact(rat(2, 1)).pow(&rat(1, 3)).unwrap();
        let s = v.to_real().to_decimal_string(50);
        assert!(
            s.starts_with("1.2599210498948731647672106072782283505702514647015"),
            "{s}"
        );
    }

    #[test]
    fn comparison_with_tolerance() {
        let a = Value::Exact(rat(1, 3));
        let b = Value::Exact(rat(1, 3) + ten_pow_neg(25));
        assert!(!b.le_within(&a, &Rational::zero()));
        assert!(b.le_within(&a, &ten_pow_neg(20)));
    }

    #[test]
    fn canonical_strings() {
        assert_eq!(Value::Exact(rat(6, 4)).to_canonical_string(), "3/2");
        let s = Value::Exact(rat(2, 1)).ln().unwrap().to_canonical_string();
        assert!(s.starts_with("~0.6931471805599453094"), "{s}");
    }
}
