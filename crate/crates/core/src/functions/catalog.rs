//! The sixteen C-class catalog entries.
//!
//! | #  | F(s, t)                               | parameters              |
//! |----|---------------------------------------|-------------------------|
//! | 1  | s - t                                 |                         |
//! | 2  | m s                                   | 0 < m < 1               |
//! | 3  | s / (1 + t)^r                         | r > 0                   |
//! | 4  | log_a((t + a^s) / (1 + t))            | a > 1                   |
//! | 5  | ln((1 + a^s) / 2)                     | a >= 2719/1000          |
//! | 6  | (s + l)^(1 / (1 + t)^r) - l           | l > 1, r > 0            |
//! | 7  | s log_{t + a}(a)                      | a > 1                   |
//! | 8  | s - ((1 + s) / (2 + s)) (t / (1 + t)) |                         |
//! | 9  | s beta(s)                             | inner beta, 0 < beta < 1 |
//! | 10 | s - t / (k + t)                       | k > 0                   |
//! | 11 | s - phi(s)                            | inner phi               |
//! | 12 | s h(s, t)                             | inner h                 |
//! | 13 | s - ((2 + t) / (1 + t)) t             |                         |
//! | 14 | (ln(1 + s^n))^(1/n)                   | integer n >= 1          |
//! | 15 | phi(s)                                | inner phi, phi(t) < t   |
//! | 16 | s / (1 + s)^r                         | r > 0                   |
//!
//! Entry 12 accepts a unary inner `g`, read as `h(s, t) = g(t)`, or a binary one.

use std::collections::BTreeMap;

use num_traits::{One, Signed};

use super::{CClassSpec, FunctionError, FunctionSpec};
use crate::numeric::Value;
use crate::rational::{format_rational, int, rat, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CClassEntry(u8);

pub const CCLASS_ENTRIES: std::ops::RangeInclusive<u8> = 1..=16;

impl CClassEntry {
    pub fn new(n: u8) -> Result<Self, FunctionError> {
        if CCLASS_ENTRIES.contains(&n) {
            Ok(CClassEntry(n))
        } else {
            Err(FunctionError::UnknownEntry(n.to_string()))
        }
    }

    /// Parses `cclass_7` or `7`.
    pub fn parse(id: &str) -> Result<Self, FunctionError> {
        let digits = id.strip_prefix("cclass_").unwrap_or(id);
        digits
            .parse::<u8>()
            .ok()
            .and_then(|n| CClassEntry::new(n).ok())
            .ok_or_else(|| FunctionError::UnknownEntry(id.to_owned()))
    }

    pub fn number(self) -> u8 {
        self.0
    }

    pub fn needs_inner(self) -> bool {
        matches!(self.0, 9 | 11 | 12 | 15)
    }

    /// A compliant instance: m = 1/2, r = 1, a = 2 (entries 4, 7), a = 2719/1000
    /// (entry 5), l = 2, k = 1, n = 2; inner beta = 1/2, phi(t) = t^2 (entry 11),
    /// h = 1/2, phi(t) = t/2 (entry 15).
    pub fn default_spec(self) -> FunctionSpec {
        let params: Vec<(&str, Rational)> = match self.0 {
            2 => vec![("m", rat(1, 2))],
            3 | 16 => vec![("r", int(1))],
            4 | 7 => vec![("a", int(2))],
            5 => vec![("a", rat(2719, 1000))],
            6 => vec![("l", int(2)), ("r", int(1))],
            10 => vec![("k", int(1))],
            14 => vec![("n", int(2))],
            _ => vec![],
        };
        let spec = FunctionSpec::cclass(self.0, &params).expect("entry in range");
        match self.0 {
            9 | 12 => spec.with_inner(FunctionSpec::poly(&[rat(1, 2)])),
            11 => spec.with_inner(FunctionSpec::poly(&[int(0), int(0), int(1)])),
            15 => spec.with_inner(FunctionSpec::linear(rat(1, 2))),
            _ => spec,
        }
    }
}

fn param<'a>(
    params: &'a BTreeMap<String, Rational>,
    entry: u8,
    name: &'static str,
) -> Result<&'a Rational, FunctionError> {
    params
        .get(name)
        .ok_or(FunctionError::MissingParameter { entry, param: name })
}

impl CClassSpec {
    fn p(&self, name: &'static str) -> Result<&Rational, FunctionError> {
        param(&self.params, self.entry.0, name)
    }

    fn inner(&self) -> Result<&FunctionSpec, FunctionError> {
        self.inner
            .as_deref()
            .ok_or(FunctionError::MissingInner { entry: self.entry.0 })
    }

    pub(super) fn is_transcendental(&self) -> bool {
        match self.entry.0 {
            4..=7 | 14 => true,
            3 | 16 => self.params.get("r").is_none_or(|r| !r.is_integer()),
            9 | 11 | 12 | 15 => self.inner.as_ref().is_some_and(|i| i.is_transcendental()),
            _ => false,
        }
    }

    pub(super) fn validate(&self) -> Result<(), FunctionError> {
        let e = self.entry.0;
        let out_of_range = |param: &'static str, value: &Rational, constraint: &'static str| {
            Err(FunctionError::ParameterOutOfRange {
                entry: e,
                param,
                value: format_rational(value),
                constraint,
            })
        };
        match e {
            2 => {
                let m = self.p("m")?;
                if !(m.is_positive() && m < &Rational::one()) {
                    return out_of_range("m", m, "0 < m < 1");
                }
            }
            3 | 16 => {
                let r = self.p("r")?;
                if !r.is_positive() {
                    return out_of_range("r", r, "r > 0");
                }
            }
            4 | 7 => {
                let a = self.p("a")?;
                if a <= &Rational::one() {
                    return out_of_range("a", a, "a > 1");
                }
            }
            5 => {
                let a = self.p("a")?;
                if a < &rat(2719, 1000) {
                    return out_of_range("a", a, "a >= 2719/1000 (stand-in for a > e)");
                }
            }
            6 => {
                let l = self.p("l")?;
                if l <= &Rational::one() {
                    return out_of_range("l", l, "l > 1");
                }
                let r = self.p("r")?;
                if !r.is_positive() {
                    return out_of_range("r", r, "r > 0");
                }
            }
            10 => {
                let k = self.p("k")?;
                if !k.is_positive() {
                    return out_of_range("k", k, "k > 0");
                }
            }
            14 => {
                let n = self.p("n")?;
                if !(n.is_integer() && n >= &Rational::one()) {
                    return out_of_range("n", n, "integer n >= 1");
                }
            }
            _ => {}
        }
        if self.entry.needs_inner() {
            let inner = self.inner()?;
            inner.validate()?;
            let ok = match e {
                12 => true,
                _ => inner.arity() == 1,
            };
            if !ok {
                return Err(FunctionError::ArityMismatch {
                    name: inner.to_string(),
                    expected: 1,
                    got: inner.arity(),
                });
            }
        }
        Ok(())
    }

    pub(super) fn eval(&self, s: &Value, t: &Value) -> Result<Value, FunctionError> {
        let name = || format!("cclass_{}", self.entry.0);
        let dom = |e| FunctionError::domain(name(), e);
        let one = Value::Exact(Rational::one());
        let c = |r: &Rational| Value::Exact(r.clone());
        Ok(match self.entry.0 {
            1 => s.sub(t),
            2 => c(self.p("m")?).mul(s),
            3 => s.div(&one.add(t).pow(self.p("r")?).map_err(dom)?).map_err(dom)?,
            4 => {
                let a = c(self.p("a")?);
                let a_s = a.pow_value(s).map_err(dom)?;
                let ratio = t.add(&a_s).div(&one.add(t)).map_err(dom)?;
                ratio.ln().map_err(dom)?.div(&a.ln().map_err(dom)?).map_err(dom)?
            }
            5 => {
                let a = c(self.p("a")?);
                let a_s = a.pow_value(s).map_err(dom)?;
                one.add(&a_s).div(&c(&int(2))).map_err(dom)?.ln().map_err(dom)?
            }
            6 => {
                let l = c(self.p("l")?);
                let exponent = one.div(&one.add(t).pow(self.p("r")?).map_err(dom)?).map_err(dom)?;
                s.add(&l).pow_value(&exponent).map_err(dom)?.sub(&l)
            }
            7 => {
                let a = c(self.p("a")?);
                let ratio = a.ln().map_err(dom)?.div(&t.add(&a).ln().map_err(dom)?).map_err(dom)?;
                s.mul(&ratio)
            }
            8 => {
                let left = one.add(s).div(&c(&int(2)).add(s)).map_err(dom)?;
                let right = t.div(&one.add(t)).map_err(dom)?;
                s.sub(&left.mul(&right))
            }
            9 => s.mul(&self.inner()?.eval(std::slice::from_ref(s))?),
            10 => s.sub(&t.div(&c(self.p("k")?).add(t)).map_err(dom)?),
            11 => s.sub(&self.inner()?.eval(std::slice::from_ref(s))?),
            12 => {
                let inner = self.inner()?;
                let h = match inner.arity() {
                    1 => inner.eval(std::slice::from_ref(t))?,
                    _ => inner.eval(&[s.clone(), t.clone()])?,
                };
                s.mul(&h)
            }
            13 => {
                let factor = c(&int(2)).add(t).div(&one.add(t)).map_err(dom)?;
                s.sub(&factor.mul(t))
            }
            14 => {
                let n = self.p("n")?;
                let inside = one.add(&s.pow(n).map_err(dom)?).ln().map_err(dom)?;
                if inside.is_zero() {
                    Value::zero()
                } else {
                    inside.pow(&n.recip()).map_err(dom)?
                }
            }
            15 => self.inner()?.eval(std::slice::from_ref(s))?,
            16 => s.div(&one.add(s).pow(self.p("r")?).map_err(dom)?).map_err(dom)?,
            _ => unreachable!("entry numbers are validated on construction"),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ten_pow_neg;

    fn f(n: u8) -> FunctionSpec {
        CClassEntry::new(n).unwrap().default_spec()
    }

    #[test]
    fn every_default_spec_validates() {
        for n in CCLASS_ENTRIES {
            f(n).validate().unwrap_or_else(|e| panic!("entry {n}: {e}"));
        }
    }

    #[test]
    fn exact_entries_stay_exact() {
        for n in [1, 2, 3, 8, 9, 10, 11, 12, 13, 15, 16] {
            let v = f(n).eval2(&rat(3, 2), &rat(1, 4)).unwrap();
            assert!(v.is_exact(), "entry {n}");
        }
        assert_eq!(f(1).eval2(&int(5), &int(2)).unwrap().as_rational(), Some(&int(3)));
        assert_eq!(f(16).eval2(&int(1), &int(9)).unwrap().as_rational(), Some(&rat(1, 2)));
        // 8: 1 - (2/3)(1/2) = 2/3
        assert_eq!(f(8).eval2(&int(1), &int(1)).unwrap().as_rational(), Some(&rat(2, 3)));
        // 13: 2 - (3/2)(1) = 1/2
        assert_eq!(f(13).eval2(&int(2), &int(1)).unwrap().as_rational(), Some(&rat(1, 2)));
    }

    #[test]
    fn transcendental_entries_hit_boundaries() {
        let tol = ten_pow_neg(40);
        // log identity: F(s, 0) = s for entries 4 and 7
        for n in [4, 7] {
            let v = f(n).eval2(&rat(5, 4), &int(0)).unwrap();
            assert!(v.approx_eq(&Value::Exact(rat(5, 4)), &tol), "entry {n}: {v}");
        }
        // entry 6 at t = 0 is (s + l) - l
        let v = f(6).eval2(&rat(7, 3), &int(0)).unwrap();
        assert!(v.approx_eq(&Value::Exact(rat(7, 3)), &tol));
        // entry 5 at s = 0 is ln 1 = 0
        assert!(f(5).eval2(&int(0), &int(3)).unwrap().is_zero());
        // entry 14 at s = 1, n = 2: sqrt(ln 2) = 0.83255461115769775635...
        let v = f(14).eval2(&int(1), &int(0)).unwrap();
        assert!(
            v.to_real().to_decimal_string(20).starts_with("0.83255461115769775635"),
            "{v}"
        );
    }

    #[test]
    fn parameter_constraints() {
        let bad = [
            FunctionSpec::cclass(2, &[("m", int(1))]),
            FunctionSpec::cclass(3, &[("r", int(0))]),
            FunctionSpec::cclass(4, &[("a", int(1))]),
            FunctionSpec::cclass(5, &[("a", rat(2718, 1000))]),
            FunctionSpec::cclass(6, &[("l", int(1)), ("r", int(1))]),
            FunctionSpec::cclass(10, &[("k", int(0))]),
            FunctionSpec::cclass(14, &[("n", rat(1, 2))]),
        ];
        for spec in bad {
            assert!(matches!(
                spec.unwrap().validate(),
                Err(FunctionError::ParameterOutOfRange { .. })
            ));
        }
        assert!(matches!(
            FunctionSpec::cclass(2, &[]).unwrap().validate(),
            Err(FunctionError::MissingParameter { entry: 2, param: "m" })
        ));
        assert!(matches!(
            FunctionSpec::cclass(9, &[]).unwrap().validate(),
            Err(FunctionError::MissingInner { entry: 9 })
        ));
        assert!(CClassEntry::parse("cclass_17").is_err());
        assert_eq!(CClassEntry::parse("cclass_7").unwrap().number(), 7);
    }

    #[test]
    fn domain_errors_propagate() {
        // ln(t + a) with t + a <= 0 is outside the domain
        let v = f(7).eval(&[Value::Exact(int(1)), Value::Exact(int(-3))]);
        assert!(matches!(v, Err(FunctionError::DomainError { .. })));
    }
}
