//! Altering-distance functions, weights and controls, and C-class functions.
//!
//! Unary functions are written as ordered pieces of rational-coefficient
//! sums `sum c_i t^{e_i}`; integer exponents keep evaluation exact, fractional
//! exponents are exact when the root is rational and approximate otherwise.
//! Binary functions come from the sixteen-entry C-class catalog.

mod catalog;
mod verify;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

pub use catalog::{CClassEntry, CCLASS_ENTRIES};
pub use verify::{
    check_monotone_tripled, default_cclass_tolerance, grid_1d, grid_2d, verify_altering, verify_cclass, verify_lsc,
    verify_phi_u, verify_usc, Continuity, Property, PropertyReport, PropertyWitness, SemicontinuityOptions,
    TripledSpec,
};

use crate::numeric::{NumericError, Value};
use crate::rational::{label_for, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FunctionError {
    #[error("{name} takes {expected} argument(s), got {got}")]
    ArityMismatch { name: String, expected: usize, got: usize },
    #[error("{name}: {detail}")]
    DomainError { name: String, detail: String },
    #[error("catalog entry {entry}: parameter {param} = {value} violates {constraint}")]
    ParameterOutOfRange {
        entry: u8,
        param: &'static str,
        value: String,
        constraint: &'static str,
    },
    #[error("catalog entry {entry} needs parameter {param}")]
    MissingParameter { entry: u8, param: &'static str },
    #[error("catalog entry {entry} needs an inner function")]
    MissingInner { entry: u8 },
    #[error("unknown catalog entry {0:?}")]
    UnknownEntry(String),
    #[error("grid must be nonempty, sorted, and contain 0")]
    InvalidGrid,
}

impl FunctionError {
    fn domain(name: impl Into<String>, err: NumericError) -> Self {
        FunctionError::DomainError {
            name: name.into(),
            detail: err.to_string(),
        }
    }
}

/// `coef * t^exp`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coef: Rational,
    pub exp: Rational,
}

/// One piece of a piecewise function, active on `[from, to)` (or `[from, to]`
/// when `include_to` is set). `to = None` means unbounded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    pub from: Rational,
    pub to: Option<Rational>,
    pub include_to: bool,
    pub terms: Vec<Term>,
}

impl Piece {
    /// Piece from a coefficient list, constant term first.
    pub fn poly(from: Rational, to: Option<Rational>, coeffs: &[Rational]) -> Self {
        let terms = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| Term {
                coef: c.clone(),
                exp: Rational::from_integer(i.into()),
            })
            .collect();
        Piece {
            from,
            to,
            include_to: false,
            terms,
        }
    }

    pub fn closed(mut self) -> Self {
        self.include_to = true;
        self
    }

    fn contains(&self, t: &Rational) -> bool {
        if t < &self.from {
            return false;
        }
        match &self.to {
            None => true,
            Some(to) => t < to || (self.include_to && t == to),
        }
    }

    fn contains_value(&self, t: &Value) -> bool {
        if t.cmp_value(&Value::Exact(self.from.clone())).is_lt() {
            return false;
        }
        match &self.to {
            None => true,
            Some(to) => {
                let c = t.cmp_value(&Value::Exact(to.clone()));
                c.is_lt() || (self.include_to && c.is_eq())
            }
        }
    }

    fn eval(&self, t: &Value) -> Result<Value, NumericError> {
        let mut acc = Value::zero();
        for term in &self.terms {
            let p = t.pow(&term.exp)?;
            acc = acc.add(&Value::Exact(term.coef.clone()).mul(&p));
        }
        Ok(acc)
    }
}

/// Ordered pieces; the first piece containing the argument is used.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piecewise {
    pub pieces: Vec<Piece>,
}

impl Piecewise {
    fn eval(&self, t: &Value) -> Result<Value, FunctionError> {
        let piece = match t {
            Value::Exact(r) => self.pieces.iter().find(|p| p.contains(r)),
            Value::Approx(_) => self.pieces.iter().find(|p| p.contains_value(t)),
        };
        let piece = piece.ok_or_else(|| FunctionError::DomainError {
            name: self.to_string(),
            detail: format!("argument {t} is outside every piece"),
        })?;
        piece.eval(t).map_err(|e| FunctionError::domain(self.to_string(), e))
    }

    /// Breakpoints where the left piece's value differs from the right piece's.
    pub fn jumps(&self) -> Vec<Rational> {
        let mut out = Vec::new();
        for w in self.pieces.windows(2) {
            let (left, right) = (&w[0], &w[1]);
            let Some(b) = &left.to else { continue };
            if b != &right.from {
                continue;
            }
            let at = Value::Exact(b.clone());
            match (left.eval(&at), right.eval(&at)) {
                (Ok(l), Ok(r)) if l.cmp_value(&r).is_eq() => {}
                _ => out.push(b.clone()),
            }
        }
        out
    }
}

impl fmt::Display for Piecewise {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pieces: Vec<String> = self
            .pieces
            .iter()
            .map(|p| {
                let terms: Vec<String> = p
                    .terms
                    .iter()
                    .map(|t| {
                        if t.exp.is_zero() {
                            label_for(&t.coef)
                        } else if t.exp.is_one() {
                            format!("{}*t", label_for(&t.coef))
                        } else {
                            format!("{}*t^({})", label_for(&t.coef), label_for(&t.exp))
                        }
                    })
                    .collect();
                let body = if terms.is_empty() {
                    "0".to_owned()
                } else {
                    terms.join(" + ")
                };
                let close = if p.include_to { "]" } else { ")" };
                match &p.to {
                    Some(to) => format!("{body} on [{}, {}{close}", label_for(&p.from), label_for(to)),
                    None => format!("{body} on [{}, inf)", label_for(&p.from)),
                }
            })
            .collect();
        write!(f, "piecewise{{{}}}", pieces.join("; "))
    }
}

/// A C-class catalog instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CClassSpec {
    pub entry: CClassEntry,
    pub params: BTreeMap<String, Rational>,
    pub inner: Option<Box<FunctionSpec>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FunctionSpec {
    /// Binary C-class catalog entry.
    CClass(CClassSpec),
    /// Unary piecewise function on `[0, inf)`.
    Piecewise(Piecewise),
    /// `F(s, t) = t`. Turns the contraction's right side into the bare
    /// control value; not a C-class function.
    SecondArgument,
}

impl FunctionSpec {
    /// `c0 + c1 t + c2 t^2 + ...` on `[0, inf)`.
    pub fn poly(coeffs: &[Rational]) -> Self {
        FunctionSpec::Piecewise(Piecewise {
            pieces: vec![Piece::poly(Rational::zero(), None, coeffs)],
        })
    }

    /// `k * t`.
    pub fn linear(k: Rational) -> Self {
        FunctionSpec::poly(&[Rational::zero(), k])
    }

    /// `coef * t^exp` on `[0, inf)`.
    pub fn monomial(coef: Rational, exp: Rational) -> Self {
        FunctionSpec::Piecewise(Piecewise {
            pieces: vec![Piece {
                from: Rational::zero(),
                to: None,
                include_to: false,
                terms: vec![Term { coef, exp }],
            }],
        })
    }

    pub fn piecewise(pieces: Vec<Piece>) -> Self {
        FunctionSpec::Piecewise(Piecewise { pieces })
    }

    /// Catalog entry `n` (1..=16) with the given parameters and no inner function.
    pub fn cclass(n: u8, params: &[(&str, Rational)]) -> Result<Self, FunctionError> {
        let entry = CClassEntry::new(n)?;
        let spec = CClassSpec {
            entry,
            params: params.iter().map(|(k, v)| ((*k).to_owned(), v.clone())).collect(),
            inner: None,
        };
        Ok(FunctionSpec::CClass(spec))
    }

    pub fn with_inner(self, inner: FunctionSpec) -> Self {
        match self {
            FunctionSpec::CClass(mut c) => {
                c.inner = Some(Box::new(inner));
                FunctionSpec::CClass(c)
            }
            other => other,
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            FunctionSpec::Piecewise(_) => 1,
            FunctionSpec::CClass(_) | FunctionSpec::SecondArgument => 2,
        }
    }

    /// Whether evaluation on rational arguments can leave the rationals.
    pub fn is_transcendental(&self) -> bool {
        match self {
            FunctionSpec::Piecewise(p) => p.pieces.iter().flat_map(|p| &p.terms).any(|t| !t.exp.is_integer()),
            FunctionSpec::CClass(c) => c.is_transcendental(),
            FunctionSpec::SecondArgument => false,
        }
    }

    /// Checks catalog parameter constraints, recursively.
    pub fn validate(&self) -> Result<(), FunctionError> {
        match self {
            FunctionSpec::CClass(c) => c.validate(),
            _ => Ok(()),
        }
    }

    pub fn eval(&self, args: &[Value]) -> Result<Value, FunctionError> {
        if args.len() != self.arity() {
            return Err(FunctionError::ArityMismatch {
                name: self.to_string(),
                expected: self.arity(),
                got: args.len(),
            });
        }
        match self {
            FunctionSpec::Piecewise(p) => p.eval(&args[0]),
            FunctionSpec::CClass(c) => c.eval(&args[0], &args[1]),
            FunctionSpec::SecondArgument => Ok(args[1].clone()),
        }
    }

    pub fn eval1(&self, t: &Rational) -> Result<Value, FunctionError> {
        self.eval(&[Value::Exact(t.clone())])
    }

    pub fn eval2(&self, s: &Rational, t: &Rational) -> Result<Value, FunctionError> {
        self.eval(&[Value::Exact(s.clone()), Value::Exact(t.clone())])
    }
}

impl fmt::Display for FunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctionSpec::Piecewise(p) => p.fmt(f),
            FunctionSpec::CClass(c) => {
                write!(f, "cclass_{}", c.entry.number())?;
                if !c.params.is_empty() {
                    let ps: Vec<String> = c.params.iter().map(|(k, v)| format!("{k}={}", label_for(v))).collect();
                    write!(f, "({})", ps.join(", "))?;
                }
                if let Some(inner) = &c.inner {
                    write!(f, "[{inner}]")?;
                }
                Ok(())
            }
            FunctionSpec::SecondArgument => f.write_str("second_argument"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn piece_boundaries() {
        // t on [0,1], 2t above
        let phi = FunctionSpec::piecewise(vec![
            Piece::poly(int(0), Some(int(1)), &[int(0), int(1)]).closed(),
            Piece::poly(int(1), None, &[int(0), int(2)]),
        ]);
        assert_eq!(phi.eval1(&int(1)).unwrap().as_rational(), Some(&int(1)));
        assert_eq!(phi.eval1(&rat(3, 2)).unwrap().as_rational(), Some(&int(3)));
        // closed-open default: the later piece wins at the shared point
        let step = FunctionSpec::piecewise(vec![
            Piece::poly(int(0), Some(int(1)), &[int(0), int(1)]),
            Piece::poly(int(1), None, &[int(0), int(2)]),
        ]);
        assert_eq!(step.eval1(&int(1)).unwrap().as_rational(), Some(&int(2)));
        assert!(matches!(phi.eval1(&int(-1)), Err(FunctionError::DomainError { .. })));
        if let FunctionSpec::Piecewise(p) = &phi {
            assert_eq!(p.jumps(), vec![int(1)]);
        }
    }

    #[test]
    fn linear_psi_value() {
        let psi = FunctionSpec::linear(rat(3, 2));
        assert_eq!(psi.eval1(&rat(1, 8)).unwrap().as_rational(), Some(&rat(3, 16)));
    }

    #[test]
    fn arity_is_enforced() {
        let psi = FunctionSpec::linear(int(1));
        assert!(matches!(
            psi.eval(&[Value::zero(), Value::zero()]),
            Err(FunctionError::ArityMismatch {
                expected: 1,
                got: 2,
                ..
            })
        ));
        let f = FunctionSpec::cclass(1, &[]).unwrap();
        assert!(matches!(
            f.eval1(&int(1)),
            Err(FunctionError::ArityMismatch { expected: 2, .. })
        ));
    }

    #[test]
    fn sqrt_piece_is_exact_on_squares() {
        let f = FunctionSpec::monomial(int(1), rat(1, 2));
        assert_eq!(f.eval1(&rat(9, 16)).unwrap().as_rational(), Some(&rat(3, 4)));
        assert!(!f.eval1(&int(2)).unwrap().is_exact());
        assert!(f.is_transcendental());
    }
}
