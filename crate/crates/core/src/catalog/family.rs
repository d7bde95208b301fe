use std::fmt;

use serde::{Deserialize, Serialize};


use super::domain::{to_f64, Domain, Q};
use super::formula::{ExactFormula, FloatFormula};
use crate::classify::Label;
use crate::error::{Error, Result};

/// Absolute tolerance for float-mode comparisons.
pub const FLOAT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Formula {
    Exact(ExactFormula),
    Float(FloatFormula),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Exact(Q),
    Float(f64),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(v) => write!(f, "{v}"),
            Value::Float(v) => write!(f, "{v}"),
        }
    }
}

/// An operation on an interval of the rationals (or reals, in float mode).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Family {
    pub id: String,
    pub formula: Formula,
    pub domain: Domain,
    /// Designated idempotent unit for classification.
    pub unit: Option<Q>,
    pub expected: Option<Label>,
    pub expected_associative: Option<bool>,
    /// Interval used for default samples instead of the domain's own window.
    pub sample_window: Option<(Q, Q)>,
}

impl Family {
    pub fn mode(&self) -> Mode {
        match self.formula {
            Formula::Exact(_) => Mode::Exact,
            Formula::Float(_) => Mode::Float,
        }
    }

    pub fn describe(&self) -> String {
        match &self.formula {
            Formula::Exact(f) => f.to_string(),
            Formula::Float(f) => f.to_string(),
        }
    }

    pub fn value(&self, x: &Q) -> Value {
        match self.formula {
            Formula::Exact(_) => Value::Exact(x.clone()),
            Formula::Float(_) => Value::Float(to_f64(x)),
        }
    }

    fn check_member(&self, v: &Value) -> Result<()> {
        let inside = match v {
            Value::Exact(x) => self.domain.contains(x),
            Value::Float(x) => self.domain.contains_f64(*x),
        };
        if inside {
            Ok(())
        } else {
            Err(Error::OutsideDomain {
                value: v.to_string(),
                domain: self.domain.to_string(),
            })
        }
    }

    /// `x ⊕ y`, rejecting inputs outside the domain, degenerate points and
    /// results that leave the domain.
    pub fn evaluate(&self, x: &Value, y: &Value) -> Result<Value> {
        self.check_member(x)?;
        self.check_member(y)?;
        let degenerate = || Error::Degenerate(x.to_string(), y.to_string());
        let out = match (&self.formula, x, y) {
            (Formula::Exact(f), Value::Exact(a), Value::Exact(b)) => {
                Value::Exact(f.eval(a, b).ok_or_else(degenerate)?)
            }
            (Formula::Float(f), Value::Float(a), Value::Float(b)) => {
                let v = f.eval(*a, *b);
                if !v.is_finite() {
                    return Err(degenerate());
                }
                Value::Float(v)
            }
            _ => {
                return Err(Error::SignatureMismatch(
                    "value mode differs from family mode".into(),
                ))
            }
        };
        if self.check_member(&out).is_err() {
            return Err(Error::ClosureViolation {
                x: x.to_string(),
                y: y.to_string(),
                result: out.to_string(),
                domain: self.domain.to_string(),
            });
        }
        Ok(out)
    }

    /// The in-domain `x` with `x ⊕ a = b`, if any.
    pub fn solve_left(&self, a: &Value, b: &Value) -> Result<Option<Value>> {
        self.check_member(a)?;
        self.check_member(b)?;
        Ok(match (&self.formula, a, b) {
            (Formula::Exact(f), Value::Exact(a), Value::Exact(b)) => f
                .solve(a, b)
                .filter(|x| self.domain.contains(x))
                .map(Value::Exact),
            (Formula::Float(f), Value::Float(a), Value::Float(b)) => f
                .solve(*a, *b)
                .filter(|&x| self.domain.contains_f64(x))
                .filter(|&x| (f.eval(x, *a) - b).abs() <= FLOAT_TOLERANCE)
                .map(Value::Float),
            _ => {
                return Err(Error::SignatureMismatch(
                    "value mode differs from family mode".into(),
                ))
            }
        })
    }
}

/// Arithmetic shared by the samplers, specialised per mode.
pub(crate) trait Arith {
    type V: Clone;
    fn op(&self, x: &Self::V, y: &Self::V) -> Option<Self::V>;
    /// In-domain solution of `x ⊕ a = b`.
    fn solve(&self, a: &Self::V, b: &Self::V) -> Option<Self::V>;
    fn contains(&self, v: &Self::V) -> bool;
    fn same(&self, x: &Self::V, y: &Self::V) -> bool;
    fn residual(&self, x: &Self::V, y: &Self::V) -> f64;
    fn show(&self, v: &Self::V) -> String;
    /// Equality for values produced by chains of inverses, where precision
    /// can be lost; defaults to [`Arith::same`].
    fn same_derived(&self, x: &Self::V, y: &Self::V) -> bool {
        self.same(x, y)
    }
}

pub(crate) struct ExactArith<'a> {
    pub formula: &'a ExactFormula,
    pub domain: &'a Domain,
}

impl Arith for ExactArith<'_> {
    type V = Q;

    fn op(&self, x: &Q, y: &Q) -> Option<Q> {
        self.formula.eval(x, y)
    }

    fn solve(&self, a: &Q, b: &Q) -> Option<Q> {
        self.formula.solve(a, b).filter(|x| self.domain.contains(x))
    }

    fn contains(&self, v: &Q) -> bool {
        self.domain.contains(v)
    }

    fn same(&self, x: &Q, y: &Q) -> bool {
        x == y
    }

    fn residual(&self, x: &Q, y: &Q) -> f64 {
        to_f64(&(x - y)).abs()
    }

    fn show(&self, v: &Q) -> String {
        v.to_string()
    }
}

pub(crate) struct FloatArith<'a> {
    pub formula: FloatFormula,
    pub domain: &'a Domain,
}

impl Arith for FloatArith<'_> {
    type V = f64;

    fn op(&self, x: &f64, y: &f64) -> Option<f64> {
        Some(self.formula.eval(*x, *y)).filter(|v| v.is_finite())
    }

    fn solve(&self, a: &f64, b: &f64) -> Option<f64> {
        self.formula
            .solve(*a, *b)
            .filter(|&x| self.domain.contains_f64(x))
            .filter(|&x| (self.formula.eval(x, *a) - b).abs() <= FLOAT_TOLERANCE)
    }

    fn contains(&self, v: &f64) -> bool {
        self.domain.contains_f64(*v)
    }

    fn same(&self, x: &f64, y: &f64) -> bool {
        (x - y).abs() <= FLOAT_TOLERANCE
    }

    fn residual(&self, x: &f64, y: &f64) -> f64 {
        (x - y).abs()
    }

    fn show(&self, v: &f64) -> String {
        v.to_string()
    }

    /// Compares in the formula's chart with a tolerance relative to the
    /// magnitude there, since root-based inverses amplify rounding near 0.
    fn same_derived(&self, x: &f64, y: &f64) -> bool {
        let (cx, cy) = (self.formula.chart(*x), self.formula.chart(*y));
        self.same(x, y) || (cx - cy).abs() <= FLOAT_TOLERANCE * cx.abs().max(cy.abs()).max(1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::domain::{q, qi, Bound};

    fn h() -> Family {
        Family {
            id: "H".into(),
            formula: Formula::Exact(ExactFormula::Harmonic { k: qi(2) }),
            domain: Domain::new(Bound::Open(qi(0)), Bound::Closed(qi(1))),
            unit: Some(qi(1)),
            expected: Some(Label::II),
            expected_associative: Some(false),
            sample_window: None,
        }
    }

    fn mid() -> Family {
        Family {
            id: "MID".into(),
            formula: Formula::Exact(ExactFormula::Affine {
                alpha: q(1, 2),
                beta: qi(0),
            }),
            domain: Domain::new(Bound::Closed(qi(0)), Bound::Closed(qi(1))),
            unit: Some(q(1, 2)),
            expected: Some(Label::III),
            expected_associative: Some(false),
            sample_window: None,
        }
    }

    fn ex(v: Q) -> Value {
        Value::Exact(v)
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(h().evaluate(&ex(q(1, 2)), &ex(q(1, 2))).unwrap(), ex(q(1, 2)));
        assert_eq!(h().evaluate(&ex(q(1, 2)), &ex(qi(1))).unwrap(), ex(q(2, 3)));
        assert_eq!(mid().evaluate(&ex(qi(0)), &ex(qi(1))).unwrap(), ex(q(1, 2)));
        assert!(matches!(
            h().evaluate(&ex(qi(0)), &ex(qi(1))),
            Err(Error::OutsideDomain { .. })
        ));
    }

    #[test]
    fn closure_violation_reported() {
        let mut f = mid();
        f.formula = Formula::Exact(ExactFormula::Affine {
            alpha: qi(1),
            beta: qi(0),
        });
        assert!(matches!(
            f.evaluate(&ex(qi(1)), &ex(qi(1))),
            Err(Error::ClosureViolation { .. })
        ));
    }

    #[test]
    fn solve_examples() {
        assert_eq!(h().solve_left(&ex(qi(1)), &ex(q(1, 2))).unwrap(), Some(ex(q(1, 3))));
        // 2_{1/2}(1) would be 3/2.
        assert_eq!(mid().solve_left(&ex(q(1, 2)), &ex(qi(1))).unwrap(), None);
        assert_eq!(
            mid().solve_left(&ex(q(1, 2)), &ex(q(1, 2))).unwrap(),
            Some(ex(q(1, 2)))
        );
    }
}
