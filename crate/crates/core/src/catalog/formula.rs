use std::fmt;

use num_traits::{One, Zero};

use super::domain::{Mobius, Q};

/// Rational operations, each with a closed-form left division.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExactFormula {
    /// `alpha (x + y) + beta`
    Affine { alpha: Q, beta: Q },
    /// `k x y / (x + y)`
    Harmonic { k: Q },
    /// `x + y + s x y`
    Bilinear { s: Q },
    /// `(x + y) / (1 + x y)`
    Einstein,
}

/// Where `x ⊕ x = x` holds, before intersecting with a domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Diagonal {
    Everywhere,
    Points(Vec<Q>),
}

impl ExactFormula {
    /// `None` where the formula divides by zero.
    pub fn eval(&self, x: &Q, y: &Q) -> Option<Q> {
        match self {
            ExactFormula::Affine { alpha, beta } => Some(alpha * (x + y) + beta),
            ExactFormula::Harmonic { k } => {
                let den = x + y;
                (!den.is_zero()).then(|| k * x * y / den)
            }
            ExactFormula::Bilinear { s } => Some(x + y + s * x * y),
            ExactFormula::Einstein => {
                let den = Q::one() + x * y;
                (!den.is_zero()).then(|| (x + y) / den)
            }
        }
    }

    /// The `x` with `x ⊕ a = b`, ignoring the domain. The candidate from the
    /// closed form is confirmed by evaluating it.
    pub fn solve(&self, a: &Q, b: &Q) -> Option<Q> {
        let x = match self {
            ExactFormula::Affine { alpha, beta } => {
                if alpha.is_zero() {
                    return None;
                }
                (b - beta) / alpha - a
            }
            ExactFormula::Harmonic { k } => {
                let den = k * a - b;
                if den.is_zero() {
                    return None;
                }
                a * b / den
            }
            ExactFormula::Bilinear { s } => {
                let den = Q::one() + s * a;
                if den.is_zero() {
                    return None;
                }
                (b - a) / den
            }
            ExactFormula::Einstein => {
                let den = Q::one() - a * b;
                if den.is_zero() {
                    return None;
                }
                (b - a) / den
            }
        };
        (self.eval(&x, a).as_ref() == Some(b)).then_some(x)
    }

    /// `b ↦ 2_e(b)` as a fractional-linear map.
    pub fn doubling_map(&self, e: &Q) -> Option<Mobius> {
        let one = Q::one();
        let zero = Q::zero();
        Some(match self {
            ExactFormula::Affine { alpha, beta } => {
                if alpha.is_zero() {
                    return None;
                }
                Mobius::affine(&one / alpha, -(beta / alpha) - e)
            }
            ExactFormula::Harmonic { k } => Mobius {
                p: e.clone(),
                q: zero,
                r: -one,
                s: k * e,
            },
            ExactFormula::Bilinear { s } => {
                let den = &one + s * e;
                if den.is_zero() {
                    return None;
                }
                Mobius::affine(&one / &den, -(e / &den))
            }
            ExactFormula::Einstein => Mobius {
                p: one.clone(),
                q: -e.clone(),
                r: -e.clone(),
                s: one,
            },
        })
    }

    /// `a ↦ -_e(a)` as a fractional-linear map.
    pub fn negation_map(&self, e: &Q) -> Option<Mobius> {
        let one = Q::one();
        Some(match self {
            ExactFormula::Affine { alpha, beta } => {
                if alpha.is_zero() {
                    return None;
                }
                Mobius::affine(-one, (e - beta) / alpha)
            }
            ExactFormula::Harmonic { k } => Mobius {
                p: e.clone(),
                q: Q::zero(),
                r: k.clone(),
                s: -e.clone(),
            },
            ExactFormula::Bilinear { s } => Mobius {
                p: -one.clone(),
                q: e.clone(),
                r: s.clone(),
                s: one,
            },
            ExactFormula::Einstein => Mobius {
                p: -one.clone(),
                q: e.clone(),
                r: -e.clone(),
                s: one,
            },
        })
    }

    /// Solutions of `x ⊕ x = x`.
    pub fn diagonal(&self) -> Diagonal {
        let two = Q::from_integer(2.into());
        match self {
            ExactFormula::Affine { alpha, beta } => {
                let c = &two * alpha - Q::one();
                if c.is_zero() {
                    if beta.is_zero() {
                        Diagonal::Everywhere
                    } else {
                        Diagonal::Points(vec![])
                    }
                } else {
                    Diagonal::Points(vec![-(beta / c)])
                }
            }
            // k x / 2 = x away from the pole at 0.
            ExactFormula::Harmonic { k } => {
                if *k == two {
                    Diagonal::Everywhere
                } else {
                    Diagonal::Points(vec![])
                }
            }
            ExactFormula::Bilinear { s } => {
                let mut pts = vec![Q::zero()];
                if !s.is_zero() {
                    pts.push(-(Q::one() / s));
                }
                Diagonal::Points(pts)
            }
            ExactFormula::Einstein => Diagonal::Points(vec![-Q::one(), Q::zero(), Q::one()]),
        }
    }
}

impl fmt::Display for ExactFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactFormula::Affine { alpha, beta } if beta.is_zero() => write!(f, "{alpha}(a+b)"),
            ExactFormula::Affine { alpha, beta } => write!(f, "{alpha}(a+b)+{beta}"),
            ExactFormula::Harmonic { k } => write!(f, "{k}ab/(a+b)"),
            ExactFormula::Bilinear { s } => write!(f, "a+b+({s})ab"),
            ExactFormula::Einstein => f.write_str("(a+b)/(1+ab)"),
        }
    }
}

/// Operations involving roots or logarithms, evaluated in `f64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FloatFormula {
    /// `sqrt(x y)`
    Geometric,
    /// `cbrt((x³ + y³) / 2)`
    CubicMean,
    /// `2 cbrt(x³ + y³)`
    CubicDouble,
    /// `ln(exp x + exp y)`
    LogSumExp,
}

impl FloatFormula {
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        match self {
            FloatFormula::Geometric => (x * y).sqrt(),
            FloatFormula::CubicMean => ((x.powi(3) + y.powi(3)) / 2.0).cbrt(),
            FloatFormula::CubicDouble => 2.0 * (x.powi(3) + y.powi(3)).cbrt(),
            FloatFormula::LogSumExp => {
                let m = x.max(y);
                m + ((x - m).exp() + (y - m).exp()).ln()
            }
        }
    }

    /// Solutions of `x ⊕ x = x`, from the closed forms.
    pub fn diagonal(&self) -> Diagonal {
        match self {
            FloatFormula::Geometric | FloatFormula::CubicMean => Diagonal::Everywhere,
            // 2 cbrt(2) x = x only at 0.
            FloatFormula::CubicDouble => Diagonal::Points(vec![Q::zero()]),
            // ln 2 + x never equals x.
            FloatFormula::LogSumExp => Diagonal::Points(vec![]),
        }
    }

    /// Coordinate in which the operation is affine: `t³` for the cubic
    /// families, `exp t` for log-sum-exp and `ln t` for the geometric mean.
    pub fn chart(&self, t: f64) -> f64 {
        match self {
            FloatFormula::Geometric => t.ln(),
            FloatFormula::CubicMean | FloatFormula::CubicDouble => t.powi(3),
            FloatFormula::LogSumExp => t.exp(),
        }
    }

    pub fn solve(&self, a: f64, b: f64) -> Option<f64> {
        let x = match self {
            FloatFormula::Geometric => b * b / a,
            FloatFormula::CubicMean => (2.0 * b.powi(3) - a.powi(3)).cbrt(),
            FloatFormula::CubicDouble => (b.powi(3) / 8.0 - a.powi(3)).cbrt(),
            FloatFormula::LogSumExp => {
                if b <= a {
                    return None;
                }
                b + (-(a - b).exp()).ln_1p()
            }
        };
        x.is_finite().then_some(x)
    }
}

impl fmt::Display for FloatFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FloatFormula::Geometric => "sqrt(ab)",
            FloatFormula::CubicMean => "cbrt((a^3+b^3)/2)",
            FloatFormula::CubicDouble => "2cbrt(a^3+b^3)",
            FloatFormula::LogSumExp => "log(exp(a)+exp(b))",
        })
    }
}
