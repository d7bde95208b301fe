use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(n.into())
}

pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bound {
    Closed(Q),
    Open(Q),
    Unbounded,
}

impl Bound {
    fn value(&self) -> Option<&Q> {
        match self {
            Bound::Closed(v) | Bound::Open(v) => Some(v),
            Bound::Unbounded => None,
        }
    }
}

/// An interval of the rationals, optionally restricted to the integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Domain {
    pub lo: Bound,
    pub hi: Bound,
    pub integral: bool,
}

impl Domain {
    pub fn new(lo: Bound, hi: Bound) -> Self {
        Domain {
            lo,
            hi,
            integral: false,
        }
    }

    pub fn reals() -> Self {
        Self::new(Bound::Unbounded, Bound::Unbounded)
    }

    /// `]0, ∞[`.
    pub fn positive() -> Self {
        Self::new(Bound::Open(Q::zero()), Bound::Unbounded)
    }

    /// `[0, ∞[`.
    pub fn non_negative() -> Self {
        Self::new(Bound::Closed(Q::zero()), Bound::Unbounded)
    }

    pub fn integers() -> Self {
        Domain {
            integral: true,
            ..Self::reals()
        }
    }

    pub fn naturals() -> Self {
        Domain {
            integral: true,
            ..Self::non_negative()
        }
    }

    pub fn contains(&self, x: &Q) -> bool {
        let lo_ok = match &self.lo {
            Bound::Closed(v) => x >= v,
            Bound::Open(v) => x > v,
            Bound::Unbounded => true,
        };
        let hi_ok = match &self.hi {
            Bound::Closed(v) => x <= v,
            Bound::Open(v) => x < v,
            Bound::Unbounded => true,
        };
        lo_ok && hi_ok && (!self.integral || x.is_integer())
    }

    pub fn contains_f64(&self, x: f64) -> bool {
        if !x.is_finite() {
            return false;
        }
        let lo_ok = match &self.lo {
            Bound::Closed(v) => x >= to_f64(v),
            Bound::Open(v) => x > to_f64(v),
            Bound::Unbounded => true,
        };
        let hi_ok = match &self.hi {
            Bound::Closed(v) => x <= to_f64(v),
            Bound::Open(v) => x < to_f64(v),
            Bound::Unbounded => true,
        };
        lo_ok && hi_ok && (!self.integral || x.fract() == 0.0)
    }

    /// Evenly spaced points `start + k·step`, `k = 0..=steps`, filtered to
    /// the domain. Bounded intervals are split into `steps` parts; a half-line
    /// is sampled on a window of width 4 from its endpoint, and the whole
    /// line on `[-2, 2]`. Integer domains use unit steps from the same start.
    pub fn grid(&self, steps: usize) -> Vec<Q> {
        let steps = steps.max(1);
        let width = qi(4);
        let (start, span) = match (self.lo.value(), self.hi.value()) {
            (Some(lo), Some(hi)) => (lo.clone(), hi - lo),
            (Some(lo), None) => (lo.clone(), width),
            (None, Some(hi)) => (hi - &width, width),
            (None, None) => (-qi(2), width),
        };
        let points: Vec<Q> = if self.integral {
            let half = (steps / 2) as i64;
            let first = match (self.lo.value(), self.hi.value()) {
                (None, None) => -qi(half),
                (None, Some(hi)) => hi.floor() - qi(steps as i64),
                _ => start.ceil(),
            };
            (0..=steps as i64).map(|k| &first + qi(k)).collect()
        } else {
            let step = span / qi(steps as i64);
            (0..=steps as i64).map(|k| &start + &step * qi(k)).collect()
        };
        points.into_iter().filter(|x| self.contains(x)).collect()
    }

    pub fn grid_f64(&self, steps: usize) -> Vec<f64> {
        self.grid(steps).iter().map(to_f64).collect()
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.integral {
            match (&self.lo, &self.hi) {
                (Bound::Unbounded, Bound::Unbounded) => return f.write_str("Z"),
                (Bound::Closed(v), Bound::Unbounded) if v.is_zero() => return f.write_str("N0"),
                _ => f.write_str("Z ∩ ")?,
            }
        }
        match &self.lo {
            Bound::Closed(v) => write!(f, "[{v}")?,
            Bound::Open(v) => write!(f, "]{v}")?,
            Bound::Unbounded => f.write_str("]-inf")?,
        }
        match &self.hi {
            Bound::Closed(v) => write!(f, ", {v}]"),
            Bound::Open(v) => write!(f, ", {v}["),
            Bound::Unbounded => f.write_str(", +inf["),
        }
    }
}

/// A point of the extended line with an "attained" flag, used for images of
/// interval endpoints.
#[derive(Debug, Clone, PartialEq)]
enum End {
    NegInf,
    At(Q, bool),
    PosInf,
}

/// The map `t ↦ (p t + q) / (r t + s)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mobius {
    pub p: Q,
    pub q: Q,
    pub r: Q,
    pub s: Q,
}

impl Mobius {
    pub fn affine(slope: Q, offset: Q) -> Self {
        Mobius {
            p: slope,
            q: offset,
            r: Q::zero(),
            s: Q::one(),
        }
    }

    pub fn apply(&self, t: &Q) -> Option<Q> {
        let den = &self.r * t + &self.s;
        (!den.is_zero()).then(|| (&self.p * t + &self.q) / den)
    }

    /// Decides whether every point of `d` is mapped into `d`, using
    /// monotonicity between poles. Returns `None` for constant maps and for
    /// non-affine maps on integer domains.
    pub fn maps_into(&self, d: &Domain) -> Option<bool> {
        let det = &self.p * &self.s - &self.q * &self.r;
        if det.is_zero() {
            return None;
        }
        if d.integral {
            if !self.r.is_zero() {
                return None;
            }
            let slope = &self.p / &self.s;
            let offset = &self.q / &self.s;
            if !slope.is_integer() || !offset.is_integer() {
                return Some(false);
            }
        }
        if !self.r.is_zero() {
            let pole = -&self.s / &self.r;
            if d.contains(&pole) {
                return Some(false);
            }
        }
        let increasing = det.is_positive();
        let lo_img = self.endpoint(&d.lo, false, &det);
        let hi_img = self.endpoint(&d.hi, true, &det);
        let (low, high) = if increasing {
            (lo_img, hi_img)
        } else {
            (hi_img, lo_img)
        };
        Some(lower_within(&low, &d.lo) && upper_within(&high, &d.hi))
    }

    fn endpoint(&self, b: &Bound, upper: bool, det: &Q) -> End {
        match b {
            Bound::Unbounded => {
                if self.r.is_zero() {
                    let slope_positive = (&self.p / &self.s).is_positive();
                    if slope_positive == upper {
                        End::PosInf
                    } else {
                        End::NegInf
                    }
                } else {
                    End::At(&self.p / &self.r, false)
                }
            }
            Bound::Closed(v) | Bound::Open(v) => {
                let attained = matches!(b, Bound::Closed(_));
                match self.apply(v) {
                    Some(y) => End::At(y, attained),
                    // Near the pole the map behaves like -det / (r² (t - pole)).
                    None => {
                        let from_right = !upper;
                        if det.is_positive() != from_right {
                            End::PosInf
                        } else {
                            End::NegInf
                        }
                    }
                }
            }
        }
    }
}

fn lower_within(e: &End, b: &Bound) -> bool {
    match (e, b) {
        (_, Bound::Unbounded) => true,
        (End::NegInf, _) => false,
        (End::PosInf, _) => true,
        (End::At(v, _), Bound::Closed(l)) => v >= l,
        (End::At(v, attained), Bound::Open(l)) => v > l || (v == l && !attained),
    }
}

fn upper_within(e: &End, b: &Bound) -> bool {
    match (e, b) {
        (_, Bound::Unbounded) => true,
        (End::PosInf, _) => false,
        (End::NegInf, _) => true,
        (End::At(v, _), Bound::Closed(h)) => v <= h,
        (End::At(v, attained), Bound::Open(h)) => v < h || (v == h && !attained),
    }
}
