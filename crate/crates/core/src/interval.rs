//! Intervals over the exact rationals with open/closed/unbounded ends,
//! used for annulus skeletons in log coordinates.

use serde_json::{json, Value};

use crate::rational::{format_rational, parse_rational};
use crate::{Error, Rational, Result};

/// One end of an interval. For a lower end `Unbounded` means `-inf`,
/// for an upper end `+inf`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    Unbounded,
    Open(Rational),
    Closed(Rational),
}

impl Bound {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            Bound::Unbounded => None,
            Bound::Open(v) | Bound::Closed(v) => Some(v),
        }
    }

    pub fn is_closed(&self) -> bool {
        matches!(self, Bound::Closed(_))
    }

    fn map(&self, f: impl FnOnce(&Rational) -> Rational) -> Bound {
        match self {
            Bound::Unbounded => Bound::Unbounded,
            Bound::Open(v) => Bound::Open(f(v)),
            Bound::Closed(v) => Bound::Closed(f(v)),
        }
    }

    fn to_wire(&self, inf: &str) -> (String, bool) {
        match self {
            Bound::Unbounded => (inf.to_string(), false),
            Bound::Open(v) => (format_rational(v), false),
            Bound::Closed(v) => (format_rational(v), true),
        }
    }

    fn from_wire(s: &str, closed: bool, inf: &str) -> Result<Bound> {
        if s == inf {
            return Ok(Bound::Unbounded);
        }
        let v = parse_rational(s)?;
        Ok(if closed {
            Bound::Closed(v)
        } else {
            Bound::Open(v)
        })
    }
}

/// An interval of the rational line with flagged ends.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Bound,
    pub hi: Bound,
}

impl Interval {
    pub fn new(lo: Bound, hi: Bound) -> Self {
        Interval { lo, hi }
    }

    pub fn open(lo: Rational, hi: Rational) -> Self {
        Interval::new(Bound::Open(lo), Bound::Open(hi))
    }

    pub fn closed(lo: Rational, hi: Rational) -> Self {
        Interval::new(Bound::Closed(lo), Bound::Closed(hi))
    }

    pub fn singleton(v: Rational) -> Self {
        Interval::closed(v.clone(), v)
    }

    pub fn contains(&self, t: &Rational) -> bool {
        let lo_ok = match &self.lo {
            Bound::Unbounded => true,
            Bound::Open(v) => t > v,
            Bound::Closed(v) => t >= v,
        };
        let hi_ok = match &self.hi {
            Bound::Unbounded => true,
            Bound::Open(v) => t < v,
            Bound::Closed(v) => t <= v,
        };
        lo_ok && hi_ok
    }

    pub fn is_empty(&self) -> bool {
        match (self.lo.value(), self.hi.value()) {
            (Some(lo), Some(hi)) => match lo.cmp(hi) {
                std::cmp::Ordering::Greater => true,
                std::cmp::Ordering::Equal => !(self.lo.is_closed() && self.hi.is_closed()),
                std::cmp::Ordering::Less => false,
            },
            _ => false,
        }
    }

    /// Nonempty interior, i.e. the open core (lo, hi) is nonempty.
    pub fn has_interior(&self) -> bool {
        match (self.lo.value(), self.hi.value()) {
            (Some(lo), Some(hi)) => lo < hi,
            _ => true,
        }
    }

    /// Whether `t` lies in the open interior, ignoring end flags.
    pub fn interior_contains(&self, t: &Rational) -> bool {
        let lo_ok = self.lo.value().is_none_or(|v| t > v);
        let hi_ok = self.hi.value().is_none_or(|v| t < v);
        lo_ok && hi_ok
    }

    /// Set containment of `sub` in `self`, flag-aware.
    pub fn contains_interval(&self, sub: &Interval) -> bool {
        if sub.is_empty() {
            return true;
        }
        let lo_ok = match (&self.lo, &sub.lo) {
            (Bound::Unbounded, _) => true,
            (_, Bound::Unbounded) => false,
            (Bound::Open(a), Bound::Open(b)) | (Bound::Closed(a), Bound::Closed(b)) => b >= a,
            (Bound::Open(a), Bound::Closed(b)) => b > a,
            (Bound::Closed(a), Bound::Open(b)) => b >= a,
        };
        let hi_ok = match (&self.hi, &sub.hi) {
            (Bound::Unbounded, _) => true,
            (_, Bound::Unbounded) => false,
            (Bound::Open(a), Bound::Open(b)) | (Bound::Closed(a), Bound::Closed(b)) => b <= a,
            (Bound::Open(a), Bound::Closed(b)) => b < a,
            (Bound::Closed(a), Bound::Open(b)) => b <= a,
        };
        lo_ok && hi_ok
    }

    /// Image under `t -> t + c`.
    pub fn shift(&self, c: &Rational) -> Interval {
        Interval {
            lo: self.lo.map(|v| v + c),
            hi: self.hi.map(|v| v + c),
        }
    }

    /// Image under `t -> c - t`; the ends swap.
    pub fn flip(&self, c: &Rational) -> Interval {
        Interval {
            lo: self.hi.map(|v| c - v),
            hi: self.lo.map(|v| c - v),
        }
    }

    pub fn to_json(&self) -> Value {
        let (lo, lo_closed) = self.lo.to_wire("-inf");
        let (hi, hi_closed) = self.hi.to_wire("inf");
        json!({
            "lo": lo,
            "hi": hi,
            "lo_closed": lo_closed,
            "hi_closed": hi_closed,
        })
    }

    pub fn from_json(v: &Value) -> Result<Interval> {
        let field = |k: &str| -> Result<&str> {
            v.get(k).and_then(Value::as_str).ok_or(Error::BadFormat {
                what: "interval",
                detail: format!("missing string field {k:?}"),
            })
        };
        let flag = |k: &str| v.get(k).and_then(Value::as_bool).unwrap_or(false);
        Ok(Interval {
            lo: Bound::from_wire(field("lo")?, flag("lo_closed"), "-inf")?,
            hi: Bound::from_wire(field("hi")?, flag("hi_closed"), "inf")?,
        })
    }
}
