//! Annuli of the affine line, their skeletons in log coordinates, the
//! canonical retraction, and the isomorphism classification that
//! transports torsors between charts.
//!
//! An annulus is determined up to isomorphism by its skeleton interval
//! `J` in `t = log_p(radius)`; two annuli are isomorphic exactly when one
//! skeleton is carried onto the other by `t -> c + t` (scaling by a
//! value-group element) or `t -> c - t` (scaling composed with inversion).

use serde_json::{json, Value};

use crate::interval::{Bound, Interval};
use crate::rational::{format_rational, parse_rational};
use crate::{Error, Rational, Result};

/// Which rigid center the defining coordinate is measured from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CenterTag {
    /// Annulus `{ |T| in I }`.
    AtZero,
    /// Annulus `{ |T - 1| in I }`, kept inside the unit circle so every
    /// point has center magnitude 1.
    AtOne,
}

impl CenterTag {
    fn as_str(self) -> &'static str {
        match self {
            CenterTag::AtZero => "zero",
            CenterTag::AtOne => "one",
        }
    }
}

/// An annulus with its skeleton interval in log-radius coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Annulus {
    pub center: CenterTag,
    pub skeleton: Interval,
}

impl Annulus {
    /// Requires a skeleton with nonempty interior; annuli centered at 1
    /// must stay inside the unit circle (all radii < 1).
    pub fn new(center: CenterTag, skeleton: Interval) -> Result<Self> {
        if !skeleton.has_interior() {
            return Err(Error::NoInterior);
        }
        if center == CenterTag::AtOne {
            let inside_unit = match &skeleton.hi {
                Bound::Unbounded => false,
                Bound::Open(v) => *v <= Rational::from_integer(0.into()),
                Bound::Closed(v) => *v < Rational::from_integer(0.into()),
            };
            if !inside_unit {
                return Err(Error::UnitCenterRadiusBound);
            }
        }
        Ok(Annulus { center, skeleton })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "center": self.center.as_str(),
            "skeleton": self.skeleton.to_json(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let center = match v.get("center").and_then(Value::as_str) {
            Some("zero") => CenterTag::AtZero,
            Some("one") => CenterTag::AtOne,
            other => {
                return Err(Error::BadFormat {
                    what: "annulus",
                    detail: format!("bad center tag {other:?}"),
                })
            }
        };
        Annulus::new(center, Interval::from_json(&v["skeleton"])?)
    }
}

/// A point of an annulus in retraction coordinates: `t_ret` is the skeleton
/// position of its canonical retraction, `radius_log <= t_ret` its own log
/// radius. Skeleton points are exactly those with `radius_log = t_ret`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TubePoint {
    pub t_ret: Rational,
    pub radius_log: Rational,
}

impl TubePoint {
    pub fn new(t_ret: Rational, radius_log: Rational) -> Result<Self> {
        if radius_log > t_ret {
            return Err(Error::TransportOutOfTube);
        }
        Ok(TubePoint { t_ret, radius_log })
    }

    pub fn skeleton(t: Rational) -> Self {
        TubePoint {
            t_ret: t.clone(),
            radius_log: t,
        }
    }

    pub fn on_skeleton(&self) -> bool {
        self.radius_log == self.t_ret
    }
}

/// Retraction of a tube point onto the skeleton.
pub fn retract(pt: &TubePoint) -> Rational {
    pt.t_ret.clone()
}

/// An isomorphism of annuli in log coordinates: `t -> c + t` (shift) or
/// `t -> c - t` (flip). The flip reverses the skeleton orientation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizingMap {
    pub c: Rational,
    pub flip: bool,
}

impl NormalizingMap {
    pub fn shift(c: Rational) -> Self {
        NormalizingMap { c, flip: false }
    }

    pub fn flipped(c: Rational) -> Self {
        NormalizingMap { c, flip: true }
    }

    /// Image of a skeleton coordinate.
    pub fn apply_coord(&self, t: &Rational) -> Rational {
        if self.flip {
            &self.c - t
        } else {
            &self.c + t
        }
    }

    /// Image of a skeleton interval.
    pub fn apply_interval(&self, j: &Interval) -> Interval {
        if self.flip {
            j.flip(&self.c)
        } else {
            j.shift(&self.c)
        }
    }

    /// `other` after `self`.
    pub fn then(&self, other: &NormalizingMap) -> NormalizingMap {
        let c = if other.flip {
            &other.c - &self.c
        } else {
            &other.c + &self.c
        };
        NormalizingMap {
            c,
            flip: self.flip != other.flip,
        }
    }

    pub fn inverse(&self) -> NormalizingMap {
        if self.flip {
            self.clone()
        } else {
            NormalizingMap::shift(-self.c.clone())
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "c": format_rational(&self.c),
            "flip": self.flip,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let c = v.get("c").and_then(Value::as_str).ok_or(Error::BadFormat {
            what: "normalizing map",
            detail: "missing field c".into(),
        })?;
        Ok(NormalizingMap {
            c: parse_rational(c)?,
            flip: v.get("flip").and_then(Value::as_bool).unwrap_or(false),
        })
    }
}

fn shift_candidate(j1: &Interval, j2: &Interval) -> Option<Rational> {
    let lo = match (&j1.lo, &j2.lo) {
        (Bound::Unbounded, Bound::Unbounded) => None,
        (Bound::Open(a), Bound::Open(b)) | (Bound::Closed(a), Bound::Closed(b)) => Some(b - a),
        _ => return None,
    };
    let hi = match (&j1.hi, &j2.hi) {
        (Bound::Unbounded, Bound::Unbounded) => None,
        (Bound::Open(a), Bound::Open(b)) | (Bound::Closed(a), Bound::Closed(b)) => Some(b - a),
        _ => return None,
    };
    match (lo, hi) {
        (Some(a), Some(b)) => (a == b).then_some(a),
        (Some(a), None) | (None, Some(a)) => Some(a),
        (None, None) => Some(Rational::from_integer(0.into())),
    }
}

fn flip_candidate(j1: &Interval, j2: &Interval) -> Option<Rational> {
    // t -> c - t sends the upper end of J1 to the lower end of J2.
    let lo = match (&j1.hi, &j2.lo) {
        (Bound::Unbounded, Bound::Unbounded) => None,
        (Bound::Open(a), Bound::Open(b)) | (Bound::Closed(a), Bound::Closed(b)) => Some(b + a),
        _ => return None,
    };
    let hi = match (&j1.lo, &j2.hi) {
        (Bound::Unbounded, Bound::Unbounded) => None,
        (Bound::Open(a), Bound::Open(b)) | (Bound::Closed(a), Bound::Closed(b)) => Some(b + a),
        _ => return None,
    };
    match (lo, hi) {
        (Some(a), Some(b)) => (a == b).then_some(a),
        (Some(a), None) | (None, Some(a)) => Some(a),
        (None, None) => Some(Rational::from_integer(0.into())),
    }
}

/// Classifies two skeleton intervals up to annulus isomorphism: returns a
/// map `t -> c + t` or `t -> c - t` carrying `j1` onto `j2` with matching
/// end flags, or `None` when the annuli are not isomorphic. Shifts are
/// preferred when both kinds exist.
pub fn annuli_isomorphic(j1: &Interval, j2: &Interval) -> Option<NormalizingMap> {
    if !j1.has_interior() || !j2.has_interior() {
        return None;
    }
    if let Some(c) = shift_candidate(j1, j2) {
        let map = NormalizingMap::shift(c);
        debug_assert_eq!(map.apply_interval(j1), *j2);
        return Some(map);
    }
    if let Some(c) = flip_candidate(j1, j2) {
        let map = NormalizingMap::flipped(c);
        debug_assert_eq!(map.apply_interval(j1), *j2);
        return Some(map);
    }
    None
}

/// Transports a tube point along an annulus isomorphism.
///
/// A shift moves the whole tube rigidly; a flip `z -> c'/z` sends
/// `eta_{a,r}` to `eta_{c'/a, |c'| r / |a|^2}`, i.e.
/// `(t_ret, L) -> (c - t_ret, L + c - 2 t_ret)`. Both preserve the
/// off-skeleton depth `t_ret - L`.
pub fn transport_point(map: &NormalizingMap, pt: &TubePoint) -> TubePoint {
    let t_ret = map.apply_coord(&pt.t_ret);
    let radius_log = if map.flip {
        &pt.radius_log + &map.c - Rational::from_integer(2.into()) * &pt.t_ret
    } else {
        &pt.radius_log + &map.c
    };
    TubePoint::new(t_ret, radius_log)
        .expect("transport preserves the tube inequality for valid points")
}
