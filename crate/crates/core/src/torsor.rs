//! Pinned degree-p torsors on annuli, as fiber-count query objects.
//!
//! A torsor is pinned by a type-2 skeleton point and an orientation: the
//! side of the pin over which it totally splits. Queries are answered in
//! source coordinates by closed-form rules derived once from the model
//! chart; the chart computation itself is kept as an independent oracle.
//!
//! The model chart is the annulus `{ |T - 1| in I }` inside the unit
//! circle, covered by `z -> z^p`, with the pin at `t = -p/(p-1)`. Every
//! point there has center magnitude 1, so its fiber has p elements exactly
//! when its log radius is below `-p/(p-1)`, independently of where it
//! retracts.

use serde_json::{json, Value};

use crate::annuli::{transport_point, Annulus, NormalizingMap, TubePoint};
use crate::interval::{Bound, Interval};
use crate::rational::{format_rational, parse_rational};
use crate::valgroup::is_prime;
use crate::{Error, Rational, Result};

/// Which side of the pin is totally split.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    SplitsBelow,
    SplitsAbove,
}

impl Orientation {
    pub fn flipped(self) -> Orientation {
        match self {
            Orientation::SplitsBelow => Orientation::SplitsAbove,
            Orientation::SplitsAbove => Orientation::SplitsBelow,
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            Orientation::SplitsBelow => "below",
            Orientation::SplitsAbove => "above",
        }
    }
}

/// A pinned degree-p torsor on an annulus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsorSpec {
    pub p: u64,
    pub annulus: Annulus,
    pub t_pin: Rational,
    pub orientation: Orientation,
    /// Normalization onto the model chart, sending the pin to `-p/(p-1)`
    /// and the split side below it.
    to_model: NormalizingMap,
}

impl TorsorSpec {
    /// Builds the torsor; the pin must be strictly interior to the skeleton.
    pub fn new(
        p: u64,
        annulus: Annulus,
        t_pin: Rational,
        orientation: Orientation,
    ) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if !annulus.skeleton.interior_contains(&t_pin) {
            return Err(Error::PinNotInterior);
        }
        let model_pin = Rational::new((-(p as i64)).into(), (p as i64 - 1).into());
        let to_model = match orientation {
            Orientation::SplitsBelow => NormalizingMap::shift(&model_pin - &t_pin),
            Orientation::SplitsAbove => NormalizingMap::flipped(&t_pin + &model_pin),
        };
        Ok(TorsorSpec {
            p,
            annulus,
            t_pin,
            orientation,
            to_model,
        })
    }

    /// The recorded normalization onto the model chart.
    pub fn to_model(&self) -> &NormalizingMap {
        &self.to_model
    }

    fn check_point(&self, pt: &TubePoint) -> Result<()> {
        if !self.annulus.skeleton.contains(&pt.t_ret) {
            return Err(Error::PointOutsideAnnulus);
        }
        Ok(())
    }

    fn check_sub(&self, sub: &Interval) -> Result<()> {
        if sub.is_empty() {
            return Err(Error::EmptyInterval);
        }
        if !self.annulus.skeleton.contains_interval(sub) {
            return Err(Error::SubIntervalNotContained);
        }
        Ok(())
    }

    /// Fiber cardinality over a tube point: p or 1, by the closed-form
    /// source-coordinate rule.
    pub fn fiber_count(&self, pt: &TubePoint) -> Result<u64> {
        self.check_point(pt)?;
        let split = match self.orientation {
            Orientation::SplitsBelow => pt.radius_log < self.t_pin,
            Orientation::SplitsAbove => {
                pt.radius_log < Rational::from_integer(2.into()) * &pt.t_ret - &self.t_pin
            }
        };
        Ok(if split { self.p } else { 1 })
    }

    /// Fiber cardinality computed by transporting the point to the model
    /// chart and applying the power-map rule there. Independent check of
    /// [`TorsorSpec::fiber_count`].
    pub fn fiber_count_via_model(&self, pt: &TubePoint) -> Result<u64> {
        self.check_point(pt)?;
        let image = transport_point(&self.to_model, pt);
        let model_pin = Rational::new((-(self.p as i64)).into(), (self.p as i64 - 1).into());
        Ok(if image.radius_log < model_pin {
            self.p
        } else {
            1
        })
    }

    /// Whether the torsor totally splits over the whole tube
    /// `{ pt : t_ret in sub }`.
    pub fn splits_over_tube(&self, sub: &Interval) -> Result<bool> {
        self.check_sub(sub)?;
        // The hardest point of the tube over t_ret is the skeleton point
        // itself, so splitting over the tube is a one-sided condition on
        // the pin.
        Ok(match self.orientation {
            Orientation::SplitsBelow => match &sub.hi {
                Bound::Unbounded => false,
                Bound::Open(v) => *v <= self.t_pin,
                Bound::Closed(v) => *v < self.t_pin,
            },
            Orientation::SplitsAbove => match &sub.lo {
                Bound::Unbounded => false,
                Bound::Open(v) => *v >= self.t_pin,
                Bound::Closed(v) => *v > self.t_pin,
            },
        })
    }

    /// Number of connected components of the restriction to the sub-annulus
    /// with skeleton `sub`: 1 when some skeleton fiber there is a singleton,
    /// p (disjoint sheets) otherwise.
    pub fn components_over(&self, sub: &Interval) -> Result<u64> {
        self.check_sub(sub)?;
        let has_singleton_fiber = match self.orientation {
            Orientation::SplitsBelow => match &sub.hi {
                Bound::Unbounded => true,
                Bound::Open(v) => *v > self.t_pin,
                Bound::Closed(v) => *v >= self.t_pin,
            },
            Orientation::SplitsAbove => match &sub.lo {
                Bound::Unbounded => true,
                Bound::Open(v) => *v < self.t_pin,
                Bound::Closed(v) => *v <= self.t_pin,
            },
        };
        Ok(if has_singleton_fiber { 1 } else { self.p })
    }

    /// Conjugates the torsor by an annulus isomorphism: the pin moves with
    /// the map and a flip reverses the orientation. Fiber counts are
    /// invariant under conjugation of torsor and point together.
    pub fn conjugate(&self, map: &NormalizingMap) -> Result<TorsorSpec> {
        let annulus = Annulus::new(
            crate::annuli::CenterTag::AtZero,
            map.apply_interval(&self.annulus.skeleton),
        )?;
        let orientation = if map.flip {
            self.orientation.flipped()
        } else {
            self.orientation
        };
        TorsorSpec::new(self.p, annulus, map.apply_coord(&self.t_pin), orientation)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "annulus": self.annulus.to_json(),
            "pin": format_rational(&self.t_pin),
            "orientation": self.orientation.as_str(),
        })
    }

    pub fn from_json(p: u64, v: &Value) -> Result<Self> {
        let orientation = match v.get("orientation").and_then(Value::as_str) {
            Some("below") => Orientation::SplitsBelow,
            Some("above") => Orientation::SplitsAbove,
            other => {
                return Err(Error::BadFormat {
                    what: "torsor",
                    detail: format!("bad orientation {other:?}"),
                })
            }
        };
        let pin = v
            .get("pin")
            .and_then(Value::as_str)
            .ok_or(Error::BadFormat {
                what: "torsor",
                detail: "missing pin".into(),
            })?;
        TorsorSpec::new(
            p,
            Annulus::from_json(&v["annulus"])?,
            parse_rational(pin)?,
            orientation,
        )
    }
}
