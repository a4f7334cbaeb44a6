//! Points `eta_{a,r}` of the Berkovich affine line and Gauss-seminorm
//! evaluation of recentered polynomials.
//!
//! Centers are opaque: a point carries only the magnitude `|a|` of its
//! center and the exact base-p logarithm of its radius. Whenever two
//! centers must be compared, the caller supplies the gap `|a - b|`; the
//! constructions here never need coordinates in the field itself.

use std::cmp::Ordering;
use std::fmt;

use serde_json::{json, Value};

use crate::rational::{format_rational, parse_rational};
use crate::valgroup::LogMag;
use crate::{Error, Rational, Result};

/// Base-p logarithm of a radius: an exact rational, or `-inf` for radius 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LogRadius {
    NegInf,
    Finite(Rational),
}

impl LogRadius {
    pub fn finite(t: Rational) -> Self {
        LogRadius::Finite(t)
    }

    /// The radius as a value-group element: `p^t`, or zero for `-inf`.
    pub fn as_mag(&self) -> LogMag {
        match self {
            LogRadius::NegInf => LogMag::Zero,
            LogRadius::Finite(t) => LogMag::Pow(t.clone()),
        }
    }

    pub fn to_wire(&self) -> String {
        match self {
            LogRadius::NegInf => "-inf".to_string(),
            LogRadius::Finite(t) => format_rational(t),
        }
    }

    pub fn from_wire(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "-inf" {
            Ok(LogRadius::NegInf)
        } else {
            Ok(LogRadius::Finite(parse_rational(s)?))
        }
    }
}

impl PartialOrd for LogRadius {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LogRadius {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (LogRadius::NegInf, LogRadius::NegInf) => Ordering::Equal,
            (LogRadius::NegInf, LogRadius::Finite(_)) => Ordering::Less,
            (LogRadius::Finite(_), LogRadius::NegInf) => Ordering::Greater,
            (LogRadius::Finite(a), LogRadius::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for LogRadius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_wire())
    }
}

/// A point `eta_{a,r}`: the sup-seminorm on the closed disk `B(a, r)`.
///
/// `radius_log = -inf` is a rigid (type-1) point; a rational radius log
/// gives a type-2 point since every radius here lies in `p^Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointEta {
    pub center_mag: LogMag,
    pub radius_log: LogRadius,
}

impl PointEta {
    pub fn new(center_mag: LogMag, radius_log: LogRadius) -> Self {
        PointEta {
            center_mag,
            radius_log,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "center_mag": self.center_mag.to_wire(),
            "radius_log": self.radius_log.to_wire(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let field = |k: &str| -> Result<&str> {
            v.get(k).and_then(Value::as_str).ok_or(Error::BadFormat {
                what: "point",
                detail: format!("missing string field {k:?}"),
            })
        };
        Ok(PointEta {
            center_mag: LogMag::from_wire(field("center_mag")?)?,
            radius_log: LogRadius::from_wire(field("radius_log")?)?,
        })
    }
}

/// `sum c_i (T - a)^i` known only through the magnitudes `|c_i|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenteredPolynomial {
    terms: Vec<(u64, LogMag)>,
}

impl CenteredPolynomial {
    /// Builds from `(degree, |coefficient|)` pairs. Indices must be
    /// distinct and at least one coefficient must be nonzero.
    pub fn new(mut terms: Vec<(u64, LogMag)>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::EmptyPolynomial);
        }
        terms.sort_by_key(|(i, _)| *i);
        for w in terms.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::DuplicateTermIndex(w[0].0));
            }
        }
        if terms.iter().all(|(_, c)| c.is_zero()) {
            return Err(Error::AllCoefficientsZero);
        }
        Ok(CenteredPolynomial { terms })
    }

    pub fn terms(&self) -> &[(u64, LogMag)] {
        &self.terms
    }

    /// Merges two polynomials by taking the larger magnitude at each index.
    pub fn merge_max(&self, other: &CenteredPolynomial) -> CenteredPolynomial {
        let mut terms = self.terms.clone();
        for (i, c) in &other.terms {
            match terms.iter_mut().find(|(j, _)| j == i) {
                Some((_, existing)) => {
                    if c > existing {
                        *existing = c.clone();
                    }
                }
                None => terms.push((*i, c.clone())),
            }
        }
        terms.sort_by_key(|(i, _)| *i);
        CenteredPolynomial { terms }
    }
}

/// Sup-seminorm of the polynomial on the disk of log-radius `t` around its
/// own center: `max_i |c_i| r^i`, in log form `max_i (g_i + i t)`.
///
/// At `t = -inf` only the constant term survives.
pub fn seminorm_eval(q: &CenteredPolynomial, radius_log: &LogRadius) -> LogMag {
    match radius_log {
        LogRadius::NegInf => q
            .terms
            .iter()
            .find(|(i, _)| *i == 0)
            .map(|(_, c)| c.clone())
            .unwrap_or(LogMag::Zero),
        LogRadius::Finite(t) => q
            .terms
            .iter()
            .filter_map(|(i, c)| match c {
                LogMag::Zero => None,
                LogMag::Pow(g) => Some(LogMag::Pow(g + t * Rational::from_integer((*i).into()))),
            })
            .max()
            .unwrap_or(LogMag::Zero),
    }
}

/// Coincidence of `eta_{a,r1}` and `eta_{b,r2}` given the gap `|a - b|`:
/// the points are equal iff the radii agree and the gap is at most the
/// radius.
pub fn point_eq(t1: &LogRadius, t2: &LogRadius, center_gap: &LogMag) -> bool {
    t1 == t2 && *center_gap <= t1.as_mag()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    fn mag(n: i64, d: i64) -> LogMag {
        LogMag::Pow(ratio(n, d))
    }

    fn poly(terms: &[(u64, LogMag)]) -> CenteredPolynomial {
        CenteredPolynomial::new(terms.to_vec()).unwrap()
    }

    #[test]
    fn seminorm_picks_dominant_term() {
        // |T^3 - z1^3| at eta_{z1, 1/3} for p = 3, |z1| = 1: the recentered
        // coefficients have magnitudes |c_1| = p^-1, |c_3| = 1.
        let q = poly(&[(1, mag(-1, 1)), (3, mag(0, 1))]);
        assert_eq!(seminorm_eval(&q, &LogRadius::finite(rat(-1))), mag(-2, 1));

        let constant = poly(&[(0, mag(0, 1))]);
        assert_eq!(
            seminorm_eval(&constant, &LogRadius::finite(rat(7))),
            mag(0, 1)
        );

        let two = poly(&[(1, mag(0, 1)), (2, mag(0, 1))]);
        assert_eq!(seminorm_eval(&two, &LogRadius::finite(rat(1))), mag(2, 1));
    }

    #[test]
    fn seminorm_at_zero_radius_is_the_constant_term() {
        let q = poly(&[(0, mag(-2, 1)), (1, mag(5, 1))]);
        assert_eq!(seminorm_eval(&q, &LogRadius::NegInf), mag(-2, 1));
        let no_constant = poly(&[(1, mag(5, 1))]);
        assert_eq!(
            seminorm_eval(&no_constant, &LogRadius::NegInf),
            LogMag::Zero
        );
    }

    #[test]
    fn polynomial_validation() {
        assert_eq!(CenteredPolynomial::new(vec![]), Err(Error::EmptyPolynomial));
        assert_eq!(
            CenteredPolynomial::new(vec![(2, mag(0, 1)), (2, mag(1, 1))]),
            Err(Error::DuplicateTermIndex(2))
        );
        assert_eq!(
            CenteredPolynomial::new(vec![(0, LogMag::Zero)]),
            Err(Error::AllCoefficientsZero)
        );
    }

    #[test]
    fn point_coincidence() {
        let half = LogRadius::finite(ratio(-1, 2));
        assert!(point_eq(&half, &half, &mag(-1, 2)));
        assert!(!point_eq(
            &LogRadius::finite(rat(-1)),
            &LogRadius::finite(rat(-1)),
            &mag(-1, 2)
        ));
        assert!(!point_eq(
            &LogRadius::finite(rat(0)),
            &LogRadius::finite(rat(-1)),
            &LogMag::Zero
        ));
        // Rigid points coincide only when the centers do.
        assert!(point_eq(
            &LogRadius::NegInf,
            &LogRadius::NegInf,
            &LogMag::Zero
        ));
        assert!(!point_eq(
            &LogRadius::NegInf,
            &LogRadius::NegInf,
            &mag(-9, 1)
        ));
    }

    #[test]
    fn point_json_round_trip() {
        let pt = PointEta::new(mag(1, 2), LogRadius::finite(ratio(-5, 3)));
        assert_eq!(PointEta::from_json(&pt.to_json()).unwrap(), pt);
        let rigid = PointEta::new(LogMag::Zero, LogRadius::NegInf);
        assert_eq!(rigid.to_json()["radius_log"], "-inf");
        assert_eq!(PointEta::from_json(&rigid.to_json()).unwrap(), rigid);
    }
}
