//! Exact arithmetic in the value group `p^Q ∪ {0}` and p-adic valuations.
//!
//! A [`LogMag`] is a magnitude `p^g` stored as its exact rational exponent
//! `g`, or the absorbing zero magnitude. With the normalization `|p| = p^-1`,
//! the exponent of `|p|` is `-1`. Products add exponents, rational powers
//! scale them, and the ordering is the exponent ordering with zero at the
//! bottom, so every comparison in the system is decidable and exact.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Mul;

use num_traits::{Signed, Zero as _};

use crate::rational::{format_rational, parse_rational};
use crate::{Error, Rational, Result};

/// An element of the value group `p^Q ∪ {0}` in logarithmic form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LogMag {
    /// The zero magnitude, absorbing under products and minimal in the order.
    Zero,
    /// The magnitude `p^g` for an exact rational exponent `g`.
    Pow(Rational),
}

impl LogMag {
    /// The unit magnitude `p^0 = 1`.
    pub fn one() -> Self {
        LogMag::Pow(Rational::zero())
    }

    /// Magnitude with the given exact exponent.
    pub fn from_exponent(g: Rational) -> Self {
        LogMag::Pow(g)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, LogMag::Zero)
    }

    /// The exponent `g` of `p^g`, or `None` for the zero magnitude.
    pub fn exponent(&self) -> Option<&Rational> {
        match self {
            LogMag::Zero => None,
            LogMag::Pow(g) => Some(g),
        }
    }

    /// Raises to an exact rational power. Zero is stable under positive
    /// powers and has no non-positive ones.
    pub fn pow(&self, e: &Rational) -> Result<LogMag> {
        match self {
            LogMag::Zero => {
                if e.is_positive() {
                    Ok(LogMag::Zero)
                } else {
                    Err(Error::ZeroToNonPositivePower)
                }
            }
            LogMag::Pow(g) => Ok(LogMag::Pow(g * e)),
        }
    }

    /// Wire form: `p^g` with `g` as `num` or `num/den`, or `0`.
    pub fn to_wire(&self) -> String {
        match self {
            LogMag::Zero => "0".to_string(),
            LogMag::Pow(g) => format!("p^{}", format_rational(g)),
        }
    }

    /// Parses the wire form produced by [`LogMag::to_wire`].
    pub fn from_wire(s: &str) -> Result<LogMag> {
        let s = s.trim();
        if s == "0" {
            return Ok(LogMag::Zero);
        }
        match s.strip_prefix("p^") {
            Some(g) => Ok(LogMag::Pow(parse_rational(g)?)),
            None => Err(Error::BadFormat {
                what: "magnitude",
                detail: s.to_string(),
            }),
        }
    }
}

impl fmt::Display for LogMag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_wire())
    }
}

impl Mul for &LogMag {
    type Output = LogMag;

    // Magnitudes multiply by adding exponents.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &LogMag) -> LogMag {
        match (self, rhs) {
            (LogMag::Zero, _) | (_, LogMag::Zero) => LogMag::Zero,
            (LogMag::Pow(a), LogMag::Pow(b)) => LogMag::Pow(a + b),
        }
    }
}

impl Mul for LogMag {
    type Output = LogMag;

    fn mul(self, rhs: LogMag) -> LogMag {
        &self * &rhs
    }
}

impl PartialOrd for LogMag {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LogMag {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (LogMag::Zero, LogMag::Zero) => Ordering::Equal,
            (LogMag::Zero, LogMag::Pow(_)) => Ordering::Less,
            (LogMag::Pow(_), LogMag::Zero) => Ordering::Greater,
            (LogMag::Pow(a), LogMag::Pow(b)) => a.cmp(b),
        }
    }
}

/// Deterministic trial-division primality test.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// p-adic valuation of `n!` by Legendre's sum of floor quotients.
pub fn vp_factorial(n: u64, p: u64) -> Result<u64> {
    require_prime(p)?;
    let mut total = 0u64;
    let mut q = n / p;
    while q > 0 {
        total += q;
        q /= p;
    }
    Ok(total)
}

/// p-adic valuation of the binomial coefficient `C(n, k)`.
pub fn vp_binom(n: u64, k: u64, p: u64) -> Result<u64> {
    if k > n {
        return Err(Error::BinomialRange { n, k });
    }
    let vn = vp_factorial(n, p)?;
    let vk = vp_factorial(k, p)?;
    let vnk = vp_factorial(n - k, p)?;
    // Kummer: the valuation counts carries in k + (n-k), so it never
    // underflows here.
    Ok(vn - vk - vnk)
}

/// The distance `p^{-1/(p-1)}` between any two distinct p-th roots of unity.
pub fn root_of_unity_gap(p: u64) -> Result<LogMag> {
    require_prime(p)?;
    Ok(LogMag::Pow(Rational::new(
        (-1).into(),
        (p as i64 - 1).into(),
    )))
}
