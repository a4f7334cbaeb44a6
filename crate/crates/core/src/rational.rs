//! Parsing and formatting of exact rationals.
//!
//! The wire format is `num/den` in lowest terms with the sign on the
//! numerator; integral values drop the `/den` part. No decimal form exists
//! anywhere in the system.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::{Error, Rational, Result};

/// Formats a rational as `num` or `num/den` in lowest terms.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `num`, `-num` or `num/den` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::BadRational(s.to_string());
    let s = s.trim();
    let (numer, denom) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let numer: BigInt = numer.parse().map_err(|_| bad())?;
    let denom: BigInt = match denom {
        Some(d) => d.parse().map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(numer, denom))
}

/// Rational from an integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational from a numerator/denominator pair.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_lowest_terms() {
        assert_eq!(format_rational(&ratio(2, 4)), "1/2");
        assert_eq!(format_rational(&ratio(-6, 4)), "-3/2");
        assert_eq!(format_rational(&ratio(4, -8)), "-1/2");
        assert_eq!(format_rational(&rat(-2)), "-2");
        assert_eq!(format_rational(&rat(0)), "0");
    }

    #[test]
    fn parses_both_shapes() {
        assert_eq!(parse_rational("-3/2").unwrap(), ratio(-3, 2));
        assert_eq!(parse_rational("7").unwrap(), rat(7));
        assert_eq!(parse_rational("4/6").unwrap(), ratio(2, 3));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1.5").is_err());
    }

    #[test]
    fn round_trips() {
        for s in ["0", "-1", "5/3", "-17/12", "1000000/7"] {
            let q = parse_rational(s).unwrap();
            assert_eq!(format_rational(&q), s);
        }
    }
}
