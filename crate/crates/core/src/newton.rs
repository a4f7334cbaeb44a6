//! Newton polygons of integer polynomials with respect to a p-adic valuation.
//!
//! This route goes through explicit big-integer coefficients and repeated
//! division, so it shares no code with the Legendre-formula valuations in
//! [`crate::valgroup`] and can serve as an independent check on them.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::valgroup::is_prime;
use crate::{Error, Rational, Result};

/// Binomial coefficient by direct multiplication and exact division.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for j in 1..=k {
        acc = acc * BigUint::from(n - k + j) / BigUint::from(j);
    }
    acc
}

/// p-adic valuation of a nonzero big integer by repeated division.
pub fn vp_int(n: &BigUint, p: u64) -> u64 {
    assert!(!n.is_zero(), "valuation of zero is infinite");
    let p = BigUint::from(p);
    let mut m = n.clone();
    let mut v = 0;
    while (&m % &p).is_zero() {
        m /= &p;
        v += 1;
    }
    v
}

/// Coefficients of `((X+1)^p - 1)/X`, lowest degree first.
///
/// The degree-i coefficient is `C(p, i+1)`, so the constant term is `p`
/// and the leading term is 1.
pub fn shifted_cyclotomic_coeffs(p: u64) -> Vec<BigUint> {
    (0..p).map(|i| binomial(p, i + 1)).collect()
}

/// Slopes of the lower convex hull of `(i, v_p(c_i))`, increasing.
///
/// Hull slopes are the negated valuations of the polynomial's roots, with
/// horizontal segment length counting multiplicity.
pub fn newton_slopes(coeffs: &[BigUint], p: u64) -> Vec<Rational> {
    let points: Vec<(i64, i64)> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i as i64, vp_int(c, p) as i64))
        .collect();

    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &pt in &points {
        while hull.len() >= 2 {
            let o = hull[hull.len() - 2];
            let a = hull[hull.len() - 1];
            let cross = (a.0 - o.0) as i128 * (pt.1 - o.1) as i128
                - (a.1 - o.1) as i128 * (pt.0 - o.0) as i128;
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }

    let mut slopes = Vec::new();
    for w in hull.windows(2) {
        let s = Rational::new((w[1].1 - w[0].1).into(), (w[1].0 - w[0].0).into());
        if slopes.last() != Some(&s) {
            slopes.push(s);
        }
    }
    slopes
}

/// The unique Newton-polygon slope of `((X+1)^p - 1)/X` for a prime p.
///
/// Errors if p is not prime or the hull unexpectedly has more than one
/// slope, which would contradict the root-of-unity gap being a single
/// magnitude.
pub fn shifted_cyclotomic_slope(p: u64) -> Result<Rational> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let slopes = newton_slopes(&shifted_cyclotomic_coeffs(p), p);
    match slopes.as_slice() {
        [s] => Ok(s.clone()),
        other => Err(Error::Internal(format!(
            "shifted cyclotomic polygon for p={p} has slopes {other:?}, expected exactly one"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn binomials_by_multiplication() {
        assert_eq!(binomial(9, 3), BigUint::from(84u32));
        assert_eq!(binomial(5, 0), BigUint::one());
        assert_eq!(binomial(5, 5), BigUint::one());
        assert_eq!(binomial(3, 7), BigUint::zero());
    }

    #[test]
    fn shifted_cyclotomic_coefficients() {
        // p = 3: (X+1)^3 - 1 = X^3 + 3X^2 + 3X, divided by X.
        let coeffs = shifted_cyclotomic_coeffs(3);
        assert_eq!(
            coeffs,
            vec![BigUint::from(3u32), BigUint::from(3u32), BigUint::one()]
        );
    }

    #[test]
    fn polygon_has_single_slope_matching_the_gap() {
        for p in [2u64, 3, 5, 7, 11, 13] {
            let slope = shifted_cyclotomic_slope(p).unwrap();
            assert_eq!(slope, ratio(-1, p as i64 - 1), "p={p}");
        }
    }

    #[test]
    fn polygon_with_two_slopes() {
        // 4 + 2X + X^2 over p=2: points (0,2), (1,1), (2,0) are collinear,
        // single slope -1; but 8 + 2X + X^2 breaks at (1,1).
        let one_slope = vec![
            BigUint::from(4u32),
            BigUint::from(2u32),
            BigUint::from(1u32),
        ];
        assert_eq!(newton_slopes(&one_slope, 2), vec![ratio(-1, 1)]);
        let two_slopes = vec![
            BigUint::from(8u32),
            BigUint::from(2u32),
            BigUint::from(1u32),
        ];
        assert_eq!(
            newton_slopes(&two_slopes, 2),
            vec![ratio(-2, 1), ratio(-1, 1)]
        );
    }

    #[test]
    fn rejects_composite() {
        assert_eq!(shifted_cyclotomic_slope(6), Err(Error::NotPrime(6)));
    }
}
