//! The covering `z -> z^{p^h}` of the punctured Berkovich line: exact
//! pushforward of points, preimage enumeration, and the closed-form
//! splitting profile, with two independent computation routes.
//!
//! Everything is driven by the single normalized parameter
//! `lambda = log_p(alpha / r) = g0 - t` of a point `eta_{z0, r}` with
//! `alpha = |z0| = p^{g0}`, `r = p^t`, `r <= alpha`. One level of the map
//! splits the fiber by a factor of p exactly while `lambda > p/(p-1)`, and
//! each split level decrements lambda by 1; once `lambda <= p/(p-1)` it
//! contracts to `lambda/p` and never splits again.

use serde_json::{json, Value};

use crate::berkline::{point_eq, seminorm_eval, CenteredPolynomial, LogRadius};
use crate::rational::{format_rational, parse_rational};
use crate::valgroup::{is_prime, root_of_unity_gap, vp_binom, LogMag};
use crate::{Error, Rational, Result};

fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

fn rat_u64(n: u64) -> Rational {
    Rational::from_integer(n.into())
}

fn check_radius_in_disk(center_log: &Rational, radius_log: &Rational) -> Result<()> {
    if radius_log > center_log {
        return Err(Error::RadiusExceedsCenter {
            radius_log: format_rational(radius_log),
            center_log: format_rational(center_log),
        });
    }
    Ok(())
}

/// Image of a point under one or more levels of the power map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PushResult {
    /// Magnitude of the image center, `|z1|^{p^h}`.
    pub center_mag: LogMag,
    /// Log of the image radius.
    pub radius_log: Rational,
}

impl PushResult {
    pub fn to_json(&self) -> Value {
        json!({
            "center_mag": self.center_mag.to_wire(),
            "radius_log": format_rational(&self.radius_log),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let field = |k: &str| -> Result<&str> {
            v.get(k).and_then(Value::as_str).ok_or(Error::BadFormat {
                what: "push result",
                detail: format!("missing string field {k:?}"),
            })
        };
        Ok(PushResult {
            center_mag: LogMag::from_wire(field("center_mag")?)?,
            radius_log: parse_rational(field("radius_log")?)?,
        })
    }
}

/// The branch `rho^p` of the pushed radius, in log form.
pub fn push_radius_power_branch(p: u64, radius_log: &Rational) -> Rational {
    radius_log * rat_u64(p)
}

/// The branch `p^{-1} rho |z1|^{p-1}` of the pushed radius, in log form.
pub fn push_radius_small_branch(p: u64, center_log: &Rational, radius_log: &Rational) -> Rational {
    radius_log + rat_u64(p - 1) * center_log - Rational::from_integer(1.into())
}

/// One level of the power map: `eta_{z1, rho} -> eta_{z1^p, rho_hat}` with
/// `rho_hat = max(rho^p, p^{-1} rho |z1|^{p-1})`.
///
/// Requires `rho <= |z1|` and a nonzero center.
pub fn pushforward_step(p: u64, center_mag: &LogMag, radius_log: &Rational) -> Result<PushResult> {
    require_prime(p)?;
    let g1 = center_mag.exponent().ok_or(Error::ZeroCenter)?;
    check_radius_in_disk(g1, radius_log)?;
    let power = push_radius_power_branch(p, radius_log);
    let small = push_radius_small_branch(p, g1, radius_log);
    Ok(PushResult {
        center_mag: LogMag::Pow(g1 * rat_u64(p)),
        radius_log: power.max(small),
    })
}

/// `h` levels of the power map, by iterating [`pushforward_step`].
pub fn pushforward(
    p: u64,
    h: u32,
    center_mag: &LogMag,
    radius_log: &Rational,
) -> Result<PushResult> {
    if h == 0 {
        return Err(Error::ZeroHeight);
    }
    let mut current = PushResult {
        center_mag: center_mag.clone(),
        radius_log: radius_log.clone(),
    };
    for _ in 0..h {
        current = pushforward_step(p, &current.center_mag, &current.radius_log)?;
    }
    Ok(current)
}

/// Pushforward computed in one shot from the full binomial expansion of
/// `T^{p^h} - z1^{p^h}` around `z1`, without the level-by-level recursion.
///
/// The degree-i coefficient has magnitude `p^{-v_p(C(p^h, i))} |z1|^{p^h - i}`
/// and the image radius is the seminorm of the expansion on the input disk.
/// Serves as the independent check on [`pushforward`].
pub fn pushforward_oracle(
    p: u64,
    h: u32,
    center_mag: &LogMag,
    radius_log: &Rational,
) -> Result<PushResult> {
    if h == 0 {
        return Err(Error::ZeroHeight);
    }
    require_prime(p)?;
    let g1 = center_mag.exponent().ok_or(Error::ZeroCenter)?;
    check_radius_in_disk(g1, radius_log)?;
    let ph = p
        .checked_pow(h)
        .filter(|ph| *ph <= 1_000_000)
        .ok_or(Error::DegreeTooLarge { p, h })?;
    let terms = (1..=ph)
        .map(|i| {
            let vp = vp_binom(ph, i, p)?;
            let exponent = rat_u64(ph - i) * g1 - rat_u64(vp);
            Ok((i, LogMag::Pow(exponent)))
        })
        .collect::<Result<Vec<_>>>()?;
    let expansion = CenteredPolynomial::new(terms)?;
    let norm = seminorm_eval(&expansion, &LogRadius::Finite(radius_log.clone()));
    let radius_log_out = norm
        .exponent()
        .cloned()
        .ok_or_else(|| Error::Internal("seminorm of a nonzero expansion vanished".into()))?;
    Ok(PushResult {
        center_mag: LogMag::Pow(g1 * rat_u64(ph)),
        radius_log: radius_log_out,
    })
}

/// Result of lifting a point through one level of the power map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberStep {
    /// Log radius of the preimage points.
    pub radius_log_up: Rational,
    /// Whether the p conjugate preimages are pairwise distinct.
    pub splits: bool,
}

/// One level of preimage: the radius `r_tilde` of the lifted points and
/// whether the fiber has p elements rather than one.
///
/// The preimages of `eta_{z0, r}` are the points `eta_{xi z0_tilde, r_tilde}`
/// over the p-th roots `xi z0_tilde` of `z0`; they coincide exactly when the
/// root-of-unity gap `|z0|^{1/p} p^{-1/(p-1)}` is at most `r_tilde`.
pub fn fiber_step(p: u64, center_mag: &LogMag, radius_log: &Rational) -> Result<FiberStep> {
    require_prime(p)?;
    let g0 = center_mag.exponent().ok_or(Error::ZeroCenter)?;
    check_radius_in_disk(g0, radius_log)?;
    let one = Rational::from_integer(1.into());
    let split_threshold = g0 - rat_u64(p) / rat_u64(p - 1);
    let radius_log_up = if *radius_log <= split_threshold {
        radius_log + one - rat_u64(p - 1) / rat_u64(p) * g0
    } else {
        radius_log / rat_u64(p)
    };
    // Conjugate-coincidence test at the lifted center magnitude |z0|^{1/p}.
    let lifted_center = center_mag.pow(&(rat_u64(1) / rat_u64(p)))?;
    let gap = &lifted_center * &root_of_unity_gap(p)?;
    let lifted = LogRadius::Finite(radius_log_up.clone());
    let splits = !point_eq(&lifted, &lifted, &gap);
    Ok(FiberStep {
        radius_log_up,
        splits,
    })
}

/// One level of the preimage tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberLevel {
    /// Magnitude of the centers at this level, `alpha^{1/p^j}`.
    pub center_mag: LogMag,
    /// Log radius of the points at this level.
    pub radius_log: Rational,
    /// Whether this level multiplied the fiber by p.
    pub splits: bool,
}

/// The full preimage of a point under `z -> z^{p^h}`, level by level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberProfile {
    pub p: u64,
    pub h: u32,
    pub levels: Vec<FiberLevel>,
    /// Fiber cardinality, `p^{number of splitting levels}`.
    pub count: u64,
}

impl FiberProfile {
    pub fn split_levels(&self) -> u32 {
        self.levels.iter().filter(|l| l.splits).count() as u32
    }
}

/// Enumerates the fiber of `eta_{z0, r}` under `z -> z^{p^h}`.
///
/// Level j lifts through one power map at center magnitude `alpha^{1/p^{j-1}}`.
/// Fibers over distinct points stay disjoint, so the count is the product of
/// the per-level factors.
pub fn fiber(p: u64, h: u32, center_mag: &LogMag, radius_log: &Rational) -> Result<FiberProfile> {
    if h == 0 {
        return Err(Error::ZeroHeight);
    }
    let mut levels = Vec::with_capacity(h as usize);
    let mut g = center_mag.clone();
    let mut t = radius_log.clone();
    for _ in 0..h {
        let step = fiber_step(p, &g, &t)?;
        g = g.pow(&(rat_u64(1) / rat_u64(p)))?;
        t = step.radius_log_up;
        levels.push(FiberLevel {
            center_mag: g.clone(),
            radius_log: t.clone(),
            splits: step.splits,
        });
    }
    let split_levels = levels.iter().filter(|l| l.splits).count() as u32;
    let count = p.checked_pow(split_levels).ok_or(Error::CountOverflow)?;
    Ok(FiberProfile {
        p,
        h,
        levels,
        count,
    })
}

/// One constancy interval of the splitting profile in the lambda coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfileSegment {
    pub lo: Rational,
    pub lo_closed: bool,
    /// Upper endpoint; `None` is the unbounded tail.
    pub hi: Option<Rational>,
    pub hi_closed: bool,
    /// Fiber count on this segment is `p^{count_exponent}`.
    pub count_exponent: u32,
}

impl ProfileSegment {
    pub fn contains(&self, lambda: &Rational) -> bool {
        let lo_ok = match lambda.cmp(&self.lo) {
            std::cmp::Ordering::Greater => true,
            std::cmp::Ordering::Equal => self.lo_closed,
            std::cmp::Ordering::Less => false,
        };
        let hi_ok = match &self.hi {
            None => true,
            Some(hi) => match lambda.cmp(hi) {
                std::cmp::Ordering::Less => true,
                std::cmp::Ordering::Equal => self.hi_closed,
                std::cmp::Ordering::Greater => false,
            },
        };
        lo_ok && hi_ok
    }
}

/// The fiber cardinality of `z -> z^{p^h}` as an exact step function of
/// `lambda = log_p(alpha / r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitProfile {
    pub p: u64,
    pub h: u32,
    pub segments: Vec<ProfileSegment>,
}

impl SplitProfile {
    /// Count exponent at a given lambda >= 0.
    pub fn count_exponent_at(&self, lambda: &Rational) -> Option<u32> {
        self.segments
            .iter()
            .find(|s| s.contains(lambda))
            .map(|s| s.count_exponent)
    }

    /// Interval boundaries, `i + 1/(p-1)` for `i = 1..=h`.
    pub fn breakpoints(&self) -> Vec<Rational> {
        self.segments.iter().skip(1).map(|s| s.lo.clone()).collect()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.segments
                .iter()
                .map(|s| {
                    json!({
                        "lambda_interval": [
                            format_rational(&s.lo),
                            s.hi.as_ref().map_or("inf".to_string(), format_rational),
                        ],
                        "closed": [s.lo_closed, s.hi_closed],
                        "count": format!("{}^{}", self.p, s.count_exponent),
                    })
                })
                .collect(),
        )
    }

    pub fn from_json(p: u64, h: u32, v: &Value) -> Result<Self> {
        let bad = |detail: String| Error::BadFormat {
            what: "split profile",
            detail,
        };
        let arr = v.as_array().ok_or_else(|| bad("expected array".into()))?;
        let mut segments = Vec::with_capacity(arr.len());
        for seg in arr {
            let interval = seg["lambda_interval"]
                .as_array()
                .ok_or_else(|| bad("missing lambda_interval".into()))?;
            let closed = seg["closed"]
                .as_array()
                .ok_or_else(|| bad("missing closed flags".into()))?;
            let lo = parse_rational(
                interval[0]
                    .as_str()
                    .ok_or_else(|| bad("non-string endpoint".into()))?,
            )?;
            let hi_raw = interval[1]
                .as_str()
                .ok_or_else(|| bad("non-string endpoint".into()))?;
            let hi = if hi_raw == "inf" {
                None
            } else {
                Some(parse_rational(hi_raw)?)
            };
            let count = seg["count"]
                .as_str()
                .ok_or_else(|| bad("missing count".into()))?;
            let (base, exp) = count
                .split_once('^')
                .ok_or_else(|| bad(format!("malformed count {count:?}")))?;
            if base.parse::<u64>().map_err(|e| bad(e.to_string()))? != p {
                return Err(bad(format!("count base in {count:?} does not match p={p}")));
            }
            segments.push(ProfileSegment {
                lo,
                lo_closed: closed[0].as_bool().unwrap_or(false),
                hi,
                hi_closed: closed[1].as_bool().unwrap_or(false),
                count_exponent: exp
                    .parse()
                    .map_err(|_| bad(format!("bad exponent in {count:?}")))?,
            });
        }
        Ok(SplitProfile { p, h, segments })
    }
}

/// The closed-form splitting profile: count 1 on `[0, p/(p-1)]`, count `p^i`
/// on `(i + 1/(p-1), i + p/(p-1)]` for `1 <= i <= h-1`, and count `p^h` on
/// the unbounded tail `(h + 1/(p-1), inf)`. Consecutive intervals abut
/// exactly, closed on the smaller-count side.
pub fn split_profile(p: u64, h: u32) -> Result<SplitProfile> {
    require_prime(p)?;
    if h == 0 {
        return Err(Error::ZeroHeight);
    }
    let inv = rat_u64(1) / rat_u64(p - 1);
    let zero = Rational::from_integer(0.into());
    let mut segments = vec![ProfileSegment {
        lo: zero,
        lo_closed: true,
        hi: Some(rat_u64(1) + &inv),
        hi_closed: true,
        count_exponent: 0,
    }];
    for i in 1..h {
        segments.push(ProfileSegment {
            lo: rat_u64(i as u64) + &inv,
            lo_closed: false,
            hi: Some(rat_u64(i as u64 + 1) + &inv),
            hi_closed: true,
            count_exponent: i,
        });
    }
    segments.push(ProfileSegment {
        lo: rat_u64(h as u64) + &inv,
        lo_closed: false,
        hi: None,
        hi_closed: false,
        count_exponent: h,
    });
    Ok(SplitProfile { p, h, segments })
}
