//! Cross-route checks on the power map: the h-step recursion against the
//! one-shot expansion oracle, preimage enumeration against the closed-form
//! profile, and the exact structure of the splitting step function.

use bercov_core::powermap::{
    fiber, push_radius_power_branch, push_radius_small_branch, pushforward, pushforward_oracle,
    split_profile,
};
use bercov_core::rational::{rat, ratio};
use bercov_core::valgroup::LogMag;
use bercov_core::Rational;

use proptest::prelude::*;

fn center_values() -> Vec<Rational> {
    vec![
        rat(0),
        rat(1),
        rat(-2),
        ratio(5, 3),
        ratio(-7, 4),
        ratio(22, 7),
        ratio(-13, 6),
        ratio(9, 2),
    ]
}

/// Depth offsets `g1 - t`, spanning both branches, every branch boundary,
/// and near-boundary neighbors at distance 10^-6.
fn depth_offsets(p: u64) -> Vec<Rational> {
    let mut offsets: Vec<Rational> = (0..26).map(|k| ratio(k, 10)).collect();
    let inv = ratio(1, p as i64 - 1);
    let pov = ratio(p as i64, p as i64 - 1);
    let eps = ratio(1, 1_000_000);
    for base in [inv, pov] {
        offsets.push(&base - &eps);
        offsets.push(base.clone());
        offsets.push(&base + &eps);
    }
    offsets
}

#[test]
fn oracle_equality_on_a_dense_grid() {
    for p in [2u64, 3, 5, 7] {
        for h in 1..=4u32 {
            let mut pairs = 0;
            for g1 in center_values() {
                let center = LogMag::Pow(g1.clone());
                for offset in depth_offsets(p) {
                    let t = &g1 - &offset;
                    let fast = pushforward(p, h, &center, &t).unwrap();
                    let slow = pushforward_oracle(p, h, &center, &t).unwrap();
                    assert_eq!(fast, slow, "p={p} h={h} g1={g1} t={t}");
                    pairs += 1;
                }
            }
            assert!(pairs >= 200, "p={p} h={h}: only {pairs} pairs");
        }
    }
}

#[test]
fn branch_formulas_agree_exactly_at_their_crossover() {
    // The pushed radius max switches branch at t = g1 - 1/(p-1).
    for p in [2u64, 3, 5, 7] {
        for g1 in center_values() {
            let t = &g1 - ratio(1, p as i64 - 1);
            assert_eq!(
                push_radius_power_branch(p, &t),
                push_radius_small_branch(p, &g1, &t),
                "p={p} g1={g1}"
            );
        }
    }
}

#[test]
fn every_fiber_point_pushes_back_to_the_input() {
    for p in [2u64, 3, 5, 7] {
        for h in 1..=4u32 {
            for g0 in center_values() {
                let center = LogMag::Pow(g0.clone());
                for offset in depth_offsets(p) {
                    let t = &g0 - &offset;
                    let profile = fiber(p, h, &center, &t).unwrap();
                    let leaf = profile.levels.last().unwrap();
                    let back = pushforward(p, h, &leaf.center_mag, &leaf.radius_log).unwrap();
                    assert_eq!(back.center_mag, center);
                    assert_eq!(back.radius_log, t);
                }
            }
        }
    }
}

#[test]
fn profile_matches_enumeration_and_is_independent_of_the_center() {
    for p in [2u64, 3, 5, 7] {
        for h in 1..=4u32 {
            let profile = split_profile(p, h).unwrap();
            let mut lambdas: Vec<Rational> = (0..40).map(|k| ratio(k, 7)).collect();
            for b in profile.breakpoints() {
                lambdas.push(&b - ratio(1, 1_000_000));
                lambdas.push(b.clone());
                lambdas.push(&b + ratio(1, 1_000_000));
            }
            for lambda in lambdas {
                let expected = p.pow(profile.count_exponent_at(&lambda).unwrap());
                for g0 in [rat(0), ratio(5, 3), rat(-3)] {
                    let enumerated =
                        fiber(p, h, &LogMag::Pow(g0.clone()), &(&g0 - &lambda)).unwrap();
                    assert_eq!(
                        enumerated.count, expected,
                        "p={p} h={h} lambda={lambda} g0={g0}"
                    );
                }
            }
        }
    }
}

#[test]
fn count_is_a_monotone_step_function_with_p_fold_jumps() {
    for p in [2u64, 3, 5] {
        for h in 1..=4u32 {
            let profile = split_profile(p, h).unwrap();
            let exps: Vec<u32> = profile.segments.iter().map(|s| s.count_exponent).collect();
            assert_eq!(exps, (0..=h).collect::<Vec<_>>());
            // Segments abut exactly: each upper end equals the next lower
            // end, closed exactly on the smaller-count side.
            for w in profile.segments.windows(2) {
                assert_eq!(w[0].hi.as_ref(), Some(&w[1].lo));
                assert!(w[0].hi_closed);
                assert!(!w[1].lo_closed);
            }
            assert!(profile.segments.last().unwrap().hi.is_none());
        }
    }
}

#[test]
fn total_split_iff_every_level_splits() {
    for p in [2u64, 3, 5] {
        for h in 1..=3u32 {
            for k in 0..=(2 * h + 3) {
                let lambda = ratio(k as i64, 2);
                let f = fiber(p, h, &LogMag::one(), &(-&lambda)).unwrap();
                let ph = p.pow(h);
                assert_eq!(ph % f.count, 0, "count divides p^h");
                assert_eq!(
                    f.count == ph,
                    f.levels.iter().all(|l| l.splits),
                    "p={p} h={h} lambda={lambda}"
                );
            }
        }
    }
}

fn rational() -> impl Strategy<Value = Rational> {
    (-24i64..=24, 1i64..=8).prop_map(|(n, d)| ratio(n, d))
}

proptest! {
    #[test]
    fn oracle_equality_on_random_points(
        p in prop::sample::select(vec![2u64, 3, 5]),
        h in 1..=3u32,
        g1 in rational(),
        depth in (0i64..=40, 1i64..=6).prop_map(|(n, d)| ratio(n, d)),
    ) {
        let center = LogMag::Pow(g1.clone());
        let t = &g1 - &depth;
        let fast = pushforward(p, h, &center, &t).unwrap();
        let slow = pushforward_oracle(p, h, &center, &t).unwrap();
        prop_assert_eq!(fast, slow);
    }

    #[test]
    fn pushed_radius_dominates_the_power_branch(
        p in prop::sample::select(vec![2u64, 3, 5, 7]),
        g1 in rational(),
        depth in (0i64..=40, 1i64..=6).prop_map(|(n, d)| ratio(n, d)),
    ) {
        // radius_log_out >= p * t, with equality exactly in the power branch.
        let t = &g1 - &depth;
        let out = pushforward(p, 1, &LogMag::Pow(g1.clone()), &t).unwrap();
        let power = push_radius_power_branch(p, &t);
        prop_assert!(out.radius_log >= power);
        let in_power_branch = t >= &g1 - ratio(1, p as i64 - 1);
        prop_assert_eq!(out.radius_log == power, in_power_branch);
    }
}
