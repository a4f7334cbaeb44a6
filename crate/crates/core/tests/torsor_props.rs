//! Randomized checks that the torsor's closed-form fiber rules agree with
//! the model-chart computation, stay invariant under chart changes, and are
//! consistent with the interval-level splitting and connectivity queries.

use bercov_core::annuli::{transport_point, Annulus, CenterTag, NormalizingMap, TubePoint};
use bercov_core::interval::{Bound, Interval};
use bercov_core::rational::{rat, ratio};
use bercov_core::torsor::{Orientation, TorsorSpec};
use bercov_core::{Error, Rational};

use proptest::prelude::*;

#[derive(Debug, Clone)]
struct Instance {
    torsor: TorsorSpec,
    lo: Rational,
    width: Rational,
}

fn orientation() -> impl Strategy<Value = Orientation> {
    prop::sample::select(vec![Orientation::SplitsBelow, Orientation::SplitsAbove])
}

/// Random annulus with a pin strictly inside, over p in {2, 3, 5}.
fn instance() -> impl Strategy<Value = Instance> {
    (
        prop::sample::select(vec![2u64, 3, 5]),
        (-20i64..=20, 1i64..=6).prop_map(|(n, d)| ratio(n, d)),
        (1i64..=30, 1i64..=4).prop_map(|(n, d)| ratio(n, d)),
        1i64..=7,
        any::<bool>(),
        any::<bool>(),
        orientation(),
    )
        .prop_map(
            |(p, lo, width, pin_eighths, lo_closed, hi_closed, orientation)| {
                let hi = &lo + &width;
                let skeleton = Interval::new(
                    if lo_closed {
                        Bound::Closed(lo.clone())
                    } else {
                        Bound::Open(lo.clone())
                    },
                    if hi_closed {
                        Bound::Closed(hi)
                    } else {
                        Bound::Open(hi)
                    },
                );
                let pin = &lo + &width * ratio(pin_eighths, 8);
                let annulus = Annulus::new(CenterTag::AtZero, skeleton).unwrap();
                Instance {
                    torsor: TorsorSpec::new(p, annulus, pin, orientation).unwrap(),
                    lo,
                    width,
                }
            },
        )
}

/// An interior retraction coordinate of the instance's skeleton.
fn point_in(inst: &Instance, sixteenths: i64, depth: &Rational) -> TubePoint {
    let t_ret = &inst.lo + &inst.width * ratio(sixteenths, 16);
    TubePoint::new(t_ret.clone(), t_ret - depth).unwrap()
}

proptest! {
    #[test]
    fn closed_form_agrees_with_the_model_chart(
        inst in instance(),
        sixteenths in 1i64..=15,
        depth in (0i64..=32, 1i64..=5).prop_map(|(n, d)| ratio(n, d)),
    ) {
        let pt = point_in(&inst, sixteenths, &depth);
        prop_assert_eq!(
            inst.torsor.fiber_count(&pt).unwrap(),
            inst.torsor.fiber_count_via_model(&pt).unwrap()
        );
    }

    #[test]
    fn counts_are_chart_independent(
        inst in instance(),
        c in (-12i64..=12, 1i64..=4).prop_map(|(n, d)| ratio(n, d)),
        flip in any::<bool>(),
        sixteenths in 1i64..=15,
        depth in (0i64..=32, 1i64..=5).prop_map(|(n, d)| ratio(n, d)),
    ) {
        let map = if flip { NormalizingMap::flipped(c) } else { NormalizingMap::shift(c) };
        let conjugated = inst.torsor.conjugate(&map).unwrap();
        let pt = point_in(&inst, sixteenths, &depth);
        prop_assert_eq!(
            inst.torsor.fiber_count(&pt).unwrap(),
            conjugated.fiber_count(&transport_point(&map, &pt)).unwrap()
        );
    }

    #[test]
    fn splitting_region_is_downward_closed_in_the_radius(
        inst in instance(),
        sixteenths in 1i64..=15,
        depth in (0i64..=32, 1i64..=5).prop_map(|(n, d)| ratio(n, d)),
        extra in (1i64..=32, 1i64..=5).prop_map(|(n, d)| ratio(n, d)),
    ) {
        let pt = point_in(&inst, sixteenths, &depth);
        let deeper = TubePoint::new(pt.t_ret.clone(), &pt.radius_log - &extra).unwrap();
        let p = inst.torsor.p;
        if inst.torsor.fiber_count(&pt).unwrap() == p {
            prop_assert_eq!(inst.torsor.fiber_count(&deeper).unwrap(), p);
        }
    }

    #[test]
    fn tube_queries_are_consistent_with_point_queries(
        inst in instance(),
        ends in (1i64..=14).prop_flat_map(|a| (Just(a), (a + 1)..=15i64)),
        lo_closed in any::<bool>(),
        hi_closed in any::<bool>(),
    ) {
        let (a, b) = ends;
        let lo_t = &inst.lo + &inst.width * ratio(a, 16);
        let hi_t = &inst.lo + &inst.width * ratio(b, 16);
        let sub = Interval::new(
            if lo_closed { Bound::Closed(lo_t.clone()) } else { Bound::Open(lo_t.clone()) },
            if hi_closed { Bound::Closed(hi_t.clone()) } else { Bound::Open(hi_t.clone()) },
        );
        let splits = inst.torsor.splits_over_tube(&sub).unwrap();
        let components = inst.torsor.components_over(&sub).unwrap();

        // The tube splits totally exactly when no skeleton fiber inside is
        // a singleton, i.e. when the restriction is p disjoint sheets.
        prop_assert_eq!(splits, components == inst.torsor.p);

        // Point grid: closed endpoints, near-end interior points, midpoint,
        // and pin-adjacent points. When the tube splits they must all have
        // full fibers; when it does not, the grid contains a singleton.
        let tiny = &inst.width * ratio(1, 997);
        let mut grid = vec![
            &lo_t + &tiny,
            &hi_t - &tiny,
            (&lo_t + &hi_t) / rat(2),
        ];
        if lo_closed { grid.push(lo_t.clone()); }
        if hi_closed { grid.push(hi_t.clone()); }
        let pin = inst.torsor.t_pin.clone();
        for candidate in [pin.clone(), &pin + &tiny, &pin - &tiny] {
            if sub.contains(&candidate) {
                grid.push(candidate);
            }
        }
        let counts: Vec<u64> = grid
            .iter()
            .filter(|t| sub.contains(t))
            .map(|t| inst.torsor.fiber_count(&TubePoint::skeleton(t.clone())).unwrap())
            .collect();
        prop_assert!(!counts.is_empty());
        if splits {
            prop_assert!(counts.iter().all(|&c| c == inst.torsor.p));
        } else {
            prop_assert!(counts.contains(&1));
        }
    }
}

#[test]
fn invalid_points_and_subintervals_are_rejected() {
    let annulus = Annulus::new(CenterTag::AtZero, Interval::open(rat(-2), rat(0))).unwrap();
    let ts = TorsorSpec::new(3, annulus, rat(-1), Orientation::SplitsBelow).unwrap();
    assert_eq!(
        ts.fiber_count(&TubePoint::skeleton(rat(0))),
        Err(Error::PointOutsideAnnulus)
    );
    assert_eq!(
        ts.splits_over_tube(&Interval::closed(rat(-2), rat(-1))),
        Err(Error::SubIntervalNotContained)
    );
    assert_eq!(
        ts.components_over(&Interval::open(rat(-1), rat(-1))),
        Err(Error::EmptyInterval)
    );
}
