//! The isomorphism classification is an equivalence relation on skeleton
//! intervals, and transport along any normalizing map preserves skeleton
//! membership and off-skeleton depth.

use bercov_core::annuli::{annuli_isomorphic, transport_point, NormalizingMap, TubePoint};
use bercov_core::interval::{Bound, Interval};
use bercov_core::rational::ratio;
use bercov_core::Rational;

use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| ratio(n, d))
}

fn interval() -> impl Strategy<Value = Interval> {
    (
        rational(),
        (1i64..=24, 1i64..=4).prop_map(|(n, d)| ratio(n, d)),
        any::<bool>(),
        any::<bool>(),
    )
        .prop_map(|(lo, width, lo_closed, hi_closed)| {
            let hi = &lo + &width;
            Interval::new(
                if lo_closed {
                    Bound::Closed(lo.clone())
                } else {
                    Bound::Open(lo)
                },
                if hi_closed {
                    Bound::Closed(hi.clone())
                } else {
                    Bound::Open(hi)
                },
            )
        })
}

fn map() -> impl Strategy<Value = NormalizingMap> {
    (rational(), any::<bool>()).prop_map(|(c, flip)| {
        if flip {
            NormalizingMap::flipped(c)
        } else {
            NormalizingMap::shift(c)
        }
    })
}

proptest! {
    #[test]
    fn classification_is_reflexive(j in interval()) {
        let id = annuli_isomorphic(&j, &j).expect("an interval is isomorphic to itself");
        prop_assert_eq!(id.apply_interval(&j), j);
    }

    #[test]
    fn classification_is_symmetric_and_composes(
        j1 in interval(),
        m12 in map(),
        m23 in map(),
    ) {
        // Build genuinely isomorphic intervals by pushing j1 through maps.
        let j2 = m12.apply_interval(&j1);
        let j3 = m23.apply_interval(&j2);

        let found12 = annuli_isomorphic(&j1, &j2).expect("isomorphic by construction");
        prop_assert_eq!(found12.apply_interval(&j1), j2.clone());
        let back = found12.inverse();
        prop_assert_eq!(back.apply_interval(&j2), j1.clone());
        prop_assert!(annuli_isomorphic(&j2, &j1).is_some());

        let found23 = annuli_isomorphic(&j2, &j3).expect("isomorphic by construction");
        let composed = found12.then(&found23);
        prop_assert_eq!(composed.apply_interval(&j1), j3.clone());
        prop_assert!(annuli_isomorphic(&j1, &j3).is_some());
    }

    #[test]
    fn non_translates_are_rejected(j in interval(), stretch in 2i64..=5) {
        // Stretching the length always breaks the classification.
        let lo = j.lo.value().unwrap().clone();
        let hi = j.hi.value().unwrap().clone();
        let stretched = Interval::new(
            j.lo.clone(),
            match &j.hi {
                Bound::Closed(_) => Bound::Closed(&lo + (&hi - &lo) * ratio(stretch, 1)),
                _ => Bound::Open(&lo + (&hi - &lo) * ratio(stretch, 1)),
            },
        );
        prop_assert!(annuli_isomorphic(&j, &stretched).is_none());
    }

    #[test]
    fn transport_preserves_skeleton_and_depth(
        m in map(),
        t_ret in rational(),
        depth in (0i64..=24, 1i64..=5).prop_map(|(n, d)| ratio(n, d)),
    ) {
        let pt = TubePoint::new(t_ret.clone(), &t_ret - &depth).unwrap();
        let image = transport_point(&m, &pt);
        prop_assert_eq!(image.on_skeleton(), pt.on_skeleton());
        prop_assert_eq!(&image.t_ret - &image.radius_log, &pt.t_ret - &pt.radius_log);
        // Round trip through the inverse map.
        prop_assert_eq!(transport_point(&m.inverse(), &image), pt);
    }
}
