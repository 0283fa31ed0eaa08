//! Property suites for the geometric kernel: random vertex configurations
//! against the algebraic identities and the coordinate route.

use proptest::prelude::*;

use simuorb_core::geometry::{
    arc_distance, check_equivalent, classify_quadruplet, delta, point_coords, quadruplet_of,
    radius_sq, radius_sq_quadruplet, signed_delta, triplet_of, QuadKind, Quadruplet, Triplet,
};
use simuorb_core::oracle::cocyclic_radius_sq;
use simuorb_core::Error;

fn order() -> impl Strategy<Value = u32> {
    5u32..=60
}

/// Four distinct vertex indices of an order-n arrangement.
fn quadruplet() -> impl Strategy<Value = Quadruplet> {
    order()
        .prop_flat_map(|n| {
            (
                Just(n),
                proptest::sample::subsequence((0..n).collect::<Vec<_>>(), 4),
                0usize..24,
            )
        })
        .prop_map(|(n, mut picks, perm)| {
            // subsequence is sorted; spread over all orderings.
            let orders = [
                [0, 1, 2, 3],
                [0, 2, 1, 3],
                [0, 3, 1, 2],
                [1, 0, 2, 3],
                [2, 0, 1, 3],
                [3, 0, 1, 2],
                [1, 2, 0, 3],
                [1, 3, 0, 2],
                [2, 3, 0, 1],
                [2, 1, 0, 3],
                [3, 1, 0, 2],
                [3, 2, 0, 1],
                [0, 1, 3, 2],
                [0, 2, 3, 1],
                [0, 3, 2, 1],
                [1, 0, 3, 2],
                [2, 0, 3, 1],
                [3, 0, 2, 1],
                [1, 2, 3, 0],
                [1, 3, 2, 0],
                [2, 3, 1, 0],
                [2, 1, 3, 0],
                [3, 1, 2, 0],
                [3, 2, 1, 0],
            ];
            let ord = orders[perm % orders.len()];
            let idx = [
                picks[ord[0]],
                picks[ord[1]],
                picks[ord[2]],
                picks[ord[3]],
            ];
            picks.sort_unstable();
            Quadruplet::new(n, idx).expect("four distinct vertices")
        })
}

proptest! {
    #[test]
    fn path_lengths_sum_to_n(n in 3u32..200, i in 0u32..200, j in 0u32..200) {
        let (i, j) = (i % n, j % n);
        prop_assume!(i != j);
        let d1 = delta(i, j, n).unwrap();
        let d2 = delta(j, i, n).unwrap();
        prop_assert_eq!(d1 + d2, n);
        prop_assert!((1..n).contains(&d1));
    }

    #[test]
    fn signed_path_length_is_minimal(n in 3u32..200, i in 0u32..200, j in 0u32..200) {
        let (i, j) = (i % n, j % n);
        prop_assume!(i != j);
        let s = signed_delta(i, j, n).unwrap();
        let d = i64::from(delta(i, j, n).unwrap());
        prop_assert_eq!(s.rem_euclid(i64::from(n)), d);
        prop_assert!(2 * s.abs() <= i64::from(n));
    }

    #[test]
    fn extraction_preserves_the_radius(q in quadruplet()) {
        match triplet_of(&q) {
            Ok(t) => {
                let by_descriptor = radius_sq(&t).value();
                let by_indices = radius_sq_quadruplet(&q).unwrap().value();
                let scale = by_descriptor.max(1.0);
                prop_assert!(
                    (by_descriptor - by_indices).abs() <= 1e-10 * scale,
                    "{} vs {}",
                    by_descriptor,
                    by_indices
                );
            }
            Err(Error::ParallelLines { .. }) | Err(Error::NotAdmissible) => {}
            Err(e) => prop_assert!(false, "unexpected error {e:?}"),
        }
    }

    #[test]
    fn intersection_norm_matches_the_radius(q in quadruplet()) {
        match (point_coords(&q), radius_sq_quadruplet(&q)) {
            (Ok(point), Ok(j)) => {
                prop_assert!(
                    (point.norm_sq() - j.value()).abs() <= 1e-9 * j.value().max(1.0),
                    "|P|^2 = {} vs J = {}",
                    point.norm_sq(),
                    j.value()
                );
            }
            (Err(Error::ParallelLines { .. }), _) => {}
            (_, Err(Error::ParallelLines { .. })) => {}
            (a, b) => prop_assert!(false, "inconsistent outcomes {a:?} / {b:?}"),
        }
    }

    #[test]
    fn sign_law_matches_the_classification(q in quadruplet()) {
        if let Ok(t) = triplet_of(&q) {
            match classify_quadruplet(&q).kind {
                QuadKind::Simple => prop_assert!(t.is_simple(), "{t:?}"),
                QuadKind::ComplexExterior | QuadKind::ComplexInterior => {
                    prop_assert!(t.is_complex(), "{t:?}")
                }
            }
            // Exterior shapes sit outside the unit circle, interior inside.
            let j = radius_sq(&t).value();
            match classify_quadruplet(&q).kind {
                QuadKind::ComplexInterior => prop_assert!(j < 1.0),
                _ => prop_assert!(j > 1.0 || (j - 1.0).abs() < 1e-12),
            }
        }
    }

    #[test]
    fn radius_respects_the_global_bound(q in quadruplet()) {
        if let Ok(t) = triplet_of(&q) {
            let n = f64::from(t.n());
            let bound = 4.0 / (std::f64::consts::PI / n).sin().powi(2);
            let j = radius_sq(&t).value();
            prop_assert!((0.0..=bound * (1.0 + 1e-12)).contains(&j));
        }
    }

    #[test]
    fn radius_symmetries(q in quadruplet()) {
        use simuorb_core::geometry::radius_sq_raw;
        if let Ok(t) = triplet_of(&q) {
            let n = t.n();
            let (p, qq, r) = (i64::from(t.p()), i64::from(t.q()), t.r());
            let s = t.s();
            let j = radius_sq(&t).value();
            let scale = j.max(1.0);
            for (ip, iq, ir) in [
                (qq, p, r),
                (p, qq, s),
                (qq, p, s),
                (i64::from(n) - p, qq, p + r),
                (i64::from(n) - p, qq, -qq - r),
            ] {
                let image = radius_sq_raw(n, ip, iq, ir).unwrap();
                prop_assert!(
                    (image - j).abs() <= 1e-12 * scale,
                    "image ({ip},{iq},{ir}) gives {image} vs {j}"
                );
            }
        }
    }

    #[test]
    fn equivalent_descriptors_share_points(q in quadruplet()) {
        if let Ok(t) = triplet_of(&q) {
            // Concurrent diameters collapse to the center; no shift there.
            prop_assume!(radius_sq(&t).value() > 1e-12);
            // The chord-swap image is always equivalent with shift p + r.
            let swapped = Triplet::new(t.n(), t.q(), t.p(), t.s());
            prop_assume!(swapped.is_ok());
            let swapped = swapped.unwrap();
            let n = i64::from(t.n());
            let rho = check_equivalent(&t, &swapped);
            prop_assert!(rho.is_some(), "{t:?} vs {swapped:?}");
            let expect = (i64::from(t.p()) + t.r()).rem_euclid(n);
            prop_assert_eq!(rho.unwrap().rem_euclid(n), expect);
            // The arc-length route agrees up to folding at n/2.
            let arc = arc_distance(&t, &swapped).unwrap();
            let folded = (expect as f64).min(n as f64 - expect as f64);
            prop_assert!((arc.shift_real - folded).abs() < 1e-5);
        }
    }

    #[test]
    fn reconstruction_round_trip(q in quadruplet()) {
        if let Ok(t) = triplet_of(&q) {
            // Anchored at its own first vertex, the descriptor rebuilds a
            // quadruplet describing the same chord pair.
            let rebuilt = quadruplet_of(q.indices()[0], &t);
            let lines = |idx: [u32; 4]| {
                let mut a = [idx[0], idx[1]];
                let mut b = [idx[2], idx[3]];
                a.sort_unstable();
                b.sort_unstable();
                (a, b)
            };
            prop_assert_eq!(lines(rebuilt.indices()), lines(q.indices()));
        }
    }

    #[test]
    fn cocyclic_formula_reduces_to_the_lattice_one(q in quadruplet()) {
        let n = q.n();
        let alpha = q
            .indices()
            .map(|m| f64::from(m) * std::f64::consts::TAU / f64::from(n));
        match (cocyclic_radius_sq(alpha, 1.0), radius_sq_quadruplet(&q)) {
            (Ok(j), Ok(want)) => prop_assert!(
                (j - want.value()).abs() <= 1e-10 * want.value().max(1.0),
                "{} vs {}",
                j,
                want.value()
            ),
            (Err(Error::ParallelLines { .. }), Err(Error::ParallelLines { .. })) => {}
            (a, b) => prop_assert!(false, "inconsistent outcomes {a:?} / {b:?}"),
        }
    }
}
