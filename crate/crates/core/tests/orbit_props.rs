//! Property sweeps for the orbit engine.

use billiards_core::geom::{self, Triangle, TriangleKind};
use billiards_core::orbits::{
    fagnano, orbit_reflection_holds, shortest_orbits, three_bounce_orbits, two_bounce_orbits,
    Classification, Enumeration, OrbitKind,
};
use billiards_core::sample;
use billiards_core::Point;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn every_returned_orbit_satisfies_the_reflection_law() {
    let mut rng = ChaCha8Rng::seed_from_u64(201);
    for i in 0..150 {
        let n = 3 + (i % 9);
        let p = sample::random_convex_polygon(&mut rng, n);
        let two = two_bounce_orbits(&p, Enumeration::Full);
        for o in &two.orbits {
            assert!(orbit_reflection_holds(&p, o), "2-bounce law at {i}");
        }
        for band in &two.bands {
            for o in band.representatives(&p) {
                assert!(orbit_reflection_holds(&p, &o), "band law at {i}");
            }
            let mid = 0.5 * (band.interval.0 + band.interval.1);
            assert!(orbit_reflection_holds(&p, &band.orbit_at(&p, mid)));
        }
        for o in three_bounce_orbits(&p) {
            assert!(orbit_reflection_holds(&p, &o), "3-bounce law at {i}");
        }
        let report = shortest_orbits(&p);
        for o in &report.orbits {
            assert!(orbit_reflection_holds(&p, o), "minimizer law at {i}");
        }
    }
}

#[test]
fn shortest_two_bounce_equals_twice_width() {
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    for i in 0..300 {
        let p = sample::random_convex_polygon(&mut rng, 3 + (i % 10));
        let two = two_bounce_orbits(&p, Enumeration::Fast);
        let min2 = two
            .bands
            .iter()
            .map(|b| b.length)
            .chain(two.orbits.iter().map(|o| o.length))
            .fold(f64::INFINITY, f64::min);
        let w = geom::width(&p).value;
        assert!(
            (min2 - 2.0 * w).abs() <= 1e-9 * w,
            "min2={min2} 2w={} at {i}",
            2.0 * w
        );
    }
}

#[test]
fn inradius_width_bounds_hold_on_random_polygons() {
    let mut rng = ChaCha8Rng::seed_from_u64(203);
    for i in 0..1000 {
        let p = sample::random_convex_polygon(&mut rng, 4 + (i % 9));
        let report = shortest_orbits(&p);
        assert!(
            4.0 * report.inradius <= report.ell * (1.0 + 1e-9),
            "lower bound at {i}"
        );
        assert!(
            report.ell <= 2.0 * report.width * (1.0 + 1e-9),
            "upper bound at {i}"
        );
        // Equality with 2*width exactly when a 2-bounce minimizer exists.
        let has2 = !report.bands.is_empty() || report.orbits.iter().any(|o| o.period() == 2);
        let tied = (report.ell - 2.0 * report.width).abs() <= 1e-9 * report.ell;
        assert_eq!(has2, tied, "classification consistency at {i}");
    }
}

#[test]
fn ell_is_conformal_and_monotone() {
    let mut rng = ChaCha8Rng::seed_from_u64(204);
    for _ in 0..100 {
        let n = 4 + rng.random_range(0..7);
        let p = sample::random_convex_polygon(&mut rng, n);
        let ell = shortest_orbits(&p).ell;
        let r = 0.1 + 9.9 * rng.random::<f64>();
        let ell_scaled = shortest_orbits(&p.scaled(r)).ell;
        assert!(
            (ell_scaled - r * ell).abs() <= 1e-9 * ell_scaled.max(r * ell),
            "conformality"
        );

        let c = p.centroid();
        let lam = 0.3 + 0.6 * rng.random::<f64>();
        let inner = billiards_core::ConvexPolygon::new(
            p.vertices().iter().map(|v| c.lerp(*v, lam)).collect(),
        )
        .unwrap();
        assert!(
            shortest_orbits(&inner).ell <= ell * (1.0 + 1e-9),
            "monotone"
        );
    }
}

#[test]
fn three_bounce_orbits_are_regular_and_unique_per_triple() {
    let mut rng = ChaCha8Rng::seed_from_u64(205);
    for _ in 0..100 {
        let n = 4 + rng.random_range(0..7);
        let p = sample::random_convex_polygon(&mut rng, n);
        let orbits = three_bounce_orbits(&p);
        let mut seen = Vec::new();
        for o in &orbits {
            assert!(o.is_regular());
            let OrbitKind::ThreeBounce { edges } = o.kind else {
                panic!("wrong kind");
            };
            assert!(!seen.contains(&edges), "one orbit per accepted triple");
            seen.push(edges);
        }
    }
}

#[test]
fn minimizing_three_bounce_orbits_are_regular() {
    let mut rng = ChaCha8Rng::seed_from_u64(206);
    for _ in 0..300 {
        let n = 3 + rng.random_range(0..8);
        let p = sample::random_convex_polygon(&mut rng, n);
        let report = shortest_orbits(&p);
        for o in &report.orbits {
            if o.period() == 3 {
                assert!(o.is_regular(), "minimizing 3-bounce orbit is regular");
            }
        }
    }
}

#[test]
fn fagnano_is_shorter_than_twice_each_altitude() {
    let mut rng = ChaCha8Rng::seed_from_u64(207);
    let mut seen_acute = 0;
    while seen_acute < 200 {
        let t = sample::random_triangle(&mut rng, 1e-3);
        if t.kind() != TriangleKind::Acute {
            continue;
        }
        seen_acute += 1;
        let orbit = fagnano(&t).unwrap();
        for i in 0..3 {
            assert!(orbit.length < 2.0 * t.altitude_len(i) + 1e-12);
        }
        let poly = t.to_polygon();
        assert!(orbit_reflection_holds(&poly, &orbit));
    }
}

#[test]
fn centrally_symmetric_polygons_are_two_bounce_only() {
    let mut rng = ChaCha8Rng::seed_from_u64(208);
    for _ in 0..150 {
        let n = 3 + rng.random_range(0..6);
        let p = sample::random_symmetric_polygon(&mut rng, n);
        let report = shortest_orbits(&p);
        assert_eq!(report.classification, Classification::TwoBounceOnly);
        assert!((report.ell - 2.0 * report.width).abs() <= 1e-9 * report.ell);
    }
}

#[test]
fn fagnano_equals_triangle_engine_on_acute_triangles() {
    let mut rng = ChaCha8Rng::seed_from_u64(209);
    let mut checked = 0;
    while checked < 100 {
        let t = sample::random_triangle(&mut rng, 1e-3);
        let poly = t.to_polygon();
        let report = shortest_orbits(&poly);
        match t.kind() {
            TriangleKind::Acute => {
                let orbit = fagnano(&t).unwrap();
                assert!((report.ell - orbit.length).abs() <= 1e-9 * orbit.length);
                checked += 1;
            }
            _ => {
                assert!((report.ell - 2.0 * report.width).abs() <= 1e-9 * report.ell);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn prop_length_bounds(seed in any::<u64>(), n in 4usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = sample::random_convex_polygon(&mut rng, n);
        let report = shortest_orbits(&p);
        prop_assert!(4.0 * report.inradius <= report.ell * (1.0 + 1e-9));
        prop_assert!(report.ell <= 2.0 * report.width * (1.0 + 1e-9));
    }

    #[test]
    fn prop_validation_idempotent(seed in any::<u64>(), n in 3usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = sample::random_convex_polygon(&mut rng, n);
        let q = billiards_core::ConvexPolygon::new(p.vertices().to_vec()).unwrap();
        prop_assert_eq!(p.vertices(), q.vertices());
    }

    #[test]
    fn prop_capacity_equals_ell(seed in any::<u64>(), n in 3usize..10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = sample::random_convex_polygon(&mut rng, n);
        let report = shortest_orbits(&p);
        prop_assert_eq!(report.capacity, report.ell);
    }
}

#[test]
fn right_cornered_quadrilaterals_match_the_oracle_in_both_regimes() {
    // Quadrilaterals with one right corner and no parallel edges: depending
    // on the apex, the minimum is either the two-bounce altitude family or
    // a three-bounce orbit. Cross-check both regimes against the
    // brute-force oracle.
    let mut seen2 = 0usize;
    let mut seen3 = 0usize;
    for k in 0..10 {
        let t = k as f64;
        let apex = Point::new(0.70 + 0.03 * t, 0.65 + 0.043 * t);
        let quad = billiards_core::ConvexPolygon::new(vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            apex,
            Point::new(0.0, 0.8),
        ])
        .unwrap();
        let report = shortest_orbits(&quad);
        let brute = billiards_core::oracle::brute_force_min(&quad, 900, true);
        assert!(
            (report.ell - brute.ell).abs() <= 1e-3 * quad.diameter(),
            "k={k}: engine {} vs oracle {}",
            report.ell,
            brute.ell
        );
        match report.classification {
            Classification::TwoBounceOnly => seen2 += 1,
            _ => seen3 += 1,
        }
    }
    assert!(seen2 > 0, "two-bounce regime represented");
    assert!(seen3 > 0, "three-bounce regime represented");
}

#[test]
fn triangle_trichotomy_on_random_triangles() {
    let mut rng = ChaCha8Rng::seed_from_u64(210);
    for i in 0..200 {
        let t = sample::random_triangle(&mut rng, 1e-3);
        let poly = t.to_polygon();
        let report = shortest_orbits(&poly);
        match t.kind() {
            TriangleKind::Acute => {
                assert_eq!(
                    report.classification,
                    Classification::ThreeBounceOnly,
                    "{i}"
                );
                assert_eq!(report.orbits.len(), 1);
                assert_eq!(report.orbits[0].period(), 3);
            }
            TriangleKind::Right | TriangleKind::Obtuse => {
                assert_eq!(report.classification, Classification::TwoBounceOnly, "{i}");
                // Minimizer is the altitude orbit from the widest vertex.
                let widest =
                    Triangle::new(poly.vertex(0), poly.vertex(1), poly.vertex(2)).widest_vertex();
                let v = poly.vertex(widest);
                assert!(report
                    .orbits
                    .iter()
                    .any(|o| o.points.iter().any(|q| q.distance(v) < 1e-9)));
            }
        }
    }
}
