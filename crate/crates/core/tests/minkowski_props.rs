//! Properties of the Minkowski billiard engine.

use billiards_core::geom::{Triangle, Vec2};
use billiards_core::minkowski::{
    k_altitude, k_length, minkowski_fagnano_search_from, minkowski_shortest, minkowski_two_bounce,
    Gauge, TOL_REFL,
};
use billiards_core::orbits::{shortest_orbits, two_bounce_orbits, Enumeration};
use billiards_core::sample;
use billiards_core::{ConvexPolygon, Point};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn disc_gauge_agrees_with_euclidean_engine() {
    let disc = Gauge::disc();
    let mut rng = ChaCha8Rng::seed_from_u64(401);
    for _ in 0..25 {
        let n = 3 + rng.random_range(0..6);
        let p = sample::random_convex_polygon(&mut rng, n);
        let kreport = minkowski_shortest(&p, &disc).unwrap();
        let ereport = shortest_orbits(&p);
        assert!(
            (kreport.ell - ereport.ell).abs() <= 1e-9 * ereport.ell,
            "ell mismatch: {} vs {}",
            kreport.ell,
            ereport.ell
        );
        assert_eq!(kreport.classification, ereport.classification);

        // Altitudes agree with perpendicular feet on every edge line.
        for e in 0..p.len() {
            let line = p.edge_line(e);
            for v in 0..p.len() {
                let q = p.vertex(v);
                if line.signed_distance(q).abs() < 1e-9 * p.diameter() {
                    continue;
                }
                let kfoot = k_altitude(&disc, q, &line).unwrap();
                let efoot = billiards_core::geom::foot_of_perpendicular(q, &line);
                assert!(kfoot.distance(efoot) <= 1e-9 * p.diameter());
            }
        }
    }
}

#[test]
fn disc_gauge_two_bounce_set_matches_euclidean_full_enumeration() {
    let disc = Gauge::disc();
    let mut rng = ChaCha8Rng::seed_from_u64(402);
    for _ in 0..15 {
        let n = 3 + rng.random_range(0..5);
        let p = sample::random_convex_polygon(&mut rng, n);
        let kset = minkowski_two_bounce(&p, &disc);
        let eset = two_bounce_orbits(&p, Enumeration::Full);
        assert_eq!(kset.bands.len(), eset.bands.len());
        assert_eq!(kset.orbits.len(), eset.orbits.len());
        for ko in &kset.orbits {
            assert!(
                eset.orbits.iter().any(|eo| {
                    eo.points.len() == ko.points.len()
                        && ko
                            .points
                            .iter()
                            .all(|q| eo.points.iter().any(|w| w.distance(*q) < 1e-9))
                }),
                "orbit sets agree"
            );
        }
    }
}

#[test]
fn disc_gauge_square_bands_match_euclidean_bands() {
    // Parallel-edge K-altitude bands with the disc gauge must reproduce the
    // Euclidean bands, interval for interval.
    let disc = Gauge::disc();
    let sq = ConvexPolygon::new(vec![
        Point::new(0.0, 0.0),
        Point::new(1.0, 0.0),
        Point::new(1.0, 1.0),
        Point::new(0.0, 1.0),
    ])
    .unwrap();
    let kset = minkowski_two_bounce(&sq, &disc);
    let eset = two_bounce_orbits(&sq, Enumeration::Full);
    assert_eq!(kset.bands.len(), 2);
    assert_eq!(kset.bands.len(), eset.bands.len());
    for (kb, eb) in kset.bands.iter().zip(&eset.bands) {
        assert_eq!((kb.edge_a, kb.edge_b), (eb.edge_a, eb.edge_b));
        assert!((kb.interval.0 - eb.interval.0).abs() < 1e-9);
        assert!((kb.interval.1 - eb.interval.1).abs() < 1e-9);
        assert!((kb.k_length - eb.length).abs() < 1e-9);
        assert!((kb.displacement.norm() - eb.separation()).abs() < 1e-9);
    }
    assert!(kset.orbits.is_empty() == eset.orbits.is_empty());
}

#[test]
fn fagnano_search_is_unique_across_restarts() {
    let p4 = Gauge::p_ball(4.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(403);
    let mut tested = 0;
    while tested < 10 {
        let t = sample::random_triangle(&mut rng, 0.05);
        let mut found: Option<Vec<Point>> = None;
        let mut all_converged = true;
        for _ in 0..20 {
            let init = [
                rng.random::<f64>(),
                rng.random::<f64>(),
                rng.random::<f64>(),
            ];
            match minkowski_fagnano_search_from(&t, &p4, init) {
                Ok(Some(orbit)) => {
                    for r in &orbit.residuals {
                        assert!(*r <= TOL_REFL);
                    }
                    if let Some(prev) = &found {
                        for (a, b) in prev.iter().zip(&orbit.points) {
                            assert!(a.distance(*b) <= 1e-6, "restarts disagree: {a:?} vs {b:?}");
                        }
                    } else {
                        found = Some(orbit.points.clone());
                    }
                }
                Ok(None) => all_converged = false,
                Err(e) => panic!("search error: {e}"),
            }
        }
        // Only count triangles where at least one start converged.
        if found.is_some() && all_converged {
            tested += 1;
        }
    }
}

#[test]
fn gauge_euler_relation_and_symmetry() {
    let gauges = [
        Gauge::disc(),
        Gauge::p_ball(4.0).unwrap(),
        Gauge::p_ball(1.5).unwrap(),
        Gauge::ellipse(2.0, 1.0).unwrap(),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    for g in &gauges {
        for _ in 0..200 {
            let v = Vec2::new(
                rng.random::<f64>() * 4.0 - 2.0,
                rng.random::<f64>() * 4.0 - 2.0,
            );
            if v.norm() < 1e-3 {
                continue;
            }
            let n = g.norm(v);
            let grad = g.gradient(v);
            assert!((grad.dot(v) - n).abs() <= 1e-8 * n, "euler relation");
            assert!((g.norm(-v) - n).abs() <= 1e-12 * n, "symmetry");
        }
    }
}

#[test]
fn k_lengths_are_orientation_invariant() {
    let p4 = Gauge::p_ball(4.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(405);
    for _ in 0..50 {
        let pts: Vec<Point> = (0..3)
            .map(|_| Point::new(rng.random::<f64>(), rng.random::<f64>()))
            .collect();
        let fwd = k_length(&p4, pts[0], pts[1])
            + k_length(&p4, pts[1], pts[2])
            + k_length(&p4, pts[2], pts[0]);
        let rev = k_length(&p4, pts[0], pts[2])
            + k_length(&p4, pts[2], pts[1])
            + k_length(&p4, pts[1], pts[0]);
        assert!((fwd - rev).abs() <= 1e-12 * fwd.max(1e-12));
    }
}

#[test]
fn equilateral_p4_shortest_matches_gauge_oracle() {
    // Cross-check the full Minkowski engine against the brute-force
    // boundary search run with the gauge metric.
    let p4 = Gauge::p_ball(4.0).unwrap();
    let side = 1.0;
    let tri = ConvexPolygon::new(vec![
        Point::new(0.0, 0.0),
        Point::new(side, 0.0),
        Point::new(0.5 * side, 3.0_f64.sqrt() / 2.0 * side),
    ])
    .unwrap();
    let report = minkowski_shortest(&tri, &p4).unwrap();
    let (oracle_ell, _) = billiards_core::oracle::brute_force_min_gauge(&tri, &p4, 600, true);
    assert!(
        (report.ell - oracle_ell).abs() <= 2e-3,
        "engine={} oracle={}",
        report.ell,
        oracle_ell
    );
}

#[test]
fn obtuse_triangle_has_no_fagnano_for_any_builtin_gauge() {
    let t = Triangle::new(
        Point::new(0.0, 0.0),
        Point::new(1.0, 0.0),
        Point::new(1.8, 0.45),
    );
    for g in [
        Gauge::disc(),
        Gauge::p_ball(4.0).unwrap(),
        Gauge::ellipse(1.5, 0.8).unwrap(),
    ] {
        assert!(
            billiards_core::minkowski::minkowski_fagnano_search(&t, &g)
                .unwrap()
                .is_none(),
            "gauge {:?}",
            g
        );
    }
}
