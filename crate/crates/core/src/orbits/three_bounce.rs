//! Regular 3-bounce orbits on a convex polygon.
//!
//! Every regular 3-bounce orbit is the Fagnano orbit (altitude-feet
//! triangle) of the acute triangle cut out by three edge lines, restricted
//! to triangles containing the table and to feet landing in the open edges.
//! Edge triples are enumerated brute force with an O(1) rejection of triples
//! whose outward normals do not positively span the plane (those cannot cut
//! out a containing triangle).

use rayon::prelude::*;

use crate::geom::{
    foot_of_perpendicular, line_intersection, ConvexPolygon, LineIntersection, Point, Triangle,
    TriangleKind, Vec2, TOL_SIDE,
};

use super::{Orbit, OrbitError, OrbitKind};

/// The acute triangle cut out by the supporting lines of edges `i, j, k`,
/// when it exists, contains `p`, and is acute; `None` otherwise.
pub fn acute_triangle_from_edges(
    p: &ConvexPolygon,
    i: usize,
    j: usize,
    k: usize,
) -> Option<Triangle> {
    if i == j || j == k || i == k {
        return None;
    }
    // The three inner half-planes bound a triangle containing the polygon
    // iff the outward normals positively span the plane, i.e. the origin is
    // interior to their convex hull.
    let normals = [
        p.outward_normal(i),
        p.outward_normal(j),
        p.outward_normal(k),
    ];
    if !origin_in_triangle_interior(normals) {
        return None;
    }

    let li = p.edge_line(i);
    let lj = p.edge_line(j);
    let lk = p.edge_line(k);
    let a = match line_intersection(&lj, &lk) {
        LineIntersection::Point(q) => q,
        LineIntersection::Parallel => return None,
    };
    let b = match line_intersection(&lk, &li) {
        LineIntersection::Point(q) => q,
        LineIntersection::Parallel => return None,
    };
    let c = match line_intersection(&li, &lj) {
        LineIntersection::Point(q) => q,
        LineIntersection::Parallel => return None,
    };
    let tri = Triangle::try_new(a, b, c)?;
    if tri.kind() != TriangleKind::Acute {
        return None;
    }
    // The spanning test implies containment; recheck the vertices anyway.
    let scale = p.diameter();
    debug_assert!(
        p.vertices()
            .iter()
            .all(|v| tri.contains(*v, 10.0 * TOL_SIDE * scale)),
        "cut-out triangle must contain the table"
    );
    Some(tri)
}

fn origin_in_triangle_interior(n: [Vec2; 3]) -> bool {
    let mut sign = 0.0f64;
    for t in 0..3 {
        let a = n[t];
        let b = n[(t + 1) % 3];
        let cr = (b - a).cross(Vec2::new(0.0, 0.0) - a);
        if cr.abs() <= TOL_SIDE {
            return false;
        }
        if sign == 0.0 {
            sign = cr.signum();
        } else if cr.signum() != sign {
            return false;
        }
    }
    true
}

/// The Fagnano orbit of an acute triangle: the unique regular 3-bounce
/// orbit, through the feet of the three altitudes.
pub fn fagnano(tri: &Triangle) -> Result<Orbit, OrbitError> {
    if tri.kind() != TriangleKind::Acute {
        return Err(OrbitError::NotAcute);
    }
    // Feet ordered by the side they lie on: side 0 = ab, 1 = bc, 2 = ca.
    let f0 = tri.altitude_foot(2);
    let f1 = tri.altitude_foot(0);
    let f2 = tri.altitude_foot(1);
    let length = f0.distance(f1) + f1.distance(f2) + f2.distance(f0);
    Ok(Orbit {
        points: vec![f0, f1, f2],
        regular: vec![true; 3],
        support_lines: vec![None; 3],
        length,
        kind: OrbitKind::ThreeBounce { edges: [0, 1, 2] },
    })
}

/// All regular 3-bounce orbits on `p`: one per edge triple whose cut-out
/// triangle is acute, contains `p`, and whose Fagnano feet land in the open
/// edges. Edge triples are scanned in parallel; output is ordered by triple.
pub fn three_bounce_orbits(p: &ConvexPolygon) -> Vec<Orbit> {
    let n = p.len();
    if n < 3 {
        return Vec::new();
    }
    let mut nested: Vec<Vec<Orbit>> = Vec::new();
    (0..n)
        .into_par_iter()
        .map(|i| {
            let mut found = Vec::new();
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    if let Some(orbit) = orbit_for_triple(p, i, j, k) {
                        found.push(orbit);
                    }
                }
            }
            found
        })
        .collect_into_vec(&mut nested);
    nested.into_iter().flatten().collect()
}

fn orbit_for_triple(p: &ConvexPolygon, i: usize, j: usize, k: usize) -> Option<Orbit> {
    acute_triangle_from_edges(p, i, j, k)?;
    // Feet are the projections of the opposite line intersections; computing
    // them per edge keeps the edge association explicit.
    let lines = [p.edge_line(i), p.edge_line(j), p.edge_line(k)];
    let edges = [i, j, k];
    let mut feet = [Point::new(0.0, 0.0); 3];
    let tol = TOL_SIDE * p.diameter();
    for t in 0..3 {
        let opp = match line_intersection(&lines[(t + 1) % 3], &lines[(t + 2) % 3]) {
            LineIntersection::Point(q) => q,
            LineIntersection::Parallel => return None,
        };
        let foot = foot_of_perpendicular(opp, &lines[t]);
        // Foot must land in the open polygon edge, not merely on its line.
        let s = (foot - p.vertex(edges[t])).dot(p.edge_dir(edges[t]));
        if s <= tol || s >= p.edge_len(edges[t]) - tol {
            return None;
        }
        feet[t] = foot;
    }
    let length = feet[0].distance(feet[1]) + feet[1].distance(feet[2]) + feet[2].distance(feet[0]);
    let orbit = Orbit {
        points: feet.to_vec(),
        regular: vec![true; 3],
        support_lines: vec![None; 3],
        length,
        kind: OrbitKind::ThreeBounce { edges },
    };
    debug_assert!(super::orbit_reflection_holds(p, &orbit));
    Some(orbit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Point;

    fn poly(coords: &[(f64, f64)]) -> ConvexPolygon {
        ConvexPolygon::new(coords.iter().map(|&(x, y)| Point::new(x, y)).collect()).unwrap()
    }

    #[test]
    fn equilateral_cut_by_its_own_edges() {
        let t = poly(&[(0.0, 0.0), (1.0, 0.0), (0.5, 3.0_f64.sqrt() / 2.0)]);
        let tri = acute_triangle_from_edges(&t, 0, 1, 2).expect("identity cut");
        let verts = tri.vertices();
        for v in t.vertices() {
            assert!(verts.iter().any(|w| w.distance(*v) < 1e-9));
        }
    }

    #[test]
    fn square_triples_are_rejected() {
        let sq = poly(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]);
        for i in 0..4 {
            for j in (i + 1)..4 {
                for k in (j + 1)..4 {
                    assert!(acute_triangle_from_edges(&sq, i, j, k).is_none());
                }
            }
        }
        assert!(three_bounce_orbits(&sq).is_empty());
    }

    #[test]
    fn hexagon_alternating_edges_cut_equilateral() {
        let hex = ConvexPolygon::regular(6, 1.0);
        let tri = acute_triangle_from_edges(&hex, 0, 2, 4).expect("equilateral cut");
        assert_eq!(tri.kind(), TriangleKind::Acute);
        for v in hex.vertices() {
            assert!(tri.contains(*v, 1e-9));
        }
        let sides = [
            tri.a.distance(tri.b),
            tri.b.distance(tri.c),
            tri.c.distance(tri.a),
        ];
        assert!((sides[0] - sides[1]).abs() < 1e-9);
        assert!((sides[1] - sides[2]).abs() < 1e-9);
    }

    #[test]
    fn fagnano_of_equilateral_is_midpoint_triangle() {
        let tri = Triangle::new(
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(0.5, 3.0_f64.sqrt() / 2.0),
        );
        let orbit = fagnano(&tri).unwrap();
        assert!((orbit.length - 1.5).abs() < 1e-12);
        for m in [
            Point::new(0.5, 0.0),
            Point::new(0.75, 3.0_f64.sqrt() / 4.0),
            Point::new(0.25, 3.0_f64.sqrt() / 4.0),
        ] {
            assert!(orbit.points.iter().any(|q| q.distance(m) < 1e-12));
        }

        // Inscribed in the unit circle: length 3*sqrt(3)/2.
        let p = ConvexPolygon::regular(3, 1.0);
        let tri2 = Triangle::new(p.vertex(0), p.vertex(1), p.vertex(2));
        let orbit2 = fagnano(&tri2).unwrap();
        assert!((orbit2.length - 3.0 * 3.0_f64.sqrt() / 2.0).abs() < 1e-12);
    }

    #[test]
    fn fagnano_rejects_right_triangle() {
        let tri = Triangle::new(
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(0.0, 1.0),
        );
        assert_eq!(fagnano(&tri).unwrap_err(), OrbitError::NotAcute);
    }

    #[test]
    fn nine_gon_has_three_orbits() {
        let p = ConvexPolygon::regular(9, 1.0);
        let orbits = three_bounce_orbits(&p);
        assert_eq!(orbits.len(), 3);
        let expect = 3.0 * 3.0_f64.sqrt() * (std::f64::consts::PI / 9.0).cos();
        for o in &orbits {
            assert!((o.length - expect).abs() < 1e-9);
            assert!(o.is_regular());
        }
    }

    #[test]
    fn pentagon_has_no_regular_three_bounce() {
        let p = ConvexPolygon::regular(5, 1.0);
        assert!(three_bounce_orbits(&p).is_empty());
    }

    #[test]
    fn acute_triangle_own_fagnano() {
        let t = poly(&[(0.0, 0.0), (1.0, 0.0), (0.42, 0.85)]);
        let orbits = three_bounce_orbits(&t);
        assert_eq!(orbits.len(), 1);
        let tri = Triangle::new(t.vertex(0), t.vertex(1), t.vertex(2));
        let direct = fagnano(&tri).unwrap();
        assert!((orbits[0].length - direct.length).abs() < 1e-12);
    }
}
