//! Enumeration of generalised 2-bounce orbits on a convex polygon.
//!
//! Three sources, mirroring the geometry of double normals:
//! (i) parallel edge pairs carry a band of regular orbits over the overlap
//! of their projections; (ii) a vertex whose supporting line is parallel to
//! an edge drops an altitude onto that edge, giving a singular orbit when
//! the foot is interior to the edge; (iii) two vertices whose perpendicular
//! lines are both disjoint from the interior span a singular orbit.
//!
//! Sources (i) and (ii) already contain every orbit of minimal length
//! (twice the width): a vertex-vertex double normal at minimal length would
//! force the width function to decrease past its minimum. Source (iii) is
//! therefore only enumerated on request.

use crate::geom::{edge_antipodes, ConvexPolygon, TOL_PARALLEL, TOL_SIDE};

use super::{vertex_edge_orbit, vertex_vertex_orbit, Orbit, TwoBounceBand};

/// Enumeration breadth for the 2-bounce search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Enumeration {
    /// Bands and vertex-to-edge altitudes; complete for the shortest orbits.
    Fast,
    /// Additionally all vertex-to-vertex orbits.
    Full,
}

/// Output of [`two_bounce_orbits`].
#[derive(Clone, Debug)]
pub struct TwoBounceSet {
    pub bands: Vec<TwoBounceBand>,
    pub orbits: Vec<Orbit>,
}

/// All 2-bounce bands and (per `mode`) singular 2-bounce orbits on `p`.
/// Orbits whose trace belongs to a band are reported once, via the band.
pub fn two_bounce_orbits(p: &ConvexPolygon, mode: Enumeration) -> TwoBounceSet {
    let n = p.len();
    let tol = TOL_SIDE * p.diameter();

    let mut bands = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let di = p.edge_dir(i);
            let dj = p.edge_dir(j);
            if di.cross(dj).abs() > TOL_PARALLEL || di.dot(dj) >= 0.0 {
                continue;
            }
            // Opposite parallel edges; overlap of their projections on di.
            let base = p.vertex(i);
            let sep = p.outward_normal(j).dot(p.vertex(j) - base);
            debug_assert!(sep > 0.0);
            let sa = (p.vertex(j) - base).dot(di);
            let sb = (p.vertex(j + 1) - base).dot(di);
            let len = p.edge_len(i);
            let snap = |t: f64| {
                if t.abs() <= tol {
                    0.0
                } else if (t - len).abs() <= tol {
                    len
                } else {
                    t
                }
            };
            let lo = snap(sb.min(sa).max(0.0));
            let hi = snap(sb.max(sa).min(len));
            if hi - lo > tol {
                bands.push(TwoBounceBand {
                    edge_a: i,
                    edge_b: j,
                    direction: p.outward_normal(i) * -1.0,
                    interval: (lo, hi),
                    length: 2.0 * sep,
                });
            }
        }
    }

    let in_band = |a: crate::geom::Point, b: crate::geom::Point| {
        bands.iter().any(|band| band.contains_segment(p, a, b, tol))
    };

    let mut orbits: Vec<Orbit> = Vec::new();

    // (ii) Vertex altitudes: only caliper-antipodal vertices have their
    // perpendicular support line disjoint from the interior.
    let antipodes = edge_antipodes(p);
    for (edge, ap) in antipodes.iter().enumerate() {
        for &v in &ap.vertices {
            let t = (p.vertex(v) - p.vertex(edge)).dot(p.edge_dir(edge));
            if t <= tol || t >= p.edge_len(edge) - tol {
                continue; // foot not on the open edge
            }
            let foot = p.point_on_edge(edge, t);
            if in_band(p.vertex(v), foot) {
                continue;
            }
            let orbit = vertex_edge_orbit(p, v, edge, foot);
            if !orbits.iter().any(|o| o.same_trace(&orbit, tol)) {
                orbits.push(orbit);
            }
        }
    }

    if mode == Enumeration::Full {
        for i in 0..n {
            for j in (i + 1)..n {
                if let Some(orbit) = vertex_vertex_orbit(p, i, j) {
                    if in_band(orbit.points[0], orbit.points[1]) {
                        continue;
                    }
                    if !orbits.iter().any(|o| o.same_trace(&orbit, tol)) {
                        orbits.push(orbit);
                    }
                }
            }
        }
    }

    TwoBounceSet { bands, orbits }
}
