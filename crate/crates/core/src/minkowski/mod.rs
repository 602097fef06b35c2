//! Symmetric planar Minkowski billiards.
//!
//! A symmetric strictly convex smooth body `K` replaces the Euclidean disc
//! as the length structure: segment length is the gauge (Minkowski
//! functional) of `K` applied to the displacement. Reflection becomes
//! criticality of the two-leg length functional along the supporting line,
//! perpendicular feet become K-altitudes (unique by strict convexity), and
//! the Fagnano orbit of a triangle is found numerically by cyclic
//! coordinate descent, which is monotone in total K-length.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

mod gauge;

pub use gauge::{Gauge, GaugeError, GaugeOracle};

use crate::geom::{
    edge_antipodes, is_disjoint_from_interior, line_intersection, ConvexPolygon, Line,
    LineIntersection, Point, Triangle, Vec2, TOL_PARALLEL, TOL_SIDE,
};
use crate::orbits::{Classification, TOL_LEN};

/// Relative tolerance on reflection-criticality residuals.
pub const TOL_REFL: f64 = 1e-8;

const MAX_SWEEPS: usize = 500;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum MinkowskiError {
    #[error("point lies on the line")]
    PointOnLine,
    #[error("segment endpoints coincide")]
    DegenerateSegment,
    #[error("Fagnano search did not converge within the iteration cap")]
    NonConvergence,
}

/// K-length of the straight segment from `a` to `b`.
pub fn k_length(k: &Gauge, a: Point, b: Point) -> f64 {
    k.norm(b - a)
}

/// The unique point of `l` minimizing the K-distance from `v`, by
/// derivative-sign bisection of the strictly convex objective.
pub fn k_altitude(k: &Gauge, v: Point, l: &Line) -> Result<Point, MinkowskiError> {
    let scale = v.distance(l.point) + 1.0;
    if l.signed_distance(v).abs() <= 1e-12 * scale {
        return Err(MinkowskiError::PointOnLine);
    }
    let slope = |t: f64| k.gradient(l.at(t) - v).dot(l.direction);
    // Euclidean foot as the starting guess; expand to a sign-changing bracket.
    let t0 = l.project_param(v);
    let mut step = scale.max(1e-6);
    let (mut lo, mut hi) = (t0 - step, t0 + step);
    let mut guard = 0;
    while slope(lo) >= 0.0 {
        step *= 2.0;
        lo -= step;
        guard += 1;
        assert!(guard < 200, "altitude bracket expansion diverged");
    }
    let mut guard = 0;
    while slope(hi) <= 0.0 {
        step *= 2.0;
        hi += step;
        guard += 1;
        assert!(guard < 200, "altitude bracket expansion diverged");
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if slope(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-15 * scale {
            break;
        }
    }
    Ok(l.at(0.5 * (lo + hi)))
}

/// The unique parallel pair through the endpoints of `a`-`b` for which the
/// segment is a K-altitude: the common direction annihilates the gauge
/// gradient of the displacement.
pub fn k_altitude_parallels(k: &Gauge, a: Point, b: Point) -> Result<(Line, Line), MinkowskiError> {
    let v = b - a;
    if v.norm() <= 1e-300 {
        return Err(MinkowskiError::DegenerateSegment);
    }
    let d = k
        .gradient(v)
        .perp()
        .normalized()
        .ok_or(MinkowskiError::DegenerateSegment)?;
    Ok((Line::new(a, d), Line::new(b, d)))
}

/// A closed K-billiard orbit with per-bounce criticality residuals.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MinkowskiOrbit {
    pub points: Vec<Point>,
    pub regular: Vec<bool>,
    pub support_lines: Vec<Option<Line>>,
    /// Euclidean length of the trace.
    pub length: f64,
    /// Gauge length of the closed orbit.
    pub k_length: f64,
    /// Scale-free reflection residual per bounce.
    pub residuals: Vec<f64>,
}

impl MinkowskiOrbit {
    pub fn period(&self) -> usize {
        self.points.len()
    }

    /// Assemble an orbit from bounce points and per-bounce tangent
    /// directions (the supporting line directions).
    fn assemble(
        k: &Gauge,
        p: &ConvexPolygon,
        points: Vec<Point>,
        tangents: Vec<Vec2>,
    ) -> MinkowskiOrbit {
        let n = points.len();
        let tol = TOL_SIDE * p.diameter();
        let mut regular = Vec::with_capacity(n);
        let mut support = Vec::with_capacity(n);
        let mut residuals = Vec::with_capacity(n);
        let mut length = 0.0;
        let mut klen = 0.0;
        for i in 0..n {
            let q = points[i];
            let prev = points[(i + n - 1) % n];
            let next = points[(i + 1) % n];
            length += q.distance(next);
            klen += k.norm(next - q);
            let g1 = k.gradient(q - prev);
            let g2 = k.gradient(q - next);
            let denom = (g1.norm() + g2.norm()).max(1e-300);
            residuals.push((g1 + g2).dot(tangents[i]).abs() / denom);
            let smooth = is_open_edge_point(p, q, tol);
            regular.push(smooth);
            support.push(if smooth {
                None
            } else {
                Some(Line::new(q, tangents[i]))
            });
        }
        MinkowskiOrbit {
            points,
            regular,
            support_lines: support,
            length,
            k_length: klen,
            residuals,
        }
    }
}

fn is_open_edge_point(p: &ConvexPolygon, q: Point, tol: f64) -> bool {
    for i in 0..p.len() {
        if q.distance(p.vertex(i)) <= tol {
            return false;
        }
    }
    p.boundary_distance(q) <= tol
}

/// A band of parallel regular 2-bounce K-orbits between two parallel edges.
/// Unique per parallel pair by strict convexity of the gauge.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MinkowskiBand {
    pub edge_a: usize,
    pub edge_b: usize,
    /// Displacement of the K-altitude from the line of `edge_a` to the line
    /// of `edge_b`.
    pub displacement: Vec2,
    /// Base interval in arclength coordinates of `edge_a`.
    pub interval: (f64, f64),
    /// Common gauge length of the member orbits.
    pub k_length: f64,
}

impl MinkowskiBand {
    pub fn orbit_at(&self, p: &ConvexPolygon, k: &Gauge, t: f64) -> MinkowskiOrbit {
        let q1 = p.point_on_edge(self.edge_a, t);
        let q2 = q1 + self.displacement;
        let d = p.edge_dir(self.edge_a);
        MinkowskiOrbit::assemble(k, p, vec![q1, q2], vec![d, d])
    }

    pub fn representatives(&self, p: &ConvexPolygon, k: &Gauge) -> [MinkowskiOrbit; 2] {
        [
            self.orbit_at(p, k, self.interval.0),
            self.orbit_at(p, k, self.interval.1),
        ]
    }

    fn contains_segment(&self, p: &ConvexPolygon, a: Point, b: Point, tol: f64) -> bool {
        for (s, e) in [(a, b), (b, a)] {
            let t = (s - p.vertex(self.edge_a)).dot(p.edge_dir(self.edge_a));
            if t < self.interval.0 - tol || t > self.interval.1 + tol {
                continue;
            }
            let q1 = p.point_on_edge(self.edge_a, t);
            if s.distance(q1) <= tol && e.distance(q1 + self.displacement) <= tol {
                return true;
            }
        }
        false
    }
}

/// Output of [`minkowski_two_bounce`].
#[derive(Clone, Debug)]
pub struct MinkowskiTwoBounce {
    pub bands: Vec<MinkowskiBand>,
    pub orbits: Vec<MinkowskiOrbit>,
}

/// All generalised 2-bounce K-orbits on `p`: parallel-edge K-altitude bands,
/// vertex-to-edge K-altitudes, and vertex-to-vertex segments whose altitude
/// parallels are support lines.
pub fn minkowski_two_bounce(p: &ConvexPolygon, k: &Gauge) -> MinkowskiTwoBounce {
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
            let base = p.vertex(i);
            let lj = p.edge_line(j);
            let foot = k_altitude(k, base, &lj).expect("parallel edges are separated");
            let w = foot - base;
            // Base parameters on edge i whose partner lands on edge j.
            let s0 = (base + w - p.vertex(j)).dot(dj);
            // Moving t along edge i moves the partner by -t along edge j.
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
            let lo = snap((s0 - p.edge_len(j)).max(0.0));
            let hi = snap(s0.min(len));
            if hi - lo > tol {
                bands.push(MinkowskiBand {
                    edge_a: i,
                    edge_b: j,
                    displacement: w,
                    interval: (lo, hi),
                    k_length: 2.0 * k.norm(w),
                });
            }
        }
    }

    let in_band = |a: Point, b: Point| bands.iter().any(|band| band.contains_segment(p, a, b, tol));

    let mut orbits: Vec<MinkowskiOrbit> = Vec::new();
    let push_unique = |orbit: MinkowskiOrbit, orbits: &mut Vec<MinkowskiOrbit>| {
        let dup = orbits.iter().any(|o| {
            o.points.len() == orbit.points.len()
                && orbit
                    .points
                    .iter()
                    .all(|q| o.points.iter().any(|w| w.distance(*q) <= tol))
        });
        if !dup {
            orbits.push(orbit);
        }
    };

    // (ii) Vertex-to-edge K-altitudes. The support condition at the vertex is
    // a line parallel to the edge, i.e. the vertex is caliper-antipodal.
    let antipodes = edge_antipodes(p);
    for (edge, ap) in antipodes.iter().enumerate() {
        let line = p.edge_line(edge);
        for &v in &ap.vertices {
            let foot = match k_altitude(k, p.vertex(v), &line) {
                Ok(f) => f,
                Err(_) => continue,
            };
            let t = (foot - p.vertex(edge)).dot(p.edge_dir(edge));
            if t <= tol || t >= p.edge_len(edge) - tol {
                continue;
            }
            if in_band(p.vertex(v), foot) {
                continue;
            }
            let d = p.edge_dir(edge);
            let orbit = MinkowskiOrbit::assemble(k, p, vec![p.vertex(v), foot], vec![d, d]);
            push_unique(orbit, &mut orbits);
        }
    }

    // (iii) Vertex-to-vertex segments with both altitude parallels disjoint.
    for i in 0..n {
        for j in (i + 1)..n {
            let (a, b) = (p.vertex(i), p.vertex(j));
            let Ok((la, lb)) = k_altitude_parallels(k, a, b) else {
                continue;
            };
            if !is_disjoint_from_interior(p, &la) || !is_disjoint_from_interior(p, &lb) {
                continue;
            }
            if in_band(a, b) {
                continue;
            }
            let orbit =
                MinkowskiOrbit::assemble(k, p, vec![a, b], vec![la.direction, lb.direction]);
            push_unique(orbit, &mut orbits);
        }
    }

    MinkowskiTwoBounce { bands, orbits }
}

/// Numerical Fagnano search on a triangle: minimize total K-length over one
/// point per side by cyclic coordinate descent (monotone in K-length).
/// Converging to an interior critical point with all residuals within
/// [`TOL_REFL`] certifies the unique Fagnano triangle; sliding into the
/// parameter boundary reports `None` ("not found").
pub fn minkowski_fagnano_search(
    tri: &Triangle,
    k: &Gauge,
) -> Result<Option<MinkowskiOrbit>, MinkowskiError> {
    minkowski_fagnano_search_from(tri, k, [0.5, 0.5, 0.5])
}

/// [`minkowski_fagnano_search`] with explicit initial side fractions in
/// `(0, 1)`.
///
/// Cyclic coordinate descent globalizes (total K-length decreases every
/// substep), then a damped Newton iteration on the three criticality
/// equations polishes to full accuracy. Right-like triangles have no
/// interior critical point; their descent collapses two points toward a
/// common corner, which is detected and reported as `None`.
pub fn minkowski_fagnano_search_from(
    tri: &Triangle,
    k: &Gauge,
    init: [f64; 3],
) -> Result<Option<MinkowskiOrbit>, MinkowskiError> {
    let v = tri.vertices();
    let sides: Vec<(Point, Vec2, f64)> = (0..3)
        .map(|i| {
            let a = v[i];
            let b = v[(i + 1) % 3];
            let d = (b - a).normalized().expect("nondegenerate triangle");
            (a, d, a.distance(b))
        })
        .collect();
    let scale = sides.iter().map(|s| s.2).fold(0.0, f64::max);
    let tol_t = TOL_SIDE * scale;

    let mut t: [f64; 3] = [
        init[0].clamp(0.0, 1.0) * sides[0].2,
        init[1].clamp(0.0, 1.0) * sides[1].2,
        init[2].clamp(0.0, 1.0) * sides[2].2,
    ];
    let point = |i: usize, ti: f64| sides[i].0 + sides[i].1 * ti;
    let residuals = |t: &[f64; 3]| -> [f64; 3] {
        let q = [point(0, t[0]), point(1, t[1]), point(2, t[2])];
        let mut out = [0.0; 3];
        for i in 0..3 {
            let g1 = k.gradient(q[i] - q[(i + 2) % 3]);
            let g2 = k.gradient(q[i] - q[(i + 1) % 3]);
            out[i] = (g1 + g2).dot(sides[i].1).abs() / (g1.norm() + g2.norm()).max(1e-300);
        }
        out
    };
    let min_pair_dist = |t: &[f64; 3]| -> f64 {
        let q = [point(0, t[0]), point(1, t[1]), point(2, t[2])];
        q[0].distance(q[1])
            .min(q[1].distance(q[2]))
            .min(q[0].distance(q[2]))
    };
    let finish = |t: &[f64; 3]| -> MinkowskiOrbit {
        let points: Vec<Point> = (0..3).map(|i| point(i, t[i])).collect();
        let tangents: Vec<Vec2> = (0..3).map(|i| sides[i].1).collect();
        assemble_on_triangle(k, points, tangents)
    };
    let interior = |t: &[f64; 3]| (0..3).all(|i| t[i] > tol_t && t[i] < sides[i].2 - tol_t);

    let slope_vec = |t: &[f64; 3]| -> [f64; 3] {
        let q = [point(0, t[0]), point(1, t[1]), point(2, t[2])];
        let mut g = [0.0; 3];
        for i in 0..3 {
            g[i] = (k.gradient(q[i] - q[(i + 2) % 3]) + k.gradient(q[i] - q[(i + 1) % 3]))
                .dot(sides[i].1);
        }
        g
    };
    // Fix one coordinate, solve the other two criticality equations by a
    // small Newton iteration. Used by the valley polish below.
    let reduced_solve = |driver: usize, td: f64, seed: &[f64; 3]| -> Option<[f64; 3]> {
        let i1 = (driver + 1) % 3;
        let i2 = (driver + 2) % 3;
        let mut t = *seed;
        t[driver] = td;
        for _ in 0..40 {
            let g = slope_vec(&t);
            if g[i1].abs().max(g[i2].abs()) <= 1e-15 {
                return Some(t);
            }
            let h = 1e-7 * scale;
            let mut jac = [[0.0f64; 2]; 2];
            for (col, idx) in [i1, i2].into_iter().enumerate() {
                let mut tp = t;
                let mut tm = t;
                tp[idx] = (tp[idx] + h).min(sides[idx].2);
                tm[idx] = (tm[idx] - h).max(0.0);
                let gp = slope_vec(&tp);
                let gm = slope_vec(&tm);
                let dh = tp[idx] - tm[idx];
                jac[0][col] = (gp[i1] - gm[i1]) / dh;
                jac[1][col] = (gp[i2] - gm[i2]) / dh;
            }
            let det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
            if det.abs() <= 1e-300 {
                return None;
            }
            let b = [-g[i1], -g[i2]];
            let s1 = (b[0] * jac[1][1] - b[1] * jac[0][1]) / det;
            let s2 = (b[1] * jac[0][0] - b[0] * jac[1][0]) / det;
            t[i1] = (t[i1] + s1).clamp(0.0, sides[i1].2);
            t[i2] = (t[i2] + s2).clamp(0.0, sides[i2].2);
        }
        let g = slope_vec(&t);
        (g[i1].abs().max(g[i2].abs()) <= 1e-12).then_some(t)
    };

    // The criticality system can be ill-conditioned along one direction
    // (the total K-length is extraordinarily flat there), leaving Newton's
    // endpoint underdetermined at the noise floor. Bisecting the reduced
    // derivative of each coordinate over the whole side, with the other two
    // solved out from fixed midpoint seeds, replays identical arithmetic
    // for every start, so all converged searches land on the same point.
    let valley_polish = |t: &mut [f64; 3]| {
        for driver in 0..3 {
            let len = sides[driver].2;
            let margin = (tol_t).max(1e-9 * len);
            let seed = [0.5 * sides[0].2, 0.5 * sides[1].2, 0.5 * sides[2].2];
            let reduced_slope = |td: f64| -> Option<f64> {
                reduced_solve(driver, td, &seed).map(|tt| slope_vec(&tt)[driver])
            };
            // Fixed coarse scan for a sign change; the sub-solve can fail
            // near the corners, where the reduced system degenerates.
            let grid = 32;
            let mut bracket = None;
            let mut prev: Option<(f64, f64)> = None;
            for k in 0..=grid {
                let td = margin + (len - 2.0 * margin) * k as f64 / grid as f64;
                let Some(g) = reduced_slope(td) else {
                    prev = None;
                    continue;
                };
                if let Some((tp, gp)) = prev {
                    if gp < 0.0 && g >= 0.0 {
                        bracket = Some((tp, td));
                        break;
                    }
                }
                prev = Some((td, g));
            }
            let Some((mut lo, mut hi)) = bracket else {
                continue;
            };
            let mut ok = true;
            for _ in 0..90 {
                let mid = 0.5 * (lo + hi);
                match reduced_slope(mid) {
                    Some(g) if g < 0.0 => lo = mid,
                    Some(_) => hi = mid,
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                if let Some(tt) = reduced_solve(driver, 0.5 * (lo + hi), &seed) {
                    *t = tt;
                }
            }
        }
    };

    // Newton burst on the criticality system, Jacobian by central
    // differences. Returns true when it lands on a well-separated interior
    // root; `t` is left wherever the burst ended.
    let newton_burst = |t: &mut [f64; 3]| -> bool {
        let mut clamped = 0usize;
        for _ in 0..40 {
            let g = slope_vec(t);
            if g.iter().map(|x| x.abs()).fold(0.0, f64::max) <= 1e-13 {
                return true;
            }
            let h = 1e-7 * scale;
            let mut jac = [[0.0f64; 3]; 3];
            for j in 0..3 {
                let mut tp = *t;
                let mut tm = *t;
                tp[j] = (tp[j] + h).min(sides[j].2);
                tm[j] = (tm[j] - h).max(0.0);
                let gp = slope_vec(&tp);
                let gm = slope_vec(&tm);
                let dh = tp[j] - tm[j];
                for i in 0..3 {
                    jac[i][j] = (gp[i] - gm[i]) / dh;
                }
            }
            let Some(step) = solve3(jac, [-g[0], -g[1], -g[2]]) else {
                return false;
            };
            let mut hit_boundary = false;
            for j in 0..3 {
                let raw = t[j] + step[j];
                let lo = 1e-12 * sides[j].2;
                let hi = sides[j].2 * (1.0 - 1e-12);
                let new = raw.clamp(lo, hi);
                if new != raw {
                    hit_boundary = true;
                }
                t[j] = new;
            }
            if min_pair_dist(t) <= 1e-9 * scale {
                return false;
            }
            if hit_boundary {
                clamped += 1;
                if clamped >= 3 {
                    return false;
                }
            }
        }
        false
    };

    // Monotone cyclic coordinate descent, with periodic Newton bursts that
    // are rolled back when they fail.
    let mut shrink_run = 0usize;
    let mut prev_pair = min_pair_dist(&t);
    for sweep in 0..MAX_SWEEPS {
        for i in 0..3 {
            let a = point((i + 2) % 3, t[(i + 2) % 3]);
            let b = point((i + 1) % 3, t[(i + 1) % 3]);
            let d = sides[i].1;
            let len = sides[i].2;
            let slope = |ti: f64| {
                let q = point(i, ti);
                (k.gradient(q - a) + k.gradient(q - b)).dot(d)
            };
            t[i] = if slope(0.0) >= 0.0 {
                0.0
            } else if slope(len) <= 0.0 {
                len
            } else {
                let (mut lo, mut hi) = (0.0, len);
                for _ in 0..100 {
                    let mid = 0.5 * (lo + hi);
                    if slope(mid) < 0.0 {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                0.5 * (lo + hi)
            };
        }
        if !interior(&t) {
            // Slid into the parameter boundary: no interior critical point
            // reachable from this start.
            return Ok(None);
        }
        let pair = min_pair_dist(&t);
        if pair < prev_pair - 1e-16 * scale {
            shrink_run += 1;
        } else {
            shrink_run = 0;
        }
        prev_pair = pair;
        // Two points collapsing toward a common corner: degenerate, not a
        // Fagnano triangle.
        if pair <= 1e-9 * scale {
            return Ok(None);
        }
        let sound = |t: &[f64; 3]| {
            interior(t)
                && min_pair_dist(t) > 1e-9 * scale
                && residuals(t).iter().all(|ri| *ri <= TOL_REFL)
        };
        // Accept a candidate root: polish the flat direction, then verify.
        let accept = |t0: [f64; 3]| -> MinkowskiOrbit {
            let mut t = t0;
            valley_polish(&mut t);
            if sound(&t) {
                finish(&t)
            } else {
                finish(&t0)
            }
        };

        let r = residuals(&t);
        if r.iter().all(|ri| *ri <= 0.25 * TOL_REFL) {
            // Drive to the root so every start lands on the same point.
            let saved = t;
            if newton_burst(&mut t) && sound(&t) {
                return Ok(Some(accept(t)));
            }
            t = saved;
            return Ok(Some(accept(t)));
        }
        if sweep >= 20 && sweep % 20 == 0 {
            let saved = t;
            if newton_burst(&mut t) && sound(&t) {
                return Ok(Some(accept(t)));
            }
            t = saved;
        }
    }

    let r = residuals(&t);
    let pair = min_pair_dist(&t);
    if interior(&t) && pair > 1e-9 * scale && r.iter().all(|ri| *ri <= TOL_REFL) {
        let sound = |t: &[f64; 3]| {
            interior(t)
                && min_pair_dist(t) > 1e-9 * scale
                && residuals(t).iter().all(|ri| *ri <= TOL_REFL)
        };
        let mut polished = t;
        valley_polish(&mut polished);
        let final_t = if sound(&polished) { polished } else { t };
        return Ok(Some(finish(&final_t)));
    }
    // Boundary-attracted descent (a steadily collapsing pair, or parameters
    // heading into the sides' ends) means "not found": a Fagnano triangle
    // was not located, which is not a certificate that none exists.
    if !interior(&t) || pair <= 1e-6 * scale || shrink_run >= 20 {
        return Ok(None);
    }
    Err(MinkowskiError::NonConvergence)
}

fn solve3(a: [[f64; 3]; 3], b: [f64; 3]) -> Option<[f64; 3]> {
    let mut m = [[0.0f64; 4]; 3];
    for i in 0..3 {
        m[i][..3].copy_from_slice(&a[i]);
        m[i][3] = b[i];
    }
    for col in 0..3 {
        let piv =
            (col..3).max_by(|x, y| m[*x][col].abs().partial_cmp(&m[*y][col].abs()).unwrap())?;
        if m[piv][col].abs() <= 1e-300 {
            return None;
        }
        m.swap(col, piv);
        for row in 0..3 {
            if row == col {
                continue;
            }
            let f = m[row][col] / m[col][col];
            let pivot_row = m[col];
            for (target, pivot_val) in m[row].iter_mut().zip(pivot_row).skip(col) {
                *target -= f * pivot_val;
            }
        }
    }
    Some([m[0][3] / m[0][0], m[1][3] / m[1][1], m[2][3] / m[2][2]])
}

fn assemble_on_triangle(k: &Gauge, points: Vec<Point>, tangents: Vec<Vec2>) -> MinkowskiOrbit {
    let n = points.len();
    let mut residuals = Vec::with_capacity(n);
    let mut length = 0.0;
    let mut klen = 0.0;
    for i in 0..n {
        let q = points[i];
        let prev = points[(i + n - 1) % n];
        let next = points[(i + 1) % n];
        length += q.distance(next);
        klen += k.norm(next - q);
        let g1 = k.gradient(q - prev);
        let g2 = k.gradient(q - next);
        let denom = (g1.norm() + g2.norm()).max(1e-300);
        residuals.push((g1 + g2).dot(tangents[i]).abs() / denom);
    }
    MinkowskiOrbit {
        points,
        regular: vec![true; n],
        support_lines: vec![None; n],
        length,
        k_length: klen,
        residuals,
    }
}

/// Shortest-orbit report in the gauge geometry.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MinkowskiReport {
    /// Minimal gauge length.
    pub ell: f64,
    pub orbits: Vec<MinkowskiOrbit>,
    pub bands: Vec<MinkowskiBand>,
    /// Euclidean width and inradius of the table.
    pub width: f64,
    pub inradius: f64,
    pub classification: Classification,
    /// Capacity of `table x K`; equals `ell`.
    pub capacity: f64,
}

/// All shortest generalised closed K-billiard orbits on `p`.
pub fn minkowski_shortest(p: &ConvexPolygon, k: &Gauge) -> Result<MinkowskiReport, MinkowskiError> {
    let two = minkowski_two_bounce(p, k);

    // Regular 3-bounce candidates: Fagnano searches on every containing
    // cut-out triangle, one point per supporting line, restricted to feet in
    // the open polygon edges.
    let n = p.len();
    let tol = TOL_SIDE * p.diameter();
    let mut triples = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            for kk in (j + 1)..n {
                triples.push((i, j, kk));
            }
        }
    }
    let searched: Vec<Result<Option<MinkowskiOrbit>, MinkowskiError>> = triples
        .par_iter()
        .map(|&(i, j, kk)| fagnano_on_cut_triangle(p, k, i, j, kk))
        .collect();
    let mut three: Vec<MinkowskiOrbit> = Vec::new();
    for res in searched {
        if let Some(orbit) = res? {
            // Feet must land in the open edges of the polygon itself.
            let ok = orbit
                .points
                .iter()
                .all(|q| p.boundary_distance(*q) <= tol && is_open_edge_point(p, *q, tol));
            if ok {
                three.push(orbit);
            }
        }
    }

    let mut ell = f64::INFINITY;
    for band in &two.bands {
        ell = ell.min(band.k_length);
    }
    for orbit in two.orbits.iter().chain(&three) {
        ell = ell.min(orbit.k_length);
    }
    assert!(ell.is_finite(), "2-bounce K-orbits always exist");

    let keep = ell * (1.0 + TOL_LEN);
    let bands: Vec<MinkowskiBand> = two
        .bands
        .into_iter()
        .filter(|b| b.k_length <= keep)
        .collect();
    let orbits: Vec<MinkowskiOrbit> = two
        .orbits
        .into_iter()
        .chain(three)
        .filter(|o| o.k_length <= keep)
        .collect();
    let has2 = !bands.is_empty() || orbits.iter().any(|o| o.period() == 2);
    let has3 = orbits.iter().any(|o| o.period() == 3);

    let width = crate::geom::width(p).value;
    let (inr, _) = crate::geom::inradius(p);
    Ok(MinkowskiReport {
        ell,
        orbits,
        bands,
        width,
        inradius: inr,
        classification: match (has2, has3) {
            (true, false) => Classification::TwoBounceOnly,
            (false, true) => Classification::ThreeBounceOnly,
            _ => Classification::Both,
        },
        capacity: ell,
    })
}

/// Run the Fagnano search on the triangle cut out by three edge lines, with
/// the search parameterized directly on those lines.
fn fagnano_on_cut_triangle(
    p: &ConvexPolygon,
    k: &Gauge,
    i: usize,
    j: usize,
    kk: usize,
) -> Result<Option<MinkowskiOrbit>, MinkowskiError> {
    let Some(tri) = cut_triangle(p, i, j, kk) else {
        return Ok(None);
    };
    minkowski_fagnano_search(&tri, k)
}

/// The triangle cut out by the supporting lines of three edges when it
/// exists and contains the polygon (outward normals positively spanning).
pub(crate) fn cut_triangle(p: &ConvexPolygon, i: usize, j: usize, k: usize) -> Option<Triangle> {
    if i == j || j == k || i == k {
        return None;
    }
    let normals = [
        p.outward_normal(i),
        p.outward_normal(j),
        p.outward_normal(k),
    ];
    let mut sign = 0.0f64;
    for t in 0..3 {
        let a = normals[t];
        let b = normals[(t + 1) % 3];
        let cr = (b - a).cross(Vec2::new(0.0, 0.0) - a);
        if cr.abs() <= TOL_SIDE {
            return None;
        }
        if sign == 0.0 {
            sign = cr.signum();
        } else if cr.signum() != sign {
            return None;
        }
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
    Triangle::try_new(a, b, c)
}
