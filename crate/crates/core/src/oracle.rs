//! Independent brute-force verifier for shortest orbits.
//!
//! Minimal-length boundary configurations of two or three points that
//! cannot be translated into the open interior coincide with the shortest
//! generalised closed billiard orbits. This module searches those
//! configurations directly on a boundary grid, with translatability decided
//! by a linear feasibility program, so it shares no code path with the
//! reflection-based engine it cross-checks.
//!
//! Every configuration skipped by a prefilter is skipped soundly: either a
//! concrete interior placement witnesses translatability, or the
//! configuration is longer than a configuration already proven
//! non-translatable.

use rayon::prelude::*;

use crate::geom::{self, lp, ConvexPolygon, Line, Point, TOL_SIDE};
use crate::minkowski::Gauge;
use crate::orbits::{bounce_normal, Classification, MinReport, Orbit, OrbitKind};

/// Collect configurations within this relative window of the grid minimum
/// before refinement.
const COLLECT_WINDOW: f64 = 3e-4;
/// Report configurations within this relative window after refinement.
/// Tight enough to exclude near-ties that are not actual minimizers, loose
/// enough for the common-mode offset of the interior margin.
const REPORT_WINDOW: f64 = 1e-8;

/// A 2- or 3-point boundary configuration, stored as (edge, arclength)
/// pairs with cached positions and its length (`2|q1-q2|` for pairs,
/// perimeter for triples; Minkowski lengths when a gauge is supplied).
#[derive(Clone, Debug)]
pub struct BoundaryConfig {
    pub params: Vec<(usize, f64)>,
    pub points: Vec<Point>,
    pub length: f64,
}

impl BoundaryConfig {
    fn from_params(p: &ConvexPolygon, params: Vec<(usize, f64)>, seg: &dyn SegLen) -> Self {
        let points: Vec<Point> = params.iter().map(|&(e, t)| p.point_on_edge(e, t)).collect();
        let length = config_length(&points, seg);
        BoundaryConfig {
            params,
            points,
            length,
        }
    }
}

trait SegLen: Sync {
    fn len(&self, a: Point, b: Point) -> f64;
}

struct Euclid;
impl SegLen for Euclid {
    fn len(&self, a: Point, b: Point) -> f64 {
        a.distance(b)
    }
}

impl SegLen for Gauge {
    fn len(&self, a: Point, b: Point) -> f64 {
        self.norm(b - a)
    }
}

/// A triple whose three points are within a sliver of one chord traces the
/// same segment as its extreme pair, which the pair sweep already covers:
/// when a translation puts both extremes strictly inside, convexity puts
/// the whole chord inside too. Genuine minimal 3-point configurations are
/// Fagnano-type triangles and are uniformly non-flat.
fn nearly_collinear(pts: &[Point], diam: f64) -> bool {
    debug_assert_eq!(pts.len(), 3);
    let tol = 2e-3 * diam;
    for m in 0..3 {
        let a = pts[(m + 1) % 3];
        let b = pts[(m + 2) % 3];
        let chord = b - a;
        let len = chord.norm();
        if len <= tol {
            return true;
        }
        let t = (pts[m] - a).dot(chord) / (len * len);
        let dev = (pts[m] - a).cross(chord).abs() / len;
        if dev <= tol && (0.0..=1.0).contains(&t) {
            return true;
        }
    }
    false
}

fn config_length(points: &[Point], seg: &dyn SegLen) -> f64 {
    match points.len() {
        2 => 2.0 * seg.len(points[0], points[1]),
        3 => {
            seg.len(points[0], points[1])
                + seg.len(points[1], points[2])
                + seg.len(points[2], points[0])
        }
        _ => unreachable!("configs have 2 or 3 points"),
    }
}

/// Best margin by which the point set can be pushed into the interior:
/// the optimum of `max s` over translations `t` with every `q + t` at depth
/// at least `s`. Nonnegative for boundary configurations.
pub fn translation_margin(p: &ConvexPolygon, pts: &[Point]) -> f64 {
    let mut rows: Vec<lp::Row3> = Vec::with_capacity(p.len() * pts.len());
    for i in 0..p.len() {
        let n = p.outward_normal(i);
        let b = n.dot(p.vertex(i).to_vec());
        for q in pts {
            rows.push(([n.x, n.y, 1.0], b - n.dot(q.to_vec())));
        }
    }
    let bound = 4.0 * p.diameter()
        + p.vertices()
            .iter()
            .map(|v| v.x.abs().max(v.y.abs()))
            .fold(0.0, f64::max);
    match lp::maximize3([0.0, 0.0, 1.0], &rows, bound, 0x0b5e) {
        lp::Lp3::Optimal { x } => x[2],
        lp::Lp3::Infeasible => unreachable!("margin program is feasible"),
    }
}

/// True iff some translation places every point of the configuration
/// strictly inside `p`, at margin `TOL_SIDE * diameter`.
pub fn can_translate_into_interior(p: &ConvexPolygon, config: &BoundaryConfig) -> bool {
    points_translatable(p, &config.points)
}

fn points_translatable(p: &ConvexPolygon, pts: &[Point]) -> bool {
    translation_margin(p, pts) > TOL_SIDE * p.diameter()
}

/// Arclength-uniform boundary samples with every vertex included exactly.
fn boundary_grid(p: &ConvexPolygon, n: usize) -> Vec<(usize, f64)> {
    let perim = p.perimeter();
    let mut grid = Vec::with_capacity(n + p.len());
    for e in 0..p.len() {
        let len = p.edge_len(e);
        let cnt = ((n as f64 * len / perim).round() as usize).max(1);
        for k in 0..cnt {
            grid.push((e, len * k as f64 / cnt as f64));
        }
    }
    grid
}

/// Cheap sound witnesses of translatability: try explicit placements around
/// the deepest point of the polygon.
fn witness_translatable(
    p: &ConvexPolygon,
    center: Point,
    r_in: f64,
    pts: &[Point],
    delta: f64,
) -> bool {
    // Fits inside the indisc?
    if enclosing_radius(pts) < r_in - 2.0 * delta {
        return true;
    }
    // Centroid moved onto the Chebyshev center.
    let n = pts.len() as f64;
    let (mx, my) = pts
        .iter()
        .fold((0.0, 0.0), |acc, q| (acc.0 + q.x, acc.1 + q.y));
    let shift = center - Point::new(mx / n, my / n);
    if pts.iter().all(|q| p.depth(*q + shift) > delta) {
        return true;
    }
    false
}

fn enclosing_radius(pts: &[Point]) -> f64 {
    match pts {
        [a, b] => 0.5 * a.distance(*b),
        [a, b, c] => {
            // Circumradius, or half the longest side for obtuse triples.
            let (la, lb, lc) = (b.distance(*c), c.distance(*a), a.distance(*b));
            let area2 = (*b - *a).cross(*c - *a).abs();
            if area2 <= 1e-300 {
                return 0.5 * la.max(lb).max(lc);
            }
            let r = la * lb * lc / (2.0 * area2);
            let longest = la.max(lb).max(lc);
            // An obtuse triple fits in the disc over its longest side.
            let rest_sq = la * la + lb * lb + lc * lc - longest * longest;
            if longest * longest >= rest_sq {
                0.5 * longest
            } else {
                r
            }
        }
        _ => unreachable!(),
    }
}

struct Search<'a> {
    p: &'a ConvexPolygon,
    seg: &'a dyn SegLen,
    center: Point,
    r_in: f64,
    delta: f64,
}

impl<'a> Search<'a> {
    fn translatable(&self, pts: &[Point]) -> bool {
        if witness_translatable(self.p, self.center, self.r_in, pts, self.delta) {
            return true;
        }
        points_translatable(self.p, pts)
    }
}

/// Exhaustive grid search for the shortest non-translatable configurations,
/// optionally polished by constrained coordinate descent.
pub fn brute_force_min(p: &ConvexPolygon, n: usize, refine: bool) -> MinReport {
    let (ell, configs) = brute_force_search(p, n, refine, &Euclid);
    let orbits: Vec<Orbit> = configs.iter().map(|c| config_to_orbit(p, c)).collect();
    let has2 = orbits.iter().any(|o| o.period() == 2);
    let has3 = orbits.iter().any(|o| o.period() == 3);
    let w = geom::width(p).value;
    let (inr, _) = geom::inradius(p);
    MinReport {
        ell,
        orbits,
        bands: Vec::new(),
        width: w,
        inradius: inr,
        classification: match (has2, has3) {
            (true, false) => Classification::TwoBounceOnly,
            (false, true) => Classification::ThreeBounceOnly,
            _ => Classification::Both,
        },
        capacity: ell,
    }
}

/// Same search with segment lengths measured by a symmetric gauge; used to
/// certify the Minkowski engine.
pub fn brute_force_min_gauge(
    p: &ConvexPolygon,
    gauge: &Gauge,
    n: usize,
    refine: bool,
) -> (f64, Vec<BoundaryConfig>) {
    brute_force_search(p, n, refine, gauge)
}

fn brute_force_search(
    p: &ConvexPolygon,
    n: usize,
    refine: bool,
    seg: &dyn SegLen,
) -> (f64, Vec<BoundaryConfig>) {
    assert!(n >= 16, "grid too coarse");
    let (r_in, center) = geom::inradius(p);
    let delta = TOL_SIDE * p.diameter();
    let search = Search {
        p,
        seg,
        center,
        r_in,
        delta,
    };

    // Seed the cutoff with a width-realizing double normal, which can never
    // be translated inside (it is pinned between two parallel support lines).
    let width = geom::width(p);
    let mut best = f64::INFINITY;
    if let Some(&(e, v)) = width.pairs.first() {
        let line = p.edge_line(e);
        let foot = geom::foot_of_perpendicular(p.vertex(v), &line);
        let pts = [p.vertex(v), foot];
        if !search.translatable(&pts) {
            best = config_length(&pts, seg);
        }
    }

    // Slender tables can hide very flat 3-point basins between the grid
    // samples (short edges amplify the grid error). Seed every edge triple
    // with its descended best transversal configuration; the length cutoff
    // and the feasibility program still make every accept/reject decision.
    let mut seeds: Vec<BoundaryConfig> = Vec::new();
    for i in 0..p.len() {
        for j in (i + 1)..p.len() {
            for kk in (j + 1)..p.len() {
                let mut config = BoundaryConfig::from_params(
                    p,
                    vec![
                        (i, 0.5 * p.edge_len(i)),
                        (j, 0.5 * p.edge_len(j)),
                        (kk, 0.5 * p.edge_len(kk)),
                    ],
                    seg,
                );
                descend_unconstrained(&search, &mut config);
                if nearly_collinear(&config.points, p.diameter()) {
                    continue;
                }
                if !search.translatable(&config.points) {
                    best = best.min(config.length);
                    seeds.push(config);
                }
            }
        }
    }

    let grid = boundary_grid(p, n);
    let pos: Vec<Point> = grid.iter().map(|&(e, t)| p.point_on_edge(e, t)).collect();

    // Two-point sweep: scan pairs in parallel, keep candidates below the
    // cutoff that defeat the witnesses, then settle them by LP in length
    // order.
    let cutoff = |b: f64| b * (1.0 + COLLECT_WINDOW);
    let m = grid.len();
    let mut pair_cands: Vec<(f64, usize, usize)> = (0..m)
        .into_par_iter()
        .flat_map_iter(|i| {
            let search = &search;
            let pos = &pos;
            let bound = cutoff(best);
            (i + 1..m).filter_map(move |j| {
                let pts = [pos[i], pos[j]];
                if pts[0].distance(pts[1]) <= delta {
                    return None;
                }
                let len = config_length(&pts, search.seg);
                if len > bound {
                    return None;
                }
                if witness_translatable(search.p, search.center, search.r_in, &pts, search.delta) {
                    return None;
                }
                Some((len, i, j))
            })
        })
        .collect();
    pair_cands.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());

    let mut kept: Vec<BoundaryConfig> = Vec::new();
    for &(len, i, j) in &pair_cands {
        if len > cutoff(best) {
            break;
        }
        let pts = [pos[i], pos[j]];
        if points_translatable(p, &pts) {
            continue;
        }
        best = best.min(len);
        kept.push(BoundaryConfig::from_params(p, vec![grid[i], grid[j]], seg));
    }

    // Three-point sweep on a coarser grid, so the triple count stays near
    // the square of the requested sample count.
    let n3 = ((2.0 * (n as f64).powi(2)).cbrt().ceil() as usize)
        .max(48)
        .min(n);
    let grid3 = boundary_grid(p, n3);
    let pos3: Vec<Point> = grid3.iter().map(|&(e, t)| p.point_on_edge(e, t)).collect();
    let m3 = grid3.len();
    let mut triple_cands: Vec<(f64, usize, usize, usize)> = (0..m3)
        .into_par_iter()
        .flat_map_iter(|i| {
            let search = &search;
            let pos3 = &pos3;
            let bound = cutoff(best);
            (i + 1..m3).flat_map(move |j| {
                (j + 1..m3).filter_map(move |k| {
                    let pts = [pos3[i], pos3[j], pos3[k]];
                    if nearly_collinear(&pts, search.p.diameter()) {
                        return None; // flat triples trace 2-point configs
                    }
                    let len = config_length(&pts, search.seg);
                    if len > bound {
                        return None;
                    }
                    if witness_translatable(
                        search.p,
                        search.center,
                        search.r_in,
                        &pts,
                        search.delta,
                    ) {
                        return None;
                    }
                    Some((len, i, j, k))
                })
            })
        })
        .collect();
    triple_cands.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    for &(len, i, j, k) in &triple_cands {
        if len > cutoff(best) {
            break;
        }
        let pts = [pos3[i], pos3[j], pos3[k]];
        if points_translatable(p, &pts) {
            continue;
        }
        best = best.min(len);
        kept.push(BoundaryConfig::from_params(
            p,
            vec![grid3[i], grid3[j], grid3[k]],
            seg,
        ));
    }

    kept.extend(seeds);
    kept.retain(|c| c.length <= cutoff(best));

    if refine {
        for c in &mut kept {
            refine_config(&search, c);
        }
        let refined_best = kept.iter().map(|c| c.length).fold(best, f64::min);
        best = refined_best;
        kept.retain(|c| {
            c.length <= best * (1.0 + REPORT_WINDOW)
                && !(c.points.len() == 3 && nearly_collinear(&c.points, p.diameter()))
        });
    }

    // Deduplicate identical traces (cyclic or reversed orderings land on the
    // same point set after refinement).
    let tol = 1e-6 * p.diameter();
    let mut unique: Vec<BoundaryConfig> = Vec::new();
    for c in kept {
        let dup = unique.iter().any(|u| {
            u.points.len() == c.points.len()
                && c.points
                    .iter()
                    .all(|q| u.points.iter().any(|w| w.distance(*q) <= tol))
        });
        if !dup {
            unique.push(c);
        }
    }
    (best, unique)
}

/// Plain cyclic coordinate descent of the configuration length over the
/// closed edge segments, ignoring translatability (the caller tests it on
/// the result). Each substep is a strictly convex one-dimensional problem.
fn descend_unconstrained(search: &Search, config: &mut BoundaryConfig) {
    let p = search.p;
    let k = config.params.len();
    let mut points = config.points.clone();
    let mut params = config.params.clone();
    let mut length = config.length;
    for _ in 0..300 {
        let before = length;
        for idx in 0..k {
            let (edge, _) = params[idx];
            let others: Vec<Point> = (0..k).filter(|i| *i != idx).map(|i| points[i]).collect();
            let obj = |t: f64| {
                let q = p.point_on_edge(edge, t);
                others.iter().map(|o| search.seg.len(q, *o)).sum::<f64>()
            };
            let t_new = golden_min(&obj, 0.0, p.edge_len(edge));
            points[idx] = p.point_on_edge(edge, t_new);
            params[idx] = (edge, t_new);
        }
        length = config_length(&points, search.seg);
        if before - length < 1e-14 * p.diameter() {
            break;
        }
    }
    config.points = points;
    config.params = params;
    config.length = length;
}

/// Constrained cyclic coordinate descent in the arclength parameters:
/// each step solves the one-dimensional strictly convex length problem on
/// the point's edge, backtracking to the translatability boundary whenever
/// the unconstrained step would leave the feasible (non-translatable) set.
fn refine_config(search: &Search, config: &mut BoundaryConfig) {
    let p = search.p;
    let k = config.params.len();
    let mut points = config.points.clone();
    let mut params = config.params.clone();
    let mut length = config.length;
    for _ in 0..40 {
        let before = length;
        for idx in 0..k {
            let (edge, t_cur) = params[idx];
            let edge_len = p.edge_len(edge);
            let others: Vec<Point> = (0..k).filter(|i| *i != idx).map(|i| points[i]).collect();
            let obj = |t: f64| {
                let q = p.point_on_edge(edge, t);
                others.iter().map(|o| search.seg.len(q, *o)).sum::<f64>()
            };
            let t_star = golden_min(&obj, 0.0, edge_len);
            let accept = |t: f64, points: &mut Vec<Point>| {
                points[idx] = p.point_on_edge(edge, t);
            };
            let mut trial = points.clone();
            accept(t_star, &mut trial);
            let t_new = if !search.translatable(&trial) {
                t_star
            } else {
                // Bisect back toward the current (non-translatable) value.
                let (mut lo, mut hi) = (t_star, t_cur);
                for _ in 0..40 {
                    let mid = 0.5 * (lo + hi);
                    let mut probe = points.clone();
                    accept(mid, &mut probe);
                    if search.translatable(&probe) {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                hi
            };
            accept(t_new, &mut points);
            params[idx] = (edge, t_new);
            length = config_length(&points, search.seg);
        }
        if before - length < 1e-13 * p.diameter() {
            break;
        }
    }
    config.points = points;
    config.params = params;
    config.length = length;
}

/// Golden-section minimum of a strictly convex function on `[lo, hi]`.
fn golden_min(f: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..80 {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    0.5 * (lo + hi)
}

fn config_to_orbit(p: &ConvexPolygon, config: &BoundaryConfig) -> Orbit {
    let tol = TOL_SIDE * p.diameter();
    let regular: Vec<bool> = config
        .params
        .iter()
        .map(|&(e, t)| t > tol && t < p.edge_len(e) - tol)
        .collect();
    let mut orbit = Orbit {
        points: config.points.clone(),
        regular: regular.clone(),
        support_lines: vec![None; config.points.len()],
        length: config.length,
        kind: OrbitKind::Sampled,
    };
    // Witness lines for singular bounces, from the bounce normal.
    let lines: Vec<Option<Line>> = (0..orbit.points.len())
        .map(|i| {
            if regular[i] {
                None
            } else {
                bounce_normal(&orbit, i)
                    .normalized()
                    .map(|nu| Line::new(orbit.points[i], nu.perp()))
            }
        })
        .collect();
    orbit.support_lines = lines;
    orbit
}
