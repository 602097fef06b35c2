//! Approximation scheme for non-polygonal convex tables.
//!
//! A convex body is given through its support function. Inscribing the
//! polygon spanned by boundary points in a uniform direction grid and
//! certifying `body ⊂ (1+eps) * polygon` (about a fixed interior center)
//! sandwiches the shortest-orbit length between the polygon's value and
//! `(1+eps)` times it, by monotonicity and conformality of that length.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{self, ConvexPolygon, Point, PolygonError, Vec2, TOL_SIDE};
use crate::orbits::{self, MinReport};

/// Initial direction count for the uniform grid.
const INITIAL_DIRECTIONS: usize = 16;
/// Hard cap on the direction count before giving up certification.
const MAX_DIRECTIONS: usize = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ApproxError {
    #[error("body has no certifiable interior around the chosen center")]
    OriginNotInterior,
    #[error("direction cap exceeded without certifying the requested accuracy")]
    CertificationFailed,
    #[error("polygon is not centrally symmetric")]
    NotCentrallySymmetric,
}

/// A convex body described by its support function.
///
/// `support(u)` is the maximum of `<x, u>` over the body for unit `u`;
/// `boundary_point(u)` is a maximizing boundary point. Oracles must be
/// reentrant; directions are evaluated in parallel batches.
pub trait ConvexBody: Sync {
    fn support(&self, u: Vec2) -> f64;
    fn boundary_point(&self, u: Vec2) -> Point;
}

/// Disc of radius `r` centered at the origin.
pub struct Disc {
    pub radius: f64,
}

impl ConvexBody for Disc {
    fn support(&self, _u: Vec2) -> f64 {
        self.radius
    }
    fn boundary_point(&self, u: Vec2) -> Point {
        Point::new(self.radius * u.x, self.radius * u.y)
    }
}

/// Axis-aligned ellipse with semi-axes `a`, `b`, centered at the origin.
pub struct Ellipse {
    pub a: f64,
    pub b: f64,
}

impl ConvexBody for Ellipse {
    fn support(&self, u: Vec2) -> f64 {
        ((self.a * u.x).powi(2) + (self.b * u.y).powi(2)).sqrt()
    }
    fn boundary_point(&self, u: Vec2) -> Point {
        let h = self.support(u);
        Point::new(self.a * self.a * u.x / h, self.b * self.b * u.y / h)
    }
}

/// A polygon viewed as a support oracle.
pub struct PolygonBody {
    pub polygon: ConvexPolygon,
}

impl ConvexBody for PolygonBody {
    fn support(&self, u: Vec2) -> f64 {
        self.polygon.support(u).0
    }
    fn boundary_point(&self, u: Vec2) -> Point {
        let (_, i) = self.polygon.support(u);
        self.polygon.vertex(i)
    }
}

/// Intersection of finitely many discs (a disc-polygon).
#[derive(Debug)]
pub struct DiscPolygon {
    centers: Vec<Point>,
    radii: Vec<f64>,
    /// Arc-intersection corners of the boundary.
    corners: Vec<Point>,
}

impl DiscPolygon {
    /// Build from discs `(center, radius)`. Fails when the intersection has
    /// empty interior.
    pub fn new(discs: Vec<(Point, f64)>) -> Result<Self, ApproxError> {
        assert!(!discs.is_empty());
        let centers: Vec<Point> = discs.iter().map(|d| d.0).collect();
        let radii: Vec<f64> = discs.iter().map(|d| d.1).collect();
        let inside = |p: Point, slack: f64| {
            centers
                .iter()
                .zip(&radii)
                .all(|(c, r)| p.distance(*c) <= r + slack)
        };
        let mut corners = Vec::new();
        let scale = radii.iter().cloned().fold(0.0, f64::max);
        for i in 0..centers.len() {
            for j in (i + 1)..centers.len() {
                for p in circle_intersections(centers[i], radii[i], centers[j], radii[j]) {
                    if inside(p, 1e-9 * scale) {
                        corners.push(p);
                    }
                }
            }
        }
        // Interior probe: average of corners, or the single center.
        let probe = if corners.is_empty() {
            centers[0]
        } else {
            let n = corners.len() as f64;
            let (sx, sy) = corners
                .iter()
                .fold((0.0, 0.0), |acc, p| (acc.0 + p.x, acc.1 + p.y));
            Point::new(sx / n, sy / n)
        };
        let depth = centers
            .iter()
            .zip(&radii)
            .map(|(c, r)| r - probe.distance(*c))
            .fold(f64::INFINITY, f64::min);
        if depth <= 1e-9 * scale {
            return Err(ApproxError::OriginNotInterior);
        }
        Ok(DiscPolygon {
            centers,
            radii,
            corners,
        })
    }
}

fn circle_intersections(c1: Point, r1: f64, c2: Point, r2: f64) -> Vec<Point> {
    let d = c2 - c1;
    let dist = d.norm();
    if dist <= 0.0 || dist > r1 + r2 || dist < (r1 - r2).abs() {
        return Vec::new();
    }
    let a = (r1 * r1 - r2 * r2 + dist * dist) / (2.0 * dist);
    let h2 = r1 * r1 - a * a;
    if h2 < 0.0 {
        return Vec::new();
    }
    let h = h2.sqrt();
    let mid = c1 + d * (a / dist);
    let off = d.perp() * (h / dist);
    vec![mid + off, mid - off]
}

impl ConvexBody for DiscPolygon {
    fn support(&self, u: Vec2) -> f64 {
        self.boundary_point(u).to_vec().dot(u)
    }
    fn boundary_point(&self, u: Vec2) -> Point {
        // Either some disc's extreme point lies in all other discs, or the
        // support is attained at an arc corner.
        let scale = self.radii.iter().cloned().fold(0.0, f64::max);
        let mut best: Option<(f64, Point)> = None;
        for (c, r) in self.centers.iter().zip(&self.radii) {
            let p = *c + u * *r;
            let ok = self
                .centers
                .iter()
                .zip(&self.radii)
                .all(|(c2, r2)| p.distance(*c2) <= r2 + 1e-9 * scale);
            if ok {
                let s = p.to_vec().dot(u);
                if best.is_none_or(|(bs, _)| s > bs) {
                    best = Some((s, p));
                }
            }
        }
        for p in &self.corners {
            let s = p.to_vec().dot(u);
            if best.is_none_or(|(bs, _)| s > bs) {
                best = Some((s, *p));
            }
        }
        best.expect("nonempty disc-polygon has a support point").1
    }
}

/// An inscribed polygon certified against its body.
#[derive(Clone, Debug)]
pub struct InscribedPolygon {
    pub polygon: ConvexPolygon,
    /// Homothety center used by the certificate.
    pub center: Point,
    /// Measured certificate: max over edge normals of `h_body / h_polygon - 1`.
    pub achieved: f64,
    /// Directions used.
    pub directions: usize,
}

/// Inscribe a polygon `T_eps` with `T_eps ⊂ body ⊂ (1+eps) T_eps` about a
/// fixed interior center. Directions double until the support-function
/// certificate passes or the cap is hit.
pub fn inscribed_polygon(body: &dyn ConvexBody, eps: f64) -> Result<InscribedPolygon, ApproxError> {
    assert!(eps > 0.0, "eps must be positive");
    let mut m = INITIAL_DIRECTIONS;
    let mut center: Option<Point> = None;
    loop {
        let poly = match polygon_from_grid(body, m) {
            Ok(p) => p,
            Err(_) if m < MAX_DIRECTIONS => {
                m *= 2;
                continue;
            }
            Err(_) => return Err(ApproxError::OriginNotInterior),
        };
        // The homothety center is fixed from the first valid polygon: its
        // inradius center. Nested grids keep it interior ever after.
        let c = match center {
            Some(c) => c,
            None => {
                let (r0, c0) = geom::inradius(&poly);
                if r0 <= TOL_SIDE * poly.diameter() {
                    return Err(ApproxError::OriginNotInterior);
                }
                center = Some(c0);
                c0
            }
        };

        let ratios: Vec<f64> = (0..poly.len())
            .into_par_iter()
            .map(|i| {
                let n = poly.outward_normal(i);
                let h_poly = n.dot(poly.vertex(i) - c);
                if h_poly <= 0.0 {
                    return f64::INFINITY;
                }
                let h_body = body.support(n) - n.dot(c.to_vec());
                h_body / h_poly - 1.0
            })
            .collect();
        let achieved = ratios.into_iter().fold(0.0f64, f64::max);
        if achieved <= eps {
            return Ok(InscribedPolygon {
                polygon: poly,
                center: c,
                achieved: achieved.max(0.0),
                directions: m,
            });
        }
        if m >= MAX_DIRECTIONS {
            return Err(ApproxError::CertificationFailed);
        }
        m *= 2;
    }
}

fn polygon_from_grid(body: &dyn ConvexBody, m: usize) -> Result<ConvexPolygon, PolygonError> {
    // Oracle calls are reentrant; evaluate the direction grid in parallel.
    let raw: Vec<Point> = (0..m)
        .into_par_iter()
        .map(|k| {
            let t = std::f64::consts::TAU * k as f64 / m as f64;
            body.boundary_point(Vec2::new(t.cos(), t.sin()))
        })
        .collect();
    let mut verts = Vec::with_capacity(m);
    for p in raw {
        if verts.last() != Some(&p) {
            verts.push(p);
        }
    }
    ConvexPolygon::new(verts)
}

/// Certified enclosure of the shortest-orbit length of a convex body.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EllInterval {
    pub lower: f64,
    pub upper: f64,
    /// Requested (and certified) relative accuracy; `upper = (1+epsilon) * lower`.
    pub epsilon: f64,
    /// The inscribed polygon realizing the lower bound.
    pub polygon: ConvexPolygon,
}

impl EllInterval {
    pub fn contains(&self, v: f64) -> bool {
        self.lower <= v && v <= self.upper
    }
}

/// Shortest-orbit length of `body`, enclosed to relative accuracy `eps`,
/// together with the polygon report the bounds came from.
pub fn ell_interval(
    body: &dyn ConvexBody,
    eps: f64,
) -> Result<(EllInterval, MinReport), ApproxError> {
    let inscribed = inscribed_polygon(body, eps)?;
    let report = orbits::shortest_orbits(&inscribed.polygon);
    let lower = report.ell;
    Ok((
        EllInterval {
            lower,
            upper: (1.0 + eps) * lower,
            epsilon: eps,
            polygon: inscribed.polygon,
        },
        report,
    ))
}

/// For a centrally symmetric polygon `s` and `r >= 1`, bounds
/// `(2 width(s), 2 r width(s))` valid for any table squeezed between `s`
/// and `r s`.
pub fn symmetric_sandwich_estimate(s: &ConvexPolygon, r: f64) -> Result<(f64, f64), ApproxError> {
    assert!(r >= 1.0, "outer homothety ratio must be at least 1");
    if !is_centrally_symmetric(s) {
        return Err(ApproxError::NotCentrallySymmetric);
    }
    let w = geom::width(s).value;
    Ok((2.0 * w, 2.0 * r * w))
}

/// Vertex set symmetric about the centroid, within the side tolerance.
pub fn is_centrally_symmetric(p: &ConvexPolygon) -> bool {
    let c = p.centroid();
    let tol = TOL_SIDE * p.diameter();
    p.vertices().iter().all(|v| {
        let m = Point::new(2.0 * c.x - v.x, 2.0 * c.y - v.y);
        p.vertices().iter().any(|w| w.distance(m) <= tol)
    })
}
