//! Planar convex-geometry kernel: points, lines, convex polygons, widths,
//! inradii and the support predicates the orbit engines are built on.
//!
//! All tolerances are relative to the polygon diameter so that every
//! predicate is scale invariant. Counterclockwise orientation is the
//! canonical form; everything downstream assumes it.

use serde::{Deserialize, Serialize};
use std::ops::{Add, Div, Mul, Neg, Sub};
use thiserror::Error;

pub mod lp;

/// Relative tolerance for parallelism tests on unit directions.
pub const TOL_PARALLEL: f64 = 1e-9;
/// Relative tolerance for side-of-line and boundary-membership tests.
pub const TOL_SIDE: f64 = 1e-9;
/// Relative tolerance on unit-vector normalization.
pub const TOL_UNIT: f64 = 1e-9;
/// Relative tolerance on polygon area (scaled by diameter squared).
pub const TOL_AREA: f64 = 1e-12;

/// A point in the plane.
#[derive(Clone, Copy, PartialEq, Debug, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

/// A displacement vector in the plane.
#[derive(Clone, Copy, PartialEq, Debug, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl From<[f64; 2]> for Point {
    fn from(a: [f64; 2]) -> Self {
        Point { x: a[0], y: a[1] }
    }
}

impl From<Point> for [f64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

impl From<[f64; 2]> for Vec2 {
    fn from(a: [f64; 2]) -> Self {
        Vec2 { x: a[0], y: a[1] }
    }
}

impl From<Vec2> for [f64; 2] {
    fn from(v: Vec2) -> Self {
        [v.x, v.y]
    }
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn distance(self, other: Point) -> f64 {
        (other - self).norm()
    }

    pub fn midpoint(self, other: Point) -> Point {
        Point::new(0.5 * (self.x + other.x), 0.5 * (self.y + other.y))
    }

    pub fn lerp(self, other: Point, t: f64) -> Point {
        self + (other - self) * t
    }

    pub fn to_vec(self) -> Vec2 {
        Vec2::new(self.x, self.y)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Vec2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the cross product; positive when `other` is
    /// counterclockwise from `self`.
    pub fn cross(self, other: Vec2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Counterclockwise perpendicular (rotate by +90 degrees).
    pub fn perp(self) -> Vec2 {
        Vec2::new(-self.y, self.x)
    }

    /// Unit vector in the same direction, or `None` for (near-)zero input.
    pub fn normalized(self) -> Option<Vec2> {
        let n = self.norm();
        if n > 0.0 && n.is_finite() {
            Some(self / n)
        } else {
            None
        }
    }

    pub fn to_point(self) -> Point {
        Point::new(self.x, self.y)
    }
}

impl Sub for Point {
    type Output = Vec2;
    fn sub(self, rhs: Point) -> Vec2 {
        Vec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Add<Vec2> for Point {
    type Output = Point;
    fn add(self, rhs: Vec2) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub<Vec2> for Point {
    type Output = Point;
    fn sub(self, rhs: Vec2) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, rhs: f64) -> Vec2 {
        Vec2::new(self.x * rhs, self.y * rhs)
    }
}

impl Div<f64> for Vec2 {
    type Output = Vec2;
    fn div(self, rhs: f64) -> Vec2 {
        Vec2::new(self.x / rhs, self.y / rhs)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

/// An oriented line given by a base point and a unit direction.
#[derive(Clone, Copy, PartialEq, Debug, Serialize, Deserialize)]
pub struct Line {
    pub point: Point,
    pub direction: Vec2,
}

impl Line {
    /// Build a line, normalizing the direction.
    ///
    /// Panics on a (near-)zero direction; callers construct lines from
    /// geometry that is already validated.
    pub fn new(point: Point, direction: Vec2) -> Line {
        let direction = direction
            .normalized()
            .expect("line direction must be nonzero");
        Line { point, direction }
    }

    pub fn through(a: Point, b: Point) -> Line {
        Line::new(a, b - a)
    }

    pub fn at(&self, t: f64) -> Point {
        self.point + self.direction * t
    }

    /// Parameter of the orthogonal projection of `p`.
    pub fn project_param(&self, p: Point) -> f64 {
        (p - self.point).dot(self.direction)
    }

    /// Signed perpendicular distance; positive on the left of the direction.
    pub fn signed_distance(&self, p: Point) -> f64 {
        self.direction.cross(p - self.point)
    }
}

/// The orthogonal projection of `p` onto `l`.
pub fn foot_of_perpendicular(p: Point, l: &Line) -> Point {
    l.at(l.project_param(p))
}

/// Result of intersecting two lines.
#[derive(Clone, Copy, PartialEq, Debug)]
pub enum LineIntersection {
    Point(Point),
    Parallel,
}

/// Intersection point of two lines, or `Parallel` when the unit directions
/// have cross product below [`TOL_PARALLEL`].
pub fn line_intersection(a: &Line, b: &Line) -> LineIntersection {
    let denom = a.direction.cross(b.direction);
    if denom.abs() <= TOL_PARALLEL {
        return LineIntersection::Parallel;
    }
    let t = (b.point - a.point).cross(b.direction) / denom;
    LineIntersection::Point(a.at(t))
}

/// Errors from polygon validation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum PolygonError {
    #[error("polygon needs at least 3 vertices")]
    TooFewVertices,
    #[error("polygon is not convex")]
    NonConvex,
    #[error("polygon is degenerate (zero area or non-finite vertices)")]
    Degenerate,
}

/// A validated convex polygon: counterclockwise vertices, strictly convex
/// chain (no collinear triples), nonempty interior.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "PolygonRepr", into = "PolygonRepr")]
pub struct ConvexPolygon {
    vertices: Vec<Point>,
    diameter: f64,
}

#[derive(Serialize, Deserialize)]
struct PolygonRepr {
    vertices: Vec<Point>,
}

impl TryFrom<PolygonRepr> for ConvexPolygon {
    type Error = PolygonError;
    fn try_from(r: PolygonRepr) -> Result<Self, PolygonError> {
        ConvexPolygon::new(r.vertices)
    }
}

impl From<ConvexPolygon> for PolygonRepr {
    fn from(p: ConvexPolygon) -> PolygonRepr {
        PolygonRepr {
            vertices: p.vertices,
        }
    }
}

/// Validate and canonicalize a vertex list; alias for [`ConvexPolygon::new`].
pub fn validate_polygon(points: Vec<Point>) -> Result<ConvexPolygon, PolygonError> {
    ConvexPolygon::new(points)
}

impl ConvexPolygon {
    /// Validate a vertex list into a canonical counterclockwise polygon.
    ///
    /// Clockwise input is reversed, consecutive duplicates and collinear
    /// vertices are removed (relative tolerance [`TOL_SIDE`]), and reflex
    /// chains are rejected. Idempotent on already-valid polygons.
    pub fn new(points: Vec<Point>) -> Result<Self, PolygonError> {
        if points.len() < 3 {
            return Err(PolygonError::TooFewVertices);
        }
        if points.iter().any(|p| !p.is_finite()) {
            return Err(PolygonError::Degenerate);
        }

        // Scale for tolerances: bounding-box diagonal (within sqrt(2) of the
        // true diameter, which is not yet computable here).
        let (mut lo_x, mut hi_x) = (f64::INFINITY, f64::NEG_INFINITY);
        let (mut lo_y, mut hi_y) = (f64::INFINITY, f64::NEG_INFINITY);
        for p in &points {
            lo_x = lo_x.min(p.x);
            hi_x = hi_x.max(p.x);
            lo_y = lo_y.min(p.y);
            hi_y = hi_y.max(p.y);
        }
        let scale = ((hi_x - lo_x).powi(2) + (hi_y - lo_y).powi(2)).sqrt();
        if scale <= 0.0 {
            return Err(PolygonError::Degenerate);
        }

        // Reflex detection before anything else: a genuinely convex chain
        // (in either orientation) never mixes turn signs.
        {
            let n = points.len();
            let (mut pos, mut neg) = (false, false);
            for i in 0..n {
                let e0 = points[(i + 1) % n] - points[i];
                let e1 = points[(i + 2) % n] - points[(i + 1) % n];
                let cr = e0.cross(e1);
                if cr > TOL_AREA * scale * scale {
                    pos = true;
                } else if cr < -TOL_AREA * scale * scale {
                    neg = true;
                }
            }
            if pos && neg {
                return Err(PolygonError::NonConvex);
            }
        }

        // Orientation from the signed area.
        let mut area2 = 0.0;
        for i in 0..points.len() {
            let a = points[i];
            let b = points[(i + 1) % points.len()];
            area2 += a.x * b.y - b.x * a.y;
        }
        if area2.abs() <= 2.0 * TOL_AREA * scale * scale {
            return Err(PolygonError::Degenerate);
        }
        let mut verts = points;
        if area2 < 0.0 {
            verts[1..].reverse();
        }

        // Drop consecutive (cyclic) duplicates.
        let mut deduped: Vec<Point> = Vec::with_capacity(verts.len());
        for p in verts {
            if deduped
                .last()
                .is_none_or(|q| (p - *q).norm() > TOL_SIDE * scale)
            {
                deduped.push(p);
            }
        }
        while deduped.len() > 1
            && (deduped[0] - *deduped.last().unwrap()).norm() <= TOL_SIDE * scale
        {
            deduped.pop();
        }
        let mut verts = deduped;

        // Collapse collinear vertices until stable. A vertex goes when its
        // deviation from the chord of its neighbours is below
        // TOL_SIDE * scale; a removal invalidates its neighbours' chords,
        // so those are deferred to the next pass.
        loop {
            let n = verts.len();
            if n < 3 {
                return Err(PolygonError::Degenerate);
            }
            let mut keep = vec![true; n];
            let mut removed = false;
            for i in 0..n {
                if !keep[(i + n - 1) % n] || !keep[(i + 1) % n] {
                    continue;
                }
                let prev = verts[(i + n - 1) % n];
                let cur = verts[i];
                let next = verts[(i + 1) % n];
                let chord = next - prev;
                let dev = (cur - prev).cross(chord).abs();
                if dev <= TOL_SIDE * scale * chord.norm() {
                    keep[i] = false;
                    removed = true;
                }
            }
            if removed {
                let filtered: Vec<Point> = verts
                    .iter()
                    .zip(&keep)
                    .filter(|(_, k)| **k)
                    .map(|(p, _)| *p)
                    .collect();
                verts = filtered;
            } else {
                break;
            }
        }
        if verts.len() < 3 {
            return Err(PolygonError::Degenerate);
        }

        // Strict convexity of the remaining chain and total turning 2*pi
        // (rules out multiply-wound vertex sequences).
        let n = verts.len();
        let mut turning = 0.0;
        for i in 0..n {
            let e0 = verts[(i + 1) % n] - verts[i];
            let e1 = verts[(i + 2) % n] - verts[(i + 1) % n];
            let cr = e0.cross(e1);
            if cr <= 0.0 {
                return Err(PolygonError::NonConvex);
            }
            turning += cr.atan2(e0.dot(e1));
        }
        if (turning - std::f64::consts::TAU).abs() > 1e-6 {
            return Err(PolygonError::NonConvex);
        }

        let diameter = hull_diameter(&verts);
        Ok(ConvexPolygon {
            vertices: verts,
            diameter,
        })
    }

    /// Regular n-gon inscribed in a circle of radius `r` about the origin,
    /// first vertex at angle zero.
    pub fn regular(n: usize, r: f64) -> Self {
        assert!(n >= 3 && r > 0.0);
        let verts = (0..n)
            .map(|k| {
                let t = std::f64::consts::TAU * k as f64 / n as f64;
                Point::new(r * t.cos(), r * t.sin())
            })
            .collect();
        ConvexPolygon::new(verts).expect("regular polygon is valid")
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Vertex with cyclic index.
    pub fn vertex(&self, i: usize) -> Point {
        self.vertices[i % self.vertices.len()]
    }

    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    /// Edge `i` runs from vertex `i` to vertex `i+1`.
    pub fn edge(&self, i: usize) -> (Point, Point) {
        (self.vertex(i), self.vertex(i + 1))
    }

    pub fn edge_vec(&self, i: usize) -> Vec2 {
        let (a, b) = self.edge(i);
        b - a
    }

    pub fn edge_len(&self, i: usize) -> f64 {
        self.edge_vec(i).norm()
    }

    /// Unit direction of edge `i`.
    pub fn edge_dir(&self, i: usize) -> Vec2 {
        self.edge_vec(i).normalized().expect("validated edge")
    }

    /// Outward unit normal of edge `i`.
    pub fn outward_normal(&self, i: usize) -> Vec2 {
        let d = self.edge_dir(i);
        Vec2::new(d.y, -d.x)
    }

    /// Supporting line of edge `i`, oriented along the edge.
    pub fn edge_line(&self, i: usize) -> Line {
        Line {
            point: self.vertex(i),
            direction: self.edge_dir(i),
        }
    }

    pub fn perimeter(&self) -> f64 {
        (0..self.len()).map(|i| self.edge_len(i)).sum()
    }

    pub fn area(&self) -> f64 {
        let mut area2 = 0.0;
        for i in 0..self.len() {
            let (a, b) = self.edge(i);
            area2 += a.x * b.y - b.x * a.y;
        }
        0.5 * area2
    }

    pub fn centroid(&self) -> Point {
        let mut cx = 0.0;
        let mut cy = 0.0;
        let mut a2 = 0.0;
        for i in 0..self.len() {
            let (p, q) = self.edge(i);
            let w = p.x * q.y - q.x * p.y;
            cx += (p.x + q.x) * w;
            cy += (p.y + q.y) * w;
            a2 += w;
        }
        Point::new(cx / (3.0 * a2), cy / (3.0 * a2))
    }

    /// Support value and an attaining vertex index in direction `u`.
    pub fn support(&self, u: Vec2) -> (f64, usize) {
        let mut best = f64::NEG_INFINITY;
        let mut arg = 0;
        for (i, v) in self.vertices.iter().enumerate() {
            let s = v.to_vec().dot(u);
            if s > best {
                best = s;
                arg = i;
            }
        }
        (best, arg)
    }

    /// Minimum over edges of the inward signed distance; positive strictly
    /// inside, negative outside.
    pub fn depth(&self, p: Point) -> f64 {
        let mut d = f64::INFINITY;
        for i in 0..self.len() {
            let n = self.outward_normal(i);
            d = d.min(n.dot(self.vertex(i) - p));
        }
        d
    }

    pub fn contains(&self, p: Point, tol: f64) -> bool {
        self.depth(p) >= -tol
    }

    /// Distance from `p` to the boundary polyline.
    pub fn boundary_distance(&self, p: Point) -> f64 {
        let mut d = f64::INFINITY;
        for i in 0..self.len() {
            let (a, b) = self.edge(i);
            let e = b - a;
            let t = ((p - a).dot(e) / e.norm_sq()).clamp(0.0, 1.0);
            d = d.min(p.distance(a + e * t));
        }
        d
    }

    /// Scale about the origin by `r > 0`.
    pub fn scaled(&self, r: f64) -> ConvexPolygon {
        assert!(r > 0.0);
        let verts = self
            .vertices
            .iter()
            .map(|p| Point::new(p.x * r, p.y * r))
            .collect();
        ConvexPolygon::new(verts).expect("scaling preserves convexity")
    }

    pub fn translated(&self, v: Vec2) -> ConvexPolygon {
        let verts = self.vertices.iter().map(|p| *p + v).collect();
        ConvexPolygon::new(verts).expect("translation preserves convexity")
    }

    /// Arclength position of the point `(edge, t)` measured from vertex 0.
    pub fn arclength(&self, edge: usize, t: f64) -> f64 {
        let mut s = 0.0;
        for i in 0..edge {
            s += self.edge_len(i);
        }
        s + t
    }

    /// Point on edge `edge` at arclength `t` from its start vertex.
    pub fn point_on_edge(&self, edge: usize, t: f64) -> Point {
        self.vertex(edge) + self.edge_dir(edge) * t
    }
}

/// True iff every vertex of `p` lies weakly on one closed side of `l`
/// (tolerance `TOL_SIDE * diameter`).
pub fn is_disjoint_from_interior(p: &ConvexPolygon, l: &Line) -> bool {
    let tol = TOL_SIDE * p.diameter();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for v in p.vertices() {
        let s = l.signed_distance(*v);
        lo = lo.min(s);
        hi = hi.max(s);
    }
    hi <= tol || lo >= -tol
}

/// Realizers of the width: `(edge, vertex)` pairs attaining the minimal
/// support-slab thickness.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Width {
    pub value: f64,
    /// All `(edge index, vertex index)` pairs within tolerance of the width.
    pub pairs: Vec<(usize, usize)>,
}

/// Width of the polygon by rotating calipers over edge directions, with the
/// realizing edge/vertex pairs.
pub fn width(p: &ConvexPolygon) -> Width {
    let sweep = edge_antipodes(p);
    let value = sweep
        .iter()
        .map(|a| a.distance)
        .fold(f64::INFINITY, f64::min);
    let tol = TOL_SIDE * p.diameter();
    let mut pairs = Vec::new();
    for (i, a) in sweep.iter().enumerate() {
        if a.distance <= value + tol {
            for &j in &a.vertices {
                pairs.push((i, j));
            }
        }
    }
    Width { value, pairs }
}

/// Farthest vertices from each edge line (the caliper antipodes).
#[derive(Clone, Debug)]
pub struct EdgeAntipode {
    /// Max perpendicular distance from the edge line to the polygon.
    pub distance: f64,
    /// All vertex indices within tolerance of that distance.
    pub vertices: Vec<usize>,
}

/// For every edge, the farthest vertex set. O(n) two-pointer sweep.
pub fn edge_antipodes(p: &ConvexPolygon) -> Vec<EdgeAntipode> {
    let n = p.len();
    let tol = TOL_SIDE * p.diameter();
    let dist = |i: usize, j: usize| -> f64 { p.edge_dir(i).cross(p.vertex(j) - p.vertex(i)) };

    // Start at the farthest vertex from edge 0.
    let mut j = (0..n)
        .max_by(|a, b| dist(0, *a).partial_cmp(&dist(0, *b)).unwrap())
        .unwrap();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut guard = 0;
        while dist(i, (j + 1) % n) >= dist(i, j) && guard <= n {
            j = (j + 1) % n;
            guard += 1;
        }
        let d = dist(i, j);
        // Collect ties on both sides of the plateau.
        let mut vertices = vec![j];
        let mut k = (j + n - 1) % n;
        while dist(i, k) >= d - tol && vertices.len() < n {
            vertices.push(k);
            k = (k + n - 1) % n;
        }
        let mut k = (j + 1) % n;
        while dist(i, k) >= d - tol && vertices.len() < n {
            vertices.push(k);
            k = (k + 1) % n;
        }
        vertices.sort_unstable();
        vertices.dedup();
        out.push(EdgeAntipode {
            distance: d,
            vertices,
        });
    }
    out
}

/// Chebyshev radius and center: the largest disc inside the polygon, from a
/// three-variable linear program over the edge half-planes.
pub fn inradius(p: &ConvexPolygon) -> (f64, Point) {
    let scale = p.diameter();
    let mut rows = Vec::with_capacity(p.len());
    for i in 0..p.len() {
        let nrm = p.outward_normal(i);
        let b = nrm.dot(p.vertex(i).to_vec());
        rows.push(([nrm.x, nrm.y, 1.0], b));
    }
    let bound = p
        .vertices()
        .iter()
        .map(|v| v.x.abs().max(v.y.abs()))
        .fold(0.0, f64::max)
        + 2.0 * scale;
    match lp::maximize3([0.0, 0.0, 1.0], &rows, bound, 0x1717) {
        lp::Lp3::Optimal { x } => (x[2], Point::new(x[0], x[1])),
        lp::Lp3::Infeasible => unreachable!("polygon half-planes are feasible"),
    }
}

/// Diameter of a convex vertex chain by antipodal pairs.
fn hull_diameter(verts: &[Point]) -> f64 {
    let n = verts.len();
    if n <= 16 {
        let mut best: f64 = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                best = best.max(verts[i].distance(verts[j]));
            }
        }
        return best;
    }
    let mut best: f64 = 0.0;
    let mut j = 1;
    let area2 = |a: Point, b: Point, c: Point| (b - a).cross(c - a);
    for i in 0..n {
        let a = verts[i];
        let b = verts[(i + 1) % n];
        let mut guard = 0;
        while area2(a, b, verts[(j + 1) % n]) >= area2(a, b, verts[j]) && guard <= 2 * n {
            j = (j + 1) % n;
            guard += 1;
        }
        best = best.max(a.distance(verts[j])).max(b.distance(verts[j]));
    }
    best
}

/// Triangle classification by the largest interior angle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TriangleKind {
    Acute,
    Right,
    Obtuse,
}

/// A nondegenerate triangle, stored counterclockwise.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Triangle {
    pub a: Point,
    pub b: Point,
    pub c: Point,
}

impl Triangle {
    /// Build a triangle, reorienting to counterclockwise.
    ///
    /// Panics on (near-)degenerate input.
    pub fn new(a: Point, b: Point, c: Point) -> Triangle {
        Triangle::try_new(a, b, c).expect("degenerate triangle")
    }

    /// Like [`Triangle::new`] but returns `None` on degenerate input.
    pub fn try_new(a: Point, b: Point, c: Point) -> Option<Triangle> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return None;
        }
        let area2 = (b - a).cross(c - a);
        let scale = (b - a).norm().max((c - a).norm()).max((c - b).norm());
        if area2.abs() <= TOL_AREA * scale * scale {
            return None;
        }
        if area2 > 0.0 {
            Some(Triangle { a, b, c })
        } else {
            Some(Triangle { a, b: c, c: b })
        }
    }

    pub fn vertices(&self) -> [Point; 3] {
        [self.a, self.b, self.c]
    }

    /// Classification consistent with the three interior angles, with a
    /// relative margin `TOL_SIDE` around the right angle.
    pub fn kind(&self) -> TriangleKind {
        let v = self.vertices();
        let mut min_cos = f64::INFINITY;
        for i in 0..3 {
            let u = v[(i + 1) % 3] - v[i];
            let w = v[(i + 2) % 3] - v[i];
            min_cos = min_cos.min(u.dot(w) / (u.norm() * w.norm()));
        }
        if min_cos > TOL_SIDE {
            TriangleKind::Acute
        } else if min_cos < -TOL_SIDE {
            TriangleKind::Obtuse
        } else {
            TriangleKind::Right
        }
    }

    pub fn area(&self) -> f64 {
        0.5 * (self.b - self.a).cross(self.c - self.a)
    }

    /// Index of the vertex with the largest interior angle.
    pub fn widest_vertex(&self) -> usize {
        let v = self.vertices();
        let mut arg = 0;
        let mut min_cos = f64::INFINITY;
        for i in 0..3 {
            let u = v[(i + 1) % 3] - v[i];
            let w = v[(i + 2) % 3] - v[i];
            let c = u.dot(w) / (u.norm() * w.norm());
            if c < min_cos {
                min_cos = c;
                arg = i;
            }
        }
        arg
    }

    /// Foot of the altitude from vertex `i` onto the opposite side line.
    pub fn altitude_foot(&self, i: usize) -> Point {
        let v = self.vertices();
        let line = Line::through(v[(i + 1) % 3], v[(i + 2) % 3]);
        foot_of_perpendicular(v[i], &line)
    }

    /// Length of the altitude from vertex `i`.
    pub fn altitude_len(&self, i: usize) -> f64 {
        let v = self.vertices();
        v[i].distance(self.altitude_foot(i))
    }

    pub fn contains(&self, p: Point, tol: f64) -> bool {
        let v = self.vertices();
        (0..3).all(|i| {
            let e = v[(i + 1) % 3] - v[i];
            e.cross(p - v[i]) >= -tol * e.norm()
        })
    }

    pub fn to_polygon(&self) -> ConvexPolygon {
        ConvexPolygon::new(vec![self.a, self.b, self.c]).expect("nondegenerate triangle")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(coords: &[(f64, f64)]) -> Vec<Point> {
        coords.iter().map(|&(x, y)| Point::new(x, y)).collect()
    }

    fn unit_square() -> ConvexPolygon {
        ConvexPolygon::new(pts(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)])).unwrap()
    }

    #[test]
    fn clockwise_square_is_reoriented() {
        let p = ConvexPolygon::new(pts(&[(0.0, 0.0), (0.0, 1.0), (1.0, 1.0), (1.0, 0.0)])).unwrap();
        assert_eq!(p.len(), 4);
        assert!(p.area() > 0.0);
        // First vertex kept, orientation flipped.
        assert_eq!(p.vertex(0), Point::new(0.0, 0.0));
        assert_eq!(p.vertex(1), Point::new(1.0, 0.0));
    }

    #[test]
    fn collinear_midpoint_is_removed() {
        let p = ConvexPolygon::new(pts(&[
            (0.0, 0.0),
            (1.0, 0.0),
            (2.0, 0.0),
            (2.0, 1.0),
            (0.0, 1.0),
        ]))
        .unwrap();
        assert_eq!(p.len(), 4);
        assert!(!p.vertices().contains(&Point::new(1.0, 0.0)));
    }

    #[test]
    fn reflex_vertex_is_rejected() {
        let r = ConvexPolygon::new(pts(&[(0.0, 0.0), (1.0, 0.0), (0.5, -1.0), (0.5, 1.0)]));
        assert_eq!(r.unwrap_err(), PolygonError::NonConvex);
    }

    #[test]
    fn degenerate_and_short_inputs() {
        assert_eq!(
            ConvexPolygon::new(pts(&[(0.0, 0.0), (1.0, 0.0)])).unwrap_err(),
            PolygonError::TooFewVertices
        );
        assert_eq!(
            ConvexPolygon::new(pts(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0)])).unwrap_err(),
            PolygonError::Degenerate
        );
    }

    #[test]
    fn validation_is_idempotent() {
        let p = ConvexPolygon::new(pts(&[
            (0.0, 0.0),
            (1.0, 0.0),
            (2.0, 0.0),
            (2.0, 1.0),
            (0.0, 1.0),
        ]))
        .unwrap();
        let q = ConvexPolygon::new(p.vertices().to_vec()).unwrap();
        assert_eq!(p.vertices(), q.vertices());
    }

    #[test]
    fn width_of_regular_polygons() {
        // Odd n: 1 + cos(pi/n); even n: 2 cos(pi/n), inscribed in unit circle.
        let p5 = ConvexPolygon::regular(5, 1.0);
        let w5 = width(&p5);
        assert!((w5.value - (1.0 + (std::f64::consts::PI / 5.0).cos())).abs() < 1e-12);

        let p6 = ConvexPolygon::regular(6, 1.0);
        let w6 = width(&p6);
        assert!((w6.value - 3.0_f64.sqrt()).abs() < 1e-12);

        let sq = unit_square();
        assert!((width(&sq).value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn width_realizers_on_square() {
        let w = width(&unit_square());
        // Each edge is at distance 1 from the opposite edge's two vertices.
        assert_eq!(w.pairs.len(), 8);
    }

    #[test]
    fn inradius_examples() {
        let (r, c) = inradius(&unit_square());
        assert!((r - 0.5).abs() < 1e-9);
        assert!(c.distance(Point::new(0.5, 0.5)) < 1e-9);

        for n in [3usize, 5, 7, 12] {
            let p = ConvexPolygon::regular(n, 1.0);
            let (r, c) = inradius(&p);
            assert!(
                (r - (std::f64::consts::PI / n as f64).cos()).abs() < 1e-9,
                "n={n}"
            );
            assert!(c.distance(Point::new(0.0, 0.0)) < 1e-8, "n={n}");
        }

        // Equilateral triangle, side 1: r = area / semiperimeter = sqrt(3)/6.
        let t = ConvexPolygon::new(pts(&[(0.0, 0.0), (1.0, 0.0), (0.5, 3.0_f64.sqrt() / 2.0)]))
            .unwrap();
        let (r, _) = inradius(&t);
        assert!((r - 3.0_f64.sqrt() / 6.0).abs() < 1e-9);
    }

    #[test]
    fn line_intersection_examples() {
        let x_axis = Line::new(Point::new(0.0, 0.0), Vec2::new(1.0, 0.0));
        let y_axis = Line::new(Point::new(0.0, 0.0), Vec2::new(0.0, 1.0));
        match line_intersection(&x_axis, &y_axis) {
            LineIntersection::Point(p) => assert!(p.distance(Point::new(0.0, 0.0)) < 1e-12),
            LineIntersection::Parallel => panic!("axes intersect"),
        }

        let h1 = Line::new(Point::new(0.0, 0.0), Vec2::new(1.0, 0.0));
        let h2 = Line::new(Point::new(0.0, 1.0), Vec2::new(-1.0, 0.0));
        assert_eq!(line_intersection(&h1, &h2), LineIntersection::Parallel);

        let d1 = Line::new(Point::new(0.0, 0.0), Vec2::new(1.0, 1.0));
        let d2 = Line::new(Point::new(0.0, 2.0), Vec2::new(1.0, -1.0));
        match line_intersection(&d1, &d2) {
            LineIntersection::Point(p) => assert!(p.distance(Point::new(1.0, 1.0)) < 1e-12),
            LineIntersection::Parallel => panic!("diagonals intersect"),
        }
    }

    #[test]
    fn disjoint_from_interior_examples() {
        let sq = unit_square();
        let bottom = Line::new(Point::new(0.3, 0.0), Vec2::new(1.0, 0.0));
        assert!(is_disjoint_from_interior(&sq, &bottom));

        let mid = Line::new(Point::new(0.0, 0.5), Vec2::new(1.0, 0.0));
        assert!(!is_disjoint_from_interior(&sq, &mid));

        let corner = Line::new(Point::new(0.0, 0.0), Vec2::new(1.0, -1.0));
        assert!(is_disjoint_from_interior(&sq, &corner));
    }

    #[test]
    fn foot_of_perpendicular_examples() {
        let x_axis = Line::new(Point::new(0.0, 0.0), Vec2::new(1.0, 0.0));
        assert!(
            foot_of_perpendicular(Point::new(0.0, 1.0), &x_axis).distance(Point::new(0.0, 0.0))
                < 1e-12
        );

        let diag = Line::new(Point::new(0.0, 0.0), Vec2::new(1.0, 1.0));
        assert!(
            foot_of_perpendicular(Point::new(1.0, 1.0), &diag).distance(Point::new(1.0, 1.0))
                < 1e-12
        );
        // Derived: projection of (1,0), cross-checked by sampling in the
        // integration suite.
        assert!(
            foot_of_perpendicular(Point::new(1.0, 0.0), &diag).distance(Point::new(0.5, 0.5))
                < 1e-12
        );
    }

    #[test]
    fn triangle_kinds() {
        let acute = Triangle::new(
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(0.5, 0.8),
        );
        assert_eq!(acute.kind(), TriangleKind::Acute);

        let right = Triangle::new(
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(0.0, 1.0),
        );
        assert_eq!(right.kind(), TriangleKind::Right);
        assert_eq!(right.widest_vertex(), 0);

        let obtuse = Triangle::new(
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.8, 0.4),
        );
        assert_eq!(obtuse.kind(), TriangleKind::Obtuse);
    }

    #[test]
    fn polygon_serde_round_trip() {
        let p = ConvexPolygon::regular(5, 1.0);
        let json = serde_json::to_string(&p).unwrap();
        let q: ConvexPolygon = serde_json::from_str(&json).unwrap();
        assert_eq!(p.len(), q.len());
        for (a, b) in p.vertices().iter().zip(q.vertices()) {
            assert!(a.distance(*b) < 1e-15);
        }
        // Invalid data fails validation on deserialize.
        let bad = r#"{"vertices": [[0,0],[1,0],[0.5,-1],[0.5,1]]}"#;
        assert!(serde_json::from_str::<ConvexPolygon>(bad).is_err());
    }
}
