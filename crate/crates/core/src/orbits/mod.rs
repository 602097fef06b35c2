//! Shortest-orbit engine for polygonal tables.
//!
//! Generalised closed billiard orbits of minimal length are always 2-bounce
//! or regular 3-bounce, so the search space is finite on a polygon: parallel
//! edge bands and vertex altitudes cover period two, and Fagnano triangles of
//! acute cut-out triangles cover regular period three. The minimum of both
//! families is the shortest orbit length, which also equals the symplectic
//! capacity of the table crossed with the unit disc.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{
    self, is_disjoint_from_interior, width, ConvexPolygon, Line, Point, Vec2, TOL_SIDE,
};

mod three_bounce;
mod two_bounce;

pub use three_bounce::{acute_triangle_from_edges, fagnano, three_bounce_orbits};
pub use two_bounce::{two_bounce_orbits, Enumeration, TwoBounceSet};

/// Relative tolerance for treating orbit lengths as tied.
pub const TOL_LEN: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum OrbitError {
    #[error("triangle is not acute")]
    NotAcute,
    #[error("orbit does not have three bounces")]
    NotThreeBounce,
    #[error("orbit is not strictly shorter than twice the width")]
    NotStrictlyShorter,
}

/// How an orbit was found; indices refer to the table polygon.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrbitKind {
    /// Altitude from a vertex to an open edge.
    VertexEdge { vertex: usize, edge: usize },
    /// Segment between two vertices with disjoint perpendicular support lines.
    VertexVertex { vertices: (usize, usize) },
    /// Representative of a parallel-edge band.
    Band { edges: (usize, usize) },
    /// Fagnano orbit of the acute triangle cut out by three edge lines.
    ThreeBounce { edges: [usize; 3] },
    /// Found by the brute-force boundary search (oracle).
    Sampled,
}

/// A generalised closed billiard orbit with two or three bounces.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Orbit {
    /// Bounce points in cyclic order on the boundary.
    pub points: Vec<Point>,
    /// Per bounce: whether the bounce point is a smooth boundary point.
    pub regular: Vec<bool>,
    /// Per bounce: for singular bounces, the witnessing support line
    /// disjoint from the interior; `None` at smooth bounces.
    pub support_lines: Vec<Option<Line>>,
    /// Total length, the sum of consecutive bounce distances.
    pub length: f64,
    pub kind: OrbitKind,
}

impl Orbit {
    pub fn period(&self) -> usize {
        self.points.len()
    }

    pub fn is_regular(&self) -> bool {
        self.regular.iter().all(|r| *r)
    }

    /// Whether two orbits have the same trace (same cyclic point sequence,
    /// possibly reversed), within `tol`.
    pub fn same_trace(&self, other: &Orbit, tol: f64) -> bool {
        if self.points.len() != other.points.len() {
            return false;
        }
        let n = self.points.len();
        for shift in 0..n {
            let fwd = (0..n).all(|i| self.points[i].distance(other.points[(i + shift) % n]) <= tol);
            let rev =
                (0..n).all(|i| self.points[i].distance(other.points[(n - i + shift) % n]) <= tol);
            if fwd || rev {
                return true;
            }
        }
        false
    }
}

/// Sum of incoming and outgoing unit directions at bounce `i`; an outward
/// support vector for a valid orbit.
pub fn bounce_normal(orbit: &Orbit, i: usize) -> Vec2 {
    let n = orbit.points.len();
    let q = orbit.points[i];
    let prev = orbit.points[(i + n - 1) % n];
    let next = orbit.points[(i + 1) % n];
    let a = (q - prev).normalized().expect("distinct bounce points");
    let b = (q - next).normalized().expect("distinct bounce points");
    a + b
}

/// Scale-free reflection residual of an orbit on a polygon: the worst, over
/// bounces, of how far the line perpendicular to the bounce normal is from
/// being disjoint from the interior. Valid orbits have residual at most the
/// side tolerance.
pub fn reflection_residual(p: &ConvexPolygon, orbit: &Orbit) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..orbit.points.len() {
        let nu = bounce_normal(orbit, i);
        let nu = match nu.normalized() {
            Some(v) => v,
            None => return f64::INFINITY,
        };
        let line = Line::new(orbit.points[i], nu.perp());
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for v in p.vertices() {
            let s = line.signed_distance(*v);
            lo = lo.min(s);
            hi = hi.max(s);
        }
        // Disjoint iff all vertices on one closed side.
        worst = worst.max(hi.min(-lo).max(0.0) / p.diameter());
        // Bounce points must be on the boundary.
        worst = worst.max(p.boundary_distance(orbit.points[i]) / p.diameter());
    }
    worst
}

/// True iff the orbit satisfies the generalised reflection law on `p`,
/// within the side tolerance.
pub fn orbit_reflection_holds(p: &ConvexPolygon, orbit: &Orbit) -> bool {
    reflection_residual(p, orbit) <= 10.0 * TOL_SIDE
}

/// A band of parallel regular 2-bounce orbits between two parallel edges.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TwoBounceBand {
    /// Lower-indexed edge carrying the base points.
    pub edge_a: usize,
    /// The parallel partner edge.
    pub edge_b: usize,
    /// Unit direction from edge_a to edge_b (the orbit direction).
    pub direction: Vec2,
    /// Base-point interval in arclength coordinates of `edge_a`, measured
    /// from its start vertex (closed interval; ends may touch vertices).
    pub interval: (f64, f64),
    /// Common orbit length: twice the distance between the edge lines.
    pub length: f64,
}

impl TwoBounceBand {
    /// Separation of the two parallel edge lines.
    pub fn separation(&self) -> f64 {
        0.5 * self.length
    }

    /// The member orbit based at arclength `t` on `edge_a`.
    pub fn orbit_at(&self, p: &ConvexPolygon, t: f64) -> Orbit {
        let tol = TOL_SIDE * p.diameter();
        let q1 = p.point_on_edge(self.edge_a, t);
        let q2 = q1 + self.direction * self.separation();
        let smooth_a = t > tol && t < p.edge_len(self.edge_a) - tol;
        let tb = (q2 - p.vertex(self.edge_b)).dot(p.edge_dir(self.edge_b));
        let smooth_b = tb > tol && tb < p.edge_len(self.edge_b) - tol;
        let edge_dir = p.edge_dir(self.edge_a);
        let support = |smooth: bool, q: Point| {
            if smooth {
                None
            } else {
                Some(Line::new(q, edge_dir))
            }
        };
        Orbit {
            points: vec![q1, q2],
            regular: vec![smooth_a, smooth_b],
            support_lines: vec![support(smooth_a, q1), support(smooth_b, q2)],
            length: self.length,
            kind: OrbitKind::Band {
                edges: (self.edge_a, self.edge_b),
            },
        }
    }

    /// The two extreme member orbits.
    pub fn representatives(&self, p: &ConvexPolygon) -> [Orbit; 2] {
        [
            self.orbit_at(p, self.interval.0),
            self.orbit_at(p, self.interval.1),
        ]
    }

    /// Whether the segment `a`-`b` is a member of this band, within `tol`.
    pub fn contains_segment(&self, p: &ConvexPolygon, a: Point, b: Point, tol: f64) -> bool {
        for (s, e) in [(a, b), (b, a)] {
            let t = (s - p.vertex(self.edge_a)).dot(p.edge_dir(self.edge_a));
            if t < self.interval.0 - tol || t > self.interval.1 + tol {
                continue;
            }
            let q1 = p.point_on_edge(self.edge_a, t);
            let q2 = q1 + self.direction * self.separation();
            if s.distance(q1) <= tol && e.distance(q2) <= tol {
                return true;
            }
        }
        false
    }
}

/// Which bounce counts realize the minimum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    TwoBounceOnly,
    ThreeBounceOnly,
    Both,
}

/// The set of shortest generalised closed billiard orbits and derived data.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MinReport {
    /// Minimal orbit length.
    pub ell: f64,
    /// Minimizing isolated orbits (2-bounce altitudes and 3-bounce orbits).
    pub orbits: Vec<Orbit>,
    /// Minimizing bands of 2-bounce orbits.
    pub bands: Vec<TwoBounceBand>,
    pub width: f64,
    pub inradius: f64,
    pub classification: Classification,
    /// Symplectic capacity of table x disc; equals `ell`.
    pub capacity: f64,
}

impl MinReport {
    pub fn minimizer_count(&self) -> usize {
        self.orbits.len() + self.bands.len()
    }
}

/// All shortest generalised closed billiard orbits on `p`.
///
/// Candidates are the 2-bounce orbits (bands and vertex altitudes, which
/// always include a width-realizing orbit) and the regular 3-bounce orbits;
/// everything within relative tolerance [`TOL_LEN`] of the minimum is
/// reported.
pub fn shortest_orbits(p: &ConvexPolygon) -> MinReport {
    let two = two_bounce_orbits(p, Enumeration::Fast);
    let three = three_bounce_orbits(p);

    let mut ell = f64::INFINITY;
    for band in &two.bands {
        ell = ell.min(band.length);
    }
    for orbit in two.orbits.iter().chain(&three) {
        ell = ell.min(orbit.length);
    }
    assert!(
        ell.is_finite(),
        "every polygon carries a width-realizing 2-bounce orbit"
    );

    let keep = ell * (1.0 + TOL_LEN);
    let bands: Vec<TwoBounceBand> = two.bands.into_iter().filter(|b| b.length <= keep).collect();
    let orbits: Vec<Orbit> = two
        .orbits
        .into_iter()
        .chain(three)
        .filter(|o| o.length <= keep)
        .collect();

    let has2 = !bands.is_empty() || orbits.iter().any(|o| o.period() == 2);
    let has3 = orbits.iter().any(|o| o.period() == 3);
    let classification = match (has2, has3) {
        (true, false) => Classification::TwoBounceOnly,
        (false, true) => Classification::ThreeBounceOnly,
        (true, true) => Classification::Both,
        (false, false) => unreachable!("minimizer set is nonempty"),
    };

    let w = width(p).value;
    let (inradius, _) = geom::inradius(p);
    MinReport {
        ell,
        orbits,
        bands,
        width: w,
        inradius,
        classification,
        capacity: ell,
    }
}

/// Re-derive the classification from a report's minimizer set.
pub fn classify_min(report: &MinReport) -> Classification {
    let has2 = !report.bands.is_empty() || report.orbits.iter().any(|o| o.period() == 2);
    let has3 = report.orbits.iter().any(|o| o.period() == 3);
    match (has2, has3) {
        (true, false) => Classification::TwoBounceOnly,
        (false, true) => Classification::ThreeBounceOnly,
        _ => Classification::Both,
    }
}

/// Supremal homothety ratio `2 width(p) / length(c)` for a 3-bounce orbit
/// strictly shorter than twice the width: any convex table squeezed between
/// homothets of `p` with ratio below this keeps all its shortest orbits
/// regular 3-bounce.
pub fn perturbation_ratio(p: &ConvexPolygon, c: &Orbit) -> Result<f64, OrbitError> {
    if c.period() != 3 {
        return Err(OrbitError::NotThreeBounce);
    }
    let w = width(p).value;
    if c.length >= 2.0 * w * (1.0 - TOL_LEN) {
        return Err(OrbitError::NotStrictlyShorter);
    }
    Ok(2.0 * w / c.length)
}

/// Shared helper: build a vertex-to-edge altitude orbit.
pub(crate) fn vertex_edge_orbit(
    p: &ConvexPolygon,
    vertex: usize,
    edge: usize,
    foot: Point,
) -> Orbit {
    let v = p.vertex(vertex);
    let length = 2.0 * v.distance(foot);
    Orbit {
        points: vec![v, foot],
        regular: vec![false, true],
        support_lines: vec![Some(Line::new(v, p.edge_dir(edge))), None],
        length,
        kind: OrbitKind::VertexEdge { vertex, edge },
    }
}

pub(crate) fn vertex_vertex_orbit(p: &ConvexPolygon, i: usize, j: usize) -> Option<Orbit> {
    let (a, b) = (p.vertex(i), p.vertex(j));
    let dir = (b - a).normalized()?;
    let la = Line::new(a, dir.perp());
    let lb = Line::new(b, dir.perp());
    if !is_disjoint_from_interior(p, &la) || !is_disjoint_from_interior(p, &lb) {
        return None;
    }
    Some(Orbit {
        points: vec![a, b],
        regular: vec![false, false],
        support_lines: vec![Some(la), Some(lb)],
        length: 2.0 * a.distance(b),
        kind: OrbitKind::VertexVertex { vertices: (i, j) },
    })
}
