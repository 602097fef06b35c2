//! Deterministic SVG rendering of tables and minimizing orbits.
//!
//! Bands are drawn as shaded strips, orbits as closed polylines with dots
//! at the bounce points, and the Fagnano construction (cut-out triangle and
//! its altitudes) is dashed in when a 3-bounce minimizer is present.
//! Coordinates are emitted with fixed precision, so identical inputs give
//! byte-identical output.

use std::fmt::Write;

use billiards_core::minkowski::MinkowskiReport;
use billiards_core::orbits::{acute_triangle_from_edges, MinReport, OrbitKind};
use billiards_core::{ConvexPolygon, Point};

const SIZE: f64 = 720.0;
const MARGIN: f64 = 0.08;

struct Frame {
    min_x: f64,
    min_y: f64,
    scale: f64,
    height: f64,
}

impl Frame {
    fn fit(points: impl Iterator<Item = Point>) -> Frame {
        let (mut lo_x, mut hi_x) = (f64::INFINITY, f64::NEG_INFINITY);
        let (mut lo_y, mut hi_y) = (f64::INFINITY, f64::NEG_INFINITY);
        for p in points {
            lo_x = lo_x.min(p.x);
            hi_x = hi_x.max(p.x);
            lo_y = lo_y.min(p.y);
            hi_y = hi_y.max(p.y);
        }
        let span = (hi_x - lo_x).max(hi_y - lo_y).max(1e-12);
        let pad = span * MARGIN;
        let scale = SIZE / (span + 2.0 * pad);
        Frame {
            min_x: lo_x - pad,
            min_y: lo_y - pad,
            scale,
            height: (hi_y - lo_y + 2.0 * pad) * scale,
        }
    }

    fn map(&self, p: Point) -> (f64, f64) {
        (
            (p.x - self.min_x) * self.scale,
            self.height - (p.y - self.min_y) * self.scale,
        )
    }

    fn path(&self, pts: &[Point], closed: bool) -> String {
        let mut d = String::new();
        for (i, p) in pts.iter().enumerate() {
            let (x, y) = self.map(*p);
            let _ = write!(d, "{}{x:.3} {y:.3} ", if i == 0 { "M" } else { "L" });
        }
        if closed {
            d.push('Z');
        }
        d.trim_end().to_owned()
    }
}

struct Doc {
    body: String,
}

impl Doc {
    fn new() -> Doc {
        Doc {
            body: String::new(),
        }
    }

    fn path(&mut self, d: &str, style: &str) {
        let _ = writeln!(self.body, "  <path d=\"{d}\" {style}/>");
    }

    fn dot(&mut self, frame: &Frame, p: Point, r: f64, fill: &str) {
        let (x, y) = frame.map(p);
        let _ = writeln!(
            self.body,
            "  <circle cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"{r}\" fill=\"{fill}\"/>"
        );
    }

    fn finish(self, width: f64, height: f64) -> String {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
             viewBox=\"0 0 {width:.3} {height:.3}\" width=\"{width:.0}\" height=\"{height:.0}\">\n\
             {}</svg>\n",
            self.body
        )
    }
}

const TABLE_STYLE: &str = "fill=\"#f7f6f2\" stroke=\"#333333\" stroke-width=\"2\"";
const OUTLINE_STYLE: &str = "fill=\"none\" stroke=\"#b9b4a8\" stroke-width=\"1.2\"";
const BAND_STYLE: &str = "fill=\"#7aa6d6\" fill-opacity=\"0.35\" stroke=\"none\"";
const ORBIT_STYLE: &str = "fill=\"none\" stroke=\"#c0392b\" stroke-width=\"2\"";
const CONSTRUCTION_STYLE: &str =
    "fill=\"none\" stroke=\"#8a8a8a\" stroke-width=\"1\" stroke-dasharray=\"6 4\"";

/// Render a Euclidean report: table, bands, minimizing orbits, and the
/// Fagnano construction for 3-bounce minimizers.
pub fn render(poly: &ConvexPolygon, rep: &MinReport, outline: Option<&[Point]>) -> String {
    let frame = Frame::fit(
        poly.vertices()
            .iter()
            .copied()
            .chain(outline.unwrap_or(&[]).iter().copied()),
    );
    let mut doc = Doc::new();
    if let Some(out) = outline {
        doc.path(&frame.path(out, true), OUTLINE_STYLE);
    }
    doc.path(&frame.path(poly.vertices(), true), TABLE_STYLE);

    for band in &rep.bands {
        let a0 = poly.point_on_edge(band.edge_a, band.interval.0);
        let a1 = poly.point_on_edge(band.edge_a, band.interval.1);
        let sep = band.separation();
        let quad = [a0, a1, a1 + band.direction * sep, a0 + band.direction * sep];
        doc.path(&frame.path(&quad, true), BAND_STYLE);
        for o in band.representatives(poly) {
            doc.path(&frame.path(&o.points, true), ORBIT_STYLE);
        }
    }

    // Construction lines first, so orbits draw on top.
    for orbit in &rep.orbits {
        if let OrbitKind::ThreeBounce { edges } = orbit.kind {
            if let Some(tri) = acute_triangle_from_edges(poly, edges[0], edges[1], edges[2]) {
                doc.path(
                    &frame.path(&[tri.a, tri.b, tri.c], true),
                    CONSTRUCTION_STYLE,
                );
                for i in 0..3 {
                    let v = tri.vertices()[i];
                    let foot = tri.altitude_foot(i);
                    doc.path(&frame.path(&[v, foot], false), CONSTRUCTION_STYLE);
                }
            }
        }
    }
    for orbit in &rep.orbits {
        doc.path(&frame.path(&orbit.points, true), ORBIT_STYLE);
        for p in &orbit.points {
            doc.dot(&frame, *p, 4.0, "#c0392b");
        }
    }
    doc.finish(SIZE, frame.height)
}

/// Render a Minkowski report: table, K-altitude bands and orbits.
pub fn render_minkowski(poly: &ConvexPolygon, rep: &MinkowskiReport) -> String {
    let frame = Frame::fit(poly.vertices().iter().copied());
    let mut doc = Doc::new();
    doc.path(&frame.path(poly.vertices(), true), TABLE_STYLE);
    for band in &rep.bands {
        let a0 = poly.point_on_edge(band.edge_a, band.interval.0);
        let a1 = poly.point_on_edge(band.edge_a, band.interval.1);
        let quad = [a0, a1, a1 + band.displacement, a0 + band.displacement];
        doc.path(&frame.path(&quad, true), BAND_STYLE);
    }
    for orbit in &rep.orbits {
        doc.path(&frame.path(&orbit.points, true), ORBIT_STYLE);
        for p in &orbit.points {
            doc.dot(&frame, *p, 4.0, "#c0392b");
        }
    }
    doc.finish(SIZE, frame.height)
}

#[cfg(test)]
mod tests {
    use super::*;
    use billiards_core::orbits::shortest_orbits;

    #[test]
    fn hexagon_svg_has_three_bands() {
        let p = ConvexPolygon::regular(6, 1.0);
        let rep = shortest_orbits(&p);
        let svg = render(&p, &rep, None);
        assert_eq!(svg.matches("fill-opacity").count(), 3);
        assert!(svg.starts_with("<svg"));
        assert!(svg.ends_with("</svg>\n"));
    }

    #[test]
    fn pentagon_svg_has_five_orbit_paths() {
        let p = ConvexPolygon::regular(5, 1.0);
        let rep = shortest_orbits(&p);
        let svg = render(&p, &rep, None);
        assert_eq!(svg.matches("#c0392b\" stroke-width").count(), 5);
    }

    #[test]
    fn triangle_svg_shows_fagnano_construction() {
        let p = ConvexPolygon::new(vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(0.5, 3.0_f64.sqrt() / 2.0),
        ])
        .unwrap();
        let rep = shortest_orbits(&p);
        let svg = render(&p, &rep, None);
        // Dashed construction: cut triangle plus three altitudes.
        assert_eq!(svg.matches("stroke-dasharray").count(), 4);
    }

    #[test]
    fn rendering_is_deterministic() {
        let p = ConvexPolygon::regular(7, 1.0);
        let rep = shortest_orbits(&p);
        assert_eq!(render(&p, &rep, None), render(&p, &rep, None));
    }
}
