//! Random convex tables for property sweeps and benchmarks.

use rand::Rng;

use crate::geom::{ConvexPolygon, Point, Triangle, Vec2};

/// Uniformly-shaped random convex polygon with exactly `n` vertices
/// (Valtr's construction), scaled and centered to unit diameter at the
/// origin. Degenerate draws are retried.
pub fn random_convex_polygon<R: Rng>(rng: &mut R, n: usize) -> ConvexPolygon {
    assert!(n >= 3);
    loop {
        let mut xs: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
        let mut ys: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
        xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        ys.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let dx = chain_deltas(rng, &xs);
        let dy = chain_deltas(rng, &ys);

        // Pair the x and y components randomly and sort the vectors by angle.
        let mut dy_shuffled = dy;
        for i in (1..dy_shuffled.len()).rev() {
            let j = rng.random_range(0..=i);
            dy_shuffled.swap(i, j);
        }
        let mut vecs: Vec<Vec2> = dx
            .into_iter()
            .zip(dy_shuffled)
            .map(|(x, y)| Vec2::new(x, y))
            .collect();
        vecs.sort_by(|a, b| a.y.atan2(a.x).partial_cmp(&b.y.atan2(b.x)).unwrap());

        let mut p = Point::new(0.0, 0.0);
        let mut verts = Vec::with_capacity(n);
        for v in vecs {
            verts.push(p);
            p = p + v;
        }
        if let Ok(poly) = ConvexPolygon::new(verts) {
            if poly.len() == n {
                return normalize_unit_diameter(&poly);
            }
        }
    }
}

/// Scale to unit diameter and center the centroid at the origin.
pub fn normalize_unit_diameter(p: &ConvexPolygon) -> ConvexPolygon {
    let c = p.centroid();
    let d = p.diameter();
    let verts = p
        .vertices()
        .iter()
        .map(|v| Point::new((v.x - c.x) / d, (v.y - c.y) / d))
        .collect();
    ConvexPolygon::new(verts).expect("similarity preserves convexity")
}

fn chain_deltas<R: Rng>(rng: &mut R, sorted: &[f64]) -> Vec<f64> {
    let n = sorted.len();
    let (lo, hi) = (sorted[0], sorted[n - 1]);
    let mut last_top = lo;
    let mut last_bot = lo;
    let mut deltas = Vec::with_capacity(n);
    for &v in &sorted[1..n - 1] {
        if rng.random::<bool>() {
            deltas.push(v - last_top);
            last_top = v;
        } else {
            deltas.push(last_bot - v);
            last_bot = v;
        }
    }
    deltas.push(hi - last_top);
    deltas.push(last_bot - hi);
    deltas
}

/// Random nondegenerate triangle in the unit square. `angle_margin` (radians)
/// keeps the largest angle away from a right angle, so the acute/obtuse
/// classification is numerically unambiguous.
pub fn random_triangle<R: Rng>(rng: &mut R, angle_margin: f64) -> Triangle {
    loop {
        let mut pts = [Point::new(0.0, 0.0); 3];
        for p in &mut pts {
            *p = Point::new(rng.random::<f64>(), rng.random::<f64>());
        }
        let Some(t) = Triangle::try_new(pts[0], pts[1], pts[2]) else {
            continue;
        };
        if t.area() < 0.02 {
            continue;
        }
        let v = t.vertices();
        let mut min_cos = f64::INFINITY;
        for i in 0..3 {
            let u = v[(i + 1) % 3] - v[i];
            let w = v[(i + 2) % 3] - v[i];
            min_cos = min_cos.min(u.dot(w) / (u.norm() * w.norm()));
        }
        if min_cos.abs() < angle_margin.sin() {
            continue;
        }
        return t;
    }
}

/// Random centrally symmetric convex polygon: the convex hull of a random
/// polygon's vertices united with their reflections through the centroid.
pub fn random_symmetric_polygon<R: Rng>(rng: &mut R, n: usize) -> ConvexPolygon {
    let base = random_convex_polygon(rng, n);
    let c = base.centroid();
    let mut pts: Vec<Point> = base.vertices().to_vec();
    pts.extend(
        base.vertices()
            .iter()
            .map(|v| Point::new(2.0 * c.x - v.x, 2.0 * c.y - v.y)),
    );
    convex_hull(&mut pts)
}

/// Convex hull (Andrew's monotone chain) of a point set with at least three
/// extreme points.
pub fn convex_hull(pts: &mut [Point]) -> ConvexPolygon {
    pts.sort_by(|a, b| (a.x, a.y).partial_cmp(&(b.x, b.y)).unwrap());
    let mut lower: Vec<Point> = Vec::new();
    for &p in pts.iter() {
        while lower.len() >= 2 {
            let a = lower[lower.len() - 2];
            let b = lower[lower.len() - 1];
            if (b - a).cross(p - a) <= 0.0 {
                lower.pop();
            } else {
                break;
            }
        }
        lower.push(p);
    }
    let mut upper: Vec<Point> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 {
            let a = upper[upper.len() - 2];
            let b = upper[upper.len() - 1];
            if (b - a).cross(p - a) <= 0.0 {
                upper.pop();
            } else {
                break;
            }
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    ConvexPolygon::new(lower).expect("hull of a spread point set")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn polygons_have_requested_size_and_unit_diameter() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in [3usize, 4, 7, 12] {
            let p = random_convex_polygon(&mut rng, n);
            assert_eq!(p.len(), n);
            assert!((p.diameter() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn symmetric_polygons_are_symmetric() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let p = random_symmetric_polygon(&mut rng, 5);
            let c = p.centroid();
            for v in p.vertices() {
                let m = Point::new(2.0 * c.x - v.x, 2.0 * c.y - v.y);
                assert!(
                    p.vertices()
                        .iter()
                        .any(|w| w.distance(m) < 1e-9 * p.diameter()),
                    "mirror vertex missing"
                );
            }
        }
    }

    #[test]
    fn triangles_respect_margin() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let t = random_triangle(&mut rng, 1e-3);
            assert!(t.area() > 0.0);
        }
    }
}
