//! Input parsing: tables, bodies, gauges.

use std::path::Path;

use billiards_core::approx::{ConvexBody, Disc, DiscPolygon, Ellipse, PolygonBody};
use billiards_core::minkowski::Gauge;
use billiards_core::{ConvexPolygon, Point};

use crate::CliError;

/// Parse a table: a JSON polygon file (`{"vertices": [[x,y], ...]}`) or a
/// shorthand generator.
pub fn parse_table(spec: &str) -> Result<ConvexPolygon, CliError> {
    if let Some(rest) = spec.strip_prefix("ngon:") {
        return parse_ngon(rest);
    }
    if let Some(rest) = spec.strip_prefix("triangle:") {
        let c = parse_floats(rest)?;
        if c.len() != 6 {
            return Err(CliError::Usage(format!(
                "triangle wants 6 coordinates, got {}",
                c.len()
            )));
        }
        let pts = vec![
            Point::new(c[0], c[1]),
            Point::new(c[2], c[3]),
            Point::new(c[4], c[5]),
        ];
        return ConvexPolygon::new(pts).map_err(|e| CliError::Usage(format!("triangle: {e}")));
    }
    load_polygon_file(Path::new(spec))
}

fn parse_ngon(rest: &str) -> Result<ConvexPolygon, CliError> {
    let (count, tail) = rest.split_once('@').ok_or_else(|| {
        CliError::Usage("ngon wants `ngon:N@unit-circle` or `ngon:N@side=S`".into())
    })?;
    let n: usize = count
        .parse()
        .map_err(|_| CliError::Usage(format!("bad vertex count `{count}`")))?;
    if n < 3 {
        return Err(CliError::Usage("ngon wants at least 3 vertices".into()));
    }
    if tail == "unit-circle" {
        return Ok(ConvexPolygon::regular(n, 1.0));
    }
    if let Some(side) = tail.strip_prefix("side=") {
        let s: f64 = side
            .parse()
            .map_err(|_| CliError::Usage(format!("bad side length `{side}`")))?;
        if !(s > 0.0 && s.is_finite()) {
            return Err(CliError::Usage("side length must be positive".into()));
        }
        let r = s / (2.0 * (std::f64::consts::PI / n as f64).sin());
        return Ok(ConvexPolygon::regular(n, r));
    }
    Err(CliError::Usage(format!("unknown ngon size spec `{tail}`")))
}

pub fn load_polygon_file(path: &Path) -> Result<ConvexPolygon, CliError> {
    let data = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&data).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

/// Parse a body: `disc:R`, `ellipse:a,b`, `polygon:@file`, or
/// `discpoly:x,y,r;x,y,r;...`.
pub fn parse_body(spec: &str) -> Result<Box<dyn ConvexBody>, CliError> {
    if let Some(r) = spec.strip_prefix("disc:") {
        let radius: f64 = r
            .parse()
            .map_err(|_| CliError::Usage(format!("bad disc radius `{r}`")))?;
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(CliError::Usage("disc radius must be positive".into()));
        }
        return Ok(Box::new(Disc { radius }));
    }
    if let Some(ab) = spec.strip_prefix("ellipse:") {
        let v = parse_floats(ab)?;
        if v.len() != 2 || !(v[0] > 0.0 && v[1] > 0.0) {
            return Err(CliError::Usage(
                "ellipse wants two positive semi-axes".into(),
            ));
        }
        return Ok(Box::new(Ellipse { a: v[0], b: v[1] }));
    }
    if let Some(file) = spec.strip_prefix("polygon:@") {
        let polygon = load_polygon_file(Path::new(file))?;
        return Ok(Box::new(PolygonBody { polygon }));
    }
    if let Some(discs) = spec.strip_prefix("discpoly:") {
        let mut parsed = Vec::new();
        for part in discs.split(';') {
            let v = parse_floats(part)?;
            if v.len() != 3 || v[2] <= 0.0 {
                return Err(CliError::Usage(
                    "discpoly wants `x,y,r` triples separated by `;`".into(),
                ));
            }
            parsed.push((Point::new(v[0], v[1]), v[2]));
        }
        return DiscPolygon::new(parsed)
            .map(|d| Box::new(d) as Box<dyn ConvexBody>)
            .map_err(|e| CliError::Usage(format!("discpoly: {e}")));
    }
    Err(CliError::Usage(format!(
        "unknown body `{spec}` (expected disc:R, ellipse:a,b, polygon:@file)"
    )))
}

/// Parse a gauge: `disc`, `lp:P`, `ellipse:a,b`.
pub fn parse_gauge(spec: &str) -> Result<Gauge, CliError> {
    if spec == "disc" {
        return Ok(Gauge::disc());
    }
    if let Some(p) = spec.strip_prefix("lp:") {
        let exponent: f64 = p
            .parse()
            .map_err(|_| CliError::Usage(format!("bad lp exponent `{p}`")))?;
        return Gauge::p_ball(exponent).map_err(|e| CliError::Usage(format!("lp gauge: {e}")));
    }
    if let Some(ab) = spec.strip_prefix("ellipse:") {
        let v = parse_floats(ab)?;
        if v.len() != 2 {
            return Err(CliError::Usage("ellipse gauge wants two semi-axes".into()));
        }
        return Gauge::ellipse(v[0], v[1])
            .map_err(|e| CliError::Usage(format!("ellipse gauge: {e}")));
    }
    Err(CliError::Usage(format!(
        "unknown gauge `{spec}` (expected disc, lp:P, ellipse:a,b)"
    )))
}

fn parse_floats(s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Usage(format!("bad number `{t}`")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ngon_shorthands() {
        let p = parse_table("ngon:5@unit-circle").unwrap();
        assert_eq!(p.len(), 5);
        assert!((p.vertex(0).distance(Point::new(1.0, 0.0))) < 1e-12);

        let q = parse_table("ngon:6@side=2").unwrap();
        assert_eq!(q.len(), 6);
        assert!((q.edge_len(0) - 2.0).abs() < 1e-9);

        assert!(parse_table("ngon:2@unit-circle").is_err());
        assert!(parse_table("ngon:5@diameter=1").is_err());
    }

    #[test]
    fn triangle_shorthand() {
        let t = parse_table("triangle:0,0,1,0,0,1").unwrap();
        assert_eq!(t.len(), 3);
        assert!(parse_table("triangle:0,0,1,0").is_err());
        assert!(parse_table("triangle:0,0,1,0,2,0").is_err());
    }

    #[test]
    fn bodies_and_gauges() {
        assert!(parse_body("disc:1").is_ok());
        assert!(parse_body("disc:-1").is_err());
        assert!(parse_body("ellipse:2,1").is_ok());
        assert!(parse_body("blob:1").is_err());
        assert!(parse_gauge("disc").is_ok());
        assert!(parse_gauge("lp:4").is_ok());
        assert!(parse_gauge("lp:1").is_err());
        assert!(parse_gauge("ellipse:2,1").is_ok());
        assert!(parse_gauge("sup").is_err());
    }
}
