//! Machine-readable reports.
//!
//! Numbers are rounded to 12 significant digits at serialization time and
//! object keys are emitted in sorted order, so identical inputs produce
//! byte-identical JSON. The `timing_ms` field is omitted from that artifact.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use billiards_core::minkowski::{MinkowskiBand, MinkowskiOrbit, MinkowskiReport};
use billiards_core::orbits::{Classification, MinReport, Orbit, TwoBounceBand};
use billiards_core::ConvexPolygon;

/// Round to 12 significant digits.
pub fn round12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

/// Decimal text of a value at 12 significant digits.
pub fn fmt12(x: f64) -> String {
    format!("{}", round12(x))
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct InputEcho {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub body: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gauge: Option<String>,
    pub vertices: Vec<[f64; 2]>,
}

/// Tolerances echoed for reproducibility.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ToleranceEcho {
    pub side: f64,
    pub parallel: f64,
    pub area: f64,
    pub length_tie: f64,
    pub reflection: f64,
}

impl Default for ToleranceEcho {
    fn default() -> Self {
        ToleranceEcho {
            side: billiards_core::geom::TOL_SIDE,
            parallel: billiards_core::geom::TOL_PARALLEL,
            area: billiards_core::geom::TOL_AREA,
            length_tie: billiards_core::orbits::TOL_LEN,
            reflection: billiards_core::minkowski::TOL_REFL,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct IntervalEcho {
    pub lower: f64,
    pub upper: f64,
    pub epsilon: f64,
    pub polygon_vertices: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct OracleEcho {
    pub ell: f64,
    pub delta_vs_engine: f64,
    pub samples: usize,
    pub configs: Vec<Vec<[f64; 2]>>,
}

impl OracleEcho {
    pub fn from_report(brute: &MinReport, engine_ell: f64, samples: usize) -> Self {
        OracleEcho {
            ell: brute.ell,
            delta_vs_engine: (brute.ell - engine_ell).abs(),
            samples,
            configs: brute
                .orbits
                .iter()
                .map(|o| o.points.iter().map(|p| [p.x, p.y]).collect())
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Minimizers {
    pub orbits: Vec<Orbit>,
    pub bands: Vec<TwoBounceBand>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MinkowskiMinimizers {
    pub orbits: Vec<MinkowskiOrbit>,
    pub bands: Vec<MinkowskiBand>,
}

/// The top-level report emitted by every subcommand.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub input: InputEcho,
    pub tolerances: ToleranceEcho,
    pub ell: f64,
    pub width: f64,
    pub inradius: f64,
    pub capacity: f64,
    pub classification: Classification,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minimizers: Option<Minimizers>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minkowski_minimizers: Option<MinkowskiMinimizers>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub interval: Option<IntervalEcho>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleEcho>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl Report {
    pub fn for_polygon(table: &str, poly: &ConvexPolygon, rep: &MinReport) -> Report {
        Report {
            input: InputEcho {
                table: Some(table.to_owned()),
                body: None,
                gauge: None,
                vertices: poly.vertices().iter().map(|p| [p.x, p.y]).collect(),
            },
            tolerances: ToleranceEcho::default(),
            ell: rep.ell,
            width: rep.width,
            inradius: rep.inradius,
            capacity: rep.capacity,
            classification: rep.classification,
            minimizers: Some(Minimizers {
                orbits: rep.orbits.clone(),
                bands: rep.bands.clone(),
            }),
            minkowski_minimizers: None,
            interval: None,
            oracle: None,
            timing_ms: None,
        }
    }

    pub fn for_minkowski(
        table: &str,
        gauge: &str,
        poly: &ConvexPolygon,
        rep: &MinkowskiReport,
    ) -> Report {
        Report {
            input: InputEcho {
                table: Some(table.to_owned()),
                body: None,
                gauge: Some(gauge.to_owned()),
                vertices: poly.vertices().iter().map(|p| [p.x, p.y]).collect(),
            },
            tolerances: ToleranceEcho::default(),
            ell: rep.ell,
            width: rep.width,
            inradius: rep.inradius,
            capacity: rep.capacity,
            classification: rep.classification,
            minimizers: None,
            minkowski_minimizers: Some(MinkowskiMinimizers {
                orbits: rep.orbits.clone(),
                bands: rep.bands.clone(),
            }),
            interval: None,
            oracle: None,
            timing_ms: None,
        }
    }

    /// Deterministic JSON: sorted object keys, every number rounded to 12
    /// significant digits, trailing newline.
    pub fn to_canonical_json(&self) -> String {
        let mut value = serde_json::to_value(self).expect("report serializes");
        round_numbers(&mut value);
        let mut s = serde_json::to_string_pretty(&value).expect("value prints");
        s.push('\n');
        s
    }
}

fn round_numbers(v: &mut Value) {
    match v {
        Value::Number(n) => {
            if let Some(x) = n.as_f64() {
                if n.is_f64() {
                    if let Some(r) = serde_json::Number::from_f64(round12(x)) {
                        *n = r;
                    }
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_numbers),
        Value::Object(map) => map.values_mut().for_each(round_numbers),
        _ => {}
    }
}
