//! Command-line front end: parse tables, bodies and gauges, run the
//! engines, emit machine-readable reports and SVG drawings.

pub mod parse;
pub mod report;
pub mod svg;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use billiards_core::approx::{self, ConvexBody};
use billiards_core::minkowski;
use billiards_core::oracle;
use billiards_core::orbits;

use report::Report;

/// Exit code 1: input or validation problems, with a one-line diagnostic.
/// Exit code 2: numerical non-convergence.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    NonConvergence(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::NonConvergence(_) => 2,
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "billiards",
    about = "Shortest generalised closed billiard orbits on convex tables",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// Write the full report as JSON.
    #[arg(long, value_name = "PATH")]
    pub json: Option<PathBuf>,
    /// Render the table and minimizers as SVG.
    #[arg(long, value_name = "PATH")]
    pub svg: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Shortest generalised closed billiard orbits of a polygonal table.
    Min {
        /// Polygon: a JSON file, `ngon:N@unit-circle`, `ngon:N@side=S`,
        /// or `triangle:x1,y1,x2,y2,x3,y3`.
        table: String,
        /// Also enumerate vertex-to-vertex 2-bounce orbits (full P2).
        #[arg(long)]
        full: bool,
        /// Cross-check against the brute-force boundary oracle.
        #[arg(long)]
        oracle: bool,
        /// Boundary sample count for `--oracle`.
        #[arg(long, default_value_t = 720)]
        samples: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Symplectic capacity of table x disc (equals the shortest orbit length).
    Capacity {
        table: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Enclose the shortest orbit length of a general convex body.
    Approx {
        /// Body: `disc:R`, `ellipse:a,b`, or `polygon:@file`.
        body: String,
        /// Relative accuracy of the enclosure.
        #[arg(long)]
        eps: f64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Brute-force boundary-configuration search (verification instrument).
    Oracle {
        table: String,
        /// Boundary sample count.
        #[arg(long, default_value_t = 720)]
        samples: usize,
        /// Skip the coordinate-descent polish.
        #[arg(long)]
        no_refine: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Shortest orbits in a Minkowski length structure.
    Minkowski {
        table: String,
        /// Gauge: `disc`, `lp:P`, or `ellipse:a,b`.
        #[arg(long)]
        gauge: String,
        #[command(flatten)]
        out: OutputArgs,
    },
}

/// Run a parsed command line; returns the text for stdout.
pub fn execute(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Min {
            table,
            full,
            oracle: with_oracle,
            samples,
            out,
        } => {
            let poly = parse::parse_table(&table)?;
            let start = Instant::now();
            let mut rep = orbits::shortest_orbits(&poly);
            if full {
                // Vertex-to-vertex orbits are never shorter than the fast
                // set, but ties belong in the report when requested.
                let full_set = orbits::two_bounce_orbits(&poly, orbits::Enumeration::Full);
                let keep = rep.ell * (1.0 + orbits::TOL_LEN);
                let tol = 1e-9 * poly.diameter();
                for o in full_set.orbits {
                    if o.length <= keep && !rep.orbits.iter().any(|e| e.same_trace(&o, tol)) {
                        rep.orbits.push(o);
                    }
                }
            }
            let elapsed = start.elapsed().as_secs_f64() * 1e3;
            let oracle_part = if with_oracle {
                if samples < 16 {
                    return Err(CliError::Usage("--samples must be at least 16".into()));
                }
                let o = oracle::brute_force_min(&poly, samples, true);
                Some(report::OracleEcho::from_report(&o, rep.ell, samples))
            } else {
                None
            };
            let mut report = Report::for_polygon(&table, &poly, &rep);
            report.oracle = oracle_part;
            report.timing_ms = Some(elapsed);
            let text = human_min(&rep);
            finish(report, &out, Some((&poly, &rep, None)), text)
        }
        Command::Capacity { table, out } => {
            let poly = parse::parse_table(&table)?;
            let rep = orbits::shortest_orbits(&poly);
            let report = Report::for_polygon(&table, &poly, &rep);
            let line = format!("c_EHZ = {}\n", report::fmt12(rep.capacity));
            finish(report, &out, Some((&poly, &rep, None)), line)
        }
        Command::Approx { body, eps, out } => {
            if !(eps > 0.0 && eps.is_finite()) {
                return Err(CliError::Usage(format!("eps must be positive, got {eps}")));
            }
            let parsed = parse::parse_body(&body)?;
            let start = Instant::now();
            let (interval, rep) =
                approx::ell_interval(parsed.as_ref(), eps).map_err(|e| match e {
                    approx::ApproxError::CertificationFailed => {
                        CliError::NonConvergence(format!("approx: {e}"))
                    }
                    other => CliError::Usage(format!("approx: {other}")),
                })?;
            let elapsed = start.elapsed().as_secs_f64() * 1e3;
            let mut report = Report::for_polygon(&body, &interval.polygon, &rep);
            report.input.body = Some(body.clone());
            report.input.table = None;
            report.interval = Some(report::IntervalEcho {
                lower: interval.lower,
                upper: interval.upper,
                epsilon: interval.epsilon,
                polygon_vertices: interval.polygon.len(),
            });
            report.timing_ms = Some(elapsed);
            let line = format!(
                "ell({}) in [{}, {}]  (eps = {}, polygon with {} vertices)\n",
                body,
                report::fmt12(interval.lower),
                report::fmt12(interval.upper),
                interval.epsilon,
                interval.polygon.len()
            );
            let outline = sample_outline(parsed.as_ref());
            finish(
                report,
                &out,
                Some((&interval.polygon, &rep, Some(outline))),
                line,
            )
        }
        Command::Oracle {
            table,
            samples,
            no_refine,
            out,
        } => {
            let poly = parse::parse_table(&table)?;
            if samples < 16 {
                return Err(CliError::Usage("oracle needs --samples >= 16".into()));
            }
            let start = Instant::now();
            let exact = orbits::shortest_orbits(&poly);
            let brute = oracle::brute_force_min(&poly, samples, !no_refine);
            let elapsed = start.elapsed().as_secs_f64() * 1e3;
            let mut report = Report::for_polygon(&table, &poly, &brute);
            report.oracle = Some(report::OracleEcho::from_report(&brute, exact.ell, samples));
            report.timing_ms = Some(elapsed);
            let line = format!(
                "oracle ell = {}  engine ell = {}  delta = {:.3e}\n",
                report::fmt12(brute.ell),
                report::fmt12(exact.ell),
                (brute.ell - exact.ell).abs()
            );
            finish(report, &out, Some((&poly, &brute, None)), line)
        }
        Command::Minkowski { table, gauge, out } => {
            let poly = parse::parse_table(&table)?;
            let g = parse::parse_gauge(&gauge)?;
            let start = Instant::now();
            let rep = minkowski::minkowski_shortest(&poly, &g)
                .map_err(|e| CliError::NonConvergence(format!("minkowski: {e}")))?;
            let elapsed = start.elapsed().as_secs_f64() * 1e3;
            let mut report = Report::for_minkowski(&table, &gauge, &poly, &rep);
            report.timing_ms = Some(elapsed);
            let line = format!(
                "ell_K = {}  classification = {:?}  ({} orbit(s), {} band(s))\n",
                report::fmt12(rep.ell),
                rep.classification,
                rep.orbits.len(),
                rep.bands.len()
            );
            let drawing = svg::render_minkowski(&poly, &rep);
            finish_with_svg(report, &out, drawing, line)
        }
    }
}

fn human_min(rep: &orbits::MinReport) -> String {
    use std::fmt::Write;
    let mut s = String::new();
    let _ = writeln!(s, "ell            = {}", report::fmt12(rep.ell));
    let _ = writeln!(s, "width          = {}", report::fmt12(rep.width));
    let _ = writeln!(s, "inradius       = {}", report::fmt12(rep.inradius));
    let _ = writeln!(s, "capacity       = {}", report::fmt12(rep.capacity));
    let _ = writeln!(s, "classification = {:?}", rep.classification);
    let _ = writeln!(
        s,
        "minimizers     = {} orbit(s), {} band(s)",
        rep.orbits.len(),
        rep.bands.len()
    );
    for (i, o) in rep.orbits.iter().enumerate() {
        let pts: Vec<String> = o
            .points
            .iter()
            .map(|p| format!("({}, {})", report::fmt12(p.x), report::fmt12(p.y)))
            .collect();
        let _ = writeln!(
            s,
            "  orbit {}: {}-bounce {} length {}  [{}]",
            i + 1,
            o.period(),
            if o.is_regular() {
                "regular"
            } else {
                "singular"
            },
            report::fmt12(o.length),
            pts.join(", ")
        );
    }
    for (i, b) in rep.bands.iter().enumerate() {
        let _ = writeln!(
            s,
            "  band {}: edges ({}, {}) interval [{}, {}] length {}",
            i + 1,
            b.edge_a,
            b.edge_b,
            report::fmt12(b.interval.0),
            report::fmt12(b.interval.1),
            report::fmt12(b.length)
        );
    }
    s
}

fn sample_outline(body: &dyn ConvexBody) -> Vec<billiards_core::Point> {
    (0..512)
        .map(|k| {
            let t = std::f64::consts::TAU * k as f64 / 512.0;
            body.boundary_point(billiards_core::Vec2::new(t.cos(), t.sin()))
        })
        .collect()
}

type SvgInputs<'a> = (
    &'a billiards_core::ConvexPolygon,
    &'a orbits::MinReport,
    Option<Vec<billiards_core::Point>>,
);

fn finish(
    report: Report,
    out: &OutputArgs,
    svg_inputs: Option<SvgInputs<'_>>,
    stdout: String,
) -> Result<String, CliError> {
    let drawing = svg_inputs
        .map(|(poly, rep, outline)| svg::render(poly, rep, outline.as_deref()))
        .unwrap_or_default();
    finish_with_svg(report, out, drawing, stdout)
}

fn finish_with_svg(
    mut report: Report,
    out: &OutputArgs,
    drawing: String,
    stdout: String,
) -> Result<String, CliError> {
    if let Some(path) = &out.json {
        // Timing varies run to run; the JSON artifact stays byte-identical
        // for identical inputs.
        report.timing_ms = None;
        let json = report.to_canonical_json();
        std::fs::write(path, json)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
    }
    if let Some(path) = &out.svg {
        if drawing.is_empty() {
            return Err(CliError::Usage("no drawable content for --svg".into()));
        }
        std::fs::write(path, drawing)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(stdout)
}
