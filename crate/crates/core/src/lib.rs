//! Shortest generalised closed billiard orbits on planar convex tables.
//!
//! The library computes the set of shortest generalised closed billiard
//! orbits and their common length on convex polygons (exactly), on general
//! convex bodies (to any prescribed relative accuracy via inscribed
//! polygons), and for symmetric Minkowski length structures. The shortest
//! length also equals the Ekeland-Hofer-Zehnder capacity of the
//! four-dimensional domain `table x unit disc`, which is how the `capacity`
//! entry points report it.
//!
//! Modules:
//! - [`geom`]: convex-geometry kernel (polygons, widths, inradii, support
//!   predicates, a small linear-program solver).
//! - [`orbits`]: the exact engine for polygons (2-bounce bands and
//!   altitudes, Fagnano 3-bounce orbits, minimizer selection).
//! - [`approx`]: inscribed-polygon sandwich scheme for non-polygonal bodies.
//! - [`oracle`]: independent brute-force verifier over boundary
//!   configurations that cannot be translated into the interior.
//! - [`minkowski`]: symmetric Minkowski (anisotropic) billiards.
//! - [`sample`]: random convex tables for property tests and benchmarks.

pub mod approx;
pub mod geom;
pub mod minkowski;
pub mod oracle;
pub mod orbits;
pub mod sample;

pub use geom::{ConvexPolygon, Line, Point, PolygonError, Triangle, TriangleKind, Vec2};
pub use orbits::{
    shortest_orbits, Classification, MinReport, Orbit, OrbitError, OrbitKind, TwoBounceBand,
};
