//! Gauge (Minkowski functional) oracles for symmetric strictly convex
//! smooth bodies.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::geom::Vec2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum GaugeError {
    #[error("gauge parameter out of range")]
    InvalidParameter,
    #[error("norm is not symmetric")]
    NotSymmetric,
    #[error("norm is not positively homogeneous")]
    NotHomogeneous,
    #[error("unit ball is not strictly convex")]
    NotStrictlyConvex,
    #[error("gradient oracle disagrees with finite differences")]
    GradientMismatch,
}

/// External norm-and-gradient oracle for a custom gauge.
pub trait GaugeOracle: Send + Sync {
    fn norm(&self, v: Vec2) -> f64;
    fn gradient(&self, v: Vec2) -> Vec2;
}

enum Kind {
    Disc,
    PBall { p: f64 },
    Ellipse { a: f64, b: f64 },
    Custom(Box<dyn GaugeOracle>),
}

/// A symmetric strictly convex smooth body `K`, as the norm it induces:
/// `norm(v)` is the gauge `min { lam > 0 : v in lam K }` and `gradient`
/// its derivative away from the origin.
pub struct Gauge {
    kind: Kind,
    /// Human-readable descriptor, echoed in reports.
    descriptor: String,
}

impl std::fmt::Debug for Gauge {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Gauge({})", self.descriptor)
    }
}

impl Gauge {
    /// Euclidean unit disc; reduces everything to Euclidean billiards.
    pub fn disc() -> Gauge {
        Gauge {
            kind: Kind::Disc,
            descriptor: "disc".to_owned(),
        }
    }

    /// Unit p-ball for `1 < p < inf`; its gauge is the l^p norm.
    pub fn p_ball(p: f64) -> Result<Gauge, GaugeError> {
        if !(p > 1.0 && p.is_finite()) {
            return Err(GaugeError::InvalidParameter);
        }
        Ok(Gauge {
            kind: Kind::PBall { p },
            descriptor: format!("lp:{p}"),
        })
    }

    /// Axis-aligned ellipse with semi-axes `a, b > 0`.
    pub fn ellipse(a: f64, b: f64) -> Result<Gauge, GaugeError> {
        if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
            return Err(GaugeError::InvalidParameter);
        }
        Ok(Gauge {
            kind: Kind::Ellipse { a, b },
            descriptor: format!("ellipse:{a},{b}"),
        })
    }

    /// Wrap an external oracle, validating symmetry, homogeneity, strict
    /// convexity and gradient consistency on random probes.
    pub fn custom(
        oracle: Box<dyn GaugeOracle>,
        descriptor: impl Into<String>,
    ) -> Result<Gauge, GaugeError> {
        let g = Gauge {
            kind: Kind::Custom(oracle),
            descriptor: descriptor.into(),
        };
        g.validate()?;
        Ok(g)
    }

    pub fn descriptor(&self) -> &str {
        &self.descriptor
    }

    pub fn norm(&self, v: Vec2) -> f64 {
        match &self.kind {
            Kind::Disc => v.norm(),
            Kind::PBall { p } => {
                let (ax, ay) = (v.x.abs(), v.y.abs());
                let m = ax.max(ay);
                if m == 0.0 {
                    return 0.0;
                }
                m * ((ax / m).powf(*p) + (ay / m).powf(*p)).powf(1.0 / *p)
            }
            Kind::Ellipse { a, b } => ((v.x / a).powi(2) + (v.y / b).powi(2)).sqrt(),
            Kind::Custom(o) => o.norm(v),
        }
    }

    /// Gradient of the gauge at `v != 0`. Positively 0-homogeneous and
    /// satisfies the Euler relation `<grad(v), v> = norm(v)`.
    pub fn gradient(&self, v: Vec2) -> Vec2 {
        match &self.kind {
            Kind::Disc => {
                let n = v.norm();
                v / n
            }
            Kind::PBall { p } => {
                let n = self.norm(v);
                let w = v / n;
                Vec2::new(
                    w.x.signum() * w.x.abs().powf(*p - 1.0),
                    w.y.signum() * w.y.abs().powf(*p - 1.0),
                )
            }
            Kind::Ellipse { a, b } => {
                let n = self.norm(v);
                Vec2::new(v.x / (a * a * n), v.y / (b * b * n))
            }
            Kind::Custom(o) => o.gradient(v),
        }
    }

    /// Spot-check the gauge axioms on deterministic random probes.
    pub fn validate(&self) -> Result<(), GaugeError> {
        let mut rng = ChaCha8Rng::seed_from_u64(0x6a09);
        let sample = |rng: &mut ChaCha8Rng| loop {
            let v = Vec2::new(
                rng.random::<f64>() * 2.0 - 1.0,
                rng.random::<f64>() * 2.0 - 1.0,
            );
            if v.norm() > 0.1 {
                return v;
            }
        };
        for _ in 0..64 {
            let v = sample(&mut rng);
            let n = self.norm(v);
            if !(n.is_finite() && n > 0.0) {
                return Err(GaugeError::NotHomogeneous);
            }
            // Symmetry.
            if (self.norm(-v) - n).abs() > 1e-9 * n {
                return Err(GaugeError::NotSymmetric);
            }
            // Positive homogeneity.
            let lam = 0.25 + 4.0 * rng.random::<f64>();
            if (self.norm(v * lam) - lam * n).abs() > 1e-9 * lam * n {
                return Err(GaugeError::NotHomogeneous);
            }
            // Gradient against central finite differences.
            let g = self.gradient(v);
            let h = 1e-6 * v.norm();
            let fd = Vec2::new(
                (self.norm(v + Vec2::new(h, 0.0)) - self.norm(v - Vec2::new(h, 0.0))) / (2.0 * h),
                (self.norm(v + Vec2::new(0.0, h)) - self.norm(v - Vec2::new(0.0, h))) / (2.0 * h),
            );
            if (g - fd).norm() > 1e-6 * g.norm().max(1.0) {
                return Err(GaugeError::GradientMismatch);
            }
            // Euler relation for 1-homogeneous functions.
            if (g.dot(v) - n).abs() > 1e-8 * n {
                return Err(GaugeError::GradientMismatch);
            }
            // Strict convexity of the unit ball on non-parallel pairs.
            let w = sample(&mut rng);
            if v.normalized().unwrap().cross(w.normalized().unwrap()).abs() > 1e-3 {
                let vu = v / self.norm(v);
                let wu = w / self.norm(w);
                let mid = (vu + wu) * 0.5;
                if self.norm(mid) >= 1.0 - 1e-12 {
                    return Err(GaugeError::NotStrictlyConvex);
                }
            }
        }
        Ok(())
    }
}
