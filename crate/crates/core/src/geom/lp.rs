//! Randomized incremental linear programming in dimensions one to three.
//!
//! Solves `maximize c.x subject to a_i.x <= b_i` with an explicit box bound
//! `|x_j| <= bound` so every subproblem stays bounded. Constraints are
//! processed in a shuffled order (fixed seed, so results are deterministic);
//! when a constraint is violated the optimum is recomputed on its boundary
//! hyperplane, one dimension down. Expected linear time in the number of
//! constraints for fixed dimension.
//!
//! Used for the Chebyshev center (inradius) and for translation-feasibility
//! margins. Both of those programs are feasible by construction, but
//! `Infeasible` is still reported faithfully.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// `a . x <= b` in three variables.
pub type Row3 = ([f64; 3], f64);

#[derive(Clone, Debug, PartialEq)]
pub enum Lp3 {
    Optimal { x: [f64; 3] },
    Infeasible,
}

fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn norm3(a: [f64; 3]) -> f64 {
    dot3(a, a).sqrt()
}

fn cross3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn scale3(a: [f64; 3], s: f64) -> [f64; 3] {
    [a[0] * s, a[1] * s, a[2] * s]
}

fn add3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

/// Maximize `c.x` subject to `rows` and `|x_j| <= bound`.
pub fn maximize3(c: [f64; 3], rows: &[Row3], bound: f64, seed: u64) -> Lp3 {
    assert!(bound > 0.0 && bound.is_finite());
    let tol = 1e-13 * bound.max(1.0);

    // Normalize rows; drop vacuous ones, detect trivially infeasible ones.
    let mut norm_rows: Vec<Row3> = Vec::with_capacity(rows.len());
    for &(a, b) in rows {
        let n = norm3(a);
        if n <= 1e-300 {
            if b < -tol {
                return Lp3::Infeasible;
            }
            continue;
        }
        norm_rows.push((scale3(a, 1.0 / n), b / n));
    }

    let mut order: Vec<usize> = (0..norm_rows.len()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (norm_rows.len() as u64));
    order.shuffle(&mut rng);

    // Start at the box corner maximizing c.
    let corner = |ci: f64| if ci >= 0.0 { bound } else { -bound };
    let mut x = [corner(c[0]), corner(c[1]), corner(c[2])];

    for (step, &k) in order.iter().enumerate() {
        let (a, b) = norm_rows[k];
        if dot3(a, x) <= b + tol {
            continue;
        }
        // Optimum moves onto the plane a.x = b. Parameterize it and solve the
        // projected two-dimensional program over the earlier constraints.
        let p0 = scale3(a, b);
        let axis = if a[0].abs() <= a[1].abs() && a[0].abs() <= a[2].abs() {
            [1.0, 0.0, 0.0]
        } else if a[1].abs() <= a[2].abs() {
            [0.0, 1.0, 0.0]
        } else {
            [0.0, 0.0, 1.0]
        };
        let u = {
            let v = cross3(a, axis);
            scale3(v, 1.0 / norm3(v))
        };
        let w = cross3(a, u);

        let c2 = [dot3(c, u), dot3(c, w)];
        let mut rows2: Vec<([f64; 2], f64)> = Vec::with_capacity(step + 6);
        // Box faces become ordinary constraints on the plane.
        for j in 0..3 {
            let mut e = [0.0; 3];
            e[j] = 1.0;
            rows2.push(([dot3(e, u), dot3(e, w)], bound - p0[j]));
            rows2.push(([-dot3(e, u), -dot3(e, w)], bound + p0[j]));
        }
        for &ko in order.iter().take(step) {
            let (ai, bi) = norm_rows[ko];
            rows2.push(([dot3(ai, u), dot3(ai, w)], bi - dot3(ai, p0)));
        }
        match maximize2(c2, &rows2, 4.0 * bound, tol) {
            Some(y) => x = add3(p0, add3(scale3(u, y[0]), scale3(w, y[1]))),
            None => return Lp3::Infeasible,
        }
    }
    Lp3::Optimal { x }
}

/// Two-dimensional subproblem; `bound` is an artificial enclosing box that
/// is never active when the mapped constraints already bound the optimum.
fn maximize2(c: [f64; 2], rows: &[([f64; 2], f64)], bound: f64, tol: f64) -> Option<[f64; 2]> {
    let corner = |ci: f64| if ci >= 0.0 { bound } else { -bound };
    let mut x = [corner(c[0]), corner(c[1])];

    for (step, &(a, b)) in rows.iter().enumerate() {
        let n = (a[0] * a[0] + a[1] * a[1]).sqrt();
        if n <= 1e-300 {
            if b < -tol {
                return None;
            }
            continue;
        }
        if a[0] * x[0] + a[1] * x[1] <= b + tol * n {
            continue;
        }
        // Solve on the line a.x = b.
        let an = [a[0] / n, a[1] / n];
        let bn = b / n;
        let p0 = [an[0] * bn, an[1] * bn];
        let u = [-an[1], an[0]];
        let c1 = c[0] * u[0] + c[1] * u[1];
        let mut lo = -4.0 * bound;
        let mut hi = 4.0 * bound;
        // Artificial box in the original coordinates.
        for j in 0..2 {
            for s in [1.0f64, -1.0] {
                let aj = [s * ((j == 0) as i32 as f64), s * ((j == 1) as i32 as f64)];
                clip(
                    &mut lo,
                    &mut hi,
                    aj[0] * u[0] + aj[1] * u[1],
                    bound - (aj[0] * p0[0] + aj[1] * p0[1]),
                    tol,
                );
            }
        }
        for &(ai, bi) in rows.iter().take(step) {
            clip(
                &mut lo,
                &mut hi,
                ai[0] * u[0] + ai[1] * u[1],
                bi - (ai[0] * p0[0] + ai[1] * p0[1]),
                tol,
            );
        }
        if lo > hi + tol {
            return None;
        }
        let t = if c1.abs() <= 1e-300 {
            0.0f64.clamp(lo, hi)
        } else if c1 > 0.0 {
            hi
        } else {
            lo
        };
        x = [p0[0] + u[0] * t, p0[1] + u[1] * t];
    }
    Some(x)
}

/// Intersect the interval `[lo, hi]` with `alpha * t <= beta`.
fn clip(lo: &mut f64, hi: &mut f64, alpha: f64, beta: f64, tol: f64) {
    if alpha > tol {
        *hi = hi.min(beta / alpha);
    } else if alpha < -tol {
        *lo = lo.max(beta / alpha);
    } else if beta < -tol {
        // 0 <= beta violated: empty.
        *lo = 1.0;
        *hi = 0.0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_chebyshev_program() {
        // max r s.t. center +- r inside the unit square.
        let rows = vec![
            ([-1.0, 0.0, 1.0], 0.0),
            ([1.0, 0.0, 1.0], 1.0),
            ([0.0, -1.0, 1.0], 0.0),
            ([0.0, 1.0, 1.0], 1.0),
        ];
        match maximize3([0.0, 0.0, 1.0], &rows, 10.0, 7) {
            Lp3::Optimal { x } => {
                assert!((x[2] - 0.5).abs() < 1e-9);
                assert!((x[0] - 0.5).abs() < 1e-9);
                assert!((x[1] - 0.5).abs() < 1e-9);
            }
            Lp3::Infeasible => panic!("feasible program"),
        }
    }

    #[test]
    fn infeasible_rows_detected() {
        let rows = vec![([1.0, 0.0, 0.0], 0.0), ([-1.0, 0.0, 0.0], -1.0)];
        assert_eq!(maximize3([1.0, 0.0, 0.0], &rows, 10.0, 7), Lp3::Infeasible);
    }

    #[test]
    fn box_bound_respected() {
        match maximize3([1.0, 1.0, 1.0], &[], 2.0, 7) {
            Lp3::Optimal { x } => assert_eq!(x, [2.0, 2.0, 2.0]),
            Lp3::Infeasible => panic!(),
        }
    }

    #[test]
    fn shuffle_is_deterministic() {
        let rows = vec![
            ([-1.0, 0.0, 1.0], 0.0),
            ([1.0, 0.5, 1.0], 1.0),
            ([0.0, -1.0, 1.0], 0.0),
            ([0.3, 1.0, 1.0], 1.0),
            ([1.0, 0.0, 0.9], 1.2),
        ];
        let a = maximize3([0.0, 0.0, 1.0], &rows, 10.0, 99);
        let b = maximize3([0.0, 0.0, 1.0], &rows, 10.0, 99);
        assert_eq!(a, b);
    }
}
