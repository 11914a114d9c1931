//! Shooting-method ground state of `-Δu + u = u^3` in `R^3`, independent of
//! the variational solver: `u'' + (2/r) u' - u + u^3 = 0`, `u'(0) = 0`,
//! with `u(0)` bisected between solutions that cross zero and solutions
//! that turn back up.

use std::f64::consts::PI;

const R0: f64 = 1e-4;
const H: f64 = 1e-3;
const R_END: f64 = 40.0;

#[derive(Clone, Copy, Debug, PartialEq)]
enum Outcome {
    Crosses,
    TurnsUp,
    Undecided,
}

fn rhs(r: f64, y: [f64; 2]) -> [f64; 2] {
    [y[1], -2.0 / r * y[1] + y[0] - y[0].powi(3)]
}

fn rk4(r: f64, y: [f64; 2]) -> [f64; 2] {
    let add = |y: [f64; 2], k: [f64; 2], s: f64| [y[0] + s * k[0], y[1] + s * k[1]];
    let k1 = rhs(r, y);
    let k2 = rhs(r + H / 2.0, add(y, k1, H / 2.0));
    let k3 = rhs(r + H / 2.0, add(y, k2, H / 2.0));
    let k4 = rhs(r + H, add(y, k3, H));
    [
        y[0] + H / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
        y[1] + H / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
    ]
}

/// Trajectory `(r, u, u')` until the solution is classified.
fn shoot(u0: f64) -> (Outcome, Vec<(f64, f64, f64)>) {
    let c = (u0 - u0.powi(3)) / 6.0;
    let mut r = R0;
    let mut y = [u0 + c * R0 * R0, 2.0 * c * R0];
    let mut path = vec![(0.0, u0, 0.0), (r, y[0], y[1])];
    while r < R_END {
        y = rk4(r, y);
        r += H;
        path.push((r, y[0], y[1]));
        if y[0] < 0.0 {
            return (Outcome::Crosses, path);
        }
        if y[1] > 0.0 {
            return (Outcome::TurnsUp, path);
        }
    }
    (Outcome::Undecided, path)
}

pub struct ShootingGroundState {
    pub u0: f64,
    /// `4π ∫ (u'^2 + u^2) r^2 dr`
    pub norm_sq: f64,
    /// `4π ∫ u^4 r^2 dr`
    pub quartic: f64,
    /// `4π ∫ u'^2 r^2 dr`
    pub gradient_sq: f64,
}

impl ShootingGroundState {
    pub fn energy(&self) -> f64 {
        0.5 * self.norm_sq - 0.25 * self.quartic
    }
}

pub fn classical_ground_state() -> ShootingGroundState {
    let (mut lo, mut hi) = (1.5, 10.0);
    assert_eq!(shoot(lo).0, Outcome::TurnsUp);
    assert_eq!(shoot(hi).0, Outcome::Crosses);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        match shoot(mid).0 {
            Outcome::TurnsUp => lo = mid,
            Outcome::Crosses => hi = mid,
            Outcome::Undecided => break,
        }
    }
    // integrate the undershooting trajectory up to where it turns back up
    let (_, path) = shoot(lo);
    let (mut grad, mut mass, mut quartic) = (0.0, 0.0, 0.0);
    for w in path.windows(2) {
        let (r0, u0, p0) = w[0];
        let (r1, u1, p1) = w[1];
        let h = r1 - r0;
        let avg = |a: f64, b: f64| 0.5 * h * (a + b);
        grad += avg(p0 * p0 * r0 * r0, p1 * p1 * r1 * r1);
        mass += avg(u0 * u0 * r0 * r0, u1 * u1 * r1 * r1);
        quartic += avg(u0.powi(4) * r0 * r0, u1.powi(4) * r1 * r1);
    }
    ShootingGroundState {
        u0: lo,
        norm_sq: 4.0 * PI * (grad + mass),
        quartic: 4.0 * PI * quartic,
        gradient_sq: 4.0 * PI * grad,
    }
}
