//! Independent grid oracle for the largest Hardy probability over two-qubit
//! states cos θ|00⟩ + sin θ|11⟩ and planar spin settings.
//!
//! Grid over (θ, x2). For each grid point the zero conditions are solved one
//! angle at a time by scanning for a sign change and bisecting:
//! x1 from ⟨x1+,x2+|ψ⟩ = 0, y1 from ⟨y1+,x2−|ψ⟩ = 0, y2 from ⟨x1−,y2+|ψ⟩ = 0.
//! q4 = ⟨y1+,y2+|ψ⟩² is then computed from explicit 4-component vectors.

use std::f64::consts::{FRAC_PI_4, TAU};

fn plus(a: f64) -> [f64; 2] {
    [(a / 2.0).cos(), (a / 2.0).sin()]
}

fn minus(a: f64) -> [f64; 2] {
    [-(a / 2.0).sin(), (a / 2.0).cos()]
}

fn overlap(theta: f64, u: [f64; 2], v: [f64; 2]) -> f64 {
    let psi = [theta.cos(), 0.0, 0.0, theta.sin()];
    let uv = [u[0] * v[0], u[0] * v[1], u[1] * v[0], u[1] * v[1]];
    psi.iter().zip(uv).map(|(a, b)| a * b).sum()
}

/// Root of `f` on [0, 2π] by sign-change scan and bisection.
fn root(f: impl Fn(f64) -> f64) -> Option<f64> {
    const SCAN: usize = 64;
    let mut prev = (0.0, f(0.0));
    for k in 1..=SCAN {
        let x = TAU * k as f64 / SCAN as f64;
        let fx = f(x);
        if prev.1 == 0.0 {
            return Some(prev.0);
        }
        if prev.1.signum() != fx.signum() {
            let (mut lo, mut hi, flo) = (prev.0, x, prev.1);
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                if f(mid).signum() == flo.signum() {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            return Some(0.5 * (lo + hi));
        }
        prev = (x, fx);
    }
    None
}

pub fn q4_at(theta: f64, x2: f64) -> Option<f64> {
    let x1 = root(|a| overlap(theta, plus(a), plus(x2)))?;
    let y1 = root(|a| overlap(theta, plus(a), minus(x2)))?;
    let y2 = root(|a| overlap(theta, minus(x1), plus(a)))?;
    Some(overlap(theta, plus(y1), plus(y2)).powi(2))
}

/// (θ*, q4*) on an `n_theta × n_x2` grid over (0, π/4) × [0, 2π).
pub fn max_hardy_grid(n_theta: usize, n_x2: usize) -> (f64, f64) {
    let mut best = (0.0, 0.0);
    for i in 1..=n_theta {
        let theta = FRAC_PI_4 * i as f64 / (n_theta + 1) as f64;
        for j in 0..n_x2 {
            let x2 = TAU * (j as f64 + 0.5) / n_x2 as f64;
            if let Some(q4) = q4_at(theta, x2) {
                if q4 > best.1 {
                    best = (theta, q4);
                }
            }
        }
    }
    best
}
