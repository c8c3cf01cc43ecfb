//! Hardy settings for two-qubit Schmidt states cos θ|00⟩ + sin θ|11⟩.
//!
//! All four observables lie in the x–z plane. With the X2 angle held as a
//! free parameter, the three orthogonality conditions
//!
//! ```text
//! ⟨x1+, x2+|ψ⟩ = 0    ⟨y1+, x2−|ψ⟩ = 0    ⟨x1−, y2+|ψ⟩ = 0
//! ```
//!
//! are solved for the remaining angles by damped Gauss–Newton, and the free
//! angle is then tuned to maximize q4 = |⟨y1+, y2+|ψ⟩|².

use std::f64::consts::{FRAC_PI_4, TAU};

use nalgebra::{Matrix3, Vector3};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qcore::{spin_observable, BlochDirection, QuantumState};
use crate::witness::{q_vector, QVector, Scenario};

/// Below this Schmidt angle the state counts as a product state.
pub const ENTANGLEMENT_EPS: f64 = 1e-12;

const FREE_ANGLE_GRID: usize = 48;
const GOLDEN_ITERATIONS: usize = 60;

/// cos θ |00⟩ + sin θ |11⟩ with θ ∈ [0, π/4].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchmidtState {
    theta: f64,
}

impl SchmidtState {
    pub fn new(theta: f64) -> Result<Self> {
        if !(0.0..=FRAC_PI_4).contains(&theta) {
            return Err(Error::InvalidParameter(format!(
                "Schmidt angle {theta} outside [0, pi/4]"
            )));
        }
        Ok(Self { theta })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn state(&self) -> QuantumState {
        QuantumState::schmidt(self.theta)
    }

    /// (cos θ, sin θ)
    fn coefficients(&self) -> (f64, f64) {
        let (s, c) = self.theta.sin_cos();
        (c, s)
    }
}

/// Bloch angles, measured from +z towards +x, of four planar spin settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PlanarAngles {
    pub x1: f64,
    pub y1: f64,
    pub x2: f64,
    pub y2: f64,
}

impl PlanarAngles {
    pub fn scenario(&self) -> Scenario {
        let s = |a: f64| spin_observable(BlochDirection::planar(a));
        Scenario::new(s(self.x1), s(self.y1), s(self.x2), s(self.y2)).expect("spin observables are dichotomic")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HardyConstruction {
    pub theta: f64,
    pub angles: PlanarAngles,
    #[serde(skip)]
    pub scenario: Scenario,
    pub q: QVector,
    /// Largest absolute orthogonality residual at the solution.
    pub residual: f64,
}

/// Half-angle ket components of the ±1 eigenvector of a planar spin.
fn ket(angle: f64, plus: bool) -> (f64, f64) {
    let (s, c) = (angle / 2.0).sin_cos();
    if plus {
        (c, s)
    } else {
        (-s, c)
    }
}

/// ⟨u ⊗ v|ψ⟩ for the Schmidt state with coefficients (c, s).
fn amplitude(cs: (f64, f64), u: (f64, f64), v: (f64, f64)) -> f64 {
    cs.0 * u.0 * v.0 + cs.1 * u.1 * v.1
}

fn residuals(cs: (f64, f64), x2: f64, u: &Vector3<f64>) -> Vector3<f64> {
    let (x1, y1, y2) = (u[0], u[1], u[2]);
    Vector3::new(
        amplitude(cs, ket(x1, true), ket(x2, true)),
        amplitude(cs, ket(y1, true), ket(x2, false)),
        amplitude(cs, ket(x1, false), ket(y2, true)),
    )
}

fn jacobian(cs: (f64, f64), x2: f64, u: &Vector3<f64>) -> Matrix3<f64> {
    // d/dα of ket(α, +) is ½·ket(α, −); of ket(α, −) is −½·ket(α, +).
    let (x1, y1, y2) = (u[0], u[1], u[2]);
    let neg = |k: (f64, f64)| (-k.0, -k.1);
    let half = |v: f64| 0.5 * v;
    Matrix3::new(
        half(amplitude(cs, ket(x1, false), ket(x2, true))),
        0.0,
        0.0,
        0.0,
        half(amplitude(cs, ket(y1, false), ket(x2, false))),
        0.0,
        half(amplitude(cs, neg(ket(x1, true)), ket(y2, true))),
        0.0,
        half(amplitude(cs, ket(x1, false), ket(y2, false))),
    )
}

/// Solves the three zero conditions for (x1, y1, y2) at fixed x2.
/// Returns the solution and its max-norm residual.
fn solve_zero_conditions(cs: (f64, f64), x2: f64) -> (Vector3<f64>, f64) {
    let mut best = (Vector3::zeros(), f64::INFINITY);
    for start in 0..6 {
        let offset = start as f64 * TAU / 6.0 + 0.3;
        let mut u = Vector3::new(offset, offset + 1.0, offset + 2.0);
        let mut r = residuals(cs, x2, &u);
        let mut lambda = 1e-3;
        for _ in 0..200 {
            let norm = r.amax();
            if norm < 1e-15 {
                break;
            }
            let j = jacobian(cs, x2, &u);
            let jt = j.transpose();
            let lhs = jt * j + Matrix3::identity() * lambda;
            let Some(step) = lhs.lu().solve(&(-(jt * r))) else {
                lambda *= 10.0;
                continue;
            };
            let trial = u + step;
            let rt = residuals(cs, x2, &trial);
            if rt.norm() < r.norm() {
                u = trial;
                r = rt;
                lambda = (lambda * 0.1).max(1e-15);
            } else {
                lambda *= 10.0;
                if lambda > 1e12 {
                    break;
                }
            }
        }
        let norm = r.amax();
        if norm < best.1 {
            best = (u, norm);
        }
        if norm < 1e-14 {
            break;
        }
    }
    best
}

/// Hardy probability and residual reached at a given free angle.
fn hardy_at(cs: (f64, f64), x2: f64) -> (f64, PlanarAngles, f64) {
    let (u, residual) = solve_zero_conditions(cs, x2);
    let angles = PlanarAngles {
        x1: u[0],
        y1: u[1],
        x2,
        y2: u[2],
    };
    let amp = amplitude(cs, ket(angles.y1, true), ket(angles.y2, true));
    (amp * amp, angles, residual)
}

/// Golden-section maximization of a unimodal `f` on `[lo, hi]`.
pub(crate) fn golden_max<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, iterations: usize) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut a = hi - inv_phi * (hi - lo);
    let mut b = lo + inv_phi * (hi - lo);
    let (mut fa, mut fb) = (f(a), f(b));
    for _ in 0..iterations {
        if fa >= fb {
            hi = b;
            b = a;
            fb = fa;
            a = hi - inv_phi * (hi - lo);
            fa = f(a);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + inv_phi * (hi - lo);
            fb = f(b);
        }
    }
    if fa >= fb {
        (a, fa)
    } else {
        (b, fb)
    }
}

/// Builds Hardy settings for `s`: q1, q2, q3 below `tol` and q4 above it,
/// with q4 maximized over the one-parameter family of solutions.
pub fn hardy_observables(s: &SchmidtState, tol: f64) -> Result<HardyConstruction> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!("tolerance must be positive, got {tol}")));
    }
    if s.theta <= ENTANGLEMENT_EPS {
        return Err(Error::NotEntangled);
    }
    if (FRAC_PI_4 - s.theta).abs() <= tol {
        return Err(Error::MaximallyEntangled);
    }
    let cs = s.coefficients();
    let objective = |x2: f64| {
        let (q4, _, residual) = hardy_at(cs, x2);
        if residual < 1e-12 {
            q4
        } else {
            -residual
        }
    };

    let step = TAU / FREE_ANGLE_GRID as f64;
    let (best_k, _) = (0..FREE_ANGLE_GRID)
        .map(|k| (k, objective(k as f64 * step)))
        .fold((0, f64::NEG_INFINITY), |acc, (k, v)| if v > acc.1 { (k, v) } else { acc });
    let centre = best_k as f64 * step;
    let (x2, _) = golden_max(objective, centre - step, centre + step, GOLDEN_ITERATIONS);
    let (_, angles, residual) = hardy_at(cs, x2);

    let scenario = angles.scenario();
    let q = q_vector(&s.state(), &scenario)?;
    let zeros_ok = q.q1() < tol && q.q2() < tol && q.q3() < tol;
    if residual > tol || !zeros_ok || q.q4() <= tol {
        return Err(Error::NoSolution {
            residual: residual.max(q.q1()).max(q.q2()).max(q.q3()),
        });
    }
    Ok(HardyConstruction {
        theta: s.theta,
        angles,
        scenario,
        q,
        residual,
    })
}

/// q4 of the Hardy construction at Schmidt angle `theta`, zero where no
/// construction exists.
pub fn hardy_probability(theta: f64, tol: f64) -> f64 {
    SchmidtState::new(theta)
        .and_then(|s| hardy_observables(&s, tol))
        .map_or(0.0, |h| h.q.q4())
}

/// Sweeps θ over the open interval (0, π/4) at `resolution` interior points,
/// then refines around the best grid point. Returns (θ*, q4*).
pub fn max_hardy_probability(resolution: usize) -> Result<(f64, f64)> {
    if resolution < 100 {
        return Err(Error::InvalidParameter(format!(
            "resolution must be at least 100, got {resolution}"
        )));
    }
    let tol = crate::witness::DEFAULT_TOL;
    let h = FRAC_PI_4 / (resolution + 1) as f64;
    let values: Vec<(f64, f64)> = (1..=resolution)
        .into_par_iter()
        .map(|k| {
            let theta = k as f64 * h;
            (theta, hardy_probability(theta, tol))
        })
        .collect();
    let (theta0, _) = values
        .iter()
        .copied()
        .fold((0.0, f64::NEG_INFINITY), |acc, v| if v.1 > acc.1 { v } else { acc });
    Ok(golden_max(|t| hardy_probability(t, tol), theta0 - h, theta0 + h, GOLDEN_ITERATIONS))
}
