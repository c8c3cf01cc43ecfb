//! Complex linear algebra, bipartite states, projective observables and
//! Born-rule probabilities.

mod json;
mod matrix;
mod observable;
mod state;

pub use json::{ObservableRepr, StateRepr};
pub use matrix::{tensor, ComplexMatrix};
pub use observable::{spin_observable, BlochDirection, Observable, Outcome, LABEL_TOL, PROJECTOR_TOL};
pub use state::{QuantumState, StateKind, NORM_TOL, POSITIVITY_TOL};

use crate::error::{Error, Result};

/// Probabilities this far outside [0, 1] are clamped silently.
pub const CLAMP_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    First,
    Second,
}

fn clamp_probability(p: f64) -> f64 {
    debug_assert!(
        (-CLAMP_TOL..=1.0 + CLAMP_TOL).contains(&p),
        "probability {p} outside tolerance"
    );
    p.clamp(0.0, 1.0)
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// Tr[σ (P_a ⊗ P_b)] for outcome `label1` of `obs1` on the first subsystem
/// and `label2` of `obs2` on the second.
pub fn joint_probability(
    state: &QuantumState,
    obs1: &Observable,
    label1: f64,
    obs2: &Observable,
    label2: f64,
) -> Result<f64> {
    let (d1, d2) = state.dims();
    check_dim(d1, obs1.dim())?;
    check_dim(d2, obs2.dim())?;
    let p1 = obs1.projector(label1)?;
    let p2 = obs2.projector(label2)?;
    let rho = state.density_matrix();
    // Tr[ρ (P1 ⊗ P2)] = Σ ρ[(a,b),(c,d)] · P1[c,a] · P2[d,b]
    let mut acc = num_complex::Complex64::new(0.0, 0.0);
    for a in 0..d1 {
        for c in 0..d1 {
            let p1ca = p1.get(c, a);
            if p1ca.norm_sqr() == 0.0 {
                continue;
            }
            for b in 0..d2 {
                for d in 0..d2 {
                    acc += rho.get(a * d2 + b, c * d2 + d) * p1ca * p2.get(d, b);
                }
            }
        }
    }
    Ok(clamp_probability(acc.re))
}

/// Tr[σ (P ⊗ I)] or Tr[σ (I ⊗ P)] depending on `side`.
pub fn marginal_probability(
    state: &QuantumState,
    side: Side,
    obs: &Observable,
    label: f64,
) -> Result<f64> {
    let (d1, d2) = state.dims();
    let p = obs.projector(label)?;
    let rho = state.density_matrix();
    let mut acc = num_complex::Complex64::new(0.0, 0.0);
    match side {
        Side::First => {
            check_dim(d1, obs.dim())?;
            for a in 0..d1 {
                for c in 0..d1 {
                    for b in 0..d2 {
                        acc += rho.get(a * d2 + b, c * d2 + b) * p.get(c, a);
                    }
                }
            }
        }
        Side::Second => {
            check_dim(d2, obs.dim())?;
            for a in 0..d1 {
                for b in 0..d2 {
                    for d in 0..d2 {
                        acc += rho.get(a * d2 + b, a * d2 + d) * p.get(d, b);
                    }
                }
            }
        }
    }
    Ok(clamp_probability(acc.re))
}
