//! Hardy constructions, violation search over measurement settings, and
//! sweeps over state families.

mod hardy;
mod nelder_mead;
mod sweep;

use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use hardy::{
    hardy_observables, hardy_probability, max_hardy_probability, HardyConstruction, PlanarAngles, SchmidtState,
    ENTANGLEMENT_EPS,
};
pub use nelder_mead::{Minimum, NelderMead};
pub use sweep::{sweep_schmidt, sweep_werner, werner_expression, werner_sweep, write_sweep_csv, SweepOutput, SweepRow};

use crate::error::{Error, Result};
use crate::qcore::{spin_observable, BlochDirection, QuantumState};
use crate::witness::{generalized_expression, q_vector, Scenario};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Objective {
    MaximizeUpper,
    MinimizeLower,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchConfig {
    pub restarts: usize,
    pub max_iterations: usize,
    /// Nelder–Mead stops when the simplex value spread is below this.
    pub tolerance: f64,
    pub seed: u64,
    /// Search θ and φ of every setting instead of planar angles only.
    pub full_bloch: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            restarts: 20,
            max_iterations: 5000,
            tolerance: 1e-12,
            seed: 0x4a5d_7c11,
            full_bloch: false,
        }
    }
}

/// Directions of the four spin settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SettingDirections {
    pub x1: BlochDirection,
    pub y1: BlochDirection,
    pub x2: BlochDirection,
    pub y2: BlochDirection,
}

impl SettingDirections {
    fn from_params(params: &[f64]) -> Self {
        let dir = |k: usize| {
            if params.len() == 4 {
                BlochDirection::planar(params[k])
            } else {
                BlochDirection::wrapped(params[2 * k], params[2 * k + 1])
            }
        };
        Self {
            x1: dir(0),
            y1: dir(1),
            x2: dir(2),
            y2: dir(3),
        }
    }

    pub fn scenario(&self) -> Scenario {
        Scenario::new(
            spin_observable(self.x1),
            spin_observable(self.y1),
            spin_observable(self.x2),
            spin_observable(self.y2),
        )
        .expect("spin observables are dichotomic")
    }
}

impl Serialize for BlochDirection {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("BlochDirection", 2)?;
        st.serialize_field("theta", &self.theta())?;
        st.serialize_field("phi", &self.phi())?;
        st.end()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RestartTrace {
    pub restart: usize,
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchResult {
    pub objective: Objective,
    pub settings: SettingDirections,
    /// Generalized expression at `settings`, recomputed from the reported
    /// directions.
    pub value: f64,
    pub best_restart: usize,
    pub trace: Vec<RestartTrace>,
}

impl SearchResult {
    pub fn scenario(&self) -> Scenario {
        self.settings.scenario()
    }
}

fn expression_at(state: &QuantumState, params: &[f64]) -> f64 {
    let sc = SettingDirections::from_params(params).scenario();
    generalized_expression(&q_vector(state, &sc).expect("qubit scenario on a qubit state"))
}

/// Restarted Nelder–Mead over the spin settings, maximizing the generalized
/// expression (`MaximizeUpper`) or minimizing it (`MinimizeLower`).
///
/// Restart `k` draws its starting point from a ChaCha stream keyed by
/// `(seed, k)`, so results do not depend on thread scheduling.
pub fn optimize_violation(state: &QuantumState, objective: Objective, cfg: &SearchConfig) -> Result<SearchResult> {
    if state.dims() != (2, 2) {
        let (d1, d2) = state.dims();
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: if d1 != 2 { d1 } else { d2 },
        });
    }
    if cfg.restarts == 0 || cfg.max_iterations == 0 || !(cfg.tolerance > 0.0) {
        return Err(Error::InvalidParameter(
            "restarts, iterations and tolerance must be positive".into(),
        ));
    }
    let sign = match objective {
        Objective::MaximizeUpper => -1.0,
        Objective::MinimizeLower => 1.0,
    };
    let nm = NelderMead {
        max_iterations: cfg.max_iterations,
        ftol: cfg.tolerance,
        ..NelderMead::default()
    };
    let dim = if cfg.full_bloch { 8 } else { 4 };

    let runs: Vec<(Minimum, f64)> = (0..cfg.restarts)
        .into_par_iter()
        .map(|restart| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(restart as u64);
            let x0: Vec<f64> = (0..dim)
                .map(|j| {
                    if cfg.full_bloch && j % 2 == 0 {
                        rng.gen_range(0.0..PI)
                    } else {
                        rng.gen_range(0.0..TAU)
                    }
                })
                .collect();
            let m = nm.minimize(|p| sign * expression_at(state, p), &x0);
            let settings = SettingDirections::from_params(&m.x);
            let value = generalized_expression(&q_vector(state, &settings.scenario()).expect("qubit scenario"));
            (m, value)
        })
        .collect();

    let trace: Vec<RestartTrace> = runs
        .iter()
        .enumerate()
        .map(|(restart, (m, value))| RestartTrace {
            restart,
            value: *value,
            iterations: m.iterations,
            converged: m.converged,
        })
        .collect();
    // Best by signed value; earlier restart wins ties.
    let best_restart = (0..runs.len())
        .min_by(|&a, &b| (sign * runs[a].1).total_cmp(&(sign * runs[b].1)).then(a.cmp(&b)))
        .expect("at least one restart");
    let (m, value) = &runs[best_restart];
    Ok(SearchResult {
        objective,
        settings: SettingDirections::from_params(&m.x),
        value: *value,
        best_restart,
        trace,
    })
}
