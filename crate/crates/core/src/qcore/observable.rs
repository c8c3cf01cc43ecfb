//! Projective measurements with labeled real outcomes.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// Tolerance for idempotence, Hermiticity, orthogonality and completeness.
pub const PROJECTOR_TOL: f64 = 1e-10;
/// Two labels closer than this are considered the same outcome.
pub const LABEL_TOL: f64 = 1e-12;

/// A direction on the Bloch sphere: polar angle θ ∈ [0, π], azimuth φ ∈ [0, 2π).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochDirection {
    theta: f64,
    phi: f64,
}

impl BlochDirection {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) || !(0.0..TAU).contains(&phi) {
            return Err(Error::InvalidParameter(format!(
                "Bloch angles out of range: theta={theta}, phi={phi}"
            )));
        }
        Ok(Self { theta, phi })
    }

    /// Maps arbitrary real angles onto the canonical range, keeping the
    /// same unit vector.
    pub fn wrapped(theta: f64, phi: f64) -> Self {
        let [x, y, z] = Self { theta, phi }.unit_vector();
        let theta = z.clamp(-1.0, 1.0).acos();
        let phi = if x.hypot(y) < 1e-300 {
            0.0
        } else {
            let p = y.atan2(x);
            if p < 0.0 {
                (p + TAU) % TAU
            } else {
                p
            }
        };
        Self { theta, phi }
    }

    /// Direction at `angle` from +z, measured in the x–z plane towards +x.
    pub fn planar(angle: f64) -> Self {
        Self::wrapped(angle, 0.0)
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn unit_vector(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub label: f64,
    pub projector: ComplexMatrix,
}

/// A projective measurement on one subsystem of dimension `dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct Observable {
    dim: usize,
    outcomes: Vec<Outcome>,
}

impl Observable {
    pub fn new(dim: usize, outcomes: Vec<Outcome>) -> Result<Self> {
        if dim < 1 {
            return Err(Error::InvalidObservable("dimension must be positive".into()));
        }
        if outcomes.is_empty() {
            return Err(Error::InvalidObservable("no outcomes".into()));
        }
        let mut sum = ComplexMatrix::zeros(dim, dim);
        for (k, o) in outcomes.iter().enumerate() {
            if !o.label.is_finite() {
                return Err(Error::InvalidObservable("non-finite label".into()));
            }
            let p = &o.projector;
            if p.rows() != dim || p.cols() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: if p.rows() != dim { p.rows() } else { p.cols() },
                });
            }
            if !p.is_hermitian(PROJECTOR_TOL) {
                return Err(Error::InvalidObservable(format!(
                    "projector for label {} is not Hermitian",
                    o.label
                )));
            }
            if (p * p).max_abs_diff(p) > PROJECTOR_TOL {
                return Err(Error::InvalidObservable(format!(
                    "projector for label {} is not idempotent",
                    o.label
                )));
            }
            for other in &outcomes[..k] {
                if (other.label - o.label).abs() <= LABEL_TOL {
                    return Err(Error::InvalidObservable(format!(
                        "duplicate label {}",
                        o.label
                    )));
                }
                let zero = ComplexMatrix::zeros(dim, dim);
                if (&other.projector * p).max_abs_diff(&zero) > PROJECTOR_TOL {
                    return Err(Error::InvalidObservable(format!(
                        "projectors for labels {} and {} are not orthogonal",
                        other.label, o.label
                    )));
                }
            }
            sum = &sum + p;
        }
        if sum.max_abs_diff(&ComplexMatrix::identity(dim)) > PROJECTOR_TOL {
            return Err(Error::InvalidObservable("projectors do not sum to the identity".into()));
        }
        Ok(Self { dim, outcomes })
    }

    /// Measurement in the standard basis, outcome `labels[k]` for |k⟩.
    pub fn computational(labels: &[f64]) -> Result<Self> {
        let dim = labels.len();
        let outcomes = labels
            .iter()
            .enumerate()
            .map(|(k, &label)| {
                let mut diag = vec![0.0; dim];
                diag[k] = 1.0;
                Outcome {
                    label,
                    projector: ComplexMatrix::from_real_diagonal(&diag),
                }
            })
            .collect();
        Self::new(dim, outcomes)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn outcomes(&self) -> &[Outcome] {
        &self.outcomes
    }

    pub fn labels(&self) -> impl Iterator<Item = f64> + '_ {
        self.outcomes.iter().map(|o| o.label)
    }

    pub fn has_label(&self, label: f64) -> bool {
        self.projector(label).is_ok()
    }

    pub fn projector(&self, label: f64) -> Result<&ComplexMatrix> {
        self.outcomes
            .iter()
            .find(|o| (o.label - label).abs() <= LABEL_TOL)
            .map(|o| &o.projector)
            .ok_or(Error::UnknownLabel(label))
    }

    /// True when the label set is exactly `expected` (in any order).
    pub fn has_exact_labels(&self, expected: &[f64]) -> bool {
        self.outcomes.len() == expected.len() && expected.iter().all(|&l| self.has_label(l))
    }
}

/// Spin-1/2 observable along `dir`: projectors (I ± n·σ)/2 for outcomes ±1.
pub fn spin_observable(dir: BlochDirection) -> Observable {
    let [x, y, z] = dir.unit_vector();
    let proj = |s: f64| {
        ComplexMatrix::new(
            2,
            2,
            vec![
                Complex64::new((1.0 + s * z) / 2.0, 0.0),
                Complex64::new(s * x / 2.0, -s * y / 2.0),
                Complex64::new(s * x / 2.0, s * y / 2.0),
                Complex64::new((1.0 - s * z) / 2.0, 0.0),
            ],
        )
        .expect("2x2")
    };
    Observable {
        dim: 2,
        outcomes: vec![
            Outcome {
                label: 1.0,
                projector: proj(1.0),
            },
            Outcome {
                label: -1.0,
                projector: proj(-1.0),
            },
        ],
    }
}
