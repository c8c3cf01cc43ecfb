//! Bipartite quantum states, pure or mixed.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// Tolerance on normalization (pure norm, density trace) and Hermiticity.
pub const NORM_TOL: f64 = 1e-12;
/// Smallest eigenvalue accepted for a density operator.
pub const POSITIVITY_TOL: f64 = -1e-10;

#[derive(Debug, Clone, PartialEq)]
pub enum StateKind {
    Pure(Vec<Complex64>),
    Density(ComplexMatrix),
}

/// A state on C^d1 ⊗ C^d2.
///
/// Pure states keep their amplitudes for serialization but also carry the
/// rank-one density operator, so every probability goes through one path.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    dims: (usize, usize),
    kind: StateKind,
    density: ComplexMatrix,
}

fn check_dims(dims: (usize, usize)) -> Result<usize> {
    if dims.0 < 2 || dims.1 < 2 {
        return Err(Error::InvalidState(format!(
            "subsystem dimensions must be at least 2, got ({}, {})",
            dims.0, dims.1
        )));
    }
    dims.0
        .checked_mul(dims.1)
        .filter(|&n| n <= 4096)
        .ok_or_else(|| Error::InvalidState("dimension too large".into()))
}

impl QuantumState {
    pub fn pure(dims: (usize, usize), amplitudes: Vec<Complex64>) -> Result<Self> {
        let n = check_dims(dims)?;
        if amplitudes.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: amplitudes.len(),
            });
        }
        if amplitudes.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidState("non-finite amplitude".into()));
        }
        let norm: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidState(format!(
                "squared norm is {norm}, expected 1"
            )));
        }
        let density = ComplexMatrix::outer(&amplitudes);
        Ok(Self {
            dims,
            kind: StateKind::Pure(amplitudes),
            density,
        })
    }

    pub fn density(dims: (usize, usize), rho: ComplexMatrix) -> Result<Self> {
        let n = check_dims(dims)?;
        if rho.rows() != n || rho.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: if rho.rows() != n { rho.rows() } else { rho.cols() },
            });
        }
        if !rho.is_hermitian(NORM_TOL) {
            return Err(Error::InvalidState("density operator is not Hermitian".into()));
        }
        let tr = rho.trace();
        if (tr.re - 1.0).abs() > NORM_TOL || tr.im.abs() > NORM_TOL {
            return Err(Error::InvalidState(format!("trace is {tr}, expected 1")));
        }
        let min_ev = rho.hermitian_eigenvalues()[0];
        if min_ev < POSITIVITY_TOL {
            return Err(Error::InvalidState(format!(
                "density operator has negative eigenvalue {min_ev}"
            )));
        }
        Ok(Self {
            dims,
            kind: StateKind::Density(rho.clone()),
            density: rho,
        })
    }

    /// (|01⟩ − |10⟩)/√2.
    pub fn singlet() -> Self {
        let h = FRAC_1_SQRT_2;
        Self::pure(
            (2, 2),
            vec![
                Complex64::new(0.0, 0.0),
                Complex64::new(h, 0.0),
                Complex64::new(-h, 0.0),
                Complex64::new(0.0, 0.0),
            ],
        )
        .expect("singlet is normalized")
    }

    /// cos θ |00⟩ + sin θ |11⟩.
    pub fn schmidt(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        let z = Complex64::new(0.0, 0.0);
        Self::pure((2, 2), vec![Complex64::new(c, 0.0), z, z, Complex64::new(s, 0.0)])
            .expect("Schmidt state is normalized")
    }

    /// The product basis state |i⟩ ⊗ |j⟩.
    pub fn product_basis(dims: (usize, usize), i: usize, j: usize) -> Result<Self> {
        let n = check_dims(dims)?;
        if i >= dims.0 || j >= dims.1 {
            return Err(Error::InvalidState(format!("basis index ({i}, {j}) out of range")));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); n];
        amps[i * dims.1 + j] = Complex64::new(1.0, 0.0);
        Self::pure(dims, amps)
    }

    pub fn maximally_mixed(dims: (usize, usize)) -> Result<Self> {
        let n = check_dims(dims)?;
        Self::density(dims, ComplexMatrix::from_real_diagonal(&vec![1.0 / n as f64; n]))
    }

    /// v·|singlet⟩⟨singlet| + (1 − v)·I/4.
    pub fn werner(visibility: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&visibility) {
            return Err(Error::InvalidParameter(format!(
                "visibility {visibility} outside [0, 1]"
            )));
        }
        let singlet = Self::singlet();
        let mixed = ComplexMatrix::identity(4).scale(Complex64::new((1.0 - visibility) / 4.0, 0.0));
        let rho = &singlet.density.scale(Complex64::new(visibility, 0.0)) + &mixed;
        Self::density((2, 2), rho)
    }

    pub fn dims(&self) -> (usize, usize) {
        self.dims
    }

    pub fn kind(&self) -> &StateKind {
        &self.kind
    }

    pub fn is_pure(&self) -> bool {
        matches!(self.kind, StateKind::Pure(_))
    }

    /// The density operator σ (rank one for pure states).
    pub fn density_matrix(&self) -> &ComplexMatrix {
        &self.density
    }

    /// The state whose density operator is σ†.
    pub fn adjoint(&self) -> Self {
        let rho = self.density.adjoint();
        Self {
            dims: self.dims,
            kind: StateKind::Density(rho.clone()),
            density: rho,
        }
    }
}
