//! Shared generators and the independent Hardy oracle for integration tests.
#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use nonlocality::qcore::{ComplexMatrix, Observable, Outcome, QuantumState};
use nonlocality::witness::Scenario;

pub mod hardy_oracle;

fn gaussian<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(StandardNormal.sample(rng), StandardNormal.sample(rng))
}

pub fn random_pure<R: Rng>(rng: &mut R, dims: (usize, usize)) -> QuantumState {
    let n = dims.0 * dims.1;
    let v: Vec<Complex64> = (0..n).map(|_| gaussian(rng)).collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    QuantumState::pure(dims, v.into_iter().map(|z| z / norm).collect()).unwrap()
}

/// G G† / Tr(G G†) for a Gaussian G of random rank.
pub fn random_mixed<R: Rng>(rng: &mut R, dims: (usize, usize)) -> QuantumState {
    let n = dims.0 * dims.1;
    let rank = rng.gen_range(1..=n);
    let g = ComplexMatrix::new(n, rank, (0..n * rank).map(|_| gaussian(rng)).collect()).unwrap();
    let rho = &g * &g.adjoint();
    let tr = rho.trace().re;
    let mut rho = rho.scale(Complex64::new(1.0 / tr, 0.0));
    // Symmetrize away rounding so the Hermiticity check sees an exact adjoint.
    rho = rho.hermitian_part();
    QuantumState::density(dims, rho).unwrap()
}

pub fn random_state<R: Rng>(rng: &mut R, dims: (usize, usize)) -> QuantumState {
    if rng.gen_bool(0.5) {
        random_pure(rng, dims)
    } else {
        random_mixed(rng, dims)
    }
}

/// Columns of a Haar-ish random unitary (QR of a Gaussian matrix).
pub fn random_basis<R: Rng>(rng: &mut R, d: usize) -> Vec<Vec<Complex64>> {
    let m = DMatrix::from_fn(d, d, |_, _| gaussian(rng));
    let q = m.qr().q();
    (0..d).map(|j| (0..d).map(|i| q[(i, j)]).collect()).collect()
}

/// Random PVM on dimension `d` with the given labels; each label gets at
/// least one basis vector.
pub fn random_observable<R: Rng>(rng: &mut R, d: usize, labels: &[f64]) -> Observable {
    assert!(labels.len() <= d);
    let basis = random_basis(rng, d);
    let mut owner: Vec<usize> = (0..d).map(|k| if k < labels.len() { k } else { rng.gen_range(0..labels.len()) }).collect();
    owner.shuffle(rng);
    let outcomes = labels
        .iter()
        .enumerate()
        .map(|(li, &label)| {
            let mut p = ComplexMatrix::zeros(d, d);
            for (k, v) in basis.iter().enumerate() {
                if owner[k] == li {
                    p = &p + &ComplexMatrix::outer(v);
                }
            }
            Outcome { label, projector: p }
        })
        .collect();
    Observable::new(d, outcomes).unwrap()
}

fn random_y_labels<R: Rng>(rng: &mut R, d: usize) -> Vec<f64> {
    let k = rng.gen_range(1..=d.min(3));
    let mut labels = vec![1.0, 2.5, -3.0];
    labels.truncate(k);
    labels
}

pub fn random_scenario<R: Rng>(rng: &mut R, dims: (usize, usize), trichotomic: bool) -> Scenario {
    let x_labels: &[f64] = if trichotomic { &[-1.0, 0.0, 1.0] } else { &[-1.0, 1.0] };
    let y1 = random_y_labels(rng, dims.0);
    let y2 = random_y_labels(rng, dims.1);
    Scenario::new(
        random_observable(rng, dims.0, x_labels),
        random_observable(rng, dims.0, &y1),
        random_observable(rng, dims.1, x_labels),
        random_observable(rng, dims.1, &y2),
    )
    .unwrap()
}

/// A random state/scenario pair: 2×2, 2×3, 3×2 or 3×3, trichotomic only
/// when both sides allow it.
pub fn random_case<R: Rng>(rng: &mut R) -> (QuantumState, Scenario) {
    let dims = *[(2, 2), (2, 3), (3, 2), (3, 3)].choose(rng).unwrap();
    let trichotomic = dims == (3, 3) && rng.gen_bool(0.7);
    (random_state(rng, dims), random_scenario(rng, dims, trichotomic))
}
