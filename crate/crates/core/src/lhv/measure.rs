//! Finite probability measures with four designated subsets, used to check
//! the set-measure bound mechanically.

use crate::error::{Error, Result};

/// Normalization tolerance for the weights.
pub const WEIGHT_TOL: f64 = 1e-12;
/// Slack allowed when comparing sums of weights.
const SUM_SLACK: f64 = 1e-12;

/// Λ = {0, …, n−1} with weights μ({i}) and subsets A, B, C, D given by
/// membership flags.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteMeasure {
    weights: Vec<f64>,
    a: Vec<bool>,
    b: Vec<bool>,
    c: Vec<bool>,
    d: Vec<bool>,
}

impl FiniteMeasure {
    pub fn new(weights: Vec<f64>, a: Vec<bool>, b: Vec<bool>, c: Vec<bool>, d: Vec<bool>) -> Result<Self> {
        let n = weights.len();
        if n == 0 {
            return Err(Error::MalformedMeasure("no atoms".into()));
        }
        if [&a, &b, &c, &d].iter().any(|s| s.len() != n) {
            return Err(Error::MalformedMeasure(format!(
                "subset membership vectors must have length {n}"
            )));
        }
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::MalformedMeasure("weights must be finite and nonnegative".into()));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > WEIGHT_TOL {
            return Err(Error::MalformedMeasure(format!("weights sum to {total}, expected 1")));
        }
        Ok(Self { weights, a, b, c, d })
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// μ of the set of atoms satisfying `pred(in_a, in_b, in_c, in_d)`.
    pub fn measure(&self, pred: impl Fn(bool, bool, bool, bool) -> bool) -> f64 {
        (0..self.len())
            .filter(|&i| pred(self.a[i], self.b[i], self.c[i], self.d[i]))
            .map(|i| self.weights[i])
            .sum()
    }

    /// μ[A∩B] + μ[C] − μ[B∩C] + μ[D] − μ[A∩D] − μ[C∩D]; lies in [0, 1]
    /// for every measure.
    pub fn set_expression(&self) -> f64 {
        self.measure(|a, b, _, _| a && b) + self.measure(|_, _, c, _| c) - self.measure(|_, b, c, _| b && c)
            + self.measure(|_, _, _, d| d)
            - self.measure(|a, _, _, d| a && d)
            - self.measure(|_, _, c, d| c && d)
    }

    /// The two intermediate inequalities of the bound's proof:
    ///
    /// * lower: μ[A∩D] + μ[B∩C] ≤ μ[C∪D] + μ[A∩B∩C∩D]
    /// * upper: μ[C∪D] ≤ μ[Ā∪B̄] + μ[A∩D] + μ[B∩C]
    ///
    /// Complements are taken within Λ. Both always hold; a `false` means a
    /// bug.
    pub fn proof_step_inequalities(&self) -> (bool, bool) {
        let a_and_d = self.measure(|a, _, _, d| a && d);
        let b_and_c = self.measure(|_, b, c, _| b && c);
        let c_or_d = self.measure(|_, _, c, d| c || d);
        let all_four = self.measure(|a, b, c, d| a && b && c && d);
        let not_a_or_not_b = self.measure(|a, b, _, _| !a || !b);
        let lower = a_and_d + b_and_c <= c_or_d + all_four + SUM_SLACK;
        let upper = c_or_d <= not_a_or_not_b + a_and_d + b_and_c + SUM_SLACK;
        (lower, upper)
    }
}

/// Free-function form of [`FiniteMeasure::set_expression`].
pub fn set_expression(m: &FiniteMeasure) -> f64 {
    m.set_expression()
}

/// Free-function form of [`FiniteMeasure::proof_step_inequalities`].
pub fn proof_step_inequalities(m: &FiniteMeasure) -> (bool, bool) {
    m.proof_step_inequalities()
}
