//! Local deterministic hidden-variable models.
//!
//! A model is a probability distribution over hidden states; with finitely
//! many settings every hidden state acts as one [`DeterministicStrategy`],
//! so realizability of a q-vector is a linear feasibility problem over the
//! strategy weights.

mod measure;
mod simplex;
mod strategy;

use std::io::{self, Write};

use serde::Serialize;

pub use measure::{proof_step_inequalities, set_expression, FiniteMeasure, WEIGHT_TOL};
pub use simplex::{phase_one, PhaseOne};
pub use strategy::{enumerate_strategies, vertex_expression_value, DeterministicStrategy, YEvent};

use crate::error::Result;
use crate::witness::QVector;

/// Residual threshold for the LP and for witness verification.
pub const FEASIBILITY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FeasibilityResult {
    pub feasible: bool,
    /// Weights over [`enumerate_strategies`] order, present iff feasible.
    pub witness: Option<Vec<f64>>,
    /// Final phase-one objective (sum of artificial variables).
    pub residual: f64,
}

/// The q-vector induced by mixing `strategies` with `weights`.
pub fn induced_q(strategies: &[DeterministicStrategy], weights: &[f64], trichotomic: bool) -> Vec<f64> {
    let len = if trichotomic { 6 } else { 4 };
    let mut q = vec![0.0; len];
    for (s, &w) in strategies.iter().zip(weights) {
        for (qi, ind) in q.iter_mut().zip(s.indicators()) {
            *qi += w * f64::from(ind);
        }
    }
    q
}

/// Largest deviation of a candidate witness from normalization and from `q`.
pub fn witness_error(q: &QVector, weights: &[f64]) -> f64 {
    let strategies = enumerate_strategies(q.is_trichotomic());
    if weights.len() != strategies.len() {
        return f64::INFINITY;
    }
    let neg = weights.iter().fold(0.0f64, |m, &w| m.max(-w));
    let norm = (weights.iter().sum::<f64>() - 1.0).abs();
    let fit = induced_q(&strategies, weights, q.is_trichotomic())
        .iter()
        .zip(q.components())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    neg.max(norm).max(fit)
}

/// Decides whether some mixture of deterministic strategies reproduces `q`.
///
/// Components are validated by [`QVector`] construction, so this cannot fail
/// on a constructed vector; the `Result` mirrors the CLI path that parses raw
/// input.
pub fn lhv_feasible(q: &QVector) -> Result<FeasibilityResult> {
    let tri = q.is_trichotomic();
    let strategies = enumerate_strategies(tri);
    let target = q.components();
    // One row per q component, plus normalization.
    let mut rows: Vec<Vec<f64>> = (0..target.len())
        .map(|k| strategies.iter().map(|s| f64::from(s.indicators()[k])).collect())
        .collect();
    rows.push(vec![1.0; strategies.len()]);
    let mut rhs = target;
    rhs.push(1.0);

    let sol = phase_one(&rows, &rhs);
    let feasible = sol.infeasibility <= FEASIBILITY_TOL && witness_error(q, &sol.x) <= FEASIBILITY_TOL;
    Ok(FeasibilityResult {
        feasible,
        witness: feasible.then_some(sol.x),
        residual: sol.infeasibility,
    })
}

/// Writes the vertex table as CSV: strategy columns, indicator q-values and
/// the expression value.
pub fn write_vertex_csv<W: Write + ?Sized>(out: &mut W, trichotomic: bool) -> io::Result<()> {
    let y = |e: YEvent| if e == YEvent::Plus { "+1" } else { "other" };
    if trichotomic {
        writeln!(out, "x1,x2,y1,y2,q1,q2,q3,q4,q5,q6,value")?;
    } else {
        writeln!(out, "x1,x2,y1,y2,q1,q2,q3,q4,value")?;
    }
    for s in enumerate_strategies(trichotomic) {
        let ind = s.indicators();
        let shown = if trichotomic { &ind[..] } else { &ind[..4] };
        let q: Vec<String> = shown.iter().map(i32::to_string).collect();
        writeln!(
            out,
            "{},{},{},{},{},{}",
            s.x1,
            s.x2,
            y(s.y1),
            y(s.y2),
            q.join(","),
            s.expression_value()
        )?;
    }
    Ok(())
}
