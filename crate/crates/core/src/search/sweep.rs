//! Sweeps over Werner visibility and Schmidt angle.

use std::io::{self, Write};

use crate::error::{Error, Result};
use crate::qcore::QuantumState;
use crate::witness::{ch_expression, generalized_expression, q_vector, QVector, Scenario, XKind};

use super::hardy::{hardy_observables, SchmidtState};

/// Bisection stops once the bracket is narrower than this.
pub const BISECTION_WIDTH: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub parameter: f64,
    pub q: QVector,
    pub generalized: f64,
    pub ch: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SweepOutput {
    pub rows: Vec<SweepRow>,
    /// Parameters at which no row could be produced, with the reason.
    pub skipped: Vec<(f64, Error)>,
}

fn grid(lo: f64, hi: f64, steps: usize) -> Result<Vec<f64>> {
    if !(lo.is_finite() && hi.is_finite()) || lo > hi || steps == 0 {
        return Err(Error::InvalidParameter(format!(
            "need finite lo <= hi and steps >= 1, got lo={lo}, hi={hi}, steps={steps}"
        )));
    }
    Ok((0..=steps)
        .map(|k| if k == steps { hi } else { lo + (hi - lo) * k as f64 / steps as f64 })
        .collect())
}

fn row(parameter: f64, state: &QuantumState, sc: &Scenario) -> Result<SweepRow> {
    let q = q_vector(state, sc)?;
    Ok(SweepRow {
        parameter,
        generalized: generalized_expression(&q),
        ch: ch_expression(state, sc)?,
        q,
    })
}

/// Generalized expression of `sc` on the Werner state of visibility `v`.
pub fn werner_expression(sc: &Scenario, v: f64) -> Result<f64> {
    Ok(generalized_expression(&q_vector(&QuantumState::werner(v)?, sc)?))
}

/// Rows for `steps + 1` evenly spaced visibilities in [lo, hi].
pub fn sweep_werner(sc: &Scenario, lo: f64, hi: f64, steps: usize) -> Result<SweepOutput> {
    let mut out = SweepOutput::default();
    for v in grid(lo, hi, steps)? {
        out.rows.push(row(v, &QuantumState::werner(v)?, sc)?);
    }
    Ok(out)
}

/// Rows of the Hardy construction for `steps + 1` Schmidt angles in
/// [lo, hi]. Angles where the construction does not exist are skipped.
pub fn sweep_schmidt(lo: f64, hi: f64, steps: usize, tol: f64) -> Result<SweepOutput> {
    let mut out = SweepOutput::default();
    for theta in grid(lo, hi, steps)? {
        let s = SchmidtState::new(theta)?;
        match hardy_observables(&s, tol) {
            Ok(h) => out.rows.push(row(theta, &s.state(), &h.scenario)?),
            Err(e) => out.skipped.push((theta, e)),
        }
    }
    Ok(out)
}

/// Smallest visibility in [v_lo, v_hi] at which the expression exceeds the
/// upper bound 1, located by bisection.
///
/// The expression is affine in v, so the bracket is valid whenever the
/// value at `v_hi` exceeds 1. If it already exceeds 1 at `v_lo`, `v_lo` is
/// returned.
pub fn werner_sweep(sc: &Scenario, v_lo: f64, v_hi: f64) -> Result<f64> {
    if !(0.0 <= v_lo && v_lo < v_hi && v_hi <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "need 0 <= v_lo < v_hi <= 1, got [{v_lo}, {v_hi}]"
        )));
    }
    if sc.kind() != XKind::Dichotomic || sc.dims() != (2, 2) {
        return Err(Error::InvalidScenario("Werner sweep needs a dichotomic qubit scenario".into()));
    }
    let excess = |v: f64| werner_expression(sc, v).map(|g| g - 1.0);
    if excess(v_hi)? <= 0.0 {
        return Err(Error::NoCrossing);
    }
    if excess(v_lo)? > 0.0 {
        return Ok(v_lo);
    }
    let (mut lo, mut hi) = (v_lo, v_hi);
    while hi - lo > BISECTION_WIDTH {
        let mid = 0.5 * (lo + hi);
        if excess(mid)? > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// CSV with columns `parameter,q1,…,q6,generalized,ch`; q5 and q6 are
/// empty for dichotomic scenarios. Values use full precision.
pub fn write_sweep_csv<W: Write + ?Sized>(out: &mut W, rows: &[SweepRow]) -> io::Result<()> {
    writeln!(out, "parameter,q1,q2,q3,q4,q5,q6,generalized,ch")?;
    for r in rows {
        let opt = |x: Option<f64>| x.map_or(String::new(), |v| v.to_string());
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            r.parameter,
            r.q.q1(),
            r.q.q2(),
            r.q.q3(),
            r.q.q4(),
            opt(r.q.q5()),
            opt(r.q.q6()),
            r.generalized,
            r.ch
        )?;
    }
    Ok(())
}
