//! Hardy-type q-vectors, the generalized Hardy expression, the
//! Clauser–Horne expression and the classification of known nonlocality
//! conditions.
//!
//! For settings X1, Y1 on the first subsystem and X2, Y2 on the second the
//! q-vector is
//!
//! ```text
//! q1 = P(X1=+1, X2=+1)    q2 = P(Y1=+1, X2=-1)
//! q3 = P(X1=-1, Y2=+1)    q4 = P(Y1=+1, Y2=+1)
//! q5 = P(Y1=+1, X2=0)     q6 = P(X1=0,  Y2=+1)    (trichotomic X only)
//! ```
//!
//! and any local deterministic model keeps `q1+q2+q3(+q5+q6)-q4` in [0, 1].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qcore::{joint_probability, marginal_probability, Observable, ObservableRepr, QuantumState, Side};

/// Default tolerance for treating a probability as zero.
pub const DEFAULT_TOL: f64 = 1e-9;
/// Components this far outside [0, 1] are clamped; further out is an error.
pub const Q_CLAMP_TOL: f64 = 1e-10;

const DICHOTOMIC: [f64; 2] = [-1.0, 1.0];
const TRICHOTOMIC: [f64; 3] = [-1.0, 0.0, 1.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum XKind {
    Dichotomic,
    Trichotomic,
}

/// Four local settings. The X observables have outcomes exactly {−1, +1}
/// or exactly {−1, 0, +1}; the Y observables only need a +1 outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    x1: Observable,
    y1: Observable,
    x2: Observable,
    y2: Observable,
    kind: XKind,
}

impl Scenario {
    pub fn new(x1: Observable, y1: Observable, x2: Observable, y2: Observable) -> Result<Self> {
        if x1.dim() != y1.dim() || x2.dim() != y2.dim() {
            return Err(Error::InvalidScenario(
                "observables on the same subsystem must share a dimension".into(),
            ));
        }
        for (name, y) in [("y1", &y1), ("y2", &y2)] {
            if !y.has_label(1.0) {
                return Err(Error::InvalidScenario(format!("{name} has no +1 outcome")));
            }
        }
        let kind_of = |x: &Observable| {
            if x.has_exact_labels(&DICHOTOMIC) {
                Some(XKind::Dichotomic)
            } else if x.has_exact_labels(&TRICHOTOMIC) {
                Some(XKind::Trichotomic)
            } else {
                None
            }
        };
        let kind = match (kind_of(&x1), kind_of(&x2)) {
            (Some(a), Some(b)) if a == b => a,
            (Some(_), Some(_)) => {
                return Err(Error::InvalidScenario(
                    "x1 and x2 must both be dichotomic or both trichotomic".into(),
                ))
            }
            _ => {
                return Err(Error::InvalidScenario(
                    "x observables need labels exactly {-1,+1} or {-1,0,+1}".into(),
                ))
            }
        };
        Ok(Self { x1, y1, x2, y2, kind })
    }

    pub fn x1(&self) -> &Observable {
        &self.x1
    }

    pub fn y1(&self) -> &Observable {
        &self.y1
    }

    pub fn x2(&self) -> &Observable {
        &self.x2
    }

    pub fn y2(&self) -> &Observable {
        &self.y2
    }

    pub fn kind(&self) -> XKind {
        self.kind
    }

    pub fn is_trichotomic(&self) -> bool {
        self.kind == XKind::Trichotomic
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.x1.dim(), self.x2.dim())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let repr: ScenarioRepr = serde_json::from_str(text)?;
        Scenario::try_from(repr)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&ScenarioRepr::from(self)).expect("scenario serializes")
    }
}

/// `{"x1":obs,"y1":obs,"x2":obs,"y2":obs}`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioRepr {
    pub x1: ObservableRepr,
    pub y1: ObservableRepr,
    pub x2: ObservableRepr,
    pub y2: ObservableRepr,
}

impl TryFrom<ScenarioRepr> for Scenario {
    type Error = Error;

    fn try_from(r: ScenarioRepr) -> Result<Self> {
        Scenario::new(r.x1.try_into()?, r.y1.try_into()?, r.x2.try_into()?, r.y2.try_into()?)
    }
}

impl From<&Scenario> for ScenarioRepr {
    fn from(s: &Scenario) -> Self {
        ScenarioRepr {
            x1: (&s.x1).into(),
            y1: (&s.y1).into(),
            x2: (&s.x2).into(),
            y2: (&s.y2).into(),
        }
    }
}

impl Serialize for Scenario {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ScenarioRepr::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Scenario {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = ScenarioRepr::deserialize(d)?;
        Scenario::try_from(repr).map_err(serde::de::Error::custom)
    }
}

/// (q1..q4) or (q1..q6), every component in [0, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QVector {
    base: [f64; 4],
    extra: Option<[f64; 2]>,
}

fn clamp_component(i: usize, q: f64) -> Result<f64> {
    if !q.is_finite() || !(-Q_CLAMP_TOL..=1.0 + Q_CLAMP_TOL).contains(&q) {
        return Err(Error::InvalidQVector(format!("q{} = {q} outside [0, 1]", i + 1)));
    }
    Ok(q.clamp(0.0, 1.0))
}

impl QVector {
    pub fn dichotomic(q: [f64; 4]) -> Result<Self> {
        Self::from_slice(&q)
    }

    pub fn trichotomic(q: [f64; 6]) -> Result<Self> {
        Self::from_slice(&q)
    }

    /// Four components for the dichotomic case, six for the trichotomic one.
    pub fn from_slice(q: &[f64]) -> Result<Self> {
        if q.len() != 4 && q.len() != 6 {
            return Err(Error::InvalidQVector(format!(
                "expected 4 or 6 components, got {}",
                q.len()
            )));
        }
        let q = q
            .iter()
            .enumerate()
            .map(|(i, &x)| clamp_component(i, x))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            base: [q[0], q[1], q[2], q[3]],
            extra: (q.len() == 6).then(|| [q[4], q[5]]),
        })
    }

    pub fn is_trichotomic(&self) -> bool {
        self.extra.is_some()
    }

    pub fn q1(&self) -> f64 {
        self.base[0]
    }

    pub fn q2(&self) -> f64 {
        self.base[1]
    }

    pub fn q3(&self) -> f64 {
        self.base[2]
    }

    pub fn q4(&self) -> f64 {
        self.base[3]
    }

    pub fn q5(&self) -> Option<f64> {
        self.extra.map(|e| e[0])
    }

    pub fn q6(&self) -> Option<f64> {
        self.extra.map(|e| e[1])
    }

    /// Components in order q1..q4 (then q5, q6).
    pub fn components(&self) -> Vec<f64> {
        let mut v = self.base.to_vec();
        if let Some(e) = self.extra {
            v.extend_from_slice(&e);
        }
        v
    }
}

/// Comma-separated list of four or six numbers, e.g. `0,0,0,0.05`.
impl FromStr for QVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let q = s
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::InvalidQVector(format!("cannot parse component {part:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        QVector::from_slice(&q)
    }
}

impl Serialize for QVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.components().serialize(s)
    }
}

/// Extracts the q-vector of `sc` on `state`.
pub fn q_vector(state: &QuantumState, sc: &Scenario) -> Result<QVector> {
    check_dims(state, sc)?;
    let jp = |o1: &Observable, l1: f64, o2: &Observable, l2: f64| joint_probability(state, o1, l1, o2, l2);
    let base = [
        jp(&sc.x1, 1.0, &sc.x2, 1.0)?,
        jp(&sc.y1, 1.0, &sc.x2, -1.0)?,
        jp(&sc.x1, -1.0, &sc.y2, 1.0)?,
        jp(&sc.y1, 1.0, &sc.y2, 1.0)?,
    ];
    let extra = match sc.kind {
        XKind::Dichotomic => None,
        XKind::Trichotomic => Some([jp(&sc.y1, 1.0, &sc.x2, 0.0)?, jp(&sc.x1, 0.0, &sc.y2, 1.0)?]),
    };
    Ok(QVector { base, extra })
}

/// q1 + q2 + q3 − q4, plus q5 + q6 in the trichotomic case.
pub fn generalized_expression(q: &QVector) -> f64 {
    let [q1, q2, q3, q4] = q.base;
    let extra = q.extra.map_or(0.0, |[q5, q6]| q5 + q6);
    q1 + q2 + q3 + extra - q4
}

/// P(X1=+1,X2=+1) − P(Y1=+1,X2=+1) − P(X1=+1,Y2=+1) − P(Y1=+1,Y2=+1)
/// + P(Y1=+1) + P(Y2=+1).
pub fn ch_expression(state: &QuantumState, sc: &Scenario) -> Result<f64> {
    check_dims(state, sc)?;
    let jp = |o1: &Observable, l1: f64, o2: &Observable, l2: f64| joint_probability(state, o1, l1, o2, l2);
    Ok(jp(&sc.x1, 1.0, &sc.x2, 1.0)?
        - jp(&sc.y1, 1.0, &sc.x2, 1.0)?
        - jp(&sc.x1, 1.0, &sc.y2, 1.0)?
        - jp(&sc.y1, 1.0, &sc.y2, 1.0)?
        + marginal_probability(state, Side::First, &sc.y1, 1.0)?
        + marginal_probability(state, Side::Second, &sc.y2, 1.0)?)
}

fn check_dims(state: &QuantumState, sc: &Scenario) -> Result<()> {
    let (d1, d2) = state.dims();
    let (s1, s2) = sc.dims();
    if d1 != s1 {
        return Err(Error::DimensionMismatch { expected: d1, found: s1 });
    }
    if d2 != s2 {
        return Err(Error::DimensionMismatch { expected: d2, found: s2 });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    HardyViolation,
    KunkriViolation,
    LowerBoundViolation,
    UpperBoundViolation,
    NoViolation,
}

impl Classification {
    pub fn is_violation(self) -> bool {
        self != Classification::NoViolation
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Classification::HardyViolation => "HardyViolation",
            Classification::KunkriViolation => "KunkriViolation",
            Classification::LowerBoundViolation => "LowerBoundViolation",
            Classification::UpperBoundViolation => "UpperBoundViolation",
            Classification::NoViolation => "NoViolation",
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Hardy takes precedence over Kunkri, which takes precedence over the
/// plain bound labels.
pub fn classify(q: &QVector, gen_value: f64, tol: f64) -> Classification {
    assert!(tol > 0.0, "classification tolerance must be positive");
    let [q1, q2, q3, q4] = q.base;
    let extra_zero = q.extra.map_or(true, |[q5, q6]| q5 < tol && q6 < tol);
    let side_zero = q2 < tol && q3 < tol && extra_zero;
    if side_zero && q1 < tol && q4 > tol {
        Classification::HardyViolation
    } else if side_zero && tol < q1 && q1 < q4 - tol {
        Classification::KunkriViolation
    } else if gen_value < -tol {
        Classification::LowerBoundViolation
    } else if gen_value > 1.0 + tol {
        Classification::UpperBoundViolation
    } else {
        Classification::NoViolation
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessReport {
    #[serde(rename = "q")]
    pub qvec: QVector,
    #[serde(rename = "generalized")]
    pub generalized_value: f64,
    #[serde(rename = "ch")]
    pub ch_value: f64,
    #[serde(rename = "class")]
    pub classification: Classification,
}

/// Full report for `sc` on `state`.
pub fn evaluate(state: &QuantumState, sc: &Scenario, tol: f64) -> Result<WitnessReport> {
    let qvec = q_vector(state, sc)?;
    let generalized_value = generalized_expression(&qvec);
    let ch_value = ch_expression(state, sc)?;
    Ok(WitnessReport {
        qvec,
        generalized_value,
        ch_value,
        classification: classify(&qvec, generalized_value, tol),
    })
}

/// The planar singlet configuration: X1 at 0, Y2 at π/4, Y1 at π/2 and X2
/// at 3π/4 in the x–z plane. Reaches (1 + √2)/2 on the singlet.
pub fn planar_singlet_scenario() -> Scenario {
    use crate::qcore::{spin_observable, BlochDirection};
    use std::f64::consts::FRAC_PI_4;
    let s = |a: f64| spin_observable(BlochDirection::planar(a));
    Scenario::new(s(0.0), s(2.0 * FRAC_PI_4), s(3.0 * FRAC_PI_4), s(FRAC_PI_4)).expect("spin observables are dichotomic")
}
