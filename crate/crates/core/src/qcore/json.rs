//! JSON representations of states and observables.
//!
//! Complex numbers are `[re, im]` pairs and matrices are flattened row-major.
//! Qubit observables may use the shorthand `{"bloch":{"theta":t,"phi":p}}`;
//! they always serialize in the explicit projector form.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::matrix::ComplexMatrix;
use super::observable::{spin_observable, BlochDirection, Observable, Outcome};
use super::state::{QuantumState, StateKind};
use crate::error::{Error, Result};

type Pair = [f64; 2];

fn to_complex(data: &[Pair]) -> Vec<Complex64> {
    data.iter().map(|&[re, im]| Complex64::new(re, im)).collect()
}

fn to_pairs(data: &[Complex64]) -> Vec<Pair> {
    data.iter().map(|z| [z.re, z.im]).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StateKindTag {
    Pure,
    Density,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateRepr {
    pub dims: [usize; 2],
    pub kind: StateKindTag,
    pub data: Vec<Pair>,
}

impl TryFrom<StateRepr> for QuantumState {
    type Error = Error;

    fn try_from(r: StateRepr) -> Result<Self> {
        let dims = (r.dims[0], r.dims[1]);
        let data = to_complex(&r.data);
        match r.kind {
            StateKindTag::Pure => QuantumState::pure(dims, data),
            StateKindTag::Density => {
                let n = dims
                    .0
                    .checked_mul(dims.1)
                    .ok_or_else(|| Error::InvalidState("dimension too large".into()))?;
                if dims.0 < 2 || dims.1 < 2 || n > 4096 {
                    return Err(Error::InvalidState(format!(
                        "unsupported dimensions ({}, {})",
                        dims.0, dims.1
                    )));
                }
                if data.len() != n * n {
                    return Err(Error::DimensionMismatch {
                        expected: n * n,
                        found: data.len(),
                    });
                }
                QuantumState::density(dims, ComplexMatrix::new(n, n, data)?)
            }
        }
    }
}

impl From<&QuantumState> for StateRepr {
    fn from(s: &QuantumState) -> Self {
        let (d1, d2) = s.dims();
        let (kind, data) = match s.kind() {
            StateKind::Pure(amps) => (StateKindTag::Pure, to_pairs(amps)),
            StateKind::Density(rho) => (StateKindTag::Density, to_pairs(rho.data())),
        };
        StateRepr {
            dims: [d1, d2],
            kind,
            data,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutcomeRepr {
    pub label: f64,
    pub projector: Vec<Pair>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlochRepr {
    pub theta: f64,
    pub phi: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ObservableRepr {
    Explicit { dim: usize, outcomes: Vec<OutcomeRepr> },
    Bloch { bloch: BlochRepr },
}

impl TryFrom<ObservableRepr> for Observable {
    type Error = Error;

    fn try_from(r: ObservableRepr) -> Result<Self> {
        match r {
            ObservableRepr::Bloch { bloch } => {
                Ok(spin_observable(BlochDirection::new(bloch.theta, bloch.phi)?))
            }
            ObservableRepr::Explicit { dim, outcomes } => {
                if dim == 0 || dim > 64 {
                    return Err(Error::InvalidObservable(format!("unsupported dimension {dim}")));
                }
                let outcomes = outcomes
                    .into_iter()
                    .map(|o| {
                        Ok(Outcome {
                            label: o.label,
                            projector: ComplexMatrix::new(dim, dim, to_complex(&o.projector))?,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Observable::new(dim, outcomes)
            }
        }
    }
}

impl From<&Observable> for ObservableRepr {
    fn from(o: &Observable) -> Self {
        ObservableRepr::Explicit {
            dim: o.dim(),
            outcomes: o
                .outcomes()
                .iter()
                .map(|out| OutcomeRepr {
                    label: out.label,
                    projector: to_pairs(out.projector.data()),
                })
                .collect(),
        }
    }
}

impl Serialize for QuantumState {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        StateRepr::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuantumState {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = StateRepr::deserialize(d)?;
        QuantumState::try_from(repr).map_err(serde::de::Error::custom)
    }
}

impl Serialize for Observable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ObservableRepr::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Observable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = ObservableRepr::deserialize(d)?;
        Observable::try_from(repr).map_err(serde::de::Error::custom)
    }
}

impl QuantumState {
    /// Parses and validates a state. Syntax problems yield [`Error::Json`];
    /// well-formed but invalid states yield the validation error.
    pub fn from_json(text: &str) -> Result<Self> {
        let repr: StateRepr = serde_json::from_str(text)?;
        QuantumState::try_from(repr)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&StateRepr::from(self)).expect("state serializes")
    }
}

impl Observable {
    pub fn from_json(text: &str) -> Result<Self> {
        let repr: ObservableRepr = serde_json::from_str(text)?;
        Observable::try_from(repr)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&ObservableRepr::from(self)).expect("observable serializes")
    }
}
