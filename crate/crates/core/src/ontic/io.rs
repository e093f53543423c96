//! Self-describing JSON file format for ontological models.
//!
//! One document carries the quantum side (dimension, basis labels,
//! preparation amplitudes as `[re, im]` pairs, measurement outcome vectors)
//! and the ontic side (`ontic_states`, the `mu` tables per preparation, the
//! `xi` tables per measurement and ontic state). Floats use the shortest
//! decimal that parses back to the identical double, so emitted files
//! round-trip byte-for-byte and lose no precision.

use std::collections::BTreeMap;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{EpistemicState, OnticError, OnticSpace, OntologicalModel, ResponseSchema};
use crate::quantum::{ProjectiveMeasurement, PureState, StateFamily};

// Fields are declared in alphabetical order so the emitted JSON is stable
// even under a generic parse-and-reemit (untyped JSON maps sort keys).

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateRecord {
    /// One `[re, im]` pair per basis component.
    pub amplitudes: Vec<[f64; 2]>,
    pub label: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MeasurementRecord {
    pub label: String,
    pub outcomes: Vec<StateRecord>,
}

/// Serialized form of an [`OntologicalModel`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModelFile {
    pub basis: Vec<String>,
    pub dimension: usize,
    pub measurements: Vec<MeasurementRecord>,
    /// preparation -> ontic state -> weight
    pub mu: BTreeMap<String, BTreeMap<String, f64>>,
    pub ontic_states: Vec<String>,
    pub preparations: Vec<StateRecord>,
    /// measurement -> ontic state -> outcome -> response probability
    pub xi: BTreeMap<String, BTreeMap<String, BTreeMap<String, f64>>>,
}

fn state_record(state: &PureState) -> StateRecord {
    StateRecord {
        amplitudes: state.amplitudes().iter().map(|a| [a.re, a.im]).collect(),
        label: state.label().to_string(),
    }
}

fn state_from_record(record: &StateRecord) -> Result<PureState, OnticError> {
    let amplitudes: Vec<Complex64> = record
        .amplitudes
        .iter()
        .map(|&[re, im]| Complex64::new(re, im))
        .collect();
    Ok(PureState::new(record.label.clone(), amplitudes)?)
}

impl ModelFile {
    pub fn from_model(model: &OntologicalModel) -> Self {
        let family = model.family();
        let mu = model
            .preparations()
            .iter()
            .map(|s| (s.preparation().to_string(), s.weights().clone()))
            .collect();
        ModelFile {
            basis: family.basis_labels.clone(),
            dimension: family.dimension,
            measurements: family
                .measurements
                .iter()
                .map(|m| MeasurementRecord {
                    label: m.label().to_string(),
                    outcomes: m.outcomes().iter().map(state_record).collect(),
                })
                .collect(),
            mu,
            ontic_states: model.space().labels().to_vec(),
            preparations: family.preparations.iter().map(state_record).collect(),
            xi: model.responses().tables().clone(),
        }
    }

    pub fn into_model(self) -> Result<OntologicalModel, OnticError> {
        if self.basis.len() != self.dimension {
            return Err(OnticError::FileFormat(format!(
                "basis has {} labels for dimension {}",
                self.basis.len(),
                self.dimension
            )));
        }
        let preparations: Vec<PureState> = self
            .preparations
            .iter()
            .map(state_from_record)
            .collect::<Result<_, _>>()?;
        let measurements: Vec<ProjectiveMeasurement> = self
            .measurements
            .iter()
            .map(|m| {
                let outcomes = m
                    .outcomes
                    .iter()
                    .map(state_from_record)
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(ProjectiveMeasurement::new(m.label.clone(), outcomes)?)
            })
            .collect::<Result<_, OnticError>>()?;
        for s in preparations.iter().map(PureState::dim) {
            if s != self.dimension {
                return Err(OnticError::FileFormat(
                    "preparation dimension disagrees with the header".to_string(),
                ));
            }
        }
        let family = StateFamily {
            dimension: self.dimension,
            basis_labels: self.basis,
            preparations,
            measurements,
        };
        let space = OnticSpace::new(self.ontic_states)?;
        let epistemic = self
            .mu
            .into_iter()
            .map(|(prep, weights)| EpistemicState::new(prep, &space, weights))
            .collect::<Result<Vec<_>, _>>()?;
        let responses = ResponseSchema::new(self.xi)?;
        OntologicalModel::new(space, epistemic, responses, family)
    }
}

impl OntologicalModel {
    /// Serializes to the model file format (pretty JSON, trailing newline).
    pub fn to_file_string(&self) -> String {
        let file = ModelFile::from_model(self);
        let mut text = serde_json::to_string_pretty(&file).expect("model serialization");
        text.push('\n');
        text
    }

    pub fn from_file_str(text: &str) -> Result<Self, OnticError> {
        let file: ModelFile = serde_json::from_str(text)
            .map_err(|e| OnticError::FileFormat(e.to_string()))?;
        file.into_model()
    }

    pub fn write_file(&self, path: impl AsRef<Path>) -> Result<(), OnticError> {
        std::fs::write(path, self.to_file_string())
            .map_err(|e| OnticError::FileFormat(e.to_string()))
    }

    pub fn read_file(path: impl AsRef<Path>) -> Result<Self, OnticError> {
        let text = std::fs::read_to_string(path).map_err(|e| OnticError::FileFormat(e.to_string()))?;
        Self::from_file_str(&text)
    }
}
