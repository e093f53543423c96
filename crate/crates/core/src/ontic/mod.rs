//! The ontological-models formalism over finite ontic spaces.
//!
//! A model is a triple: an ontic space, one epistemic state (probability
//! distribution over ontic states) per preparation, and response functions
//! giving outcome probabilities per (measurement, ontic state). Everything
//! is finite, so measures become sums and supports need no measure-zero
//! caveats.

pub mod io;

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::quantum::{self, QuantumError, StateFamily};

/// Default tolerance for Born-rule reproduction checks.
pub const DEFAULT_VALIDATION_TOL: f64 = 1e-9;
/// Tolerance on the certainty/impossibility response constraints.
pub const SUPPORT_CONSTRAINT_TOL: f64 = 1e-9;
/// Weights below this are treated as solver noise and clamped to zero, so
/// they cannot create spurious support membership.
pub const WEIGHT_CLAMP: f64 = 1e-15;
/// Negative weights above this magnitude are rejected; smaller ones are
/// basic-solution rounding noise (bounded by the LP residual tolerance)
/// and clamp to zero like sub-[`WEIGHT_CLAMP`] positives.
pub const NEGATIVE_WEIGHT_TOL: f64 = 1e-9;
/// Tolerance on normalization sums (epistemic weights, response functions).
pub const SUM_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OnticError {
    #[error("ontic space is empty")]
    EmptySpace,
    #[error("duplicate ontic state `{0}`")]
    DuplicateOnticState(String),
    #[error("unknown ontic state `{0}`")]
    UnknownOnticState(String),
    #[error("unknown preparation `{0}`")]
    UnknownPreparation(String),
    #[error("unknown measurement `{0}`")]
    UnknownMeasurement(String),
    #[error("duplicate preparation `{0}`")]
    DuplicatePreparation(String),
    #[error("preparation `{preparation}`: negative weight {weight} at `{ontic}`")]
    NegativeWeight {
        preparation: String,
        ontic: String,
        weight: f64,
    },
    #[error("preparation `{preparation}`: weights sum to {sum} (expected 1)")]
    WeightSumOutOfTolerance { preparation: String, sum: f64 },
    #[error("response {measurement}({outcome}|{ontic}) = {value} outside [0, 1]")]
    ResponseOutOfRange {
        measurement: String,
        ontic: String,
        outcome: String,
        value: f64,
    },
    #[error("responses for ({measurement}, {ontic}) sum to {sum} (expected 1)")]
    ResponseSumOutOfTolerance {
        measurement: String,
        ontic: String,
        sum: f64,
    },
    #[error("response table for ({measurement}, {ontic}) does not match the measurement's outcomes")]
    ResponseOutcomeMismatch { measurement: String, ontic: String },
    #[error("missing response table for ({measurement}, {ontic})")]
    MissingResponse { measurement: String, ontic: String },
    #[error("epistemic states live on different ontic spaces")]
    SpaceMismatch,
    #[error("distance {0} outside [0, 1]")]
    DistanceOutOfRange(f64),
    #[error(transparent)]
    Quantum(#[from] QuantumError),
    #[error("model file: {0}")]
    FileFormat(String),
}

/// A finite set of ontic-state labels.
#[derive(Debug, Clone, PartialEq)]
pub struct OnticSpace {
    labels: Vec<String>,
}

impl OnticSpace {
    pub fn new(labels: Vec<String>) -> Result<Self, OnticError> {
        if labels.is_empty() {
            return Err(OnticError::EmptySpace);
        }
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.clone()) {
                return Err(OnticError::DuplicateOnticState(l.clone()));
            }
        }
        Ok(Self { labels })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn contains(&self, label: &str) -> bool {
        self.labels.iter().any(|l| l == label)
    }
}

/// The distribution over ontic states induced by one preparation.
///
/// Weights are total over the space (missing entries are filled with zero)
/// and weights below [`WEIGHT_CLAMP`] are clamped to zero on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct EpistemicState {
    preparation: String,
    weights: BTreeMap<String, f64>,
}

impl EpistemicState {
    pub fn new(
        preparation: impl Into<String>,
        space: &OnticSpace,
        weights: BTreeMap<String, f64>,
    ) -> Result<Self, OnticError> {
        let preparation = preparation.into();
        for ontic in weights.keys() {
            if !space.contains(ontic) {
                return Err(OnticError::UnknownOnticState(ontic.clone()));
            }
        }
        let mut total = BTreeMap::new();
        for ontic in space.labels() {
            let raw = weights.get(ontic).copied().unwrap_or(0.0);
            if raw < -NEGATIVE_WEIGHT_TOL {
                return Err(OnticError::NegativeWeight {
                    preparation,
                    ontic: ontic.clone(),
                    weight: raw,
                });
            }
            let w = if raw < WEIGHT_CLAMP { 0.0 } else { raw };
            total.insert(ontic.clone(), w);
        }
        let sum: f64 = total.values().sum();
        if (sum - 1.0).abs() > SUM_TOL {
            return Err(OnticError::WeightSumOutOfTolerance { preparation, sum });
        }
        Ok(Self {
            preparation,
            weights: total,
        })
    }

    pub fn preparation(&self) -> &str {
        &self.preparation
    }

    pub fn weight(&self, ontic: &str) -> f64 {
        self.weights.get(ontic).copied().unwrap_or(0.0)
    }

    pub fn weights(&self) -> &BTreeMap<String, f64> {
        &self.weights
    }

    /// The set of ontic states with weight strictly above `cutoff`.
    pub fn support(&self, cutoff: f64) -> BTreeSet<String> {
        self.weights
            .iter()
            .filter(|(_, &w)| w > cutoff)
            .map(|(l, _)| l.clone())
            .collect()
    }
}

/// Total mass the distribution places on a region of the ontic space.
pub fn support_overlap(mu: &EpistemicState, region: &BTreeSet<String>) -> Result<f64, OnticError> {
    let mut total = 0.0;
    for ontic in region {
        match mu.weights.get(ontic) {
            Some(w) => total += w,
            None => return Err(OnticError::UnknownOnticState(ontic.clone())),
        }
    }
    Ok(total)
}

/// `sum_l min(mu_phi(l), mu_psi(l))`: the sharable mass between two
/// distributions, the complement of their total-variation distance.
pub fn min_overlap(mu_phi: &EpistemicState, mu_psi: &EpistemicState) -> Result<f64, OnticError> {
    check_same_space(mu_phi, mu_psi)?;
    Ok(mu_phi
        .weights
        .iter()
        .map(|(l, &w)| w.min(mu_psi.weight(l)))
        .sum())
}

/// Total-variation distance `(1/2) sum_l |mu_phi(l) - mu_psi(l)|`.
pub fn classical_trace_distance(
    mu_phi: &EpistemicState,
    mu_psi: &EpistemicState,
) -> Result<f64, OnticError> {
    check_same_space(mu_phi, mu_psi)?;
    Ok(0.5
        * mu_phi
            .weights
            .iter()
            .map(|(l, &w)| (w - mu_psi.weight(l)).abs())
            .sum::<f64>())
}

fn check_same_space(a: &EpistemicState, b: &EpistemicState) -> Result<(), OnticError> {
    if a.weights.len() != b.weights.len()
        || !a.weights.keys().zip(b.weights.keys()).all(|(x, y)| x == y)
    {
        return Err(OnticError::SpaceMismatch);
    }
    Ok(())
}

/// Optimal probability of guessing which of two equiprobable sources
/// produced a sample, from their trace-norm distance: `(1 + distance)/2`.
pub fn guess_probability(distance: f64) -> Result<f64, OnticError> {
    if !(0.0..=1.0).contains(&distance) {
        return Err(OnticError::DistanceOutOfRange(distance));
    }
    Ok(0.5 * (1.0 + distance))
}

/// Response functions: per measurement, per ontic state, a probability for
/// each outcome, summing to one.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ResponseSchema {
    tables: BTreeMap<String, BTreeMap<String, BTreeMap<String, f64>>>,
}

impl ResponseSchema {
    pub fn new(
        tables: BTreeMap<String, BTreeMap<String, BTreeMap<String, f64>>>,
    ) -> Result<Self, OnticError> {
        for (measurement, per_ontic) in &tables {
            for (ontic, outcomes) in per_ontic {
                let mut sum = 0.0;
                for (outcome, &value) in outcomes {
                    if !(-1e-12..=1.0 + 1e-12).contains(&value) {
                        return Err(OnticError::ResponseOutOfRange {
                            measurement: measurement.clone(),
                            ontic: ontic.clone(),
                            outcome: outcome.clone(),
                            value,
                        });
                    }
                    sum += value;
                }
                if (sum - 1.0).abs() > SUM_TOL {
                    return Err(OnticError::ResponseSumOutOfTolerance {
                        measurement: measurement.clone(),
                        ontic: ontic.clone(),
                        sum,
                    });
                }
            }
        }
        Ok(Self { tables })
    }

    pub fn value(&self, measurement: &str, ontic: &str, outcome: &str) -> Option<f64> {
        self.tables
            .get(measurement)
            .and_then(|t| t.get(ontic))
            .and_then(|t| t.get(outcome))
            .copied()
    }

    pub fn tables(&self) -> &BTreeMap<String, BTreeMap<String, BTreeMap<String, f64>>> {
        &self.tables
    }
}

/// Outcome of a Born-rule reproduction check.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidityReport {
    pub max_deviation: f64,
    /// (preparation, measurement, outcome) achieving the max deviation.
    pub worst: Option<(String, String, String)>,
    pub tolerance: f64,
    pub passes: bool,
}

/// A single certainty/impossibility violation found on a support.
#[derive(Debug, Clone, PartialEq)]
pub struct SupportViolation {
    pub preparation: String,
    pub ontic: String,
    pub measurement: String,
    pub outcome: String,
    pub kind: ViolationKind,
    pub value: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    /// The measurement contains the preparation's ray but the response is
    /// not 1 on a supported ontic state.
    CertaintyNotOne,
    /// The outcome is orthogonal to the preparation but the response is not
    /// 0 on a supported ontic state.
    OrthogonalNotZero,
}

/// A full ontological model for a quantum family: ontic space, epistemic
/// states, response functions, and the quantum side they claim to
/// reproduce.
///
/// Construction validates all cross-references and normalizations, clamps
/// sub-[`WEIGHT_CLAMP`] weights, and drops ontic states carrying zero
/// weight under every preparation.
#[derive(Debug, Clone, PartialEq)]
pub struct OntologicalModel {
    space: OnticSpace,
    preparations: Vec<EpistemicState>,
    responses: ResponseSchema,
    family: StateFamily,
}

impl OntologicalModel {
    pub fn new(
        space: OnticSpace,
        preparations: Vec<EpistemicState>,
        responses: ResponseSchema,
        family: StateFamily,
    ) -> Result<Self, OnticError> {
        // every epistemic state must name a quantum preparation, once
        let mut seen = BTreeSet::new();
        for mu in &preparations {
            if family.preparation(mu.preparation()).is_none() {
                return Err(OnticError::UnknownPreparation(mu.preparation().to_string()));
            }
            if !seen.insert(mu.preparation().to_string()) {
                return Err(OnticError::DuplicatePreparation(
                    mu.preparation().to_string(),
                ));
            }
            for ontic in mu.weights().keys() {
                if !space.contains(ontic) {
                    return Err(OnticError::UnknownOnticState(ontic.clone()));
                }
            }
        }
        // response tables must resolve measurements, cover the whole space,
        // and match each measurement's outcome set exactly
        for (measurement, per_ontic) in responses.tables() {
            let meas = family
                .measurement(measurement)
                .ok_or_else(|| OnticError::UnknownMeasurement(measurement.clone()))?;
            let expected: BTreeSet<&str> = meas.outcomes().iter().map(|o| o.label()).collect();
            for (ontic, outcomes) in per_ontic {
                if !space.contains(ontic) {
                    return Err(OnticError::UnknownOnticState(ontic.clone()));
                }
                let got: BTreeSet<&str> = outcomes.keys().map(|s| s.as_str()).collect();
                if got != expected {
                    return Err(OnticError::ResponseOutcomeMismatch {
                        measurement: measurement.clone(),
                        ontic: ontic.clone(),
                    });
                }
            }
        }
        for meas in &family.measurements {
            let per_ontic = responses
                .tables()
                .get(meas.label())
                .ok_or_else(|| OnticError::MissingResponse {
                    measurement: meas.label().to_string(),
                    ontic: "*".to_string(),
                })?;
            for ontic in space.labels() {
                if !per_ontic.contains_key(ontic) {
                    return Err(OnticError::MissingResponse {
                        measurement: meas.label().to_string(),
                        ontic: ontic.clone(),
                    });
                }
            }
        }

        // drop ontic states with zero weight under every preparation
        let live: BTreeSet<String> = space
            .labels()
            .iter()
            .filter(|l| preparations.iter().any(|mu| mu.weight(l) > 0.0))
            .cloned()
            .collect();
        if live.is_empty() {
            return Err(OnticError::EmptySpace);
        }
        let (space, preparations, responses) = if live.len() == space.len() {
            (space, preparations, responses)
        } else {
            let labels: Vec<String> = space
                .labels()
                .iter()
                .filter(|l| live.contains(*l))
                .cloned()
                .collect();
            let space = OnticSpace::new(labels)?;
            let preparations = preparations
                .into_iter()
                .map(|mu| {
                    let weights = mu
                        .weights()
                        .iter()
                        .filter(|(l, _)| live.contains(*l))
                        .map(|(l, &w)| (l.clone(), w))
                        .collect();
                    EpistemicState::new(mu.preparation().to_string(), &space, weights)
                })
                .collect::<Result<Vec<_>, _>>()?;
            let tables = responses
                .tables()
                .iter()
                .map(|(m, per_ontic)| {
                    let kept = per_ontic
                        .iter()
                        .filter(|(l, _)| live.contains(*l))
                        .map(|(l, t)| (l.clone(), t.clone()))
                        .collect();
                    (m.clone(), kept)
                })
                .collect();
            (space, preparations, ResponseSchema::new(tables)?)
        };

        Ok(Self {
            space,
            preparations,
            responses,
            family,
        })
    }

    pub fn space(&self) -> &OnticSpace {
        &self.space
    }

    pub fn preparations(&self) -> &[EpistemicState] {
        &self.preparations
    }

    pub fn responses(&self) -> &ResponseSchema {
        &self.responses
    }

    pub fn family(&self) -> &StateFamily {
        &self.family
    }

    pub fn epistemic_state(&self, preparation: &str) -> Result<&EpistemicState, OnticError> {
        self.preparations
            .iter()
            .find(|mu| mu.preparation() == preparation)
            .ok_or_else(|| OnticError::UnknownPreparation(preparation.to_string()))
    }

    /// Model probability `sum_l mu(l) xi_M(Q|l)` for one triple.
    fn model_probability(&self, mu: &EpistemicState, measurement: &str, outcome: &str) -> f64 {
        mu.weights()
            .iter()
            .map(|(l, &w)| w * self.responses.value(measurement, l, outcome).unwrap_or(0.0))
            .sum()
    }

    /// Checks Born-rule reproduction over every (preparation, measurement,
    /// outcome) triple and reports the worst absolute deviation.
    pub fn validate(&self, tol: f64) -> Result<ValidityReport, OnticError> {
        let mut max_deviation = 0.0f64;
        let mut worst = None;
        for mu in &self.preparations {
            let state = self
                .family
                .preparation(mu.preparation())
                .ok_or_else(|| OnticError::UnknownPreparation(mu.preparation().to_string()))?;
            for meas in &self.family.measurements {
                let probs = quantum::born(state, meas)?;
                for (outcome, &target) in meas.outcomes().iter().zip(&probs) {
                    let got = self.model_probability(mu, meas.label(), outcome.label());
                    let dev = (got - target).abs();
                    if dev > max_deviation {
                        max_deviation = dev;
                        worst = Some((
                            mu.preparation().to_string(),
                            meas.label().to_string(),
                            outcome.label().to_string(),
                        ));
                    }
                }
            }
        }
        Ok(ValidityReport {
            max_deviation,
            worst,
            tolerance: tol,
            passes: max_deviation <= tol,
        })
    }

    /// Checks the certainty and impossibility constraints on every support:
    /// on `supp(mu_phi)`, a measurement containing phi's ray must respond 1
    /// to it, and any outcome orthogonal to phi must respond 0.
    pub fn check_support_constraints(&self) -> Result<Vec<SupportViolation>, OnticError> {
        let mut violations = Vec::new();
        for mu in &self.preparations {
            let phi = self
                .family
                .preparation(mu.preparation())
                .ok_or_else(|| OnticError::UnknownPreparation(mu.preparation().to_string()))?;
            for ontic in mu.support(0.0) {
                for meas in &self.family.measurements {
                    for outcome in meas.outcomes() {
                        let q = quantum::overlap(outcome, phi)?;
                        let xi = self
                            .responses
                            .value(meas.label(), &ontic, outcome.label())
                            .unwrap_or(0.0);
                        if q >= 1.0 - quantum::GEOMETRIC_TOL
                            && (xi - 1.0).abs() > SUPPORT_CONSTRAINT_TOL
                        {
                            violations.push(SupportViolation {
                                preparation: mu.preparation().to_string(),
                                ontic: ontic.clone(),
                                measurement: meas.label().to_string(),
                                outcome: outcome.label().to_string(),
                                kind: ViolationKind::CertaintyNotOne,
                                value: xi,
                            });
                        } else if q <= quantum::GEOMETRIC_TOL && xi.abs() > SUPPORT_CONSTRAINT_TOL
                        {
                            violations.push(SupportViolation {
                                preparation: mu.preparation().to_string(),
                                ontic: ontic.clone(),
                                measurement: meas.label().to_string(),
                                outcome: outcome.label().to_string(),
                                kind: ViolationKind::OrthogonalNotZero,
                                value: xi,
                            });
                        }
                    }
                }
            }
        }
        Ok(violations)
    }

    /// Degree of epistemic overlap `omega(phi|psi)`: the mass `mu_psi`
    /// places on `supp(mu_phi)`, divided by the quantum overlap. `None`
    /// when the pair is orthogonal (the ratio is then unconstrained).
    pub fn epistemic_degree(&self, phi: &str, psi: &str) -> Result<Option<f64>, OnticError> {
        let phi_state = self
            .family
            .preparation(phi)
            .ok_or_else(|| OnticError::UnknownPreparation(phi.to_string()))?;
        let psi_state = self
            .family
            .preparation(psi)
            .ok_or_else(|| OnticError::UnknownPreparation(psi.to_string()))?;
        let q = quantum::overlap(phi_state, psi_state)?;
        if q <= quantum::GEOMETRIC_TOL {
            return Ok(None);
        }
        let mu_phi = self.epistemic_state(phi)?;
        let mu_psi = self.epistemic_state(psi)?;
        let mass = support_overlap(mu_psi, &mu_phi.support(0.0))?;
        Ok(Some(mass / q))
    }
}

/// The maximally psi-ontic model: one dedicated ontic state per
/// preparation, responses set to the Born probabilities. Useful as a
/// baseline and in tests; it reproduces the family exactly with all
/// supports disjoint.
pub fn psi_ontic_model(family: &StateFamily) -> Result<OntologicalModel, OnticError> {
    let labels: Vec<String> = family
        .preparations
        .iter()
        .map(|s| format!("l_{}", s.label()))
        .collect();
    let space = OnticSpace::new(labels.clone())?;
    let mut preparations = Vec::new();
    for state in &family.preparations {
        let mut weights = BTreeMap::new();
        weights.insert(format!("l_{}", state.label()), 1.0);
        preparations.push(EpistemicState::new(state.label(), &space, weights)?);
    }
    let mut tables = BTreeMap::new();
    for meas in &family.measurements {
        let mut per_ontic = BTreeMap::new();
        for state in &family.preparations {
            let probs = quantum::born(state, meas)?;
            let row: BTreeMap<String, f64> = meas
                .outcomes()
                .iter()
                .zip(&probs)
                .map(|(o, &p)| (o.label().to_string(), p))
                .collect();
            per_ontic.insert(format!("l_{}", state.label()), row);
        }
        tables.insert(meas.label().to_string(), per_ontic);
    }
    OntologicalModel::new(space, preparations, ResponseSchema::new(tables)?, family.clone())
}

fn _assert_send_sync() {
    fn check<T: Send + Sync>() {}
    check::<OntologicalModel>();
    check::<EpistemicState>();
}
