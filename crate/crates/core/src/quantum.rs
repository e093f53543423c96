//! Complex Hilbert-space primitives and the explicit state/measurement
//! families the overlap bounds are built on.
//!
//! For dimension 3 the family is the Clifton-Stairs construction: an
//! orthonormal basis `a, b, c`, the superpositions `p = (a+b+c)/√3` and
//! `m = (a+b-c)/√3`, and three complete rank-1 measurements. For d > 3
//! the same pattern is instantiated over a basis `a_1 .. a_d`.

use num_complex::Complex64;
use thiserror::Error;

/// Absolute tolerance for geometric predicates (normalization,
/// orthogonality, ray equality). All family amplitudes are small rationals
/// over square roots, so distinct values are separated by far more.
pub const GEOMETRIC_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuantumError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("dimension {dim} is below the minimum {min}")]
    DimensionTooSmall { dim: usize, min: usize },
    #[error("state `{label}` has squared norm {norm_sq} (expected 1)")]
    NotNormalized { label: String, norm_sq: f64 },
    #[error("measurement `{label}`: outcomes `{first}` and `{second}` are not orthogonal (|<.|.>| = {inner})")]
    OutcomesNotOrthogonal {
        label: String,
        first: String,
        second: String,
        inner: f64,
    },
    #[error("measurement `{label}`: outcome projectors do not sum to the identity (max deviation {deviation})")]
    IncompleteMeasurement { label: String, deviation: f64 },
}

/// A pure quantum preparation: a unit complex amplitude vector over a fixed
/// orthonormal basis.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    label: String,
    amplitudes: Vec<Complex64>,
}

impl PureState {
    /// Builds a state, checking unit norm (within [`GEOMETRIC_TOL`]) and d >= 2.
    pub fn new(label: impl Into<String>, amplitudes: Vec<Complex64>) -> Result<Self, QuantumError> {
        let label = label.into();
        if amplitudes.len() < 2 {
            return Err(QuantumError::DimensionTooSmall {
                dim: amplitudes.len(),
                min: 2,
            });
        }
        let norm_sq: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > GEOMETRIC_TOL {
            return Err(QuantumError::NotNormalized { label, norm_sq });
        }
        Ok(Self { label, amplitudes })
    }

    /// Convenience constructor for real amplitude vectors.
    pub fn real(label: impl Into<String>, amplitudes: &[f64]) -> Result<Self, QuantumError> {
        Self::new(
            label,
            amplitudes.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        )
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// Inner product `<self|other>`.
    pub fn inner(&self, other: &PureState) -> Result<Complex64, QuantumError> {
        if self.dim() != other.dim() {
            return Err(QuantumError::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(x, y)| x.conj() * y)
            .sum())
    }
}

/// `|<phi|psi>|^2`.
pub fn overlap(phi: &PureState, psi: &PureState) -> Result<f64, QuantumError> {
    Ok(phi.inner(psi)?.norm_sqr())
}

/// Trace-norm distance between two pure states, `sqrt(1 - |<phi|psi>|^2)`.
pub fn quantum_trace_distance(phi: &PureState, psi: &PureState) -> Result<f64, QuantumError> {
    let q = overlap(phi, psi)?;
    Ok((1.0 - q).max(0.0).sqrt())
}

/// A complete family of rank-1 outcomes. The outcome label is the label of
/// the outcome vector itself.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectiveMeasurement {
    label: String,
    outcomes: Vec<PureState>,
}

impl ProjectiveMeasurement {
    /// Builds a measurement, checking pairwise orthogonality of the outcome
    /// vectors and completeness (projectors sum to the identity).
    pub fn new(
        label: impl Into<String>,
        outcomes: Vec<PureState>,
    ) -> Result<Self, QuantumError> {
        let label = label.into();
        let d = match outcomes.first() {
            Some(o) => o.dim(),
            None => return Err(QuantumError::DimensionTooSmall { dim: 0, min: 2 }),
        };
        for o in &outcomes {
            if o.dim() != d {
                return Err(QuantumError::DimensionMismatch {
                    left: d,
                    right: o.dim(),
                });
            }
        }
        for i in 0..outcomes.len() {
            for j in (i + 1)..outcomes.len() {
                let inner = outcomes[i].inner(&outcomes[j])?.norm();
                if inner > GEOMETRIC_TOL {
                    return Err(QuantumError::OutcomesNotOrthogonal {
                        label,
                        first: outcomes[i].label().to_string(),
                        second: outcomes[j].label().to_string(),
                        inner,
                    });
                }
            }
        }
        // completeness: sum of |Q><Q| equals the identity
        let mut deviation = 0.0f64;
        for r in 0..d {
            for c in 0..d {
                let mut entry = Complex64::new(0.0, 0.0);
                for o in &outcomes {
                    entry += o.amplitudes()[r] * o.amplitudes()[c].conj();
                }
                let expected = if r == c { 1.0 } else { 0.0 };
                deviation = deviation.max((entry - expected).norm());
            }
        }
        if deviation > GEOMETRIC_TOL {
            return Err(QuantumError::IncompleteMeasurement { label, deviation });
        }
        Ok(Self { label, outcomes })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.outcomes[0].dim()
    }

    pub fn outcomes(&self) -> &[PureState] {
        &self.outcomes
    }

    pub fn outcome(&self, label: &str) -> Option<&PureState> {
        self.outcomes.iter().find(|o| o.label() == label)
    }
}

/// Born-rule outcome probabilities, index-aligned with the measurement's
/// outcome list: entry for outcome Q is `|<Q|psi>|^2`.
pub fn born(state: &PureState, measurement: &ProjectiveMeasurement) -> Result<Vec<f64>, QuantumError> {
    if state.dim() != measurement.dim() {
        return Err(QuantumError::DimensionMismatch {
            left: state.dim(),
            right: measurement.dim(),
        });
    }
    measurement
        .outcomes
        .iter()
        .map(|q| overlap(q, state))
        .collect()
}

/// A finite preparation/measurement family over one Hilbert space.
#[derive(Debug, Clone, PartialEq)]
pub struct StateFamily {
    pub dimension: usize,
    pub basis_labels: Vec<String>,
    pub preparations: Vec<PureState>,
    pub measurements: Vec<ProjectiveMeasurement>,
}

impl StateFamily {
    pub fn preparation(&self, label: &str) -> Option<&PureState> {
        self.preparations.iter().find(|s| s.label() == label)
    }

    pub fn measurement(&self, label: &str) -> Option<&ProjectiveMeasurement> {
        self.measurements.iter().find(|m| m.label() == label)
    }
}

fn basis_vector(d: usize, i: usize) -> Vec<f64> {
    let mut v = vec![0.0; d];
    v[i] = 1.0;
    v
}

/// Builds the d-dimensional preparation/measurement family.
///
/// d = 3: preparations `a, b, c, p, m` and measurements
/// `M_1 = {a+, a-, b}`, `M_2 = {b+, b-, a}`, `M_3 = {a, b, c}`.
///
/// d > 3: preparations `a_1 .. a_d, p, m`; for i = 1..d-1 the measurement
/// `M_i` replaces `a_i` and `a_d` by the superpositions
/// `a_i± = (a_i ± a_d)/√2`, and `M_d` is the basis measurement. The index
/// range i = 1..d-1 is exactly what makes every basis preparation's
/// certainty structure interact with both `p` and `m`.
pub fn build_family(d: usize) -> Result<StateFamily, QuantumError> {
    if d < 3 {
        return Err(QuantumError::DimensionTooSmall { dim: d, min: 3 });
    }
    let basis_labels: Vec<String> = if d == 3 {
        vec!["a".into(), "b".into(), "c".into()]
    } else {
        (1..=d).map(|i| format!("a_{i}")).collect()
    };
    let plus_label = |i: usize| -> String {
        if d == 3 {
            format!("{}+", basis_labels[i])
        } else {
            format!("a_{}+", i + 1)
        }
    };
    let minus_label = |i: usize| -> String {
        if d == 3 {
            format!("{}-", basis_labels[i])
        } else {
            format!("a_{}-", i + 1)
        }
    };

    let basis_state =
        |i: usize| PureState::real(basis_labels[i].clone(), &basis_vector(d, i)).expect("basis state");
    let sup_plus = |i: usize| {
        let mut v = vec![0.0; d];
        v[i] = std::f64::consts::FRAC_1_SQRT_2;
        v[d - 1] = std::f64::consts::FRAC_1_SQRT_2;
        PureState::real(plus_label(i), &v).expect("superposition state")
    };
    let sup_minus = |i: usize| {
        let mut v = vec![0.0; d];
        v[i] = std::f64::consts::FRAC_1_SQRT_2;
        v[d - 1] = -std::f64::consts::FRAC_1_SQRT_2;
        PureState::real(minus_label(i), &v).expect("superposition state")
    };

    let root = 1.0 / (d as f64).sqrt();
    let p = PureState::real("p", &vec![root; d]).expect("p state");
    let mut m_amps = vec![root; d];
    m_amps[d - 1] = -root;
    let m = PureState::real("m", &m_amps).expect("m state");

    let mut preparations: Vec<PureState> = (0..d).map(basis_state).collect();
    preparations.push(p);
    preparations.push(m);

    let mut measurements = Vec::with_capacity(d);
    if d == 3 {
        measurements.push(ProjectiveMeasurement::new(
            "M_1",
            vec![sup_plus(0), sup_minus(0), basis_state(1)],
        )?);
        measurements.push(ProjectiveMeasurement::new(
            "M_2",
            vec![sup_plus(1), sup_minus(1), basis_state(0)],
        )?);
        measurements.push(ProjectiveMeasurement::new(
            "M_3",
            vec![basis_state(0), basis_state(1), basis_state(2)],
        )?);
    } else {
        for i in 0..(d - 1) {
            let mut outcomes = Vec::with_capacity(d);
            for j in 0..(d - 1) {
                if j != i {
                    outcomes.push(basis_state(j));
                }
            }
            outcomes.push(sup_plus(i));
            outcomes.push(sup_minus(i));
            measurements.push(ProjectiveMeasurement::new(format!("M_{}", i + 1), outcomes)?);
        }
        measurements.push(ProjectiveMeasurement::new(
            format!("M_{d}"),
            (0..d).map(basis_state).collect(),
        )?);
    }

    Ok(StateFamily {
        dimension: d,
        basis_labels,
        preparations,
        measurements,
    })
}

/// One outcome-probability table: preparations down the rows, outcomes of a
/// single measurement across the columns.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityTable {
    pub measurement: String,
    pub outcome_labels: Vec<String>,
    /// (preparation label, probabilities aligned with `outcome_labels`).
    pub rows: Vec<(String, Vec<f64>)>,
}

/// The three d=3 outcome tables, regenerated from the Born rule. Column
/// order follows the conventional presentation: M_1 as (b, a+, a-),
/// M_2 as (a, b+, b-), M_3 as (a, b, c).
pub fn table1() -> [ProbabilityTable; 3] {
    let family = build_family(3).expect("d=3 family");
    let columns: [(&str, [&str; 3]); 3] = [
        ("M_1", ["b", "a+", "a-"]),
        ("M_2", ["a", "b+", "b-"]),
        ("M_3", ["a", "b", "c"]),
    ];
    columns.map(|(meas_label, outcome_order)| {
        let measurement = family.measurement(meas_label).expect("family measurement");
        let rows = family
            .preparations
            .iter()
            .map(|prep| {
                let probs = outcome_order
                    .iter()
                    .map(|q| {
                        let outcome = measurement.outcome(q).expect("outcome label");
                        overlap(outcome, prep).expect("same dimension")
                    })
                    .collect();
                (prep.label().to_string(), probs)
            })
            .collect();
        ProbabilityTable {
            measurement: meas_label.to_string(),
            outcome_labels: outcome_order.iter().map(|s| s.to_string()).collect(),
            rows,
        }
    })
}
