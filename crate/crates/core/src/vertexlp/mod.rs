//! Vertex reduction of ontological models over a finite family.
//!
//! A response function assigns each ontic state a point in the product of
//! outcome simplices (one simplex per measurement). Extreme points of that
//! product are deterministic joint assignments, so every model decomposes
//! into a mixture of assignment-indexed ontic states with identical
//! statistics. Linear programs over those vertices therefore bound (and for
//! min-overlap objectives, exactly attain) what any model of the family can
//! do; see [`programs`] for the concrete programs.

pub mod programs;
pub mod simplex;

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::ontic::OnticError;
use crate::quantum::{
    self, ProjectiveMeasurement, PureState, QuantumError, GEOMETRIC_TOL,
};
use simplex::LpStatus;

/// Default ceiling on the number of joint assignments enumerated (the
/// family for dimension d needs d^d, so this admits d <= 7).
pub const DEFAULT_ASSIGNMENT_CAP: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VertexLpError {
    #[error("family needs {required} joint assignments, above the cap of {cap}; use the closed-form bounds instead")]
    CapExceeded { required: u128, cap: u64 },
    #[error("measurement family is empty")]
    EmptyFamily,
    #[error("unknown preparation `{0}`")]
    UnknownPreparation(String),
    #[error("linear program finished with status `{0}` instead of an optimum")]
    NotOptimal(LpStatus),
    #[error(transparent)]
    Quantum(#[from] QuantumError),
    #[error(transparent)]
    Ontic(#[from] OnticError),
}

/// A deterministic joint outcome choice: one outcome label per measurement.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Assignment {
    choices: BTreeMap<String, String>,
}

impl Assignment {
    pub fn new(choices: BTreeMap<String, String>) -> Self {
        Self { choices }
    }

    pub fn outcome(&self, measurement: &str) -> Option<&str> {
        self.choices.get(measurement).map(|s| s.as_str())
    }

    pub fn choices(&self) -> &BTreeMap<String, String> {
        &self.choices
    }

    /// Stable identifier: chosen outcome labels joined with `;` in
    /// measurement-label order.
    pub fn label(&self) -> String {
        self.choices
            .values()
            .map(|s| s.as_str())
            .collect::<Vec<_>>()
            .join(";")
    }
}

/// All joint assignments for the given measurements, in lexicographic order
/// of measurement label and then outcome label. Errors when the product of
/// outcome counts exceeds `cap`.
pub fn enumerate_assignments(
    measurements: &[ProjectiveMeasurement],
    cap: u64,
) -> Result<Vec<Assignment>, VertexLpError> {
    if measurements.is_empty() {
        return Err(VertexLpError::EmptyFamily);
    }
    let mut sorted: Vec<&ProjectiveMeasurement> = measurements.iter().collect();
    sorted.sort_by(|a, b| a.label().cmp(b.label()));

    let outcome_labels: Vec<Vec<&str>> = sorted
        .iter()
        .map(|m| {
            let mut labels: Vec<&str> = m.outcomes().iter().map(|o| o.label()).collect();
            labels.sort_unstable();
            labels
        })
        .collect();

    let mut required: u128 = 1;
    for labels in &outcome_labels {
        required = required.saturating_mul(labels.len() as u128);
    }
    if required > cap as u128 {
        return Err(VertexLpError::CapExceeded { required, cap });
    }

    let total = required as usize;
    let mut assignments = Vec::with_capacity(total);
    let mut odometer = vec![0usize; sorted.len()];
    loop {
        let choices: BTreeMap<String, String> = sorted
            .iter()
            .zip(&odometer)
            .zip(&outcome_labels)
            .map(|((m, &k), labels)| (m.label().to_string(), labels[k].to_string()))
            .collect();
        assignments.push(Assignment::new(choices));

        // advance the least-significant (last) digit
        let mut pos = sorted.len();
        loop {
            if pos == 0 {
                return Ok(assignments);
            }
            pos -= 1;
            odometer[pos] += 1;
            if odometer[pos] < outcome_labels[pos].len() {
                break;
            }
            odometer[pos] = 0;
        }
    }
}

/// How a preparation relates to each measurement: the outcome that is its
/// ray (if any) and the outcomes orthogonal to it.
struct OutcomeRelations {
    measurement: String,
    certain: Option<String>,
    forbidden: BTreeSet<String>,
}

fn outcome_relations(
    phi: &PureState,
    measurements: &[ProjectiveMeasurement],
) -> Result<Vec<OutcomeRelations>, QuantumError> {
    measurements
        .iter()
        .map(|m| {
            let mut certain = None;
            let mut forbidden = BTreeSet::new();
            for o in m.outcomes() {
                let q = quantum::overlap(o, phi)?;
                if q >= 1.0 - GEOMETRIC_TOL {
                    certain = Some(o.label().to_string());
                } else if q <= GEOMETRIC_TOL {
                    forbidden.insert(o.label().to_string());
                }
            }
            Ok(OutcomeRelations {
                measurement: m.label().to_string(),
                certain,
                forbidden,
            })
        })
        .collect()
}

/// The assignments compatible with certainty (a measurement containing the
/// preparation's ray must choose it) and impossibility (no measurement may
/// choose an outcome orthogonal to the preparation). Any ontic state a
/// valid model can assign positive `mu_phi` decomposes into vertices from
/// this set.
#[derive(Debug, Clone, PartialEq)]
pub struct CertaintySet {
    pub preparation: String,
    pub members: BTreeSet<Assignment>,
}

impl CertaintySet {
    pub fn contains(&self, assignment: &Assignment) -> bool {
        self.members.contains(assignment)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

pub fn certainty_set(
    phi: &PureState,
    measurements: &[ProjectiveMeasurement],
    assignments: &[Assignment],
) -> Result<CertaintySet, QuantumError> {
    let relations = outcome_relations(phi, measurements)?;
    let members = assignments
        .iter()
        .filter(|v| {
            relations.iter().all(|rel| {
                let chosen = v
                    .outcome(&rel.measurement)
                    .expect("assignment covers every measurement");
                match &rel.certain {
                    Some(label) => chosen == label,
                    None => !rel.forbidden.contains(chosen),
                }
            })
        })
        .cloned()
        .collect();
    Ok(CertaintySet {
        preparation: phi.label().to_string(),
        members,
    })
}

/// Per-basis-state emptiness of `S_x ∩ S_p ∩ S_m`, plus the union check.
#[derive(Debug, Clone, PartialEq)]
pub struct TripleIntersectionReport {
    pub dimension: usize,
    pub assignment_count: usize,
    /// (basis state, intersection empty).
    pub per_state: Vec<(String, bool)>,
    pub union_empty: bool,
}

impl TripleIntersectionReport {
    pub fn all_empty(&self) -> bool {
        self.union_empty && self.per_state.iter().all(|(_, empty)| *empty)
    }
}

/// For each basis state x of the dimension-d family, reports whether the
/// certainty sets of x, p and m have empty triple intersection, and whether
/// the union over x does.
pub fn triple_intersection_report(
    d: usize,
    cap: u64,
) -> Result<TripleIntersectionReport, VertexLpError> {
    let family = quantum::build_family(d)?;
    let assignments = enumerate_assignments(&family.measurements, cap)?;
    let s_p = certainty_set(
        family.preparation("p").expect("p in family"),
        &family.measurements,
        &assignments,
    )?;
    let s_m = certainty_set(
        family.preparation("m").expect("m in family"),
        &family.measurements,
        &assignments,
    )?;
    let pm: BTreeSet<&Assignment> = s_p.members.intersection(&s_m.members).collect();

    let mut per_state = Vec::with_capacity(d);
    let mut union_hit = false;
    for basis_label in &family.basis_labels {
        let s_x = certainty_set(
            family.preparation(basis_label).expect("basis state"),
            &family.measurements,
            &assignments,
        )?;
        let empty = !pm.iter().any(|v| s_x.members.contains(*v));
        union_hit |= !empty;
        per_state.push((basis_label.clone(), empty));
    }
    Ok(TripleIntersectionReport {
        dimension: d,
        assignment_count: assignments.len(),
        per_state,
        union_empty: !union_hit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::build_family;

    #[test]
    fn enumeration_counts() {
        let family = build_family(3).unwrap();
        let assignments =
            enumerate_assignments(&family.measurements, DEFAULT_ASSIGNMENT_CAP).unwrap();
        assert_eq!(assignments.len(), 27);

        let family4 = build_family(4).unwrap();
        let assignments4 =
            enumerate_assignments(&family4.measurements, DEFAULT_ASSIGNMENT_CAP).unwrap();
        assert_eq!(assignments4.len(), 256);
    }

    #[test]
    fn enumeration_is_sorted_lexicographically() {
        let family = build_family(3).unwrap();
        let assignments =
            enumerate_assignments(&family.measurements, DEFAULT_ASSIGNMENT_CAP).unwrap();
        // BTreeMap ordering on choices agrees with the generation order
        let mut sorted = assignments.clone();
        sorted.sort();
        assert_eq!(assignments, sorted);
        // first assignment picks the lexicographically first outcomes
        let first = &assignments[0];
        assert_eq!(first.outcome("M_1"), Some("a+"));
        assert_eq!(first.outcome("M_2"), Some("a"));
        assert_eq!(first.outcome("M_3"), Some("a"));
        assert_eq!(first.label(), "a+;a;a");
        // last one picks the last outcomes
        let last = assignments.last().unwrap();
        assert_eq!(last.outcome("M_1"), Some("b"));
        assert_eq!(last.outcome("M_2"), Some("b-"));
        assert_eq!(last.outcome("M_3"), Some("c"));
    }

    #[test]
    fn cap_is_enforced() {
        let family = build_family(8).unwrap();
        let err = enumerate_assignments(&family.measurements, DEFAULT_ASSIGNMENT_CAP).unwrap_err();
        match err {
            VertexLpError::CapExceeded { required, cap } => {
                assert_eq!(required, 16_777_216);
                assert_eq!(cap, DEFAULT_ASSIGNMENT_CAP);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn certainty_set_sizes_d3() {
        let family = build_family(3).unwrap();
        let assignments =
            enumerate_assignments(&family.measurements, DEFAULT_ASSIGNMENT_CAP).unwrap();
        let size = |label: &str| {
            certainty_set(
                family.preparation(label).unwrap(),
                &family.measurements,
                &assignments,
            )
            .unwrap()
            .len()
        };
        assert_eq!(size("a"), 2);
        assert_eq!(size("b"), 2);
        assert_eq!(size("c"), 4);
        assert_eq!(size("p"), 12);
        assert_eq!(size("m"), 12);
    }

    #[test]
    fn certainty_set_rules_d3() {
        let family = build_family(3).unwrap();
        let assignments =
            enumerate_assignments(&family.measurements, DEFAULT_ASSIGNMENT_CAP).unwrap();
        let s_a = certainty_set(
            family.preparation("a").unwrap(),
            &family.measurements,
            &assignments,
        )
        .unwrap();
        for v in &s_a.members {
            assert!(matches!(v.outcome("M_1"), Some("a+") | Some("a-")));
            assert_eq!(v.outcome("M_2"), Some("a"));
            assert_eq!(v.outcome("M_3"), Some("a"));
        }
        let s_p = certainty_set(
            family.preparation("p").unwrap(),
            &family.measurements,
            &assignments,
        )
        .unwrap();
        for v in &s_p.members {
            assert_ne!(v.outcome("M_1"), Some("a-"));
            assert_ne!(v.outcome("M_2"), Some("b-"));
        }
    }

    #[test]
    fn certainty_set_sizes_d4() {
        let family = build_family(4).unwrap();
        let assignments =
            enumerate_assignments(&family.measurements, DEFAULT_ASSIGNMENT_CAP).unwrap();
        let size = |label: &str| {
            certainty_set(
                family.preparation(label).unwrap(),
                &family.measurements,
                &assignments,
            )
            .unwrap()
            .len()
        };
        assert_eq!(size("a_1"), 2);
        assert_eq!(size("a_4"), 8);
        assert_eq!(size("p"), 108);
        assert_eq!(size("m"), 108);
    }

    #[test]
    fn triple_intersections_empty_d3_and_d4() {
        for d in [3usize, 4] {
            let report = triple_intersection_report(d, DEFAULT_ASSIGNMENT_CAP).unwrap();
            assert_eq!(report.per_state.len(), d);
            assert!(report.all_empty(), "d={d}: {report:?}");
        }
    }
}
