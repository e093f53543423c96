//! The linear programs over deterministic-assignment ontic spaces.
//!
//! Variables are the per-preparation vertex weights `mu_psi(v)`. Equality
//! rows enforce Born-rule reproduction; summing a measurement's rows gives
//! the normalization, so no separate normalization row is needed.
//!
//! `max_uniform_omega` maximizes a single t with
//! `sum_{v in S_phi} mu_psi(v) >= t |<phi|psi>|^2` for every ordered
//! non-orthogonal pair. Since any ontic state certain of phi refines into
//! vertices inside `S_phi`, the optimum is a certified upper bound on the
//! uniform epistemic-overlap degree of any model of the family — the bound
//! is reported as a ceiling, not as an achievable overlap.
//!
//! `max_pairwise_min_overlap` maximizes `sum_v min(mu_phi, mu_psi)` via
//! auxiliary variables. Vertex reduction is lossless for this objective:
//! refining a model into vertices is stochastic post-processing, which
//! cannot decrease min-overlap, and vertex models are themselves valid
//! models, so the optimum is exact over all models of the family.

use std::collections::BTreeMap;

use super::simplex::{EqualityConstraint, LinearProgram, LpSolution, LpStatus};
use super::{certainty_set, enumerate_assignments, Assignment, VertexLpError};
use crate::ontic::{EpistemicState, OnticSpace, OntologicalModel, ResponseSchema};
use crate::quantum::{self, build_family, ProjectiveMeasurement, PureState, StateFamily, GEOMETRIC_TOL};

/// Reproduction equalities for a preparation/measurement family over an
/// assignment list: one variable per (preparation, assignment), one row per
/// (preparation, measurement, outcome).
#[derive(Debug, Clone)]
pub struct ReproductionSystem {
    pub variables: Vec<String>,
    pub equalities: Vec<EqualityConstraint>,
    pub preparations: Vec<String>,
    pub assignment_count: usize,
}

impl ReproductionSystem {
    pub fn variable_index(&self, prep_index: usize, assignment_index: usize) -> usize {
        prep_index * self.assignment_count + assignment_index
    }

    pub fn preparation_index(&self, label: &str) -> Option<usize> {
        self.preparations.iter().position(|p| p == label)
    }
}

pub fn reproduction_constraints(
    preparations: &[PureState],
    measurements: &[ProjectiveMeasurement],
    assignments: &[Assignment],
) -> Result<ReproductionSystem, VertexLpError> {
    let n = assignments.len();
    let width = preparations.len() * n;
    let mut variables = Vec::with_capacity(width);
    for prep in preparations {
        for v in assignments {
            variables.push(format!("mu[{}][{}]", prep.label(), v.label()));
        }
    }
    let mut equalities = Vec::new();
    for (pi, prep) in preparations.iter().enumerate() {
        for meas in measurements {
            let probs = quantum::born(prep, meas)?;
            for (outcome, &target) in meas.outcomes().iter().zip(&probs) {
                let mut coefficients = vec![0.0; width];
                for (vi, v) in assignments.iter().enumerate() {
                    if v.outcome(meas.label()) == Some(outcome.label()) {
                        coefficients[pi * n + vi] = 1.0;
                    }
                }
                equalities.push(EqualityConstraint {
                    coefficients,
                    rhs: target,
                });
            }
        }
    }
    Ok(ReproductionSystem {
        variables,
        equalities,
        preparations: preparations.iter().map(|p| p.label().to_string()).collect(),
        assignment_count: n,
    })
}

/// Ordered pairs of distinct preparations with nonzero quantum overlap.
pub fn non_orthogonal_pairs(family: &StateFamily) -> Result<Vec<(String, String)>, VertexLpError> {
    let mut pairs = Vec::new();
    for phi in &family.preparations {
        for psi in &family.preparations {
            if phi.label() == psi.label() {
                continue;
            }
            if quantum::overlap(phi, psi)? > GEOMETRIC_TOL {
                pairs.push((phi.label().to_string(), psi.label().to_string()));
            }
        }
    }
    Ok(pairs)
}

fn widen(mut coefficients: Vec<f64>, extra: usize) -> Vec<f64> {
    coefficients.resize(coefficients.len() + extra, 0.0);
    coefficients
}

/// Builds the uniform-overlap program over the given ordered pairs:
/// maximize t subject to reproduction and, per pair (phi, psi),
/// `sum_{v in S_phi} mu_psi(v) - t |<phi|psi>|^2 >= 0`.
pub fn uniform_omega_program(
    family: &StateFamily,
    assignments: &[Assignment],
    pairs: &[(String, String)],
) -> Result<LinearProgram, VertexLpError> {
    let system = reproduction_constraints(&family.preparations, &family.measurements, assignments)?;
    let width = system.variables.len();
    let mut variables = system.variables.clone();
    variables.push("t".to_string());
    let mut objective = vec![0.0; width];
    objective.push(1.0);
    let mut lp = LinearProgram::new(variables, objective);
    for eq in &system.equalities {
        lp.push_eq(widen(eq.coefficients.clone(), 1), eq.rhs);
    }

    let mut set_cache: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    for (phi_label, psi_label) in pairs {
        let phi = family
            .preparation(phi_label)
            .ok_or_else(|| VertexLpError::UnknownPreparation(phi_label.clone()))?;
        let psi = family
            .preparation(psi_label)
            .ok_or_else(|| VertexLpError::UnknownPreparation(psi_label.clone()))?;
        let q = quantum::overlap(phi, psi)?;
        let psi_index = system
            .preparation_index(psi_label)
            .ok_or_else(|| VertexLpError::UnknownPreparation(psi_label.clone()))?;
        if !set_cache.contains_key(phi_label) {
            let set = certainty_set(phi, &family.measurements, assignments)?;
            let indices = assignments
                .iter()
                .enumerate()
                .filter(|(_, v)| set.contains(v))
                .map(|(i, _)| i)
                .collect();
            set_cache.insert(phi_label.clone(), indices);
        }
        let mut coefficients = vec![0.0; width + 1];
        for &vi in &set_cache[phi_label] {
            coefficients[system.variable_index(psi_index, vi)] = 1.0;
        }
        coefficients[width] = -q;
        lp.push_ge(coefficients, 0.0);
    }
    Ok(lp)
}

/// Result of the uniform-overlap maximization: the certified upper bound on
/// the uniform degree of epistemic overlap, plus the optimizing model.
#[derive(Debug, Clone)]
pub struct OmegaSolution {
    pub dimension: usize,
    pub bound: f64,
    pub pair_count: usize,
    pub solution: LpSolution,
    pub witness: OntologicalModel,
}

/// Solves the uniform-overlap program for `build_family(d)`.
pub fn max_uniform_omega(d: usize, cap: u64) -> Result<OmegaSolution, VertexLpError> {
    max_uniform_omega_for(&build_family(d)?, cap)
}

/// As [`max_uniform_omega`] but over an arbitrary family. With no
/// non-orthogonal pair the program is unconstrained above and the bound
/// clamps to 1.
pub fn max_uniform_omega_for(
    family: &StateFamily,
    cap: u64,
) -> Result<OmegaSolution, VertexLpError> {
    let assignments = enumerate_assignments(&family.measurements, cap)?;
    let pairs = non_orthogonal_pairs(family)?;
    if pairs.is_empty() {
        // feasibility only: any reproducing vertex model witnesses omega = 1
        let system =
            reproduction_constraints(&family.preparations, &family.measurements, &assignments)?;
        let width = system.variables.len();
        let mut lp = LinearProgram::new(system.variables.clone(), vec![0.0; width]);
        for eq in &system.equalities {
            lp.push_eq(eq.coefficients.clone(), eq.rhs);
        }
        let solution = lp.solve();
        if solution.status != LpStatus::Optimal {
            return Err(VertexLpError::NotOptimal(solution.status));
        }
        let witness = witness_model(
            family,
            &assignments,
            solution.witness.as_ref().expect("optimal witness"),
        )?;
        return Ok(OmegaSolution {
            dimension: family.dimension,
            bound: 1.0,
            pair_count: 0,
            solution,
            witness,
        });
    }

    let lp = uniform_omega_program(family, &assignments, &pairs)?;
    let solution = lp.solve();
    if solution.status != LpStatus::Optimal {
        return Err(VertexLpError::NotOptimal(solution.status));
    }
    let x = solution.witness.as_ref().expect("optimal witness");
    let mu_width = family.preparations.len() * assignments.len();
    let witness = witness_model(family, &assignments, &x[..mu_width])?;
    Ok(OmegaSolution {
        dimension: family.dimension,
        bound: solution.optimum.expect("optimal value"),
        pair_count: pairs.len(),
        solution,
        witness,
    })
}

/// Result of maximizing the shared mass between two epistemic states over
/// all models of the family.
///
/// `value` is the min-overlap evaluated on the returned witness model
/// (whose sub-clamp solver dust has been zeroed), so structurally disjoint
/// pairs report an exact 0; it agrees with the raw LP optimum in
/// `solution` to within the solver's residual tolerance.
#[derive(Debug, Clone)]
pub struct MinOverlapSolution {
    pub phi: String,
    pub psi: String,
    pub value: f64,
    pub solution: LpSolution,
    pub witness: OntologicalModel,
}

/// Solves the pairwise min-overlap program for `build_family(d)`.
pub fn max_pairwise_min_overlap(
    phi: &str,
    psi: &str,
    d: usize,
    cap: u64,
) -> Result<MinOverlapSolution, VertexLpError> {
    max_pairwise_min_overlap_for(&build_family(d)?, phi, psi, cap)
}

pub fn max_pairwise_min_overlap_for(
    family: &StateFamily,
    phi: &str,
    psi: &str,
    cap: u64,
) -> Result<MinOverlapSolution, VertexLpError> {
    for label in [phi, psi] {
        if family.preparation(label).is_none() {
            return Err(VertexLpError::UnknownPreparation(label.to_string()));
        }
    }
    let assignments = enumerate_assignments(&family.measurements, cap)?;
    let system = reproduction_constraints(&family.preparations, &family.measurements, &assignments)?;
    let n = assignments.len();
    let width = system.variables.len();

    let mut variables = system.variables.clone();
    for v in &assignments {
        variables.push(format!("nu[{}]", v.label()));
    }
    let mut objective = vec![0.0; width];
    objective.resize(width + n, 1.0);
    let mut lp = LinearProgram::new(variables, objective);
    for eq in &system.equalities {
        lp.push_eq(widen(eq.coefficients.clone(), n), eq.rhs);
    }
    let phi_index = system.preparation_index(phi).expect("checked above");
    let psi_index = system.preparation_index(psi).expect("checked above");
    for vi in 0..n {
        for prep_index in [phi_index, psi_index] {
            let mut coefficients = vec![0.0; width + n];
            coefficients[width + vi] = 1.0;
            coefficients[system.variable_index(prep_index, vi)] = -1.0;
            lp.push_le(coefficients, 0.0);
        }
    }

    let solution = lp.solve();
    if solution.status != LpStatus::Optimal {
        return Err(VertexLpError::NotOptimal(solution.status));
    }
    let x = solution.witness.as_ref().expect("optimal witness");
    let witness = witness_model(family, &assignments, &x[..width])?;
    let value = crate::ontic::min_overlap(
        witness.epistemic_state(phi)?,
        witness.epistemic_state(psi)?,
    )?;
    Ok(MinOverlapSolution {
        phi: phi.to_string(),
        psi: psi.to_string(),
        value,
        solution,
        witness,
    })
}

/// Converts flat vertex weights (preparation-major, assignment-minor) into
/// an ontological model whose ontic states are the assignments themselves,
/// with the deterministic response functions they encode.
pub fn witness_model(
    family: &StateFamily,
    assignments: &[Assignment],
    mu_values: &[f64],
) -> Result<OntologicalModel, VertexLpError> {
    let n = assignments.len();
    assert_eq!(mu_values.len(), family.preparations.len() * n);
    let labels: Vec<String> = assignments.iter().map(|v| v.label()).collect();
    let space = OnticSpace::new(labels.clone())?;

    let mut epistemic = Vec::with_capacity(family.preparations.len());
    for (pi, prep) in family.preparations.iter().enumerate() {
        let weights: BTreeMap<String, f64> = labels
            .iter()
            .zip(&mu_values[pi * n..(pi + 1) * n])
            .map(|(l, &w)| (l.clone(), w))
            .collect();
        epistemic.push(EpistemicState::new(prep.label(), &space, weights)?);
    }

    let mut tables = BTreeMap::new();
    for meas in &family.measurements {
        let mut per_ontic = BTreeMap::new();
        for (v, label) in assignments.iter().zip(&labels) {
            let chosen = v
                .outcome(meas.label())
                .expect("assignment covers every measurement");
            let row: BTreeMap<String, f64> = meas
                .outcomes()
                .iter()
                .map(|o| {
                    (
                        o.label().to_string(),
                        if o.label() == chosen { 1.0 } else { 0.0 },
                    )
                })
                .collect();
            per_ontic.insert(label.clone(), row);
        }
        tables.insert(meas.label().to_string(), per_ontic);
    }

    Ok(OntologicalModel::new(
        space,
        epistemic,
        ResponseSchema::new(tables)?,
        family.clone(),
    )?)
}
