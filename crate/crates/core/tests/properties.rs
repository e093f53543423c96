//! Property and grid checks across the crate's invariants.

use std::collections::BTreeMap;

use num_complex::Complex64;
use proptest::prelude::*;

use ontomodel::{
    born, classical_trace_distance, guess_probability, max_epistemic_target, max_uniform_omega,
    min_overlap, noise_crossover_scan, omega_bound, overlap, quantum_trace_distance,
    support_overlap, tradeoff_slack, EpistemicState, OmegaProfile, OnticSpace,
    ProjectiveMeasurement, PureState, DEFAULT_ASSIGNMENT_CAP,
};

fn distribution_pair() -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    (2usize..12).prop_flat_map(|n| {
        (
            prop::collection::vec(0.0f64..1.0, n),
            prop::collection::vec(0.0f64..1.0, n),
        )
            .prop_filter("mass must be normalizable", |(p, q)| {
                p.iter().sum::<f64>() > 0.1 && q.iter().sum::<f64>() > 0.1
            })
            .prop_map(|(mut p, mut q)| {
                let sp: f64 = p.iter().sum();
                let sq: f64 = q.iter().sum();
                p.iter_mut().for_each(|x| *x /= sp);
                q.iter_mut().for_each(|x| *x /= sq);
                (p, q)
            })
    })
}

fn epistemic(space: &OnticSpace, label: &str, weights: &[f64]) -> EpistemicState {
    let map: BTreeMap<String, f64> = space
        .labels()
        .iter()
        .cloned()
        .zip(weights.iter().copied())
        .collect();
    EpistemicState::new(label, space, map).unwrap()
}

fn random_state() -> impl Strategy<Value = PureState> {
    (2usize..6).prop_flat_map(|d| {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), d)
            .prop_filter("vector must have usable norm", |amps| {
                amps.iter().map(|(re, im)| re * re + im * im).sum::<f64>() > 0.01
            })
            .prop_map(|amps| {
                let norm = amps
                    .iter()
                    .map(|(re, im)| re * re + im * im)
                    .sum::<f64>()
                    .sqrt();
                let amplitudes = amps
                    .iter()
                    .map(|&(re, im)| Complex64::new(re / norm, im / norm))
                    .collect();
                PureState::new("s", amplitudes).unwrap()
            })
    })
}

fn random_state_pair() -> impl Strategy<Value = (PureState, PureState)> {
    (2usize..6).prop_flat_map(|d| {
        let one = move || {
            prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), d)
                .prop_filter("vector must have usable norm", |amps| {
                    amps.iter().map(|(re, im)| re * re + im * im).sum::<f64>() > 0.01
                })
                .prop_map(|amps| {
                    let norm = amps
                        .iter()
                        .map(|(re, im)| re * re + im * im)
                        .sum::<f64>()
                        .sqrt();
                    let amplitudes = amps
                        .iter()
                        .map(|&(re, im)| Complex64::new(re / norm, im / norm))
                        .collect();
                    PureState::new("s", amplitudes).unwrap()
                })
        };
        (one(), one())
    })
}

proptest! {
    #[test]
    fn min_overlap_complements_trace_distance((p, q) in distribution_pair()) {
        let labels: Vec<String> = (0..p.len()).map(|i| format!("l{i}")).collect();
        let space = OnticSpace::new(labels).unwrap();
        let mu = epistemic(&space, "phi", &p);
        let nu = epistemic(&space, "psi", &q);
        let shared = min_overlap(&mu, &nu).unwrap();
        let distance = classical_trace_distance(&mu, &nu).unwrap();
        prop_assert!((shared + distance - 1.0).abs() <= 1e-12);
        prop_assert!((-1e-15..=1.0 + 1e-9).contains(&shared));
        prop_assert!((-1e-15..=1.0 + 1e-9).contains(&distance));
        // symmetry
        prop_assert_eq!(shared, min_overlap(&nu, &mu).unwrap());
        prop_assert_eq!(distance, classical_trace_distance(&nu, &mu).unwrap());
        // the guessing probability stays in [1/2, 1]
        let pc = guess_probability(distance.clamp(0.0, 1.0)).unwrap();
        prop_assert!((0.5..=1.0).contains(&pc));
    }

    #[test]
    fn support_carries_all_mass((p, _) in distribution_pair()) {
        let labels: Vec<String> = (0..p.len()).map(|i| format!("l{i}")).collect();
        let space = OnticSpace::new(labels).unwrap();
        let mu = epistemic(&space, "phi", &p);
        let mass = support_overlap(&mu, &mu.support(0.0)).unwrap();
        prop_assert!((mass - 1.0).abs() <= 1e-9);
    }

    #[test]
    fn overlap_is_symmetric_and_consistent((phi, psi) in random_state_pair()) {
        let q = overlap(&phi, &psi).unwrap();
        prop_assert!((overlap(&psi, &phi).unwrap() - q).abs() <= 1e-12);
        prop_assert!((-1e-12..=1.0 + 1e-12).contains(&q));
        let delta = quantum_trace_distance(&phi, &psi).unwrap();
        prop_assert!((delta * delta + q - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn born_is_permutation_covariant(state in random_state()) {
        // measure in the computational basis and a label-permuted copy
        let d = state.dim();
        let basis = |i: usize, label: &str| {
            let mut v = vec![0.0; d];
            v[i] = 1.0;
            PureState::real(label, &v).unwrap()
        };
        let outcomes: Vec<PureState> = (0..d).map(|i| basis(i, &format!("e{i}"))).collect();
        let m = ProjectiveMeasurement::new("M", outcomes).unwrap();
        let rotated: Vec<PureState> = (0..d)
            .map(|i| basis((i + 1) % d, &format!("e{}", (i + 1) % d)))
            .collect();
        let m_rot = ProjectiveMeasurement::new("M", rotated).unwrap();
        let probs = born(&state, &m).unwrap();
        let probs_rot = born(&state, &m_rot).unwrap();
        for i in 0..d {
            prop_assert!((probs_rot[i] - probs[(i + 1) % d]).abs() <= 1e-12);
        }
    }
}

#[test]
fn omega_bound_is_decreasing_and_above_half() {
    let mut grid: Vec<usize> = (3..=1000).collect();
    let mut d = 1000usize;
    while d < 1_000_000 {
        d = (d as f64 * 1.5) as usize;
        grid.push(d.min(1_000_000));
    }
    let mut previous = f64::INFINITY;
    for &d in &grid {
        let bound = omega_bound(d).unwrap();
        assert!(bound < previous, "not decreasing at d={d}");
        assert!(bound > 0.5, "below one half at d={d}");
        previous = bound;
    }
}

#[test]
fn full_basis_overlap_has_zero_slack_on_grid() {
    for d in 3..=100 {
        let profile = OmegaProfile::new(d, vec![1.0; d], 0.0).unwrap();
        assert!(tradeoff_slack(&profile).abs() <= 1e-12, "d={d}");
    }
}

#[test]
fn uniform_omega_at_bound_has_zero_slack_on_grid() {
    // the zero of the slack in the uniform direction is the closed-form bound
    for d in 3..=100 {
        let omega = omega_bound(d).unwrap();
        let profile = OmegaProfile::uniform(d, omega).unwrap();
        assert!(
            tradeoff_slack(&profile).abs() <= 1e-12,
            "d={d} slack={}",
            tradeoff_slack(&profile)
        );
    }
}

#[test]
fn noise_strictness_is_monotone_on_grid() {
    let scan = noise_crossover_scan(3, 10_000).unwrap();
    let mut seen_strict = false;
    for row in &scan.rows {
        if seen_strict {
            assert!(row.strict, "strictness lost at d={}", row.d);
        }
        seen_strict |= row.strict;
    }
    assert_eq!(scan.first_strict, Some(15));
}

#[test]
fn epistemic_target_dominates_half_overlap() {
    for i in 0..=1000 {
        let b = i as f64 / 1000.0;
        let target = max_epistemic_target(b).unwrap();
        assert!(target >= b / 2.0 - 1e-12, "b={b}");
    }
}

#[test]
fn omega_witness_satisfies_model_invariants() {
    let result = max_uniform_omega(3, DEFAULT_ASSIGNMENT_CAP).unwrap();
    let witness = &result.witness;
    let family = witness.family().clone();
    let labels: Vec<&str> = family.preparations.iter().map(|s| s.label()).collect();
    // the support-overlap bound (degree <= 1) comes from a measurement
    // responding 1 to phi's ray across its support, so it binds exactly the
    // preparations whose ray some family measurement contains
    let ray_measured = |phi: &str| {
        let state = family.preparation(phi).unwrap();
        family.measurements.iter().any(|m| {
            m.outcomes()
                .iter()
                .any(|o| overlap(o, state).unwrap() >= 1.0 - 1e-12)
        })
    };
    assert!(ray_measured("a") && ray_measured("b") && ray_measured("c"));
    assert!(!ray_measured("p") && !ray_measured("m"));
    for &phi in &labels {
        for &psi in &labels {
            let q = overlap(
                family.preparation(phi).unwrap(),
                family.preparation(psi).unwrap(),
            )
            .unwrap();
            let mu_phi = witness.epistemic_state(phi).unwrap();
            let mu_psi = witness.epistemic_state(psi).unwrap();
            match witness.epistemic_degree(phi, psi).unwrap() {
                Some(degree) => {
                    assert!(degree >= -1e-9, "omega({phi}|{psi}) = {degree}");
                    if ray_measured(phi) {
                        assert!(
                            degree <= 1.0 + 1e-6,
                            "omega({phi}|{psi}) = {degree} for a ray-measured preparation"
                        );
                    }
                }
                None => {
                    // orthogonal pairs must have disjoint supports
                    assert!(q <= 1e-12);
                    let shared = min_overlap(&mu_phi.clone(), &mu_psi.clone()).unwrap();
                    assert_eq!(shared, 0.0, "({phi}, {psi})");
                    let support_phi = mu_phi.support(0.0);
                    let support_psi = mu_psi.support(0.0);
                    assert!(support_phi.is_disjoint(&support_psi));
                }
            }
            // the shared mass never exceeds the mass on the other support
            let shared = min_overlap(mu_phi, mu_psi).unwrap();
            let on_support = support_overlap(mu_psi, &mu_phi.support(0.0)).unwrap();
            assert!(shared <= on_support + 1e-12, "({phi}, {psi})");
        }
    }
}
