//! Acceptance suite: one test per numbered criterion, each printing a
//! single `ACCEPTANCE <n> <name>: PASS/FAIL` line (visible with
//! `cargo test -p ontomodel --test acceptance -- --nocapture`).
//!
//! Criteria 5 and 7 compare the family-restricted LP results against the
//! all-measurement quantum distinguishability bound. Models constrained to
//! reproduce only the family's d measurements are not bound by it (see
//! `family_lp_is_governed_by_in_family_distinguishability`, which verifies
//! the bound that does govern them), so those two tests fail by a wide,
//! reproducible margin and are kept as stated to document the gap.

use std::time::Instant;

use ontomodel::{
    born, classical_trace_distance, max_epistemic_target, max_pairwise_min_overlap,
    max_uniform_omega, min_overlap, noise_crossover_scan, omega_bound, overlap,
    quantum_trace_distance, symmetric_full_overlap_cost, table1, tradeoff_slack,
    triple_intersection_report, LinearProgram, LpStatus, OmegaProfile, OntologicalModel,
    DEFAULT_ASSIGNMENT_CAP,
};

fn report(number: u32, name: &str, pass: bool, detail: &str) {
    println!(
        "ACCEPTANCE {number} {name}: {} — {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
}

/// The published d=3 outcome tables, columns as printed:
/// M_1 (b, a+, a-), M_2 (a, b+, b-), M_3 (a, b, c); rows a, b, c, p, m.
fn expected_tables() -> [[[f64; 3]; 5]; 3] {
    const TH: f64 = 1.0 / 3.0;
    const TT: f64 = 2.0 / 3.0;
    [
        [
            [0.0, 0.5, 0.5],
            [1.0, 0.0, 0.0],
            [0.0, 0.5, 0.5],
            [TH, TT, 0.0],
            [TH, 0.0, TT],
        ],
        [
            [1.0, 0.0, 0.0],
            [0.0, 0.5, 0.5],
            [0.0, 0.5, 0.5],
            [TH, TT, 0.0],
            [TH, 0.0, TT],
        ],
        [
            [1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.0, 0.0, 1.0],
            [TH, TH, TH],
            [TH, TH, TH],
        ],
    ]
}

#[test]
fn acceptance_1_table1_reproduction() {
    let started = Instant::now();
    let tables = table1();
    let elapsed = started.elapsed();

    let expected = expected_tables();
    let mut worst = 0.0f64;
    let mut checked = 0;
    for (table, fixture) in tables.iter().zip(&expected) {
        assert_eq!(table.rows.len(), 5);
        for ((_, probs), row) in table.rows.iter().zip(fixture) {
            for (&got, &want) in probs.iter().zip(row) {
                worst = worst.max((got - want).abs());
                checked += 1;
            }
        }
    }
    let pass = checked == 45 && worst <= 1e-12 && elapsed.as_secs_f64() < 0.1;
    report(
        1,
        "table1-reproduction",
        pass,
        &format!(
            "45 entries, max deviation {worst:.3e}, {:.3} ms",
            elapsed.as_secs_f64() * 1e3
        ),
    );
    assert_eq!(checked, 45);
    assert!(worst <= 1e-12, "max deviation {worst}");
    assert!(
        elapsed.as_secs_f64() < 0.1,
        "took {:?}, budget 0.1 s",
        elapsed
    );
}

#[test]
fn acceptance_2_analytic_bounds() {
    let exact = omega_bound(3).unwrap();
    let limit = omega_bound(1_000_000).unwrap();

    let mut worst_slack = 0.0f64;
    let asym = OmegaProfile::new(3, vec![1.0, 1.0, 2.0 / 3.0], 1.0).unwrap();
    worst_slack = worst_slack.max(tradeoff_slack(&asym).abs());
    let sym = OmegaProfile::new(3, vec![8.0 / 9.0; 3], 1.0).unwrap();
    worst_slack = worst_slack.max(tradeoff_slack(&sym).abs());
    for d in 3..=100 {
        let cost = symmetric_full_overlap_cost(d).unwrap();
        let profile = OmegaProfile::new(d, vec![cost; d], 1.0).unwrap();
        worst_slack = worst_slack.max(tradeoff_slack(&profile).abs());
    }

    let pass = exact == 0.9 && (limit - 0.5).abs() <= 1e-5 && worst_slack <= 1e-12;
    report(
        2,
        "analytic-bounds",
        pass,
        &format!(
            "omega_bound(3)={exact}, omega_bound(1e6)={limit:.7}, worst zero-case slack {worst_slack:.3e}"
        ),
    );
    assert_eq!(exact, 0.9);
    assert!((limit - 0.5).abs() <= 1e-5);
    assert!(worst_slack <= 1e-12);
}

#[test]
fn acceptance_3_combinatorial_emptiness() {
    let mut detail = String::new();
    let mut pass = true;
    for d in [3usize, 4, 5] {
        let started = Instant::now();
        let result = triple_intersection_report(d, DEFAULT_ASSIGNMENT_CAP).unwrap();
        let elapsed = started.elapsed();
        let ok = result.all_empty() && (d != 5 || elapsed.as_secs_f64() < 5.0);
        pass &= ok;
        detail.push_str(&format!(
            "d={d}: empty={} ({:.1} ms); ",
            result.all_empty(),
            elapsed.as_secs_f64() * 1e3
        ));
        assert!(result.all_empty(), "non-empty triple intersection at d={d}");
        if d == 5 {
            assert!(
                elapsed.as_secs_f64() < 5.0,
                "d=5 took {elapsed:?}, budget 5 s"
            );
        }
    }
    report(3, "combinatorial-emptiness", pass, detail.trim_end());
}

/// Recorded from the first solve; the LP is its own oracle for the exact
/// optimum, which must stay stable across runs.
const UNIFORM_OMEGA_D3_FIXTURE: f64 = 0.75;

#[test]
fn acceptance_4_lp_certified_uniform_omega() {
    let started = Instant::now();
    let first = max_uniform_omega(3, DEFAULT_ASSIGNMENT_CAP).unwrap();
    let elapsed = started.elapsed();
    let second = max_uniform_omega(3, DEFAULT_ASSIGNMENT_CAP).unwrap();

    let validity = first.witness.validate(1e-9).unwrap();
    let violations = first.witness.check_support_constraints().unwrap();

    let optimal = first.solution.status == LpStatus::Optimal;
    let below_analytic = first.bound <= 0.9 + 1e-9;
    let not_maximal = first.bound < 1.0 - 1e-6;
    let stable = (first.bound - UNIFORM_OMEGA_D3_FIXTURE).abs() <= 1e-9
        && (first.bound - second.bound).abs() <= 1e-9;
    let fast = elapsed.as_secs_f64() < 2.0;
    let pass = optimal
        && below_analytic
        && not_maximal
        && validity.passes
        && violations.is_empty()
        && stable
        && fast;
    report(
        4,
        "lp-certified-uniform-omega",
        pass,
        &format!(
            "t*={:.12} (fixture {UNIFORM_OMEGA_D3_FIXTURE}), status {}, witness deviation {:.3e}, {} support violations, {:.1} ms",
            first.bound,
            first.solution.status,
            validity.max_deviation,
            violations.len(),
            elapsed.as_secs_f64() * 1e3
        ),
    );
    assert!(optimal);
    assert!(below_analytic, "t* = {} above 9/10", first.bound);
    assert!(not_maximal, "t* = {} admits a maximally epistemic model", first.bound);
    assert!(validity.passes, "witness deviation {}", validity.max_deviation);
    assert!(violations.is_empty(), "{} support violations", violations.len());
    assert!(stable, "t* drifted: {} vs {}", first.bound, second.bound);
    assert!(fast, "took {elapsed:?}, budget 2 s");
}

const NON_ORTHOGONAL_PAIRS_D3: [(&str, &str); 7] = [
    ("a", "p"),
    ("a", "m"),
    ("b", "p"),
    ("b", "m"),
    ("c", "p"),
    ("c", "m"),
    ("p", "m"),
];
const ORTHOGONAL_PAIRS_D3: [(&str, &str); 3] = [("a", "b"), ("a", "c"), ("b", "c")];

#[test]
fn acceptance_5_min_overlap_ceiling() {
    let family = ontomodel::build_family(3).unwrap();
    let mut violations = Vec::new();
    for (phi, psi) in NON_ORTHOGONAL_PAIRS_D3 {
        let result = max_pairwise_min_overlap(phi, psi, 3, DEFAULT_ASSIGNMENT_CAP).unwrap();
        let q = overlap(
            family.preparation(phi).unwrap(),
            family.preparation(psi).unwrap(),
        )
        .unwrap();
        let ceiling = max_epistemic_target(q).unwrap();
        if result.value > ceiling + 1e-9 {
            violations.push(format!(
                "({phi},{psi}): value {:.12} > ceiling {:.12}",
                result.value, ceiling
            ));
        }
    }
    let mut orthogonal_ok = true;
    for (phi, psi) in ORTHOGONAL_PAIRS_D3 {
        let result = max_pairwise_min_overlap(phi, psi, 3, DEFAULT_ASSIGNMENT_CAP).unwrap();
        orthogonal_ok &= result.value == 0.0;
    }

    let pass = violations.is_empty() && orthogonal_ok;
    report(
        5,
        "min-overlap-ceiling",
        pass,
        &format!(
            "orthogonal pairs exact zero: {orthogonal_ok}; {} of 7 non-orthogonal pairs exceed the all-measurement ceiling ({})",
            violations.len(),
            if violations.is_empty() {
                "none".to_string()
            } else {
                violations.join("; ")
            }
        ),
    );
    assert!(orthogonal_ok, "orthogonal pair with nonzero min-overlap");
    assert!(
        violations.is_empty(),
        "family-LP min-overlap exceeds the all-measurement ceiling — the d family measurements \
         bound distinguishability more weakly than the full quantum measurement set: {}",
        violations.join("; ")
    );
}

#[test]
fn acceptance_6_noise_threshold() {
    let started = Instant::now();
    let scan = noise_crossover_scan(3, 100).unwrap();
    let elapsed = started.elapsed();

    let row14 = scan.rows.iter().find(|r| r.d == 14).unwrap();
    let row15 = scan.rows.iter().find(|r| r.d == 15).unwrap();
    let margin14 = row14.overlap_cap - row14.epistemic_target;
    let margin15 = row15.epistemic_target - row15.overlap_cap;
    let pass = scan.first_strict == Some(15)
        && margin14 > 1e-3
        && margin15 > 1e-3
        && elapsed.as_secs_f64() < 0.1;
    report(
        6,
        "noise-threshold",
        pass,
        &format!(
            "first strict d = {:?}, margins L(14)-R(14)={margin14:.4e}, R(15)-L(15)={margin15:.4e}, {:.3} ms",
            scan.first_strict,
            elapsed.as_secs_f64() * 1e3
        ),
    );
    assert_eq!(scan.first_strict, Some(15));
    assert!(margin14 > 1e-3, "weak margin at d=14: {margin14}");
    assert!(margin15 > 1e-3, "weak margin at d=15: {margin15}");
    assert!(elapsed.as_secs_f64() < 0.1, "took {elapsed:?}, budget 0.1 s");
}

#[test]
fn acceptance_7_distance_consistency_on_witnesses() {
    let family = ontomodel::build_family(3).unwrap();
    let mut witnesses: Vec<(String, OntologicalModel)> = Vec::new();
    let omega = max_uniform_omega(3, DEFAULT_ASSIGNMENT_CAP).unwrap();
    witnesses.push(("uniform-omega".to_string(), omega.witness));
    for (phi, psi) in NON_ORTHOGONAL_PAIRS_D3.iter().chain(&ORTHOGONAL_PAIRS_D3) {
        let result = max_pairwise_min_overlap(phi, psi, 3, DEFAULT_ASSIGNMENT_CAP).unwrap();
        witnesses.push((format!("min-overlap({phi},{psi})"), result.witness));
    }

    let labels = ["a", "b", "c", "p", "m"];
    let mut identity_worst = 0.0f64;
    let mut quantum_violations = Vec::new();
    for (name, witness) in &witnesses {
        for phi in labels {
            for psi in labels {
                if phi == psi {
                    continue;
                }
                let mu_phi = witness.epistemic_state(phi).unwrap();
                let mu_psi = witness.epistemic_state(psi).unwrap();
                let classical = classical_trace_distance(mu_phi, mu_psi).unwrap();
                let shared = min_overlap(mu_phi, mu_psi).unwrap();
                identity_worst = identity_worst.max((shared + classical - 1.0).abs());
                let quantum = quantum_trace_distance(
                    family.preparation(phi).unwrap(),
                    family.preparation(psi).unwrap(),
                )
                .unwrap();
                if classical < quantum - 1e-6 {
                    quantum_violations.push(format!(
                        "{name} ({phi},{psi}): delta_C {classical:.6} < delta_Q {quantum:.6}"
                    ));
                }
            }
        }
    }

    let pass = identity_worst <= 1e-12 && quantum_violations.is_empty();
    report(
        7,
        "distance-consistency",
        pass,
        &format!(
            "min_overlap + delta_C identity worst {identity_worst:.3e}; {} of {} witness-pair checks violate delta_C >= delta_Q (first: {})",
            quantum_violations.len(),
            witnesses.len() * 20,
            quantum_violations.first().map(String::as_str).unwrap_or("none")
        ),
    );
    assert!(identity_worst <= 1e-12);
    assert!(
        quantum_violations.is_empty(),
        "family-restricted witnesses beat the all-measurement distinguishability bound \
         ({} violations); the family's measurements cap delta_C below delta_Q for some pairs: {}",
        quantum_violations.len(),
        quantum_violations.join("; ")
    );
}

#[test]
fn acceptance_8_lp_solver_unit_suite() {
    // bounded toy
    let mut bounded = LinearProgram::new(vec!["x".into()], vec![1.0]);
    bounded.push_le(vec![1.0], 0.5);
    let b = bounded.solve();
    let bounded_ok = b.status == LpStatus::Optimal
        && (b.optimum.unwrap() - 0.5).abs() <= 1e-12
        && b.max_residual.unwrap() <= 1e-9;

    // infeasible toy
    let mut infeasible = LinearProgram::new(vec!["x".into()], vec![1.0]);
    infeasible.push_le(vec![1.0], -1.0);
    let i = infeasible.solve();
    let infeasible_ok = i.status == LpStatus::Infeasible;

    // unbounded toy
    let unbounded = LinearProgram::new(vec!["x".into()], vec![1.0]);
    let u = unbounded.solve();
    let unbounded_ok = u.status == LpStatus::Unbounded;

    // degenerate program on which naive pivoting cycles
    let mut degenerate = LinearProgram::new(
        vec!["x1".into(), "x2".into(), "x3".into(), "x4".into()],
        vec![0.75, -150.0, 0.02, -6.0],
    );
    degenerate.push_le(vec![0.25, -60.0, -0.04, 9.0], 0.0);
    degenerate.push_le(vec![0.5, -90.0, -0.02, 3.0], 0.0);
    degenerate.push_le(vec![0.0, 0.0, 1.0, 0.0], 1.0);
    let d = degenerate.solve();
    let degenerate_ok = d.status == LpStatus::Optimal
        && (d.optimum.unwrap() - 0.05).abs() <= 1e-12
        && d.max_residual.unwrap() <= 1e-9;

    let pass = bounded_ok && infeasible_ok && unbounded_ok && degenerate_ok;
    report(
        8,
        "lp-solver-unit-suite",
        pass,
        &format!(
            "bounded={bounded_ok} infeasible={infeasible_ok} unbounded={unbounded_ok} degenerate={degenerate_ok} (Bland terminated in {} pivots)",
            d.pivots
        ),
    );
    assert!(bounded_ok);
    assert!(infeasible_ok);
    assert!(unbounded_ok);
    assert!(degenerate_ok);
}

/// Not a numbered criterion: verifies the bound that actually governs
/// family-restricted models, pinning down why tests 5 and 7 fail. The
/// classical trace distance of any model's epistemic pair dominates the
/// total-variation distance of every in-family outcome distribution (the
/// response map is stochastic post-processing), so the max pairwise
/// min-overlap equals 1 minus the best in-family distinguishing power —
/// which for this family is weaker than the all-measurement quantum bound.
#[test]
fn family_lp_is_governed_by_in_family_distinguishability() {
    let family = ontomodel::build_family(3).unwrap();
    for (phi, psi) in NON_ORTHOGONAL_PAIRS_D3 {
        let phi_state = family.preparation(phi).unwrap();
        let psi_state = family.preparation(psi).unwrap();
        let mut best_tv = 0.0f64;
        for meas in &family.measurements {
            let p = born(phi_state, meas).unwrap();
            let q = born(psi_state, meas).unwrap();
            let tv = 0.5
                * p.iter()
                    .zip(&q)
                    .map(|(a, b)| (a - b).abs())
                    .sum::<f64>();
            best_tv = best_tv.max(tv);
        }
        let in_family_cap = 1.0 - best_tv;
        let result = max_pairwise_min_overlap(phi, psi, 3, DEFAULT_ASSIGNMENT_CAP).unwrap();
        assert!(
            result.value <= in_family_cap + 1e-9,
            "({phi},{psi}): {} above the in-family cap {in_family_cap}",
            result.value
        );
        // at d=3 the cap is attained for every non-orthogonal pair
        assert!(
            (result.value - in_family_cap).abs() <= 1e-9,
            "({phi},{psi}): {} vs cap {in_family_cap}",
            result.value
        );
        // and it sits strictly above the all-measurement target, which is
        // exactly the gap tests 5 and 7 document
        let q = overlap(phi_state, psi_state).unwrap();
        let all_measurement_target = max_epistemic_target(q).unwrap();
        assert!(result.value > all_measurement_target + 1e-3);
    }
}
