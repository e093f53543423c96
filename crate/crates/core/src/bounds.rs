//! Closed-form overlap bounds and the noise-threshold reconstruction.
//!
//! Everything here is analytic and deliberately independent of the quantum
//! and LP modules, so the two routes can be compared in tests.

use thiserror::Error;

/// Margin used when deciding strictness of the noise-scan comparison.
pub const STRICTNESS_MARGIN: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundsError {
    #[error("dimension {dim} is below the minimum {min}")]
    DimensionTooSmall { dim: usize, min: usize },
    #[error("omega_basis has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("{name} = {value} outside [0, 1]")]
    ValueOutOfRange { name: &'static str, value: f64 },
    #[error("invalid dimension range {lo}..={hi}")]
    InvalidRange { lo: usize, hi: usize },
}

/// A hypothesized profile of epistemic-overlap degrees against the
/// superposition state p: one value per basis state plus the (m|p) value.
#[derive(Debug, Clone, PartialEq)]
pub struct OmegaProfile {
    dimension: usize,
    omega_basis: Vec<f64>,
    omega_mp: f64,
}

impl OmegaProfile {
    pub fn new(dimension: usize, omega_basis: Vec<f64>, omega_mp: f64) -> Result<Self, BoundsError> {
        if dimension < 3 {
            return Err(BoundsError::DimensionTooSmall {
                dim: dimension,
                min: 3,
            });
        }
        if omega_basis.len() != dimension {
            return Err(BoundsError::LengthMismatch {
                expected: dimension,
                got: omega_basis.len(),
            });
        }
        for &w in &omega_basis {
            if !(0.0..=1.0).contains(&w) {
                return Err(BoundsError::ValueOutOfRange {
                    name: "omega_basis",
                    value: w,
                });
            }
        }
        if !(0.0..=1.0).contains(&omega_mp) {
            return Err(BoundsError::ValueOutOfRange {
                name: "omega_mp",
                value: omega_mp,
            });
        }
        Ok(Self {
            dimension,
            omega_basis,
            omega_mp,
        })
    }

    /// Uniform profile with every entry (basis and (m|p)) equal to `omega`.
    pub fn uniform(dimension: usize, omega: f64) -> Result<Self, BoundsError> {
        Self::new(dimension, vec![omega; dimension], omega)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn omega_basis(&self) -> &[f64] {
        &self.omega_basis
    }

    pub fn omega_mp(&self) -> f64 {
        self.omega_mp
    }
}

/// Slack of the overlap trade-off at a profile:
/// `[1 - (1/d) sum_i omega(a_i|p)] - omega(m|p) (1 - 2/d)^2`.
///
/// Nonnegative slack (within [`STRICTNESS_MARGIN`]) is exactly consistency
/// with the reproduction of the family's statistics; at d = 3 this reads
/// `1 - (w_a + w_b + w_c)/3 - omega(m|p)/9`.
pub fn tradeoff_slack(profile: &OmegaProfile) -> f64 {
    let d = profile.dimension as f64;
    let basis_mass = profile.omega_basis.iter().sum::<f64>() / d;
    (1.0 - basis_mass) - profile.omega_mp * (1.0 - 2.0 / d).powi(2)
}

/// The uniform-overlap ceiling `d^2 / (2 d^2 - 4 d + 4)`: 9/10 at d = 3,
/// decreasing towards 1/2 as d grows.
pub fn omega_bound(d: usize) -> Result<f64, BoundsError> {
    if d < 3 {
        return Err(BoundsError::DimensionTooSmall { dim: d, min: 3 });
    }
    let d = d as f64;
    Ok(d * d / (2.0 * d * d - 4.0 * d + 4.0))
}

/// The uniform basis overlap `4(d-1)/d^2` that exactly pays for full
/// epistemic overlap between p and m (zero slack at omega(m|p) = 1).
pub fn symmetric_full_overlap_cost(d: usize) -> Result<f64, BoundsError> {
    if d < 3 {
        return Err(BoundsError::DimensionTooSmall { dim: d, min: 3 });
    }
    let d = d as f64;
    Ok(4.0 * (d - 1.0) / (d * d))
}

/// The min-overlap a maximally epistemic theory must reach for quantum
/// overlap B: `1 - sqrt(1 - B)`.
pub fn max_epistemic_target(b: f64) -> Result<f64, BoundsError> {
    if !(0.0..=1.0).contains(&b) {
        return Err(BoundsError::ValueOutOfRange {
            name: "overlap",
            value: b,
        });
    }
    Ok(1.0 - (1.0 - b).sqrt())
}

/// One dimension of the noise crossover scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseScanRow {
    pub d: usize,
    /// L(d) = 1 - d (1 - sqrt(1 - 1/d)): the largest (p, m) min-overlap
    /// compatible with every (p, a_i) pair reaching its own maximal-
    /// epistemic target while the shared (p, m) mass stays clear of every
    /// basis-state support.
    pub overlap_cap: f64,
    /// R(d) = 1 - sqrt(1 - (1 - 2/d)^2): the maximal-epistemic target for
    /// the (p, m) pair itself.
    pub epistemic_target: f64,
    /// Whether the cap falls strictly below the target.
    pub strict: bool,
}

/// Scan result: one row per dimension plus the first strict dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct NoiseScan {
    pub rows: Vec<NoiseScanRow>,
    pub first_strict: Option<usize>,
}

fn overlap_cap(d: f64) -> f64 {
    1.0 - d * (1.0 - (1.0 - 1.0 / d).sqrt())
}

fn epistemic_target(d: f64) -> f64 {
    1.0 - (1.0 - (1.0 - 2.0 / d).powi(2)).max(0.0).sqrt()
}

/// Scans dimensions `d_min..=d_max`, comparing the reconstructed cap L(d)
/// with the pair target R(d). L(d) is a reconstruction of the intermediate
/// calculation the threshold rests on, not a quoted closed form; the scan
/// reproduces the d > 14 onset.
pub fn noise_crossover_scan(d_min: usize, d_max: usize) -> Result<NoiseScan, BoundsError> {
    if d_min < 3 {
        return Err(BoundsError::DimensionTooSmall { dim: d_min, min: 3 });
    }
    if d_max < d_min {
        return Err(BoundsError::InvalidRange {
            lo: d_min,
            hi: d_max,
        });
    }
    let mut rows = Vec::with_capacity(d_max - d_min + 1);
    let mut first_strict = None;
    for d in d_min..=d_max {
        let df = d as f64;
        let l = overlap_cap(df);
        let r = epistemic_target(df);
        let strict = l < r - STRICTNESS_MARGIN;
        if strict && first_strict.is_none() {
            first_strict = Some(d);
        }
        rows.push(NoiseScanRow {
            d,
            overlap_cap: l,
            epistemic_target: r,
            strict,
        });
    }
    Ok(NoiseScan { rows, first_strict })
}

/// Certified ceiling on the achieved-over-target ratio for the (p, m) pair
/// under the maximal-epistemic side conditions: `min(L, R)/R`, which drops
/// below 1 exactly where the scan flags strictness.
pub fn ratio_report(d: usize) -> Result<f64, BoundsError> {
    if d < 3 {
        return Err(BoundsError::DimensionTooSmall { dim: d, min: 3 });
    }
    let df = d as f64;
    let l = overlap_cap(df);
    let r = epistemic_target(df);
    Ok(l.min(r) / r)
}
