//! Casimir entropy per unit area and its Nernst-limit classification.
//!
//! S(T) = −∂F/∂T by central differences on a fixed deterministic quadrature
//! grid, so the quadrature error varies smoothly with temperature and cancels
//! in the difference. The T → 0 limit is estimated by polynomial (Richardson)
//! extrapolation through the three smallest-temperature samples.

use serde::{Deserialize, Serialize};

use super::matsubara::free_energy;
use super::{LifshitzError, Settings};
use crate::response::ResponseModel;
use crate::units::EvaluationPoint;

/// Outcome of the S(0+) test against the classification tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NernstClassification {
    NernstSatisfied,
    NegativeViolation,
    PositiveViolation,
}

/// Entropy samples, the extrapolated zero-temperature limit and its
/// classification.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyCurve {
    /// (T in K, S in eV/(K·μm²)) samples, ascending in T.
    pub samples: Vec<(f64, f64)>,
    /// Polynomial extrapolation of the three smallest-T samples to T = 0.
    pub limit_estimate: f64,
    pub classification: NernstClassification,
    /// |S(0+)| threshold actually used for the classification.
    pub tolerance_used: f64,
}

/// Quadratic (three-point Neville) extrapolation to T = 0.
fn extrapolate_to_zero(pts: &[(f64, f64)]) -> f64 {
    let [(x0, y0), (x1, y1), (x2, y2)] = [pts[0], pts[1], pts[2]];
    let l0 = (x1 * x2) / ((x0 - x1) * (x0 - x2));
    let l1 = (x0 * x2) / ((x1 - x0) * (x1 - x2));
    let l2 = (x0 * x1) / ((x2 - x0) * (x2 - x1));
    y0 * l0 + y1 * l1 + y2 * l2
}

/// Casimir entropy per unit area over a temperature grid.
///
/// `step_k`: central-difference step; defaults per point to
/// max(0.5 K, T/100), clamped to T/4 so the lower evaluation stays positive.
/// The step doubles automatically (up to T/2) while the differenced signal
/// sits below ten times the quadrature noise estimate.
///
/// `tolerance_fraction`: |S(0+)| classification threshold as a fraction of
/// |S(T_max)| (default 1e-3).
pub fn entropy_curve(
    separation_um: f64,
    model: &ResponseModel,
    t_grid_k: &[f64],
    step_k: Option<f64>,
    tolerance_fraction: Option<f64>,
    settings: &Settings,
) -> Result<EntropyCurve, LifshitzError> {
    if t_grid_k.is_empty() {
        return Err(LifshitzError::Domain("entropy grid is empty".into()));
    }
    if t_grid_k.windows(2).any(|w| w[0] >= w[1]) || t_grid_k[0] <= 0.0 {
        return Err(LifshitzError::Domain(
            "entropy grid must be positive and strictly ascending".into(),
        ));
    }
    let min_spacing = t_grid_k
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::INFINITY, f64::min);
    if let Some(h) = step_k {
        if !(h > 0.0) || (t_grid_k.len() > 1 && h >= min_spacing / 2.0) {
            return Err(LifshitzError::Domain(format!(
                "step {h} K must be positive and below half the minimum grid spacing"
            )));
        }
    }

    // Entropy differencing relies on the deterministic quadrature grid: with
    // fixed nodes the quadrature error varies smoothly with temperature and
    // cancels in the central difference. What does not cancel is the
    // truncation of the Matsubara sum, whose cutoff index jumps by integers
    // as T moves; the resulting noise floor is one truncation quantum per
    // free-energy evaluation plus the f64 rounding of the accumulation.
    let mut fixed = *settings;
    fixed.fixed_grid = true;
    fixed.truncation_tol = settings.truncation_tol.min(1e-12);

    let mut samples = Vec::with_capacity(t_grid_k.len());
    for &t in t_grid_k {
        let mut h = step_k.unwrap_or((0.5f64).max(t / 100.0)).min(t / 4.0);
        let s = loop {
            let upper = free_energy(EvaluationPoint::new(separation_um, t + h)?, model, &fixed)?;
            let lower = free_energy(EvaluationPoint::new(separation_um, t - h)?, model, &fixed)?;
            let diff = upper.free_energy_ev_um2 - lower.free_energy_ev_um2;
            let amplitude = upper.free_energy_ev_um2.abs() + lower.free_energy_ev_um2.abs();
            let noise = (fixed.truncation_tol + 16.0 * f64::EPSILON) * amplitude;
            if diff.abs() >= 10.0 * noise || step_k.is_some() {
                break -diff / (2.0 * h);
            }
            // signal buried in the noise floor: widen the stencil
            let wider = 2.0 * h;
            if wider >= t / 2.0 {
                if diff.abs() < noise {
                    return Err(LifshitzError::EntropyNoise { t_k: t, noise, signal: diff.abs() });
                }
                break -diff / (2.0 * h);
            }
            h = wider;
        };
        samples.push((t, s));
    }

    let limit_estimate = if samples.len() >= 3 {
        extrapolate_to_zero(&samples[..3])
    } else {
        samples[0].1
    };
    let s_max = samples.last().map(|&(_, s)| s.abs()).unwrap_or(0.0);
    let tolerance_used = tolerance_fraction.unwrap_or(1e-3) * s_max;
    let classification = if limit_estimate.abs() < tolerance_used {
        NernstClassification::NernstSatisfied
    } else if limit_estimate < 0.0 {
        NernstClassification::NegativeViolation
    } else {
        NernstClassification::PositiveViolation
    };

    Ok(EntropyCurve { samples, limit_estimate, classification, tolerance_used })
}
