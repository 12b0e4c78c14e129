//! Casimir pressure, free energy, entropy and the closed-form limits.
//!
//! The Matsubara representation is the production path: reflection
//! coefficients on the imaginary axis are smooth and positive-definite, so
//! the k⊥ integrals converge rapidly under the y = 2aq_l substitution where
//! the e^(−y) weight is explicit. The real-frequency representation is kept
//! as an independent validation route.

mod entropy;
mod matsubara;
mod real_freq;
mod zero_temp;
pub mod asymptotic;

pub use asymptotic::{high_t_dielectric, ideal_metal_asymptotics, polylog3};
pub use entropy::{entropy_curve, EntropyCurve, NernstClassification};
pub use matsubara::{free_energy, pressure_matsubara};
pub use real_freq::{pressure_real_frequency, RealFrequencyPressure};
pub use zero_temp::pressure_zero_temperature;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::quad::QuadError;
use crate::reflection::ReflectionError;
use crate::response::ResponseModel;
use crate::units::{EvaluationPoint, UnitsError, BOLTZMANN_EV_PER_K, ZETA_3};

#[derive(Debug, Error)]
pub enum LifshitzError {
    #[error(transparent)]
    Units(#[from] UnitsError),
    #[error(transparent)]
    Reflection(#[from] ReflectionError),
    #[error(transparent)]
    Response(#[from] crate::response::ResponseError),
    #[error("k-perp quadrature failed at Matsubara index {l}: {source}")]
    KPerpQuadrature { l: usize, source: QuadError },
    #[error("frequency quadrature failed: {0}")]
    FrequencyQuadrature(QuadError),
    #[error(
        "Matsubara sum not converged after {l_cap} terms at a = {separation_um} um, \
         T = {temperature_k} K (last relative contribution {last_rel:.3e})"
    )]
    NotConverged { l_cap: usize, separation_um: f64, temperature_k: f64, last_rel: f64 },
    #[error("operation requires T > 0, got {0} K (use the zero-temperature path)")]
    RequiresFiniteTemperature(f64),
    #[error(
        "oscillatory quadrature failed in the propagating sector: {0}; \
         increase damping or use the Matsubara representation"
    )]
    Oscillatory(QuadError),
    #[error("{0}")]
    Domain(String),
    #[error("entropy differencing noise exceeds the signal at T = {t_k} K (noise {noise:.3e}, signal {signal:.3e}); increase the step")]
    EntropyNoise { t_k: f64, noise: f64, signal: f64 },
}

/// Numeric knobs shared by the summation/integration routines.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Settings {
    /// Stop the Matsubara sum once a term contributes less than this,
    /// relatively, for three consecutive terms.
    pub truncation_tol: f64,
    /// Relative tolerance of each k⊥ panel integral.
    pub quadrature_rel_tol: f64,
    /// Relative tolerance of the zero-temperature ξ integral.
    pub zero_t_rel_tol: f64,
    /// Relative tolerance of the nonlocal k₃ impedance quadrature.
    pub k3_rel_tol: f64,
    /// Hard cap on the number of Matsubara terms.
    pub l_cap: usize,
    /// Use fixed deterministic quadrature panels instead of adaptive
    /// refinement. Entropy differencing needs this: fixed nodes make the
    /// quadrature error a smooth function of temperature, so it cancels in
    /// central differences.
    pub fixed_grid: bool,
    /// Record the per-l contributions in the result.
    pub keep_terms: bool,
}

impl Default for Settings {
    fn default() -> Self {
        Self {
            truncation_tol: 1e-9,
            quadrature_rel_tol: 1e-9,
            zero_t_rel_tol: 1e-9,
            k3_rel_tol: 1e-8,
            l_cap: 100_000,
            fixed_grid: false,
            keep_terms: false,
        }
    }
}

/// Casimir pressure per unit plate area with convergence metadata.
/// Negative pressure means attraction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PressureResult {
    pub pressure_ev_um3: f64,
    /// Number of Matsubara terms summed (0 for the zero-temperature integral).
    pub terms_used: usize,
    /// Estimated numerical error (quadrature plus truncation), same units.
    pub quadrature_error: f64,
    /// Optional (l, contribution) breakdown.
    pub per_term: Option<Vec<(usize, f64)>>,
}

/// Casimir free energy per unit area with the same convergence metadata.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FreeEnergyResult {
    pub free_energy_ev_um2: f64,
    pub terms_used: usize,
    pub quadrature_error: f64,
}

/// Thermal correction Δ_T P = P(a,T) − P(a,0) and its ratio to P(a,0).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThermalCorrection {
    pub absolute_ev_um3: f64,
    pub relative: f64,
}

/// Δ_T P and δ_T P at one evaluation point.
pub fn thermal_correction(
    point: EvaluationPoint,
    model: &ResponseModel,
    settings: &Settings,
) -> Result<ThermalCorrection, LifshitzError> {
    let warm = pressure_matsubara(point, model, settings)?;
    let cold = pressure_zero_temperature(point.separation_um, model, settings)?;
    let absolute = warm.pressure_ev_um3 - cold.pressure_ev_um3;
    Ok(ThermalCorrection { absolute_ev_um3: absolute, relative: absolute / cold.pressure_ev_um3 })
}

/// Ratio of the Matsubara pressure to the ideal-metal high-temperature
/// closed form −k_B·T·ζ(3)/(4πa³).
pub fn high_t_ratio(
    model: &ResponseModel,
    separation_um: f64,
    temperature_k: f64,
    settings: &Settings,
) -> Result<f64, LifshitzError> {
    let point = EvaluationPoint::new(separation_um, temperature_k)?;
    let p = pressure_matsubara(point, model, settings)?;
    let ideal_high = -BOLTZMANN_EV_PER_K * temperature_k * ZETA_3
        / (4.0 * std::f64::consts::PI * separation_um.powi(3));
    Ok(p.pressure_ev_um3 / ideal_high)
}
