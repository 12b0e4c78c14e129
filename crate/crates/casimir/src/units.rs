//! Unit system, physical constants and the few conversions the crate needs.
//!
//! Everything downstream works in eV / μm / K. Keeping frequencies as photon
//! energies makes every Lifshitz integrand O(1)-O(10³) and avoids the SI
//! exponent underflow that plagues ħ-and-c-laden expressions.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// ħc in eV·μm (CODATA 2018).
pub const HBAR_C_EV_UM: f64 = 0.1973269804;

/// Boltzmann constant in eV/K (exact in the 2019 SI).
pub const BOLTZMANN_EV_PER_K: f64 = 8.617333262e-5;

/// ħ in eV·s, used only to convert conductivities given in s⁻¹.
pub const HBAR_EV_S: f64 = 6.582119569e-16;

/// Pressure conversion: 1 eV/μm³ in Pa. Equals the elementary charge in SI
/// divided by 1e-18, to seven significant digits.
pub const PASCAL_PER_EV_UM3: f64 = 0.1602177;

/// Riemann zeta(3), the only special constant the closed forms need.
pub const ZETA_3: f64 = 1.2020569031595943;

#[derive(Debug, Error, PartialEq)]
pub enum UnitsError {
    #[error("separation must be positive, got {0} um")]
    NonPositiveSeparation(f64),
    #[error("temperature must be nonnegative, got {0} K")]
    NegativeTemperature(f64),
}

/// Separation/temperature pair at which an observable is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvaluationPoint {
    pub separation_um: f64,
    pub temperature_k: f64,
}

impl EvaluationPoint {
    pub fn new(separation_um: f64, temperature_k: f64) -> Result<Self, UnitsError> {
        if !(separation_um > 0.0) {
            return Err(UnitsError::NonPositiveSeparation(separation_um));
        }
        if !(temperature_k >= 0.0) {
            return Err(UnitsError::NegativeTemperature(temperature_k));
        }
        Ok(Self { separation_um, temperature_k })
    }
}

/// Advisory classification of the thermal regime. No algorithm branches on
/// this; it exists for diagnostics and manifests.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Low,
    Intermediate,
    High,
}

/// Effective temperature of a separation together with the regime label.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalRegime {
    pub t_eff_k: f64,
    pub regime: Regime,
}

impl ThermalRegime {
    /// Classify a point against T_eff defined by k_B·T_eff = ħc/(2a).
    /// Thresholds: low below T_eff/10, high above 10·T_eff.
    pub fn classify(point: EvaluationPoint) -> Result<Self, UnitsError> {
        let t_eff_k = effective_temperature(point.separation_um)?;
        let regime = if point.temperature_k < t_eff_k / 10.0 {
            Regime::Low
        } else if point.temperature_k > 10.0 * t_eff_k {
            Regime::High
        } else {
            Regime::Intermediate
        };
        Ok(Self { t_eff_k, regime })
    }
}

/// Effective temperature in K: T_eff = ħc/(2·a·k_B).
pub fn effective_temperature(separation_um: f64) -> Result<f64, UnitsError> {
    if !(separation_um > 0.0) {
        return Err(UnitsError::NonPositiveSeparation(separation_um));
    }
    Ok(HBAR_C_EV_UM / (2.0 * separation_um * BOLTZMANN_EV_PER_K))
}

/// Convert a pressure from the internal eV/μm³ to Pa.
pub fn pressure_to_pascal(p_ev_um3: f64) -> f64 {
    p_ev_um3 * PASCAL_PER_EV_UM3
}

/// Inverse of [`pressure_to_pascal`].
pub fn pascal_to_pressure(p_pa: f64) -> f64 {
    p_pa / PASCAL_PER_EV_UM3
}

/// Matsubara photon energy ħξ_l = 2π k_B T l in eV.
pub fn matsubara_energy(temperature_k: f64, l: usize) -> f64 {
    2.0 * std::f64::consts::PI * BOLTZMANN_EV_PER_K * temperature_k * l as f64
}

/// Convert a conductivity in s⁻¹ (Gaussian convention) to the energy
/// ħ·4πσ in eV that enters the permittivity as ħ4πσ/ξ.
pub fn conductivity_to_ev(sigma_per_s: f64) -> f64 {
    4.0 * std::f64::consts::PI * HBAR_EV_S * sigma_per_s
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn effective_temperature_at_one_micron() {
        // 0.0986635 eV / k_B, cross-checked by direct arithmetic
        assert_relative_eq!(
            effective_temperature(1.0).unwrap(),
            1144.942259980568,
            max_relative = 1e-12
        );
    }

    #[test]
    fn effective_temperature_scales_inversely() {
        let t1 = effective_temperature(1.0).unwrap();
        let t2 = effective_temperature(2.0).unwrap();
        assert_relative_eq!(t2, t1 / 2.0, max_relative = 1e-15);
    }

    #[test]
    fn effective_temperature_rejects_nonpositive() {
        assert!(effective_temperature(0.0).is_err());
        assert!(effective_temperature(-1.0).is_err());
    }

    #[test]
    fn pressure_conversion_round_trip_and_values() {
        assert_relative_eq!(pressure_to_pascal(1.0), 0.1602177, max_relative = 1e-15);
        assert_eq!(pressure_to_pascal(0.0), 0.0);
        // ideal-metal zero-T pressure at a = 1 um
        assert_relative_eq!(pressure_to_pascal(-8.1148e-3), -1.3001e-3, max_relative = 1e-4);
        for p in [1.0, -8.1148e-3, 3.7e5, -2.2e-9] {
            assert_relative_eq!(pascal_to_pressure(pressure_to_pascal(p)), p, max_relative = 1e-15);
        }
    }

    #[test]
    fn t_eff_times_a_is_constant_over_sweep() {
        let reference = HBAR_C_EV_UM / (2.0 * BOLTZMANN_EV_PER_K);
        let mut a = 0.1;
        while a <= 10.0 {
            let prod = effective_temperature(a).unwrap() * a;
            assert_relative_eq!(prod, reference, max_relative = 1e-12);
            a += 0.37;
        }
    }

    #[test]
    fn matsubara_energy_at_room_temperature() {
        assert_relative_eq!(matsubara_energy(300.0, 1), 0.162432905216605, max_relative = 1e-12);
        assert_eq!(matsubara_energy(300.0, 0), 0.0);
    }

    #[test]
    fn conductivity_conversion_matches_silica_value() {
        assert_relative_eq!(conductivity_to_ev(29.7), 2.456586611782778e-13, max_relative = 1e-10);
    }

    #[test]
    fn regime_classification() {
        let p = |t| EvaluationPoint::new(1.0, t).unwrap();
        // T_eff(1 um) = 1144.9 K
        assert_eq!(ThermalRegime::classify(p(50.0)).unwrap().regime, Regime::Low);
        assert_eq!(ThermalRegime::classify(p(300.0)).unwrap().regime, Regime::Intermediate);
        assert_eq!(ThermalRegime::classify(p(20000.0)).unwrap().regime, Regime::High);
    }

    #[test]
    fn evaluation_point_validation() {
        assert!(EvaluationPoint::new(0.0, 300.0).is_err());
        assert!(EvaluationPoint::new(1.0, -0.1).is_err());
        assert!(EvaluationPoint::new(1.0, 0.0).is_ok());
    }
}
