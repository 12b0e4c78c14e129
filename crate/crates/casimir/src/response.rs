//! Dielectric permittivity and magnetic permeability models.
//!
//! All imaginary-axis evaluations take the photon energy `xi` = ħξ in eV and
//! return real permittivities ≥ 1 for conductors. The ξ = 0 point is
//! deliberately excluded here: conductor permittivities diverge there and the
//! zero-frequency physics lives in the reflection-coefficient limits.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::optical::TabulatedPermittivity;
use crate::units::{conductivity_to_ev, HBAR_C_EV_UM};

#[derive(Debug, Error)]
pub enum ResponseError {
    #[error("imaginary-axis frequency must be positive, got xi = {0} eV")]
    NonPositiveFrequency(f64),
    #[error("on-shell evaluation requires omega > hbar*c*kperp (omega = {omega} eV, hbar*c*kperp = {ck} eV)")]
    EvanescentInput { omega: f64, ck: f64 },
    #[error("{model} has no complex real-frequency evaluation")]
    NoRealAxisForm { model: &'static str },
    #[error(transparent)]
    Tabulated(#[from] crate::optical::OpticalError),
}

/// Temperature law for the Drude relaxation, γ(T) = γ0 + C·(T/T_ref)^n.
///
/// γ0 is the residual (impurity) contribution; a perfect crystal lattice has
/// γ0 = 0 so that γ(T) → 0 with vanishing temperature. The default exponent
/// n = 5 is the low-temperature Bloch-Grüneisen power.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RelaxationModel {
    pub residual_ev: f64,
    pub amplitude_ev: f64,
    pub exponent: f64,
    pub reference_t_k: f64,
}

impl RelaxationModel {
    /// Temperature-independent relaxation.
    pub fn constant(gamma_ev: f64) -> Self {
        Self { residual_ev: gamma_ev, amplitude_ev: 0.0, exponent: 5.0, reference_t_k: 300.0 }
    }

    /// Power-law relaxation pinned to a value at the reference temperature.
    pub fn power_law(residual_ev: f64, amplitude_ev: f64, exponent: f64, reference_t_k: f64) -> Self {
        Self { residual_ev, amplitude_ev, exponent, reference_t_k }
    }

    /// γ(T) in eV; equals the residual at T = 0.
    pub fn at(&self, temperature_k: f64) -> f64 {
        if self.amplitude_ev == 0.0 || temperature_k == 0.0 {
            return self.residual_ev;
        }
        self.residual_ev + self.amplitude_ev * (temperature_k / self.reference_t_k).powf(self.exponent)
    }
}

/// Drude conductor: ε(iξ) = 1 + ω_p²/(ξ(ξ + γ(T))).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DrudeParams {
    pub plasma_frequency_ev: f64,
    pub relaxation: RelaxationModel,
}

impl DrudeParams {
    pub fn eps_imag_axis(&self, xi_ev: f64, temperature_k: f64) -> Result<f64, ResponseError> {
        if !(xi_ev > 0.0) {
            return Err(ResponseError::NonPositiveFrequency(xi_ev));
        }
        let gamma = self.relaxation.at(temperature_k);
        Ok(1.0 + self.plasma_frequency_ev.powi(2) / (xi_ev * (xi_ev + gamma)))
    }

    /// Complex permittivity on the real axis, ε(ω) = 1 − ω_p²/(ω(ω + iγ)).
    pub fn eps_real_axis(&self, omega_ev: f64, temperature_k: f64) -> Complex64 {
        let gamma = self.relaxation.at(temperature_k);
        let denom = Complex64::new(omega_ev, 0.0) * Complex64::new(omega_ev, gamma);
        Complex64::new(1.0, 0.0) - self.plasma_frequency_ev.powi(2) / denom
    }
}

/// Dissipationless plasma: ε(iξ) = 1 + ω_p²/ξ².
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlasmaParams {
    pub plasma_frequency_ev: f64,
}

impl PlasmaParams {
    pub fn eps_imag_axis(&self, xi_ev: f64) -> Result<f64, ResponseError> {
        if !(xi_ev > 0.0) {
            return Err(ResponseError::NonPositiveFrequency(xi_ev));
        }
        Ok(1.0 + (self.plasma_frequency_ev / xi_ev).powi(2))
    }
}

/// Sum of undamped oscillators: ε_opt(iξ) = 1 + Σ_j C_j/(1 + (ξ/ω_j)²).
///
/// Monotone decreasing from ε0 = 1 + ΣC_j toward 1, which is all the
/// dielectric thermodynamics below needs from the core response.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OscillatorModel {
    /// (strength C_j, resonance ħω_j in eV) pairs, all positive.
    pub terms: Vec<(f64, f64)>,
}

impl OscillatorModel {
    pub fn new(terms: Vec<(f64, f64)>) -> Self {
        Self { terms }
    }

    /// Static permittivity ε0 = 1 + ΣC_j.
    pub fn static_eps(&self) -> f64 {
        1.0 + self.terms.iter().map(|(c, _)| c).sum::<f64>()
    }

    pub fn eps_imag_axis(&self, xi_ev: f64) -> f64 {
        1.0 + self
            .terms
            .iter()
            .map(|&(c, w)| c / (1.0 + (xi_ev / w).powi(2)))
            .sum::<f64>()
    }

    /// Lossless real-axis form 1 + Σ C_j/(1 − (ω/ω_j)²).
    pub fn eps_real_axis(&self, omega_ev: f64) -> f64 {
        1.0 + self
            .terms
            .iter()
            .map(|&(c, w)| c / (1.0 - (omega_ev / w).powi(2)))
            .sum::<f64>()
    }
}

/// Arrhenius law σ0(T) = σ_a·exp(−b/T) for the dc conductivity, in s⁻¹.
/// b = 0 freezes the conductivity at σ_a for every temperature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConductivityModel {
    pub amplitude_per_s: f64,
    pub activation_k: f64,
}

impl ConductivityModel {
    pub fn sigma0_per_s(&self, temperature_k: f64) -> f64 {
        if self.activation_k == 0.0 {
            return self.amplitude_per_s;
        }
        if temperature_k <= 0.0 {
            return 0.0;
        }
        self.amplitude_per_s * (-self.activation_k / temperature_k).exp()
    }

    /// ħ·4πσ0(T) in eV.
    pub fn sigma0_ev(&self, temperature_k: f64) -> f64 {
        conductivity_to_ev(self.sigma0_per_s(temperature_k))
    }
}

/// Dielectric with optional dc conductivity: ε(iξ) = ε_opt(iξ) + ħ4πσ0(T)/ξ.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DielectricParams {
    pub optical: OscillatorModel,
    pub conductivity: ConductivityModel,
    pub include_conductivity: bool,
}

impl DielectricParams {
    pub fn eps_imag_axis(&self, xi_ev: f64, temperature_k: f64) -> Result<f64, ResponseError> {
        if !(xi_ev > 0.0) {
            return Err(ResponseError::NonPositiveFrequency(xi_ev));
        }
        let mut eps = self.optical.eps_imag_axis(xi_ev);
        if self.include_conductivity {
            eps += self.conductivity.sigma0_ev(temperature_k) / xi_ev;
        }
        Ok(eps)
    }

    pub fn eps_real_axis(&self, omega_ev: f64, temperature_k: f64) -> Complex64 {
        let mut eps = Complex64::new(self.optical.eps_real_axis(omega_ev), 0.0);
        if self.include_conductivity {
            eps += Complex64::new(0.0, self.conductivity.sigma0_ev(temperature_k) / omega_ev);
        }
        eps
    }
}

/// Which wavevector magnitude the nonlocal permittivities see.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WavevectorForm {
    /// Transverse projection k⊥ only.
    TransverseOnly,
    /// Full magnitude k = (k⊥² + k₃²)^½.
    FullWavevector,
}

/// Transverse/longitudinal permittivity pair at one (ξ, k) point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonlocalPermittivityPair {
    pub transverse: f64,
    pub longitudinal: f64,
}

/// Nonlocal Drude-like response with velocity-scale spatial dispersion:
///
///   ε^Tr(iξ, k) = 1 + D(ξ)·(1 + v^Tr·k·ħc/ξ),
///   ε^L(iξ, k)  = 1 + D(ξ)/(1 + v^L·k·ħc/ξ),    D = ω_p²/(ξ(ξ + γ(T))).
///
/// For propagating waves the corrections are bounded by v/c and the response
/// collapses to the local Drude form; off the mass shell they do not.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NonlocalDrudeParams {
    pub base: DrudeParams,
    /// v^Tr as a fraction of c.
    pub v_transverse: f64,
    /// v^L as a fraction of c.
    pub v_longitudinal: f64,
    pub form: WavevectorForm,
    /// Fermi velocity as a fraction of c, kept for reporting multiples.
    pub fermi_velocity: f64,
}

impl NonlocalDrudeParams {
    /// Wavevector argument in μm⁻¹ for the configured form.
    pub fn wavevector(&self, kperp_per_um: f64, k3_per_um: f64) -> f64 {
        match self.form {
            WavevectorForm::TransverseOnly => kperp_per_um,
            WavevectorForm::FullWavevector => kperp_per_um.hypot(k3_per_um),
        }
    }

    pub fn eps_imag_axis(
        &self,
        xi_ev: f64,
        kperp_per_um: f64,
        k3_per_um: f64,
        temperature_k: f64,
    ) -> Result<NonlocalPermittivityPair, ResponseError> {
        if !(xi_ev > 0.0) {
            return Err(ResponseError::NonPositiveFrequency(xi_ev));
        }
        let gamma = self.base.relaxation.at(temperature_k);
        let d = self.base.plasma_frequency_ev.powi(2) / (xi_ev * (xi_ev + gamma));
        let k_ev = self.wavevector(kperp_per_um, k3_per_um) * HBAR_C_EV_UM;
        Ok(NonlocalPermittivityPair {
            transverse: 1.0 + d * (1.0 + self.v_transverse * k_ev / xi_ev),
            longitudinal: 1.0 + d / (1.0 + self.v_longitudinal * k_ev / xi_ev),
        })
    }

    /// Relative size |v·k⊥·ħc/ω| of the nonlocal correction for an on-shell
    /// (propagating) wave; bounded by max(v^Tr, v^L)/c on the whole sector.
    pub fn propagating_wave_deviation(
        &self,
        omega_ev: f64,
        kperp_per_um: f64,
    ) -> Result<f64, ResponseError> {
        let ck = kperp_per_um * HBAR_C_EV_UM;
        if !(omega_ev > ck) {
            return Err(ResponseError::EvanescentInput { omega: omega_ev, ck });
        }
        let v = self.v_transverse.max(self.v_longitudinal);
        Ok((v * ck / omega_ev).abs())
    }
}

/// Static magnetic permeability, applied at the zero-frequency term only.
/// μ(iξ_l) = 1 exactly for every l ≥ 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PermeabilityModel {
    pub static_mu: f64,
}

impl PermeabilityModel {
    pub fn vacuum() -> Self {
        Self { static_mu: 1.0 }
    }

    pub fn at_matsubara(&self, l: usize) -> f64 {
        if l == 0 {
            self.static_mu
        } else {
            1.0
        }
    }
}

impl Default for PermeabilityModel {
    fn default() -> Self {
        Self::vacuum()
    }
}

/// The permittivity models the calculator understands.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Permittivity {
    Drude(DrudeParams),
    Plasma(PlasmaParams),
    Dielectric(DielectricParams),
    NonlocalDrude(NonlocalDrudeParams),
    Tabulated(TabulatedPermittivity),
    IdealMetal,
    Vacuum,
}

/// A full material response: permittivity plus static permeability.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResponseModel {
    pub permittivity: Permittivity,
    #[serde(default)]
    pub permeability: PermeabilityModel,
}

impl ResponseModel {
    pub fn new(permittivity: Permittivity) -> Self {
        Self { permittivity, permeability: PermeabilityModel::vacuum() }
    }

    pub fn with_permeability(permittivity: Permittivity, static_mu: f64) -> Self {
        Self { permittivity, permeability: PermeabilityModel { static_mu } }
    }

    /// True when reflection coefficients require the wavevector-resolved
    /// impedance path instead of the Fresnel formulas.
    pub fn is_nonlocal(&self) -> bool {
        matches!(self.permittivity, Permittivity::NonlocalDrude(_))
    }

    /// Local imaginary-axis permittivity. Errors for the nonlocal model
    /// (wavevector-dependent) and for ξ ≤ 0.
    pub fn eps_imag_axis(&self, xi_ev: f64, temperature_k: f64) -> Result<f64, ResponseError> {
        match &self.permittivity {
            Permittivity::Drude(p) => p.eps_imag_axis(xi_ev, temperature_k),
            Permittivity::Plasma(p) => p.eps_imag_axis(xi_ev),
            Permittivity::Dielectric(p) => p.eps_imag_axis(xi_ev, temperature_k),
            Permittivity::Tabulated(p) => Ok(p.eps_imag_axis(xi_ev)?),
            Permittivity::Vacuum => Ok(1.0),
            Permittivity::IdealMetal => Ok(f64::INFINITY),
            Permittivity::NonlocalDrude(_) => Err(ResponseError::NoRealAxisForm {
                model: "nonlocal Drude-like permittivity is wavevector-resolved; use the impedance path",
            }),
        }
    }

    /// Complex real-axis permittivity for the models that have one.
    pub fn eps_real_axis(
        &self,
        omega_ev: f64,
        temperature_k: f64,
    ) -> Result<Complex64, ResponseError> {
        match &self.permittivity {
            Permittivity::Drude(p) => Ok(p.eps_real_axis(omega_ev, temperature_k)),
            Permittivity::Dielectric(p) => Ok(p.eps_real_axis(omega_ev, temperature_k)),
            Permittivity::Vacuum => Ok(Complex64::new(1.0, 0.0)),
            Permittivity::Plasma(_) => Err(ResponseError::NoRealAxisForm {
                model: "plasma model (purely real response)",
            }),
            Permittivity::IdealMetal => Err(ResponseError::NoRealAxisForm { model: "ideal metal" }),
            Permittivity::Tabulated(_) => Err(ResponseError::NoRealAxisForm {
                model: "tabulated permittivity (imaginary axis only)",
            }),
            Permittivity::NonlocalDrude(_) => Err(ResponseError::NoRealAxisForm {
                model: "nonlocal Drude-like permittivity",
            }),
        }
    }
}
