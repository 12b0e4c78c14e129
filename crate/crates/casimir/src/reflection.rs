//! TM/TE reflection coefficients on the imaginary frequency axis.
//!
//! Local media go through the Fresnel formulas; spatially dispersive media go
//! through surface impedances with a wavevector quadrature. All zero-frequency
//! (l = 0) limits are evaluated analytically rather than by small-ξ
//! extrapolation, which would cancel catastrophically.
//!
//! Imaginary-axis conventions, with q_l = (k⊥² + ξ²/(ħc)²)^½:
//!
//!   r_TM = (ε q_l − k_l)/(ε q_l + k_l),   k_l = (k⊥² + εμ ξ²/(ħc)²)^½,
//!   r_TM = (ħc q_l − ξ Z_TM)/(ħc q_l + ξ Z_TM),
//!   r_TE = (ħc q_l Z_TE − ξ)/(ħc q_l Z_TE + ξ).

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::quad::{adaptive_panels, QuadError};
use crate::response::{
    NonlocalDrudeParams, Permittivity, ResponseError, ResponseModel, WavevectorForm,
};
use crate::units::HBAR_C_EV_UM;

#[derive(Debug, Error)]
pub enum ReflectionError {
    #[error(transparent)]
    Response(#[from] ResponseError),
    #[error("k3 quadrature for the nonlocal impedance failed: {0}")]
    Quadrature(#[from] QuadError),
    #[error(transparent)]
    Optical(#[from] crate::optical::OpticalError),
    #[error("zero-frequency limit undefined for {0}")]
    UnsupportedZeroFrequency(String),
}

/// (ξ, k⊥) evaluation point on the imaginary axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveVectorPoint {
    pub kperp_per_um: f64,
    pub xi_ev: f64,
}

impl WaveVectorPoint {
    pub fn new(kperp_per_um: f64, xi_ev: f64) -> Self {
        Self { kperp_per_um, xi_ev }
    }

    /// q_l = (k⊥² + ξ²/(ħc)²)^½ in μm⁻¹.
    pub fn q_l(&self) -> f64 {
        self.kperp_per_um.hypot(self.xi_ev / HBAR_C_EV_UM)
    }
}

/// Where a reflection pair came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReflectionMethod {
    Fresnel,
    Impedance,
    IdealMetal,
}

/// TM/TE reflection amplitudes at one imaginary-frequency point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReflectionPair {
    pub r_tm: f64,
    pub r_te: f64,
    pub method: ReflectionMethod,
}

/// Imaginary-axis surface impedances (real numbers there).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImpedancePair {
    pub z_tm: f64,
    pub z_te: f64,
}

/// Inside wavenumber k_l = (k⊥² + εμ ξ²/(ħc)²)^½ in μm⁻¹.
pub fn inside_wavenumber(eps: f64, mu: f64, point: &WaveVectorPoint) -> f64 {
    let c = point.xi_ev / HBAR_C_EV_UM;
    (point.kperp_per_um * point.kperp_per_um + eps * mu * c * c).sqrt()
}

/// Fresnel coefficients for a local medium at ω = iξ.
///
/// The TM ratio is evaluated as (q − k/ε)/(q + k/ε) so that the huge
/// permittivities a conductor reaches at small ξ cannot overflow.
pub fn fresnel_pair(eps: f64, mu: f64, point: &WaveVectorPoint) -> ReflectionPair {
    let q = point.q_l();
    let c2 = (point.xi_ev / HBAR_C_EV_UM).powi(2);
    let k_l = inside_wavenumber(eps, mu, point);
    // k_l/eps without forming eps^2 * c2 (stable for eps up to f64::MAX)
    let t = ((point.kperp_per_um / eps).powi(2) + mu * c2 / eps).sqrt();
    let r_tm = (q - t) / (q + t);
    let r_te = (mu * q - k_l) / (mu * q + k_l);
    ReflectionPair { r_tm, r_te, method: ReflectionMethod::Fresnel }
}

/// Local impedances: Z_TM = ħc·k_l/(ξε), Z_TE = ξμ/(ħc·k_l).
pub fn local_impedances(eps: f64, mu: f64, point: &WaveVectorPoint) -> ImpedancePair {
    let k_l = inside_wavenumber(eps, mu, point);
    ImpedancePair {
        z_tm: HBAR_C_EV_UM * k_l / (point.xi_ev * eps),
        z_te: point.xi_ev * mu / (HBAR_C_EV_UM * k_l),
    }
}

/// Reflection coefficients from impedances at ω = iξ.
pub fn impedance_pair(z: ImpedancePair, point: &WaveVectorPoint) -> ReflectionPair {
    let cq = HBAR_C_EV_UM * point.q_l();
    let xi = point.xi_ev;
    ReflectionPair {
        r_tm: (cq - xi * z.z_tm) / (cq + xi * z.z_tm),
        r_te: (cq * z.z_te - xi) / (cq * z.z_te + xi),
        method: ReflectionMethod::Impedance,
    }
}

/// Perfect reflector: (1, −1) at every point.
pub fn ideal_metal_pair() -> ReflectionPair {
    ReflectionPair { r_tm: 1.0, r_te: -1.0, method: ReflectionMethod::IdealMetal }
}

/// Panel edges for the k₃ map t ↦ Q̃·t/(1−t); nodes stay interior so the
/// t = 1 edge is never evaluated.
const K3_PANELS: [f64; 7] = [0.0, 0.3, 0.6, 0.8, 0.92, 0.985, 1.0];

/// Surface impedances of a nonlocal Drude-like medium via the k₃ quadrature
/// of the specular-reflection impedance integrals, at ω = iξ:
///
///   Z_TE = (ξμ/π) ∫ dκ₃ / (ε^Tr μ ξ² + κ²),
///   Z_TM = (ξμ/π) ∫ dκ₃/κ² · [κ⊥²/(ε^L μ ξ²) + κ₃²/(ε^Tr μ ξ² + κ²)],
///
/// with every wavevector expressed as an energy κ = ħc·k. Both denominators
/// are strictly positive on the imaginary axis. The substitution
/// κ₃ = Q̃ t/(1−t) concentrates nodes near the physical scale Q̃ = ħc·q_l and
/// turns the 1/κ₃² decay into a bounded integrand on [0, 1).
pub fn nonlocal_impedances(
    params: &NonlocalDrudeParams,
    mu: f64,
    point: &WaveVectorPoint,
    temperature_k: f64,
    rel_tol: f64,
) -> Result<ImpedancePair, ReflectionError> {
    let xi = point.xi_ev;
    if !(xi > 0.0) {
        return Err(ResponseError::NonPositiveFrequency(xi).into());
    }
    let kp = point.kperp_per_um * HBAR_C_EV_UM;
    let q_t = HBAR_C_EV_UM * point.q_l();
    let gamma = params.base.relaxation.at(temperature_k);
    let wp2 = params.base.plasma_frequency_ev.powi(2);
    let d = wp2 / (xi * (xi + gamma));

    let eps_pair = |k3: f64| -> (f64, f64) {
        let karg = match params.form {
            WavevectorForm::TransverseOnly => kp,
            WavevectorForm::FullWavevector => kp.hypot(k3),
        };
        let tr = 1.0 + d * (1.0 + params.v_transverse * karg / xi);
        let lo = 1.0 + d / (1.0 + params.v_longitudinal * karg / xi);
        (tr, lo)
    };

    let te_integrand = |t: f64| {
        let k3 = q_t * t / (1.0 - t);
        let jac = q_t / ((1.0 - t) * (1.0 - t));
        let (tr, _) = eps_pair(k3);
        jac / (tr * mu * xi * xi + kp * kp + k3 * k3)
    };
    let tm_integrand = |t: f64| {
        let k3 = q_t * t / (1.0 - t);
        let jac = q_t / ((1.0 - t) * (1.0 - t));
        let (tr, lo) = eps_pair(k3);
        let k2 = kp * kp + k3 * k3;
        jac / k2 * (kp * kp / (lo * mu * xi * xi) + k3 * k3 / (tr * mu * xi * xi + k2))
    };

    let prefactor = 2.0 * xi * mu / std::f64::consts::PI; // symmetric fold doubles [0, inf)
    let te = adaptive_panels(&te_integrand, &K3_PANELS, rel_tol, 1e-300, 400)?;
    let tm = adaptive_panels(&tm_integrand, &K3_PANELS, rel_tol, 1e-300, 400)?;
    Ok(ImpedancePair { z_tm: prefactor * tm.value, z_te: prefactor * te.value })
}

/// Zero-frequency (l = 0) reflection pair for every supported model. The
/// static permeability μ0 enters here and only here.
pub fn zero_frequency_pair(
    model: &ResponseModel,
    kperp_per_um: f64,
    temperature_k: f64,
) -> Result<ReflectionPair, ReflectionError> {
    let mu0 = model.permeability.static_mu;
    let kp = kperp_per_um;
    let te_magnetic = (mu0 - 1.0) / (mu0 + 1.0);
    let pair = |r_tm: f64, r_te: f64| ReflectionPair { r_tm, r_te, method: ReflectionMethod::Fresnel };
    match &model.permittivity {
        Permittivity::IdealMetal => Ok(ideal_metal_pair()),
        Permittivity::Vacuum => Ok(pair(0.0, 0.0)),
        // ξ²ε → 0: k_l → k⊥, TM limit is a perfect conductor's.
        Permittivity::Drude(_) => Ok(pair(1.0, te_magnetic)),
        // ξ²ε → ω_p²: the TE mode keeps a penetration-depth scale.
        Permittivity::Plasma(p) => {
            let k_l = (kp * kp + mu0 * (p.plasma_frequency_ev / HBAR_C_EV_UM).powi(2)).sqrt();
            Ok(pair(1.0, (mu0 * kp - k_l) / (mu0 * kp + k_l)))
        }
        Permittivity::Dielectric(d) => {
            if d.include_conductivity && d.conductivity.sigma0_per_s(temperature_k) > 0.0 {
                Ok(pair(1.0, te_magnetic))
            } else {
                let eps0 = d.optical.static_eps();
                Ok(pair((eps0 - 1.0) / (eps0 + 1.0), te_magnetic))
            }
        }
        Permittivity::Tabulated(t) => match &t.extrapolation.model {
            crate::optical::ExtrapolationModel::Drude(_) => Ok(pair(1.0, te_magnetic)),
            crate::optical::ExtrapolationModel::Plasma(p) => {
                let k_l = (kp * kp + mu0 * (p.plasma_frequency_ev / HBAR_C_EV_UM).powi(2)).sqrt();
                Ok(pair(1.0, (mu0 * kp - k_l) / (mu0 * kp + k_l)))
            }
            crate::optical::ExtrapolationModel::DielectricConstant => {
                let eps0 = t.eps_imag_axis(1e-9)?;
                Ok(pair((eps0 - 1.0) / (eps0 + 1.0), te_magnetic))
            }
        },
        Permittivity::NonlocalDrude(p) => nonlocal_zero_frequency(p, mu0, kp, temperature_k),
    }
}

/// Analytic ξ → 0 limit of the nonlocal impedance path.
///
/// With γ(T) > 0 the transverse combination ξ²ε^Tr tends to the finite
/// W(κ) = ω_p²·v^Tr·κ/γ, so the TE coefficient stays nonzero (the mechanism
/// behind the Drude/plasma factor-two split at high temperature), while
/// ξ·Z_TM tends to B = (κ⊥²/π)∫dκ₃/(κ²ε^L(0,κ)) with
/// ε^L(0,κ) = 1 + ω_p²/(γ v^L κ).
fn nonlocal_zero_frequency(
    params: &NonlocalDrudeParams,
    mu0: f64,
    kperp_per_um: f64,
    temperature_k: f64,
) -> Result<ReflectionPair, ReflectionError> {
    let kp = kperp_per_um * HBAR_C_EV_UM;
    let gamma = params.base.relaxation.at(temperature_k);
    let wp2 = params.base.plasma_frequency_ev.powi(2);
    let method = ReflectionMethod::Impedance;

    if gamma == 0.0 {
        // Dissipationless limit: plasma-like for v = 0, perfect TE reflector
        // for any nonzero transverse velocity (W diverges).
        let r_te = if params.v_transverse == 0.0 {
            let k_l = (kp * kp + mu0 * wp2).sqrt();
            (mu0 * kp - k_l) / (mu0 * kp + k_l)
        } else {
            -1.0
        };
        return Ok(ReflectionPair { r_tm: 1.0, r_te, method });
    }

    let w_of = |karg: f64| wp2 * params.v_transverse * karg / gamma;

    let r_te = match params.form {
        WavevectorForm::TransverseOnly => {
            let w = w_of(kp);
            let c_te = mu0 / (w * mu0 + kp * kp).sqrt();
            (kp * c_te - 1.0) / (kp * c_te + 1.0)
        }
        WavevectorForm::FullWavevector => {
            let f = |t: f64| {
                let k3 = kp * t / (1.0 - t);
                let jac = kp / ((1.0 - t) * (1.0 - t));
                let k = kp.hypot(k3);
                jac / (w_of(k) * mu0 + kp * kp + k3 * k3)
            };
            let int = adaptive_panels(&f, &K3_PANELS, 1e-10, 1e-300, 400)?;
            let c_te = 2.0 * mu0 / std::f64::consts::PI * int.value;
            (kp * c_te - 1.0) / (kp * c_te + 1.0)
        }
    };

    let r_tm = if params.v_longitudinal == 0.0 {
        1.0
    } else {
        let eps_l0 = |karg: f64| 1.0 + wp2 / (gamma * params.v_longitudinal * karg);
        let b = match params.form {
            WavevectorForm::TransverseOnly => kp / eps_l0(kp),
            WavevectorForm::FullWavevector => {
                let f = |t: f64| {
                    let k3 = kp * t / (1.0 - t);
                    let jac = kp / ((1.0 - t) * (1.0 - t));
                    let k2 = kp * kp + k3 * k3;
                    jac / (k2 * eps_l0(k2.sqrt()))
                };
                let int = adaptive_panels(&f, &K3_PANELS, 1e-10, 1e-300, 400)?;
                2.0 * kp * kp / std::f64::consts::PI * int.value
            }
        };
        (kp - b) / (kp + b)
    };

    Ok(ReflectionPair { r_tm, r_te, method })
}

/// Reflection pair at a Matsubara point with l ≥ 1 (μ = 1 there).
pub fn reflection_at(
    model: &ResponseModel,
    point: &WaveVectorPoint,
    temperature_k: f64,
    k3_rel_tol: f64,
) -> Result<ReflectionPair, ReflectionError> {
    match &model.permittivity {
        Permittivity::IdealMetal => Ok(ideal_metal_pair()),
        Permittivity::Vacuum => Ok(ReflectionPair { r_tm: 0.0, r_te: 0.0, method: ReflectionMethod::Fresnel }),
        Permittivity::NonlocalDrude(p) => {
            let z = nonlocal_impedances(p, 1.0, point, temperature_k, k3_rel_tol)?;
            Ok(impedance_pair(z, point))
        }
        _ => {
            let eps = model.eps_imag_axis(point.xi_ev, temperature_k)?;
            Ok(fresnel_pair(eps, 1.0, point))
        }
    }
}
