//! Built-in material presets.
//!
//! Every curve the CLI reproduces is reachable from one of these names.
//! Au: ħω_p = 9.0 eV, ħγ(300 K) = 0.035 eV (handbook values); the plain
//! `au-drude` preset holds γ fixed at its room-temperature value, matching
//! the usual practice of reusing room-temperature optical data at every
//! temperature. The `-perfect`/`-impurity` variants carry the power-law
//! γ(T) used by the entropy diagnostics.
//!
//! Fused silica: two-oscillator fit with ε0 = 3.801 and σ0(300 K) = 29.7 s⁻¹;
//! the Arrhenius activation (b = 5000 K, a typical ionic-conduction scale)
//! pins σ_a so the room-temperature value is exact. The `-frozen` variant
//! holds σ0 constant at every temperature.
//!
//! Ni: ħω_p = 4.89 eV, ħγ = 0.0436 eV, static μ0 = 110. The Fermi velocity
//! of Ni must be supplied explicitly for the nonlocal variants.
//!
//! Si membrane presets carry only the documented ε_opt (ε0 ≈ 11.67); the
//! carrier parameters (σ0 or Drude ω_p, γ) depend on the doping and
//! illumination and must be supplied by the user.

use crate::optical::{ExtrapolationModel, ExtrapolationSpec, OpticalTable, TabulatedPermittivity};
use crate::response::{
    ConductivityModel, DielectricParams, DrudeParams, NonlocalDrudeParams, OscillatorModel,
    Permittivity, PlasmaParams, RelaxationModel, ResponseModel, WavevectorForm,
};
use thiserror::Error;

/// Fermi velocity of Au as a fraction of c (1.40e6 m/s).
pub const AU_FERMI_VELOCITY: f64 = 0.00467;

#[derive(Debug, Error)]
pub enum MaterialError {
    #[error("unknown material `{0}`; available: {1}")]
    Unknown(String, String),
    #[error("material `{0}` requires an explicit parameter: {1}")]
    MissingParameter(&'static str, &'static str),
    #[error(transparent)]
    Optical(#[from] crate::optical::OpticalError),
}

/// Extra parameters a preset may need.
#[derive(Debug, Clone, Default)]
pub struct MaterialOverrides {
    /// Fermi velocity as a fraction of c (required by ni-nonlocal-*).
    pub fermi_velocity: Option<f64>,
    /// dc conductivity in s⁻¹ (required by si-membrane-dark-carriers).
    pub sigma_per_s: Option<f64>,
    /// Drude plasma frequency in eV (required by si-membrane-bright).
    pub omega_p_ev: Option<f64>,
    /// Drude relaxation in eV (required by si-membrane-bright).
    pub gamma_ev: Option<f64>,
    /// Optical table CSV contents for `tabulated-*` materials.
    pub table_csv: Option<String>,
}

fn au_drude_params() -> DrudeParams {
    DrudeParams { plasma_frequency_ev: 9.0, relaxation: RelaxationModel::constant(0.035) }
}

/// Silica ε_opt: two-oscillator fit with ε0 = 3.801.
pub fn silica_oscillators() -> OscillatorModel {
    OscillatorModel::new(vec![(1.703, 0.1237), (1.098, 13.39)])
}

fn silica_arrhenius() -> ConductivityModel {
    // sigma_a chosen so sigma0(300 K) = 29.7 1/s with b = 5000 K
    let b: f64 = 5000.0;
    ConductivityModel { amplitude_per_s: 29.7 * (b / 300.0).exp(), activation_k: b }
}

fn si_oscillators() -> OscillatorModel {
    // single-oscillator Si fit: eps0 = 11.67, resonance at 4.34 eV
    OscillatorModel::new(vec![(10.67, 4.34)])
}

fn ni_drude_params() -> DrudeParams {
    DrudeParams { plasma_frequency_ev: 4.89, relaxation: RelaxationModel::constant(0.0436) }
}

const NAMES: &[&str] = &[
    "ideal-metal",
    "vacuum",
    "au-drude",
    "au-drude-perfect",
    "au-drude-impurity",
    "au-plasma",
    "au-nonlocal-eq18",
    "au-nonlocal-eq20",
    "silica",
    "silica-no-conductivity",
    "silica-frozen-conductivity",
    "ni-drude",
    "ni-plasma",
    "ni-nonlocal-transverse",
    "ni-nonlocal-full",
    "si-membrane-dark",
    "si-membrane-dark-carriers",
    "si-membrane-bright",
    "tabulated-drude-au",
    "tabulated-plasma-au",
];

/// All preset names, for diagnostics.
pub fn available() -> String {
    NAMES.join(", ")
}

/// Resolve a preset name (plus any required overrides) into a model.
pub fn lookup(name: &str, overrides: &MaterialOverrides) -> Result<ResponseModel, MaterialError> {
    let model = match name {
        "ideal-metal" => ResponseModel::new(Permittivity::IdealMetal),
        "vacuum" => ResponseModel::new(Permittivity::Vacuum),
        "au-drude" => ResponseModel::new(Permittivity::Drude(au_drude_params())),
        "au-drude-perfect" => ResponseModel::new(Permittivity::Drude(DrudeParams {
            plasma_frequency_ev: 9.0,
            relaxation: RelaxationModel::power_law(0.0, 0.035, 5.0, 300.0),
        })),
        "au-drude-impurity" => ResponseModel::new(Permittivity::Drude(DrudeParams {
            plasma_frequency_ev: 9.0,
            // residual gamma0 = 0.1 * gamma(300 K)
            relaxation: RelaxationModel::power_law(0.0035, 0.0315, 5.0, 300.0),
        })),
        "au-plasma" => {
            ResponseModel::new(Permittivity::Plasma(PlasmaParams { plasma_frequency_ev: 9.0 }))
        }
        "au-nonlocal-eq18" => ResponseModel::new(Permittivity::NonlocalDrude(NonlocalDrudeParams {
            base: au_drude_params(),
            v_transverse: 7.0 * AU_FERMI_VELOCITY,
            v_longitudinal: 7.0 * AU_FERMI_VELOCITY,
            form: WavevectorForm::TransverseOnly,
            fermi_velocity: AU_FERMI_VELOCITY,
        })),
        "au-nonlocal-eq20" => ResponseModel::new(Permittivity::NonlocalDrude(NonlocalDrudeParams {
            base: au_drude_params(),
            v_transverse: 1.5 * AU_FERMI_VELOCITY,
            v_longitudinal: 1.5 * AU_FERMI_VELOCITY,
            form: WavevectorForm::FullWavevector,
            fermi_velocity: AU_FERMI_VELOCITY,
        })),
        "silica" => ResponseModel::new(Permittivity::Dielectric(DielectricParams {
            optical: silica_oscillators(),
            conductivity: silica_arrhenius(),
            include_conductivity: true,
        })),
        "silica-no-conductivity" => ResponseModel::new(Permittivity::Dielectric(DielectricParams {
            optical: silica_oscillators(),
            conductivity: silica_arrhenius(),
            include_conductivity: false,
        })),
        "silica-frozen-conductivity" => {
            ResponseModel::new(Permittivity::Dielectric(DielectricParams {
                optical: silica_oscillators(),
                conductivity: ConductivityModel { amplitude_per_s: 29.7, activation_k: 0.0 },
                include_conductivity: true,
            }))
        }
        "ni-drude" => ResponseModel::with_permeability(Permittivity::Drude(ni_drude_params()), 110.0),
        "ni-plasma" => ResponseModel::with_permeability(
            Permittivity::Plasma(PlasmaParams { plasma_frequency_ev: 4.89 }),
            110.0,
        ),
        "ni-nonlocal-transverse" | "ni-nonlocal-full" => {
            let v_f = overrides.fermi_velocity.ok_or(MaterialError::MissingParameter(
                "ni-nonlocal-*",
                "--v-fermi (fraction of c); no handbook value is bundled for Ni",
            ))?;
            let (mult, form) = if name == "ni-nonlocal-transverse" {
                (7.0, WavevectorForm::TransverseOnly)
            } else {
                (1.5, WavevectorForm::FullWavevector)
            };
            ResponseModel::with_permeability(
                Permittivity::NonlocalDrude(NonlocalDrudeParams {
                    base: ni_drude_params(),
                    v_transverse: mult * v_f,
                    v_longitudinal: mult * v_f,
                    form,
                    fermi_velocity: v_f,
                }),
                110.0,
            )
        }
        "si-membrane-dark" => ResponseModel::new(Permittivity::Dielectric(DielectricParams {
            optical: si_oscillators(),
            conductivity: ConductivityModel { amplitude_per_s: 0.0, activation_k: 0.0 },
            include_conductivity: false,
        })),
        "si-membrane-dark-carriers" => {
            let sigma = overrides.sigma_per_s.ok_or(MaterialError::MissingParameter(
                "si-membrane-dark-carriers",
                "--sigma (s^-1), set by the sample's carrier concentration",
            ))?;
            ResponseModel::new(Permittivity::Dielectric(DielectricParams {
                optical: si_oscillators(),
                conductivity: ConductivityModel { amplitude_per_s: sigma, activation_k: 0.0 },
                include_conductivity: true,
            }))
        }
        "si-membrane-bright" => {
            let wp = overrides.omega_p_ev.ok_or(MaterialError::MissingParameter(
                "si-membrane-bright",
                "--omega-p (eV), set by the photoexcited carrier concentration",
            ))?;
            let gamma = overrides.gamma_ev.ok_or(MaterialError::MissingParameter(
                "si-membrane-bright",
                "--gamma (eV)",
            ))?;
            ResponseModel::new(Permittivity::Drude(DrudeParams {
                plasma_frequency_ev: wp,
                relaxation: RelaxationModel::constant(gamma),
            }))
        }
        "tabulated-drude-au" | "tabulated-plasma-au" => {
            let csv = overrides.table_csv.as_ref().ok_or(MaterialError::MissingParameter(
                "tabulated-*",
                "--table <csv file> with columns energy_eV,n,k",
            ))?;
            let table = OpticalTable::from_csv(csv.as_bytes())?;
            let model = if name == "tabulated-drude-au" {
                ExtrapolationModel::Drude(au_drude_params())
            } else {
                ExtrapolationModel::Plasma(PlasmaParams { plasma_frequency_ev: 9.0 })
            };
            ResponseModel::new(Permittivity::Tabulated(TabulatedPermittivity::new(
                table,
                ExtrapolationSpec::new(model),
            )?))
        }
        other => return Err(MaterialError::Unknown(other.to_string(), available())),
    };
    Ok(model)
}
