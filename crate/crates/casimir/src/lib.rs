//! Thermal Casimir force calculations in the Lifshitz theory.
//!
//! The crate evaluates the Casimir pressure between two identical parallel
//! plates, the corresponding free energy and entropy, and sphere-plate
//! observables obtained through the proximity force approximation. The
//! dielectric response of the plates is interchangeable: local Drude, plasma
//! and dielectric-with-conductivity models, tabulated optical data carried to
//! the imaginary frequency axis by a Kramers-Kronig transform, and spatially
//! nonlocal Drude-like permittivities evaluated through surface impedances.
//!
//! Internal unit system: energies in eV, lengths in micrometres, temperatures
//! in kelvin, velocities as fractions of c. Frequencies (real or Matsubara)
//! are stored as photon energies, i.e. `xi` denotes the energy ħξ in eV.
//! Pressures come out in eV/μm³ and convert to pascal via
//! [`units::pressure_to_pascal`].

pub mod analysis;
pub mod cli;
pub mod config;
pub mod lifshitz;
pub mod materials;
pub mod optical;
pub mod quad;
pub mod reflection;
pub mod response;
pub mod units;

pub use lifshitz::{
    free_energy, pressure_matsubara, pressure_real_frequency, pressure_zero_temperature,
    thermal_correction, Settings,
};
pub use response::{Permittivity, ResponseModel};
