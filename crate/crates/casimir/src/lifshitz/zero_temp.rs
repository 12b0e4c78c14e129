//! Zero-temperature pressure: the Matsubara sum becomes an integral over
//! continuous imaginary frequency, k_B·T·Σ′ → (1/2π)∫dξ, so
//!
//!   P(a,0) = −(1/16π²a³) ∫₀^∞ I(ξ) dξ,
//!
//! with the same k⊥ integral I(ξ) as the finite-temperature terms. The
//! integrand peaks near the characteristic frequency ħc/2a; log-spaced nodes
//! cover [1e-7, 3e3] in units of that scale, plus a small linear panel at the
//! origin where conductor reflection limits stay bounded.

use std::cell::RefCell;

use super::matsubara::{level_integral, Summand};
use super::{LifshitzError, PressureResult, Settings};
use crate::response::ResponseModel;
use crate::units::{UnitsError, HBAR_C_EV_UM};

pub fn pressure_zero_temperature(
    separation_um: f64,
    model: &ResponseModel,
    settings: &Settings,
) -> Result<PressureResult, LifshitzError> {
    if !(separation_um > 0.0) {
        return Err(UnitsError::NonPositiveSeparation(separation_um).into());
    }
    let scale = HBAR_C_EV_UM / (2.0 * separation_um);
    let failure: RefCell<Option<LifshitzError>> = RefCell::new(None);
    let i_of = |xi: f64| -> f64 {
        match level_integral(model, separation_um, xi, false, 0.0, settings, Summand::Pressure) {
            Ok(r) => r.value,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                0.0
            }
        }
    };

    let xi_lo = 1e-7 * scale;
    let xi_hi = 3e3 * scale;

    // origin panel in linear scale; reflection limits are finite there
    let head = crate::quad::adaptive(&i_of, 0.0, xi_lo, settings.zero_t_rel_tol, 1e-300, 64)
        .map_err(LifshitzError::FrequencyQuadrature)?;

    // main integral on u = ln(xi)
    let g = |u: f64| {
        let xi = u.exp();
        xi * i_of(xi)
    };
    let (lo, hi) = (xi_lo.ln(), xi_hi.ln());
    let n_edges = 40;
    let edges: Vec<f64> =
        (0..=n_edges).map(|i| lo + (hi - lo) * i as f64 / n_edges as f64).collect();
    let main = crate::quad::adaptive_panels(&g, &edges, settings.zero_t_rel_tol, 1e-300, 20_000)
        .map_err(LifshitzError::FrequencyQuadrature)?;

    if let Some(e) = failure.into_inner() {
        return Err(e);
    }

    let prefactor = -1.0 / (16.0 * std::f64::consts::PI.powi(2) * separation_um.powi(3));
    Ok(PressureResult {
        pressure_ev_um3: prefactor * (head.value + main.value),
        terms_used: 0,
        quadrature_error: prefactor.abs() * (head.abs_error + main.abs_error),
        per_term: None,
    })
}
