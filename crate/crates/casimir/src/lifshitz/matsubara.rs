//! The Matsubara-sum representation of the pressure and free energy.
//!
//! With y = 2a·q_l the k⊥ integrals become
//!
//!   P: I_l = ∫_{y_l}^∞ y² Σ_pol r²e^(−y)/(1 − r²e^(−y)) dy,
//!   F: J_l = ∫_{y_l}^∞ y  Σ_pol ln(1 − r²e^(−y)) dy,     y_l = 2aξ_l/ħc,
//!
//! and the observables are P = −(k_BT/8πa³)·Σ′ I_l, F = (k_BT/8πa²)·Σ′ J_l,
//! the prime halving the l = 0 term. Terms decay like e^(−y_l), so the sum is
//! truncated once three consecutive terms drop below the relative tolerance.

use std::cell::RefCell;

use crate::quad::{adaptive_panels, fixed_panels, QuadResult};
use crate::reflection::{
    ideal_metal_pair, nonlocal_impedances, impedance_pair, zero_frequency_pair, fresnel_pair,
    ReflectionError, WaveVectorPoint,
};
use crate::response::{NonlocalDrudeParams, Permittivity, ResponseModel};
use crate::units::{matsubara_energy, EvaluationPoint, BOLTZMANN_EV_PER_K, HBAR_C_EV_UM};

use super::{FreeEnergyResult, LifshitzError, PressureResult, Settings};

/// Panel offsets above y_l. The integrand is below e^(−90) ≈ 8e-40 of its
/// peak past the last edge, far beyond any tolerance used here.
const Y_OFFSETS: [f64; 7] = [0.0, 1.5, 4.0, 10.0, 25.0, 50.0, 90.0];

/// Denser fixed layout for the deterministic (entropy) path.
const Y_OFFSETS_FIXED: [f64; 13] =
    [0.0, 0.7, 1.5, 2.7, 4.0, 6.5, 10.0, 16.0, 25.0, 36.0, 50.0, 68.0, 90.0];

#[derive(Clone, Copy)]
pub(super) enum Summand {
    Pressure,
    FreeEnergy,
}

impl Summand {
    #[inline]
    fn eval(self, y: f64, r2_tm: f64, r2_te: f64) -> f64 {
        let emy = (-y).exp();
        match self {
            Summand::Pressure => {
                let mut s = 0.0;
                if r2_tm != 0.0 {
                    let w = r2_tm * emy;
                    s += w / (1.0 - w);
                }
                if r2_te != 0.0 {
                    let w = r2_te * emy;
                    s += w / (1.0 - w);
                }
                y * y * s
            }
            Summand::FreeEnergy => {
                let mut s = 0.0;
                if r2_tm != 0.0 {
                    s += (-r2_tm * emy).ln_1p();
                }
                if r2_te != 0.0 {
                    s += (-r2_te * emy).ln_1p();
                }
                y * s
            }
        }
    }
}

/// Per-level reflection evaluator with everything ξ-only hoisted out of the
/// k⊥ loop.
enum LevelReflect<'a> {
    Zero(ZeroFreq<'a>),
    Local { eps: f64, xi: f64 },
    Ideal,
    Vacuum,
    Nonlocal { params: &'a NonlocalDrudeParams, xi: f64, t_k: f64, tol: f64 },
}

impl LevelReflect<'_> {
    fn squared_pair(&self, kperp: f64) -> Result<(f64, f64), ReflectionError> {
        let pair = match self {
            LevelReflect::Zero(z) => return z.eval(kperp),
            LevelReflect::Local { eps, xi } => {
                fresnel_pair(*eps, 1.0, &WaveVectorPoint::new(kperp, *xi))
            }
            LevelReflect::Ideal => ideal_metal_pair(),
            LevelReflect::Vacuum => return Ok((0.0, 0.0)),
            LevelReflect::Nonlocal { params, xi, t_k, tol } => {
                let point = WaveVectorPoint::new(kperp, *xi);
                impedance_pair(nonlocal_impedances(params, 1.0, &point, *t_k, *tol)?, &point)
            }
        };
        Ok((pair.r_tm * pair.r_tm, pair.r_te * pair.r_te))
    }
}

/// Zero-frequency evaluator with the k⊥-independent pieces precomputed.
enum ZeroFreq<'a> {
    Fixed { r2_tm: f64, r2_te: f64 },
    PerKperp { model: &'a ResponseModel, t_k: f64 },
}

impl ZeroFreq<'_> {
    fn build(model: &ResponseModel, t_k: f64) -> Result<ZeroFreq<'_>, ReflectionError> {
        match &model.permittivity {
            // kperp-dependent TE limits keep the full path
            Permittivity::Plasma(_) | Permittivity::NonlocalDrude(_) => {
                Ok(ZeroFreq::PerKperp { model, t_k })
            }
            Permittivity::Tabulated(t)
                if matches!(t.extrapolation.model, crate::optical::ExtrapolationModel::Plasma(_)) =>
            {
                Ok(ZeroFreq::PerKperp { model, t_k })
            }
            _ => {
                // kperp-independent limit: probe once
                let pair = zero_frequency_pair(model, 1.0, t_k)?;
                Ok(ZeroFreq::Fixed { r2_tm: pair.r_tm * pair.r_tm, r2_te: pair.r_te * pair.r_te })
            }
        }
    }

    fn eval(&self, kperp: f64) -> Result<(f64, f64), ReflectionError> {
        match self {
            ZeroFreq::Fixed { r2_tm, r2_te } => Ok((*r2_tm, *r2_te)),
            ZeroFreq::PerKperp { model, t_k } => {
                let pair = zero_frequency_pair(model, kperp, *t_k)?;
                Ok((pair.r_tm * pair.r_tm, pair.r_te * pair.r_te))
            }
        }
    }
}

/// One k⊥ integral (in the y variable) for the given level.
pub(super) fn level_integral(
    model: &ResponseModel,
    separation_um: f64,
    xi_ev: f64,
    l_is_zero: bool,
    t_k: f64,
    settings: &Settings,
    summand: Summand,
) -> Result<QuadResult, LifshitzError> {
    let reflect = if l_is_zero {
        LevelReflect::Zero(ZeroFreq::build(model, t_k)?)
    } else {
        match &model.permittivity {
            Permittivity::IdealMetal => LevelReflect::Ideal,
            Permittivity::Vacuum => LevelReflect::Vacuum,
            Permittivity::NonlocalDrude(p) => {
                LevelReflect::Nonlocal { params: p, xi: xi_ev, t_k, tol: settings.k3_rel_tol }
            }
            _ => LevelReflect::Local { eps: model.eps_imag_axis(xi_ev, t_k)?, xi: xi_ev },
        }
    };

    let y_l = 2.0 * separation_um * xi_ev / HBAR_C_EV_UM;
    let xi_over_hc2 = (xi_ev / HBAR_C_EV_UM).powi(2);
    let two_a = 2.0 * separation_um;
    let failure: RefCell<Option<ReflectionError>> = RefCell::new(None);

    let f = |y: f64| -> f64 {
        let q = y / two_a;
        let kperp = (q * q - xi_over_hc2).max(0.0).sqrt();
        match reflect.squared_pair(kperp) {
            Ok((r2_tm, r2_te)) => summand.eval(y, r2_tm, r2_te),
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                0.0
            }
        }
    };

    let result = if settings.fixed_grid {
        let edges: Vec<f64> = Y_OFFSETS_FIXED.iter().map(|o| y_l + o).collect();
        Ok(fixed_panels(&f, &edges))
    } else {
        let edges: Vec<f64> = Y_OFFSETS.iter().map(|o| y_l + o).collect();
        adaptive_panels(&f, &edges, settings.quadrature_rel_tol, 1e-300, 4000)
    };
    if let Some(e) = failure.into_inner() {
        return Err(e.into());
    }
    result.map_err(|source| LifshitzError::KPerpQuadrature {
        l: if l_is_zero { 0 } else { usize::MAX },
        source,
    })
}

struct MatsubaraSum {
    total: f64,
    quad_error: f64,
    terms_used: usize,
    per_term: Option<Vec<(usize, f64)>>,
}

/// Σ′ of the level integrals with Kahan compensation (the millikelvin runs
/// accumulate millions of terms) and three-consecutive-terms truncation.
fn matsubara_sum(
    point: EvaluationPoint,
    model: &ResponseModel,
    settings: &Settings,
    summand: Summand,
) -> Result<MatsubaraSum, LifshitzError> {
    let EvaluationPoint { separation_um, temperature_k } = point;
    if !(temperature_k > 0.0) {
        return Err(LifshitzError::RequiresFiniteTemperature(temperature_k));
    }
    let mut per_term = settings.keep_terms.then(Vec::new);

    let zero = level_integral(model, separation_um, 0.0, true, temperature_k, settings, summand)?;
    let mut total = 0.5 * zero.value;
    let mut compensation = 0.0f64;
    let mut quad_error = 0.5 * zero.abs_error;
    if let Some(t) = per_term.as_mut() {
        t.push((0, 0.5 * zero.value));
    }

    // Truncation control: the tail decays close to geometrically, so its sum
    // is the last term times r/(1 − r) with the measured term ratio r
    // (floored by the asymptotic e^(−y_1)). The stop rule bounds that
    // remainder estimate — not the bare term — relative to the running total;
    // at low temperature 1/(1 − r) grows like ħc/(2a·2πk_B T) and a bare-term
    // rule would leave a tail large enough to corrupt entropy differencing.
    let y1 = 2.0 * separation_um * matsubara_energy(temperature_k, 1) / HBAR_C_EV_UM;
    let ratio_floor = (-y1).exp().min(1.0 - 1e-12);

    let mut below = 0usize;
    let mut l = 1usize;
    let mut previous_value = 0.0f64;
    let truncation = loop {
        let xi = matsubara_energy(temperature_k, l);
        let level =
            level_integral(model, separation_um, xi, false, temperature_k, settings, summand)
                .map_err(|e| match e {
                    LifshitzError::KPerpQuadrature { source, .. } => {
                        LifshitzError::KPerpQuadrature { l, source }
                    }
                    other => other,
                })?;
        // Kahan step
        let y = level.value - compensation;
        let t = total + y;
        compensation = (t - total) - y;
        total = t;
        quad_error += level.abs_error;
        if let Some(terms) = per_term.as_mut() {
            terms.push((l, level.value));
        }
        let mut ratio = ratio_floor;
        if previous_value.abs() > 0.0 {
            ratio = ratio.max((level.value / previous_value).abs()).min(1.0 - 1e-12);
        }
        let remainder = 2.0 * level.value.abs() * ratio / (1.0 - ratio);
        if remainder <= settings.truncation_tol * total.abs() {
            below += 1;
            if below >= 3 {
                break remainder;
            }
        } else {
            below = 0;
        }
        previous_value = level.value;
        l += 1;
        if l > settings.l_cap {
            return Err(LifshitzError::NotConverged {
                l_cap: settings.l_cap,
                separation_um,
                temperature_k,
                last_rel: level.value.abs() / total.abs().max(f64::MIN_POSITIVE),
            });
        }
    };
    Ok(MatsubaraSum { total, quad_error: quad_error + truncation, terms_used: l + 1, per_term })
}

/// Casimir pressure from the Matsubara representation. Attraction is
/// negative; identical passive plates always attract.
pub fn pressure_matsubara(
    point: EvaluationPoint,
    model: &ResponseModel,
    settings: &Settings,
) -> Result<PressureResult, LifshitzError> {
    let sum = matsubara_sum(point, model, settings, Summand::Pressure)?;
    let prefactor = -BOLTZMANN_EV_PER_K * point.temperature_k
        / (8.0 * std::f64::consts::PI * point.separation_um.powi(3));
    Ok(PressureResult {
        pressure_ev_um3: prefactor * sum.total,
        terms_used: sum.terms_used,
        quadrature_error: prefactor.abs() * sum.quad_error,
        per_term: sum
            .per_term
            .map(|v| v.into_iter().map(|(l, c)| (l, prefactor * c)).collect()),
    })
}

/// Casimir free energy per unit area from the Matsubara representation.
pub fn free_energy(
    point: EvaluationPoint,
    model: &ResponseModel,
    settings: &Settings,
) -> Result<FreeEnergyResult, LifshitzError> {
    let sum = matsubara_sum(point, model, settings, Summand::FreeEnergy)?;
    let prefactor = BOLTZMANN_EV_PER_K * point.temperature_k
        / (8.0 * std::f64::consts::PI * point.separation_um.powi(2));
    Ok(FreeEnergyResult {
        free_energy_ev_um2: prefactor * sum.total,
        terms_used: sum.terms_used,
        quadrature_error: prefactor.abs() * sum.quad_error,
    })
}
