//! Closed-form limits: ideal-metal asymptotics, the high-temperature
//! dielectric pressure and the trilogarithm it needs.

use crate::units::{EvaluationPoint, BOLTZMANN_EV_PER_K, HBAR_C_EV_UM, ZETA_3};

use super::LifshitzError;

const ZETA_2: f64 = std::f64::consts::PI * std::f64::consts::PI / 6.0;

/// Li₃(z) = Σ_{n≥1} zⁿ/n³ on [0, 1], absolute error below 1e-12.
///
/// Direct series below z = 0.9; above, the logarithmic expansion around
/// z = 1 (t = −ln z):
///   Li₃(e^(−t)) = ζ(3) − ζ(2)t + (3/2 − ln t)·t²/2 + t³/12 − t⁴/288
///                 + t⁶/86400 − t⁸/10160640 + O(t¹⁰).
pub fn polylog3(z: f64) -> Result<f64, LifshitzError> {
    if !(0.0..=1.0).contains(&z) {
        return Err(LifshitzError::Domain(format!("polylog3 argument {z} outside [0, 1]")));
    }
    if z == 0.0 {
        return Ok(0.0);
    }
    if z < 0.9 {
        let mut sum = 0.0;
        let mut power = 1.0;
        for n in 1..200 {
            power *= z;
            let term = power / ((n * n * n) as f64);
            sum += term;
            if term < 1e-17 {
                break;
            }
        }
        Ok(sum)
    } else if z == 1.0 {
        Ok(ZETA_3)
    } else {
        let t = -z.ln();
        Ok(ZETA_3 - ZETA_2 * t + (1.5 - t.ln()) * t * t / 2.0 + t.powi(3) / 12.0
            - t.powi(4) / 288.0
            + t.powi(6) / 86400.0
            - t.powi(8) / 10160640.0)
    }
}

/// Ideal-metal closed forms: the low-temperature expansion
/// −π²ħc/(240a⁴)·[1 + (T/T_eff)⁴/3] and the high-temperature limit
/// −k_B·T·ζ(3)/(4πa³). Both in eV/μm³.
pub fn ideal_metal_asymptotics(point: EvaluationPoint) -> (f64, f64) {
    let a = point.separation_um;
    let t_eff = HBAR_C_EV_UM / (2.0 * a * BOLTZMANN_EV_PER_K);
    let low = -std::f64::consts::PI.powi(2) * HBAR_C_EV_UM / (240.0 * a.powi(4))
        * (1.0 + (point.temperature_k / t_eff).powi(4) / 3.0);
    let high = -BOLTZMANN_EV_PER_K * point.temperature_k * ZETA_3
        / (4.0 * std::f64::consts::PI * a.powi(3));
    (low, high)
}

/// High-temperature pressure of a dielectric with static permittivity ε0:
/// −k_B·T/(8πa³)·Li₃[((ε0−1)/(ε0+1))²].
pub fn high_t_dielectric(
    separation_um: f64,
    temperature_k: f64,
    eps0: f64,
) -> Result<f64, LifshitzError> {
    if !(separation_um > 0.0 && temperature_k > 0.0) {
        return Err(LifshitzError::Domain(format!(
            "need a > 0 and T > 0, got a = {separation_um}, T = {temperature_k}"
        )));
    }
    if !(eps0 > 1.0) {
        return Err(LifshitzError::Domain(format!("static permittivity {eps0} must exceed 1")));
    }
    let z = ((eps0 - 1.0) / (eps0 + 1.0)).powi(2);
    Ok(-BOLTZMANN_EV_PER_K * temperature_k / (8.0 * std::f64::consts::PI * separation_um.powi(3))
        * polylog3(z)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn polylog3_values() {
        assert_eq!(polylog3(0.0).unwrap(), 0.0);
        assert_relative_eq!(polylog3(1.0).unwrap(), 1.2020569031595943, max_relative = 1e-14);
        assert_relative_eq!(polylog3(0.34129).unwrap(), 0.35758058987456254, max_relative = 1e-12);
        assert!(polylog3(-0.1).is_err());
        assert!(polylog3(1.1).is_err());
    }

    #[test]
    fn polylog3_routes_agree_across_switch() {
        // direct series with generous term count as the independent check
        let brute = |z: f64| {
            let mut sum = 0.0;
            let mut power = 1.0;
            for n in 1..2_000_000u64 {
                power *= z;
                let term = power / (n as f64).powi(3);
                sum += term;
                if term < 1e-18 {
                    break;
                }
            }
            sum
        };
        for z in [0.88, 0.9, 0.905, 0.95, 0.99] {
            assert_relative_eq!(polylog3(z).unwrap(), brute(z), epsilon = 1e-12);
        }
    }

    #[test]
    fn ideal_metal_values() {
        let (low, _) = ideal_metal_asymptotics(EvaluationPoint::new(1.0, 0.0).unwrap());
        assert_relative_eq!(low, -8.114746809206307e-3, max_relative = 1e-12);
        let (low300, high300) = ideal_metal_asymptotics(EvaluationPoint::new(1.0, 300.0).unwrap());
        assert_relative_eq!(low300, -8.127496639255818e-3, max_relative = 1e-12);
        assert_relative_eq!(high300, -2.4729156696789312e-3, max_relative = 1e-12);
        // at T = T_eff the bracket is 4/3
        let t_eff = crate::units::effective_temperature(1.0).unwrap();
        let (low_te, _) = ideal_metal_asymptotics(EvaluationPoint::new(1.0, t_eff).unwrap());
        assert_relative_eq!(low_te, -8.114746809206307e-3 * 4.0 / 3.0, max_relative = 1e-12);
    }

    #[test]
    fn high_t_dielectric_values() {
        let p = high_t_dielectric(1.0, 300.0, 3.81).unwrap();
        assert_relative_eq!(p, -3.678e-4, max_relative = 2e-3);
        // transparent plate limit
        assert!(high_t_dielectric(1.0, 300.0, 1.0).is_err());
        let p_near_one = high_t_dielectric(1.0, 300.0, 1.0 + 1e-9).unwrap();
        assert!(p_near_one.abs() < 1e-20);
        // eps0 -> infinity approaches half the ideal-metal high-T value
        let p_inf = high_t_dielectric(1.0, 300.0, 1e12).unwrap();
        let half_ideal = -crate::units::BOLTZMANN_EV_PER_K * 300.0 * crate::units::ZETA_3
            / (8.0 * std::f64::consts::PI);
        assert_relative_eq!(p_inf, half_ideal, max_relative = 1e-5);
    }
}
