use num_complex::Complex64;
use casimir::response::{DrudeParams, RelaxationModel};
use casimir::units::HBAR_C_EV_UM;

// standalone copy of the tilted propagating integrand for inspection
fn prop_at(x: f64, tilt: f64, a: f64, n_u: usize) -> f64 {
    let drude = DrudeParams { plasma_frequency_ev: 9.0, relaxation: RelaxationModel::constant(0.035) };
    let omega = Complex64::new(x, tilt * x);
    let gamma = 0.035;
    let eps = Complex64::new(1.0, 0.0)
        - drude.plasma_frequency_ev.powi(2) / (omega * (omega + Complex64::new(0.0, gamma)));
    let w_hc = omega / HBAR_C_EV_UM;
    // trapezoid in u
    let mut inner = Complex64::new(0.0, 0.0);
    for i in 1..n_u {
        let u = i as f64 / n_u as f64;
        let s2 = 1.0 - u * u;
        let kperp2 = w_hc * w_hc * s2;
        let k = (kperp2 - eps * w_hc * w_hc).sqrt();
        let q = Complex64::new(0.0, -1.0) * w_hc * u;
        let r_tm = (eps * q - k) / (eps * q + k);
        let r_te = (q - k) / (q + k);
        let decay = (-2.0 * a * q).exp();
        let mut xs = Complex64::new(0.0, 0.0);
        for r in [r_tm, r_te] {
            let w = r * r * decay;
            xs += w / (Complex64::new(1.0, 0.0) - w);
        }
        inner += u * u * xs / n_u as f64;
    }
    let two_kt = 2.0 * 8.617333262e-5 * 300.0;
    let z = omega / two_kt;
    let coth = if z.re > 20.0 { Complex64::new(1.0, 0.0) + 2.0 * (-2.0 * z).exp() } else { Complex64::new(1.0, 0.0) + 2.0 / ((2.0 * z).exp() - 1.0) };
    let ray = Complex64::new(1.0, tilt);
    let prefactor = ray * Complex64::new(0.0, -1.0) * w_hc.powu(3);
    (coth * prefactor * inner).im
}

fn main() {
    let a = 0.2;
    println!("brute real-axis reference (coth~1): x=5: 3949, x=20: -40.6, x=40: 18.8");
    for x in [5.0, 20.0, 40.0] {
        for tilt in [0.002, 0.01, 0.05, 0.25] {
            let v = prop_at(x, tilt, a, 400_000);
            print!("  x={x} tilt={tilt}: {v:.4e}");
        }
        println!();
    }
}
