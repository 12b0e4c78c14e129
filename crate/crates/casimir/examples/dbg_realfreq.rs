use num_complex::Complex64;
use casimir::response::{DrudeParams, RelaxationModel};
use casimir::units::HBAR_C_EV_UM;

fn main() {
    let drude = DrudeParams { plasma_frequency_ev: 9.0, relaxation: RelaxationModel::constant(0.035) };
    let a = 0.2;
    for omega in [2.0, 5.0, 10.0, 20.0, 40.0, 80.0, 160.0] {
        let eps = drude.eps_real_axis(omega, 300.0);
        let w_hc = omega / HBAR_C_EV_UM;
        // brute force with very fine trapezoid in kz
        let n = 2_000_000usize;
        let mut sum = 0.0;
        for i in 0..=n {
            let kz = w_hc * i as f64 / n as f64;
            let kperp2 = (w_hc * w_hc - kz * kz).max(0.0);
            let k = (Complex64::new(kperp2, 0.0) - eps * w_hc * w_hc).sqrt();
            let q = Complex64::new(0.0, -kz);
            let r_tm = (eps * q - k) / (eps * q + k);
            let r_te = (q - k) / (q + k);
            let phase = Complex64::from_polar(1.0, 2.0 * a * kz);
            let mut x = Complex64::new(0.0, 0.0);
            for r in [r_tm, r_te] {
                let w = r * r * phase;
                x += w / (Complex64::new(1.0, 0.0) - w);
            }
            if i == 0 { continue; }
            let weight = if i == n { 0.5 } else { 1.0 };
            sum += weight * kz * kz * (-x.re);
        }
        let g = sum * w_hc / n as f64;
        println!("omega={omega:>6}: G_pr = {g:.6e}");
    }
}
