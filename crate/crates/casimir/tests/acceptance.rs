//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line
//! (run with `cargo test --test acceptance -- --nocapture` to see them all).
//!
//! Every tolerance is pinned in code. Two checks are expected to stay red on
//! physical grounds; their failure messages carry the computed values and the
//! reasoning (see `criterion_04_*` and `criterion_07_*`).

use approx::relative_eq;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use casimir::analysis::{
    compare, CompareSettings, MeasurementRow, MeasurementSet, ObservableKind, Prediction,
};
use casimir::lifshitz::{
    entropy_curve, free_energy, high_t_dielectric, high_t_ratio, polylog3, pressure_matsubara,
    pressure_real_frequency, pressure_zero_temperature, thermal_correction, NernstClassification,
    Settings,
};
use casimir::materials::{lookup, MaterialOverrides, AU_FERMI_VELOCITY};
use casimir::optical::{ExtrapolationModel, ExtrapolationSpec, OpticalRow, OpticalTable, TabulatedPermittivity};
use casimir::reflection::{
    fresnel_pair, impedance_pair, local_impedances, nonlocal_impedances, WaveVectorPoint,
};
use casimir::response::{
    DrudeParams, NonlocalDrudeParams, Permittivity, PlasmaParams, RelaxationModel, ResponseModel,
    WavevectorForm,
};
use casimir::units::{pressure_to_pascal, EvaluationPoint, BOLTZMANN_EV_PER_K, ZETA_3};

fn check(criterion: &str, description: &str, ok: bool, details: &str) {
    let status = if ok { "PASS" } else { "FAIL" };
    println!("[{criterion}] {status} {description}: {details}");
    assert!(ok, "[{criterion}] {description}: {details}");
}

fn preset(name: &str) -> ResponseModel {
    lookup(name, &MaterialOverrides::default()).unwrap()
}

fn point(a: f64, t: f64) -> EvaluationPoint {
    EvaluationPoint::new(a, t).unwrap()
}

fn settings() -> Settings {
    Settings::default()
}

#[test]
fn criterion_01_ideal_metal_zero_temperature_pressure() {
    let p = pressure_zero_temperature(1.0, &preset("ideal-metal"), &settings()).unwrap();
    let pa = pressure_to_pascal(p.pressure_ev_um3) * 1e3; // mPa
    let expected = -1.3001;
    let ok = ((pa - expected) / expected).abs() < 1e-3;
    check(
        "criterion 01",
        "ideal-metal zero-T pressure at a = 1 um within 0.1%",
        ok,
        &format!("computed {pa:.5} mPa, expected {expected} mPa"),
    );
}

#[test]
fn criterion_02_ideal_metal_thermal_correction() {
    let cases = [(0.5, 0.0098e-2), (1.0, 0.157e-2)];
    for (a, expected) in cases {
        let tc = thermal_correction(point(a, 300.0), &preset("ideal-metal"), &settings()).unwrap();
        let ok = ((tc.relative - expected) / expected).abs() < 0.10;
        check(
            "criterion 02",
            &format!("ideal-metal relative thermal correction at a = {a} um within 10%"),
            ok,
            &format!("computed {:.4}%, expected {:.4}%", tc.relative * 100.0, expected * 100.0),
        );
    }
}

#[test]
fn criterion_03_drude_thermal_corrections_and_zero_crossing() {
    let model = preset("au-drude");
    let s = settings();
    // quoted values, tolerance +-0.5 percentage points
    for (a, expected_pct) in [(0.5, -6.4), (0.7, -9.4), (1.0, -13.8)] {
        let tc = thermal_correction(point(a, 300.0), &model, &s).unwrap();
        let got_pct = tc.relative * 100.0;
        let ok = (got_pct - expected_pct).abs() < 0.5;
        check(
            "criterion 03",
            &format!("Drude Au relative thermal correction at a = {a} um within 0.5 pp"),
            ok,
            &format!("computed {got_pct:.3}%, expected {expected_pct}%"),
        );
    }
    // zero crossing by bisection on [6.0, 6.6]
    let delta = |a: f64| thermal_correction(point(a, 300.0), &model, &s).unwrap().relative;
    let (mut lo, mut hi) = (6.0, 6.6);
    let (d_lo, d_hi) = (delta(lo), delta(hi));
    assert!(d_lo < 0.0 && d_hi > 0.0, "crossing must be bracketed: {d_lo} {d_hi}");
    for _ in 0..5 {
        let mid = 0.5 * (lo + hi);
        if delta(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let crossing = 0.5 * (lo + hi);
    let ok = (crossing - 6.3).abs() < 0.3;
    check(
        "criterion 03",
        "Drude Au thermal correction vanishes at 6.3 +- 0.3 um",
        ok,
        &format!("crossing at {crossing:.2} um"),
    );
}

#[test]
fn criterion_04_plasma_thermal_corrections() {
    // Quoted targets: +0.058% +- 0.03 pp at 0.5 um and +0.29% +- 0.06 pp at
    // 1.0 um. The plasma response with omega_p = 9.0 eV gives +0.0264% and
    // +0.2271% (cross-checked against an independent implementation, against
    // the T->0 continuity of the Matsubara sum, and against the analytic
    // low-temperature expansion whose T^3 coefficient is 2*delta0/a^2 with
    // delta0 = hbar*c/omega_p). Both sit just outside the stated windows, so
    // this criterion records an honest failure rather than a loosened test.
    let model = preset("au-plasma");
    let s = settings();
    for (a, expected_pct, tol_pp) in [(0.5, 0.058, 0.03), (1.0, 0.29, 0.06)] {
        let tc = thermal_correction(point(a, 300.0), &model, &s).unwrap();
        let got_pct = tc.relative * 100.0;
        let ok = (got_pct - expected_pct).abs() < tol_pp;
        check(
            "criterion 04",
            &format!("plasma Au relative thermal correction at a = {a} um within {tol_pp} pp"),
            ok,
            &format!("computed {got_pct:.4}%, expected {expected_pct}%"),
        );
    }
}

#[test]
fn criterion_05_high_temperature_half_values() {
    let s = settings();
    let drude = high_t_ratio(&preset("au-drude"), 15.0, 300.0, &s).unwrap();
    let ok = (drude - 0.50).abs() < 0.01;
    check(
        "criterion 05",
        "Drude/ideal high-T pressure ratio at a = 15 um equals 0.50 +- 0.01",
        ok,
        &format!("computed {drude:.6}"),
    );
    let silica = high_t_ratio(&preset("silica"), 15.0, 300.0, &s).unwrap();
    let ok = (silica - 0.50).abs() < 0.01;
    check(
        "criterion 05",
        "conducting-silica/ideal high-T ratio at a = 15 um equals 0.50 +- 0.01",
        ok,
        &format!("computed {silica:.6}"),
    );
}

#[test]
fn criterion_06_dielectric_high_temperature_closed_form() {
    let p = pressure_matsubara(point(15.0, 300.0), &preset("silica-no-conductivity"), &settings())
        .unwrap();
    // closed form with Li3(0.34129) = 0.35758 (series oracle)
    let li3 = polylog3(0.34129).unwrap();
    let expected =
        -BOLTZMANN_EV_PER_K * 300.0 / (8.0 * std::f64::consts::PI * 15.0f64.powi(3)) * li3;
    let rel = ((p.pressure_ev_um3 - expected) / expected).abs();
    check(
        "criterion 06",
        "silica (no conductivity) pressure at 15 um matches the polylog closed form within 0.5%",
        rel < 5e-3,
        &format!("computed {:.6e}, closed form {expected:.6e}, rel {rel:.2e}", p.pressure_ev_um3),
    );
}

#[test]
fn criterion_07_silica_thermal_corrections() {
    let s = settings();
    // without conductivity: 3.9% at 1 um, 15.4% at 2 um, +-1.5 pp
    let no_sigma = preset("silica-no-conductivity");
    for (a, expected_pct) in [(1.0, 3.9), (2.0, 15.4)] {
        let tc = thermal_correction(point(a, 300.0), &no_sigma, &s).unwrap();
        let got = tc.relative * 100.0;
        let ok = (got - expected_pct).abs() < 1.5;
        check(
            "criterion 07",
            &format!("silica without conductivity at a = {a} um within 1.5 pp"),
            ok,
            &format!("computed {got:.2}%, expected {expected_pct}%"),
        );
    }
    // With conductivity the targets are 182% at 1 um and 314% at 2 um
    // (+-20 pp). The pressure-based correction computes to 129.1% and
    // 226.1%: the only with/without difference at fixed epsilon_opt is the
    // exact l = 0 TM jump (k_B T/8 pi a^3)(zeta(3) - Li3(z)), which pins
    // delta_with - delta_without given the zero-T pressure, and the measured
    // without-conductivity values above confirm that pressure. The targets
    // are instead reproduced by the free-energy-based correction (184% at
    // 1 um); as pressure quantities they stay out of reach, so this check
    // records an honest failure.
    let with_sigma = preset("silica");
    for (a, expected_pct) in [(1.0, 182.0), (2.0, 314.0)] {
        let tc = thermal_correction(point(a, 300.0), &with_sigma, &s).unwrap();
        let got = tc.relative * 100.0;
        let ok = (got - expected_pct).abs() < 20.0;
        check(
            "criterion 07",
            &format!("silica with conductivity at a = {a} um within 20 pp"),
            ok,
            &format!("computed {got:.2}%, expected {expected_pct}%"),
        );
    }
}

#[test]
fn criterion_08_nernst_suite() {
    let s = settings();

    // plasma: entropy vanishes at T = 0
    let plasma = entropy_curve(
        1.0,
        &preset("au-plasma"),
        &[1.0, 2.0, 5.0, 10.0, 20.0, 50.0],
        None,
        None,
        &s,
    )
    .unwrap();
    check(
        "criterion 08",
        "plasma Au entropy classified nernst_satisfied",
        plasma.classification == NernstClassification::NernstSatisfied,
        &format!(
            "S(0+) = {:.3e} eV/(K um^2), tolerance {:.3e}",
            plasma.limit_estimate, plasma.tolerance_used
        ),
    );

    // perfect-lattice Drude: negative plateau
    let perfect = entropy_curve(
        1.0,
        &preset("au-drude-perfect"),
        &[0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0],
        None,
        None,
        &s,
    )
    .unwrap();
    let plateau_flat = {
        let s1 = perfect.samples[1].1;
        let s3 = perfect.samples[3].1;
        (s1 - s3).abs() < 0.05 * s1.abs()
    };
    check(
        "criterion 08",
        "perfect-lattice Drude entropy shows a negative plateau (negative_violation)",
        perfect.classification == NernstClassification::NegativeViolation
            && perfect.limit_estimate < 0.0
            && plateau_flat,
        &format!("S(0+) = {:.4e} eV/(K um^2)", perfect.limit_estimate),
    );

    // Drude with residual impurity relaxation gamma0 = 0.1 gamma(300 K): the
    // entropy climbs back to zero below the diffusive crossover
    // T* = gamma (hbar c/omega_p/a)^2 /(2 pi k_B) ~ 30 mK here. The approach
    // is slower than any polynomial (about sqrt(T) near T*), so the
    // extrapolated estimate carries an O(|S(T_1)|) bias; classify against 5%
    // of |S(T_max)|, which cleanly separates the restored case (a few percent
    // of the plateau) from the perfect-lattice violation (100% of it).
    let mut deep = s;
    deep.l_cap = 20_000_000;
    let impurity = entropy_curve(
        1.0,
        &preset("au-drude-impurity"),
        &[0.0025, 0.005, 0.01, 1.0, 10.0, 50.0],
        None,
        Some(0.05),
        &deep,
    )
    .unwrap();
    check(
        "criterion 08",
        "impurity Drude (gamma0 = 0.1 gamma(300K)) entropy classified nernst_satisfied",
        impurity.classification == NernstClassification::NernstSatisfied,
        &format!(
            "S(0+) = {:.3e} eV/(K um^2), tolerance {:.3e}, dip {:.3e}",
            impurity.limit_estimate,
            impurity.tolerance_used,
            impurity.samples.last().unwrap().1
        ),
    );

    // silica with temperature-frozen conductivity: positive limit with the
    // closed-form l = 0 TM value (zeta(3) - Li3(z)) k_B/(16 pi a^2)
    let frozen = entropy_curve(
        1.0,
        &preset("silica-frozen-conductivity"),
        &[1.0, 2.0, 5.0, 10.0],
        None,
        None,
        &s,
    )
    .unwrap();
    let z = ((3.801f64 - 1.0) / (3.801 + 1.0)).powi(2);
    let expected = (ZETA_3 - polylog3(z).unwrap()) * BOLTZMANN_EV_PER_K / (16.0 * std::f64::consts::PI);
    let spec_value = 0.84448 * BOLTZMANN_EV_PER_K / (16.0 * std::f64::consts::PI);
    let ok = frozen.classification == NernstClassification::PositiveViolation
        && relative_eq!(frozen.limit_estimate, spec_value, max_relative = 0.05);
    check(
        "criterion 08",
        "frozen-conductivity silica entropy positive_violation with the closed-form S(0+) within 5%",
        ok,
        &format!(
            "S(0+) = {:.5e}, closed form {expected:.5e} (quoted constant {spec_value:.5e})",
            frozen.limit_estimate
        ),
    );
}

#[test]
fn criterion_09_nonlocal_suite() {
    let s = settings();
    // full-wavevector form with v = 1.5 v_F tracks the plasma model within 2%
    let nonlocal = preset("au-nonlocal-eq20");
    let plasma = preset("au-plasma");
    for a in [0.2, 0.5, 1.0] {
        let p_nl = pressure_matsubara(point(a, 300.0), &nonlocal, &s).unwrap().pressure_ev_um3;
        let p_pl = pressure_matsubara(point(a, 300.0), &plasma, &s).unwrap().pressure_ev_um3;
        let rel = ((p_nl - p_pl) / p_pl).abs();
        check(
            "criterion 09",
            &format!("nonlocal full-k (v = 1.5 v_F) tracks plasma within 2% at a = {a} um"),
            rel < 0.02,
            &format!("P_nl = {p_nl:.6e}, P_plasma = {p_pl:.6e}, rel {rel:.4}"),
        );
    }

    // varying v_L from 0 to 10 v_F moves the pressure by under 1%
    let base = DrudeParams { plasma_frequency_ev: 9.0, relaxation: RelaxationModel::constant(0.035) };
    let with_vl = |v_l: f64| {
        ResponseModel::new(Permittivity::NonlocalDrude(NonlocalDrudeParams {
            base,
            v_transverse: 1.5 * AU_FERMI_VELOCITY,
            v_longitudinal: v_l,
            form: WavevectorForm::FullWavevector,
            fermi_velocity: AU_FERMI_VELOCITY,
        }))
    };
    let p_zero = pressure_matsubara(point(0.5, 300.0), &with_vl(0.0), &s).unwrap().pressure_ev_um3;
    let p_ten = pressure_matsubara(point(0.5, 300.0), &with_vl(10.0 * AU_FERMI_VELOCITY), &s)
        .unwrap()
        .pressure_ev_um3;
    let span = ((p_ten - p_zero) / p_zero).abs();
    check(
        "criterion 09",
        "v_L sweep over [0, 10 v_F] moves the pressure by < 1%",
        span < 0.01,
        &format!("span {:.3}%", span * 100.0),
    );

    // v = 0 reproduces the local Drude pressure to 1e-6 relative
    let local_limit = with_vl(0.0); // v_transverse still nonzero here, build explicitly
    drop(local_limit);
    let v0 = ResponseModel::new(Permittivity::NonlocalDrude(NonlocalDrudeParams {
        base,
        v_transverse: 0.0,
        v_longitudinal: 0.0,
        form: WavevectorForm::FullWavevector,
        fermi_velocity: AU_FERMI_VELOCITY,
    }));
    let p_v0 = pressure_matsubara(point(0.5, 300.0), &v0, &s).unwrap().pressure_ev_um3;
    let p_drude = pressure_matsubara(point(0.5, 300.0), &preset("au-drude"), &s)
        .unwrap()
        .pressure_ev_um3;
    let rel = ((p_v0 - p_drude) / p_drude).abs();
    check(
        "criterion 09",
        "nonlocal local limit (v = 0) reproduces Drude pressure to 1e-6",
        rel < 1e-6,
        &format!("P_v0 = {p_v0:.9e}, P_drude = {p_drude:.9e}, rel {rel:.2e}"),
    );
}

#[test]
fn criterion_10_impedance_path_equivalence() {
    // Fresnel vs impedance route at 1000 seeded random local points
    let mut rng = ChaCha8Rng::seed_from_u64(20220111);
    let drude = DrudeParams { plasma_frequency_ev: 9.0, relaxation: RelaxationModel::constant(0.035) };
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let xi = 10f64.powf(rng.gen_range(-3.0..2.0));
        let kperp = 10f64.powf(rng.gen_range(-2.0..2.5));
        let mu = if rng.gen_bool(0.2) { rng.gen_range(1.0..3.0) } else { 1.0 };
        let p = WaveVectorPoint::new(kperp, xi);
        let eps = drude.eps_imag_axis(xi, 300.0).unwrap();
        let direct = fresnel_pair(eps, mu, &p);
        let viaz = impedance_pair(local_impedances(eps, mu, &p), &p);
        worst = worst
            .max((direct.r_tm - viaz.r_tm).abs())
            .max((direct.r_te - viaz.r_te).abs());
    }
    check(
        "criterion 10",
        "Fresnel vs impedance coefficients agree to 1e-10 at 1000 random points",
        worst < 1e-10,
        &format!("worst componentwise difference {worst:.2e}"),
    );

    // wavevector quadrature with local permittivity reproduces the local
    // impedances to 1e-8
    let local = NonlocalDrudeParams {
        base: drude,
        v_transverse: 0.0,
        v_longitudinal: 0.0,
        form: WavevectorForm::FullWavevector,
        fermi_velocity: AU_FERMI_VELOCITY,
    };
    let mut worst_z: f64 = 0.0;
    for _ in 0..50 {
        let xi = 10f64.powf(rng.gen_range(-2.0..1.5));
        let kperp = 10f64.powf(rng.gen_range(-1.0..2.0));
        let p = WaveVectorPoint::new(kperp, xi);
        let eps = drude.eps_imag_axis(xi, 300.0).unwrap();
        let reference = local_impedances(eps, 1.0, &p);
        let quad = nonlocal_impedances(&local, 1.0, &p, 300.0, 1e-10).unwrap();
        worst_z = worst_z
            .max(((quad.z_tm - reference.z_tm) / reference.z_tm).abs())
            .max(((quad.z_te - reference.z_te) / reference.z_te).abs());
    }
    check(
        "criterion 10",
        "k3 impedance quadrature with local permittivity reproduces the local form to 1e-8",
        worst_z < 1e-8,
        &format!("worst relative difference {worst_z:.2e}"),
    );
}

#[test]
fn criterion_11_real_frequency_equivalence() {
    let s = settings();
    let drude = preset("au-drude");
    for a in [0.2, 0.5] {
        let matsubara = pressure_matsubara(point(a, 300.0), &drude, &s).unwrap().pressure_ev_um3;
        let real = pressure_real_frequency(point(a, 300.0), &drude, &s).unwrap();
        let rel = ((real.total_ev_um3 - matsubara) / matsubara).abs();
        check(
            "criterion 11",
            &format!("real-frequency total equals the Matsubara pressure within 5% at a = {a} um"),
            rel < 0.05,
            &format!(
                "real {:.5e} (prop {:.3e}, evan {:.3e}), matsubara {matsubara:.5e}, rel {rel:.4}",
                real.total_ev_um3, real.propagating_ev_um3, real.evanescent_ev_um3
            ),
        );
    }
}

#[test]
fn criterion_12_thermodynamic_identity() {
    // -dF/da = P within 0.1% for every parameterless preset at (0.5 um, 300 K)
    let s = settings();
    let presets = [
        "ideal-metal",
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
        "si-membrane-dark",
    ];
    let a = 0.5;
    let h = a * 1e-4;
    for name in presets {
        let model = preset(name);
        let p = pressure_matsubara(point(a, 300.0), &model, &s).unwrap().pressure_ev_um3;
        let f_hi = free_energy(point(a + h, 300.0), &model, &s).unwrap().free_energy_ev_um2;
        let f_lo = free_energy(point(a - h, 300.0), &model, &s).unwrap().free_energy_ev_um2;
        let derivative = -(f_hi - f_lo) / (2.0 * h);
        let rel = ((derivative - p) / p).abs();
        check(
            "criterion 12",
            &format!("-dF/da equals P within 0.1% for {name}"),
            rel < 1e-3,
            &format!("derivative {derivative:.6e}, pressure {p:.6e}, rel {rel:.2e}"),
        );
    }
}

#[test]
fn criterion_13_kramers_kronig_round_trip() {
    let drude = DrudeParams { plasma_frequency_ev: 9.0, relaxation: RelaxationModel::constant(0.035) };
    // synthetic table from the exact complex Drude response over [1e-4, 1e4]
    let (lo, hi, per_decade) = (1e-4f64, 1e4f64, 40);
    let count = (8.0 * per_decade as f64) as usize;
    let rows: Vec<OpticalRow> = (0..=count)
        .map(|i| {
            let w = lo * (hi / lo).powf(i as f64 / count as f64);
            let nk = drude.eps_real_axis(w, 300.0).sqrt();
            OpticalRow { energy_ev: w, n: nk.re, k: nk.im }
        })
        .collect();
    let table = OpticalTable::from_rows(rows).unwrap();
    let tabulated = TabulatedPermittivity::new(
        table,
        ExtrapolationSpec::new(ExtrapolationModel::Drude(drude)),
    )
    .unwrap();

    let mut worst: f64 = 0.0;
    for i in 0..=25 {
        let xi = 0.05 * (50.0f64 / 0.05).powf(i as f64 / 25.0);
        let got = tabulated.eps_imag_axis(xi).unwrap();
        let want = drude.eps_imag_axis(xi, 300.0).unwrap();
        worst = worst.max(((got - want) / want).abs());
    }
    check(
        "criterion 13",
        "transformed table matches the analytic response within 0.5% over [0.05, 50] eV",
        worst < 5e-3,
        &format!("worst relative deviation {worst:.2e}"),
    );

    let s = settings();
    let tab_model = ResponseModel::new(Permittivity::Tabulated(tabulated));
    let drude_model = preset("au-drude");
    for a in [0.5, 1.0, 3.0] {
        let p_tab = pressure_matsubara(point(a, 300.0), &tab_model, &s).unwrap().pressure_ev_um3;
        let p_drude =
            pressure_matsubara(point(a, 300.0), &drude_model, &s).unwrap().pressure_ev_um3;
        let rel = ((p_tab - p_drude) / p_drude).abs();
        check(
            "criterion 13",
            &format!("table-driven pressure matches pure Drude within 0.3% at a = {a} um"),
            rel < 3e-3,
            &format!("tabulated {p_tab:.6e}, drude {p_drude:.6e}, rel {rel:.2e}"),
        );
    }
}

#[test]
fn comparison_harness_on_synthetic_fixture() {
    // plasma-generated data with in-band noise: plasma consistent, Drude
    // excluded at sub-micron separations
    let s = settings();
    let grid: Vec<f64> = (0..12).map(|i| 0.42 + 0.035 * i as f64).collect();
    let models = [("au-plasma", preset("au-plasma")), ("au-drude", preset("au-drude"))];
    let mut predictions = Vec::new();
    for (name, model) in &models {
        let values: Vec<f64> = grid
            .iter()
            .map(|&a| pressure_matsubara(point(a, 300.0), model, &s).unwrap().pressure_ev_um3)
            .collect();
        predictions.push(Prediction {
            name: name.to_string(),
            separations_um: grid.clone(),
            values,
        });
    }
    let plasma_values = &predictions[0].values;
    let rows: Vec<MeasurementRow> = grid
        .iter()
        .zip(plasma_values)
        .enumerate()
        .filter(|(i, _)| i % 2 == 0)
        .map(|(i, (&a, &v))| {
            let total_error = 0.01 * v.abs(); // 1% experimental error
            let noise = if i % 4 == 0 { 0.4 } else { -0.3 };
            MeasurementRow { separation_um: a, value: v + noise * total_error, total_error }
        })
        .collect();
    let data = MeasurementSet::new(rows, ObservableKind::Pressure, 95.0).unwrap();
    let reports = compare(&data, &predictions, CompareSettings::default()).unwrap();
    let drude = reports.iter().find(|r| r.model == "au-drude").unwrap();
    let plasma = reports.iter().find(|r| r.model == "au-plasma").unwrap();
    check(
        "compare fixture",
        "plasma consistent and Drude excluded on plasma-generated data",
        plasma.verdict == casimir::analysis::Verdict::Consistent
            && drude.verdict == casimir::analysis::Verdict::Excluded,
        &format!(
            "plasma fraction {:.2}, drude fraction {:.2}",
            plasma.fraction_consistent, drude.fraction_consistent
        ),
    );
}

#[test]
fn single_pressure_evaluation_is_fast() {
    // desk-scale runtime note: a single pressure evaluation should stay well
    // under 50 ms; report the measurement without failing on slow machines
    let s = settings();
    let model = preset("au-drude");
    let start = std::time::Instant::now();
    let iterations = 20;
    for _ in 0..iterations {
        let _ = pressure_matsubara(point(0.5, 300.0), &model, &s).unwrap();
    }
    let per_eval = start.elapsed() / iterations;
    println!("[runtime note] pressure evaluation takes {per_eval:?} (target < 50 ms)");
}
