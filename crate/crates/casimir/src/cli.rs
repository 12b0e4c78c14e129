//! Batch execution of runs: resolve materials, dispatch the command, write
//! the data table (CSV or JSON) and the manifest, map failures to exit codes.
//!
//! Exit codes: 2 configuration, 3 numerics, 4 I/O — emitted by the binary as
//! a machine-readable error record on stderr.

use std::fs;
use std::path::Path;

use serde_json::json;
use thiserror::Error;

use crate::analysis::{
    compare, curve, differential_force, pfa_force, pfa_gradient, AnalysisError, CompareSettings,
    MeasurementSet, Prediction, SphereGeometry,
};
use crate::config::{CommandKind, ConfigError, OutputFormat, RunConfig};
use crate::lifshitz::{
    entropy_curve, free_energy, pressure_matsubara, pressure_zero_temperature, thermal_correction,
    LifshitzError,
};
use crate::materials::{self, MaterialError, MaterialOverrides};
use crate::optical::{ExtrapolationModel, ExtrapolationSpec, OpticalTable, TabulatedPermittivity};
use crate::response::{DrudeParams, PlasmaParams, RelaxationModel, ResponseModel};
use crate::units::{pressure_to_pascal, EvaluationPoint};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("numeric error: {0}")]
    Numeric(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numeric(_) => 3,
            CliError::Io(_) => 4,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Config(_) => "config",
            CliError::Numeric(_) => "numeric",
            CliError::Io(_) => "io",
        }
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Config(e.to_string())
    }
}
impl From<MaterialError> for CliError {
    fn from(e: MaterialError) -> Self {
        CliError::Config(e.to_string())
    }
}
impl From<LifshitzError> for CliError {
    fn from(e: LifshitzError) -> Self {
        CliError::Numeric(e.to_string())
    }
}
impl From<crate::units::UnitsError> for CliError {
    fn from(e: crate::units::UnitsError) -> Self {
        CliError::Config(e.to_string())
    }
}
impl From<AnalysisError> for CliError {
    fn from(e: AnalysisError) -> Self {
        match e {
            AnalysisError::Lifshitz(inner) => CliError::Numeric(inner.to_string()),
            AnalysisError::GridTooSmall(_) | AnalysisError::Uncovered { .. } => {
                CliError::Numeric(e.to_string())
            }
            other => CliError::Config(other.to_string()),
        }
    }
}
impl From<crate::optical::OpticalError> for CliError {
    fn from(e: crate::optical::OpticalError) -> Self {
        match e {
            crate::optical::OpticalError::Quadrature(_) => CliError::Numeric(e.to_string()),
            other => CliError::Config(other.to_string()),
        }
    }
}

/// A rendered result table; every cell is already a deterministic string.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    fn new<S: Into<String>>(columns: Vec<S>) -> Self {
        Self { columns: columns.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

fn num(v: f64) -> String {
    // shortest round-trip representation; deterministic across platforms
    format!("{v}")
}

/// Everything a run produced.
#[derive(Debug)]
pub struct RunArtifacts {
    pub table: Table,
    /// Free-form summary lines (verdicts, advisories) printed by the binary.
    pub notes: Vec<String>,
    pub output_path: String,
    pub manifest_path: String,
}

fn material_overrides(config: &RunConfig) -> Result<MaterialOverrides, CliError> {
    let table_csv = match &config.overrides.table_path {
        Some(path) => Some(
            fs::read_to_string(path)
                .map_err(|e| CliError::Io(format!("reading optical table {path}: {e}")))?,
        ),
        None => None,
    };
    Ok(MaterialOverrides {
        fermi_velocity: config.overrides.fermi_velocity,
        sigma_per_s: config.overrides.sigma_per_s,
        omega_p_ev: config.overrides.omega_p_ev,
        gamma_ev: config.overrides.gamma_ev,
        table_csv,
    })
}

fn resolve_materials(config: &RunConfig) -> Result<Vec<(String, ResponseModel)>, CliError> {
    if config.materials.is_empty() {
        return Err(CliError::Config("no material given (use --material)".into()));
    }
    let overrides = material_overrides(config)?;
    config
        .materials
        .iter()
        .map(|name| Ok((name.clone(), materials::lookup(name, &overrides)?)))
        .collect()
}

fn geometry(config: &RunConfig) -> Result<SphereGeometry, CliError> {
    let radius = config
        .radius_um
        .ok_or_else(|| CliError::Config("this command requires --radius (um)".into()))?;
    Ok(SphereGeometry::new(radius)?)
}

/// Execute a resolved run and write its artifacts.
pub fn run(config: &RunConfig) -> Result<RunArtifacts, CliError> {
    let execute = || -> Result<(Table, Vec<String>), CliError> {
        match config.command {
            CommandKind::Pressure => cmd_pressure(config),
            CommandKind::ThermalCorrection => cmd_thermal(config),
            CommandKind::Gradient => cmd_gradient(config),
            CommandKind::Force => cmd_force(config),
            CommandKind::FreeEnergy => cmd_free_energy(config),
            CommandKind::Entropy => cmd_entropy(config),
            CommandKind::Curve => cmd_curve(config),
            CommandKind::Compare => cmd_compare(config),
            CommandKind::KkTransform => cmd_kk(config),
            CommandKind::DiffForce => cmd_diff_force(config),
        }
    };
    let (table, notes) = match config.threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::Config(format!("thread pool: {e}")))?;
            pool.install(execute)?
        }
        None => execute()?,
    };

    let output_path = config.output_path.clone();
    let manifest_path = format!("{output_path}.manifest");
    write_table(&table, &output_path, config)?;
    fs::write(&manifest_path, config.manifest())
        .map_err(|e| CliError::Io(format!("writing {manifest_path}: {e}")))?;
    Ok(RunArtifacts { table, notes, output_path, manifest_path })
}

fn write_table(table: &Table, path: &str, config: &RunConfig) -> Result<(), CliError> {
    if let Some(parent) = Path::new(path).parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent).map_err(|e| CliError::Io(format!("creating {parent:?}: {e}")))?;
        }
    }
    match config.format {
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_path(path)
                .map_err(|e| CliError::Io(format!("opening {path}: {e}")))?;
            w.write_record(&table.columns).map_err(|e| CliError::Io(e.to_string()))?;
            for row in &table.rows {
                w.write_record(row).map_err(|e| CliError::Io(e.to_string()))?;
            }
            w.flush().map_err(|e| CliError::Io(e.to_string()))?;
        }
        OutputFormat::Json => {
            let doc = json!({
                "schema_version": 1,
                "command": config.command.as_str(),
                "columns": table.columns,
                "rows": table.rows,
            });
            fs::write(path, serde_json::to_string_pretty(&doc).expect("json render"))
                .map_err(|e| CliError::Io(format!("writing {path}: {e}")))?;
        }
    }
    Ok(())
}

fn for_each_point<F>(config: &RunConfig, mut f: F) -> Result<(), CliError>
where
    F: FnMut(&str, &ResponseModel, f64) -> Result<(), CliError>,
{
    let models = resolve_materials(config)?;
    let points = config.sweep.points().map_err(CliError::from)?;
    for (name, model) in &models {
        for &a in &points {
            f(name, model, a)?;
        }
    }
    Ok(())
}

fn cmd_pressure(config: &RunConfig) -> Result<(Table, Vec<String>), CliError> {
    let mut table = Table::new(vec![
        "material",
        "separation_um",
        "temperature_k",
        "pressure_ev_um3",
        "pressure_pa",
        "terms_used",
        "quadrature_error_ev_um3",
    ]);
    for_each_point(config, |name, model, a| {
        let point = EvaluationPoint::new(a, config.temperature_k)?;
        let p = pressure_matsubara(point, model, &config.settings)?;
        table.push(vec![
            name.to_string(),
            num(a),
            num(config.temperature_k),
            num(p.pressure_ev_um3),
            num(pressure_to_pascal(p.pressure_ev_um3)),
            p.terms_used.to_string(),
            num(p.quadrature_error),
        ]);
        Ok(())
    })?;
    Ok((table, Vec::new()))
}

fn cmd_thermal(config: &RunConfig) -> Result<(Table, Vec<String>), CliError> {
    let mut table = Table::new(vec![
        "material",
        "separation_um",
        "temperature_k",
        "pressure_t_ev_um3",
        "pressure_0_ev_um3",
        "delta_p_ev_um3",
        "relative_delta_p",
    ]);
    for_each_point(config, |name, model, a| {
        let point = EvaluationPoint::new(a, config.temperature_k)?;
        let warm = pressure_matsubara(point, model, &config.settings)?;
        let cold = pressure_zero_temperature(a, model, &config.settings)?;
        let tc = thermal_correction(point, model, &config.settings)?;
        table.push(vec![
            name.to_string(),
            num(a),
            num(config.temperature_k),
            num(warm.pressure_ev_um3),
            num(cold.pressure_ev_um3),
            num(tc.absolute_ev_um3),
            num(tc.relative),
        ]);
        Ok(())
    })?;
    Ok((table, Vec::new()))
}

fn cmd_gradient(config: &RunConfig) -> Result<(Table, Vec<String>), CliError> {
    let geom = geometry(config)?;
    let mut notes = Vec::new();
    let mut table = Table::new(vec![
        "material",
        "separation_um",
        "temperature_k",
        "radius_um",
        "force_gradient_ev_um2",
    ]);
    for_each_point(config, |name, model, a| {
        if let Some(ratio) = geom.pfa_advisory(a) {
            notes.push(format!(
                "advisory: a/R = {ratio:.4} at a = {a} um exceeds 0.01; PFA accuracy degrades"
            ));
        }
        let point = EvaluationPoint::new(a, config.temperature_k)?;
        let g = pfa_gradient(point, model, geom, &config.settings)?;
        table.push(vec![
            name.to_string(),
            num(a),
            num(config.temperature_k),
            num(geom.radius_um),
            num(g),
        ]);
        Ok(())
    })?;
    Ok((table, notes))
}

fn cmd_force(config: &RunConfig) -> Result<(Table, Vec<String>), CliError> {
    let geom = geometry(config)?;
    let mut table = Table::new(vec![
        "material",
        "separation_um",
        "temperature_k",
        "radius_um",
        "force_ev_um",
    ]);
    for_each_point(config, |name, model, a| {
        let point = EvaluationPoint::new(a, config.temperature_k)?;
        let f = pfa_force(point, model, geom, &config.settings)?;
        table.push(vec![
            name.to_string(),
            num(a),
            num(config.temperature_k),
            num(geom.radius_um),
            num(f),
        ]);
        Ok(())
    })?;
    Ok((table, Vec::new()))
}

fn cmd_free_energy(config: &RunConfig) -> Result<(Table, Vec<String>), CliError> {
    let mut table = Table::new(vec![
        "material",
        "separation_um",
        "temperature_k",
        "free_energy_ev_um2",
        "terms_used",
    ]);
    for_each_point(config, |name, model, a| {
        let point = EvaluationPoint::new(a, config.temperature_k)?;
        let f = free_energy(point, model, &config.settings)?;
        table.push(vec![
            name.to_string(),
            num(a),
            num(config.temperature_k),
            num(f.free_energy_ev_um2),
            f.terms_used.to_string(),
        ]);
        Ok(())
    })?;
    Ok((table, Vec::new()))
}

fn cmd_entropy(config: &RunConfig) -> Result<(Table, Vec<String>), CliError> {
    let models = resolve_materials(config)?;
    if models.len() != 1 {
        return Err(CliError::Config("entropy expects exactly one material".into()));
    }
    let grid = config
        .entropy_grid_k
        .as_ref()
        .ok_or_else(|| CliError::Config("entropy requires a temperature grid (--T start:stop:count)".into()))?;
    let a = config.sweep.start_um;
    let (name, model) = &models[0];
    let curve = entropy_curve(
        a,
        model,
        grid,
        config.entropy_step_k,
        config.entropy_tol_fraction,
        &config.settings,
    )?;
    let class = serde_json::to_string(&curve.classification).expect("enum");
    let class = class.trim_matches('"').to_string();
    let mut table = Table::new(vec![
        "material",
        "separation_um",
        "temperature_k",
        "entropy_ev_per_k_um2",
        "classification",
        "limit_estimate_ev_per_k_um2",
    ]);
    for (t, s) in &curve.samples {
        table.push(vec![
            name.clone(),
            num(a),
            num(*t),
            num(*s),
            class.clone(),
            num(curve.limit_estimate),
        ]);
    }
    let notes = vec![format!(
        "{name}: S(0+) = {:.6e} eV/(K um^2), tolerance {:.3e}, classification {class}",
        curve.limit_estimate, curve.tolerance_used
    )];
    Ok((table, notes))
}

fn cmd_curve(config: &RunConfig) -> Result<(Table, Vec<String>), CliError> {
    let quantity = config
        .quantity
        .ok_or_else(|| CliError::Config("curve requires --quantity".into()))?;
    let models = resolve_materials(config)?;
    let geom = if quantity.needs_geometry() { Some(geometry(config)?) } else { None };
    let result = curve(quantity, config.sweep, config.temperature_k, &models, geom, &config.settings)?;
    let mut columns = vec!["separation_um".to_string()];
    columns.extend(result.columns.iter().cloned());
    let mut table = Table { columns, rows: Vec::new() };
    for (i, &a) in result.separations_um.iter().enumerate() {
        let mut row = vec![num(a)];
        for cell in &result.cells[i] {
            row.push(cell.map(num).unwrap_or_else(|| "NA".to_string()));
        }
        table.push(row);
    }
    Ok((table, Vec::new()))
}

fn cmd_compare(config: &RunConfig) -> Result<(Table, Vec<String>), CliError> {
    let spec = config
        .compare
        .as_ref()
        .ok_or_else(|| CliError::Config("compare requires --data".into()))?;
    let raw = fs::read_to_string(&spec.data_path)
        .map_err(|e| CliError::Io(format!("reading {}: {e}", spec.data_path)))?;
    let data = MeasurementSet::from_csv(raw.as_bytes(), spec.observable, spec.confidence_percent)?;

    let models = resolve_materials(config)?;
    let grid = config.sweep.points().map_err(CliError::from)?;
    let geom = match spec.observable {
        crate::analysis::ObservableKind::Pressure => None,
        _ => Some(geometry(config)?),
    };
    let mut predictions = Vec::new();
    for (name, model) in &models {
        let mut values = Vec::with_capacity(grid.len());
        for &a in &grid {
            let point = EvaluationPoint::new(a, config.temperature_k)?;
            let v = match spec.observable {
                crate::analysis::ObservableKind::Pressure => {
                    pressure_matsubara(point, model, &config.settings)?.pressure_ev_um3
                }
                crate::analysis::ObservableKind::ForceGradient => {
                    pfa_gradient(point, model, geom.unwrap(), &config.settings)?
                }
                crate::analysis::ObservableKind::Force
                | crate::analysis::ObservableKind::ForceDifference => {
                    pfa_force(point, model, geom.unwrap(), &config.settings)?
                }
            };
            values.push(v);
        }
        predictions.push(Prediction { name: name.clone(), separations_um: grid.clone(), values });
    }
    let reports = compare(
        &data,
        &predictions,
        CompareSettings {
            residual_threshold: spec.residual_threshold,
            consistency_fraction: spec.consistency_fraction,
        },
    )?;

    let mut table = Table::new(vec![
        "model",
        "separation_um",
        "prediction",
        "datum",
        "normalized_residual",
        "consistent",
        "fraction_consistent",
        "verdict",
    ]);
    let mut notes = Vec::new();
    for report in &reports {
        let verdict = serde_json::to_string(&report.verdict).expect("enum");
        let verdict = verdict.trim_matches('"').to_string();
        for p in &report.points {
            table.push(vec![
                report.model.clone(),
                num(p.separation_um),
                num(p.prediction),
                num(p.datum),
                num(p.normalized_residual),
                p.consistent.to_string(),
                num(report.fraction_consistent),
                verdict.clone(),
            ]);
        }
        notes.push(format!(
            "{}: verdict = {verdict}, {:.1}% of points within {} error bars",
            report.model,
            report.fraction_consistent * 100.0,
            spec.residual_threshold
        ));
    }
    Ok((table, notes))
}

fn cmd_kk(config: &RunConfig) -> Result<(Table, Vec<String>), CliError> {
    let spec = config.kk.as_ref().ok_or_else(|| CliError::Config("kk-transform requires --table".into()))?;
    let raw = fs::read_to_string(&spec.table_path)
        .map_err(|e| CliError::Io(format!("reading {}: {e}", spec.table_path)))?;
    let table_data = OpticalTable::from_csv(raw.as_bytes())?;
    let model = match spec.extrapolation.as_str() {
        "drude" => {
            let wp = spec.omega_p_ev.ok_or_else(|| {
                CliError::Config("drude extrapolation requires --omega-p".into())
            })?;
            let gamma = spec
                .gamma_ev
                .ok_or_else(|| CliError::Config("drude extrapolation requires --gamma".into()))?;
            ExtrapolationModel::Drude(DrudeParams {
                plasma_frequency_ev: wp,
                relaxation: RelaxationModel::constant(gamma),
            })
        }
        "plasma" => {
            let wp = spec.omega_p_ev.ok_or_else(|| {
                CliError::Config("plasma extrapolation requires --omega-p".into())
            })?;
            ExtrapolationModel::Plasma(PlasmaParams { plasma_frequency_ev: wp })
        }
        "dielectric" => ExtrapolationModel::DielectricConstant,
        other => {
            return Err(CliError::Config(format!(
                "unknown extrapolation `{other}` (drude, plasma, dielectric)"
            )))
        }
    };
    let tab = TabulatedPermittivity::new(table_data, ExtrapolationSpec::new(model))?;
    let diag = tab.diagnostics();
    let mut notes = vec![format!(
        "matching point {} eV: Im eps mismatch {:.2}%{}",
        diag.matching_point_ev,
        diag.matching_mismatch * 100.0,
        if diag.mismatch_exceeds_tolerance { " (exceeds tolerance; reported, not corrected)" } else { "" }
    )];
    notes.push(format!("high-frequency tail coefficient A = {:.6e} eV^3", diag.tail_coefficient));

    let mut table = Table::new(vec!["xi_ev", "eps_imag_axis"]);
    let n = spec.xi_count.max(2);
    for i in 0..n {
        let xi = spec.xi_start_ev * (spec.xi_stop_ev / spec.xi_start_ev).powf(i as f64 / (n - 1) as f64);
        table.push(vec![num(xi), num(tab.eps_imag_axis(xi)?)]);
    }
    Ok((table, notes))
}

fn cmd_diff_force(config: &RunConfig) -> Result<(Table, Vec<String>), CliError> {
    let models = resolve_materials(config)?;
    if models.len() != 2 {
        return Err(CliError::Config(
            "diff-force expects exactly two materials (state A, state B)".into(),
        ));
    }
    let geom = geometry(config)?;
    let grid = config.sweep.points().map_err(CliError::from)?;
    let diff = differential_force(
        &grid,
        &models[0].1,
        &models[1].1,
        config.temperature_k,
        geom,
        &config.settings,
    )?;
    let mut table = Table::new(vec!["separation_um", "force_difference_ev_um"]);
    for (a, d) in diff {
        table.push(vec![num(a), num(d)]);
    }
    Ok((table, Vec::new()))
}

/// Diagnostics listing for `validate`: resolved parameters, unit conversions
/// and advisory warnings. Never fails; problems come back as `error:` lines.
pub fn validate(config: &RunConfig) -> Vec<String> {
    let mut lines: Vec<String> = config
        .diagnostics()
        .into_iter()
        .map(|(k, v)| format!("{k} = {v}"))
        .collect();
    match material_overrides(config) {
        Ok(overrides) => {
            for name in &config.materials {
                match materials::lookup(name, &overrides) {
                    Ok(model) => {
                        lines.push(format!(
                            "material {name}: resolved (nonlocal: {}, static mu: {})",
                            model.is_nonlocal(),
                            model.permeability.static_mu
                        ));
                        if let crate::response::Permittivity::Tabulated(t) = &model.permittivity {
                            let d = t.diagnostics();
                            if d.mismatch_exceeds_tolerance {
                                lines.push(format!(
                                    "warning: {name}: Im eps mismatch {:.1}% at the matching point",
                                    d.matching_mismatch * 100.0
                                ));
                            }
                        }
                    }
                    Err(e) => lines.push(format!("error: {e}")),
                }
            }
        }
        Err(e) => lines.push(format!("error: {e}")),
    }
    if let Some(radius) = config.radius_um {
        if let Ok(geom) = SphereGeometry::new(radius) {
            for a in config.sweep.points().unwrap_or_default() {
                if let Some(ratio) = geom.pfa_advisory(a) {
                    lines.push(format!(
                        "advisory: a/R = {ratio:.4} at a = {a} um exceeds 0.01; PFA degrades"
                    ));
                }
            }
        } else {
            lines.push(format!("error: radius must be positive, got {radius}"));
        }
    }
    if config.materials.is_empty() {
        lines.push("error: no material configured".into());
    }
    lines
}
