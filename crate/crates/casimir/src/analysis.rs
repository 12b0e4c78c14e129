//! Sphere-plate observables through the proximity force approximation,
//! figure-curve generation and the measurement-comparison harness.
//!
//! PFA maps the plate-plate quantities onto a sphere of radius R ≫ a:
//! the force gradient is F′_sp = −2πR·P and the force itself
//! F_sp = 2πR·F(a,T). The comparison harness interpolates predictions onto
//! the measured separations (cubic in log a, Casimir observables being near
//! power laws) and judges each point against its stated total error with no
//! fitting parameters anywhere.

use std::io::Read;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lifshitz::{
    free_energy, pressure_matsubara, thermal_correction, LifshitzError, Settings,
};
use crate::response::ResponseModel;
use crate::units::EvaluationPoint;

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Lifshitz(#[from] LifshitzError),
    #[error(transparent)]
    Units(#[from] crate::units::UnitsError),
    #[error("sphere radius must be positive, got {0} um")]
    NonPositiveRadius(f64),
    #[error("measurement csv parse failure at data row {row}: {message}")]
    Parse { row: usize, message: String },
    #[error("measurement csv header must be `separation_um,value,total_error`, got `{0}`")]
    Header(String),
    #[error("measurement set is empty")]
    EmptyData,
    #[error("total_error must be positive at row {row}, got {value}")]
    NonPositiveError { row: usize, value: f64 },
    #[error("prediction grid [{lo}, {hi}] um does not cover data separations: {uncovered:?}")]
    Uncovered { lo: f64, hi: f64, uncovered: Vec<f64> },
    #[error("prediction grid needs at least 4 points for cubic interpolation, got {0}")]
    GridTooSmall(usize),
    #[error("sweep spec invalid: {0}")]
    Sweep(String),
}

/// Sphere radius for PFA mappings. Validity is advisory: typical experiments
/// hold a/R below 0.01.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SphereGeometry {
    pub radius_um: f64,
}

impl SphereGeometry {
    pub fn new(radius_um: f64) -> Result<Self, AnalysisError> {
        if !(radius_um > 0.0) {
            return Err(AnalysisError::NonPositiveRadius(radius_um));
        }
        Ok(Self { radius_um })
    }

    /// Advisory aspect-ratio check; `Some(ratio)` when a/R exceeds 0.01.
    pub fn pfa_advisory(&self, separation_um: f64) -> Option<f64> {
        let ratio = separation_um / self.radius_um;
        (ratio > 0.01).then_some(ratio)
    }
}

/// Sphere-plate force gradient F′_sp = −2πR·P in eV/μm²; positive for an
/// attractive (negative) pressure.
pub fn pfa_gradient(
    point: EvaluationPoint,
    model: &ResponseModel,
    geometry: SphereGeometry,
    settings: &Settings,
) -> Result<f64, AnalysisError> {
    let p = pressure_matsubara(point, model, settings)?;
    Ok(-2.0 * std::f64::consts::PI * geometry.radius_um * p.pressure_ev_um3)
}

/// Inverse of [`pfa_gradient`]: P = −F′_sp/(2πR).
pub fn pfa_pressure_from_gradient(gradient_ev_um2: f64, geometry: SphereGeometry) -> f64 {
    -gradient_ev_um2 / (2.0 * std::f64::consts::PI * geometry.radius_um)
}

/// Sphere-plate force F_sp = 2πR·F(a,T) in eV/μm; negative for attraction.
pub fn pfa_force(
    point: EvaluationPoint,
    model: &ResponseModel,
    geometry: SphereGeometry,
    settings: &Settings,
) -> Result<f64, AnalysisError> {
    let f = free_energy(point, model, settings)?;
    Ok(2.0 * std::f64::consts::PI * geometry.radius_um * f.free_energy_ev_um2)
}

/// Pointwise difference of the sphere-plate force under two material states,
/// F_A − F_B at each separation.
pub fn differential_force(
    separations_um: &[f64],
    state_a: &ResponseModel,
    state_b: &ResponseModel,
    temperature_k: f64,
    geometry: SphereGeometry,
    settings: &Settings,
) -> Result<Vec<(f64, f64)>, AnalysisError> {
    separations_um
        .par_iter()
        .map(|&a| {
            let point = EvaluationPoint::new(a, temperature_k)?;
            let fa = pfa_force(point, state_a, geometry, settings)?;
            let fb = pfa_force(point, state_b, geometry, settings)?;
            Ok((a, fa - fb))
        })
        .collect()
}

/// Separation sweep specification.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub start_um: f64,
    pub stop_um: f64,
    pub count: usize,
    pub spacing: Spacing,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    Linear,
    Log,
}

impl SweepSpec {
    pub fn points(&self) -> Result<Vec<f64>, AnalysisError> {
        if !(self.start_um > 0.0) || !(self.stop_um >= self.start_um) || self.count == 0 {
            return Err(AnalysisError::Sweep(format!(
                "need 0 < start <= stop and count > 0, got {self:?}"
            )));
        }
        if self.count == 1 {
            return Ok(vec![self.start_um]);
        }
        let n = (self.count - 1) as f64;
        Ok((0..self.count)
            .map(|i| match self.spacing {
                Spacing::Linear => {
                    self.start_um + (self.stop_um - self.start_um) * i as f64 / n
                }
                Spacing::Log => {
                    self.start_um * (self.stop_um / self.start_um).powf(i as f64 / n)
                }
            })
            .collect())
    }
}

/// Which scalar a curve column holds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Quantity {
    /// eV/μm³
    Pressure,
    /// dimensionless Δ_T P/P(a,0)
    RelativeThermalCorrection,
    /// eV/μm²
    FreeEnergy,
    /// eV/μm², needs geometry
    ForceGradient,
    /// eV/μm, needs geometry
    Force,
}

impl Quantity {
    pub fn needs_geometry(&self) -> bool {
        matches!(self, Quantity::ForceGradient | Quantity::Force)
    }
}

/// One generated table: a column of separations and one value column per
/// material. Failed cells stay `None` and the row is retained.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveTable {
    pub quantity: Quantity,
    pub separations_um: Vec<f64>,
    pub columns: Vec<String>,
    /// cells[row][column]
    pub cells: Vec<Vec<Option<f64>>>,
}

/// Evaluate `quantity` on the sweep for each named model. Cells run in
/// parallel; the reduction order is fixed by the grid, so repeated runs are
/// bit-identical regardless of thread count.
pub fn curve(
    quantity: Quantity,
    sweep: SweepSpec,
    temperature_k: f64,
    models: &[(String, ResponseModel)],
    geometry: Option<SphereGeometry>,
    settings: &Settings,
) -> Result<CurveTable, AnalysisError> {
    if quantity.needs_geometry() && geometry.is_none() {
        return Err(AnalysisError::Sweep(format!("{quantity:?} requires a sphere radius")));
    }
    let separations = sweep.points()?;
    let cells: Vec<Vec<Option<f64>>> = separations
        .par_iter()
        .map(|&a| {
            models
                .iter()
                .map(|(_, model)| {
                    let point = EvaluationPoint::new(a, temperature_k).ok()?;
                    match quantity {
                        Quantity::Pressure => {
                            pressure_matsubara(point, model, settings).ok().map(|p| p.pressure_ev_um3)
                        }
                        Quantity::RelativeThermalCorrection => {
                            thermal_correction(point, model, settings).ok().map(|t| t.relative)
                        }
                        Quantity::FreeEnergy => {
                            free_energy(point, model, settings).ok().map(|f| f.free_energy_ev_um2)
                        }
                        Quantity::ForceGradient => {
                            pfa_gradient(point, model, geometry.unwrap(), settings).ok()
                        }
                        Quantity::Force => pfa_force(point, model, geometry.unwrap(), settings).ok(),
                    }
                })
                .collect()
        })
        .collect();
    Ok(CurveTable {
        quantity,
        separations_um: separations,
        columns: models.iter().map(|(n, _)| n.clone()).collect(),
        cells,
    })
}

/// What a measurement column physically is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ObservableKind {
    Pressure,
    ForceGradient,
    Force,
    ForceDifference,
}

/// One measured point: separation, value, total experimental error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasurementRow {
    pub separation_um: f64,
    pub value: f64,
    pub total_error: f64,
}

/// A measured data set with its observable kind and confidence level.
/// Rows are kept sorted by separation, so comparisons are invariant under
/// input ordering.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasurementSet {
    pub rows: Vec<MeasurementRow>,
    pub kind: ObservableKind,
    pub confidence_percent: f64,
}

impl MeasurementSet {
    pub fn new(
        mut rows: Vec<MeasurementRow>,
        kind: ObservableKind,
        confidence_percent: f64,
    ) -> Result<Self, AnalysisError> {
        if rows.is_empty() {
            return Err(AnalysisError::EmptyData);
        }
        for (i, row) in rows.iter().enumerate() {
            if !(row.total_error > 0.0) {
                return Err(AnalysisError::NonPositiveError { row: i + 1, value: row.total_error });
            }
        }
        rows.sort_by(|a, b| a.separation_um.total_cmp(&b.separation_um));
        Ok(Self { rows, kind, confidence_percent })
    }

    /// CSV wire format: header `separation_um,value,total_error`.
    pub fn from_csv<R: Read>(
        reader: R,
        kind: ObservableKind,
        confidence_percent: f64,
    ) -> Result<Self, AnalysisError> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        {
            let headers = rdr.headers().map_err(|e| AnalysisError::Header(e.to_string()))?;
            let expected = ["separation_um", "value", "total_error"];
            if headers.len() != 3 || headers.iter().zip(expected).any(|(h, e)| h != e) {
                return Err(AnalysisError::Header(headers.iter().collect::<Vec<_>>().join(",")));
            }
        }
        let mut rows = Vec::new();
        for (i, record) in rdr.records().enumerate() {
            let row_no = i + 1;
            let record =
                record.map_err(|e| AnalysisError::Parse { row: row_no, message: e.to_string() })?;
            let get = |idx: usize, name: &str| -> Result<f64, AnalysisError> {
                record
                    .get(idx)
                    .ok_or_else(|| AnalysisError::Parse {
                        row: row_no,
                        message: format!("missing {name}"),
                    })?
                    .parse::<f64>()
                    .map_err(|e| AnalysisError::Parse { row: row_no, message: format!("{name}: {e}") })
            };
            rows.push(MeasurementRow {
                separation_um: get(0, "separation_um")?,
                value: get(1, "value")?,
                total_error: get(2, "total_error")?,
            });
        }
        Self::new(rows, kind, confidence_percent)
    }
}

/// Model predictions on a separation grid, ready for comparison.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Prediction {
    pub name: String,
    pub separations_um: Vec<f64>,
    pub values: Vec<f64>,
}

/// Per-point comparison record.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointComparison {
    pub separation_um: f64,
    pub prediction: f64,
    pub datum: f64,
    /// |prediction − datum| / effective error (experimental ⊕ interpolation).
    pub normalized_residual: f64,
    pub consistent: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Consistent,
    Excluded,
}

/// Comparison of one model against one data set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub model: String,
    pub points: Vec<PointComparison>,
    pub fraction_consistent: f64,
    pub verdict: Verdict,
}

/// Comparison thresholds. A point is consistent when the residual stays
/// within `residual_threshold` effective error bars; the model survives when
/// at least `consistency_fraction` of the points do. Confidence levels are
/// taken at face value, never converted.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CompareSettings {
    pub residual_threshold: f64,
    pub consistency_fraction: f64,
}

impl Default for CompareSettings {
    fn default() -> Self {
        Self { residual_threshold: 1.0, consistency_fraction: 0.95 }
    }
}

/// Judge each model's predictions against the data. No fitting anywhere:
/// predictions are interpolated onto the measured separations (cubic in
/// log a) and compared point by point.
pub fn compare(
    data: &MeasurementSet,
    predictions: &[Prediction],
    settings: CompareSettings,
) -> Result<Vec<ComparisonReport>, AnalysisError> {
    let mut sorted: Vec<&Prediction> = predictions.iter().collect();
    sorted.sort_by(|a, b| a.name.cmp(&b.name));
    sorted
        .into_iter()
        .map(|prediction| {
            let report = compare_one(data, prediction, settings)?;
            Ok(report)
        })
        .collect()
}

fn compare_one(
    data: &MeasurementSet,
    prediction: &Prediction,
    settings: CompareSettings,
) -> Result<ComparisonReport, AnalysisError> {
    let n = prediction.separations_um.len();
    if n < 4 {
        return Err(AnalysisError::GridTooSmall(n));
    }
    let lo = prediction.separations_um[0];
    let hi = prediction.separations_um[n - 1];
    let uncovered: Vec<f64> = data
        .rows
        .iter()
        .map(|r| r.separation_um)
        .filter(|&a| a < lo * (1.0 - 1e-12) || a > hi * (1.0 + 1e-12))
        .collect();
    if !uncovered.is_empty() {
        return Err(AnalysisError::Uncovered { lo, hi, uncovered });
    }

    let log_a: Vec<f64> = prediction.separations_um.iter().map(|a| a.ln()).collect();
    let spline = CubicSpline::natural(&log_a, &prediction.values);

    let points: Vec<PointComparison> = data
        .rows
        .iter()
        .map(|row| {
            let x = row.separation_um.ln();
            let value = spline.eval(x);
            // node-deletion estimate of the interpolation error
            let nearest = nearest_interior_node(&log_a, x);
            let deleted = CubicSpline::without_node(&log_a, &prediction.values, nearest);
            let interp_err = (value - deleted.eval(x)).abs();
            let eff_error = row.total_error.hypot(interp_err);
            let residual = (value - row.value).abs() / eff_error;
            PointComparison {
                separation_um: row.separation_um,
                prediction: value,
                datum: row.value,
                normalized_residual: residual,
                consistent: residual <= settings.residual_threshold,
            }
        })
        .collect();

    let fraction_consistent =
        points.iter().filter(|p| p.consistent).count() as f64 / points.len() as f64;
    let verdict = if fraction_consistent < settings.consistency_fraction {
        Verdict::Excluded
    } else {
        Verdict::Consistent
    };
    Ok(ComparisonReport { model: prediction.name.clone(), points, fraction_consistent, verdict })
}

fn nearest_interior_node(xs: &[f64], x: f64) -> usize {
    let mut best = 1usize;
    let mut dist = f64::INFINITY;
    for (i, &xi) in xs.iter().enumerate().take(xs.len() - 1).skip(1) {
        let d = (xi - x).abs();
        if d < dist {
            dist = d;
            best = i;
        }
    }
    best
}

/// Natural cubic spline on sorted abscissae.
struct CubicSpline {
    xs: Vec<f64>,
    ys: Vec<f64>,
    second: Vec<f64>,
}

impl CubicSpline {
    fn natural(xs: &[f64], ys: &[f64]) -> Self {
        let n = xs.len();
        let mut second = vec![0.0; n];
        let mut u = vec![0.0; n];
        for i in 1..n - 1 {
            let sig = (xs[i] - xs[i - 1]) / (xs[i + 1] - xs[i - 1]);
            let p = sig * second[i - 1] + 2.0;
            second[i] = (sig - 1.0) / p;
            let d = (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i])
                - (ys[i] - ys[i - 1]) / (xs[i] - xs[i - 1]);
            u[i] = (6.0 * d / (xs[i + 1] - xs[i - 1]) - sig * u[i - 1]) / p;
        }
        for i in (0..n - 1).rev() {
            second[i] = second[i] * second[i + 1] + u[i];
        }
        Self { xs: xs.to_vec(), ys: ys.to_vec(), second }
    }

    fn without_node(xs: &[f64], ys: &[f64], skip: usize) -> Self {
        let xs2: Vec<f64> =
            xs.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, &v)| v).collect();
        let ys2: Vec<f64> =
            ys.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, &v)| v).collect();
        Self::natural(&xs2, &ys2)
    }

    fn eval(&self, x: f64) -> f64 {
        let n = self.xs.len();
        let mut hi = self.xs.partition_point(|&v| v < x).min(n - 1).max(1);
        if hi == 0 {
            hi = 1;
        }
        let lo = hi - 1;
        let h = self.xs[hi] - self.xs[lo];
        let a = (self.xs[hi] - x) / h;
        let b = (x - self.xs[lo]) / h;
        a * self.ys[lo]
            + b * self.ys[hi]
            + ((a.powi(3) - a) * self.second[lo] + (b.powi(3) - b) * self.second[hi]) * h * h / 6.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::response::{DrudeParams, Permittivity, PlasmaParams, RelaxationModel};
    use approx::assert_relative_eq;

    fn geometry() -> SphereGeometry {
        SphereGeometry::new(100.0).unwrap()
    }

    #[test]
    fn pfa_round_trip_and_linearity() {
        let g = geometry();
        for grad in [0.0, 5.0987, -3.3e-4] {
            let p = pfa_pressure_from_gradient(grad, g);
            let back = -2.0 * std::f64::consts::PI * g.radius_um * p;
            assert_relative_eq!(back, grad, epsilon = 1e-15);
        }
        // P = -1 eV/um^3 with R = 100 um gives 2*pi*100
        assert_relative_eq!(
            pfa_pressure_from_gradient(628.3185307179587, g),
            -1.0,
            max_relative = 1e-15
        );
    }

    #[test]
    fn pfa_advisory_threshold() {
        let g = geometry();
        assert!(g.pfa_advisory(0.5).is_none());
        assert!(g.pfa_advisory(5.0).is_some());
    }

    #[test]
    fn sweep_points() {
        let lin = SweepSpec { start_um: 1.0, stop_um: 2.0, count: 3, spacing: Spacing::Linear };
        assert_eq!(lin.points().unwrap(), vec![1.0, 1.5, 2.0]);
        let log = SweepSpec { start_um: 1.0, stop_um: 100.0, count: 3, spacing: Spacing::Log };
        let pts = log.points().unwrap();
        assert_relative_eq!(pts[1], 10.0, max_relative = 1e-12);
        let single = SweepSpec { start_um: 2.0, stop_um: 2.0, count: 1, spacing: Spacing::Linear };
        assert_eq!(single.points().unwrap().len(), 1);
        let bad = SweepSpec { start_um: 0.0, stop_um: 2.0, count: 3, spacing: Spacing::Linear };
        assert!(bad.points().is_err());
    }

    #[test]
    fn measurement_csv_and_sorting() {
        let csv = "separation_um,value,total_error\n0.7,-10.0,0.5\n0.5,-20.0,0.5\n";
        let m = MeasurementSet::from_csv(csv.as_bytes(), ObservableKind::Pressure, 95.0).unwrap();
        assert_eq!(m.rows[0].separation_um, 0.5);

        let empty = "separation_um,value,total_error\n";
        assert!(matches!(
            MeasurementSet::from_csv(empty.as_bytes(), ObservableKind::Pressure, 95.0).unwrap_err(),
            AnalysisError::EmptyData
        ));

        let bad_err = "separation_um,value,total_error\n0.5,-20.0,0.0\n";
        assert!(matches!(
            MeasurementSet::from_csv(bad_err.as_bytes(), ObservableKind::Pressure, 95.0).unwrap_err(),
            AnalysisError::NonPositiveError { .. }
        ));
    }

    fn power_law_prediction(name: &str) -> Prediction {
        // value = -3 a^-3, exactly representable by the log-a spline test
        let separations: Vec<f64> = (0..25).map(|i| 0.4 * 1.1f64.powi(i)).collect();
        let values = separations.iter().map(|a| -3.0 / (a * a * a)).collect();
        Prediction { name: name.into(), separations_um: separations, values }
    }

    #[test]
    fn compare_exact_data_is_fully_consistent() {
        let p = power_law_prediction("model");
        let rows: Vec<MeasurementRow> = (0..8)
            .map(|i| {
                let a = 0.5 * 1.25f64.powi(i);
                MeasurementRow { separation_um: a, value: -3.0 / (a * a * a), total_error: 1e-3 }
            })
            .collect();
        let data = MeasurementSet::new(rows, ObservableKind::Pressure, 95.0).unwrap();
        let reports = compare(&data, &[p], CompareSettings::default()).unwrap();
        assert_eq!(reports[0].verdict, Verdict::Consistent);
        assert_relative_eq!(reports[0].fraction_consistent, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn compare_rejects_uncovered_points() {
        let p = power_law_prediction("model");
        let rows = vec![MeasurementRow { separation_um: 50.0, value: 0.0, total_error: 1.0 }];
        let data = MeasurementSet::new(rows, ObservableKind::Pressure, 95.0).unwrap();
        assert!(matches!(
            compare(&data, &[p], CompareSettings::default()).unwrap_err(),
            AnalysisError::Uncovered { .. }
        ));
    }

    #[test]
    fn compare_invariant_under_orderings() {
        let pa = power_law_prediction("a");
        let pb = Prediction {
            name: "b".into(),
            values: pa.values.iter().map(|v| v * 1.3).collect(),
            ..pa.clone()
        };
        let rows: Vec<MeasurementRow> = (0..6)
            .map(|i| {
                let a = 0.6 * 1.3f64.powi(i);
                MeasurementRow { separation_um: a, value: -3.0 / (a * a * a), total_error: 0.05 }
            })
            .collect();
        let mut reversed_rows = rows.clone();
        reversed_rows.reverse();
        let d1 = MeasurementSet::new(rows, ObservableKind::Pressure, 95.0).unwrap();
        let d2 = MeasurementSet::new(reversed_rows, ObservableKind::Pressure, 95.0).unwrap();
        let r1 = compare(&d1, &[pa.clone(), pb.clone()], CompareSettings::default()).unwrap();
        let r2 = compare(&d2, &[pb, pa], CompareSettings::default()).unwrap();
        assert_eq!(r1, r2);
    }

    #[test]
    fn curve_runs_and_is_deterministic() {
        let models = vec![
            (
                "drude".to_string(),
                ResponseModel::new(Permittivity::Drude(DrudeParams {
                    plasma_frequency_ev: 9.0,
                    relaxation: RelaxationModel::constant(0.035),
                })),
            ),
            (
                "plasma".to_string(),
                ResponseModel::new(Permittivity::Plasma(PlasmaParams { plasma_frequency_ev: 9.0 })),
            ),
        ];
        let sweep = SweepSpec { start_um: 3.0, stop_um: 5.0, count: 3, spacing: Spacing::Linear };
        let settings = Settings::default();
        let t1 = curve(Quantity::Pressure, sweep, 300.0, &models, None, &settings).unwrap();
        let t2 = curve(Quantity::Pressure, sweep, 300.0, &models, None, &settings).unwrap();
        assert_eq!(t1, t2);
        assert_eq!(t1.cells.len(), 3);
        for row in &t1.cells {
            assert!(row.iter().all(|c| c.is_some()));
        }
        // single-point sweep
        let one = SweepSpec { start_um: 3.0, stop_um: 3.0, count: 1, spacing: Spacing::Linear };
        let t = curve(Quantity::Pressure, one, 300.0, &models, None, &settings).unwrap();
        assert_eq!(t.cells.len(), 1);
    }

    #[test]
    fn differential_force_trivial_cases() {
        let drude = ResponseModel::new(Permittivity::Drude(DrudeParams {
            plasma_frequency_ev: 9.0,
            relaxation: RelaxationModel::constant(0.035),
        }));
        let vacuum = ResponseModel::new(Permittivity::Vacuum);
        let g = geometry();
        let s = Settings::default();
        let grid = [3.0, 4.0];
        let same = differential_force(&grid, &drude, &drude, 300.0, g, &s).unwrap();
        assert!(same.iter().all(|(_, d)| *d == 0.0));
        let against_vacuum = differential_force(&grid, &drude, &vacuum, 300.0, g, &s).unwrap();
        for (a, d) in against_vacuum {
            let f = pfa_force(EvaluationPoint::new(a, 300.0).unwrap(), &drude, g, &s).unwrap();
            assert_relative_eq!(d, f, max_relative = 1e-12);
        }
    }
}
