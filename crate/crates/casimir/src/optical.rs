//! Tabulated optical data and the Kramers-Kronig transform to the imaginary
//! frequency axis.
//!
//! Input tables hold the complex refractive index (n, k) against photon
//! energy; Im ε = 2nk is what the dispersion integral consumes:
//!
//!   ε(iξ) = 1 + (2/π) ∫₀^∞ ω·Im ε(ω)/(ω² + ξ²) dω.
//!
//! The integral is split into a low-frequency segment handled by an analytic
//! extrapolation model, the tabulated range (log-log interpolation), and an
//! A/ω³ high-frequency tail fitted to the table's last decade. On the
//! imaginary axis the denominator never vanishes, so no principal value is
//! involved.

use std::io::Read;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::quad::{adaptive_panels, QuadError};
use crate::response::{DrudeParams, PlasmaParams};

#[derive(Debug, Error)]
pub enum OpticalError {
    #[error("csv parse failure at data row {row}: {message}")]
    Parse { row: usize, message: String },
    #[error("csv header must be `energy_eV,n,k`, got `{0}`")]
    Header(String),
    #[error("no data rows")]
    Empty,
    #[error("photon energies must be strictly increasing: row {row} has {energy} eV after {previous} eV")]
    NonMonotone { row: usize, energy: f64, previous: f64 },
    #[error("negative optical constant at row {row}: n = {n}, k = {k}")]
    NegativeConstant { row: usize, n: f64, k: f64 },
    #[error("non-finite value at row {row}")]
    NonFinite { row: usize },
    #[error("imaginary-axis frequency must be positive, got {0} eV")]
    NonPositiveFrequency(f64),
    #[error("dispersion-integral quadrature failed: {0}")]
    Quadrature(#[from] QuadError),
}

/// One tabulated (ħω, n, k) row.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OpticalRow {
    pub energy_ev: f64,
    pub n: f64,
    pub k: f64,
}

impl OpticalRow {
    /// Im ε = 2nk.
    pub fn im_eps(&self) -> f64 {
        2.0 * self.n * self.k
    }

    /// Re ε = n² − k².
    pub fn re_eps(&self) -> f64 {
        self.n * self.n - self.k * self.k
    }
}

/// Validated optical table: strictly increasing energies, passive medium.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OpticalTable {
    rows: Vec<OpticalRow>,
}

impl OpticalTable {
    pub fn from_rows(rows: Vec<OpticalRow>) -> Result<Self, OpticalError> {
        if rows.is_empty() {
            return Err(OpticalError::Empty);
        }
        for (i, row) in rows.iter().enumerate() {
            if !(row.energy_ev.is_finite() && row.n.is_finite() && row.k.is_finite()) {
                return Err(OpticalError::NonFinite { row: i + 1 });
            }
            if row.n < 0.0 || row.k < 0.0 {
                return Err(OpticalError::NegativeConstant { row: i + 1, n: row.n, k: row.k });
            }
            if i > 0 && row.energy_ev <= rows[i - 1].energy_ev {
                return Err(OpticalError::NonMonotone {
                    row: i + 1,
                    energy: row.energy_ev,
                    previous: rows[i - 1].energy_ev,
                });
            }
            if row.energy_ev <= 0.0 {
                return Err(OpticalError::Parse {
                    row: i + 1,
                    message: format!("photon energy must be positive, got {}", row.energy_ev),
                });
            }
        }
        Ok(Self { rows })
    }

    /// Parse the CSV wire format: header `energy_eV,n,k`, UTF-8, decimal points.
    pub fn from_csv<R: Read>(reader: R) -> Result<Self, OpticalError> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        {
            let headers = rdr.headers().map_err(|e| OpticalError::Header(e.to_string()))?;
            let expected = ["energy_eV", "n", "k"];
            if headers.len() != 3 || headers.iter().zip(expected).any(|(h, e)| h != e) {
                return Err(OpticalError::Header(headers.iter().collect::<Vec<_>>().join(",")));
            }
        }
        let mut rows = Vec::new();
        for (i, record) in rdr.records().enumerate() {
            let row_no = i + 1;
            let record = record.map_err(|e| OpticalError::Parse { row: row_no, message: e.to_string() })?;
            let parse = |idx: usize, name: &str| -> Result<f64, OpticalError> {
                record
                    .get(idx)
                    .ok_or_else(|| OpticalError::Parse { row: row_no, message: format!("missing {name}") })?
                    .parse::<f64>()
                    .map_err(|e| OpticalError::Parse { row: row_no, message: format!("{name}: {e}") })
            };
            rows.push(OpticalRow {
                energy_ev: parse(0, "energy_eV")?,
                n: parse(1, "n")?,
                k: parse(2, "k")?,
            });
        }
        Self::from_rows(rows)
    }

    pub fn rows(&self) -> &[OpticalRow] {
        &self.rows
    }

    pub fn min_energy_ev(&self) -> f64 {
        self.rows[0].energy_ev
    }

    pub fn max_energy_ev(&self) -> f64 {
        self.rows[self.rows.len() - 1].energy_ev
    }
}

/// Low-frequency completion model for the dispersion integral.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "model")]
pub enum ExtrapolationModel {
    /// Im ε continued with the Drude absorption ω_p²γ/(ω(ω²+γ²)).
    Drude(DrudeParams),
    /// Plasma pole: contributes ω_p²/ξ² directly (no absorption below the
    /// matching point).
    Plasma(PlasmaParams),
    /// Dielectric: Im ε tapered linearly to zero below the matching point.
    DielectricConstant,
}

/// Extrapolation model plus matching point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtrapolationSpec {
    pub model: ExtrapolationModel,
    /// Defaults to the lowest tabulated energy when `None`.
    pub matching_point_ev: Option<f64>,
    /// Relative Im ε mismatch at the matching point above which diagnostics
    /// flag the extrapolation (reported, never silently corrected).
    pub mismatch_tolerance: f64,
}

impl ExtrapolationSpec {
    pub fn new(model: ExtrapolationModel) -> Self {
        Self { model, matching_point_ev: None, mismatch_tolerance: 0.2 }
    }
}

/// Diagnostics of one table + extrapolation combination.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransformDiagnostics {
    /// Relative |Im ε_model − Im ε_table| / Im ε_table at the matching point.
    pub matching_mismatch: f64,
    pub mismatch_exceeds_tolerance: bool,
    /// Coefficient of the A/ω³ high-frequency tail.
    pub tail_coefficient: f64,
    pub matching_point_ev: f64,
}

/// Tabulated permittivity ready for imaginary-axis evaluation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TabulatedPermittivity {
    pub table: OpticalTable,
    pub extrapolation: ExtrapolationSpec,
    diagnostics: TransformDiagnostics,
}

impl TabulatedPermittivity {
    pub fn new(table: OpticalTable, extrapolation: ExtrapolationSpec) -> Result<Self, OpticalError> {
        let matching = extrapolation.matching_point_ev.unwrap_or(table.min_energy_ev());
        let im_table = interp_im_eps(&table, matching).max(0.0);
        let im_model = match &extrapolation.model {
            ExtrapolationModel::Drude(d) => {
                let g = d.relaxation.at(300.0);
                d.plasma_frequency_ev.powi(2) * g / (matching * (matching * matching + g * g))
            }
            ExtrapolationModel::Plasma(_) => 0.0,
            ExtrapolationModel::DielectricConstant => im_table,
        };
        let matching_mismatch = if im_table > 0.0 {
            ((im_model - im_table) / im_table).abs()
        } else if im_model > 0.0 {
            1.0
        } else {
            0.0
        };
        let tail_coefficient = fit_tail(&table);
        let diagnostics = TransformDiagnostics {
            matching_mismatch,
            mismatch_exceeds_tolerance: matching_mismatch > extrapolation.mismatch_tolerance,
            tail_coefficient,
            matching_point_ev: matching,
        };
        Ok(Self { table, extrapolation, diagnostics })
    }

    pub fn diagnostics(&self) -> TransformDiagnostics {
        self.diagnostics
    }

    /// ε(iξ) through the three-segment dispersion integral. Always ≥ 1 for a
    /// passive table.
    pub fn eps_imag_axis(&self, xi_ev: f64) -> Result<f64, OpticalError> {
        if !(xi_ev > 0.0) {
            return Err(OpticalError::NonPositiveFrequency(xi_ev));
        }
        let matching = self.diagnostics.matching_point_ev;
        let low = match &self.extrapolation.model {
            ExtrapolationModel::Drude(d) => {
                let g = d.relaxation.at(300.0);
                drude_low_segment(d.plasma_frequency_ev, g, matching, xi_ev)
            }
            ExtrapolationModel::Plasma(p) => {
                // KK image of the plasma pole; entire contribution sits at omega = 0.
                std::f64::consts::FRAC_PI_2 * (p.plasma_frequency_ev / xi_ev).powi(2)
            }
            ExtrapolationModel::DielectricConstant => {
                let im1 = interp_im_eps(&self.table, matching).max(0.0);
                if im1 == 0.0 || matching <= 0.0 {
                    0.0
                } else {
                    (im1 / matching) * (matching - xi_ev * (matching / xi_ev).atan())
                }
            }
        };
        let table = table_segment(&self.table, matching, xi_ev)?;
        let tail = tail_segment(self.diagnostics.tail_coefficient, self.table.max_energy_ev(), xi_ev);
        Ok(1.0 + std::f64::consts::FRAC_2_PI * (low + table + tail))
    }
}

/// ∫₀^{ω₁} ω·Im ε_D/(ω²+ξ²) dω with Im ε_D = ω_p²γ/(ω(ω²+γ²)), closed form.
fn drude_low_segment(wp: f64, gamma: f64, w1: f64, xi: f64) -> f64 {
    if gamma == 0.0 {
        return 0.0;
    }
    let d = xi * xi - gamma * gamma;
    if d.abs() > 1e-9 * xi * xi {
        wp * wp * gamma / d * ((w1 / gamma).atan() / gamma - (w1 / xi).atan() / xi)
    } else {
        // Degenerate xi = gamma: integral of wp^2 g / (w^2+g^2)^2.
        let g = gamma;
        wp * wp * g * (w1 / (2.0 * g * g * (w1 * w1 + g * g)) + (w1 / g).atan() / (2.0 * g * g * g))
    }
}

/// Log-log interpolation of Im ε inside the table (linear fallback around
/// zero absorption).
fn interp_im_eps(table: &OpticalTable, energy: f64) -> f64 {
    let rows = table.rows();
    if energy <= rows[0].energy_ev {
        return rows[0].im_eps();
    }
    if energy >= rows[rows.len() - 1].energy_ev {
        return rows[rows.len() - 1].im_eps();
    }
    let idx = rows.partition_point(|r| r.energy_ev < energy).max(1);
    let (lo, hi) = (&rows[idx - 1], &rows[idx]);
    let (f0, f1) = (lo.im_eps(), hi.im_eps());
    if f0 > 0.0 && f1 > 0.0 {
        let p = (f1 / f0).ln() / (hi.energy_ev / lo.energy_ev).ln();
        f0 * (energy / lo.energy_ev).powf(p)
    } else {
        let t = (energy - lo.energy_ev) / (hi.energy_ev - lo.energy_ev);
        f0 + t * (f1 - f0)
    }
}

/// Tabulated segment of the dispersion integral from the matching point to
/// the end of the table.
fn table_segment(table: &OpticalTable, matching: f64, xi: f64) -> Result<f64, OpticalError> {
    let hi = table.max_energy_ev();
    if matching >= hi {
        return Ok(0.0);
    }
    let mut edges: Vec<f64> = vec![matching];
    for r in table.rows() {
        if r.energy_ev > matching && r.energy_ev < hi {
            edges.push(r.energy_ev);
        }
    }
    edges.push(hi);
    let f = |w: f64| w * interp_im_eps(table, w) / (w * w + xi * xi);
    // Node-aligned panels keep the piecewise interpolant smooth per panel.
    let res = adaptive_panels(&f, &edges, 1e-10, 1e-300, edges.len().max(64) * 64)?;
    Ok(res.value)
}

/// A/ω³ tail fitted (geometric mean) over the table's last decade.
fn fit_tail(table: &OpticalTable) -> f64 {
    let hi = table.max_energy_ev();
    let window = table
        .rows()
        .iter()
        .filter(|r| r.energy_ev >= hi / 10.0 && r.im_eps() > 0.0)
        .collect::<Vec<_>>();
    if window.is_empty() {
        return 0.0;
    }
    let mean_log = window
        .iter()
        .map(|r| (r.im_eps() * r.energy_ev.powi(3)).ln())
        .sum::<f64>()
        / window.len() as f64;
    mean_log.exp()
}

/// ∫_{ωN}^∞ ω·(A/ω³)/(ω²+ξ²) dω in closed form, series-stabilised for ξ ≪ ωN.
fn tail_segment(a_coeff: f64, w_n: f64, xi: f64) -> f64 {
    if a_coeff == 0.0 {
        return 0.0;
    }
    let x = w_n / xi;
    if x > 50.0 {
        // 1/(3 wN^3) - xi^2/(5 wN^5) + xi^4/(7 wN^7)
        a_coeff * (1.0 / (3.0 * w_n.powi(3)) - xi * xi / (5.0 * w_n.powi(5))
            + xi.powi(4) / (7.0 * w_n.powi(7)))
    } else {
        a_coeff / (xi * xi) * (1.0 / w_n - (std::f64::consts::FRAC_PI_2 - x.atan()) / xi)
    }
}
