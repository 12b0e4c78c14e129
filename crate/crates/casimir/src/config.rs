//! Run configuration, the flat key-value config format and run manifests.
//!
//! A run is fully described by a `RunConfig`. Its serialized form is an
//! INI-style document (section headers, `key = value` lines, `#` comments)
//! and doubles as the run manifest: every run writes the resolved
//! configuration next to its output, and feeding that manifest back through
//! `run --config` reproduces the run bit for bit.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analysis::{ObservableKind, Quantity, Spacing, SweepSpec};
use crate::lifshitz::Settings;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("config parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("missing required key `{key}` in section [{section}]")]
    Missing { section: &'static str, key: &'static str },
    #[error("invalid value for `{key}`: {message}")]
    Invalid { key: String, message: String },
    #[error("unknown command `{0}`")]
    UnknownCommand(String),
}

/// Ordered INI document: sections of key/value pairs.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct IniDoc {
    sections: Vec<(String, Vec<(String, String)>)>,
}

impl IniDoc {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut doc = IniDoc::default();
        let mut current: Option<usize> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') || line.starts_with(';') {
                continue;
            }
            if let Some(name) = line.strip_prefix('[') {
                let name = name.strip_suffix(']').ok_or(ConfigError::Parse {
                    line: idx + 1,
                    message: "unterminated section header".into(),
                })?;
                doc.sections.push((name.trim().to_string(), Vec::new()));
                current = Some(doc.sections.len() - 1);
            } else if let Some((key, value)) = line.split_once('=') {
                let section = current.ok_or(ConfigError::Parse {
                    line: idx + 1,
                    message: "key outside of any [section]".into(),
                })?;
                doc.sections[section]
                    .1
                    .push((key.trim().to_string(), value.trim().to_string()));
            } else {
                return Err(ConfigError::Parse {
                    line: idx + 1,
                    message: format!("expected `key = value`, got `{line}`"),
                });
            }
        }
        Ok(doc)
    }

    pub fn get(&self, section: &str, key: &str) -> Option<&str> {
        self.sections
            .iter()
            .find(|(name, _)| name == section)
            .and_then(|(_, kv)| kv.iter().find(|(k, _)| k == key))
            .map(|(_, v)| v.as_str())
    }

    pub fn set(&mut self, section: &str, key: &str, value: impl Into<String>) {
        let idx = match self.sections.iter().position(|(name, _)| name == section) {
            Some(i) => i,
            None => {
                self.sections.push((section.to_string(), Vec::new()));
                self.sections.len() - 1
            }
        };
        let kv = &mut self.sections[idx].1;
        match kv.iter_mut().find(|(k, _)| k == key) {
            Some(pair) => pair.1 = value.into(),
            None => kv.push((key.to_string(), value.into())),
        }
    }

    pub fn render(&self, header_comment: &str) -> String {
        let mut out = String::new();
        for line in header_comment.lines() {
            let _ = writeln!(out, "# {line}");
        }
        for (name, kv) in &self.sections {
            let _ = writeln!(out, "\n[{name}]");
            for (k, v) in kv {
                let _ = writeln!(out, "{k} = {v}");
            }
        }
        out
    }
}

/// The batch commands the tool exposes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    Pressure,
    ThermalCorrection,
    Gradient,
    Force,
    FreeEnergy,
    Entropy,
    Curve,
    Compare,
    KkTransform,
    DiffForce,
}

impl CommandKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            CommandKind::Pressure => "pressure",
            CommandKind::ThermalCorrection => "thermal-correction",
            CommandKind::Gradient => "gradient",
            CommandKind::Force => "force",
            CommandKind::FreeEnergy => "free-energy",
            CommandKind::Entropy => "entropy",
            CommandKind::Curve => "curve",
            CommandKind::Compare => "compare",
            CommandKind::KkTransform => "kk-transform",
            CommandKind::DiffForce => "diff-force",
        }
    }

    pub fn from_str(s: &str) -> Result<Self, ConfigError> {
        Ok(match s {
            "pressure" => CommandKind::Pressure,
            "thermal-correction" => CommandKind::ThermalCorrection,
            "gradient" => CommandKind::Gradient,
            "force" => CommandKind::Force,
            "free-energy" => CommandKind::FreeEnergy,
            "entropy" => CommandKind::Entropy,
            "curve" => CommandKind::Curve,
            "compare" => CommandKind::Compare,
            "kk-transform" => CommandKind::KkTransform,
            "diff-force" => CommandKind::DiffForce,
            other => return Err(ConfigError::UnknownCommand(other.to_string())),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    pub fn as_str(&self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

/// Extra per-material parameters (mirrors `materials::MaterialOverrides`,
/// with the table passed by path).
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct OverrideConfig {
    pub fermi_velocity: Option<f64>,
    pub sigma_per_s: Option<f64>,
    pub omega_p_ev: Option<f64>,
    pub gamma_ev: Option<f64>,
    pub table_path: Option<String>,
}

/// Comparison inputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareConfig {
    pub data_path: String,
    pub observable: ObservableKind,
    pub confidence_percent: f64,
    pub residual_threshold: f64,
    pub consistency_fraction: f64,
}

/// Kramers-Kronig transform inputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KkConfig {
    pub table_path: String,
    /// drude | plasma | dielectric
    pub extrapolation: String,
    pub omega_p_ev: Option<f64>,
    pub gamma_ev: Option<f64>,
    pub xi_start_ev: f64,
    pub xi_stop_ev: f64,
    pub xi_count: usize,
}

/// A fully resolved run. Serializes to the INI config/manifest format.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: CommandKind,
    pub materials: Vec<String>,
    pub sweep: SweepSpec,
    pub temperature_k: f64,
    /// Only for `curve`.
    pub quantity: Option<Quantity>,
    /// Entropy grid (K), ascending.
    pub entropy_grid_k: Option<Vec<f64>>,
    pub entropy_step_k: Option<f64>,
    pub entropy_tol_fraction: Option<f64>,
    pub radius_um: Option<f64>,
    pub settings: Settings,
    pub overrides: OverrideConfig,
    pub compare: Option<CompareConfig>,
    pub kk: Option<KkConfig>,
    pub output_path: String,
    pub format: OutputFormat,
    pub threads: Option<usize>,
}

impl RunConfig {
    /// Skeleton with defaults; callers fill in the command specifics.
    pub fn new(command: CommandKind) -> Self {
        Self {
            command,
            materials: Vec::new(),
            sweep: SweepSpec { start_um: 1.0, stop_um: 1.0, count: 1, spacing: Spacing::Linear },
            temperature_k: 300.0,
            quantity: None,
            entropy_grid_k: None,
            entropy_step_k: None,
            entropy_tol_fraction: None,
            radius_um: None,
            settings: Settings::default(),
            overrides: OverrideConfig::default(),
            compare: None,
            kk: None,
            output_path: format!("{}.csv", command.as_str()),
            format: OutputFormat::Csv,
            threads: None,
        }
    }

    pub fn to_ini(&self) -> IniDoc {
        let mut doc = IniDoc::default();
        let fmt = |v: f64| format!("{v}");
        doc.set("run", "command", self.command.as_str());
        doc.set("run", "temperature_k", fmt(self.temperature_k));
        doc.set("run", "materials", self.materials.join(","));
        doc.set("run", "output", &self.output_path);
        doc.set("run", "format", self.format.as_str());
        if let Some(t) = self.threads {
            doc.set("run", "threads", t.to_string());
        }
        if let Some(q) = self.quantity {
            let name = serde_json::to_string(&q).unwrap();
            doc.set("run", "quantity", name.trim_matches('"'));
        }
        doc.set("sweep", "start_um", fmt(self.sweep.start_um));
        doc.set("sweep", "stop_um", fmt(self.sweep.stop_um));
        doc.set("sweep", "count", self.sweep.count.to_string());
        doc.set(
            "sweep",
            "spacing",
            match self.sweep.spacing {
                Spacing::Linear => "linear",
                Spacing::Log => "log",
            },
        );
        if let Some(r) = self.radius_um {
            doc.set("geometry", "radius_um", fmt(r));
        }
        let s = &self.settings;
        doc.set("numeric", "truncation_tol", fmt(s.truncation_tol));
        doc.set("numeric", "quadrature_rel_tol", fmt(s.quadrature_rel_tol));
        doc.set("numeric", "zero_t_rel_tol", fmt(s.zero_t_rel_tol));
        doc.set("numeric", "k3_rel_tol", fmt(s.k3_rel_tol));
        doc.set("numeric", "l_cap", s.l_cap.to_string());
        if let Some(grid) = &self.entropy_grid_k {
            let list = grid.iter().map(|v| format!("{v}")).collect::<Vec<_>>().join(",");
            doc.set("entropy", "grid_k", list);
            if let Some(h) = self.entropy_step_k {
                doc.set("entropy", "step_k", fmt(h));
            }
            if let Some(t) = self.entropy_tol_fraction {
                doc.set("entropy", "tolerance_fraction", fmt(t));
            }
        }
        let o = &self.overrides;
        if let Some(v) = o.fermi_velocity {
            doc.set("overrides", "fermi_velocity", fmt(v));
        }
        if let Some(v) = o.sigma_per_s {
            doc.set("overrides", "sigma_per_s", fmt(v));
        }
        if let Some(v) = o.omega_p_ev {
            doc.set("overrides", "omega_p_ev", fmt(v));
        }
        if let Some(v) = o.gamma_ev {
            doc.set("overrides", "gamma_ev", fmt(v));
        }
        if let Some(v) = &o.table_path {
            doc.set("overrides", "table", v);
        }
        if let Some(c) = &self.compare {
            doc.set("compare", "data", &c.data_path);
            let kind = serde_json::to_string(&c.observable).unwrap();
            doc.set("compare", "observable", kind.trim_matches('"'));
            doc.set("compare", "confidence_percent", fmt(c.confidence_percent));
            doc.set("compare", "residual_threshold", fmt(c.residual_threshold));
            doc.set("compare", "consistency_fraction", fmt(c.consistency_fraction));
        }
        if let Some(k) = &self.kk {
            doc.set("kk", "table", &k.table_path);
            doc.set("kk", "extrapolation", &k.extrapolation);
            if let Some(v) = k.omega_p_ev {
                doc.set("kk", "omega_p_ev", fmt(v));
            }
            if let Some(v) = k.gamma_ev {
                doc.set("kk", "gamma_ev", fmt(v));
            }
            doc.set("kk", "xi_start_ev", fmt(k.xi_start_ev));
            doc.set("kk", "xi_stop_ev", fmt(k.xi_stop_ev));
            doc.set("kk", "xi_count", k.xi_count.to_string());
        }
        doc.set("meta", "library_version", env!("CARGO_PKG_VERSION"));
        doc
    }

    /// Manifest text (the INI render plus a header).
    pub fn manifest(&self) -> String {
        self.to_ini().render("casimir run manifest; replay with `casimir run --config <this file>`")
    }

    pub fn from_ini(doc: &IniDoc) -> Result<Self, ConfigError> {
        fn parse<T: std::str::FromStr>(v: &str, key: &str) -> Result<T, ConfigError>
        where
            T::Err: std::fmt::Display,
        {
            v.parse::<T>().map_err(|e| ConfigError::Invalid { key: key.into(), message: e.to_string() })
        }
        let command = CommandKind::from_str(
            doc.get("run", "command").ok_or(ConfigError::Missing { section: "run", key: "command" })?,
        )?;
        let mut config = RunConfig::new(command);
        if let Some(v) = doc.get("run", "temperature_k") {
            config.temperature_k = parse(v, "temperature_k")?;
        }
        if let Some(v) = doc.get("run", "materials") {
            config.materials =
                v.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
        }
        if let Some(v) = doc.get("run", "output") {
            config.output_path = v.to_string();
        }
        if let Some(v) = doc.get("run", "format") {
            config.format = match v {
                "csv" => OutputFormat::Csv,
                "json" => OutputFormat::Json,
                other => {
                    return Err(ConfigError::Invalid {
                        key: "format".into(),
                        message: format!("expected csv or json, got {other}"),
                    })
                }
            };
        }
        if let Some(v) = doc.get("run", "threads") {
            config.threads = Some(parse(v, "threads")?);
        }
        if let Some(v) = doc.get("run", "quantity") {
            config.quantity = Some(
                serde_json::from_str(&format!("\"{v}\"")).map_err(|e| ConfigError::Invalid {
                    key: "quantity".into(),
                    message: e.to_string(),
                })?,
            );
        }
        if let Some(v) = doc.get("sweep", "start_um") {
            config.sweep.start_um = parse(v, "start_um")?;
        }
        if let Some(v) = doc.get("sweep", "stop_um") {
            config.sweep.stop_um = parse(v, "stop_um")?;
        }
        if let Some(v) = doc.get("sweep", "count") {
            config.sweep.count = parse(v, "count")?;
        }
        if let Some(v) = doc.get("sweep", "spacing") {
            config.sweep.spacing = match v {
                "linear" => Spacing::Linear,
                "log" => Spacing::Log,
                other => {
                    return Err(ConfigError::Invalid {
                        key: "spacing".into(),
                        message: format!("expected linear or log, got {other}"),
                    })
                }
            };
        }
        if let Some(v) = doc.get("geometry", "radius_um") {
            config.radius_um = Some(parse(v, "radius_um")?);
        }
        if let Some(v) = doc.get("numeric", "truncation_tol") {
            config.settings.truncation_tol = parse(v, "truncation_tol")?;
        }
        if let Some(v) = doc.get("numeric", "quadrature_rel_tol") {
            config.settings.quadrature_rel_tol = parse(v, "quadrature_rel_tol")?;
        }
        if let Some(v) = doc.get("numeric", "zero_t_rel_tol") {
            config.settings.zero_t_rel_tol = parse(v, "zero_t_rel_tol")?;
        }
        if let Some(v) = doc.get("numeric", "k3_rel_tol") {
            config.settings.k3_rel_tol = parse(v, "k3_rel_tol")?;
        }
        if let Some(v) = doc.get("numeric", "l_cap") {
            config.settings.l_cap = parse(v, "l_cap")?;
        }
        if let Some(v) = doc.get("entropy", "grid_k") {
            let grid: Result<Vec<f64>, _> =
                v.split(',').map(|s| parse::<f64>(s.trim(), "grid_k")).collect();
            config.entropy_grid_k = Some(grid?);
        }
        if let Some(v) = doc.get("entropy", "step_k") {
            config.entropy_step_k = Some(parse(v, "step_k")?);
        }
        if let Some(v) = doc.get("entropy", "tolerance_fraction") {
            config.entropy_tol_fraction = Some(parse(v, "tolerance_fraction")?);
        }
        if let Some(v) = doc.get("overrides", "fermi_velocity") {
            config.overrides.fermi_velocity = Some(parse(v, "fermi_velocity")?);
        }
        if let Some(v) = doc.get("overrides", "sigma_per_s") {
            config.overrides.sigma_per_s = Some(parse(v, "sigma_per_s")?);
        }
        if let Some(v) = doc.get("overrides", "omega_p_ev") {
            config.overrides.omega_p_ev = Some(parse(v, "omega_p_ev")?);
        }
        if let Some(v) = doc.get("overrides", "gamma_ev") {
            config.overrides.gamma_ev = Some(parse(v, "gamma_ev")?);
        }
        if let Some(v) = doc.get("overrides", "table") {
            config.overrides.table_path = Some(v.to_string());
        }
        if let Some(data) = doc.get("compare", "data") {
            let observable = doc.get("compare", "observable").unwrap_or("pressure");
            config.compare = Some(CompareConfig {
                data_path: data.to_string(),
                observable: serde_json::from_str(&format!("\"{observable}\"")).map_err(|e| {
                    ConfigError::Invalid { key: "observable".into(), message: e.to_string() }
                })?,
                confidence_percent: doc
                    .get("compare", "confidence_percent")
                    .map(|v| parse(v, "confidence_percent"))
                    .transpose()?
                    .unwrap_or(95.0),
                residual_threshold: doc
                    .get("compare", "residual_threshold")
                    .map(|v| parse(v, "residual_threshold"))
                    .transpose()?
                    .unwrap_or(1.0),
                consistency_fraction: doc
                    .get("compare", "consistency_fraction")
                    .map(|v| parse(v, "consistency_fraction"))
                    .transpose()?
                    .unwrap_or(0.95),
            });
        }
        if let Some(table) = doc.get("kk", "table") {
            config.kk = Some(KkConfig {
                table_path: table.to_string(),
                extrapolation: doc.get("kk", "extrapolation").unwrap_or("drude").to_string(),
                omega_p_ev: doc.get("kk", "omega_p_ev").map(|v| parse(v, "omega_p_ev")).transpose()?,
                gamma_ev: doc.get("kk", "gamma_ev").map(|v| parse(v, "gamma_ev")).transpose()?,
                xi_start_ev: doc
                    .get("kk", "xi_start_ev")
                    .map(|v| parse(v, "xi_start_ev"))
                    .transpose()?
                    .unwrap_or(0.05),
                xi_stop_ev: doc
                    .get("kk", "xi_stop_ev")
                    .map(|v| parse(v, "xi_stop_ev"))
                    .transpose()?
                    .unwrap_or(50.0),
                xi_count: doc
                    .get("kk", "xi_count")
                    .map(|v| parse(v, "xi_count"))
                    .transpose()?
                    .unwrap_or(64),
            });
        }
        Ok(config)
    }

    /// Resolved parameters plus advisory warnings; never fails.
    pub fn diagnostics(&self) -> BTreeMap<String, String> {
        let mut map = BTreeMap::new();
        map.insert("command".into(), self.command.as_str().into());
        map.insert("temperature_k".into(), format!("{}", self.temperature_k));
        map.insert("materials".into(), self.materials.join(","));
        map.insert(
            "sweep".into(),
            format!(
                "{}:{}:{} ({:?})",
                self.sweep.start_um, self.sweep.stop_um, self.sweep.count, self.sweep.spacing
            ),
        );
        if let Ok(t_eff) = crate::units::effective_temperature(self.sweep.start_um) {
            map.insert("t_eff_at_start_k".into(), format!("{t_eff:.4}"));
        }
        map.insert(
            "unit_system".into(),
            "energies eV, lengths um, temperatures K, pressures eV/um^3 (0.1602177 Pa each)".into(),
        );
        map
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ini_parse_and_render_round_trip() {
        let text = "# comment\n[run]\ncommand = pressure\nmaterials = au-drude\n\n[sweep]\nstart_um = 0.5\n";
        let doc = IniDoc::parse(text).unwrap();
        assert_eq!(doc.get("run", "command"), Some("pressure"));
        assert_eq!(doc.get("sweep", "start_um"), Some("0.5"));
        let rendered = doc.render("hdr");
        let again = IniDoc::parse(&rendered).unwrap();
        assert_eq!(doc, again);
    }

    #[test]
    fn ini_rejects_malformed_lines() {
        assert!(IniDoc::parse("[run\ncommand = x\n").is_err());
        assert!(IniDoc::parse("command = x\n").is_err());
        assert!(IniDoc::parse("[run]\njust a line\n").is_err());
    }

    #[test]
    fn config_round_trips_through_manifest() {
        let mut config = RunConfig::new(CommandKind::Curve);
        config.materials = vec!["au-drude".into(), "au-plasma".into()];
        config.sweep = SweepSpec { start_um: 0.5, stop_um: 6.5, count: 61, spacing: Spacing::Linear };
        config.quantity = Some(Quantity::RelativeThermalCorrection);
        config.settings.truncation_tol = 1e-10;
        config.radius_um = Some(150.0);
        config.entropy_grid_k = Some(vec![1.0, 2.0, 5.0]);
        config.entropy_tol_fraction = Some(0.05);
        let manifest = config.manifest();
        let parsed = RunConfig::from_ini(&IniDoc::parse(&manifest).unwrap()).unwrap();
        assert_eq!(config, parsed);
    }

    #[test]
    fn unknown_command_is_rejected() {
        let doc = IniDoc::parse("[run]\ncommand = teleport\n").unwrap();
        assert!(matches!(RunConfig::from_ini(&doc), Err(ConfigError::UnknownCommand(_))));
    }
}
