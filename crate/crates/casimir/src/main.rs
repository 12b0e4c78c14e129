//! Command-line interface: every computation as a reproducible batch run.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use casimir::analysis::{Quantity, Spacing, SweepSpec};
use casimir::cli::{self, CliError};
use casimir::config::{
    CommandKind, CompareConfig, IniDoc, KkConfig, OutputFormat, RunConfig,
};

#[derive(Parser)]
#[command(
    name = "casimir",
    version,
    about = "Thermal Casimir pressures, free energies and entropies from Lifshitz theory"
)]
struct CliArgs {
    #[command(subcommand)]
    command: Command,
}

/// Flags shared by the computing subcommands.
#[derive(Args, Debug, Clone)]
struct Common {
    /// Output file (CSV or JSON per --format). Defaults to <command>.csv
    #[arg(long)]
    out: Option<String>,
    /// Output format
    #[arg(long, default_value = "csv")]
    format: String,
    /// Worker threads (results are identical for any value)
    #[arg(long)]
    threads: Option<usize>,
    /// Matsubara truncation tolerance
    #[arg(long)]
    truncation_tol: Option<f64>,
    /// k-perp quadrature relative tolerance
    #[arg(long)]
    quad_tol: Option<f64>,
    /// zero-temperature frequency-integral tolerance
    #[arg(long)]
    zero_t_tol: Option<f64>,
    /// nonlocal k3 quadrature tolerance
    #[arg(long)]
    k3_tol: Option<f64>,
    /// Matsubara term cap
    #[arg(long)]
    l_cap: Option<usize>,
    /// Fermi velocity override (fraction of c), for ni-nonlocal-* presets
    #[arg(long)]
    v_fermi: Option<f64>,
    /// dc conductivity (1/s), for si-membrane-dark-carriers
    #[arg(long)]
    sigma: Option<f64>,
    /// Drude plasma frequency (eV), for si-membrane-bright
    #[arg(long)]
    omega_p: Option<f64>,
    /// Drude relaxation (eV), for si-membrane-bright / kk-transform
    #[arg(long)]
    gamma: Option<f64>,
    /// Optical table CSV (energy_eV,n,k), for tabulated-* presets
    #[arg(long)]
    table: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Casimir pressure between parallel plates
    Pressure(PointArgs),
    /// Thermal correction P(a,T) - P(a,0) and its relative value
    ThermalCorrection(PointArgs),
    /// Sphere-plate force gradient via PFA
    Gradient(GeomArgs),
    /// Sphere-plate force via PFA
    Force(GeomArgs),
    /// Casimir free energy per unit area
    FreeEnergy(PointArgs),
    /// Casimir entropy over a temperature grid with Nernst classification
    Entropy(EntropyArgs),
    /// Table of a quantity over a separation sweep, one column per material
    Curve(CurveArgs),
    /// Compare model predictions with measured data (no fitting parameters)
    Compare(CompareArgs),
    /// Kramers-Kronig transform of an optical table to the imaginary axis
    KkTransform(KkArgs),
    /// Differential sphere-plate force between two material states
    DiffForce(DiffArgs),
    /// Execute a run from a config file or manifest
    Run(RunArgs),
    /// List resolved parameters and advisory warnings for a configuration
    Validate(ValidateArgs),
}

#[derive(Args, Debug)]
struct PointArgs {
    /// Material preset(s), comma-separated
    #[arg(long = "material", alias = "materials", value_delimiter = ',')]
    materials: Vec<String>,
    /// Separation in um: a single value or start:stop:count
    #[arg(long)]
    a: String,
    /// Temperature in K
    #[arg(long = "T", visible_alias = "temperature")]
    temperature: f64,
    /// Sweep spacing when --a is a range
    #[arg(long, default_value = "linear")]
    spacing: String,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct GeomArgs {
    #[command(flatten)]
    point: PointArgs,
    /// Sphere radius in um
    #[arg(long)]
    radius: f64,
}

#[derive(Args, Debug)]
struct EntropyArgs {
    #[arg(long = "material", value_delimiter = ',')]
    materials: Vec<String>,
    /// Separation in um
    #[arg(long)]
    a: f64,
    /// Temperature grid in K: start:stop:count (log with --log-grid) or a
    /// comma-separated list
    #[arg(long = "T")]
    temperature_grid: String,
    /// Logarithmic start:stop:count grid
    #[arg(long, default_value_t = false)]
    log_grid: bool,
    /// Central-difference step in K (default max(0.5, T/100) per point)
    #[arg(long)]
    step: Option<f64>,
    /// Classification tolerance as a fraction of |S(T_max)| (default 1e-3)
    #[arg(long)]
    tol_fraction: Option<f64>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct CurveArgs {
    /// pressure | relative-thermal-correction | free-energy | force-gradient | force
    #[arg(long)]
    quantity: String,
    #[arg(long = "materials", alias = "material", value_delimiter = ',')]
    materials: Vec<String>,
    #[arg(long)]
    a: String,
    #[arg(long = "T")]
    temperature: f64,
    #[arg(long, default_value = "linear")]
    spacing: String,
    /// Sphere radius in um (force quantities only)
    #[arg(long)]
    radius: Option<f64>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct CompareArgs {
    /// Measurement CSV: separation_um,value,total_error
    #[arg(long)]
    data: String,
    /// pressure | force_gradient | force | force_difference
    #[arg(long, default_value = "pressure")]
    observable: String,
    /// Confidence level of the stated total errors, percent
    #[arg(long, default_value_t = 95.0)]
    confidence: f64,
    /// Residual threshold in error bars
    #[arg(long, default_value_t = 1.0)]
    threshold: f64,
    /// Minimum consistent fraction for a `consistent` verdict
    #[arg(long, default_value_t = 0.95)]
    fraction: f64,
    #[arg(long = "materials", alias = "material", value_delimiter = ',')]
    materials: Vec<String>,
    /// Prediction grid: start:stop:count (must cover the data separations)
    #[arg(long)]
    a: String,
    #[arg(long = "T")]
    temperature: f64,
    #[arg(long, default_value = "log")]
    spacing: String,
    #[arg(long)]
    radius: Option<f64>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct KkArgs {
    /// Optical table CSV (energy_eV,n,k)
    #[arg(long)]
    table: String,
    /// drude | plasma | dielectric
    #[arg(long, default_value = "drude")]
    extrapolation: String,
    /// Imaginary-axis grid in eV: start:stop:count (log-spaced)
    #[arg(long, default_value = "0.05:50:64")]
    xi: String,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct DiffArgs {
    /// Material state A
    #[arg(long)]
    material_a: String,
    /// Material state B
    #[arg(long)]
    material_b: String,
    #[arg(long)]
    a: String,
    #[arg(long = "T")]
    temperature: f64,
    #[arg(long)]
    radius: f64,
    #[arg(long, default_value = "linear")]
    spacing: String,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct RunArgs {
    /// Config file or manifest to execute
    #[arg(long)]
    config: String,
}

#[derive(Args, Debug)]
struct ValidateArgs {
    /// Config file to inspect
    #[arg(long)]
    config: Option<String>,
    #[arg(long = "material", value_delimiter = ',')]
    materials: Vec<String>,
    #[arg(long)]
    a: Option<String>,
    #[arg(long = "T")]
    temperature: Option<f64>,
    #[arg(long)]
    radius: Option<f64>,
    #[command(flatten)]
    common: Common,
}

fn parse_span(text: &str, spacing: &str) -> Result<SweepSpec, CliError> {
    let spacing = match spacing {
        "linear" => Spacing::Linear,
        "log" => Spacing::Log,
        other => return Err(CliError::Config(format!("unknown spacing `{other}`"))),
    };
    let parts: Vec<&str> = text.split(':').collect();
    let parse = |s: &str| -> Result<f64, CliError> {
        s.parse::<f64>().map_err(|e| CliError::Config(format!("bad number `{s}`: {e}")))
    };
    match parts.as_slice() {
        [single] => {
            let v = parse(single)?;
            Ok(SweepSpec { start_um: v, stop_um: v, count: 1, spacing })
        }
        [start, stop, count] => Ok(SweepSpec {
            start_um: parse(start)?,
            stop_um: parse(stop)?,
            count: count
                .parse::<usize>()
                .map_err(|e| CliError::Config(format!("bad count `{count}`: {e}")))?,
            spacing,
        }),
        _ => Err(CliError::Config(format!("expected `value` or `start:stop:count`, got `{text}`"))),
    }
}

fn parse_grid(text: &str, log_grid: bool) -> Result<Vec<f64>, CliError> {
    if text.contains(',') {
        return text
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|e| CliError::Config(format!("bad temperature `{s}`: {e}")))
            })
            .collect();
    }
    let spec = parse_span(text, if log_grid { "log" } else { "linear" })?;
    let sweep = SweepSpec {
        start_um: spec.start_um,
        stop_um: spec.stop_um,
        count: spec.count,
        spacing: spec.spacing,
    };
    sweep.points().map_err(|e| CliError::Config(e.to_string()))
}

fn apply_common(config: &mut RunConfig, common: &Common) -> Result<(), CliError> {
    if let Some(out) = &common.out {
        config.output_path = out.clone();
    }
    config.format = match common.format.as_str() {
        "csv" => OutputFormat::Csv,
        "json" => OutputFormat::Json,
        other => return Err(CliError::Config(format!("unknown format `{other}`"))),
    };
    if config.format == OutputFormat::Json && common.out.is_none() {
        config.output_path = format!("{}.json", config.command.as_str());
    }
    config.threads = common.threads;
    if let Some(v) = common.truncation_tol {
        config.settings.truncation_tol = v;
    }
    if let Some(v) = common.quad_tol {
        config.settings.quadrature_rel_tol = v;
    }
    if let Some(v) = common.zero_t_tol {
        config.settings.zero_t_rel_tol = v;
    }
    if let Some(v) = common.k3_tol {
        config.settings.k3_rel_tol = v;
    }
    if let Some(v) = common.l_cap {
        config.settings.l_cap = v;
    }
    config.overrides.fermi_velocity = common.v_fermi;
    config.overrides.sigma_per_s = common.sigma;
    config.overrides.omega_p_ev = common.omega_p;
    config.overrides.gamma_ev = common.gamma;
    config.overrides.table_path = common.table.clone();
    Ok(())
}

fn point_config(kind: CommandKind, args: &PointArgs) -> Result<RunConfig, CliError> {
    let mut config = RunConfig::new(kind);
    config.materials = args.materials.clone();
    config.sweep = parse_span(&args.a, &args.spacing)?;
    config.temperature_k = args.temperature;
    apply_common(&mut config, &args.common)?;
    Ok(config)
}

fn build_config(command: &Command) -> Result<RunConfig, CliError> {
    match command {
        Command::Pressure(args) => point_config(CommandKind::Pressure, args),
        Command::ThermalCorrection(args) => point_config(CommandKind::ThermalCorrection, args),
        Command::FreeEnergy(args) => point_config(CommandKind::FreeEnergy, args),
        Command::Gradient(args) => {
            let mut config = point_config(CommandKind::Gradient, &args.point)?;
            config.radius_um = Some(args.radius);
            Ok(config)
        }
        Command::Force(args) => {
            let mut config = point_config(CommandKind::Force, &args.point)?;
            config.radius_um = Some(args.radius);
            Ok(config)
        }
        Command::Entropy(args) => {
            let mut config = RunConfig::new(CommandKind::Entropy);
            config.materials = args.materials.clone();
            config.sweep = SweepSpec {
                start_um: args.a,
                stop_um: args.a,
                count: 1,
                spacing: Spacing::Linear,
            };
            config.entropy_grid_k = Some(parse_grid(&args.temperature_grid, args.log_grid)?);
            config.entropy_step_k = args.step;
            config.entropy_tol_fraction = args.tol_fraction;
            apply_common(&mut config, &args.common)?;
            Ok(config)
        }
        Command::Curve(args) => {
            let mut config = RunConfig::new(CommandKind::Curve);
            config.materials = args.materials.clone();
            config.sweep = parse_span(&args.a, &args.spacing)?;
            config.temperature_k = args.temperature;
            config.radius_um = args.radius;
            config.quantity = Some(
                serde_json::from_str::<Quantity>(&format!("\"{}\"", args.quantity))
                    .map_err(|_| CliError::Config(format!("unknown quantity `{}`", args.quantity)))?,
            );
            apply_common(&mut config, &args.common)?;
            Ok(config)
        }
        Command::Compare(args) => {
            let mut config = RunConfig::new(CommandKind::Compare);
            config.materials = args.materials.clone();
            config.sweep = parse_span(&args.a, &args.spacing)?;
            config.temperature_k = args.temperature;
            config.radius_um = args.radius;
            config.compare = Some(CompareConfig {
                data_path: args.data.clone(),
                observable: serde_json::from_str(&format!("\"{}\"", args.observable))
                    .map_err(|_| CliError::Config(format!("unknown observable `{}`", args.observable)))?,
                confidence_percent: args.confidence,
                residual_threshold: args.threshold,
                consistency_fraction: args.fraction,
            });
            apply_common(&mut config, &args.common)?;
            Ok(config)
        }
        Command::KkTransform(args) => {
            let mut config = RunConfig::new(CommandKind::KkTransform);
            let span = parse_span(&args.xi, "log")?;
            config.kk = Some(KkConfig {
                table_path: args.table.clone(),
                extrapolation: args.extrapolation.clone(),
                omega_p_ev: args.common.omega_p,
                gamma_ev: args.common.gamma,
                xi_start_ev: span.start_um,
                xi_stop_ev: span.stop_um,
                xi_count: span.count,
            });
            apply_common(&mut config, &args.common)?;
            Ok(config)
        }
        Command::DiffForce(args) => {
            let mut config = RunConfig::new(CommandKind::DiffForce);
            config.materials = vec![args.material_a.clone(), args.material_b.clone()];
            config.sweep = parse_span(&args.a, &args.spacing)?;
            config.temperature_k = args.temperature;
            config.radius_um = Some(args.radius);
            apply_common(&mut config, &args.common)?;
            Ok(config)
        }
        Command::Run(args) => {
            let text = std::fs::read_to_string(&args.config)
                .map_err(|e| CliError::Io(format!("reading {}: {e}", args.config)))?;
            let doc = IniDoc::parse(&text)?;
            Ok(RunConfig::from_ini(&doc)?)
        }
        Command::Validate(_) => unreachable!("validate handled separately"),
    }
}

fn main() -> ExitCode {
    let cli = CliArgs::parse();

    if let Command::Validate(args) = &cli.command {
        let config = match validate_config(args) {
            Ok(c) => c,
            Err(e) => return fail(e),
        };
        for line in cli::validate(&config) {
            println!("{line}");
        }
        return ExitCode::SUCCESS;
    }

    let config = match build_config(&cli.command) {
        Ok(c) => c,
        Err(e) => return fail(e),
    };
    match cli::run(&config) {
        Ok(artifacts) => {
            println!("{}", artifacts.table.columns.join(","));
            for row in &artifacts.table.rows {
                println!("{}", row.join(","));
            }
            for note in &artifacts.notes {
                println!("# {note}");
            }
            eprintln!(
                "wrote {} and manifest {}",
                artifacts.output_path, artifacts.manifest_path
            );
            ExitCode::SUCCESS
        }
        Err(e) => fail(e),
    }
}

fn validate_config(args: &ValidateArgs) -> Result<RunConfig, CliError> {
    if let Some(path) = &args.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("reading {path}: {e}")))?;
        return Ok(RunConfig::from_ini(&IniDoc::parse(&text)?)?);
    }
    let mut config = RunConfig::new(CommandKind::Pressure);
    config.materials = args.materials.clone();
    if let Some(a) = &args.a {
        config.sweep = parse_span(a, "linear")?;
    }
    if let Some(t) = args.temperature {
        config.temperature_k = t;
    }
    config.radius_um = args.radius;
    apply_common(&mut config, &args.common)?;
    Ok(config)
}

fn fail(e: CliError) -> ExitCode {
    let record = serde_json::json!({
        "error": { "kind": e.kind(), "message": e.to_string(), "exit_code": e.exit_code() }
    });
    eprintln!("{record}");
    ExitCode::from(e.exit_code() as u8)
}
