use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use std::ffi::OsString;
use std::path::PathBuf;

use disperse_core::{Scheme, SystemParams, DEFAULT_NU_P, DEFAULT_RABI};

#[derive(Debug, Parser)]
#[command(
    name = "lambda-disperse",
    version,
    about = "Probe dispersion, gain and group index of an incoherently pumped three-level atom",
    long_about = "Probe dispersion, gain and group index of an incoherently pumped three-level atom.\n\n\
        All rates and frequencies are in units of the reference decay rate γ; susceptibilities \
        are in units of α. Set LAMBDA_DISPERSE_THREADS to cap sweep parallelism (0 or unset \
        uses every core)."
)]
struct Cli {
    #[command(subcommand)]
    command: CommandArgs,
}

#[derive(Debug, Subcommand)]
enum CommandArgs {
    /// Re χ, Im χ and the dispersion slope over a probe-detuning grid.
    Spectrum {
        #[command(flatten)]
        atom: AtomArgs,
        #[command(flatten)]
        pump: PumpArgs,
        /// Lowest probe detuning δ_p.
        #[arg(long, default_value_t = -10.0, allow_negative_numbers = true)]
        delta_min: f64,
        /// Highest probe detuning δ_p.
        #[arg(long, default_value_t = 10.0, allow_negative_numbers = true)]
        delta_max: f64,
        /// Number of grid points (odd counts sample δ_p = 0 on symmetric ranges).
        #[arg(long, default_value_t = 1601)]
        points: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Sub/superluminal and absorption/gain class over a (pump rate, splitting) grid.
    RegimeMap {
        #[command(flatten)]
        atom: AtomArgs,
        #[arg(long, default_value_t = 0.0, value_parser = non_negative, allow_negative_numbers = true)]
        r_min: f64,
        #[arg(long, default_value_t = 6.0, value_parser = non_negative, allow_negative_numbers = true)]
        r_max: f64,
        #[arg(long, default_value_t = 200)]
        n_r: usize,
        #[arg(long, default_value_t = 0.0, value_parser = non_negative, allow_negative_numbers = true)]
        omega_min: f64,
        #[arg(long, default_value_t = 10.0, value_parser = non_negative, allow_negative_numbers = true)]
        omega_max: f64,
        #[arg(long, default_value_t = 200)]
        n_omega: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Group index n_g − 1 against pump rate, one curve per splitting.
    GroupIndex {
        #[command(flatten)]
        atom: AtomArgs,
        /// Comma-separated level splittings.
        #[arg(long, value_delimiter = ',', default_values_t = [1.0, 2.0, 8.0], value_parser = non_negative, allow_negative_numbers = true)]
        omegas: Vec<f64>,
        #[arg(long, default_value_t = 0.0, value_parser = non_negative, allow_negative_numbers = true)]
        r_min: f64,
        #[arg(long, default_value_t = 8.0, value_parser = non_negative, allow_negative_numbers = true)]
        r_max: f64,
        #[arg(long, default_value_t = 801)]
        n_r: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Compare the closed form with the density-matrix steady state.
    Validate {
        #[command(flatten)]
        atom: AtomArgs,
        /// Comma-separated level splittings.
        #[arg(long, value_delimiter = ',', default_values_t = [1.0, 8.0], value_parser = non_negative, allow_negative_numbers = true)]
        omegas: Vec<f64>,
        /// Comma-separated symmetric pump rates.
        #[arg(long, value_delimiter = ',', default_values_t = [0.8, 1.3, 2.3], value_parser = non_negative, allow_negative_numbers = true)]
        rates: Vec<f64>,
        #[arg(long, default_value_t = -10.0, allow_negative_numbers = true)]
        delta_min: f64,
        #[arg(long, default_value_t = 10.0, allow_negative_numbers = true)]
        delta_max: f64,
        #[arg(long, default_value_t = 161)]
        points: usize,
        /// Largest accepted |χ_closed − χ_numeric| in units of α.
        #[arg(long, default_value_t = 1e-3, value_parser = positive, allow_negative_numbers = true)]
        tolerance: f64,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Debug, Args)]
struct AtomArgs {
    #[arg(long, value_enum, default_value_t = SchemeArg::Lambda)]
    scheme: SchemeArg,
    /// Decay |3⟩→|1⟩ (Λ), or the common upper-level decay γ′ (V).
    #[arg(long, default_value_t = 1.0, value_parser = positive, allow_negative_numbers = true)]
    gamma1: f64,
    /// Decay |3⟩→|2⟩ (Λ only).
    #[arg(long, default_value_t = 1.0, value_parser = positive, allow_negative_numbers = true)]
    gamma2: f64,
    /// Probe Rabi frequency Ω_p.
    #[arg(long, default_value_t = DEFAULT_RABI, value_parser = non_negative, allow_negative_numbers = true)]
    rabi: f64,
    /// Susceptibility scale α.
    #[arg(long, default_value_t = 1.0, value_parser = positive, allow_negative_numbers = true)]
    alpha: f64,
    /// Probe carrier frequency ν_p (ordinary, not angular).
    #[arg(long, default_value_t = DEFAULT_NU_P, value_parser = positive, allow_negative_numbers = true)]
    nu_p: f64,
}

#[derive(Debug, Args)]
struct PumpArgs {
    /// Symmetric pump rate R = R₁ = R₂.
    #[arg(long, default_value_t = 0.0, value_parser = non_negative, allow_negative_numbers = true)]
    rate: f64,
    /// Pump rate R₁, overriding --rate.
    #[arg(long, value_parser = non_negative, allow_negative_numbers = true)]
    r1: Option<f64>,
    /// Pump rate R₂, overriding --rate.
    #[arg(long, value_parser = non_negative, allow_negative_numbers = true)]
    r2: Option<f64>,
    /// Level splitting ω (Λ) or ω′ (V).
    #[arg(long, default_value_t = 0.0, value_parser = non_negative, allow_negative_numbers = true)]
    omega: f64,
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output file; standard output when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SchemeArg {
    Lambda,
    Vee,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

fn parse_f64(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("`{s}` is not a number: {e}"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("`{s}` is not finite"))
    }
}

fn non_negative(s: &str) -> Result<f64, String> {
    let v = parse_f64(s)?;
    if v >= 0.0 {
        Ok(v)
    } else {
        Err(format!("must be >= 0, got {v}"))
    }
}

fn positive(s: &str) -> Result<f64, String> {
    let v = parse_f64(s)?;
    if v > 0.0 {
        Ok(v)
    } else {
        Err(format!("must be > 0, got {v}"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Spectrum { delta_min: f64, delta_max: f64, points: usize },
    RegimeMap { r: (f64, f64, usize), omega: (f64, f64, usize) },
    GroupIndex { omegas: Vec<f64>, r_min: f64, r_max: f64, n_r: usize },
    Validate { omegas: Vec<f64>, rates: Vec<f64>, delta: (f64, f64, usize), tolerance: f64 },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Spectrum { .. } => "spectrum",
            Command::RegimeMap { .. } => "regime-map",
            Command::GroupIndex { .. } => "group-index",
            Command::Validate { .. } => "validate",
        }
    }
}

/// A fully validated invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    /// For sweeps, the fixed parameters; swept fields are overwritten per point.
    pub params: SystemParams,
    pub format: Format,
    pub output: Option<PathBuf>,
}

impl AtomArgs {
    fn params(&self) -> SystemParams {
        SystemParams {
            scheme: match self.scheme {
                SchemeArg::Lambda => Scheme::Lambda,
                SchemeArg::Vee => Scheme::Vee,
            },
            gamma1: self.gamma1,
            gamma2: self.gamma2,
            omega_p_rabi: self.rabi,
            alpha: self.alpha,
            nu_p: self.nu_p,
            ..SystemParams::default()
        }
    }
}

fn usage_error(msg: impl std::fmt::Display) -> clap::Error {
    Cli::command().error(ErrorKind::ValueValidation, msg)
}

/// Parses `argv` (program name first). Errors carry clap's usage text and
/// exit with status 2.
pub fn parse_args<I, T>(argv: I) -> Result<RunConfig, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv)?;
    let config = match cli.command {
        CommandArgs::Spectrum { atom, pump, delta_min, delta_max, points, out } => RunConfig {
            command: Command::Spectrum { delta_min, delta_max, points },
            params: SystemParams {
                r1: pump.r1.unwrap_or(pump.rate),
                r2: pump.r2.unwrap_or(pump.rate),
                omega: pump.omega,
                ..atom.params()
            },
            format: out.format,
            output: out.output,
        },
        CommandArgs::RegimeMap { atom, r_min, r_max, n_r, omega_min, omega_max, n_omega, out } => RunConfig {
            command: Command::RegimeMap { r: (r_min, r_max, n_r), omega: (omega_min, omega_max, n_omega) },
            params: atom.params(),
            format: out.format,
            output: out.output,
        },
        CommandArgs::GroupIndex { atom, omegas, r_min, r_max, n_r, out } => RunConfig {
            command: Command::GroupIndex { omegas, r_min, r_max, n_r },
            params: atom.params(),
            format: out.format,
            output: out.output,
        },
        CommandArgs::Validate { atom, omegas, rates, delta_min, delta_max, points, tolerance, out } => RunConfig {
            command: Command::Validate { omegas, rates, delta: (delta_min, delta_max, points), tolerance },
            params: atom.params(),
            format: out.format,
            output: out.output,
        },
    };
    check(&config).map_err(usage_error)?;
    Ok(config)
}

fn check(config: &RunConfig) -> Result<(), String> {
    let p = &config.params;
    p.validate_weak_probe().map_err(|e| e.to_string())?;
    let grid = |what: &str, min: f64, max: f64, n: usize, min_points: usize| -> Result<(), String> {
        disperse_core::scan::linspace(min, max, n).map_err(|e| format!("{what}: {e}"))?;
        if n < min_points {
            return Err(format!("{what}: need at least {min_points} points, got {n}"));
        }
        Ok(())
    };
    match &config.command {
        Command::Spectrum { delta_min, delta_max, points } => {
            grid("detuning grid", *delta_min, *delta_max, *points, 2)?;
        }
        Command::RegimeMap { r, omega } => {
            grid("rate axis", r.0, r.1, r.2, 1)?;
            grid("splitting axis", omega.0, omega.1, omega.2, 1)?;
            require_symmetric_atom(p)?;
        }
        Command::GroupIndex { omegas, r_min, r_max, n_r } => {
            grid("rate axis", *r_min, *r_max, *n_r, 1)?;
            if omegas.is_empty() {
                return Err("--omegas needs at least one value".into());
            }
        }
        Command::Validate { omegas, rates, delta, .. } => {
            grid("detuning grid", delta.0, delta.1, delta.2, 1)?;
            if p.scheme == Scheme::Vee {
                return Err("validate covers the lambda scheme only".into());
            }
            require_symmetric_atom(p)?;
            if p.omega_p_rabi == 0.0 {
                return Err("validate needs --rabi > 0".into());
            }
            if omegas.is_empty() || rates.is_empty() {
                return Err("--omegas and --rates need at least one value each".into());
            }
        }
    }
    Ok(())
}

fn require_symmetric_atom(p: &SystemParams) -> Result<(), String> {
    if p.scheme == Scheme::Lambda && p.gamma1 != p.gamma2 {
        Err("this command needs --gamma1 == --gamma2".into())
    } else {
        Ok(())
    }
}
