use std::ffi::OsString;
use std::fmt::Display;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::{parse_config, Entry};
use crate::error::CliError;
use crate::grid::Grid;
use crate::table::Format;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LevelEq {
    /// Normalized master equation (physical sign of E).
    Master,
    /// Printed Wronskian condition `omega = -4 s lambda xi`.
    Wr00,
    /// Printed general level equation.
    Levab,
    /// Printed special-channel forms, chosen by the side of beta = 1/2.
    Lev0lev1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Sector {
    Ab,
    Ac,
}

/// Every parameter, as given on the command line or in a config file.
#[derive(Debug, Clone, Default, PartialEq, Args)]
pub struct Params {
    /// Flat `key = value` file; explicit flags take precedence.
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Output file (default: stdout).
    #[arg(long, value_name = "FILE")]
    pub output: Option<PathBuf>,
    /// Fermion mass used for the solve; tables are in units of m.
    #[arg(long, allow_negative_numbers = true)]
    pub mass: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub l: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    pub s: Option<i32>,
    #[arg(long, allow_negative_numbers = true, conflicts_with = "mu_grid")]
    pub mu: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub zeta: Option<i32>,
    #[arg(long, allow_negative_numbers = true)]
    pub coupling: Option<f64>,
    #[arg(long, allow_negative_numbers = true, conflicts_with = "gamma_grid")]
    pub gamma: Option<f64>,
    #[arg(long, allow_negative_numbers = true, conflicts_with_all = ["theta", "xi_grid"])]
    pub xi: Option<f64>,
    #[arg(long, allow_negative_numbers = true, conflicts_with = "xi_grid")]
    pub theta: Option<f64>,
    /// Continuum energy in units of m (wave functions).
    #[arg(long, allow_negative_numbers = true)]
    pub energy: Option<f64>,
    #[arg(long, allow_hyphen_values = true, value_name = "LO:HI:N")]
    pub mu_grid: Option<Grid>,
    #[arg(long, allow_hyphen_values = true, value_name = "LO:HI:N")]
    pub xi_grid: Option<Grid>,
    #[arg(long, allow_hyphen_values = true, value_name = "LO:HI:N")]
    pub gamma_grid: Option<Grid>,
    #[arg(long, allow_hyphen_values = true, value_name = "LO:HI:N")]
    pub energy_grid: Option<Grid>,
    #[arg(long, allow_hyphen_values = true, value_name = "LO:HI:N")]
    pub r_grid: Option<Grid>,
    #[arg(long, value_enum)]
    pub level_eq: Option<LevelEq>,
    #[arg(long, value_enum)]
    pub sector: Option<Sector>,
    /// Number of refinement rungs applied to the oracle configuration.
    #[arg(long)]
    pub refine: Option<u32>,
    #[arg(long, allow_negative_numbers = true)]
    pub r_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub tol: Option<f64>,
}

/// Parameter keys, spelled as flags without the leading `--`.
pub const KEYS: [&str; 23] = [
    "config", "format", "output", "mass", "l", "s", "mu", "zeta", "coupling", "gamma", "xi", "theta", "energy", "mu-grid", "xi-grid",
    "gamma-grid", "energy-grid", "r-grid", "level-eq", "sector", "refine", "r-min", "tol",
];

/// Keys that describe one logical quantity; a flag for any of them
/// shadows all of them in the config file.
const GROUPS: [&[&str]; 3] = [&["xi", "theta", "xi-grid"], &["mu", "mu-grid"], &["gamma", "gamma-grid"]];

fn parse_value<T: FromStr>(v: &str) -> Result<T, String>
where
    T::Err: Display,
{
    v.parse::<T>().map_err(|e| e.to_string())
}

fn parse_enum<T: ValueEnum>(v: &str) -> Result<T, String> {
    T::from_str(v, false)
}

impl Params {
    pub fn is_set(&self, key: &str) -> bool {
        match key {
            "config" => self.config.is_some(),
            "format" => self.format.is_some(),
            "output" => self.output.is_some(),
            "mass" => self.mass.is_some(),
            "l" => self.l.is_some(),
            "s" => self.s.is_some(),
            "mu" => self.mu.is_some(),
            "zeta" => self.zeta.is_some(),
            "coupling" => self.coupling.is_some(),
            "gamma" => self.gamma.is_some(),
            "xi" => self.xi.is_some(),
            "theta" => self.theta.is_some(),
            "energy" => self.energy.is_some(),
            "mu-grid" => self.mu_grid.is_some(),
            "xi-grid" => self.xi_grid.is_some(),
            "gamma-grid" => self.gamma_grid.is_some(),
            "energy-grid" => self.energy_grid.is_some(),
            "r-grid" => self.r_grid.is_some(),
            "level-eq" => self.level_eq.is_some(),
            "sector" => self.sector.is_some(),
            "refine" => self.refine.is_some(),
            "r-min" => self.r_min.is_some(),
            "tol" => self.tol.is_some(),
            _ => false,
        }
    }

    /// Sets `key` from its text form.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        match key {
            "format" => self.format = Some(parse_enum(value)?),
            "output" => self.output = Some(PathBuf::from(value)),
            "mass" => self.mass = Some(parse_value(value)?),
            "l" => self.l = Some(parse_value(value)?),
            "s" => self.s = Some(parse_value(value)?),
            "mu" => self.mu = Some(parse_value(value)?),
            "zeta" => self.zeta = Some(parse_value(value)?),
            "coupling" => self.coupling = Some(parse_value(value)?),
            "gamma" => self.gamma = Some(parse_value(value)?),
            "xi" => self.xi = Some(parse_value(value)?),
            "theta" => self.theta = Some(parse_value(value)?),
            "energy" => self.energy = Some(parse_value(value)?),
            "mu-grid" => self.mu_grid = Some(parse_value(value)?),
            "xi-grid" => self.xi_grid = Some(parse_value(value)?),
            "gamma-grid" => self.gamma_grid = Some(parse_value(value)?),
            "energy-grid" => self.energy_grid = Some(parse_value(value)?),
            "r-grid" => self.r_grid = Some(parse_value(value)?),
            "level-eq" => self.level_eq = Some(parse_enum(value)?),
            "sector" => self.sector = Some(parse_enum(value)?),
            "refine" => self.refine = Some(parse_value(value)?),
            "r-min" => self.r_min = Some(parse_value(value)?),
            "tol" => self.tol = Some(parse_value(value)?),
            "config" => return Err("config files cannot include other config files".into()),
            _ => return Err(format!("unknown key {key:?}")),
        }
        Ok(())
    }

    fn set_keys(&self) -> impl Iterator<Item = &'static str> + '_ {
        KEYS.into_iter().filter(|k| self.is_set(k))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    AbSolve,
    AbSweep,
    AbDensity,
    AbWavefunction,
    AcSolve,
    AcSweep,
    OracleCheck,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::AbSolve => "ab-solve",
            Command::AbSweep => "ab-sweep",
            Command::AbDensity => "ab-density",
            Command::AbWavefunction => "ab-wavefunction",
            Command::AcSolve => "ac-solve",
            Command::AcSweep => "ac-sweep",
            Command::OracleCheck => "oracle-check",
        }
    }

    /// Keys this command reads, besides `config`, `format`, `output`, `mass`.
    pub fn keys(self) -> &'static [&'static str] {
        match self {
            Command::AbSolve => &["l", "s", "mu", "xi", "theta", "level-eq"],
            Command::AbSweep => &["l", "s", "mu", "mu-grid", "xi", "theta", "xi-grid", "level-eq"],
            Command::AbDensity => &["l", "s", "mu", "xi", "theta", "energy-grid"],
            Command::AbWavefunction => &["l", "s", "mu", "xi", "theta", "r-grid", "energy"],
            Command::AcSolve => &["gamma", "coupling", "l", "zeta", "xi", "theta"],
            Command::AcSweep => &["gamma", "gamma-grid", "coupling", "l", "zeta", "xi", "theta", "xi-grid"],
            Command::OracleCheck => &[
                "sector", "l", "s", "mu", "mu-grid", "gamma", "gamma-grid", "coupling", "zeta", "xi", "theta", "xi-grid", "refine", "r-min", "tol",
            ],
        }
    }

    fn uses(self, key: &str) -> bool {
        matches!(key, "config" | "format" | "output" | "mass") || self.keys().contains(&key)
    }
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Bound level of one Dirac channel.
    AbSolve(Params),
    /// Bound levels over a flux and/or extension grid.
    AbSweep(Params),
    /// Continuum spectral density over an energy grid.
    AbDensity(Params),
    /// Bound (or continuum, with --energy) radial doublet on a radius grid.
    AbWavefunction(Params),
    /// Bound level of one Schrodinger channel.
    AcSolve(Params),
    /// Schrodinger bound levels over a coupling and/or extension grid.
    AcSweep(Params),
    /// Analytic levels against the shooting eigensolver.
    OracleCheck(Params),
}

#[derive(Parser, Debug)]
#[command(name = "fluxbound", version, about = "Bound states and spectral densities in point-flux backgrounds")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

/// Extension parameter of a single solve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtSpec {
    Xi(f64),
    Theta(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtAxis {
    Fixed(ExtSpec),
    Xi(Grid),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Axis {
    Fixed(f64),
    Grid(Grid),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbSpec {
    pub l: i64,
    pub s: i32,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AcSpec {
    /// Pure-gamma channel (l = 0, zeta = 1, coupling = -gamma).
    Gamma(f64),
    Explicit { coupling: f64, l: i64, zeta: i32 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AcAxis {
    Fixed(AcSpec),
    Gamma(Grid),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OracleTarget {
    Ab { spec: AbSpec, mu: Axis },
    Ac(AcAxis),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Job {
    AbSolve { spec: AbSpec, mu: f64, ext: ExtSpec, level_eq: LevelEq },
    AbSweep { spec: AbSpec, mu: Axis, ext: ExtAxis, level_eq: LevelEq },
    AbDensity { spec: AbSpec, mu: f64, ext: ExtSpec, energies: Grid },
    AbWavefunction { spec: AbSpec, mu: f64, ext: ExtSpec, radii: Grid, energy: Option<f64> },
    AcSolve { spec: AcSpec, ext: ExtSpec },
    AcSweep { channel: AcAxis, ext: ExtAxis },
    OracleCheck { target: OracleTarget, ext: ExtAxis, refine: u32, r_min: Option<f64>, tol: Option<f64> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunSpec {
    pub command: Command,
    pub mass: f64,
    pub job: Job,
    pub format: Format,
    pub output: Option<PathBuf>,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Parses `argv` (program name first), reads `--config` if given, and
/// validates the merged parameters.
pub fn parse_args<I, T>(argv: I) -> Result<RunSpec, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv)?;
    let (command, flags) = match cli.cmd {
        Cmd::AbSolve(p) => (Command::AbSolve, p),
        Cmd::AbSweep(p) => (Command::AbSweep, p),
        Cmd::AbDensity(p) => (Command::AbDensity, p),
        Cmd::AbWavefunction(p) => (Command::AbWavefunction, p),
        Cmd::AcSolve(p) => (Command::AcSolve, p),
        Cmd::AcSweep(p) => (Command::AcSweep, p),
        Cmd::OracleCheck(p) => (Command::OracleCheck, p),
    };
    let entries = match &flags.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| CliError::Read { path: path.display().to_string(), source })?;
            parse_config(&text)?
        }
        None => Vec::new(),
    };
    resolve(command, flags, &entries)
}

/// Merges config entries under explicit flags and validates the result.
pub fn resolve(command: Command, flags: Params, entries: &[Entry]) -> Result<RunSpec, CliError> {
    if let Some(key) = flags.set_keys().find(|k| !command.uses(k)) {
        return Err(usage(format!("--{key} is not used by {}", command.name())));
    }
    let shadowed = |key: &str| {
        flags.is_set(key) || GROUPS.iter().any(|g| g.contains(&key) && g.iter().any(|k| flags.is_set(k)))
    };
    let mut params = flags.clone();
    for e in entries {
        if !KEYS.contains(&e.key.as_str()) || e.key == "config" {
            return Err(usage(format!("config line {}: unknown key {:?}", e.line, e.key)));
        }
        if !command.uses(&e.key) || shadowed(&e.key) {
            continue;
        }
        params.set(&e.key, &e.value).map_err(|msg| usage(format!("config line {}: {}: {msg}", e.line, e.key)))?;
    }
    build(command, &params)
}

fn need<T: Copy>(v: Option<T>, key: &str, command: Command) -> Result<T, CliError> {
    v.ok_or_else(|| usage(format!("{} needs --{key}", command.name())))
}

fn one_ext(p: &Params, command: Command) -> Result<ExtSpec, CliError> {
    match (p.xi, p.theta) {
        (Some(xi), None) => Ok(ExtSpec::Xi(xi)),
        (None, Some(t)) => Ok(ExtSpec::Theta(t)),
        (Some(_), Some(_)) => Err(usage("--xi and --theta are mutually exclusive")),
        (None, None) => Err(usage(format!("{} needs exactly one of --xi or --theta", command.name()))),
    }
}

fn ext_axis(p: &Params, command: Command) -> Result<ExtAxis, CliError> {
    match p.xi_grid {
        Some(_) if p.xi.is_some() || p.theta.is_some() => Err(usage("--xi-grid excludes --xi and --theta")),
        Some(g) => Ok(ExtAxis::Xi(g)),
        None => one_ext(p, command).map(ExtAxis::Fixed),
    }
}

fn axis(fixed: Option<f64>, grid: Option<Grid>, key: &str, command: Command) -> Result<Axis, CliError> {
    match (fixed, grid) {
        (Some(v), None) => Ok(Axis::Fixed(v)),
        (None, Some(g)) => Ok(Axis::Grid(g)),
        (Some(_), Some(_)) => Err(usage(format!("--{key} and --{key}-grid are mutually exclusive"))),
        (None, None) => Err(usage(format!("{} needs --{key} or --{key}-grid", command.name()))),
    }
}

fn ab_spec(p: &Params, command: Command) -> Result<AbSpec, CliError> {
    Ok(AbSpec { l: need(p.l, "l", command)?, s: need(p.s, "s", command)? })
}

fn ac_spec(p: &Params, command: Command) -> Result<AcSpec, CliError> {
    match (p.gamma, p.coupling) {
        (Some(_), Some(_)) => Err(usage("--gamma excludes --coupling")),
        (Some(g), None) if p.l.is_none() && p.zeta.is_none() => Ok(AcSpec::Gamma(g)),
        (Some(_), None) => Err(usage("--gamma fixes l = 0 and zeta = 1; use --coupling with --l and --zeta instead")),
        (None, Some(c)) => Ok(AcSpec::Explicit { coupling: c, l: need(p.l, "l", command)?, zeta: need(p.zeta, "zeta", command)? }),
        (None, None) => Err(usage(format!("{} needs --gamma or --coupling", command.name()))),
    }
}

fn ac_axis(p: &Params, command: Command) -> Result<AcAxis, CliError> {
    match p.gamma_grid {
        Some(_) if p.gamma.is_some() || p.coupling.is_some() || p.l.is_some() || p.zeta.is_some() => {
            Err(usage("--gamma-grid excludes --gamma, --coupling, --l and --zeta"))
        }
        Some(g) => Ok(AcAxis::Gamma(g)),
        None => ac_spec(p, command).map(AcAxis::Fixed),
    }
}

fn build(command: Command, p: &Params) -> Result<RunSpec, CliError> {
    let mass = p.mass.unwrap_or(1.0);
    if !(mass.is_finite() && mass > 0.0) {
        return Err(usage(format!("--mass must be positive and finite, got {mass}")));
    }
    let level_eq = p.level_eq.unwrap_or(LevelEq::Master);
    let job = match command {
        Command::AbSolve => Job::AbSolve { spec: ab_spec(p, command)?, mu: need(p.mu, "mu", command)?, ext: one_ext(p, command)?, level_eq },
        Command::AbSweep => {
            let mu = axis(p.mu, p.mu_grid, "mu", command)?;
            let ext = ext_axis(p, command)?;
            if matches!((mu, ext), (Axis::Fixed(_), ExtAxis::Fixed(_))) {
                return Err(usage("ab-sweep needs --mu-grid or --xi-grid"));
            }
            Job::AbSweep { spec: ab_spec(p, command)?, mu, ext, level_eq }
        }
        Command::AbDensity => Job::AbDensity {
            spec: ab_spec(p, command)?,
            mu: need(p.mu, "mu", command)?,
            ext: one_ext(p, command)?,
            energies: need(p.energy_grid, "energy-grid", command)?,
        },
        Command::AbWavefunction => {
            let radii = need(p.r_grid, "r-grid", command)?;
            if radii.lo <= 0.0 {
                return Err(usage("--r-grid must lie in r > 0"));
            }
            Job::AbWavefunction { spec: ab_spec(p, command)?, mu: need(p.mu, "mu", command)?, ext: one_ext(p, command)?, radii, energy: p.energy }
        }
        Command::AcSolve => Job::AcSolve { spec: ac_spec(p, command)?, ext: one_ext(p, command)? },
        Command::AcSweep => {
            let channel = ac_axis(p, command)?;
            let ext = ext_axis(p, command)?;
            if matches!((channel, ext), (AcAxis::Fixed(_), ExtAxis::Fixed(_))) {
                return Err(usage("ac-sweep needs --gamma-grid or --xi-grid"));
            }
            Job::AcSweep { channel, ext }
        }
        Command::OracleCheck => {
            let target = match need(p.sector, "sector", command)? {
                Sector::Ab => {
                    if p.gamma.is_some() || p.gamma_grid.is_some() || p.coupling.is_some() || p.zeta.is_some() {
                        return Err(usage("--sector ab takes --l, --s and --mu or --mu-grid"));
                    }
                    OracleTarget::Ab { spec: ab_spec(p, command)?, mu: axis(p.mu, p.mu_grid, "mu", command)? }
                }
                Sector::Ac => {
                    if p.s.is_some() || p.mu.is_some() || p.mu_grid.is_some() {
                        return Err(usage("--sector ac takes --gamma, --gamma-grid or --coupling with --l and --zeta"));
                    }
                    OracleTarget::Ac(ac_axis(p, command)?)
                }
            };
            Job::OracleCheck { target, ext: ext_axis(p, command)?, refine: p.refine.unwrap_or(0), r_min: p.r_min, tol: p.tol }
        }
    };
    Ok(RunSpec { command, mass, job, format: p.format.unwrap_or(Format::Csv), output: p.output.clone() })
}
