//! Flag and config-file settings, and their resolution into a run.

use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use matsusy_core::catalog::{self, Branch, FamilyId, Params};
use matsusy_core::eigensolve::Tolerance;
use matsusy_core::gridops::TruncationPolicy;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    List,
    Validate,
    VerifySi,
    Spectrum,
    Ground,
    Excited,
    Isospectral,
    Sweep,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::List => "list",
            Command::Validate => "validate",
            Command::VerifySi => "verify-si",
            Command::Spectrum => "spectrum",
            Command::Ground => "ground",
            Command::Excited => "excited",
            Command::Isospectral => "isospectral",
            Command::Sweep => "sweep",
        }
    }

    fn supports_csv(self) -> bool {
        matches!(
            self,
            Command::Spectrum
                | Command::Ground
                | Command::Excited
                | Command::Isospectral
                | Command::Sweep
        )
    }

    fn supports_plot(self) -> bool {
        matches!(
            self,
            Command::Spectrum | Command::Ground | Command::Excited | Command::Isospectral
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    #[default]
    Closed,
    Ode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepParam {
    Kappa,
    Mu,
    Omega,
    Lambda,
    C,
}

impl SweepParam {
    pub fn set(self, p: &mut Params, v: f64) {
        match self {
            SweepParam::Kappa => p.kappa = v,
            SweepParam::Mu => p.mu = v,
            SweepParam::Omega => p.omega = v,
            SweepParam::Lambda => p.lambda = v,
            SweepParam::C => p.c_ext = v,
        }
    }
}

/// Every setting that can come from a flag or from the JSON config file.
#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Settings {
    /// Optional in a config file; must agree with the subcommand.
    #[arg(skip)]
    pub command: Option<Command>,
    /// Family id, e.g. F1_coulomb_like (or just F1).
    #[arg(long)]
    pub family: Option<String>,
    /// kappa or mu.
    #[arg(long)]
    pub branch: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub kappa: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub omega: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<f64>,
    /// Half-width of the F6 interval.
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<f64>,
    #[arg(long = "grid-n")]
    pub grid_n: Option<usize>,
    /// Inset from singular walls.
    #[arg(long = "grid-eps")]
    pub grid_eps: Option<f64>,
    /// Tail length for infinite ends.
    #[arg(long = "grid-L")]
    #[serde(rename = "grid_L")]
    pub grid_l: Option<f64>,
    #[arg(long)]
    pub levels: Option<usize>,
    #[arg(long = "tol-abs")]
    pub tol_abs: Option<f64>,
    #[arg(long = "tol-rel")]
    pub tol_rel: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write gnuplot-style columns to this path.
    #[arg(long)]
    pub plot: Option<PathBuf>,
    /// Level index for `excited`.
    #[arg(long)]
    pub n: Option<usize>,
    /// Ground-state solution index (1 or 2).
    #[arg(long)]
    pub solution: Option<u8>,
    #[arg(long, value_enum)]
    pub method: Option<Method>,
    #[arg(long = "sweep-param", value_enum)]
    pub sweep_param: Option<SweepParam>,
    #[arg(long = "sweep-from", allow_hyphen_values = true)]
    pub sweep_from: Option<f64>,
    #[arg(long = "sweep-to", allow_hyphen_values = true)]
    pub sweep_to: Option<f64>,
    #[arg(long = "sweep-steps")]
    pub sweep_steps: Option<usize>,
}

macro_rules! overlay {
    ($flags:ident, $file:ident, $($f:ident),*) => {
        Settings { $($f: $flags.$f.or($file.$f),)* }
    };
}

impl Settings {
    /// Flag values take precedence over file values.
    pub fn over(self, file: Settings) -> Settings {
        let flags = self;
        overlay!(
            flags,
            file,
            command,
            family,
            branch,
            kappa,
            mu,
            omega,
            lambda,
            c,
            grid_n,
            grid_eps,
            grid_l,
            levels,
            tol_abs,
            tol_rel,
            out,
            format,
            plot,
            n,
            solution,
            method,
            sweep_param,
            sweep_from,
            sweep_to,
            sweep_steps
        )
    }
}

/// Reads a JSON config file; parse errors carry line and column.
pub fn read_config(path: &Path) -> Result<Settings, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))
}

#[derive(Debug, Clone, Serialize)]
pub struct GridSettings {
    pub n: usize,
    pub epsilon: Option<f64>,
    #[serde(rename = "L")]
    pub tail: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepSettings {
    pub param: SweepParam,
    pub from: f64,
    pub to: f64,
    pub steps: usize,
}

impl SweepSettings {
    pub fn values(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.from];
        }
        (0..self.steps)
            .map(|i| self.from + (self.to - self.from) * i as f64 / (self.steps - 1) as f64)
            .collect()
    }
}

/// Fully resolved run; embedded verbatim in every report.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: Command,
    pub family: Option<FamilyId>,
    pub branch: Option<Branch>,
    pub params: Option<Params>,
    pub grid: GridSettings,
    pub levels: usize,
    pub tolerance: Tolerance,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub plot: Option<PathBuf>,
    pub n: Option<usize>,
    pub solution: Option<u8>,
    pub method: Option<Method>,
    pub sweep: Option<SweepSettings>,
    /// Values filled in without a flag, with the reason.
    pub notes: Vec<String>,
}

impl RunConfig {
    pub fn policy(&self) -> TruncationPolicy {
        TruncationPolicy {
            epsilon: self.grid.epsilon,
            tail: self.grid.tail,
            levels: self.levels.max(1),
        }
    }

    pub fn family(&self) -> FamilyId {
        self.family
            .expect("resolved configs for this command carry a family")
    }

    pub fn params(&self) -> Params {
        self.params
            .expect("resolved configs for this command carry params")
    }
}

pub const DEFAULT_GRID_N: usize = 2000;
pub const DEFAULT_LEVELS: usize = 3;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn need(v: Option<f64>, name: &str, f: FamilyId) -> Result<f64, CliError> {
    v.ok_or_else(|| usage(format!("--{name} is required for {f}")))
}

/// Physical parameters with the per-family required set.
fn resolve_params(f: FamilyId, s: &Settings, notes: &mut Vec<String>) -> Result<Params, CliError> {
    use FamilyId::*;
    let lambda = s.lambda.unwrap_or(1.0);
    if s.lambda.is_none() {
        notes.push("lambda not given; using 1".into());
    }
    let p = match f {
        F0Oscillator => Params::new(
            s.kappa.unwrap_or(0.0),
            need(s.mu, "mu", f)?,
            need(s.omega, "omega", f)?,
        ),
        F2MorseLike => {
            let mu = match s.mu {
                Some(m) => m,
                None => {
                    notes.push(
                        "mu not given; using 1 (the F2 spectrum does not depend on mu)".into(),
                    );
                    1.0
                }
            };
            Params::new(need(s.kappa, "kappa", f)?, mu, need(s.omega, "omega", f)?)
        }
        F6Extended => Params::new(
            need(s.kappa, "kappa", f)?,
            s.mu.unwrap_or(0.0),
            need(s.omega, "omega", f)?,
        )
        .with_c(need(s.c, "c", f)?),
        S1CoulombScalar | S2TrigRmScalar | S3EckartScalar | S4HypRmScalar => Params::new(
            need(s.kappa, "kappa", f)?,
            s.mu.unwrap_or(0.0),
            need(s.omega, "omega", f)?,
        ),
        _ => Params::new(
            need(s.kappa, "kappa", f)?,
            need(s.mu, "mu", f)?,
            need(s.omega, "omega", f)?,
        ),
    };
    let p = p.with_lambda(lambda);
    Ok(if f == F6Extended {
        p
    } else {
        p.with_c(s.c.unwrap_or(p.c_ext))
    })
}

/// Checks the settings against the command and fills defaults.
pub fn resolve(command: Command, mut s: Settings) -> Result<RunConfig, CliError> {
    // The swept parameter does not need its own flag.
    if command == Command::Sweep {
        if let (Some(param), Some(from)) = (s.sweep_param, s.sweep_from) {
            let slot = match param {
                SweepParam::Kappa => &mut s.kappa,
                SweepParam::Mu => &mut s.mu,
                SweepParam::Omega => &mut s.omega,
                SweepParam::Lambda => &mut s.lambda,
                SweepParam::C => &mut s.c,
            };
            slot.get_or_insert(from);
        }
    }
    if let Some(c) = s.command {
        if c != command {
            return Err(usage(format!(
                "config file is for '{}', not '{}'",
                c.name(),
                command.name()
            )));
        }
    }
    let format = s.format.unwrap_or_default();
    if format == Format::Csv && !command.supports_csv() {
        return Err(usage(format!(
            "csv output is not available for {}",
            command.name()
        )));
    }
    if s.plot.is_some() && !command.supports_plot() {
        return Err(usage(format!(
            "--plot is not available for {}",
            command.name()
        )));
    }
    let mut notes = Vec::new();
    let (family, params) = if command == Command::List {
        (None, None)
    } else {
        let name = s
            .family
            .as_deref()
            .ok_or_else(|| usage("--family is required"))?;
        let f: FamilyId = name
            .parse()
            .map_err(|e: matsusy_core::Error| usage(e.to_string()))?;
        let p = resolve_params(f, &s, &mut notes)?;
        (Some(f), Some(p))
    };
    let branch = match &s.branch {
        Some(b) => Some(b.parse::<Branch>().map_err(|e| usage(e.to_string()))?),
        None => None,
    };
    if let (Some(f), Some(b)) = (family, branch) {
        if !catalog::defined_branches(f).contains(&b) {
            return Err(usage(format!("{b} is not defined for {f}")));
        }
    }
    let grid_n = s.grid_n.unwrap_or(DEFAULT_GRID_N);
    let lambda = params.map_or(1.0, |p| p.lambda);
    let default_tol = Tolerance::default_for(lambda);
    let tolerance = Tolerance::new(
        s.tol_abs.unwrap_or(default_tol.abs),
        s.tol_rel.unwrap_or(default_tol.rel),
    );
    let sweep = if command == Command::Sweep {
        let param = s
            .sweep_param
            .ok_or_else(|| usage("--sweep-param is required for sweep"))?;
        let from = s
            .sweep_from
            .ok_or_else(|| usage("--sweep-from is required for sweep"))?;
        let to = s
            .sweep_to
            .ok_or_else(|| usage("--sweep-to is required for sweep"))?;
        let steps = s
            .sweep_steps
            .ok_or_else(|| usage("--sweep-steps is required for sweep"))?;
        if steps == 0 {
            return Err(usage("--sweep-steps must be at least 1"));
        }
        Some(SweepSettings {
            param,
            from,
            to,
            steps,
        })
    } else {
        None
    };
    let n = match command {
        Command::Excited => Some(s.n.ok_or_else(|| usage("--n is required for excited"))?),
        _ => None,
    };
    let (solution, method) = match command {
        Command::Ground => (
            Some(s.solution.unwrap_or(1)),
            Some(s.method.unwrap_or_default()),
        ),
        _ => (None, None),
    };
    if solution.is_some_and(|k| k != 1 && k != 2) {
        return Err(usage("--solution must be 1 or 2"));
    }
    Ok(RunConfig {
        command,
        family,
        branch,
        params,
        grid: GridSettings {
            n: grid_n,
            epsilon: s.grid_eps,
            tail: s.grid_l,
        },
        levels: s.levels.unwrap_or(DEFAULT_LEVELS),
        tolerance,
        format,
        out: s.out,
        plot: s.plot,
        n,
        solution,
        method,
        sweep,
        notes,
    })
}
