//! Run configuration: command-line flags over an optional TOML file over
//! built-in per-command defaults.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rmscat_core::rosenmorse::RosenMorse;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(name = "rmscat", version, about = "Scattering, bound states and spectral transforms of the Rosen-Morse potential")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub overrides: Overrides,

    /// TOML file with any of the flag values (keys as flag names, underscores for dashes).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Print the resolved configuration and exit.
    #[arg(long, global = true)]
    pub show_config: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Reflection/transmission table over a k range.
    Coefficients,
    /// Wavefunction samples ψ_k(x).
    State,
    /// Bound-state energies.
    Spectrum,
    /// Spectral measure w(k) over a k range.
    Measure,
    /// Forward, inverse or round-trip transform of a Gaussian spectrum.
    Transform,
    /// Run the acceptance checks.
    Validate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Preset {
    Fast,
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TransformMode {
    Forward,
    Inverse,
    Roundtrip,
}

/// Every tunable value, unset unless given. Used for both flags and the file.
#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Overrides {
    /// Well depth α (> −1/2).
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    /// Asymmetry β (>= 0).
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    /// Wavenumber (state) or spectrum center (transform).
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub k: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub k_min: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub k_max: Option<f64>,
    /// Number of grid points (k grid for tables and transforms, x grid for state).
    #[arg(long, global = true)]
    pub n: Option<usize>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub x_min: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub x_max: Option<f64>,
    /// Width of the Gaussian spectrum used by `transform`.
    #[arg(long, global = true)]
    pub sigma: Option<f64>,
    #[arg(long, global = true, value_enum)]
    pub mode: Option<TransformMode>,
    /// Sampled f(x) for `transform --mode forward` (CSV columns x, re, im).
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[arg(long, global = true, value_enum)]
    pub preset: Option<Preset>,
}

impl Overrides {
    /// Values from `self`, falling back to `lower`.
    pub fn over(self, lower: Overrides) -> Overrides {
        Overrides {
            alpha: self.alpha.or(lower.alpha),
            beta: self.beta.or(lower.beta),
            k: self.k.or(lower.k),
            k_min: self.k_min.or(lower.k_min),
            k_max: self.k_max.or(lower.k_max),
            n: self.n.or(lower.n),
            x_min: self.x_min.or(lower.x_min),
            x_max: self.x_max.or(lower.x_max),
            sigma: self.sigma.or(lower.sigma),
            mode: self.mode.or(lower.mode),
            input: self.input.or(lower.input),
            out: self.out.or(lower.out),
            format: self.format.or(lower.format),
            preset: self.preset.or(lower.preset),
        }
    }

    pub fn from_file(path: &Path) -> CliResult<Overrides> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| CliError::ConfigFile { path: path.to_path_buf(), source })?;
        toml::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }
}

/// A fully resolved and validated configuration.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: Command,
    pub alpha: f64,
    pub beta: f64,
    pub k: f64,
    pub k_min: f64,
    pub k_max: f64,
    pub n: usize,
    pub x_min: f64,
    pub x_max: f64,
    pub sigma: f64,
    pub mode: TransformMode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    pub format: Format,
    pub preset: Preset,
}

/// Half-width of a transform spectrum grid in units of `sigma`.
pub const SPECTRUM_HALF_WIDTH: f64 = 7.0;

impl RunConfig {
    /// Built-in defaults for `command`.
    pub fn defaults(command: Command) -> RunConfig {
        let (k, n, x_min, x_max) = match command {
            Command::State => (1.2, 801, -10.0, 10.0),
            Command::Transform => (4.0, 141, -30.0, 30.0),
            _ => (1.2, 200, -10.0, 10.0),
        };
        RunConfig {
            command,
            alpha: 0.7,
            beta: 1.0,
            k,
            k_min: 0.1,
            k_max: 6.0,
            n,
            x_min,
            x_max,
            sigma: 0.25,
            mode: TransformMode::Roundtrip,
            input: None,
            out: None,
            format: Format::Csv,
            preset: Preset::Fast,
        }
    }

    /// Applies `o` on top of the defaults for `command` and validates.
    pub fn resolve(command: Command, o: Overrides) -> CliResult<RunConfig> {
        let d = RunConfig::defaults(command);
        let cfg = RunConfig {
            command,
            alpha: o.alpha.unwrap_or(d.alpha),
            beta: o.beta.unwrap_or(d.beta),
            k: o.k.unwrap_or(d.k),
            k_min: o.k_min.unwrap_or(d.k_min),
            k_max: o.k_max.unwrap_or(d.k_max),
            n: o.n.unwrap_or(d.n),
            x_min: o.x_min.unwrap_or(d.x_min),
            x_max: o.x_max.unwrap_or(d.x_max),
            sigma: o.sigma.unwrap_or(d.sigma),
            mode: o.mode.unwrap_or(d.mode),
            input: o.input,
            out: o.out,
            format: o.format.unwrap_or(d.format),
            preset: o.preset.unwrap_or(d.preset),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn potential(&self) -> CliResult<RosenMorse> {
        RosenMorse::new(self.alpha, self.beta).map_err(|e| CliError::Config(e.to_string()))
    }

    /// Spectrum grid of the inverse and round-trip transforms.
    pub fn spectrum_range(&self) -> (f64, f64) {
        (self.k - SPECTRUM_HALF_WIDTH * self.sigma, self.k + SPECTRUM_HALF_WIDTH * self.sigma)
    }

    /// k samples of table commands (`k_min..=k_max`, `n` points).
    pub fn k_grid(&self) -> Vec<f64> {
        linspace(self.k_min, self.k_max, self.n)
    }

    fn check_k(&self, p: &RosenMorse, k: f64, what: &str) -> CliResult<()> {
        p.regime(k).map(|_| ()).map_err(|e| CliError::Config(format!("{what} k = {k}: {e}")))
    }

    fn validate(&self) -> CliResult<()> {
        let p = self.potential()?;
        if self.n < 2 {
            return Err(CliError::Config(format!("n = {} must be at least 2", self.n)));
        }
        match self.command {
            Command::Coefficients | Command::Measure => {
                if !(self.k_min < self.k_max) {
                    return Err(CliError::Config(format!("k_min = {} must be below k_max = {}", self.k_min, self.k_max)));
                }
                for k in self.k_grid() {
                    self.check_k(&p, k, "grid point")?;
                }
            }
            Command::State => {
                if !(self.x_min < self.x_max) {
                    return Err(CliError::Config(format!("x_min = {} must be below x_max = {}", self.x_min, self.x_max)));
                }
                self.check_k(&p, self.k, "state")?;
            }
            Command::Transform => {
                if !(self.sigma > 0.0) {
                    return Err(CliError::Config(format!("sigma = {} must be positive", self.sigma)));
                }
                if !(self.x_min < self.x_max) {
                    return Err(CliError::Config(format!("x_min = {} must be below x_max = {}", self.x_min, self.x_max)));
                }
                if self.mode == TransformMode::Forward {
                    if self.input.is_none() {
                        return Err(CliError::Config("transform --mode forward needs --input".into()));
                    }
                    if !(self.k_min < self.k_max) {
                        return Err(CliError::Config(format!("k_min = {} must be below k_max = {}", self.k_min, self.k_max)));
                    }
                    for k in self.k_grid() {
                        self.check_k(&p, k, "grid point")?;
                    }
                } else {
                    let (lo, hi) = self.spectrum_range();
                    if lo * hi <= 0.0 {
                        return Err(CliError::Config(format!(
                            "spectrum grid [{lo}, {hi}] must lie on one side of k = 0 (states of opposite k overlap)"
                        )));
                    }
                    for k in linspace(lo, hi, self.n) {
                        self.check_k(&p, k, "spectrum grid point")?;
                    }
                }
            }
            Command::Spectrum | Command::Validate => {}
        }
        Ok(())
    }

    /// TOML rendering used by `--show-config`.
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("RunConfig serializes to TOML")
    }
}

pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![a];
    }
    (0..n).map(|i| if i + 1 == n { b } else { a + (b - a) * i as f64 / (n - 1) as f64 }).collect()
}
