//! Table-producing subcommands. Rows are computed in parallel and collected
//! in grid order, so output does not depend on scheduling.

use std::f64::consts::TAU;
use std::path::Path;

use num_complex::Complex64;
use rayon::prelude::*;
use rmscat_core::genleg::Regime;
use rmscat_core::rosenmorse::{energy_of_k, RosenMorse, K_MIN, THRESHOLD_BAND};
use rmscat_core::scatter::scatter;
use rmscat_core::spectral::{forward_sample, inverse_sample, measure, GridFunction, Nodes, EDGE_DECAY};

use crate::config::{linspace, Command, RunConfig, TransformMode};
use crate::error::{CliError, CliResult};
use crate::output::{Column, Table};

/// Spatial samples per shortest wavelength for synthesized transforms.
pub const POINTS_PER_WAVELENGTH: f64 = 20.0;
/// Largest spatial step for synthesized transforms.
pub const MAX_X_STEP: f64 = 0.05;

pub fn run(cfg: &RunConfig) -> CliResult<Table> {
    match cfg.command {
        Command::Coefficients => coefficients(cfg),
        Command::State => state(cfg),
        Command::Spectrum => spectrum(cfg),
        Command::Measure => measure_table(cfg),
        Command::Transform => transform(cfg),
        Command::Validate => unreachable!("validate is dispatched separately"),
    }
}

fn header(title: &str, p: &RosenMorse) -> Table {
    let mut t = Table::new(title);
    t.meta("alpha", p.alpha).meta("beta", p.beta).meta("threshold_k", p.threshold());
    t
}

fn regime_name(r: Regime) -> &'static str {
    match r {
        Regime::BelowBarrier => "below",
        Regime::AboveBarrier => "above",
        Regime::Bound => "bound",
        Regime::Generic => "generic",
    }
}

fn par_map<T, F>(grid: &[f64], f: F) -> CliResult<Vec<T>>
where
    T: Send,
    F: Fn(f64) -> rmscat_core::Result<T> + Sync,
{
    grid.par_iter().map(|&x| f(x).map_err(CliError::from)).collect()
}

pub fn coefficients(cfg: &RunConfig) -> CliResult<Table> {
    let p = cfg.potential()?;
    let ks = cfg.k_grid();
    let rows = par_map(&ks, |k| scatter(&p, k))?;
    let mut t = header("reflection and transmission coefficients", &p);
    t.meta("k_range", format!("[{}, {}]", cfg.k_min, cfg.k_max))
        .meta("n", cfg.n)
        .meta("excluded_band", format!("|k| <= {K_MIN}, ||k| - threshold_k| <= {THRESHOLD_BAND}"));
    let col = |f: &dyn Fn(usize) -> f64| Column::Real((0..rows.len()).map(f).collect());
    t.column("k", Column::Real(ks.clone()))
        .column("R", col(&|i| rows[i].reflection))
        .column("T", col(&|i| rows[i].transmission))
        .column("re_B_over_A", col(&|i| rows[i].b_over_a.re))
        .column("im_B_over_A", col(&|i| rows[i].b_over_a.im))
        .column("re_C_over_A", col(&|i| rows[i].c_over_a.re))
        .column("im_C_over_A", col(&|i| rows[i].c_over_a.im))
        .column("unitarity_residual", col(&|i| rows[i].reflection + rows[i].transmission - 1.0));
    Ok(t)
}

pub fn state(cfg: &RunConfig) -> CliResult<Table> {
    let p = cfg.potential()?;
    let k = cfg.k;
    let xs = linspace(cfg.x_min, cfg.x_max, cfg.n);
    let psi = par_map(&xs, |x| p.scattering_state(k, x))?;
    let mut t = header("scattering state", &p);
    t.meta("k", k)
        .meta("energy", energy_of_k(p.beta, k)?)
        .meta("regime", regime_name(p.regime(k)?))
        .meta("x_range", format!("[{}, {}]", cfg.x_min, cfg.x_max))
        .meta("n", cfg.n);
    t.column("x", Column::Real(xs))
        .column("re_psi", Column::Real(psi.iter().map(|v| v.re).collect()))
        .column("im_psi", Column::Real(psi.iter().map(|v| v.im).collect()))
        .column("abs_psi", Column::Real(psi.iter().map(|v| v.norm()).collect()));
    Ok(t)
}

pub fn spectrum(cfg: &RunConfig) -> CliResult<Table> {
    let p = cfg.potential()?;
    let s = p.bound_spectrum();
    let mut t = header("bound spectrum", &p);
    t.meta("count", s.len()).meta("continuum_edge", -2.0 * p.beta);
    t.column("n", Column::Int(s.iter().map(|b| b.n as i64).collect()))
        .column("energy", Column::Real(s.iter().map(|b| b.energy).collect()))
        .column("mu", Column::Real(s.iter().map(|b| b.mu).collect()))
        .column("eta", Column::Real(s.iter().map(|b| b.eta).collect()));
    Ok(t)
}

pub fn measure_table(cfg: &RunConfig) -> CliResult<Table> {
    let p = cfg.potential()?;
    let ks = cfg.k_grid();
    let w = par_map(&ks, |k| measure(&p, k))?;
    let mut t = header("spectral measure", &p);
    t.meta("k_range", format!("[{}, {}]", cfg.k_min, cfg.k_max)).meta("n", cfg.n);
    t.column("k", Column::Real(ks)).column("w", Column::Real(w));
    Ok(t)
}

/// Spatial grid for synthesizing f from a spectrum reaching up to `k_max`.
pub fn synthesis_grid(cfg: &RunConfig, k_max: f64) -> Vec<f64> {
    let step = (TAU / (POINTS_PER_WAVELENGTH * k_max.abs())).min(MAX_X_STEP);
    let n = ((cfg.x_max - cfg.x_min) / step).ceil() as usize + 1;
    linspace(cfg.x_min, cfg.x_max, n)
}

/// Gaussian spectrum centered at `cfg.k` with width `cfg.sigma`.
pub fn gaussian_spectrum(cfg: &RunConfig) -> CliResult<GridFunction> {
    let (lo, hi) = cfg.spectrum_range();
    let (k0, sigma) = (cfg.k, cfg.sigma);
    Ok(GridFunction::sample(
        Nodes::linspace(lo, hi, cfg.n)?,
        |k| Ok(Complex64::new((-0.5 * ((k - k0) / sigma).powi(2)).exp(), 0.0)),
        format!("gaussian(k0 = {k0}, sigma = {sigma})"),
    )?)
}

pub fn inverse(p: &RosenMorse, spectrum: &GridFunction, xs: Vec<f64>) -> CliResult<GridFunction> {
    spectrum.check_edge_decay()?;
    let weights = spectrum.nodes.weights();
    let values = par_map(&xs, |x| inverse_sample(p, spectrum, &weights, x))?;
    Ok(GridFunction::new(Nodes::explicit(xs)?, values, format!("inverse transform of {}", spectrum.provenance))?)
}

pub fn forward(p: &RosenMorse, f: &GridFunction, ks: Vec<f64>) -> CliResult<GridFunction> {
    f.check_edge_decay()?;
    let weights = f.nodes.weights();
    let values = par_map(&ks, |k| forward_sample(p, f, &weights, k))?;
    Ok(GridFunction::new(Nodes::explicit(ks)?, values, format!("forward transform of {}", f.provenance))?)
}

/// Relative L2 distance on a common grid.
pub fn relative_l2_error(got: &GridFunction, want: &GridFunction) -> f64 {
    let weights = want.nodes.weights();
    let (mut num, mut den) = (0.0, 0.0);
    for ((w, g), v) in weights.iter().zip(&got.values).zip(&want.values) {
        num += w * (g - v).norm_sqr();
        den += w * v.norm_sqr();
    }
    (num / den).sqrt()
}

pub struct RoundTrip {
    pub original: GridFunction,
    pub synthesized: GridFunction,
    pub recovered: GridFunction,
    pub error: f64,
}

pub fn round_trip(cfg: &RunConfig) -> CliResult<RoundTrip> {
    let p = cfg.potential()?;
    let original = gaussian_spectrum(cfg)?;
    let (lo, hi) = cfg.spectrum_range();
    let synthesized = inverse(&p, &original, synthesis_grid(cfg, lo.abs().max(hi.abs())))?;
    let recovered = forward(&p, &synthesized, original.nodes.to_vec())?;
    let error = relative_l2_error(&recovered, &original);
    Ok(RoundTrip { original, synthesized, recovered, error })
}

fn complex_columns(t: &mut Table, axis: &str, f: &GridFunction, name: &str) {
    t.column(axis, Column::Real(f.nodes.to_vec()))
        .column(&format!("re_{name}"), Column::Real(f.values.iter().map(|v| v.re).collect()))
        .column(&format!("im_{name}"), Column::Real(f.values.iter().map(|v| v.im).collect()))
        .column(&format!("abs_{name}"), Column::Real(f.values.iter().map(|v| v.norm()).collect()));
}

pub fn transform(cfg: &RunConfig) -> CliResult<Table> {
    let p = cfg.potential()?;
    let mut t = header("spectral transform", &p);
    t.meta("mode", format!("{:?}", cfg.mode).to_lowercase())
        .meta("quadrature", "trapezoid")
        .meta("edge_decay", EDGE_DECAY);
    match cfg.mode {
        TransformMode::Forward => {
            let path = cfg.input.as_deref().expect("validated");
            let f = read_samples(path)?;
            let big_f = forward(&p, &f, cfg.k_grid())?;
            t.meta("input", path.display())
                .meta("k_range", format!("[{}, {}]", cfg.k_min, cfg.k_max))
                .meta("n", cfg.n);
            complex_columns(&mut t, "k", &big_f, "F");
        }
        TransformMode::Inverse => {
            let spectrum = gaussian_spectrum(cfg)?;
            let (lo, hi) = cfg.spectrum_range();
            let f = inverse(&p, &spectrum, synthesis_grid(cfg, lo.abs().max(hi.abs())))?;
            t.meta("spectrum", &spectrum.provenance)
                .meta("k_range", format!("[{lo}, {hi}]"))
                .meta("n_k", cfg.n)
                .meta("x_range", format!("[{}, {}]", cfg.x_min, cfg.x_max))
                .meta("n_x", f.len());
            complex_columns(&mut t, "x", &f, "f");
        }
        TransformMode::Roundtrip => {
            let rt = round_trip(cfg)?;
            let (lo, hi) = cfg.spectrum_range();
            t.meta("spectrum", &rt.original.provenance)
                .meta("k_range", format!("[{lo}, {hi}]"))
                .meta("n_k", cfg.n)
                .meta("x_range", format!("[{}, {}]", cfg.x_min, cfg.x_max))
                .meta("n_x", rt.synthesized.len())
                .meta("relative_l2_error", rt.error);
            t.column("k", Column::Real(rt.original.nodes.to_vec()))
                .column("re_F0", Column::Real(rt.original.values.iter().map(|v| v.re).collect()))
                .column("im_F0", Column::Real(rt.original.values.iter().map(|v| v.im).collect()))
                .column("re_F", Column::Real(rt.recovered.values.iter().map(|v| v.re).collect()))
                .column("im_F", Column::Real(rt.recovered.values.iter().map(|v| v.im).collect()))
                .column(
                    "abs_error",
                    Column::Real(rt.recovered.values.iter().zip(&rt.original.values).map(|(a, b)| (a - b).norm()).collect()),
                );
        }
    }
    Ok(t)
}

/// Reads f(x) samples from CSV with header columns `x`, `re`, `im` and
/// optional `#` comment lines. `x` must be strictly increasing.
pub fn read_samples(path: &Path) -> CliResult<GridFunction> {
    let bad = |reason: String| CliError::Input { path: path.to_path_buf(), reason };
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| bad(e.to_string()))?;
    let headers = reader.headers().map_err(|e| bad(e.to_string()))?.clone();
    let find = |name: &str| {
        headers.iter().position(|h| h == name).ok_or_else(|| bad(format!("missing column `{name}`")))
    };
    let (ix, ir, ii) = (find("x")?, find("re")?, find("im")?);
    let (mut xs, mut vs) = (Vec::new(), Vec::new());
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(|e| bad(e.to_string()))?;
        let num = |i: usize| -> CliResult<f64> {
            let field = record.get(i).unwrap_or("");
            field.parse().map_err(|_| bad(format!("record {}: `{field}` is not a number", line + 1)))
        };
        xs.push(num(ix)?);
        vs.push(Complex64::new(num(ir)?, num(ii)?));
    }
    if xs.len() < 2 {
        return Err(bad("need at least two samples".into()));
    }
    let nodes = Nodes::explicit(xs).map_err(|e| bad(e.to_string()))?;
    GridFunction::new(nodes, vs, format!("samples from {}", path.display())).map_err(|e| bad(e.to_string()))
}
