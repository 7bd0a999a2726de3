//! Spectral theory of the scattering states: the integral identity for pairs
//! of generalized Legendre functions, the spectral measure w(k), finite-window
//! overlaps and the transform pair
//!
//! ```text
//! f(x) = ∫ F(k) ψ_k(x) dk,        F(k) = (1/w(k)) ∫ f(x) ψ_k*(x) dx.
//! ```
//!
//! Transforms act on sampled data and use the trapezoid rule, which is
//! spectrally accurate for smooth data that has decayed at the grid edges.
//! The ±k states are not mutually orthogonal (below the barrier they are
//! proportional), so a round trip reproduces F only when F is supported on
//! one sign of k.

use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::{LN_2, PI};

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::genleg::{ChannelParams, Coord, GenLegendre, Regime};
use crate::quad::{integrate, QuadSettings};
use crate::rosenmorse::RosenMorse;
use crate::specfun::log_gamma;

/// Edge samples must be below this fraction of the peak magnitude.
pub const EDGE_DECAY: f64 = 1e-10;
/// Default half-width of the overlap window.
pub const DEFAULT_WINDOW: f64 = 15.0;

/// Sample locations of a [`GridFunction`].
#[derive(Debug, Clone, PartialEq)]
pub enum Nodes {
    Uniform { start: f64, step: f64, len: usize },
    Explicit(Vec<f64>),
}

impl Nodes {
    /// `len` equally spaced points from `start` to `end` inclusive.
    pub fn linspace(start: f64, end: f64, len: usize) -> Result<Self> {
        if len < 2 || !(end > start) || !start.is_finite() || !end.is_finite() {
            return Err(Error::Domain(alloc::format!(
                "grid needs >= 2 points on a finite increasing interval (got [{start}, {end}], {len})"
            )));
        }
        Ok(Nodes::Uniform { start, step: (end - start) / (len - 1) as f64, len })
    }

    pub fn explicit(points: Vec<f64>) -> Result<Self> {
        let n = Nodes::Explicit(points);
        n.validate()?;
        Ok(n)
    }

    fn validate(&self) -> Result<()> {
        let ok = match self {
            Nodes::Uniform { start, step, len } => *len >= 2 && *step > 0.0 && start.is_finite() && step.is_finite(),
            Nodes::Explicit(v) => v.len() >= 2 && v.iter().all(|x| x.is_finite()) && v.windows(2).all(|w| w[1] > w[0]),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Domain(String::from("grid needs >= 2 finite, strictly increasing nodes")))
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Nodes::Uniform { len, .. } => *len,
            Nodes::Explicit(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, i: usize) -> f64 {
        match self {
            Nodes::Uniform { start, step, .. } => start + step * i as f64,
            Nodes::Explicit(v) => v[i],
        }
    }

    pub fn to_vec(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.get(i)).collect()
    }

    /// Trapezoid weights.
    pub fn weights(&self) -> Vec<f64> {
        let n = self.len();
        let mut w = alloc::vec![0.0; n];
        for i in 0..n.saturating_sub(1) {
            let h = 0.5 * (self.get(i + 1) - self.get(i));
            w[i] += h;
            w[i + 1] += h;
        }
        w
    }
}

/// Complex samples on a grid, tagged with a description of their origin.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    pub nodes: Nodes,
    pub values: Vec<Complex64>,
    pub provenance: String,
}

impl GridFunction {
    pub fn new(nodes: Nodes, values: Vec<Complex64>, provenance: impl Into<String>) -> Result<Self> {
        nodes.validate()?;
        if values.len() != nodes.len() {
            return Err(Error::Domain(alloc::format!(
                "{} values for {} nodes",
                values.len(),
                nodes.len()
            )));
        }
        Ok(Self { nodes, values, provenance: provenance.into() })
    }

    /// Samples `f` at every node.
    pub fn sample<F>(nodes: Nodes, mut f: F, provenance: impl Into<String>) -> Result<Self>
    where
        F: FnMut(f64) -> Result<Complex64>,
    {
        let values = (0..nodes.len()).map(|i| f(nodes.get(i))).collect::<Result<Vec<_>>>()?;
        Self::new(nodes, values, provenance)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Trapezoid ∫ f.
    pub fn integral(&self) -> Complex64 {
        self.nodes.weights().iter().zip(&self.values).map(|(w, v)| v * *w).sum()
    }

    /// (∫ |f|²)^{1/2}.
    pub fn l2_norm(&self) -> f64 {
        self.nodes
            .weights()
            .iter()
            .zip(&self.values)
            .map(|(w, v)| w * v.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    fn peak(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Fails unless both edge samples are below [`EDGE_DECAY`] times the peak.
    pub fn check_edge_decay(&self) -> Result<()> {
        let peak = self.peak();
        if peak == 0.0 {
            return Ok(());
        }
        let edge = self.values[0].norm().max(self.values[self.len() - 1].norm()) / peak;
        if edge > EDGE_DECAY {
            return Err(Error::EdgeDecay { edge });
        }
        Ok(())
    }
}

/// Residual of the integral identity for D₁ = D^{μ,η}_ν and D₂ = D^{ρ,γ}_σ:
///
/// ```text
/// ∫_a^b [(ρ²+γ²−μ²−η²+2x(ργ−μη))/(1−x²) − σ(σ+1) + ν(ν+1)] D₁D₂ dx
///     = [(1−x²)(D₁D₂' − D₂D₁')]_a^b
/// ```
///
/// returned as |left − right|.
pub fn integral_identity_residual(p1: &ChannelParams, p2: &ChannelParams, a: f64, b: f64) -> Result<f64> {
    if !(a > -1.0 && a < b && b < 1.0) {
        return Err(Error::Domain(alloc::format!("need -1 < a < b < 1 (got a = {a}, b = {b})")));
    }
    let (d1, d2) = (GenLegendre::new(*p1), GenLegendre::new(*p2));
    let q_diff_const = p2.mu * p2.mu + p2.eta * p2.eta - p1.mu * p1.mu - p1.eta * p1.eta;
    let q_diff_lin = 2.0 * (p2.mu * p2.eta - p1.mu * p1.eta);
    let deg = p1.nu * (p1.nu + 1.0) - p2.nu * (p2.nu + 1.0);
    let integrand = |x: f64| -> Result<Complex64> {
        let c = Coord::from_x(x)?;
        let v1 = d1.value_at(&c)?;
        let v2 = d2.value_at(&c)?;
        Ok(((q_diff_const + q_diff_lin * x) / ((1.0 - x) * (1.0 + x)) + deg) * v1 * v2)
    };
    let left = integrate(integrand, a, b, 32, &QuadSettings::default())?.value;
    let bracket = |x: f64| -> Result<Complex64> {
        let c = Coord::from_x(x)?;
        let (v1, dv1) = d1.value_and_dv_at(&c)?;
        let (v2, dv2) = d2.value_and_dv_at(&c)?;
        Ok(v1 * dv2 - v2 * dv1)
    };
    let right = bracket(b)? - bracket(a)?;
    Ok((left - right).norm())
}

/// The spectral measure w(k), with ∫ ψ_p* ψ_k dx = w(k) δ(k − p) for k, p of
/// one sign. Even in k.
pub fn measure(p: &RosenMorse, k: f64) -> Result<f64> {
    let regime = p.regime(k)?;
    let ka = k.abs();
    let root = p.channel_root(k);
    match regime {
        Regime::BelowBarrier => {
            let q = root;
            let alpha = p.alpha;
            let g1 = log_gamma(Complex64::new(1.0 + alpha + 0.5 * q, 0.5 * ka))?.re;
            let g2 = log_gamma(Complex64::new(-alpha + 0.5 * q, 0.5 * ka))?.re;
            let g0 = log_gamma(Complex64::new(1.0 + q, 0.0))?.re;
            let ln_sinh = PI * ka + (-(-2.0 * PI * ka).exp_m1()).ln() - LN_2;
            let ln_w = (2.0 * PI * PI).ln() + q * LN_2 + 2.0 * g0 - ka.ln() - ln_sinh - 2.0 * g1 - 2.0 * g2;
            Ok(ln_w.exp())
        }
        _ => {
            let s = root;
            let big = ka + s;
            let decay = (-PI * big).exp();
            let sin_a = (PI * p.alpha).sin();
            let lead = -(-PI * big).exp_m1();
            let num = 4.0 * decay * sin_a * sin_a + lead * lead;
            // s / (1 − e^{−2πs}) → 1/(2π) as s → 0
            let s_over = if s == 0.0 { 1.0 / (2.0 * PI) } else { s / -(-2.0 * PI * s).exp_m1() };
            Ok(2.0 * PI * s_over / ka * num / -(-2.0 * PI * ka).exp_m1())
        }
    }
}

/// w(k) tabulated on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDensity {
    pub params: RosenMorse,
    pub k_grid: Vec<f64>,
    pub w_values: Vec<f64>,
}

impl SpectralDensity {
    pub fn sample(params: RosenMorse, k_grid: Vec<f64>) -> Result<Self> {
        if !k_grid.windows(2).all(|w| w[1] > w[0]) {
            return Err(Error::Domain(String::from("k grid must be strictly increasing")));
        }
        let w_values = k_grid.iter().map(|&k| measure(&params, k)).collect::<Result<Vec<_>>>()?;
        Ok(Self { params, k_grid, w_values })
    }
}

fn check_pair(pk: f64, k: f64, window: f64) -> Result<f64> {
    if !(window > 0.0) {
        return Err(Error::Domain(alloc::format!("window half-width {window} must be positive")));
    }
    let gap = k * k - pk * pk;
    if gap.abs() <= 1e-12 * (1.0 + k * k) {
        return Err(Error::PrefactorSingular { k, p: pk });
    }
    Ok(gap)
}

/// ∫_{−L}^{L} ψ_p*(x) ψ_k(x) dx by adaptive quadrature.
pub fn windowed_inner_product(p: &RosenMorse, pk: f64, k: f64, window: f64) -> Result<Complex64> {
    check_pair(pk, k, window)?;
    let (sp, sk) = (p.state(pk)?, p.state(k)?);
    let pieces = (2.0 * window * (k.abs() + pk.abs() + 1.0) / (2.0 * PI)).ceil() as usize;
    let r = integrate(
        |x| Ok(sp.value_tanh(x)?.conj() * sk.value_tanh(x)?),
        -window,
        window,
        pieces,
        &QuadSettings::default(),
    )?;
    Ok(r.value)
}

/// (1/(k² − p²)) [ψ_k ψ_p*' − ψ_p* ψ_k']_{−L}^{L}, equal to
/// [`windowed_inner_product`] by the Schrödinger equation.
pub fn boundary_term(p: &RosenMorse, pk: f64, k: f64, window: f64) -> Result<Complex64> {
    let gap = check_pair(pk, k, window)?;
    let (sp, sk) = (p.state(pk)?, p.state(k)?);
    let bracket = |x: f64| -> Result<Complex64> {
        let (vp, dp) = sp.value_and_derivative_tanh(x)?;
        let (vk, dk) = sk.value_and_derivative_tanh(x)?;
        Ok(vk * dp.conj() - vp.conj() * dk)
    };
    Ok((bracket(window)? - bracket(-window)?) / gap)
}

/// F(k) = (1/w(k)) ∫ f ψ_k* dx at one wavenumber.
pub fn forward_sample(p: &RosenMorse, f: &GridFunction, weights: &[f64], k: f64) -> Result<Complex64> {
    let state = p.state(k)?;
    let mut acc = Complex64::new(0.0, 0.0);
    for (i, (&wt, &v)) in weights.iter().zip(&f.values).enumerate() {
        if wt == 0.0 || v == Complex64::new(0.0, 0.0) {
            continue;
        }
        acc += v * state.value_tanh(f.nodes.get(i))?.conj() * wt;
    }
    Ok(acc / measure(p, k)?)
}

/// f(x) = ∫ F(k) ψ_k(x) dk at one position.
pub fn inverse_sample(p: &RosenMorse, spectrum: &GridFunction, weights: &[f64], x: f64) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for (i, (&wt, &v)) in weights.iter().zip(&spectrum.values).enumerate() {
        if wt == 0.0 || v == Complex64::new(0.0, 0.0) {
            continue;
        }
        acc += v * p.scattering_state(spectrum.nodes.get(i), x)? * wt;
    }
    Ok(acc)
}

/// F on `k_grid` from samples of f.
pub fn forward_transform(p: &RosenMorse, f: &GridFunction, k_grid: Nodes) -> Result<GridFunction> {
    f.check_edge_decay()?;
    let weights = f.nodes.weights();
    GridFunction::sample(
        k_grid,
        |k| forward_sample(p, f, &weights, k),
        alloc::format!("forward transform (alpha = {}, beta = {}) of: {}", p.alpha, p.beta, f.provenance),
    )
}

/// f on `x_grid` from samples of F.
pub fn inverse_transform(p: &RosenMorse, spectrum: &GridFunction, x_grid: Nodes) -> Result<GridFunction> {
    spectrum.check_edge_decay()?;
    let weights = spectrum.nodes.weights();
    GridFunction::sample(
        x_grid,
        |x| inverse_sample(p, spectrum, &weights, x),
        alloc::format!("inverse transform (alpha = {}, beta = {}) of: {}", p.alpha, p.beta, spectrum.provenance),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rm(a: f64, b: f64) -> RosenMorse {
        RosenMorse::new(a, b).unwrap()
    }

    #[test]
    fn free_measure_examples() {
        for k in [0.3, -1.0, 2.7] {
            assert!((measure(&rm(1.0, 0.0), k).unwrap() - 2.0 * PI).abs() < 1e-13);
        }
        let expect = 2.0 * PI * (1.0 + 1.0 / PI.sinh().powi(2));
        assert!((measure(&rm(0.5, 0.0), 1.0).unwrap() - expect).abs() < 1e-13);
    }

    #[test]
    fn measure_is_even_and_positive() {
        let p = rm(0.7, 1.0);
        for k in [0.2, 1.5, 1.999, 2.001, 3.0, 40.0] {
            let a = measure(&p, k).unwrap();
            assert!(a > 0.0 && a.is_finite());
            assert_eq!(a, measure(&p, -k).unwrap());
        }
    }

    #[test]
    fn identical_parameters_give_zero_residual() {
        let c = ChannelParams::generic(Complex64::new(-0.3, 0.5), Complex64::new(-0.3, -0.5), 0.7);
        assert!(integral_identity_residual(&c, &c, -0.9, 0.9).unwrap() < 1e-12);
        assert!(integral_identity_residual(&c, &c, 0.5, 0.2).is_err());
    }

    #[test]
    fn singular_prefactor_rejected() {
        let p = rm(0.5, 0.25);
        assert!(matches!(windowed_inner_product(&p, 1.2, 1.2, 15.0), Err(Error::PrefactorSingular { .. })));
        assert!(matches!(boundary_term(&p, -1.2, 1.2, 15.0), Err(Error::PrefactorSingular { .. })));
    }

    #[test]
    fn zero_input_transforms_to_zero() {
        let p = rm(0.5, 0.25);
        let f = GridFunction::new(Nodes::linspace(-5.0, 5.0, 11).unwrap(), alloc::vec![Complex64::new(0.0, 0.0); 11], "zero").unwrap();
        let big = forward_transform(&p, &f, Nodes::linspace(1.5, 2.5, 5).unwrap()).unwrap();
        assert!(big.values.iter().all(|v| v.norm() == 0.0));
        let back = inverse_transform(&p, &big, Nodes::linspace(-1.0, 1.0, 3).unwrap()).unwrap();
        assert!(back.values.iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn non_decaying_input_rejected() {
        let p = rm(0.5, 0.25);
        let f = GridFunction::sample(Nodes::linspace(-5.0, 5.0, 11).unwrap(), |_| Ok(Complex64::new(1.0, 0.0)), "const").unwrap();
        assert!(matches!(forward_transform(&p, &f, Nodes::linspace(1.5, 2.5, 3).unwrap()), Err(Error::EdgeDecay { .. })));
    }

    #[test]
    fn grid_validation_and_weights() {
        assert!(Nodes::linspace(0.0, 1.0, 1).is_err());
        assert!(Nodes::explicit(alloc::vec![0.0, 0.0, 1.0]).is_err());
        let n = Nodes::explicit(alloc::vec![0.0, 1.0, 3.0]).unwrap();
        assert_eq!(n.weights(), alloc::vec![0.5, 1.5, 1.0]);
        assert!(GridFunction::new(n, alloc::vec![Complex64::new(0.0, 0.0)], "short").is_err());
    }
}
