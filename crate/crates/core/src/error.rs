use alloc::string::String;
use num_complex::Complex64;
use thiserror::Error;

/// Which gamma factor of an amplitude or ratio sits on a pole.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GammaFactor {
    /// Γ(1−μ−η), also the hypergeometric c-parameter.
    OneMinusMuMinusEta,
    /// Γ(η−μ)
    EtaMinusMu,
    /// Γ(μ−η)
    MuMinusEta,
    /// Γ(1−μ+ν)
    OneMinusMuPlusNu,
    /// Γ(−μ−ν)
    MinusMuMinusNu,
    /// Γ(−ν−η)
    MinusNuMinusEta,
    /// Γ(ν+1−η)
    NuPlusOneMinusEta,
    /// A gamma argument that is not one of the named amplitude factors.
    Other,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gamma pole at z = {z} ({factor:?})")]
    Pole { z: Complex64, factor: GammaFactor },

    #[error("gamma overflow: Re ln Γ = {log_magnitude}")]
    Overflow { log_magnitude: f64 },

    #[error("hypergeometric transformation degenerate: c - a - b = {excess} is near an integer")]
    DegenerateTransform { excess: Complex64 },

    #[error("series did not converge within {terms} terms")]
    NonConvergence { terms: usize },

    #[error("argument outside domain: {0}")]
    Domain(String),

    #[error("wavenumber k = {k} lies in the excluded band around the barrier threshold 2*sqrt(beta) = {threshold}")]
    Threshold { k: f64, threshold: f64 },

    #[error("wavenumber k = {k} is too close to zero")]
    ZeroMomentum { k: f64 },

    #[error("1/(k^2 - p^2) is singular for k = {k}, p = {p}")]
    PrefactorSingular { k: f64, p: f64 },

    #[error("quadrature did not reach tolerance: estimate {estimate:e} after {intervals} intervals")]
    Quadrature { estimate: f64, intervals: usize },

    #[error("input does not decay at the grid edges: |f| = {edge:e} relative to peak")]
    EdgeDecay { edge: f64 },

    #[error("step {step} does not resolve the local wavelength (need <= {max_step})")]
    StepTooCoarse { step: f64, max_step: f64 },

    #[error("amplitude fit is ill-conditioned: {0}")]
    FitConditioning(String),

    #[error("oracle consistency gate failed: {0}")]
    OracleGate(String),
}

pub type Result<T> = core::result::Result<T, Error>;
