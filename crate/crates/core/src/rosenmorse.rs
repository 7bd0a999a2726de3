//! The Rosen-Morse potential V(x) = −α(α+1) sech²x + 2β tanh x in units
//! ħ = 2m = 1, its scattering states and bound spectrum.
//!
//! A state of energy E is D^{μ,η}_α(tanh x) with μη = β and μ² + η² = −E.
//! Scattering energies are written E = −2β + k²; k > 0 is a wave incident
//! from the left, and k < 0 gives the complex-conjugate state.

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::genleg::{ChannelParams, GenLegendre, Regime};

/// Smallest admissible |k|.
pub const K_MIN: f64 = 1e-6;
/// Half-width of the excluded band around |k| = 2√β.
pub const THRESHOLD_BAND: f64 = 1e-6;

/// Well depth α and asymmetry β. Negative β is the mirror image x → −x,
/// k → −k of the potential with |β| and is not represented separately.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RosenMorse {
    pub alpha: f64,
    pub beta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundState {
    pub n: u32,
    pub energy: f64,
    pub mu: f64,
    pub eta: f64,
}

impl BoundState {
    pub fn channel(&self, alpha: f64) -> ChannelParams {
        ChannelParams {
            mu: Complex64::new(self.mu, 0.0),
            eta: Complex64::new(self.eta, 0.0),
            nu: alpha,
            regime: Regime::Bound,
        }
    }
}

/// E = −2β + k².
pub fn energy_of_k(beta: f64, k: f64) -> Result<f64> {
    if k == 0.0 {
        return Err(Error::ZeroMomentum { k });
    }
    Ok(-2.0 * beta + k * k)
}

impl RosenMorse {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha > -0.5) {
            return Err(Error::Domain(alloc::format!("alpha = {alpha} must exceed -1/2")));
        }
        if !(beta.is_finite() && beta >= 0.0) {
            return Err(Error::Domain(alloc::format!(
                "beta = {beta} must be >= 0; use the mirror x -> -x, k -> -k for negative beta"
            )));
        }
        Ok(Self { alpha, beta })
    }

    pub fn potential(&self, x: f64) -> f64 {
        let sech = 1.0 / x.cosh();
        -self.alpha * (self.alpha + 1.0) * sech * sech + 2.0 * self.beta * x.tanh()
    }

    /// Barrier threshold 2√β in k.
    pub fn threshold(&self) -> f64 {
        2.0 * self.beta.sqrt()
    }

    fn check_k(&self, k: f64) -> Result<()> {
        if !(k.abs() > K_MIN) {
            return Err(Error::ZeroMomentum { k });
        }
        let t = self.threshold();
        if (k.abs() - t).abs() <= THRESHOLD_BAND {
            return Err(Error::Threshold { k, threshold: t });
        }
        Ok(())
    }

    /// √|k² − 4β|, factored to stay accurate near the threshold.
    pub fn channel_root(&self, k: f64) -> f64 {
        let (ka, t) = (k.abs(), self.threshold());
        ((ka - t).abs() * (ka + t)).sqrt()
    }

    pub fn regime(&self, k: f64) -> Result<Regime> {
        self.check_k(k)?;
        Ok(if k.abs() < self.threshold() { Regime::BelowBarrier } else { Regime::AboveBarrier })
    }

    /// (μ, η, ν) of the scattering state with wavenumber k.
    pub fn params_from_k(&self, k: f64) -> Result<ChannelParams> {
        let regime = self.regime(k)?;
        let root = self.channel_root(k);
        let (mu, eta) = match regime {
            Regime::BelowBarrier => (Complex64::new(-0.5 * root, 0.5 * k), Complex64::new(-0.5 * root, -0.5 * k)),
            _ => {
                let s = 0.5 * k.signum() * root;
                (Complex64::new(0.0, s + 0.5 * k), Complex64::new(0.0, s - 0.5 * k))
            }
        };
        Ok(ChannelParams { mu, eta, nu: self.alpha, regime })
    }

    pub fn state(&self, k: f64) -> Result<GenLegendre> {
        Ok(GenLegendre::new(self.params_from_k(k)?))
    }

    /// ψ_k(x) = D(tanh x).
    pub fn scattering_state(&self, k: f64, x: f64) -> Result<Complex64> {
        self.state(k)?.value_tanh(x)
    }

    /// (ψ_k(x), ψ_k'(x)).
    pub fn scattering_state_with_derivative(&self, k: f64, x: f64) -> Result<(Complex64, Complex64)> {
        self.state(k)?.value_and_derivative_tanh(x)
    }

    /// Scaled residual of ψ'' + (E − V)ψ = 0 for ψ_k at x, with ψ'' from a
    /// fourth-order central difference of the analytic ψ'. The scale is
    /// |ψ''| + |E − V||ψ| + √|E − V||ψ'|, which stays meaningful at nodes.
    pub fn schrodinger_residual(&self, k: f64, x: f64) -> Result<f64> {
        let state = self.state(k)?;
        let energy = energy_of_k(self.beta, k)?;
        let h = 1e-3;
        let d = |t: f64| -> Result<Complex64> { Ok(state.value_and_derivative_tanh(t)?.1) };
        let d2 = (d(x - 2.0 * h)? - d(x + 2.0 * h)? + (d(x + h)? - d(x - h)?) * 8.0) / (12.0 * h);
        let (v, d1) = state.value_and_derivative_tanh(x)?;
        let g = energy - self.potential(x);
        let res = (d2 + v * g).norm();
        let scale = d2.norm() + g.abs() * v.norm() + g.abs().sqrt() * d1.norm();
        Ok(if scale == 0.0 { 0.0 } else { res / scale })
    }

    /// Bound states from the pole condition η = n − α, μ = −β/(α − n),
    /// for every n >= 0 with n < α and (α − n)² > β, in ascending n.
    pub fn bound_spectrum(&self) -> alloc::vec::Vec<BoundState> {
        let mut out = alloc::vec::Vec::new();
        let mut n = 0u32;
        while (n as f64) < self.alpha {
            let gap = self.alpha - n as f64;
            if gap * gap > self.beta {
                let mu = if self.beta == 0.0 { 0.0 } else { -self.beta / gap };
                let eta = -gap;
                out.push(BoundState { n, energy: -mu * mu - eta * eta, mu, eta });
            }
            n += 1;
        }
        out
    }
}
