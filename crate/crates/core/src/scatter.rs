//! Reflection and transmission for the Rosen-Morse potential.
//!
//! With s = √(k² − 4β) above the barrier,
//!
//! ```text
//! R = [sin²πα + sinh²(π(k−s)/2)] / [sin²πα + sinh²(π(k+s)/2)]
//! T = sinh(πk) sinh(πs)           / [sin²πα + sinh²(π(k+s)/2)]
//! ```
//!
//! and below it R = 1, T = 0. Numerator and denominator are both scaled by
//! 4e^{−π(k+s)} before evaluation so large k cannot overflow.

use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{GammaFactor, Result};
use crate::genleg::Regime;
use crate::rosenmorse::RosenMorse;
use crate::specfun::{gamma_ratio, GammaArg};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatterResult {
    pub k: f64,
    pub reflection: f64,
    pub transmission: f64,
    pub b_over_a: Complex64,
    pub c_over_a: Complex64,
}

/// B/A and C/A from the gamma-function form of the asymptotic amplitudes.
pub fn amplitude_ratios(p: &RosenMorse, k: f64) -> Result<(Complex64, Complex64)> {
    let ch = p.params_from_k(k)?;
    let (mu, eta, nu) = (ch.mu, ch.eta, ch.nu);
    let one = Complex64::new(1.0, 0.0);
    use GammaFactor::*;
    let g = GammaArg::tagged;
    let b_over_a = gamma_ratio(
        &[
            g(mu - eta, 1.0, MuMinusEta),
            g(one - mu + nu, -1.0, OneMinusMuPlusNu),
            g(-mu - nu, -1.0, MinusMuMinusNu),
        ],
        &[
            g(-nu - eta, 0.0, MinusNuMinusEta),
            g(nu + one - eta, 0.0, NuPlusOneMinusEta),
            g(eta - mu, -1.0, EtaMinusMu),
        ],
    )?;
    let c_over_a = gamma_ratio(
        &[g(one - mu + nu, -1.0, OneMinusMuPlusNu), g(-mu - nu, -1.0, MinusMuMinusNu)],
        &[g(one - mu - eta, -1.0, OneMinusMuMinusEta), g(eta - mu, -1.0, EtaMinusMu)],
    )?;
    Ok((b_over_a, c_over_a))
}

/// Scaled pieces (sin²πα·4e^{−πS}, sinh²(πd/2)·4e^{−πS}, sinh²(πS/2)·4e^{−πS}, sinh(πk)sinh(πs)·4e^{−πS})
/// with S = |k| + s, d = |k| − s.
fn scaled_terms(p: &RosenMorse, k: f64) -> (f64, f64, f64, f64) {
    let ka = k.abs();
    let s = p.channel_root(k);
    let big = ka + s;
    let small = 4.0 * p.beta / big;
    let decay = (-PI * big).exp();
    let sin_a = (PI * p.alpha).sin();
    let sin2 = 4.0 * decay * sin_a * sin_a;
    let sh = (0.5 * PI * small).sinh();
    let sinh2_small = 4.0 * decay * sh * sh;
    let lead = -(-PI * big).exp_m1();
    let sinh2_big = lead * lead;
    let prod = (-2.0 * PI * ka).exp_m1() * (-2.0 * PI * s).exp_m1();
    (sin2, sinh2_small, sinh2_big, prod)
}

pub fn reflection(p: &RosenMorse, k: f64) -> Result<f64> {
    if p.regime(k)? == Regime::BelowBarrier {
        return Ok(1.0);
    }
    let (sin2, small, big, _) = scaled_terms(p, k);
    Ok((sin2 + small) / (sin2 + big))
}

pub fn transmission(p: &RosenMorse, k: f64) -> Result<f64> {
    if p.regime(k)? == Regime::BelowBarrier {
        return Ok(0.0);
    }
    let (sin2, _, big, prod) = scaled_terms(p, k);
    Ok(prod / (sin2 + big))
}

pub fn scatter(p: &RosenMorse, k: f64) -> Result<ScatterResult> {
    let (b_over_a, c_over_a) = amplitude_ratios(p, k)?;
    Ok(ScatterResult {
        k,
        reflection: reflection(p, k)?,
        transmission: transmission(p, k)?,
        b_over_a,
        c_over_a,
    })
}
