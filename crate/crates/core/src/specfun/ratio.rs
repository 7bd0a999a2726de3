//! Products and quotients of gamma functions, assembled in log space.
//!
//! Arguments carry a `slope`: the derivative of the argument with respect to a
//! regularizing parameter ε. A pole on an argument with nonzero slope is
//! treated as the limit ε → 0 (Γ(−m + sε) ~ (−1)^m / (m! s ε)), so matching
//! numerator and denominator poles cancel to a finite residue ratio. A pole on
//! an argument with zero slope is exact: in the denominator it makes the whole
//! ratio vanish, in the numerator it is an error.

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::gamma::{log_gamma, nonpositive_integer, MAX_LOG};
use crate::error::{Error, GammaFactor, Result};

#[derive(Debug, Clone, Copy)]
pub struct GammaArg {
    pub z: Complex64,
    pub slope: f64,
    pub factor: GammaFactor,
}

impl GammaArg {
    pub fn exact(z: Complex64) -> Self {
        Self { z, slope: 0.0, factor: GammaFactor::Other }
    }

    pub fn tagged(z: Complex64, slope: f64, factor: GammaFactor) -> Self {
        Self { z, slope, factor }
    }
}

/// ln |residue| and sign for Γ(−m + sε) ≈ (−1)^m / (m! s ε).
fn residue(m: u32, slope: f64) -> (f64, f64) {
    let mut ln_fact = 0.0;
    for j in 2..=m {
        ln_fact += (j as f64).ln();
    }
    let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 } * slope.signum();
    (-ln_fact - slope.abs().ln(), sign)
}

/// ln of Π Γ(num) / Π Γ(den), or `None` when the ratio is exactly zero.
pub fn log_gamma_ratio(num: &[GammaArg], den: &[GammaArg]) -> Result<Option<Complex64>> {
    let mut acc = Complex64::new(0.0, 0.0);
    let mut order: i32 = 0;
    let mut sign = 1.0;
    let mut exact_zero = false;

    for g in num {
        match nonpositive_integer(g.z) {
            Some(_) if g.slope == 0.0 => return Err(Error::Pole { z: g.z, factor: g.factor }),
            Some(m) => {
                let (l, s) = residue(m, g.slope);
                acc += l;
                sign *= s;
                order += 1;
            }
            None => acc += log_gamma(g.z)?,
        }
    }
    for g in den {
        match nonpositive_integer(g.z) {
            Some(_) if g.slope == 0.0 => exact_zero = true,
            Some(m) => {
                let (l, s) = residue(m, g.slope);
                acc -= l;
                sign *= s;
                order -= 1;
            }
            None => acc -= log_gamma(g.z)?,
        }
    }

    if exact_zero || order < 0 {
        return Ok(None);
    }
    if order > 0 {
        let culprit = num
            .iter()
            .find(|g| nonpositive_integer(g.z).is_some())
            .copied()
            .unwrap_or(GammaArg::exact(Complex64::new(0.0, 0.0)));
        return Err(Error::Pole { z: culprit.z, factor: culprit.factor });
    }
    if sign < 0.0 {
        acc += Complex64::new(0.0, core::f64::consts::PI);
    }
    Ok(Some(acc))
}

/// Π Γ(num) / Π Γ(den), exponentiated once.
pub fn gamma_ratio(num: &[GammaArg], den: &[GammaArg]) -> Result<Complex64> {
    match log_gamma_ratio(num, den)? {
        None => Ok(Complex64::new(0.0, 0.0)),
        Some(l) if l.re > MAX_LOG => Err(Error::Overflow { log_magnitude: l.re }),
        Some(l) => Ok(l.exp()),
    }
}
