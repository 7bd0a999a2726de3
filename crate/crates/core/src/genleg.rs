//! Generalized Legendre functions
//!
//! ```text
//! D^{μ,η}_ν(x) = (1−x²)^{−η/2} ((1+x)/(1−x))^{μ/2} F(−ν−η, ν+1−η; 1−μ−η; (1−x)/2)
//! ```
//!
//! which solve
//! (1−x²)D'' − 2xD' + [ν(ν+1) − (μ² + 2μηx + η²)/(1−x²)] D = 0
//! and reduce to Γ(1−μ) P^μ_ν(x) at η = 0.
//!
//! Evaluation works from a [`Coord`] that carries ln(1−x), ln(1+x) and the two
//! hypergeometric arguments (1∓x)/2 directly. For the wavefunction
//! D(tanh v) these come from v itself, so nothing is lost to the saturation of
//! tanh: 1 − tanh v is never formed by subtraction.

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, GammaFactor, Result};
use crate::specfun::{
    gamma_ratio, hyp2f1, hyp2f1_expansion, nonpositive_integer, recip_gamma, Expansion, GammaArg,
    HyperParams, SeriesControl, UnitArg,
};

const LN_2: f64 = core::f64::consts::LN_2;

/// Beyond |v| = X_SWITCH the wavefunction is taken from its exponential asymptotes.
pub const X_SWITCH: f64 = 20.0;

/// Which physical situation a parameter triple describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Bound,
    BelowBarrier,
    AboveBarrier,
    Generic,
}

/// The orders μ, η and degree ν of D^{μ,η}_ν.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParams {
    pub mu: Complex64,
    pub eta: Complex64,
    pub nu: f64,
    pub regime: Regime,
}

impl ChannelParams {
    pub fn generic(mu: Complex64, eta: Complex64, nu: f64) -> Self {
        Self { mu, eta, nu, regime: Regime::Generic }
    }

    /// Checks the shape constraints of the regime tag.
    pub fn validate(&self) -> Result<()> {
        let tol = 1e-12;
        let (mu, eta) = (self.mu, self.eta);
        let ok = match self.regime {
            Regime::Generic => true,
            Regime::Bound => {
                mu.im.abs() <= tol
                    && eta.im.abs() <= tol
                    && mu.re <= 0.0
                    && eta.re < 0.0
                    && mu.re + eta.re < 0.0
                    && mu.re - eta.re > 0.0
            }
            Regime::BelowBarrier => (eta - mu.conj()).norm() <= tol * (1.0 + mu.norm()) && mu.re < 0.0,
            Regime::AboveBarrier => mu.re.abs() <= tol && eta.re.abs() <= tol,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Domain(alloc::format!("parameters violate {:?} invariants: {self:?}", self.regime)))
        }
    }

    pub fn conj(&self) -> Self {
        Self { mu: self.mu.conj(), eta: self.eta.conj(), ..*self }
    }

    /// (a, b, c) = (−ν−η, ν+1−η, 1−μ−η), with c − a, c − b and c − a − b
    /// formed directly from μ, η, ν.
    fn hyper_params(&self) -> HyperParams {
        let one = Complex64::new(1.0, 0.0);
        let (mu, eta, nu) = (self.mu, self.eta, self.nu);
        HyperParams {
            a: -nu - eta,
            b: nu + one - eta,
            c: one - mu - eta,
            c_minus_a: one - mu + nu,
            c_minus_b: -mu - nu,
            excess: eta - mu,
        }
    }
}

/// Coefficients of the exponential asymptotes of D(tanh v):
/// `a·e^{(μ−η)v} + b·e^{−(μ−η)v}` as v → −∞ and `c·e^{(μ+η)v}` as v → +∞.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticAmplitudes {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    /// Set when an exact gamma pole in a denominator forces `b` (or `a`) to zero;
    /// for bound states this is Γ(−ν−η) at η = n − ν.
    pub vanishing: Option<GammaFactor>,
}

/// A point of (−1, 1) with the logarithms the evaluation needs.
#[derive(Debug, Clone, Copy)]
pub struct Coord {
    pub x: f64,
    ln_omx: f64,
    ln_opx: f64,
    /// (1 − x)/2
    z: f64,
    /// (1 + x)/2
    w: f64,
}

impl Coord {
    pub fn from_x(x: f64) -> Result<Self> {
        if !(x > -1.0 && x < 1.0) {
            return Err(Error::Domain(alloc::format!("x = {x} outside (-1, 1)")));
        }
        let (omx, opx) = (1.0 - x, 1.0 + x);
        Ok(Self { x, ln_omx: omx.ln(), ln_opx: opx.ln(), z: 0.5 * omx, w: 0.5 * opx })
    }

    /// x = tanh v, built from v without forming 1 ∓ tanh v.
    pub fn from_tanh(v: f64) -> Result<Self> {
        if !v.is_finite() {
            return Err(Error::Domain(alloc::format!("v = {v} not finite")));
        }
        let t = (-2.0 * v.abs()).exp();
        let l1p = t.ln_1p();
        let small = LN_2 - 2.0 * v.abs() - l1p; // ln(1 − |x|)
        let large = LN_2 - l1p; // ln(1 + |x|)
        let near = t / (1.0 + t);
        let far = 1.0 / (1.0 + t);
        Ok(if v >= 0.0 {
            Self { x: v.tanh(), ln_omx: small, ln_opx: large, z: near, w: far }
        } else {
            Self { x: v.tanh(), ln_omx: large, ln_opx: small, z: far, w: near }
        })
    }

    fn ln_one_minus_x2(&self) -> f64 {
        self.ln_omx + self.ln_opx
    }

    fn arg(&self) -> UnitArg {
        UnitArg { z: self.z, w: self.w }
    }

    fn ln_w(&self) -> f64 {
        self.ln_opx - LN_2
    }
}

/// D^{μ,η}_ν bound to its parameters and series settings.
#[derive(Debug, Clone, Copy)]
pub struct GenLegendre {
    pub params: ChannelParams,
    pub ctl: SeriesControl,
}

impl GenLegendre {
    pub fn new(params: ChannelParams) -> Self {
        Self { params, ctl: SeriesControl::default() }
    }

    pub fn with_control(params: ChannelParams, ctl: SeriesControl) -> Self {
        Self { params, ctl }
    }

    fn check_c(&self) -> Result<()> {
        let c = self.params.hyper_params().c;
        if nonpositive_integer(c).is_some() {
            return Err(Error::Pole { z: c, factor: GammaFactor::OneMinusMuMinusEta });
        }
        Ok(())
    }

    fn log_prefactor(&self, p: &Coord) -> Complex64 {
        let ChannelParams { mu, eta, .. } = self.params;
        -eta * 0.5 * p.ln_one_minus_x2() + mu * 0.5 * (p.ln_opx - p.ln_omx)
    }

    /// Σ exp(log_pre + ...) · series over the pieces of `e`.
    fn fold(e: &Expansion, log_pre: Complex64, ln_w: f64) -> Complex64 {
        match e {
            Expansion::Direct(v) => log_pre.exp() * v,
            Expansion::Connected(terms) => terms
                .iter()
                .flatten()
                .map(|t| (log_pre + t.log_coef + t.power * ln_w).exp() * t.series)
                .sum(),
        }
    }

    /// D and the two ingredients of its derivative: (D, e^P·F'(z)·(1−x²)).
    fn pieces(&self, p: &Coord) -> Result<(Complex64, Complex64)> {
        self.check_c()?;
        let hp = self.params.hyper_params();
        let log_pre = self.log_prefactor(p);
        let f = hyp2f1_expansion(&hp, p.arg(), &self.ctl)?;
        let value = Self::fold(&f, log_pre, p.ln_w());
        let ab = hp.a * hp.b;
        let dterm = if ab.norm() == 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            let fp = hyp2f1_expansion(&hp.raised(), p.arg(), &self.ctl)?;
            ab / hp.c * Self::fold(&fp, log_pre + p.ln_one_minus_x2(), p.ln_w())
        };
        Ok((value, dterm))
    }

    pub fn value_at(&self, p: &Coord) -> Result<Complex64> {
        self.check_c()?;
        let f = hyp2f1_expansion(&self.params.hyper_params(), p.arg(), &self.ctl)?;
        Ok(Self::fold(&f, self.log_prefactor(p), p.ln_w()))
    }

    /// d/dv D(tanh v) at the point, i.e. (1−x²) dD/dx.
    pub fn value_and_dv_at(&self, p: &Coord) -> Result<(Complex64, Complex64)> {
        let (value, dterm) = self.pieces(p)?;
        let ChannelParams { mu, eta, .. } = self.params;
        Ok((value, value * (eta * p.x + mu) - 0.5 * dterm))
    }

    /// D^{μ,η}_ν(x) for −1 < x < 1.
    pub fn value(&self, x: f64) -> Result<Complex64> {
        self.value_at(&Coord::from_x(x)?)
    }

    /// dD/dx for −1 < x < 1.
    pub fn derivative(&self, x: f64) -> Result<Complex64> {
        let p = Coord::from_x(x)?;
        let (_, dv) = self.value_and_dv_at(&p)?;
        Ok(dv / ((1.0 - x) * (1.0 + x)))
    }

    /// D(tanh v) for any real v.
    pub fn value_tanh(&self, v: f64) -> Result<Complex64> {
        Ok(self.value_and_derivative_tanh(v)?.0)
    }

    /// d/dv D(tanh v).
    pub fn derivative_tanh(&self, v: f64) -> Result<Complex64> {
        Ok(self.value_and_derivative_tanh(v)?.1)
    }

    /// (D(tanh v), d/dv D(tanh v)).
    pub fn value_and_derivative_tanh(&self, v: f64) -> Result<(Complex64, Complex64)> {
        let ChannelParams { mu, eta, .. } = self.params;
        if v > X_SWITCH {
            let val = (-eta * LN_2 + (mu + eta) * v).exp();
            return Ok((val, (mu + eta) * val));
        }
        if v < -X_SWITCH {
            let amp = self.asymptotic_amplitudes()?;
            let grow = (mu - eta) * v;
            let left = amp.a * grow.exp();
            let right = amp.b * (-grow).exp();
            return Ok((left + right, (mu - eta) * (left - right)));
        }
        self.value_and_dv_at(&Coord::from_tanh(v)?)
    }

    /// Scaled residual of the defining ODE at x, with D'' from a fourth-order
    /// central difference of the analytic derivative. Each term of the
    /// equation contributes its magnitude to the scale.
    pub fn ode_residual(&self, x: f64) -> Result<f64> {
        let ChannelParams { mu, eta, nu, .. } = self.params;
        let h = 1e-3 * (1.0 - x.abs());
        let d = |t: f64| self.derivative(t);
        let d2 = (d(x - 2.0 * h)? - d(x + 2.0 * h)? + (d(x + h)? - d(x - h)?) * 8.0) / (12.0 * h);
        let (v, d1) = (self.value(x)?, d(x)?);
        let omx2 = (1.0 - x) * (1.0 + x);
        let q = (mu * mu + mu * eta * (2.0 * x) + eta * eta) / omx2;
        let terms = [d2 * omx2, d1 * (-2.0 * x), v * (nu * (nu + 1.0)), -q * v];
        let res: Complex64 = terms.iter().sum();
        let scale: f64 = terms.iter().map(|t| t.norm()).sum();
        Ok(if scale == 0.0 { 0.0 } else { res.norm() / scale })
    }

    /// Coefficients of the exponential asymptotes at ±∞.
    ///
    /// Poles are resolved as limits in μ at fixed η and ν: a denominator
    /// pole in Γ(−ν−η) or Γ(ν+1−η) is exact and zeroes its amplitude; poles
    /// in μ-dependent arguments are paired through their residues.
    pub fn asymptotic_amplitudes(&self) -> Result<AsymptoticAmplitudes> {
        let ChannelParams { mu, eta, nu, .. } = self.params;
        let one = Complex64::new(1.0, 0.0);
        let scale = (-eta * LN_2).exp();
        use GammaFactor::*;
        let g = GammaArg::tagged;
        let c_arg = g(one - mu - eta, -1.0, OneMinusMuMinusEta);
        let a = gamma_ratio(
            &[c_arg, g(eta - mu, -1.0, EtaMinusMu)],
            &[g(one - mu + nu, -1.0, OneMinusMuPlusNu), g(-mu - nu, -1.0, MinusMuMinusNu)],
        )?;
        let den_b = [g(-nu - eta, 0.0, MinusNuMinusEta), g(nu + one - eta, 0.0, NuPlusOneMinusEta)];
        let b = gamma_ratio(&[c_arg, g(mu - eta, 1.0, MuMinusEta)], &den_b)?;
        let vanishing = den_b
            .iter()
            .find(|d| nonpositive_integer(d.z).is_some())
            .map(|d| d.factor);
        Ok(AsymptoticAmplitudes { a: scale * a, b: scale * b, c: scale, vanishing })
    }
}

/// Associated Legendre function on the cut,
/// P^μ_ν(x) = ((1+x)/(1−x))^{μ/2} F(−ν, ν+1; 1−μ; (1−x)/2) / Γ(1−μ),
/// evaluated in the Euler-transformed form
/// (2/√(1−x²))^μ F(1−μ+ν, −μ−ν; 1−μ; (1−x)/2) / Γ(1−μ).
pub fn legendre_p(mu: Complex64, nu: f64, x: f64) -> Result<Complex64> {
    if !(x > -1.0 && x < 1.0) {
        return Err(Error::Domain(alloc::format!("x = {x} outside (-1, 1)")));
    }
    let one = Complex64::new(1.0, 0.0);
    let c = one - mu;
    if nonpositive_integer(c).is_some() {
        return Err(Error::Pole { z: c, factor: GammaFactor::Other });
    }
    let ln_scale = LN_2 - 0.5 * ((1.0 - x) * (1.0 + x)).ln();
    let f = hyp2f1(c + nu, -mu - nu, c, 0.5 * (1.0 - x), &SeriesControl::default())?;
    Ok(recip_gamma(c)? * (mu * ln_scale).exp() * f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn d(mu: Complex64, eta: Complex64, nu: f64) -> GenLegendre {
        GenLegendre::new(ChannelParams::generic(mu, eta, nu))
    }

    #[test]
    fn legendre_polynomials() {
        let zero = c(0.0, 0.0);
        assert!((d(zero, zero, 0.0).value(0.3).unwrap() - 1.0).norm() < 1e-15);
        assert!((d(zero, zero, 1.0).value(0.5).unwrap() - 0.5).norm() < 1e-15);
        assert!((d(zero, zero, 1.0).derivative(0.2).unwrap() - 1.0).norm() < 1e-14);
        for x in [-0.9, -0.4, 0.0, 0.6] {
            assert!(d(zero, zero, 0.0).derivative(x).unwrap().norm() < 1e-15);
        }
        assert!((legendre_p(zero, 2.0, 0.0).unwrap() + 0.5).norm() < 1e-15);
        assert!((legendre_p(zero, 1.0, 0.7).unwrap() - 0.7).norm() < 1e-15);
    }

    #[test]
    fn domain_and_pole_errors() {
        let g = d(c(0.1, 0.0), c(0.2, 0.0), 0.5);
        assert!(matches!(g.value(1.0), Err(Error::Domain(_))));
        assert!(matches!(g.value(-1.5), Err(Error::Domain(_))));
        // 1 − μ − η = −1
        let bad = d(c(1.5, 0.0), c(0.5, 0.0), 0.3);
        assert!(matches!(bad.value(0.1), Err(Error::Pole { factor: GammaFactor::OneMinusMuMinusEta, .. })));
        assert!(matches!(legendre_p(c(2.0, 0.0), 1.0, 0.1), Err(Error::Pole { .. })));
    }

    #[test]
    fn tanh_coordinates_match_direct_coordinates() {
        let g = d(c(-0.3, 0.4), c(-0.2, -0.4), 0.7);
        for v in [-3.0, -0.5, 0.0, 0.25, 2.0] {
            let a = g.value_tanh(v).unwrap();
            let b = g.value(f64::tanh(v)).unwrap();
            assert!((a - b).norm() < 1e-13 * b.norm().max(1.0), "v = {v}");
        }
    }

    #[test]
    fn constant_solution_amplitudes() {
        let zero = c(0.0, 0.0);
        let amp = d(zero, zero, 0.0).asymptotic_amplitudes().unwrap();
        assert!((amp.a - 1.0).norm() < 1e-15);
        assert_eq!(amp.b, zero);
        assert!((amp.c - 1.0).norm() < 1e-15);
        assert_eq!(amp.vanishing, Some(GammaFactor::MinusNuMinusEta));
        assert!((d(zero, zero, 0.0).value_tanh(3.0).unwrap() - 1.0).norm() < 1e-15);
        assert!((d(zero, zero, 0.0).value_tanh(-30.0).unwrap() - 1.0).norm() < 1e-15);
    }

    #[test]
    fn numerator_pole_is_reported() {
        // η − μ = −2 with no compensating denominator pole
        let g = d(c(1.0, 0.0), c(-1.0, 0.0), 0.3);
        match g.asymptotic_amplitudes() {
            Err(Error::Pole { factor, .. }) => assert_eq!(factor, GammaFactor::EtaMinusMu),
            other => panic!("expected pole, got {other:?}"),
        }
    }

    #[test]
    fn regime_validation() {
        let mut p = ChannelParams::generic(c(-0.4, 0.0), c(-2.5, 0.0), 2.5);
        p.regime = Regime::Bound;
        assert!(p.validate().is_ok());
        p.mu = c(0.4, 0.0);
        assert!(p.validate().is_err());
        let q = ChannelParams { mu: c(0.0, 2.0), eta: c(0.1, -0.5), nu: 1.0, regime: Regime::AboveBarrier };
        assert!(q.validate().is_err());
    }
}
