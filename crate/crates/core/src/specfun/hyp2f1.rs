//! Gauss hypergeometric function F(a, b; c; z) for complex parameters and
//! real 0 <= z < 1.
//!
//! For z <= 1/2 the power series is summed directly. For z > 1/2 the argument
//! is mapped to w = 1 − z with the two-term connection formula
//!
//! ```text
//! F(a,b;c;z) = Γ(c)Γ(c−a−b)/(Γ(c−a)Γ(c−b)) F(a,b;a+b−c+1;w)
//!            + w^{c−a−b} Γ(c)Γ(a+b−c)/(Γ(a)Γ(b)) F(c−a,c−b;c−a−b+1;w)
//! ```
//!
//! so both branches converge at least as fast as 2^{−n}. Terminating series
//! (a or b a nonpositive integer) are always summed directly.

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::gamma::nonpositive_integer;
use super::ratio::{log_gamma_ratio, GammaArg};
use crate::error::{Error, GammaFactor, Result};

/// Half-width of the band around integer c − a − b where the connection
/// formula is refused.
pub const DEGENERACY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    pub rel_tol: f64,
    pub max_terms: usize,
}

impl Default for SeriesControl {
    fn default() -> Self {
        Self { rel_tol: 1e-15, max_terms: 20_000 }
    }
}

impl SeriesControl {
    pub fn new(rel_tol: f64, max_terms: usize) -> Result<Self> {
        if !(rel_tol > 0.0) || max_terms == 0 {
            return Err(Error::Domain(alloc::format!(
                "series control needs rel_tol > 0 and max_terms >= 1 (got {rel_tol}, {max_terms})"
            )));
        }
        Ok(Self { rel_tol, max_terms })
    }
}

/// One piece `exp(log_coef) · w^power · series` of the connection formula.
#[derive(Debug, Clone, Copy)]
pub struct ConnectionTerm {
    pub log_coef: Complex64,
    pub power: Complex64,
    pub series: Complex64,
}

/// Either the directly summed series or the (up to two) terms of the
/// connection formula. Terms whose gamma coefficient vanishes are omitted.
#[derive(Debug, Clone)]
pub enum Expansion {
    Direct(Complex64),
    Connected([Option<ConnectionTerm>; 2]),
}

impl Expansion {
    /// Value, given ln w = ln(1 − z).
    pub fn value(&self, ln_w: f64) -> Complex64 {
        match self {
            Expansion::Direct(v) => *v,
            Expansion::Connected(terms) => terms
                .iter()
                .flatten()
                .map(|t| (t.log_coef + t.power * ln_w).exp() * t.series)
                .sum(),
        }
    }
}

/// An argument z of F together with w = 1 − z, both carried at full
/// precision (callers near z = 1 can supply w without cancellation).
#[derive(Debug, Clone, Copy)]
pub struct UnitArg {
    pub z: f64,
    pub w: f64,
}

impl UnitArg {
    pub fn from_z(z: f64) -> Self {
        Self { z, w: 1.0 - z }
    }
}

fn snap_nonpositive_integer(a: Complex64) -> Option<Complex64> {
    nonpositive_integer(a).map(|m| Complex64::new(-(m as f64), 0.0))
}

/// Direct power series Σ (a)_n (b)_n / ((c)_n n!) z^n, any 0 <= z < 1.
pub fn hyp2f1_series(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    z: f64,
    ctl: &SeriesControl,
) -> Result<Complex64> {
    if nonpositive_integer(c).is_some() {
        return Err(Error::Pole { z: c, factor: GammaFactor::Other });
    }
    let a = snap_nonpositive_integer(a).unwrap_or(a);
    let b = snap_nonpositive_integer(b).unwrap_or(b);
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    if z == 0.0 {
        return Ok(sum);
    }
    let mut small_run = 0;
    for n in 0..ctl.max_terms {
        let nf = n as f64;
        let num = (a + nf) * (b + nf);
        let den = (c + nf) * (nf + 1.0);
        term *= num / den * z;
        sum += term;
        if term.re == 0.0 && term.im == 0.0 {
            return Ok(sum);
        }
        // the tail is geometric once |(a+n)(b+n)| z < |(c+n)(n+1)|
        let contracting = num.norm() * z < den.norm();
        if contracting && term.norm() <= ctl.rel_tol * sum.norm() {
            small_run += 1;
            if small_run >= 2 {
                return Ok(sum);
            }
        } else {
            small_run = 0;
        }
    }
    Err(Error::NonConvergence { terms: ctl.max_terms })
}

fn terminates(a: Complex64, b: Complex64) -> bool {
    nonpositive_integer(a).is_some() || nonpositive_integer(b).is_some()
}

/// Parameters of F(a, b; c; ·) together with the differences the connection
/// formula needs. Near an integer c − a − b the formula is sensitive to
/// rounding in these differences, so callers that know them in closed form
/// should supply them rather than let them be recomputed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperParams {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub c_minus_a: Complex64,
    pub c_minus_b: Complex64,
    /// c − a − b
    pub excess: Complex64,
}

impl HyperParams {
    pub fn from_abc(a: Complex64, b: Complex64, c: Complex64) -> Self {
        Self { a, b, c, c_minus_a: c - a, c_minus_b: c - b, excess: c - a - b }
    }

    /// (a + 1, b + 1, c + 1), the parameters of the derivative.
    pub fn raised(&self) -> Self {
        Self {
            a: self.a + 1.0,
            b: self.b + 1.0,
            c: self.c + 1.0,
            c_minus_a: self.c_minus_a,
            c_minus_b: self.c_minus_b,
            excess: self.excess - 1.0,
        }
    }
}

/// Connection-formula expansion in w = 1 − z (z > 1/2 side).
pub fn hyp2f1_connection(hp: &HyperParams, w: f64, ctl: &SeriesControl) -> Result<[Option<ConnectionTerm>; 2]> {
    let HyperParams { a, b, c, c_minus_a, c_minus_b, excess } = *hp;
    if nonpositive_integer(c).is_some() {
        return Err(Error::Pole { z: c, factor: GammaFactor::Other });
    }
    if excess.im.abs() <= DEGENERACY_TOL && (excess.re - excess.re.round()).abs() <= DEGENERACY_TOL {
        return Err(Error::DegenerateTransform { excess });
    }
    let one = Complex64::new(1.0, 0.0);
    let first = match log_gamma_ratio(
        &[GammaArg::exact(c), GammaArg::exact(excess)],
        &[GammaArg::exact(c_minus_a), GammaArg::exact(c_minus_b)],
    )? {
        Some(log_coef) => Some(ConnectionTerm {
            log_coef,
            power: Complex64::new(0.0, 0.0),
            series: hyp2f1_series(a, b, one - excess, w, ctl)?,
        }),
        None => None,
    };
    let second = match log_gamma_ratio(
        &[GammaArg::exact(c), GammaArg::exact(-excess)],
        &[GammaArg::exact(a), GammaArg::exact(b)],
    )? {
        Some(log_coef) => Some(ConnectionTerm {
            log_coef,
            power: excess,
            series: hyp2f1_series(c_minus_a, c_minus_b, one + excess, w, ctl)?,
        }),
        None => None,
    };
    Ok([first, second])
}

/// Chooses the direct series or the connection formula for `arg`.
pub fn hyp2f1_expansion(hp: &HyperParams, arg: UnitArg, ctl: &SeriesControl) -> Result<Expansion> {
    // z may round to 1 when w is supplied exactly
    if !(arg.z >= 0.0 && arg.z <= 1.0 && arg.w > 0.0) {
        return Err(Error::Domain(alloc::format!("hypergeometric argument z = {} not in [0, 1)", arg.z)));
    }
    if arg.z <= 0.5 || terminates(hp.a, hp.b) {
        hyp2f1_series(hp.a, hp.b, hp.c, arg.z, ctl).map(Expansion::Direct)
    } else {
        hyp2f1_connection(hp, arg.w, ctl).map(Expansion::Connected)
    }
}

/// F(a, b; c; z) for 0 <= z < 1.
pub fn hyp2f1(a: Complex64, b: Complex64, c: Complex64, z: f64, ctl: &SeriesControl) -> Result<Complex64> {
    let arg = UnitArg::from_z(z);
    Ok(hyp2f1_expansion(&HyperParams::from_abc(a, b, c), arg, ctl)?.value(arg.w.ln()))
}

/// dF/dz = (ab/c) F(a+1, b+1; c+1; z).
pub fn hyp2f1_derivative(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    z: f64,
    ctl: &SeriesControl,
) -> Result<Complex64> {
    if nonpositive_integer(c).is_some() {
        return Err(Error::Pole { z: c, factor: GammaFactor::Other });
    }
    let ab = a * b;
    if ab.re == 0.0 && ab.im == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    Ok(ab / c * hyp2f1(a + 1.0, b + 1.0, c + 1.0, z, ctl)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn constant_term_at_origin() {
        let ctl = SeriesControl::default();
        let v = hyp2f1(c(0.3, 2.0), c(-1.2, 0.1), c(2.5, -1.0), 0.0, &ctl).unwrap();
        assert_eq!(v, c(1.0, 0.0));
        let d = hyp2f1_derivative(c(0.3, 2.0), c(-1.2, 0.1), c(2.5, -1.0), 0.0, &ctl).unwrap();
        let expect = c(0.3, 2.0) * c(-1.2, 0.1) / c(2.5, -1.0);
        assert!((d - expect).norm() < 1e-15);
    }

    #[test]
    fn geometric_series() {
        let ctl = SeriesControl::default();
        let v = hyp2f1(c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0), 0.5, &ctl).unwrap();
        assert!((v - 2.0).norm() < 1e-14);
        let d = hyp2f1_derivative(c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0), 0.5, &ctl).unwrap();
        assert!((d - 4.0).norm() < 1e-13);
    }

    #[test]
    fn degenerate_connection_is_an_error() {
        let ctl = SeriesControl::default();
        // c − a − b = 1
        let e = hyp2f1(c(0.5, 0.0), c(0.5, 0.0), c(2.0, 0.0), 0.8, &ctl).unwrap_err();
        assert!(matches!(e, Error::DegenerateTransform { .. }));
        // but fine on the direct side
        assert!(hyp2f1(c(0.5, 0.0), c(0.5, 0.0), c(2.0, 0.0), 0.4, &ctl).is_ok());
    }

    #[test]
    fn bad_c_parameter() {
        let ctl = SeriesControl::default();
        let e = hyp2f1(c(0.5, 0.0), c(0.5, 0.0), c(-2.0, 0.0), 0.3, &ctl).unwrap_err();
        assert!(matches!(e, Error::Pole { .. }));
    }

    #[test]
    fn exhausted_terms() {
        let ctl = SeriesControl::new(1e-15, 3).unwrap();
        let e = hyp2f1(c(0.5, 0.0), c(1.5, 0.0), c(2.5, 0.0), 0.4, &ctl).unwrap_err();
        assert!(matches!(e, Error::NonConvergence { terms: 3 }));
    }

    #[test]
    fn terminating_series_any_argument() {
        // F(−2, b; c; z) = 1 − 2bz/c + b(b+1)z²/(c(c+1))
        let ctl = SeriesControl::default();
        let (b, cc, z) = (c(0.7, 0.2), c(1.3, -0.4), 0.93);
        let expect = 1.0 - 2.0 * b * z / cc + b * (b + 1.0) * z * z / (cc * (cc + 1.0));
        let v = hyp2f1(c(-2.0, 0.0), b, cc, z, &ctl).unwrap();
        assert!((v - expect).norm() < 1e-14);
    }

    #[test]
    fn elementary_closed_form_above_half() {
        // F(1,1;2;z) = −ln(1−z)/z is degenerate (c−a−b = 0); use
        // F(a,b;b;z) = (1−z)^{−a} with non-integer a.
        let ctl = SeriesControl::default();
        let a = c(0.35, 0.8);
        let b = c(1.7, -0.3);
        for &z in &[0.55, 0.8, 0.97, 0.9999] {
            let v = hyp2f1(a, b, b, z, &ctl).unwrap();
            let expect = (-a * (1.0f64 - z).ln()).exp();
            assert!((v - expect).norm() / expect.norm() < 1e-12, "z = {z}: {v} vs {expect}");
        }
    }

    #[test]
    fn bad_control() {
        assert!(SeriesControl::new(0.0, 10).is_err());
        assert!(SeriesControl::new(1e-10, 0).is_err());
    }
}
