//! Adaptive Gauss-Kronrod (7/15) quadrature for complex integrands.
//!
//! The interval is first cut into `pieces` equal parts (callers pass the
//! number of oscillation periods they expect), then the piece with the
//! largest error estimate is bisected until the total estimate meets
//! `max(abs_tol, rel_tol·|I|)`. The estimate is the plain |K15 − G7|
//! difference, which is pessimistic for smooth integrands.

use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadSettings {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadSettings {
    fn default() -> Self {
        Self { abs_tol: 1e-10, rel_tol: 1e-9, max_intervals: 20_000 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: Complex64,
    pub error: f64,
    pub intervals: usize,
}

#[derive(Clone, Copy)]
struct Piece {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
}

fn kronrod<F>(f: &mut F, a: f64, b: f64) -> Result<Piece>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(mid)?;
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let s = f(mid - dx)? + f(mid + dx)?;
        k += s * WGK[j];
        if j % 2 == 1 {
            g += s * WG[j / 2];
        }
    }
    Ok(Piece { a, b, value: k * half, error: ((k - g) * half).norm() })
}

/// ∫_a^b f(x) dx.
pub fn integrate<F>(mut f: F, a: f64, b: f64, pieces: usize, settings: &QuadSettings) -> Result<QuadResult>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    if a == b {
        return Ok(QuadResult { value: Complex64::new(0.0, 0.0), error: 0.0, intervals: 0 });
    }
    let n = pieces.max(1);
    let h = (b - a) / n as f64;
    let mut parts: Vec<Piece> = Vec::with_capacity(n * 2);
    for j in 0..n {
        let lo = a + h * j as f64;
        let hi = if j + 1 == n { b } else { a + h * (j + 1) as f64 };
        parts.push(kronrod(&mut f, lo, hi)?);
    }
    loop {
        let value: Complex64 = parts.iter().map(|p| p.value).sum();
        let error: f64 = parts.iter().map(|p| p.error).sum();
        let target = settings.abs_tol.max(settings.rel_tol * value.norm());
        if error <= target {
            return Ok(QuadResult { value, error, intervals: parts.len() });
        }
        if parts.len() >= settings.max_intervals {
            return Err(Error::Quadrature { estimate: error, intervals: parts.len() });
        }
        let (worst, _) = parts
            .iter()
            .enumerate()
            .fold((0, -1.0), |acc, (i, p)| if p.error > acc.1 { (i, p.error) } else { acc });
        let p = parts.swap_remove(worst);
        let mid = 0.5 * (p.a + p.b);
        if !(mid > p.a && mid < p.b) {
            return Err(Error::Quadrature { estimate: error, intervals: parts.len() + 1 });
        }
        parts.push(kronrod(&mut f, p.a, mid)?);
        parts.push(kronrod(&mut f, mid, p.b)?);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_exact() {
        let r = integrate(|x| Ok(Complex64::new(x * x * x, 2.0 * x)), 0.0, 2.0, 1, &QuadSettings::default()).unwrap();
        assert!((r.value - Complex64::new(4.0, 4.0)).norm() < 1e-14);
    }

    #[test]
    fn oscillatory_exponential() {
        // ∫_{-15}^{15} e^{i 3 x} dx = 2 sin(45)/3
        let r = integrate(
            |x| Ok(Complex64::new(0.0, 3.0 * x).exp()),
            -15.0,
            15.0,
            15,
            &QuadSettings::default(),
        )
        .unwrap();
        let expect = 2.0 * 45f64.sin() / 3.0;
        assert!((r.value - expect).norm() < 1e-11, "{}", r.value);
    }

    #[test]
    fn integrand_errors_propagate() {
        let r = integrate(|_| Err(Error::ZeroMomentum { k: 0.0 }), 0.0, 1.0, 1, &QuadSettings::default());
        assert!(r.is_err());
    }

    #[test]
    fn runs_out_of_intervals() {
        let s = QuadSettings { abs_tol: 1e-15, rel_tol: 1e-15, max_intervals: 4 };
        let r = integrate(|x| Ok(Complex64::new(x.abs().sqrt(), 0.0)), -1.0, 1.0, 1, &s);
        assert!(matches!(r, Err(Error::Quadrature { .. })));
    }
}
