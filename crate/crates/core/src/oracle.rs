//! Direct numerical integration of ψ'' = −[α(α+1)sech²x − 2β tanh x + E]ψ.
//!
//! Used only to cross-check the closed forms: the potential, the asymptotes
//! and every amplitude are computed here from scratch. Solutions are seeded
//! at the outer edge of the grid from the exact plane-wave or exponential
//! asymptote and marched inward with Numerov's method (default) or classical
//! RK4.

use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::rosenmorse::RosenMorse;
use crate::spectral::{GridFunction, Nodes};

/// Default distance of the seed point from the origin.
pub const SEED_OFFSET: f64 = 35.0;
/// Minimum grid points per local wavelength.
pub const MIN_POINTS_PER_WAVELENGTH: f64 = 40.0;
/// Default points per local wavelength.
pub const DEFAULT_POINTS_PER_WAVELENGTH: f64 = 400.0;
/// Energies closer than this to ±2β are refused.
pub const ENERGY_BAND: f64 = 1e-6;
/// Bisection stops when the energy bracket is this narrow.
pub const SHOOT_TOL: f64 = 1e-10;
/// The plane-wave fit window must end left of this point, where the
/// potential is within e^{−40} of its limit.
pub const FLAT_EDGE: f64 = -20.0;
/// Tolerance of the R + T = 1 consistency gate.
pub const FLUX_GATE: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Numerov,
    Rk4,
}

/// Where the solution is seeded. `Right` starts at `x_max` with the outgoing
/// or decaying asymptote and marches left; `Left` is the mirror.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Seed {
    Right,
    Left,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub step: f64,
    pub method: Method,
}

fn potential(p: &RosenMorse, x: f64) -> f64 {
    let c = x.cosh();
    -p.alpha * (p.alpha + 1.0) / (c * c) + 2.0 * p.beta * x.tanh()
}

/// max |E − V(x)| over [a, b], sampled finely enough to catch the well.
fn max_local_momentum_sq(p: &RosenMorse, energy: f64, a: f64, b: f64) -> f64 {
    let n = ((b - a) / 0.01).ceil().max(1.0) as usize;
    (0..=n)
        .map(|i| (energy - potential(p, a + (b - a) * i as f64 / n as f64)).abs())
        .fold(0.0, f64::max)
}

impl IntegratorSpec {
    pub fn new(x_min: f64, x_max: f64, step: f64, method: Method) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite() && x_min < x_max && step > 0.0) {
            return Err(Error::Domain(alloc::format!(
                "integrator needs x_min < x_max and step > 0 (got [{x_min}, {x_max}], {step})"
            )));
        }
        Ok(Self { x_min, x_max, step, method })
    }

    /// [−35, 35] with a step giving the default resolution at `energy`.
    pub fn for_energy(p: &RosenMorse, energy: f64, method: Method) -> Result<Self> {
        let kmax = max_local_momentum_sq(p, energy, -SEED_OFFSET, SEED_OFFSET).sqrt().max(1.0);
        let step = (2.0 * core::f64::consts::PI / (kmax * DEFAULT_POINTS_PER_WAVELENGTH)).min(0.01);
        Self::new(-SEED_OFFSET, SEED_OFFSET, step, method)
    }

    /// Rejects steps that resolve the shortest local wavelength (or decay
    /// length) by fewer than [`MIN_POINTS_PER_WAVELENGTH`] points.
    pub fn check_resolution(&self, p: &RosenMorse, energy: f64) -> Result<()> {
        let kmax = max_local_momentum_sq(p, energy, self.x_min, self.x_max).sqrt();
        if kmax == 0.0 {
            return Ok(());
        }
        let max_step = 2.0 * core::f64::consts::PI / (kmax * MIN_POINTS_PER_WAVELENGTH);
        if self.step > max_step {
            return Err(Error::StepTooCoarse { step: self.step, max_step });
        }
        Ok(())
    }

    fn intervals(&self) -> usize {
        ((self.x_max - self.x_min) / self.step * (1.0 - 1e-12)).ceil().max(2.0) as usize
    }
}

/// Exponent λ of the seed e^{λx}: outgoing (e^{±i√g x}) where E − V∞ = g > 0,
/// decaying away from the origin where g < 0.
fn seed_exponent(g: f64, seed: Seed) -> Complex64 {
    let root = g.abs().sqrt();
    match (seed, g > 0.0) {
        (Seed::Right, true) => Complex64::new(0.0, root),
        (Seed::Right, false) => Complex64::new(-root, 0.0),
        (Seed::Left, true) => Complex64::new(0.0, -root),
        (Seed::Left, false) => Complex64::new(root, 0.0),
    }
}

/// Solution on the uniform grid of `spec`, seeded from the asymptote at the
/// `seed` end.
pub fn integrate_state(p: &RosenMorse, energy: f64, spec: &IntegratorSpec, seed: Seed) -> Result<GridFunction> {
    let b = 2.0 * p.beta;
    if (energy - b).abs() <= ENERGY_BAND || (energy + b).abs() <= ENERGY_BAND {
        return Err(Error::Domain(alloc::format!("energy {energy} within {ENERGY_BAND} of a threshold ±{b}")));
    }
    spec.check_resolution(p, energy)?;
    let n = spec.intervals();
    let h = (spec.x_max - spec.x_min) / n as f64;
    let xs: Vec<f64> = (0..=n).map(|i| spec.x_min + h * i as f64).collect();
    // march order: indices in the direction away from the seed
    let order: Vec<usize> = match seed {
        Seed::Right => (0..=n).rev().collect(),
        Seed::Left => (0..=n).collect(),
    };
    let v_inf = match seed {
        Seed::Right => b,
        Seed::Left => -b,
    };
    let lambda = seed_exponent(energy - v_inf, seed);
    let g: Vec<f64> = xs.iter().map(|&x| energy - potential(p, x)).collect();
    let mut psi = alloc::vec![Complex64::new(0.0, 0.0); n + 1];
    let i0 = order[0];
    psi[i0] = (lambda * xs[i0]).exp();
    match spec.method {
        Method::Numerov => {
            let i1 = order[1];
            psi[i1] = (lambda * xs[i1]).exp();
            let c = h * h / 12.0;
            for w in order.windows(3) {
                let (im, i, ip) = (w[0], w[1], w[2]);
                psi[ip] = (psi[i] * (2.0 * (1.0 - 5.0 * c * g[i])) - psi[im] * (1.0 + c * g[im])) / (1.0 + c * g[ip]);
            }
        }
        Method::Rk4 => {
            let dir = match seed {
                Seed::Right => -h,
                Seed::Left => h,
            };
            let rhs = |x: f64, y: Complex64| -(energy - potential(p, x)) * y;
            let (mut y, mut dy) = (psi[i0], lambda * psi[i0]);
            for w in order.windows(2) {
                let x = xs[w[0]];
                let k1 = (dy, rhs(x, y));
                let k2 = (dy + k1.1 * (0.5 * dir), rhs(x + 0.5 * dir, y + k1.0 * (0.5 * dir)));
                let k3 = (dy + k2.1 * (0.5 * dir), rhs(x + 0.5 * dir, y + k2.0 * (0.5 * dir)));
                let k4 = (dy + k3.1 * dir, rhs(x + dir, y + k3.0 * dir));
                y += (k1.0 + k2.0 * 2.0 + k3.0 * 2.0 + k4.0) * (dir / 6.0);
                dy += (k1.1 + k2.1 * 2.0 + k3.1 * 2.0 + k4.1) * (dir / 6.0);
                psi[w[1]] = y;
            }
        }
    }
    let method = match spec.method {
        Method::Numerov => "Numerov",
        Method::Rk4 => "RK4",
    };
    GridFunction::new(
        Nodes::Uniform { start: spec.x_min, step: h, len: n + 1 },
        psi,
        alloc::format!(
            "{method} solution, alpha = {}, beta = {}, E = {energy}, seeded {seed:?} on [{}, {}], h = {h}",
            p.alpha,
            p.beta,
            spec.x_min,
            spec.x_max
        ),
    )
}

/// Five-point finite-difference derivative on a uniform grid (one-sided
/// stencils at the two outermost nodes on each side).
pub fn grid_derivative(f: &GridFunction) -> Result<Vec<Complex64>> {
    let Nodes::Uniform { step: h, len, .. } = f.nodes else {
        return Err(Error::Domain(alloc::string::String::from("derivative needs a uniform grid")));
    };
    if len < 5 {
        return Err(Error::Domain(alloc::format!("derivative needs >= 5 nodes, got {len}")));
    }
    let y = &f.values;
    let mut d = alloc::vec![Complex64::new(0.0, 0.0); len];
    for i in 2..len - 2 {
        d[i] = (y[i - 2] - y[i - 1] * 8.0 + y[i + 1] * 8.0 - y[i + 2]) / (12.0 * h);
    }
    let fwd = |i: usize| {
        (y[i] * -25.0 + y[i + 1] * 48.0 - y[i + 2] * 36.0 + y[i + 3] * 16.0 - y[i + 4] * 3.0) / (12.0 * h)
    };
    let bwd = |i: usize| {
        (y[i] * 25.0 - y[i - 1] * 48.0 + y[i - 2] * 36.0 - y[i - 3] * 16.0 + y[i - 4] * 3.0) / (12.0 * h)
    };
    d[0] = fwd(0);
    d[1] = fwd(1);
    d[len - 1] = bwd(len - 1);
    d[len - 2] = bwd(len - 2);
    Ok(d)
}

/// ψ₁ψ₂' − ψ₂ψ₁' at every node of two solutions on the same grid.
pub fn wronskian(f: &GridFunction, g: &GridFunction) -> Result<Vec<Complex64>> {
    if f.nodes != g.nodes {
        return Err(Error::Domain(alloc::string::String::from("wronskian needs matching grids")));
    }
    let (df, dg) = (grid_derivative(f)?, grid_derivative(g)?);
    Ok((0..f.len()).map(|i| f.values[i] * dg[i] - g.values[i] * df[i]).collect())
}

/// Amplitudes of the oracle solution ψ ≈ incident·e^{ikx} + reflected·e^{−ikx}
/// on the left and transmitted·e^{isx} on the right.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FittedAmplitudes {
    pub incident: Complex64,
    pub reflected: Complex64,
    pub transmitted: Complex64,
}

/// Least-squares fit of a·e^{ikx} + b·e^{−ikx} over the nodes in `[lo, hi]`.
fn fit_plane_waves(f: &GridFunction, k: f64, lo: f64, hi: f64) -> Result<(Complex64, Complex64)> {
    let (mut n, mut s) = (0.0, Complex64::new(0.0, 0.0));
    let (mut r1, mut r2) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
    for (i, &y) in f.values.iter().enumerate() {
        let x = f.nodes.get(i);
        if x < lo || x > hi {
            continue;
        }
        let u = Complex64::new(0.0, k * x).exp();
        n += 1.0;
        s += u.conj() * u.conj();
        r1 += u.conj() * y;
        r2 += u * y;
    }
    if n < 4.0 || s.norm() > 0.9 * n {
        return Err(Error::FitConditioning(alloc::format!(
            "{n} nodes on [{lo}, {hi}] with overlap {:.3} between e^(+ikx) and e^(-ikx)",
            s.norm() / n.max(1.0)
        )));
    }
    // [n  s; s* n] (a, b) = (r1, r2)
    let det = n * n - s.norm_sqr();
    let a = (r1 * n - s * r2) / det;
    let b = (r2 * n - s.conj() * r1) / det;
    Ok((a, b))
}

/// Outgoing-wave solution for wavenumber |k| above the barrier and its
/// fitted plane-wave amplitudes.
pub fn fit_amplitudes(p: &RosenMorse, k: f64, spec: &IntegratorSpec) -> Result<FittedAmplitudes> {
    let ka = k.abs();
    let g_right = ka * ka - 4.0 * p.beta;
    if !(g_right > ENERGY_BAND) {
        return Err(Error::Domain(alloc::format!(
            "k = {k} is not above the barrier (k^2 - 4 beta = {g_right})"
        )));
    }
    let energy = ka * ka - 2.0 * p.beta;
    let psi = integrate_state(p, energy, spec, Seed::Right)?;
    let wavelength = 2.0 * core::f64::consts::PI / ka;
    let width = (2.0 * wavelength).max(4.0);
    let lo = spec.x_min;
    let hi = lo + width;
    if hi > FLAT_EDGE {
        return Err(Error::FitConditioning(alloc::format!(
            "fit window [{lo}, {hi}] for k = {k} reaches past x = {FLAT_EDGE}; widen the grid"
        )));
    }
    let (incident, reflected) = fit_plane_waves(&psi, ka, lo, hi)?;
    Ok(FittedAmplitudes { incident, reflected, transmitted: Complex64::new(1.0, 0.0) })
}

/// (R, T) from the oracle, gated on |R + T − 1| <= [`FLUX_GATE`].
pub fn extract_rt(p: &RosenMorse, k: f64, spec: &IntegratorSpec) -> Result<(f64, f64)> {
    let amp = fit_amplitudes(p, k, spec)?;
    let ka = k.abs();
    let s = (ka * ka - 4.0 * p.beta).sqrt();
    let a2 = amp.incident.norm_sqr();
    let r = amp.reflected.norm_sqr() / a2;
    let t = s / ka * amp.transmitted.norm_sqr() / a2;
    if !((r + t - 1.0).abs() <= FLUX_GATE) {
        return Err(Error::OracleGate(alloc::format!("R + T - 1 = {:e} at k = {k}", r + t - 1.0)));
    }
    Ok((r, t))
}

/// Normalized matching Wronskian at x = 0 between the solution decaying to
/// the left and the one decaying to the right. Zero exactly at eigenvalues.
fn matching_function(p: &RosenMorse, energy: f64, spec: &IntegratorSpec) -> Result<f64> {
    let slope_at_origin = |lo: f64, hi: f64, step: f64, seed: Seed| -> Result<(f64, f64)> {
        let side = IntegratorSpec { x_min: lo, x_max: hi, step, method: spec.method };
        let f = integrate_state(p, energy, &side, seed)?;
        let d = grid_derivative(&f)?;
        let Nodes::Uniform { start, step, .. } = f.nodes else { unreachable!() };
        let i = (-start / step).round() as usize;
        Ok((f.values[i].re, d[i].re))
    };
    let nl = (-spec.x_min / spec.step).ceil();
    let hl = -spec.x_min / nl;
    let (l, dl) = slope_at_origin(spec.x_min, 3.0 * hl, hl, Seed::Left)?;
    let nr = (spec.x_max / spec.step).ceil();
    let hr = spec.x_max / nr;
    let (r, dr) = slope_at_origin(-3.0 * hr, spec.x_max, hr, Seed::Right)?;
    let scale = ((l * l + dl * dl) * (r * r + dr * dr)).sqrt();
    Ok((l * dr - r * dl) / scale)
}

/// Bound-state energies in `range` (which must lie below −2β), located by
/// sign changes of the matching Wronskian on a scan of `scan_points`
/// energies and refined by bisection, in ascending order. An empty range
/// (lo >= hi) has no eigenvalues.
pub fn shoot_bound_states(
    p: &RosenMorse,
    range: (f64, f64),
    spec: &IntegratorSpec,
    scan_points: usize,
) -> Result<Vec<f64>> {
    let (lo, hi) = range;
    if lo >= hi && hi < -2.0 * p.beta {
        return Ok(Vec::new());
    }
    if !(lo < hi && hi < -2.0 * p.beta && spec.x_min < 0.0 && spec.x_max > 0.0) {
        return Err(Error::Domain(alloc::format!(
            "energy range [{lo}, {hi}] must be increasing and below -2 beta = {}; grid must straddle 0",
            -2.0 * p.beta
        )));
    }
    let n = scan_points.max(2);
    let es: Vec<f64> = (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect();
    let ws = es.iter().map(|&e| matching_function(p, e, spec)).collect::<Result<Vec<_>>>()?;
    let mut roots = Vec::new();
    for i in 0..n - 1 {
        let (mut a, mut b) = (es[i], es[i + 1]);
        let (mut fa, fb) = (ws[i], ws[i + 1]);
        if fa == 0.0 {
            roots.push(a);
            continue;
        }
        if fa * fb > 0.0 || fb == 0.0 {
            continue;
        }
        while b - a > SHOOT_TOL {
            let m = 0.5 * (a + b);
            let fm = matching_function(p, m, spec)?;
            if fm == 0.0 {
                a = m;
                b = m;
                break;
            }
            if fa * fm < 0.0 {
                b = m;
            } else {
                a = m;
                fa = fm;
            }
        }
        roots.push(0.5 * (a + b));
    }
    if ws[n - 1] == 0.0 {
        roots.push(es[n - 1]);
    }
    Ok(roots)
}

/// Lowest value of the potential, the natural lower end of a bound-state scan.
pub fn potential_minimum(p: &RosenMorse) -> f64 {
    let n = 70_000;
    (0..=n)
        .map(|i| potential(p, -SEED_OFFSET + 2.0 * SEED_OFFSET * i as f64 / n as f64))
        .fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rm(a: f64, b: f64) -> RosenMorse {
        RosenMorse::new(a, b).unwrap()
    }

    #[test]
    fn free_particle_has_constant_modulus() {
        let p = rm(0.0, 0.0);
        for method in [Method::Numerov, Method::Rk4] {
            let spec = IntegratorSpec::for_energy(&p, 2.25, method).unwrap();
            let f = integrate_state(&p, 2.25, &spec, Seed::Right).unwrap();
            let dev = f.values.iter().map(|v| (v.norm() - 1.0).abs()).fold(0.0, f64::max);
            assert!(dev < 1e-8, "{method:?}: {dev}");
        }
    }

    #[test]
    fn coarse_step_rejected() {
        let p = rm(1.0, 0.0);
        let spec = IntegratorSpec::new(-35.0, 35.0, 0.2, Method::Numerov).unwrap();
        assert!(matches!(integrate_state(&p, 4.0, &spec, Seed::Right), Err(Error::StepTooCoarse { .. })));
    }

    #[test]
    fn threshold_energy_rejected() {
        let p = rm(1.0, 0.5);
        let spec = IntegratorSpec::for_energy(&p, 2.0, Method::Numerov).unwrap();
        assert!(integrate_state(&p, 1.0, &spec, Seed::Right).is_err());
        assert!(integrate_state(&p, -1.0, &spec, Seed::Right).is_err());
    }

    #[test]
    fn reflectionless_well() {
        let p = rm(1.0, 0.0);
        let spec = IntegratorSpec::for_energy(&p, 2.25, Method::Numerov).unwrap();
        let (r, t) = extract_rt(&p, 1.5, &spec).unwrap();
        assert!(r <= 1e-7 && (t - 1.0).abs() <= 1e-7, "{r} {t}");
    }

    #[test]
    fn below_barrier_request_rejected() {
        let p = rm(0.5, 1.0);
        let spec = IntegratorSpec::for_energy(&p, 0.0, Method::Numerov).unwrap();
        assert!(matches!(extract_rt(&p, 1.0, &spec), Err(Error::Domain(_))));
    }

    #[test]
    fn sech_squared_ground_state() {
        let p = rm(1.0, 0.0);
        let spec = IntegratorSpec::new(-35.0, 35.0, 0.01, Method::Numerov).unwrap();
        let roots = shoot_bound_states(&p, (potential_minimum(&p), -1e-3), &spec, 200).unwrap();
        assert_eq!(roots.len(), 1);
        assert!((roots[0] + 1.0).abs() < 1e-8, "{roots:?}");
    }

    #[test]
    fn derivative_of_polynomial_is_exact() {
        let f = GridFunction::sample(
            Nodes::linspace(0.0, 1.0, 11).unwrap(),
            |x| Ok(Complex64::new(x * x * x * x, x)),
            "quartic",
        )
        .unwrap();
        let d = grid_derivative(&f).unwrap();
        for (i, v) in d.iter().enumerate() {
            let x = 0.1 * i as f64;
            assert!((v - Complex64::new(4.0 * x * x * x, 1.0)).norm() < 1e-12, "{i}: {v}");
        }
    }
}
