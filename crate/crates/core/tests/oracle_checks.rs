//! Closed forms against direct numerical integration of the Schrödinger
//! equation.

use num_complex::Complex64;
use rmscat_core::oracle::{
    extract_rt, integrate_state, potential_minimum, shoot_bound_states, wronskian, IntegratorSpec, Method, Seed,
};
use rmscat_core::rosenmorse::{energy_of_k, RosenMorse};
use rmscat_core::scatter::{reflection, transmission};

fn rm(a: f64, b: f64) -> RosenMorse {
    RosenMorse::new(a, b).unwrap()
}

fn spec_for(p: &RosenMorse, k: f64, method: Method) -> IntegratorSpec {
    IntegratorSpec::for_energy(p, energy_of_k(p.beta, k).unwrap(), method).unwrap()
}

#[test]
fn reflection_and_transmission_match_oracle() {
    let cases = [(0.5, 0.25, 1.2), (0.3, 1.0, 2.05), (2.5, 1.0, 2.7), (1.7, 0.5, 5.5), (0.8, 0.0, 0.4)];
    for (alpha, beta, k) in cases {
        let p = rm(alpha, beta);
        let mut spec = spec_for(&p, k, Method::Numerov);
        // long wavelengths need room for the fit window in the flat region
        spec.x_min = spec.x_min.min(-20.0 - 2.0 * std::f64::consts::TAU / k);
        let (r, t) = extract_rt(&p, k, &spec).unwrap();
        let (rc, tc) = (reflection(&p, k).unwrap(), transmission(&p, k).unwrap());
        assert!((r - rc).abs() <= 1e-6 && (t - tc).abs() <= 1e-6, "({alpha}, {beta}, {k}): oracle ({r}, {t}) vs ({rc}, {tc})");
    }
}

#[test]
fn oracle_methods_and_refinement_agree() {
    let p = rm(0.5, 0.25);
    let k = 1.2;
    let spec = spec_for(&p, k, Method::Numerov);
    let (r1, t1) = extract_rt(&p, k, &spec).unwrap();
    let half = IntegratorSpec { step: 0.5 * spec.step, ..spec };
    let (r2, t2) = extract_rt(&p, k, &half).unwrap();
    assert!((r1 - r2).abs() <= 1e-8 && (t1 - t2).abs() <= 1e-8, "{r1} {r2} {t1} {t2}");
    let (r3, t3) = extract_rt(&p, k, &spec_for(&p, k, Method::Rk4)).unwrap();
    assert!((r1 - r3).abs() <= 1e-8 && (t1 - t3).abs() <= 1e-8, "{r1} {r3} {t1} {t3}");
}

/// The oracle solution is proportional to ψ_k; after matching at x = 0 they
/// agree pointwise over [−10, 10].
#[test]
fn integrated_state_matches_closed_form() {
    for (alpha, beta, k) in [(0.7, 1.0, 1.2), (0.7, 1.0, 3.0), (2.5, 0.5, 0.6), (1.0, 0.0, 1.5)] {
        let p = rm(alpha, beta);
        let f = integrate_state(&p, energy_of_k(beta, k).unwrap(), &spec_for(&p, k, Method::Numerov), Seed::Right).unwrap();
        let nodes: Vec<(f64, Complex64)> =
            (0..f.len()).map(|i| (f.nodes.get(i), f.values[i])).filter(|(x, _)| x.abs() <= 10.0).collect();
        let (x0, v0) = nodes.iter().min_by(|a, b| a.0.abs().total_cmp(&b.0.abs())).copied().unwrap();
        let scale = p.scattering_state(k, x0).unwrap() / v0;
        let mut peak: f64 = 0.0;
        let mut worst: f64 = 0.0;
        for (x, v) in nodes.iter().step_by(7) {
            let exact = p.scattering_state(k, *x).unwrap();
            peak = peak.max(exact.norm());
            worst = worst.max((v * scale - exact).norm());
        }
        assert!(worst <= 1e-7 * peak, "({alpha}, {beta}, {k}): {worst:e} vs peak {peak}");
    }
}

#[test]
fn below_barrier_oracle_is_bounded_by_amplitudes() {
    let (alpha, beta, k) = (0.7, 1.0, 1.2);
    let p = rm(alpha, beta);
    let amp = p.state(k).unwrap().asymptotic_amplitudes().unwrap();
    let f = integrate_state(&p, energy_of_k(beta, k).unwrap(), &spec_for(&p, k, Method::Numerov), Seed::Right).unwrap();
    // the oracle is seeded with e^{−qx}, the closed form with C·e^{−qx}
    let bound = (amp.a.norm() + amp.b.norm()) / amp.c.norm();
    for (i, v) in f.values.iter().enumerate() {
        if f.nodes.get(i) < -5.0 {
            assert!(v.norm() <= bound * (1.0 + 1e-6), "x = {}: {} > {bound}", f.nodes.get(i), v.norm());
        }
    }
}

#[test]
fn wronskian_of_independent_solutions_is_constant() {
    let p = rm(1.3, 0.4);
    let e = energy_of_k(p.beta, 2.2).unwrap();
    let spec = spec_for(&p, 2.2, Method::Numerov);
    let right = integrate_state(&p, e, &spec, Seed::Right).unwrap();
    let left = integrate_state(&p, e, &spec, Seed::Left).unwrap();
    let w = wronskian(&right, &left).unwrap();
    let mid = w[w.len() / 2];
    for v in &w[2..w.len() - 2] {
        assert!((v - mid).norm() <= 1e-8 * mid.norm(), "{v} vs {mid}");
    }
}

#[test]
fn bound_spectrum_matches_shooting() {
    for (alpha, beta) in [(1.0, 0.0), (2.5, 1.0), (3.2, 0.5), (0.4, 1.0)] {
        let p = rm(alpha, beta);
        let spec = IntegratorSpec::new(-35.0, 35.0, 0.002, Method::Numerov).unwrap();
        let shot = shoot_bound_states(&p, (potential_minimum(&p), -2.0 * beta - 1e-3), &spec, 400).unwrap();
        let exact = p.bound_spectrum();
        assert_eq!(shot.len(), exact.len(), "({alpha}, {beta}): {shot:?}");
        for (s, e) in shot.iter().zip(&exact) {
            assert!((s - e.energy).abs() <= 1e-8, "({alpha}, {beta}): {s} vs {}", e.energy);
        }
    }
}
