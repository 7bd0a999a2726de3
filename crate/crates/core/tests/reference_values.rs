//! Closed-form evaluations against frozen high-precision values.
//! The values come from tests/reference/gen_reference.py (mpmath, 40 digits).

// reference digits are kept as generated
#![allow(clippy::excessive_precision)]

use num_complex::Complex64;
use rmscat_core::genleg::{legendre_p, ChannelParams, GenLegendre};
use rmscat_core::rosenmorse::RosenMorse;
use rmscat_core::specfun::{gamma, hyp2f1, hyp2f1_derivative, log_gamma, SeriesControl};
use rmscat_core::spectral::measure;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn close(got: Complex64, want: Complex64, rel: f64) {
    let err = (got - want).norm() / want.norm().max(1e-300);
    assert!(err <= rel, "got {got}, want {want}, relative error {err:e}");
}

#[test]
fn log_gamma_values() {
    close(log_gamma(c(3.0, 4.0)).unwrap(), c(-1.7566267846037841, 4.7426644380346579), 1e-14);
    close(log_gamma(c(-2.5, 0.3)).unwrap(), c(-0.43208889261320192, -9.0933454212897415), 1e-14);
    close(log_gamma(c(-7.2, -1.1)).unwrap(), c(-10.470297775488852, 21.941394590850136), 1e-14);
    close(gamma(c(0.5, 0.5)).unwrap(), c(0.81816399954174739, -0.76331382871398262), 1e-14);
}

#[test]
fn hypergeometric_values() {
    let ctl = SeriesControl::default();
    close(hyp2f1(c(0.5, 0.0), c(1.5, 0.0), c(2.5, 0.0), 0.9, &ctl).unwrap(), c(1.6673034691845802, 0.0), 1e-13);
    let (a, b, cc) = (c(0.3, 0.2), c(1.1, -0.4), c(1.7, 0.5));
    close(hyp2f1(a, b, cc, 0.75, &ctl).unwrap(), c(1.3074429825374571, -0.071088314159973302), 1e-13);
    close(hyp2f1(a, b, cc, 0.3, &ctl).unwrap(), c(1.0843628740745634, -0.0074761492608858439), 1e-14);
    close(
        hyp2f1_derivative(c(0.3, 0.0), c(0.7, 0.0), c(1.1, 0.0), 0.4, &ctl).unwrap(),
        c(0.32464679306230416, 0.0),
        1e-14,
    );
}

#[test]
fn generalized_legendre_values() {
    let d = GenLegendre::new(ChannelParams::generic(c(-0.3, 0.0), c(-0.2, 0.0), 0.7));
    close(d.value(0.4).unwrap(), c(0.68366763442301023, 0.0), 1e-14);
    close(d.derivative(0.4).unwrap(), c(0.028955872696010596, 0.0), 1e-13);

    let d = GenLegendre::new(ChannelParams::generic(c(-0.4, 0.6), c(-0.4, -0.6), 1.3));
    close(d.value(-0.95).unwrap(), c(-0.30656828657448676, -0.13539584796606662), 1e-13);
    close(d.value(0.2).unwrap(), c(0.30865201439541869, 0.1363161261148536), 1e-14);
    close(d.value(0.999).unwrap(), c(0.057672583504396666, 0.025471089769992611), 1e-13);
}

#[test]
fn hyperbolic_coordinate_values() {
    let d = GenLegendre::new(ChannelParams::generic(c(0.0, 1.7), c(0.0, -0.4), 0.25));
    let cases = [
        (-12.0, c(0.78240916299197408, -0.033492837789896017), c(0.12460106859078163, 1.6562008957895266)),
        (1.5, c(-0.58106156484266779, 0.79222968324154784), c(-1.0867280364353281, -0.75562009000546106)),
        (15.0, c(0.59967376398838699, 0.80024457310495476), c(-1.0403179450364716, 0.77957589318501214)),
    ];
    for (v, val, dv) in cases {
        let (got, dgot) = d.value_and_derivative_tanh(v).unwrap();
        close(got, val, 1e-12);
        close(dgot, dv, 1e-12);
    }
}

#[test]
fn associated_legendre_value() {
    close(legendre_p(c(0.0, 0.3), 1.4, 0.25).unwrap(), c(-0.02544276435340091, -0.28975027342245754), 1e-14);
}

#[test]
fn asymptotic_amplitude_values() {
    let cases = [
        (0.7, 1.0, 1.2, c(0.26977448499607391, 0.50835611925573868), c(0.55745114586222839, -0.14301201598656068)),
        (0.7, 1.0, 3.0, c(0.8402848070266466, -0.19818694023293326), c(-0.00077807804883803959, 0.00014930948056208256)),
        (0.5, 0.25, 1.2, c(0.63197383789622211, -0.40694163708745638), c(-0.019824087983614763, 0.10875952796767177)),
        (2.5, 1.0, -2.7, c(-0.80427520878700452, 0.15792688698373635), c(-0.00016749464522788031, -0.0029119743841279888)),
    ];
    for (alpha, beta, k, a, b) in cases {
        let amp = RosenMorse::new(alpha, beta).unwrap().state(k).unwrap().asymptotic_amplitudes().unwrap();
        close(amp.a, a, 1e-13);
        close(amp.b, b, 1e-12);
    }
}

/// The measure from its closed form against the normalization read off the
/// asymptotic amplitudes: 2π|A|² below the barrier,
/// π(|A|² + |B|² + (s/k)|C|²) above.
#[test]
fn measure_matches_amplitude_normalization() {
    let cases = [
        (0.7, 1.0, 1.2, 2.0810174682945029),
        (0.7, 1.0, 3.0, 4.6832137646415133),
        (0.5, 0.25, 1.2, 3.5499521208994145),
        (2.5, 1.0, -2.7, 4.221040830091338),
        (0.7, 1.0, 1.5, 0.93240082802433568),
        (0.3, 0.25, 0.9, 1.1268854098931213),
        (1.5, 0.5, 4.0, 5.8773816800251946),
    ];
    for (alpha, beta, k, want) in cases {
        let got = measure(&RosenMorse::new(alpha, beta).unwrap(), k).unwrap();
        assert!((got - want).abs() <= 1e-12 * want, "({alpha}, {beta}, {k}): {got} vs {want}");
    }
}

/// Near k = 0 the connection formula sits next to its degenerate point.
#[test]
fn small_wavenumber_states() {
    let cases = [
        (0.7, 1.0, 1e-3, -3.0, c(6.5325737267600183, 0.0022640176208980155)),
        (0.7, 1.0, 1e-5, -3.0, c(6.5325895762285185, 0.000022640230232681076)),
        (0.7, 1.0, 1e-4, -0.5, c(2.0468672845299863, 0.000070939014391019958)),
        (1.3, 0.0, 2e-5, -2.0, c(-0.18277128070647018, 0.000028278098985666402)),
        (0.7, 1.0, -1e-4, -3.0, c(6.5325894193029677, -0.00022640229697792552)),
    ];
    for (alpha, beta, k, x, want) in cases {
        let got = RosenMorse::new(alpha, beta).unwrap().scattering_state(k, x).unwrap();
        close(got, want, 1e-10);
    }
}
