//! Complex special functions: gamma, log-gamma, gamma ratios and the Gauss
//! hypergeometric function on the real segment [0, 1).

mod gamma;
mod hyp2f1;
mod ratio;

pub use gamma::{gamma, log_gamma, nonpositive_integer, recip_gamma, MAX_LOG, POLE_TOL};
pub use hyp2f1::{
    hyp2f1, hyp2f1_connection, hyp2f1_derivative, hyp2f1_expansion, hyp2f1_series, ConnectionTerm,
    Expansion, HyperParams, SeriesControl, UnitArg, DEGENERACY_TOL,
};
pub use ratio::{gamma_ratio, log_gamma_ratio, GammaArg};

/// Carrier for every complex quantity in the crate.
pub type ComplexValue = num_complex::Complex64;
