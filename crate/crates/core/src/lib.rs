//! Generalized Legendre functions D^{μ,η}_ν and the scattering, bound-state
//! and spectral theory of the Rosen-Morse potential built on them.
//!
//! The crate is `no_std` with `alloc`. Units are ħ = 2m = 1 throughout.

#![no_std]
// negated comparisons reject NaN; coefficient tables keep their published digits
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod error;
pub mod genleg;
pub mod oracle;
pub mod quad;
pub mod rosenmorse;
pub mod scatter;
pub mod specfun;
pub mod spectral;

pub use error::{Error, GammaFactor, Result};
pub use genleg::{legendre_p, AsymptoticAmplitudes, ChannelParams, GenLegendre, Regime};
pub use rosenmorse::{energy_of_k, BoundState, RosenMorse};
pub use scatter::{reflection, scatter, transmission, ScatterResult};
pub use specfun::ComplexValue;
