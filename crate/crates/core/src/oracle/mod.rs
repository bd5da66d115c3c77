//! Numerical oracles for the closed forms in [`crate::moments`].
//!
//! Nothing here reads a closed-form moment: quadrature integrates the sampled
//! wavefunction, the DFT works from grid samples alone, and the residual
//! check differentiates the wavefunction by finite differences.

mod fourier;
mod quadrature;
mod residual;

pub use fourier::{momentum_distribution, GridWavefunction};
pub use quadrature::{
    composite_simpson, integrate, quad_correlator, quad_norm, quad_variance_p, quad_variance_q,
    QuadratureConfig,
};
pub use residual::{annihilation_residual, ode_residual};
