//! Correlated coherent states (CCS) of a quantum oscillator.
//!
//! A CCS is a complex Gaussian wavefunction whose phase correlates coordinate
//! and momentum fluctuations. The crate builds it in three equivalent
//! parametrizations (phase angle `alpha`, Bogoliubov `(tau, phi)`, temperature),
//! evaluates its second moments in closed form, and cross-checks every closed
//! form against independent numerical oracles (quadrature, DFT, and the
//! annihilation-operator ODE residual).
//!
//! Units: the mass is fixed to 1; `hbar` and `k_b` are configurable and
//! default to 1.

pub mod cli;
pub mod error;
pub mod moments;
pub mod oracle;
pub mod states;

pub use error::{CcsError, Result};
pub use moments::{MomentSet, PhaseSquare, UncertaintyReport};
pub use states::{AlphaState, BogoliubovState, Constants, GaussianProfile, ThermalSpec, WaveSample, Wavefunction};
