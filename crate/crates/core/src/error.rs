use thiserror::Error;

pub type Result<T> = std::result::Result<T, CcsError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CcsError {
    /// A parameter lies outside the domain of the quantity it describes.
    #[error("{0}")]
    Domain(String),

    #[error("non-finite input for {0}")]
    NonFinite(&'static str),

    /// Hyperbolic or secant factors would leave the representable range.
    #[error("parameter overflow: {0}")]
    ParameterOverflow(String),

    #[error("temperature is zero; construct the cold vacuum with alpha = 0 instead")]
    DegenerateTemperature,

    #[error("alpha = 0 is the cold vacuum; its temperature is exactly zero")]
    ColdVacuumLimit,

    /// Mixing parametrizations requires the stiffness to equal the frequency.
    #[error("gamma ({gamma}) must equal omega ({omega}) when mixing parametrizations")]
    ParameterMismatch { gamma: f64, omega: f64 },

    #[error("quadrature did not converge after {refinements} refinements (last relative change {last_change:e})")]
    NonConvergence { refinements: u32, last_change: f64 },

    #[error("momentum grid half-width {half_width} is below 6 momentum standard deviations ({sigma_p})")]
    GridTooCoarse { half_width: f64, sigma_p: f64 },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}
