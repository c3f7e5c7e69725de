use thiserror::Error;

/// Everything that can go wrong across the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A parameter violates its model's preconditions. The message names the
    /// offending parameter.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A boundary-matching system is numerically singular (condition number
    /// above 1e12), signalling a degenerate parameter set.
    #[error("singular matching system (condition number {condition:.3e})")]
    SingularMatching { condition: f64 },

    /// Energy too close to a threshold for a phase derivative to make sense.
    #[error("energy {energy} degenerate with threshold {threshold}")]
    DegenerateEnergy { energy: f64, threshold: f64 },

    /// A closed-form expression has a vanishing denominator at this point.
    #[error("singular term: |q^2 - k^2| = {magnitude:.3e} below 1e-9")]
    SingularTerm { magnitude: f64 },

    /// Parameters outside the regime where the formula applies.
    #[error("out of regime: {0}")]
    OutOfRegime(String),

    /// Inelastic channel closed: the two-channel model requires E > delta.
    #[error("closed inelastic channel: energy {energy} <= threshold {delta}")]
    ClosedChannel { energy: f64, delta: f64 },

    /// Phase unwrapping could not resolve a jump even after full midpoint
    /// refinement; usually a genuine discontinuity such as a transmission
    /// zero.
    #[error("unresolvable phase jump near parameter value {at}")]
    UnresolvableJump { at: f64 },

    /// The adaptive differentiator never reached the requested residual.
    #[error("noisy function: best derivative residual {residual:.3e}")]
    NoisyFunction { residual: f64 },

    /// Too few samples inside a fit window.
    #[error("insufficient samples in window: needed {needed}, got {got}")]
    InsufficientSamples { needed: usize, got: usize },

    /// The coarse scan found more than one interior maximum.
    #[error("function is not unimodal on the bracket")]
    NotUnimodal,

    /// Doubling quadrature nodes still moves the result.
    #[error("quadrature not converged: relative change {rel_change:.3e}")]
    QuadratureNotConverged { rel_change: f64 },

    /// The packet intensity maximum fell on the edge of the time grid.
    #[error("packet peak at time-grid boundary; auto-ranging failed")]
    PeakAtBoundary,

    /// The transmitted packet is too distorted for a peak comparison.
    #[error("severe packet distortion: width ratio {width_ratio:.2}")]
    SevereDistortion { width_ratio: f64 },
}

impl Error {
    pub fn invalid(what: impl Into<String>) -> Self {
        Error::InvalidInput(what.into())
    }
}
