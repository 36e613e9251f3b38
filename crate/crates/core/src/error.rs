//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A caller-supplied value violates a documented invariant.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A contour passes through (or too close to) a zero; no certificate can
    /// be issued from it.
    #[error("contour too close to a zero: min modulus {min_modulus:.3e} below 1e-12 of scale {scale:.3e}")]
    ContourTooClose { min_modulus: f64, scale: f64 },

    /// An iterative procedure hit its budget before meeting its tolerance.
    #[error("{what} did not converge within its budget")]
    NonConvergent { what: &'static str },

    /// Adaptive quadrature still moved after the node cap was reached.
    #[error("quadrature not converged: relative change {change:.3e} at {nodes} nodes")]
    QuadratureNotConverged { change: f64, nodes: usize },

    /// The ladder construction requires `inf w = 0`.
    #[error("weight has positive infimum {inf}; no boundary ladder exists")]
    WeightNotVanishing { inf: f64 },

    /// The requested ladder depth is outside what the active arithmetic can
    /// certify.
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    /// No admissible term index exists within the built series.
    #[error("no admissible term index n <= {n_terms} for target modulus {target_modulus:.6e}")]
    BudgetExceeded { target_modulus: f64, n_terms: usize },

    /// A numeric certificate check failed; never silently ignored.
    #[error("certification failed: {0}")]
    CertificationFailed(String),

    /// A seeded search ran out of candidates.
    #[error("search exhausted after {attempts} candidates")]
    SearchExhausted { attempts: usize },

    /// A linear functional annihilates the constant function 1.
    #[error("normalization failed: the functional annihilates the constant function 1")]
    NormalizationFailure,

    /// An operator table violates the nowhere-vanishing / self-map hypotheses.
    #[error("operator hypothesis violated: {reason}")]
    HypothesisViolated {
        reason: String,
        report: Box<crate::gkz::WcoReport>,
    },
}
