use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A dual quaternion used as a pose is too far from unit norm to be repaired.
    #[error("invalid pose: unit defect {defect:e} exceeds tolerance")]
    InvalidPose { defect: f64 },

    /// An operation received a value outside its mathematical domain
    /// (e.g. a non-pure element where a pure one is required).
    #[error("domain error: {0}")]
    Domain(String),

    /// Malformed caller input: wrong lengths, non-finite numbers, bad ranges.
    #[error("invalid input: {0}")]
    Input(String),

    /// A link of a serial chain violates one of its invariants.
    /// `link` is 1-based, matching joint numbering.
    #[error("link {link}: {reason}")]
    Link { link: usize, reason: String },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("inertia matrix is not safely positive definite (condition estimate {condition:e})")]
    IllConditioned { condition: f64 },

    #[error("robot description: {0}")]
    Description(String),
}
