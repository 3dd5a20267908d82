use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Vector or matrix dimensions do not agree.
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    /// An exhaustive-enumeration guard was exceeded.
    #[error("enumeration guard exceeded: {0}")]
    Guard(String),
    /// A parameter is outside its valid domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    /// An estimate cannot be formed from the available counts.
    #[error("degenerate estimate: {0}")]
    DegenerateEstimate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
