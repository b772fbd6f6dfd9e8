use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// Parameters violate a representation's genericity preconditions
    /// (coinciding spectral parameters, vanishing weights, ...).
    #[error("singular parameter configuration: {0}")]
    Singular(String),

    /// Malformed or inconsistent input (bad JSON, incompatible model and
    /// representation, basis that is not a basis, ...).
    #[error("invalid input: {0}")]
    Invalid(String),

    /// A size cap was exceeded (brute-force enumeration, quantum-space size).
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),

    /// Arithmetic outside the domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
