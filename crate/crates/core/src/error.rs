use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max |m - m^dagger| = {deviation:.3e})")]
    NonHermitian { deviation: f64 },

    #[error("trace is {trace:.12} instead of 1")]
    TraceNotOne { trace: f64 },

    #[error("matrix is not positive semidefinite (worst eigenvalue {worst_eigenvalue:.6e})")]
    NotPositive { worst_eigenvalue: f64 },

    #[error("matrix has non-finite entries")]
    NonFinite,

    #[error("{name} = {value} is out of range: {name} must lie in {interval}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        interval: &'static str,
    },

    #[error("claimed {property} = {claimed} but the state has {measured}")]
    MismatchedProperty {
        property: &'static str,
        claimed: f64,
        measured: f64,
    },

    #[error("state is not entangled (concurrence {concurrence:.3e})")]
    NotEntangled { concurrence: f64 },

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("quadrature rule of strength {strength} cannot integrate degree {required} exactly")]
    DesignTooWeak { strength: u32, required: u32 },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
