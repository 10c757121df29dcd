pub mod canonical;
pub mod error;
pub mod metrics;
pub mod numkernel;
pub mod optimal;
pub mod properties;
pub mod qstate;
pub mod sim;

pub use error::{Error, Result};
