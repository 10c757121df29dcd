//! Teleportation simulated directly, used as an independent check on the
//! closed-form fidelity results, plus brute-force searches for the
//! constrained optima.

pub mod channel;
pub mod grid;
pub mod quadrature;
pub mod stats;

pub use channel::{teleport_channel, BlochChannel, BlochInput, TeleportProtocol};
pub use grid::{grid_verify_chsh_optimum, grid_verify_linear_entropy_optimum, ChshGrid, LinearEntropyGrid};
pub use quadrature::{sphere_monomial_average, QuadratureRule};
pub use stats::{
    fidelity_stats, fidelity_stats_mc, fidelity_stats_mc_with, fidelity_stats_with,
    optimal_protocol_stats, FidelityStats, StatsMethod,
};
