//! Ground states on the Nehari set, global minimizers, and numerical
//! witnesses of the mountain-pass geometry.

mod config;
mod descent;
mod geometry;
mod init;
mod nehari;
mod report;

pub use config::{GridConfig, Mode, SolverConfig};
pub use descent::{solve, solve_sublinear, solve_superlinear};
pub use geometry::{
    coercivity_check, coercivity_margin, embedding_levels, mountain_pass_probe, CoercivityConstants,
    CoercivityReport, EmbeddingRow, MountainPass,
};
pub use init::Bump;
pub use nehari::nehari_project;
pub use report::GroundStateReport;
