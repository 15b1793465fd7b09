//! Batch front end for the great-circle cloning simulations.
//!
//! Subcommands map onto the functions here: [`verify::run`],
//! [`commands::cmd_clone`], [`commands::cmd_bound_sweep`] and
//! [`commands::cmd_fidelity_sweep`].

pub mod commands;
pub mod config;
pub mod csv;
pub mod verify;

pub use commands::{cmd_bound_sweep, cmd_clone, cmd_fidelity_sweep, FidelityRow, SweepRow};
pub use config::{CliError, RunConfig};
