//! Command-line front end for `clifford-lab-core`: manifold files, the
//! built-in catalog, suite selection and report rendering.

pub mod catalog;
pub mod commands;
pub mod manifest;
pub mod render;

pub use commands::{run, Cli, Outcome};
