//! Monte Carlo experiments, file formats and the command line on top of
//! the `bookramsey` core.

pub mod cli;
pub mod error;
pub mod experiment;
pub mod io;

pub use error::{LabError, LabResult};
