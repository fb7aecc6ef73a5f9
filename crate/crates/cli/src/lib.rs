//! Library side of the `eids` command: descriptors, dispatch, reports and
//! exit statuses.

pub mod commands;
pub mod descriptor;
pub mod render;
pub mod status;

pub use commands::{run, Command, Mode, Outcome, Report, RunConfig};
pub use descriptor::VarietyDescriptor;
pub use status::{Failure, Status};
