//! Library surface of the planner CLI, split out so integration tests can
//! drive the commands and file formats directly.

pub mod commands;
pub mod files;
pub mod report;
