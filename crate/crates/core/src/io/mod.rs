//! Run-configuration documents and CSV result tables.

mod config;
mod table;

pub use config::{parse_config, ConfigError, ConfigViolation, Mode, RunConfig, StateSpec};
pub use table::{format_float, Cell, ResultTable};
