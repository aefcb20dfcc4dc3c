//! Command-line front end for supercharacter computations.

pub mod check;
pub mod error;
pub mod spec;
pub mod table;

pub use error::{CliError, CliResult};
pub use spec::Spec;
pub use table::SuperTable;

/// Enumeration cap for tables and orbit partitions.
pub const DEFAULT_CAP: u64 = 1 << 20;
/// Group-order cap for the brute-force oracle.
pub const DEFAULT_ORACLE_CAP: u64 = 1 << 12;
