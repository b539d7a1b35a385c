//! Library half of the CLI: input/output documents, generators, and the
//! command implementations behind the `chaindev` binary.

pub mod commands;
pub mod error;
pub mod generate;
pub mod input;
pub mod output;

pub use error::{CliError, EXIT_CAP, EXIT_OK, EXIT_VALIDATION};

/// Leaf-cap override, read from `CHAINDEV_LEAF_CAP` when set.
pub fn leaf_cap() -> Result<u64, CliError> {
    match std::env::var("CHAINDEV_LEAF_CAP") {
        Ok(raw) => raw.parse().map_err(|_| {
            CliError::schema(format!("CHAINDEV_LEAF_CAP must be an integer, got {raw:?}"))
        }),
        Err(_) => Ok(chaindev::DEFAULT_LEAF_CAP),
    }
}
