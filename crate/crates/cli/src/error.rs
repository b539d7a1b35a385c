use std::fmt;

/// CLI-level failures, each mapped to an exit code and a machine-readable
/// error report.
#[derive(Debug)]
pub enum CliError {
    /// Unreadable or unwritable file.
    Io { path: String, source: std::io::Error },
    /// Malformed document: bad JSON/CSV, missing fields, inconsistent shapes.
    Schema { message: String },
    /// Structurally fine input that fails domain validation.
    Invalid { message: String },
    /// Requested size exceeds the configured leaf cap.
    CapExceeded { message: String },
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_CAP: i32 = 3;

impl CliError {
    pub fn schema(message: impl Into<String>) -> Self {
        CliError::Schema {
            message: message.into(),
        }
    }

    pub fn invalid(message: impl Into<String>) -> Self {
        CliError::Invalid {
            message: message.into(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "io",
            CliError::Schema { .. } => "schema",
            CliError::Invalid { .. } => "invalid",
            CliError::CapExceeded { .. } => "cap_exceeded",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::CapExceeded { .. } => EXIT_CAP,
            _ => EXIT_VALIDATION,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io { path, source } => write!(f, "cannot access {path}: {source}"),
            CliError::Schema { message } => write!(f, "{message}"),
            CliError::Invalid { message } => write!(f, "{message}"),
            CliError::CapExceeded { message } => write!(f, "{message}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<chaindev::Error> for CliError {
    fn from(err: chaindev::Error) -> Self {
        match err {
            chaindev::Error::CapExceeded { .. } => CliError::CapExceeded {
                message: err.to_string(),
            },
            _ => CliError::Invalid {
                message: err.to_string(),
            },
        }
    }
}
