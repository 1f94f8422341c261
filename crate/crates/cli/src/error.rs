use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    /// The requested bound state does not exist for these parameters.
    #[error("{0}")]
    Absent(String),
    #[error("{0}")]
    Numeric(String),
    #[error("verification failed")]
    Verification,
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Absent(_) => 3,
            CliError::Numeric(_) | CliError::Verification | CliError::Io(_) => 1,
        }
    }
}

impl From<qtomo_core::Error> for CliError {
    fn from(e: qtomo_core::Error) -> Self {
        use qtomo_core::Error as E;
        match e {
            E::InvalidParameter { .. } | E::NonFinite(_) | E::DegenerateFrame => CliError::Usage(e.to_string()),
            _ => CliError::Numeric(e.to_string()),
        }
    }
}
