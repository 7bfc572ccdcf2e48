use nfold::diffring::RingError;
use nfold::reduction::ReductionError;
use nfold::susy::SusyError;

/// Process exit codes.
pub mod exit {
    pub const PASS: i32 = 0;
    pub const FAILURE: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const EXHAUSTED: i32 = 3;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("search exhausted for J_{k} (derivative bound {bound}): {reason}")]
    Exhausted { k: u32, bound: u32, reason: String },
    #[error("{0}")]
    Engine(String),
    #[error("bad golden entry {id}: {reason}")]
    Corpus { id: String, reason: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => exit::USAGE,
            CliError::Exhausted { .. } => exit::EXHAUSTED,
            _ => exit::FAILURE,
        }
    }
}

impl From<ReductionError> for CliError {
    fn from(e: ReductionError) -> Self {
        match e {
            ReductionError::SearchExhausted { k, bound, reason } => {
                CliError::Exhausted { k, bound, reason }
            }
            ReductionError::Susy(s) => s.into(),
            other => CliError::Engine(other.to_string()),
        }
    }
}

impl From<SusyError> for CliError {
    fn from(e: SusyError) -> Self {
        match e {
            SusyError::InvalidN { .. } | SusyError::UnknownParameter(_) => {
                CliError::Usage(e.to_string())
            }
            other => CliError::Engine(other.to_string()),
        }
    }
}

impl From<RingError> for CliError {
    fn from(e: RingError) -> Self {
        CliError::Engine(e.to_string())
    }
}
