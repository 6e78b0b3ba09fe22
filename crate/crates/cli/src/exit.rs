use std::process::ExitCode;

/// Process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    False = 1,
    Unknown = 2,
    Usage = 3,
    Runtime = 4,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }
}

impl From<ExitStatus> for ExitCode {
    fn from(status: ExitStatus) -> ExitCode {
        ExitCode::from(status as u8)
    }
}

impl From<smtl_core::Verdict> for ExitStatus {
    fn from(v: smtl_core::Verdict) -> ExitStatus {
        match v {
            smtl_core::Verdict::True => ExitStatus::Success,
            smtl_core::Verdict::False => ExitStatus::False,
            smtl_core::Verdict::Unknown => ExitStatus::Unknown,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Runtime(String),
}

impl CliError {
    pub fn status(&self) -> ExitStatus {
        match self {
            CliError::Usage(_) => ExitStatus::Usage,
            CliError::Runtime(_) => ExitStatus::Runtime,
        }
    }
}

pub fn usage(msg: impl std::fmt::Display) -> CliError {
    CliError::Usage(msg.to_string())
}

pub fn runtime(msg: impl std::fmt::Display) -> CliError {
    CliError::Runtime(msg.to_string())
}
