use std::fmt;

/// Exit 2 for anything the caller got wrong, 1 when a check ran and failed.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failed(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "error: {m}"),
            CliError::Failed(m) => write!(f, "verification failed: {m}"),
        }
    }
}

impl From<hlbranch::Error> for CliError {
    fn from(e: hlbranch::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Rejects work above a desk-scale bound unless `--force` was given.
pub fn guard(force: bool, cost: f64, limit: f64, what: &str) -> CliResult<()> {
    if force || cost <= limit {
        Ok(())
    } else {
        Err(usage(format!(
            "{what} needs about {cost:.3e} operations, above the desk-scale limit {limit:.0e}; lower the bound or pass --force"
        )))
    }
}
