use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum LabError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{path}:{line}: {msg}")]
    Parse { path: String, line: usize, msg: String },
    #[error("limits exceeded: {0}")]
    Limits(String),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("internal error: {0}")]
    Internal(String),
}

impl LabError {
    /// 1 usage, 2 parse, 3 limits, 4 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            LabError::Usage(_) | LabError::Internal(_) => 1,
            LabError::Parse { .. } => 2,
            LabError::Limits(_) => 3,
            LabError::Io { .. } => 4,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> LabError {
        LabError::Io {
            path: path.into(),
            source,
        }
    }
}

impl From<bookramsey::Error> for LabError {
    fn from(e: bookramsey::Error) -> Self {
        match e {
            bookramsey::Error::Input(m) => LabError::Usage(m),
            bookramsey::Error::Limits(m) => LabError::Limits(m),
            bookramsey::Error::Internal(m) => LabError::Internal(m),
        }
    }
}

pub type LabResult<T> = Result<T, LabError>;
