use thiserror::Error;

/// Errors shared by every module in this crate.
#[derive(Debug, Error)]
#[non_exhaustive]
pub enum Error {
    #[error("invalid agent id {id:?}: {reason}")]
    InvalidAgentId { id: String, reason: &'static str },

    #[error("unknown agent '{0}'")]
    UnknownAgent(String),

    /// Two operands (profile/network/family/group) were built over
    /// different agent sets.
    #[error("operands belong to different agent sets")]
    DomainMismatch,

    /// Text input rejected while reading a network, profile, schedule,
    /// or assignment file. `line` is 1-based; callers that know the file
    /// name prepend it.
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// An exhaustive sweep was requested above its configured agent cap.
    #[error("{what} enumerates exhaustively and is capped at {limit} agents; this network has {n}")]
    Infeasible {
        what: &'static str,
        n: usize,
        limit: usize,
    },

    #[error("{0}")]
    Config(String),

    /// A recorded trace does not replay. `step` is 1-based; step 0 refers
    /// to the outcome record.
    #[error("trace defect at step {step}: {reason}")]
    TraceDefect { step: usize, reason: String },
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
