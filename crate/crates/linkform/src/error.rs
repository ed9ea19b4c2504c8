use thiserror::Error;

/// Errors raised by the library. Every variant maps to a stable reason code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinkError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("field error: {0}")]
    Field(String),
    #[error("degenerate linking form: {0}")]
    Degenerate(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("not representable: total signature jump {0}")]
    NotRepresentable(i64),
    #[error("root not exactly identifiable: {0}")]
    InexactRoot(String),
    #[error("truncation order too small: {0}")]
    Truncation(String),
    #[error("refinement limit reached: {0}")]
    Refinement(String),
    #[error("identity violated: {0}")]
    Identity(String),
}

impl LinkError {
    /// Machine-readable reason tag.
    pub fn code(&self) -> &'static str {
        match self {
            LinkError::Parse(_) => "parse",
            LinkError::Field(_) => "field",
            LinkError::Degenerate(_) => "degenerate",
            LinkError::Precondition(_) => "precondition",
            LinkError::NotRepresentable(_) => "not_representable",
            LinkError::InexactRoot(_) => "inexact_root",
            LinkError::Truncation(_) => "truncation",
            LinkError::Refinement(_) => "refinement",
            LinkError::Identity(_) => "identity",
        }
    }

    /// Process exit status used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            LinkError::Parse(_) => 2,
            LinkError::Identity(_) => 4,
            _ => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, LinkError>;

pub(crate) fn pre<T>(msg: impl Into<String>) -> Result<T> {
    Err(LinkError::Precondition(msg.into()))
}
