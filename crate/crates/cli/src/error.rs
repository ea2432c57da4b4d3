use canrel_core::Error as CoreError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("cannot read document: {0}")]
    Io(String),
    #[error("malformed JSON: {0}")]
    Syntax(String),
    #[error("{0}")]
    Schema(String),
    #[error("{0}")]
    Reference(String),
    #[error("{context}: {source}")]
    Math {
        context: String,
        #[source]
        source: CoreError,
    },
}

impl CliError {
    pub fn math(context: impl Into<String>, source: CoreError) -> Self {
        CliError::Math {
            context: context.into(),
            source,
        }
    }

    /// 1 for anything wrong with the invocation or the document's shape, 2
    /// for a mathematical precondition, 3 for an unsupported request.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Math { source, .. } if source.is_unsupported() => 3,
            CliError::Math { .. } => 2,
            _ => 1,
        }
    }
}
