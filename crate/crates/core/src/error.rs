use std::fmt;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Lexical,
    Syntax,
    UndeclaredVariable,
    TemporalInInit,
    EmptyInterval,
    Type,
    Declaration,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ParseErrorKind::Lexical => "lexical error",
            ParseErrorKind::Syntax => "syntax error",
            ParseErrorKind::UndeclaredVariable => "undeclared variable",
            ParseErrorKind::TemporalInInit => "temporal operator in initial formula",
            ParseErrorKind::EmptyInterval => "empty interval",
            ParseErrorKind::Type => "type error",
            ParseErrorKind::Declaration => "declaration error",
        };
        f.write_str(s)
    }
}

/// Parse failure with a 1-based line/column pointing inside the offending token.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{line}:{col}: {kind}: {message}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub line: usize,
    pub col: usize,
    pub message: String,
}

/// Which resource limit was hit.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum BudgetError {
    #[error("node budget of {0} exhausted")]
    Nodes(usize),
    #[error("more than {0} minimal coverings at one node")]
    Coverings(usize),
    #[error("environment valuation space exceeds {0}")]
    EnvSpace(u64),
    #[error("game arena needs {needed} edges, budget is {limit}")]
    Oracle { needed: u64, limit: u64 },
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Budget(#[from] BudgetError),
    #[error("the tableau is not open")]
    NotOpen,
    #[error("invalid strategy: {0}")]
    Strategy(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
