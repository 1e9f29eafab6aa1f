use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    UnknownIdentifier(String),
    WrongArity { name: String, expected: usize, found: usize },
    NonConstantExponent,
}

/// Parse failure with the byte offset where it was detected.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{} at offset {offset}", describe(.kind))]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
}

fn describe(kind: &ParseErrorKind) -> String {
    match kind {
        ParseErrorKind::Syntax(m) => format!("syntax error: {m}"),
        ParseErrorKind::UnknownIdentifier(n) => format!("unknown identifier '{n}'"),
        ParseErrorKind::WrongArity { name, expected, found } => {
            format!("'{name}' takes {expected} argument(s), found {found}")
        }
        ParseErrorKind::NonConstantExponent => "exponent must not depend on coordinates".into(),
    }
}

impl ParseError {
    pub fn new(offset: usize, kind: ParseErrorKind) -> Self {
        ParseError { offset, kind }
    }

    pub fn syntax(offset: usize, msg: impl Into<String>) -> Self {
        ParseError::new(offset, ParseErrorKind::Syntax(msg.into()))
    }
}

/// Evaluation outside a function's domain.
#[derive(Clone, Debug, PartialEq, Error)]
#[error("domain error in '{node}' at {point:?}: {reason}")]
pub struct EvalError {
    pub node: String,
    pub point: Vec<f64>,
    pub reason: String,
}
