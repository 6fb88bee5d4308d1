use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Unparseable or invalid input, exit code 2.
    Input,
    /// Lower bound above upper bound or a failed self-check, exit code 3.
    Inconsistency,
    /// A precondition of a theorem does not hold, exit code 4.
    Hypothesis,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub kind: ErrorKind,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError {
            kind: ErrorKind::Input,
            message: message.into(),
        }
    }

    pub fn inconsistency(message: impl Into<String>) -> Self {
        CliError {
            kind: ErrorKind::Inconsistency,
            message: message.into(),
        }
    }

    pub fn hypothesis(message: impl Into<String>) -> Self {
        CliError {
            kind: ErrorKind::Hypothesis,
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.kind {
            ErrorKind::Input => 2,
            ErrorKind::Inconsistency => 3,
            ErrorKind::Hypothesis => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let label = match self.kind {
            ErrorKind::Input => "input error",
            ErrorKind::Inconsistency => "inconsistency",
            ErrorKind::Hypothesis => "hypothesis violated",
        };
        write!(f, "{label}: {}", self.message)
    }
}

impl std::error::Error for CliError {}
