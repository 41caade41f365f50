use std::fmt;
use std::path::{Path, PathBuf};

use acqlab::Error;

#[derive(Debug)]
pub enum Failure {
    Invariant(String),
    Config(String),
    Io(PathBuf, std::io::Error),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Invariant(_) => 1,
            Failure::Config(_) => 2,
            Failure::Io(..) => 3,
        }
    }

    pub fn io(path: &Path) -> impl FnOnce(std::io::Error) -> Failure + '_ {
        move |e| Failure::Io(path.to_path_buf(), e)
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Invariant(m) => write!(f, "invariant failure: {m}"),
            Failure::Config(m) => write!(f, "config error: {m}"),
            Failure::Io(p, e) => write!(f, "{}: {e}", p.display()),
        }
    }
}

/// Bad parameters are config errors; anything the library rejects while
/// running a well-formed request is an invariant failure.
impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidProbability(_)
            | Error::InvalidUniformity { .. }
            | Error::InvalidDelta(_)
            | Error::InvalidArity { .. }
            | Error::NotDivisible { .. }
            | Error::LedgerTooLarge { .. }
            | Error::SearchBudgetExceeded(_)
            | Error::Unacquaintable { .. } => Failure::Config(e.to_string()),
            _ => Failure::Invariant(e.to_string()),
        }
    }
}
