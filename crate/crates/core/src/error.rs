use thiserror::Error;

use crate::diagram::ValidationReport;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid diagram: {0}")]
    Invalid(ValidationReport),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("crossing {0} does not exist")]
    NoSuchCrossing(usize),
    #[error("crossing {0} is not classical")]
    NotClassical(usize),
    #[error("crossing {0} is not singular")]
    NotSingular(usize),
    #[error("diagram contains singular crossings")]
    SingularPresent,
    #[error("diagram contains virtual crossings")]
    VirtualPresent,
    #[error("state sum over {crossings} crossings exceeds the cap of {cap}")]
    TooManyCrossings { crossings: usize, cap: usize },
    #[error("expected exactly {expected} singular crossing(s), found {found}")]
    WrongSingularCount { expected: usize, found: usize },
    #[error("singular closure needs diagram height 1, found {0}")]
    HeightNotOne(usize),
    #[error("operation requires a spherical diagram")]
    NotSpherical,
    #[error("shortcut does not join the leg face to the head face")]
    BadShortcut,
    #[error("move site is not applicable to this diagram")]
    StaleMove,
    #[error("could not build diagram: {0}")]
    Construction(String),
}

impl Error {
    /// Variant name, used as a stable error code.
    pub fn name(&self) -> &'static str {
        match self {
            Error::Invalid(_) => "Invalid",
            Error::Parse { .. } => "Parse",
            Error::NoSuchCrossing(_) => "NoSuchCrossing",
            Error::NotClassical(_) => "NotClassical",
            Error::NotSingular(_) => "NotSingular",
            Error::SingularPresent => "SingularPresent",
            Error::VirtualPresent => "VirtualPresent",
            Error::TooManyCrossings { .. } => "TooManyCrossings",
            Error::WrongSingularCount { .. } => "WrongSingularCount",
            Error::HeightNotOne(_) => "HeightNotOne",
            Error::NotSpherical => "NotSpherical",
            Error::BadShortcut => "BadShortcut",
            Error::StaleMove => "StaleMove",
            Error::Construction(_) => "Construction",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
