use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("state space has {states} states, cap is {cap}")]
    StateSpaceTooLarge { states: String, cap: usize },

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("coordinate index {index} out of range for {len} coordinates")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid coordinate set: {0}")]
    InvalidCoordSet(String),

    #[error("invalid decision problem: {0}")]
    InvalidProblem(String),

    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("variable index 0 at byte {position}; variables are numbered from x1")]
    VarIndexZero { position: usize },

    #[error("assignment has {got} values, formula has {expected} variables")]
    LengthMismatch { expected: usize, got: usize },

    #[error("{vars} variables exceeds the cap of {cap}")]
    TooManyVariables { vars: usize, cap: usize },

    #[error("split {exists}+{forall} does not match {vars} formula variables")]
    SplitMismatch {
        exists: usize,
        forall: usize,
        vars: usize,
    },

    #[error("invalid tree utility: {0}")]
    InvalidTree(String),

    #[error("expressive gap is empty; amortization threshold is undefined")]
    ZeroGap,

    #[error("total hardness is zero; efficiency is undefined")]
    DegenerateSplit,

    #[error("axis sets do not share a universe: {0}")]
    UniverseMismatch(String),

    #[error("arithmetic overflow: {0}")]
    Overflow(String),

    #[error("invalid document: {0}")]
    Format(String),
}

impl Error {
    /// Stable machine-readable name, used in structured error output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::StateSpaceTooLarge { .. } => "StateSpaceTooLarge",
            Error::InvalidState(_) => "InvalidState",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::InvalidCoordSet(_) => "InvalidCoordSet",
            Error::InvalidProblem(_) => "InvalidProblem",
            Error::Parse { .. } => "ParseError",
            Error::VarIndexZero { .. } => "VarIndexZero",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::TooManyVariables { .. } => "TooManyVariables",
            Error::SplitMismatch { .. } => "SplitMismatch",
            Error::InvalidTree(_) => "InvalidTree",
            Error::ZeroGap => "ZeroGap",
            Error::DegenerateSplit => "DegenerateSplit",
            Error::UniverseMismatch(_) => "UniverseMismatch",
            Error::Overflow(_) => "Overflow",
            Error::Format(_) => "FormatError",
        }
    }
}
