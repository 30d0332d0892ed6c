use thiserror::Error;

/// Errors raised by library operations.
///
/// Every variant maps to a stable machine-readable code (see [`Error::code`])
/// which the command-line front end reports alongside the message.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid labels: {0}")]
    Labels(String),
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("no vertex at path {0:?}")]
    NoSuchVertex(String),
    #[error("site {0:?} is not alpha-type")]
    NotAlphaType(String),
    #[error("strand count mismatch: {0} vs {1}")]
    StrandMismatch(usize, usize),
    #[error("free-group image exceeded {0} letters")]
    WordTooLong(usize),
    #[error("incompatible morphisms: {0}")]
    Incompatible(String),
    #[error("variable sets differ")]
    VariableMismatch,
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("leading term is not a unit monomial: {0}")]
    NoLeadingMonomial(String),
    #[error("value not representable exactly: {0}")]
    NotRepresentable(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("point lies on the branch cut for {0}")]
    OnBranchCut(String),
    #[error("expression is not translation invariant: {0}")]
    NotTranslationInvariant(String),
    #[error("path hits the diagonal z{0} = z{1}")]
    HitsDiagonal(usize, usize),
    #[error("adaptive refinement exceeded {0} samples")]
    SampleCap(usize),
    #[error("resonance: shifted indicial polynomial vanishes at index {0}")]
    Resonance(usize),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("json: {0}")]
    Json(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "E_PARSE",
            Error::Labels(_) => "E_LABELS",
            Error::IndexOutOfRange { .. } => "E_INDEX",
            Error::NoSuchVertex(_) => "E_VERTEX",
            Error::NotAlphaType(_) => "E_NOT_ALPHA",
            Error::StrandMismatch(..) => "E_STRANDS",
            Error::WordTooLong(_) => "E_WORD_CAP",
            Error::Incompatible(_) => "E_INCOMPATIBLE",
            Error::VariableMismatch => "E_VARS",
            Error::UnknownVariable(_) => "E_UNKNOWN_VAR",
            Error::NoLeadingMonomial(_) => "E_LEADING",
            Error::NotRepresentable(_) => "E_REPRESENT",
            Error::DivisionByZero => "E_DIV_ZERO",
            Error::OnBranchCut(_) => "E_CUT",
            Error::NotTranslationInvariant(_) => "E_NOT_INVARIANT",
            Error::HitsDiagonal(..) => "E_DIAGONAL",
            Error::SampleCap(_) => "E_SAMPLE_CAP",
            Error::Resonance(_) => "E_RESONANCE",
            Error::Invalid(_) => "E_INVALID",
            Error::Json(_) => "E_JSON",
        }
    }

    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
