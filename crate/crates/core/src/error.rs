use thiserror::Error;

/// Errors raised by the library.
///
/// Every variant maps onto a stable machine-readable code (see [`Error::code`])
/// that the command line front end echoes into its reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot factor zero")]
    FactorZero,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("valuation of zero undefined")]
    ValuationOfZero,
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("curve mismatch: {0}")]
    CurveMismatch(String),
    #[error("point not on curve: {0}")]
    OffCurve(String),
    #[error("l must be prime to characteristic")]
    TorsionCharacteristic,
    #[error("not a torsion point: {0}")]
    NotTorsion(String),
    #[error("degree overflow")]
    DegreeOverflow,
    #[error("invalid cochain: {0}")]
    InvalidCochain(String),
    #[error("improper intersection: {0}")]
    ImproperIntersection(String),
    #[error("flag-curve singular at point: {0}")]
    SingularFlag(String),
    #[error("point outside rationality bound: {0}")]
    RationalityBound(String),
    #[error("invalid flag: {0}")]
    InvalidFlag(String),
    #[error("degenerate symbol: {0}")]
    DegenerateSymbol(String),
    #[error("no admissible auxiliary choice: {0}")]
    NoAuxiliaryChoice(String),
    #[error("overlapping supports: {0}")]
    OverlappingSupports(String),
    #[error("sign audit failure: {0}")]
    AuditFailure(String),
    #[error("precision exhausted: {0}")]
    Precision(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidField(_) => "invalid-field",
            Error::FieldMismatch(_) => "field-mismatch",
            Error::DivisionByZero => "division-by-zero",
            Error::FactorZero => "factor-zero",
            Error::ZeroDenominator => "zero-denominator",
            Error::ValuationOfZero => "valuation-of-zero",
            Error::InvalidCurve(_) => "invalid-curve",
            Error::CurveMismatch(_) => "curve-mismatch",
            Error::OffCurve(_) => "off-curve",
            Error::TorsionCharacteristic => "torsion-characteristic",
            Error::NotTorsion(_) => "not-torsion",
            Error::DegreeOverflow => "degree-overflow",
            Error::InvalidCochain(_) => "invalid-cochain",
            Error::ImproperIntersection(_) => "improper-intersection",
            Error::SingularFlag(_) => "singular-flag",
            Error::RationalityBound(_) => "rationality-bound",
            Error::InvalidFlag(_) => "invalid-flag",
            Error::DegenerateSymbol(_) => "degenerate-symbol",
            Error::NoAuxiliaryChoice(_) => "no-auxiliary-choice",
            Error::OverlappingSupports(_) => "overlapping-supports",
            Error::AuditFailure(_) => "audit-failure",
            Error::Precision(_) => "precision",
            Error::InvalidInput(_) => "invalid-input",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
