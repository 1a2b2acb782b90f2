use thiserror::Error;

use crate::poly::Var;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero in the coefficient field")]
    DivisionByZero,
    #[error("operands live in incompatible algebraic extensions")]
    ContextMismatch,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("root selector matches {found} roots instead of exactly one")]
    AmbiguousRootSelector { found: usize },
    #[error("root requires a second algebraic extension")]
    ExtensionTowerTooDeep,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("variable {0} does not occur")]
    VariableAbsent(Var),
    #[error("variable {0} already occurs")]
    VariablePresent(Var),
    #[error("no usable first subresultant")]
    DegenerateSubresultant,
    #[error("series known only up to {available}, {needed} required")]
    TruncationUnderflow { needed: String, available: String },
    #[error("division by a series that is zero")]
    DivisionByZeroSeries,
    #[error("series orientations differ")]
    OrientationMismatch,
    #[error("no admissible change of coordinates: {0}")]
    PreparationFailed(String),
    #[error("lift does not satisfy the curve equations")]
    InvalidLift,
    #[error("exponent out of range: {0}")]
    InternalExponentError(String),
    #[error("no real leaf to sample")]
    NoRealLeaf,
    #[error("parse error at {line}:{column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("unknown variable `{name}` at {line}:{column}")]
    UnknownVariable { name: String, line: usize, column: usize },
    #[error("input is empty")]
    EmptyInput,
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Stable machine-readable identifier.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "division_by_zero",
            Error::ContextMismatch => "context_mismatch",
            Error::NotSquarefree => "not_squarefree",
            Error::AmbiguousRootSelector { .. } => "ambiguous_root_selector",
            Error::ExtensionTowerTooDeep => "extension_tower_too_deep",
            Error::ZeroPolynomial => "zero_polynomial",
            Error::VariableAbsent(_) => "variable_absent",
            Error::VariablePresent(_) => "variable_present",
            Error::DegenerateSubresultant => "degenerate_subresultant",
            Error::TruncationUnderflow { .. } => "truncation_underflow",
            Error::DivisionByZeroSeries => "division_by_zero_series",
            Error::OrientationMismatch => "orientation_mismatch",
            Error::PreparationFailed(_) => "preparation_failed",
            Error::InvalidLift => "invalid_lift",
            Error::InternalExponentError(_) => "internal_exponent_error",
            Error::NoRealLeaf => "no_real_leaf",
            Error::Parse { .. } => "parse_error",
            Error::UnknownVariable { .. } => "unknown_variable",
            Error::EmptyInput => "empty_input",
            Error::InvalidCurve(_) => "invalid_curve",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::Io(_) => "io_error",
        }
    }

    /// Process exit status used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } => 2,
            Error::UnknownVariable { .. } => 3,
            Error::EmptyInput => 4,
            Error::InvalidCurve(_) => 5,
            Error::InvalidArgument(_) => 6,
            Error::PreparationFailed(_) => 10,
            Error::InvalidLift => 11,
            Error::DegenerateSubresultant => 12,
            Error::ExtensionTowerTooDeep => 13,
            Error::TruncationUnderflow { .. } => 14,
            Error::NoRealLeaf => 15,
            Error::NotSquarefree => 16,
            Error::AmbiguousRootSelector { .. } => 17,
            Error::InternalExponentError(_) => 18,
            Error::Io(_) => 7,
            Error::DivisionByZero => 20,
            Error::ContextMismatch => 21,
            Error::ZeroPolynomial => 22,
            Error::VariableAbsent(_) => 23,
            Error::VariablePresent(_) => 24,
            Error::DivisionByZeroSeries => 25,
            Error::OrientationMismatch => 26,
        }
    }

    /// Every variant, one representative each; used to check that codes
    /// are unique.
    pub fn representatives() -> Vec<Error> {
        let s = String::new;
        vec![
            Error::DivisionByZero,
            Error::ContextMismatch,
            Error::NotSquarefree,
            Error::AmbiguousRootSelector { found: 0 },
            Error::ExtensionTowerTooDeep,
            Error::ZeroPolynomial,
            Error::VariableAbsent(Var::X1),
            Error::VariablePresent(Var::X1),
            Error::DegenerateSubresultant,
            Error::TruncationUnderflow { needed: s(), available: s() },
            Error::DivisionByZeroSeries,
            Error::OrientationMismatch,
            Error::PreparationFailed(s()),
            Error::InvalidLift,
            Error::InternalExponentError(s()),
            Error::NoRealLeaf,
            Error::Parse { line: 0, column: 0, message: s() },
            Error::UnknownVariable { name: s(), line: 0, column: 0 },
            Error::EmptyInput,
            Error::InvalidCurve(s()),
            Error::InvalidArgument(s()),
            Error::Io(s()),
        ]
    }

    pub(crate) fn underflow(needed: impl ToString, available: impl ToString) -> Self {
        Error::TruncationUnderflow { needed: needed.to_string(), available: available.to_string() }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
