use std::fmt;

use num_bigint::BigInt;

/// Errors produced by spec parsing, validation, and the expansion machinery.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The spec string does not match the grammar.
    SpecSyntax { position: usize, message: String },
    /// The spec parses but denotes a sequence with some base below 2.
    SpecValidation { message: String },
    /// A rational was constructed with denominator zero.
    ZeroDenominator,
    /// A rational was constructed with a negative value.
    NegativeRational,
    /// An expansion input must satisfy 0 <= num < den after reduction.
    ImproperInput { num: BigInt, den: BigInt },
    /// A digit exceeds its positional bound; `position` is 1-based.
    DigitOutOfRange {
        position: u64,
        digit: BigInt,
        base: BigInt,
    },
    /// A digit string does not match the rendering convention.
    DigitSyntax { position: usize, message: String },
    /// A rational literal does not match `P/R`.
    RationalSyntax { message: String },
    /// The operation requires a periodic (or constant) base sequence.
    NonPeriodicSpec,
    /// An eventually periodic representation needs a non-empty period.
    EmptyPeriod,
    /// Preperiod length must be a multiple of the base-sequence period.
    MisalignedPreperiod { len: u64, period: u64 },
    /// Period length must be a multiple of the base-sequence period.
    MisalignedPeriod { len: u64, period: u64 },
    /// The all-maximal period is the dual of a terminating expansion and
    /// is rejected in favour of the canonical trailing-zeros form.
    NonCanonicalTail,
    /// Grouping breakpoints must be strictly increasing and within range.
    MalformedBreakpoints { message: String },
    /// A digit-record line does not match `<spec> | <digits>`.
    RecordSyntax { message: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::SpecSyntax { position, message } => {
                write!(f, "spec syntax error at position {position}: {message}")
            }
            Self::SpecValidation { message } => write!(f, "invalid base sequence: {message}"),
            Self::ZeroDenominator => write!(f, "denominator must be positive"),
            Self::NegativeRational => write!(f, "value must be non-negative"),
            Self::ImproperInput { num, den } => {
                write!(f, "expansion input must satisfy 0 <= p < r, got {num}/{den}")
            }
            Self::DigitOutOfRange {
                position,
                digit,
                base,
            } => write!(
                f,
                "digit {digit} at position {position} exceeds bound {} (base {base})",
                base - 1
            ),
            Self::DigitSyntax { position, message } => {
                write!(f, "digit string error at position {position}: {message}")
            }
            Self::RationalSyntax { message } => write!(f, "invalid rational: {message}"),
            Self::NonPeriodicSpec => {
                write!(f, "operation requires a periodic or constant base sequence")
            }
            Self::EmptyPeriod => write!(f, "period digit list must be non-empty"),
            Self::MisalignedPreperiod { len, period } => write!(
                f,
                "preperiod length {len} is not a multiple of the base-sequence period {period}"
            ),
            Self::MisalignedPeriod { len, period } => write!(
                f,
                "period length {len} is not a multiple of the base-sequence period {period}"
            ),
            Self::NonCanonicalTail => write!(
                f,
                "all-maximal period denotes the non-canonical tail of a terminating expansion"
            ),
            Self::MalformedBreakpoints { message } => {
                write!(f, "malformed breakpoints: {message}")
            }
            Self::RecordSyntax { message } => write!(f, "digit record error: {message}"),
        }
    }
}

impl std::error::Error for Error {}

impl Error {
    /// True for errors caused by text that fails to parse, as opposed to
    /// well-formed input that violates a mathematical constraint.
    pub fn is_syntax(&self) -> bool {
        matches!(
            self,
            Self::SpecSyntax { .. }
                | Self::DigitSyntax { .. }
                | Self::RationalSyntax { .. }
                | Self::RecordSyntax { .. }
        )
    }
}
