use thiserror::Error;

use crate::a2lat::A2Weight;
use crate::charlat::Weight;
use crate::mult::Mult;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank mismatch: rank {left} against rank {right}")]
    RankMismatch { left: u8, right: u8 },

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("{what} = {value} is out of range (expected {expected})")]
    OutOfRange {
        what: &'static str,
        value: i64,
        expected: String,
    },

    #[error("undefined: highest weight 0 (the trivial module) is excluded")]
    ZeroWeight,

    #[error("negative multiplicity {multiplicity} at weight {weight} while peeling")]
    NegativeMultiplicity { weight: Weight, multiplicity: Mult },

    #[error("character is not Weyl-invariant: weight {weight} left over after peeling")]
    NotWeylInvariant { weight: Weight },

    #[error("weight {0} is not dominant")]
    NonDominant(A2Weight),

    #[error(
        "no simple character for {weight} at p = {p}: digit {digit} (twist {level}) lies outside \
         a+b+2 <= p and is not in the character table"
    )]
    AdaptationFailure {
        p: u64,
        weight: A2Weight,
        digit: A2Weight,
        level: u32,
    },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("{weight} is not restricted at p = {p}")]
    NotRestricted { p: u64, weight: A2Weight },

    #[error("{weight} is not certified at p = {p} (analysis gave {kind})")]
    NotCertified {
        p: u64,
        weight: A2Weight,
        kind: String,
    },

    #[error("dim L{weight} = {dim} is divisible by p = {p}")]
    DimensionDivisible { p: u64, weight: A2Weight, dim: u64 },

    #[error("cannot determine dim L{weight} at p = {p}: supply it in a character table")]
    DimensionUnknown { p: u64, weight: A2Weight },

    #[error("character table line {line}: {message}")]
    Table { line: usize, message: String },

    #[error("i/o: {0}")]
    Io(String),
}

impl Error {
    /// Stable snake_case identifier, used in structured error output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::RankMismatch { .. } => "rank_mismatch",
            Error::NotPrime(_) => "not_prime",
            Error::OutOfRange { .. } => "out_of_range",
            Error::ZeroWeight => "zero_weight",
            Error::NegativeMultiplicity { .. } => "negative_multiplicity",
            Error::NotWeylInvariant { .. } => "not_weyl_invariant",
            Error::NonDominant(_) => "non_dominant",
            Error::AdaptationFailure { .. } => "adaptation_failure",
            Error::Unsupported(_) => "unsupported",
            Error::NotRestricted { .. } => "not_restricted",
            Error::NotCertified { .. } => "not_certified",
            Error::DimensionDivisible { .. } => "dimension_divisible",
            Error::DimensionUnknown { .. } => "dimension_unknown",
            Error::Table { .. } => "table",
            Error::Io(_) => "io",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
