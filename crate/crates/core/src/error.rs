use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("operator dimension {0} is not one of 2, 4, 8")]
    UnsupportedDimension(usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("tensor product dimension {0} exceeds 8")]
    DimensionOverflow(usize),
    #[error("non-finite entry in input")]
    NonFinite,
    #[error("matrix is not Hermitian (max deviation {0:.3e})")]
    NotHermitian(f64),
    #[error("state norm {0} is too far from 1 to normalize silently")]
    NotNormalized(f64),
    #[error("trace {0} is not 1 within tolerance")]
    TraceNotOne(f64),
    #[error("matrix is not positive semidefinite (min eigenvalue {0:.3e})")]
    NotPositive(f64),
    #[error("ensemble weights sum to {0}, expected 1")]
    WeightsNotNormalized(f64),
    #[error("negative ensemble weight {0}")]
    NegativeWeight(f64),
    #[error("party index {party} out of range for dimension {dim}")]
    InvalidParty { party: usize, dim: usize },
    #[error("Bloch vector has norm {0}, expected 1")]
    NotUnitVector(f64),
    #[error("triple vectors are not pairwise orthogonal (max |dot| {0:.3e})")]
    NotOrthogonal(f64),
    #[error("observable product is not proportional to the identity; not a complementary triple")]
    NotComplementary,
    #[error("matrix is not unitary (max deviation {0:.3e})")]
    NotUnitary(f64),
    #[error("matrix is not orthogonal (max deviation {0:.3e})")]
    NotRotation(f64),
    #[error("witness setting mixes triple orientations")]
    MixedOrientation,
    #[error("parameter {name}={value} outside [0, 1]")]
    ParamOutOfDomain { name: &'static str, value: f64 },
    #[error("family {family} takes {expected} parameter(s), got {got}")]
    ParamArity {
        family: &'static str,
        expected: usize,
        got: usize,
    },
    #[error(
        "g-values ({0:.3e}, {1:.3e}, {2:.3e}) are numerically inconsistent: \
         two vanish while the third is far above tolerance"
    )]
    InconsistentGValues(f64, f64, f64),
    #[error("invalid configuration: {0}")]
    InvalidConfig(&'static str),
    #[error("grid axis '{0}' does not match the family parameters")]
    UnknownGridAxis(String),
    #[error("grid axis '{name}' is malformed: {reason}")]
    BadGridAxis { name: String, reason: &'static str },
    #[error("settings list is empty")]
    EmptySettings,
    #[error("shot count must be at least 1")]
    ZeroShots,
}

pub type Result<T> = std::result::Result<T, Error>;
