use thiserror::Error;

use crate::linalg::Domain;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("{op} is not supported over {domain}")]
    UnsupportedDomain { op: &'static str, domain: Domain },

    #[error("domain mismatch: {left} vs {right}")]
    DomainMismatch { left: Domain, right: Domain },

    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("entry {value} cannot be represented over {domain}")]
    UnrepresentableEntry { value: String, domain: Domain },

    #[error("generators of the smaller object do not lie in the span of the larger one")]
    NotASubobject,

    #[error("differential at degree {degree} has shape {found:?}, expected {expected:?}")]
    ShapeMismatch {
        degree: i64,
        expected: (usize, usize),
        found: (usize, usize),
    },

    #[error("N must be at least 2, got {0}")]
    InvalidN(usize),

    #[error("the {n}-fold composite of differentials starting at degree {degree} is nonzero")]
    NotNilpotent { degree: i64, n: usize },

    #[error("amplitude {r} outside the allowed range [{min}, {max}]")]
    AmplitudeOutOfRange { r: usize, min: usize, max: usize },

    #[error("complexes differ in N or coefficient domain")]
    ComplexMismatch,

    #[error("component at degree {degree} does not commute with the differentials")]
    NotAChainMap { degree: i64 },

    #[error("maps have different source or target")]
    EndpointMismatch,

    #[error("homotopy witness does not realize the required map at degree {degree}")]
    WitnessInvalid { degree: i64 },

    #[error("source of the map is not the inverse suspension of the given complex")]
    SourceShapeMismatch,

    #[error("not a degreewise split short exact sequence: {0}")]
    InvalidSequence(String),

    #[error("base class {base} is not supported over {domain}")]
    UnsupportedClass { base: String, domain: Domain },

    #[error("test complex #{index} is not in the required class")]
    TestComplexNotInClass { index: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{0}")]
    Io(String),
}
