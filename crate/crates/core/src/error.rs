use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("subfield degree {k} does not divide ambient degree {m}")]
    DegreeNotDivisible { k: usize, m: usize },
    #[error("field of size {p}^{m} exceeds the supported table size")]
    FieldTooLarge { p: u64, m: usize },
    #[error("element does not belong to this field: {0}")]
    ForeignElement(String),
    #[error("inversion of zero")]
    InverseOfZero,
    #[error("{0} is not a subfield order of the ambient field")]
    NotASubfield(u64),
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("q-polynomial is not separable (zero x-coefficient)")]
    NotSeparable,
    #[error("q-polynomial is not monic")]
    NotMonic,
    #[error("basis elements are linearly dependent over F_q")]
    DependentBasis,
    #[error("kernel has F_q-dimension {found}, expected {expected}: ambient field too small")]
    KernelTooSmall { expected: usize, found: usize },
    #[error("construction parameter must be nonzero")]
    ZeroParameter,
    #[error("case {case} is vacuous for q = {q}")]
    VacuousCase { case: u8, q: u64 },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal identity failed: {0}")]
    IdentityFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
