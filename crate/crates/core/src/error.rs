use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("p must be prime (got {0})")]
    NotPrime(u64),
    #[error("prime {0} exceeds the supported ceiling of 2^16")]
    PrimeTooLarge(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{m} exceeds 2^32")]
    FieldTooLarge { p: u32, m: usize },
    #[error("modulus is not a monic irreducible polynomial of degree {0}")]
    InvalidModulus(usize),
    #[error("element does not belong to this field")]
    FieldMismatch,
    #[error("expected {expected} residues, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("residue {value} is out of range for p = {p}")]
    ResidueOutOfRange { value: u64, p: u32 },
    #[error("s = {s} does not divide m = {m}")]
    SubfieldDegree { s: usize, m: usize },
    #[error("arithmetic overflow computing {0}")]
    Overflow(&'static str),
    #[error("number of variables must be at least 1")]
    ZeroVariables,
    #[error("point has {got} coordinates but the polynomial has {expected} variables")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("operation requires prime-field coefficients (s = 1), got s = {0}")]
    NotPrimeField(usize),
    #[error("depth L = {depth} is outside the valid range 0..={max}")]
    DepthOutOfRange { depth: usize, max: usize },
    #[error("polynomial degree {degree} exceeds table degree {table}")]
    DegreeExceedsTable { degree: usize, table: usize },
    #[error("batch polynomials must share (p, r, n)")]
    HeterogeneousBatch,
    #[error("invalid `{field}`: {reason}")]
    Format { field: String, reason: String },
    #[error("polynomial characteristic {poly} does not match field characteristic {field}")]
    CharacteristicMismatch { poly: u32, field: u32 },
}
