use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("extension degrees must be positive (e = {e}, m = {m})")]
    ZeroDegree { e: u32, m: u32 },
    #[error("field of order {p}^{degree} exceeds the supported size")]
    FieldTooLarge { p: u64, degree: u64 },
    #[error("modulus has degree {found}, expected {expected}")]
    WrongModulusDegree { expected: usize, found: usize },
    #[error("modulus is reducible over F_{0}")]
    ReducibleModulus(u32),
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("coefficient {value} is not a residue mod {p}")]
    InvalidCoefficient { value: u64, p: u32 },
    #[error("element does not belong to this field")]
    ForeignElement,
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("orbit coordinate (k = {k}, i = {i}, j = {j}) is out of range")]
    IndexOutOfRange { k: u32, i: u64, j: u64 },
    #[error("monoid shapes do not match")]
    ShapeMismatch,
    #[error("component for k = {k} is malformed")]
    MalformedComponent { k: u32 },
    #[error("element is not invertible")]
    NotInvertible,
    #[error("map does not commute with the Frobenius at element index {0}")]
    NotEquivariant(u32),
    #[error("map sends element index {0} outside its Frobenius stratum")]
    NotPreserving(u32),
    #[error("table has {found} entries, field has {expected} elements")]
    TableSize { expected: u64, found: usize },
    #[error("search space of size {size} exceeds the bound {bound}")]
    TooLarge { size: num_bigint::BigUint, bound: u64 },
    #[error("degenerate field order q = {0}")]
    DegenerateField(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
}
