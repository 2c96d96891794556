use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("field of order {p}^{k} exceeds the 2^16 size guard")]
    FieldTooLarge { p: u32, k: u32 },
    #[error("modulus is not a monic irreducible polynomial of degree {0}")]
    BadModulus(u32),
    #[error("elements belong to different fields")]
    MixedFields,
    #[error("zero has no inverse")]
    ZeroInverse,

    #[error("incompatible group elements: {0}")]
    Incompatible(String),
    #[error("closure exceeded the cap of {0} elements")]
    CapExceeded(usize),
    #[error("element is not in the group")]
    NotInGroup,
    #[error("subgroup is not central: {0}")]
    NotCentral(String),
    #[error("invalid alignment: {0}")]
    BadAlignment(String),
    #[error("singular matrix")]
    Singular,

    #[error("cannot parse group spec {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("{0} is outside the construction guards")]
    Guard(String),
    #[error("{0}")]
    NotQuasisimple(String),
    #[error("validation of {spec} failed: {reason}")]
    Validation { spec: String, reason: String },

    #[error("graph guard exceeded: {0}")]
    GraphGuard(String),
    #[error("vertex set is not a subset of the graph")]
    NotSubset,
    #[error("duplicate (row, column) label pair; collapse twins first")]
    DuplicateLabel,

    #[error("witness precondition: {0}")]
    Precondition(String),
    #[error("witness construction failed: {0}")]
    WitnessFailed(String),

    #[error("malformed input: {0}")]
    Format(String),
    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
