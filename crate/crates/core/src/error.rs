use thiserror::Error;

/// Errors raised by the arithmetic and search routines.
///
/// Refusals that are part of a normal answer (a prime failing a good-prime
/// condition, a search coming up empty) are reported through result types,
/// not through this enum.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("the zero polynomial has no factorization")]
    ZeroPolynomial,
    #[error("{0} is not a prime number")]
    NotPrime(u64),
    #[error("polynomial {0} is not monic and irreducible")]
    NotIrreducible(String),
    #[error("field of size {0} exceeds the supported range")]
    FieldTooLarge(String),
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("matrix is singular at working precision")]
    Singular,
    #[error("lattice is not contained in the reference lattice")]
    NotContained,
    #[error("search space of {needed} elements exceeds the budget of {budget}")]
    BudgetExceeded { needed: String, budget: u64 },
    #[error("lattice does not generate the full order module")]
    NotSaturated,
    #[error("depth {depth} is too shallow: need p^{depth} R'^r' inside the lattice")]
    InsufficientDepth { depth: u32 },
    #[error("K(p^{}) is not contained in K(p^{depth}) and its conjugate", 2 * depth)]
    QuotientInsufficient { depth: u32 },
    #[error("defining polynomial is reducible over F")]
    ReducibleDefiningPolynomial,
    #[error("more than one place lies over infinity")]
    MultipleInfinitePlaces,
    #[error("unsupported extension shape: {0}")]
    UnsupportedShape(String),
    #[error("prime {0} is ramified and its splitting cannot be certified")]
    UnsupportedRamifiedPrime(String),
    #[error("level is not maximal at {0}")]
    NotMaximalAtPrime(String),
    #[error("intermediate field is not a constructible sub-extension")]
    TowerNotSupported,
    #[error("class-number bound is not stated for genus zero")]
    GenusZero,
    #[error("degree {i} is not divisible by the constant extension degree {n}")]
    InapplicableDegree { i: u32, n: u32 },
    #[error("extension is not normal by construction")]
    NotNormal,
    #[error("malformed input: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn budget(needed: impl ToString, budget: u64) -> Self {
        Error::BudgetExceeded {
            needed: needed.to_string(),
            budget,
        }
    }

    pub(crate) fn precision(what: impl Into<String>) -> Self {
        Error::PrecisionExhausted(what.into())
    }

    /// Machine-readable tag used by the CLI's error payloads.
    pub fn tag(&self) -> &'static str {
        match self {
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::NotPrime(_) => "NotPrime",
            Error::NotIrreducible(_) => "NotIrreducible",
            Error::FieldTooLarge(_) => "FieldTooLarge",
            Error::PrecisionExhausted(_) => "PrecisionExhausted",
            Error::Singular => "Singular",
            Error::NotContained => "NotContained",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::NotSaturated => "NotSaturated",
            Error::InsufficientDepth { .. } => "InsufficientDepth",
            Error::QuotientInsufficient { .. } => "QuotientInsufficient",
            Error::ReducibleDefiningPolynomial => "ReducibleDefiningPolynomial",
            Error::MultipleInfinitePlaces => "MultipleInfinitePlaces",
            Error::UnsupportedShape(_) => "UnsupportedShape",
            Error::UnsupportedRamifiedPrime(_) => "UnsupportedRamifiedPrime",
            Error::NotMaximalAtPrime(_) => "NotMaximalAtPrime",
            Error::TowerNotSupported => "TowerNotSupported",
            Error::GenusZero => "GenusZero",
            Error::InapplicableDegree { .. } => "InapplicableDegree",
            Error::NotNormal => "NotNormal",
            Error::Parse(_) => "Parse",
            Error::InvalidArgument(_) => "InvalidArgument",
        }
    }
}
