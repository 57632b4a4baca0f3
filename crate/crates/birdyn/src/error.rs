use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("modulus is reducible: shares the factor {factor}")]
    ReducibleModulus { factor: String },
    #[error("not divisible, remainder term {witness}")]
    NotDivisible { witness: String },
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("resource limit: {what} reached {size}, cap {cap}")]
    ResourceLimit { what: String, size: usize, cap: usize },
    #[error("exceptional locus does not split into lines, remainder {remainder}")]
    NonLinearFactor { remainder: String },
    #[error("curve {curve} is not collapsed by the map")]
    NotCollapsed { curve: String },
    #[error("no inverse available for a raw map")]
    NoInverseAvailable,
    #[error("field extension needed, minimal polynomial {minpoly}")]
    ExtensionNeeded { minpoly: String },
    #[error("blow-up tower deeper than 2 required at {0}")]
    TowerTooDeep(String),
    #[error("point is not on a collapsed curve")]
    NotOnCollapsedCurve,
    #[error("all components vanish on the germ up to order {order}")]
    IndeterminateJet { order: usize },
    #[error("orbit endpoints chain ambiguously at index {0}")]
    InconsistentChain(usize),
    #[error("orbit lists with {0} orbits are not supported")]
    UnsupportedListSize(usize),
    #[error("recurrence of order {order} fitted from only {len} terms")]
    InsufficientData { order: usize, len: usize, provisional: Vec<String> },
    #[error("spectrum contains {factor}, neither cyclotomic nor expanding")]
    UnclassifiableSpectrum { factor: String },
    #[error("Moebius transformation has no finite order {0}")]
    NotFiniteOrder(String),
    #[error("solution space of dimension {0}")]
    DegenerateSolutionSpace(usize),
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("invalid {field}: {message}")]
    Validation { field: String, message: String },
    #[error("no suitable prime found: {0}")]
    NoPrime(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse { location: location.into(), message: message.into() }
    }

    pub(crate) fn validation(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Validation { field: field.into(), message: message.into() }
    }
}
