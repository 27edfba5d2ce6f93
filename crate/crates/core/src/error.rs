use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ring of size {size} exceeds the size cap {cap}")]
    SizeCapExceeded { size: u128, cap: usize },

    #[error("ZMod modulus must be at least 2, got {0}")]
    InvalidModulus(u64),

    #[error("a product ring needs at least one factor")]
    EmptyProduct,

    #[error("malformed element literal at {path}: {reason}")]
    MalformedLiteral { path: String, reason: String },

    #[error("quotient by the unit ideal is the zero ring")]
    ZeroRing,

    #[error("zero lies in the multiplicative closure of the generators")]
    ZeroInClosure,

    #[error("ideal count exceeds the cap {cap}")]
    IdealCapExceeded { cap: usize },

    #[error("polynomial degree {degree} exceeds the bound {bound}")]
    DegreeOverflow { degree: usize, bound: usize },

    #[error("no S-prime ideal exists")]
    EmptySpectrum,

    #[error("exhaustive search needs {needed} candidate pairs but the budget is {budget}")]
    ExhaustiveInfeasible { needed: u128, budget: u64 },

    #[error("element {elem} is outside a ring of size {size}")]
    ElementOutOfRange { elem: usize, size: usize },

    #[error("{0} needs a commutative ring")]
    NonCommutative(String),

    #[error("ring-definition file: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
