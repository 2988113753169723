use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("polynomial {0} is not monic")]
    NotMonic(String),
    #[error("polynomial {0} is not irreducible over the rationals")]
    Reducible(String),
    #[error("polynomial {0} is not squarefree")]
    NotSquarefree(String),
    #[error("root refinement for {poly} did not reach {precision} bits")]
    RootsDidNotConverge { poly: String, precision: u32 },
    #[error("lattice does not have full rank {0}")]
    RankDeficient(usize),
    #[error("invalid order: {0}")]
    InvalidOrder(String),
    #[error("invalid fractional ideal: {0}")]
    InvalidIdeal(String),
    #[error("lattice containment violated: {0}")]
    NotContained(String),
    #[error("element is not integral: {0}")]
    NotIntegral(String),
    #[error("element does not generate the field: {0}")]
    NotPrimitive(String),
    #[error("cannot factor {0} within the desk-scale limits")]
    FactorizationLimit(String),
    #[error("pole of the Weil function: {0}")]
    Pole(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("fiber over {0} vanishes identically (component base point)")]
    ZeroFiber(String),
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("invalid curve specification: {0}")]
    InvalidSpec(String),
    #[error("brute-force search space too large: {0}")]
    OracleLimit(String),
}

pub type Result<T> = std::result::Result<T, Error>;
