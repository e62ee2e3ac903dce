use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("mass must be nonzero")]
    ZeroMass,

    #[error("operator is not Hermitian: {0}")]
    NotHermitian(String),

    #[error("invalid generator: {0}")]
    InvalidGenerator(String),

    #[error("representation has no classical sector")]
    MissingClassicalSector,

    #[error("degenerate masses for classification: {0}")]
    DegenerateMasses(String),

    #[error("coefficient is not a number after parameter substitution: {0}")]
    SymbolicCoefficient(String),

    #[error("expression is not a commutative phase-space polynomial: {0}")]
    NotPhaseSpacePolynomial(String),

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("evaluation error: {0}")]
    Eval(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid Hamiltonian: {0}")]
    InvalidHamiltonian(String),

    #[error("invalid initial packet: {0}")]
    InvalidPacket(String),

    #[error("non-finite amplitude after step {step} (t = {time})")]
    NonFinite { step: usize, time: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
