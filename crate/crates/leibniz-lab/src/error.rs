use thiserror::Error;

/// Errors shared across the workbench.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("field mismatch: operands live over different fields")]
    FieldMismatch,

    #[error("{0} is not a valid prime field modulus (need a prime p with 2 <= p <= 251)")]
    BadModulus(u64),

    #[error(
        "enumeration budget exceeded: {base}^{params} = {count} candidates \
         (parameter count {params}) exceeds cap {cap}"
    )]
    BudgetExceeded { base: u64, params: u32, count: u128, cap: u64 },

    #[error("operation is unsupported over this field: {0}")]
    Unsupported(String),

    #[error("not a Leibniz algebra: {0} basis triples violate the Leibniz law")]
    NotLeibniz(usize),

    #[error("not a crossed system: axioms {0:?} fail")]
    NotCrossedSystem(Vec<&'static str>),

    #[error("{0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("census mismatch: {0}")]
    CensusMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
