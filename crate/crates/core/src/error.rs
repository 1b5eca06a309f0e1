use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must satisfy 2 <= d <= 2^63 - 1, got {0}")]
    InvalidModulus(u64),

    #[error("{a} is not a unit modulo {d}")]
    NonUnit { a: u64, d: u64 },

    #[error("vector ({b},{c}) is not admissible over Z_{d}")]
    NotAdmissible { b: u64, c: u64, d: u64 },

    #[error("{what} needs {required} items, budget is {cap}")]
    BudgetExceeded {
        what: &'static str,
        required: u128,
        cap: u128,
    },

    #[error("the union-size formula is not defined for the zero vector")]
    ZeroVector,

    #[error("count overflows 128 bits for d = {0}")]
    Overflow(u64),

    #[error("matrix dimension must lie in {min}..={max}, got {got}")]
    DimensionOutOfRange { got: u64, min: u64, max: u64 },
}
