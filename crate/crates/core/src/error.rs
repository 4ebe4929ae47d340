use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields or rings: {0}")]
    FieldMismatch(String),
    #[error("unsupported tower: {0}")]
    UnsupportedTower(String),
    #[error("invalid base field: {0}")]
    InvalidField(String),

    #[error("multiplication table is not commutative at (b{0}, b{1})")]
    NotCommutative(usize, usize),
    #[error("multiplication table is not associative at (b{0}, b{1}, b{2})")]
    NotAssociative(usize, usize, usize),
    #[error("unit vector is not a multiplicative identity")]
    BadUnit,
    #[error("augmentation is not a unital ring map (fails at b{0})")]
    BadAugmentation(usize),
    #[error("basis is not normalized: need pi(b0) = 1, pi(bi) = 0 for i > 0, and b0 = 1 when local")]
    BasisNotNormalized,
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("fraction arguments need a local algebra")]
    NonLocalFractionUnsupported,
    #[error("element is not invertible (augmentation component is zero)")]
    NotInvertible,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("variable clash: {0}")]
    VariableClash(String),
    #[error("{0} is not a constant of the operator")]
    NotAConstant(String),
    #[error("{0} is already a p-th power")]
    AlreadyPthPower(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("bad exterior exponent {0}")]
    BadExponent(usize),
    #[error("input vector {0} is not a constant of the operator")]
    NotConstantInput(usize),

    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("variable mismatch: {0}")]
    VariableMismatch(String),
    #[error("point does not satisfy the defining ideal")]
    PointNotOnVariety,
    #[error("target variety is not flagged prime")]
    PrimalityNotAsserted,
    #[error("point does not satisfy the ideal of W in the tower")]
    BadEmbedding,
    #[error("enumeration of {0} points exceeds the bound")]
    TooLarge(u128),
    #[error("Groebner step budget of {0} exhausted")]
    BudgetExceeded(usize),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Errors raised because an operation's mathematical precondition does not
    /// hold, as opposed to malformed input.
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            Error::PreconditionViolated(_)
                | Error::NonLocalFractionUnsupported
                | Error::NotInvertible
                | Error::NotAConstant(_)
                | Error::AlreadyPthPower(_)
                | Error::NotConstantInput(_)
                | Error::PointNotOnVariety
                | Error::PrimalityNotAsserted
                | Error::BadEmbedding
                | Error::TooLarge(_)
                | Error::BudgetExceeded(_)
                | Error::DivisionByZero
        )
    }
}
