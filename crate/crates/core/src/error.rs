use alloc::string::String;

/// Errors raised by the core engines.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("syntax error at column {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at column {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("invalid variable set: {0}")]
    Variables(String),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial has a nonzero linear part")]
    NonzeroLinearPart,
    #[error("polynomial does not vanish at the origin")]
    NonzeroConstant,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrix kind mismatch: {0}")]
    Kind(String),
    #[error("matrix has a unit entry at ({row}, {col})")]
    UnitEntry { row: usize, col: usize },
    #[error("constant term is singular")]
    SingularConstant,
    #[error("out of range: {0}")]
    Range(String),
    #[error("{what} not certified up to order {order}")]
    Uncertified { what: String, order: u32 },
    #[error("{0}")]
    Unsupported(String),
    #[error("elimination did not stabilize: {0}")]
    Elimination(String),
    #[error("missing input: {0}")]
    MissingInput(String),
    #[error("identity violated: {0}")]
    Identity(String),
}

pub type Result<T> = core::result::Result<T, Error>;
