use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(
        "arity {0} is not supported: the term engine needs k >= 3 \
         (the binary wnu identities collapse to commutativity w(x,y) = w(y,x))"
    )]
    UnsupportedArity(usize),

    #[error("invalid identifier `{0}`")]
    InvalidIdentifier(String),

    #[error("`w` is reserved for the operation symbol and cannot name a variable")]
    ReservedName,

    #[error("arity mismatch: expected {expected} arguments, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("`{0}` is not in normal form")]
    NotNormal(String),

    #[error("unbound variable `{0}`")]
    UnboundVariable(String),

    #[error("variable list must be nonempty")]
    EmptyVariables,

    #[error("generator set is empty")]
    EmptyGenerators,

    #[error("invalid budget: {0}")]
    InvalidBudget(String),

    #[error("generator ({0}, {1}) exceeds the per-coordinate w budget")]
    GeneratorOverBudget(String, String),

    #[error("operation symbol `{symbol}` used with arity {found}, previously {expected}")]
    InconsistentArity {
        symbol: String,
        expected: usize,
        found: usize,
    },

    #[error("operation symbol `{0}` is not declared")]
    UndeclaredSymbol(String),

    #[error("operation symbol `{0}` has no projection assigned")]
    UnassignedSymbol(String),

    #[error("projection index {index} out of range for `{symbol}` of arity {arity}")]
    ProjectionOutOfRange { symbol: String, index: usize, arity: usize },

    #[error("not a single linear identity: {0}")]
    NotLinearSingle(String),

    #[error("expected an identity of the form t(x1,...,xm) = t(y1,...,ym): {0}")]
    NotSameSymbol(String),
}

impl Error {
    pub(crate) fn syntax(pos: usize, msg: impl Into<String>) -> Self {
        Error::Syntax { pos, msg: msg.into() }
    }
}
