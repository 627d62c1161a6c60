use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("integral nested inside another integral")]
    NestedIntegral,
    #[error("product involving an integrated term and a non-constant factor")]
    IntegralProduct,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character {0:?}")]
    UnexpectedChar(char),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("expected {0}")]
    Expected(&'static str),
    #[error("unknown symbol {0:?}")]
    UnknownSymbol(String),
    #[error("invalid derivative letter in {0:?} (alphabet is 1 b 0)")]
    BadDerivative(String),
    #[error("division by a non-constant or zero expression")]
    BadDivision,
    #[error("derivative of an integrated expression")]
    DerivativeOfIntegral,
    #[error("|...| must be followed by ^2")]
    AbsWithoutSquare,
    #[error(transparent)]
    Expr(#[from] ExprError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {pos}: {kind}")]
pub struct ParseError {
    pub pos: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CalculusError {
    #[error("cannot differentiate an integrated expression")]
    DifferentiateIntegrated,
    #[error("swap position {position} out of range for {factor}")]
    PositionOutOfRange { factor: String, position: usize },
    #[error("term index {0} out of range")]
    TermOutOfRange(usize),
    #[error("factor index {0} out of range")]
    FactorOutOfRange(usize),
    #[error("term is not integrated")]
    NotIntegrated,
    #[error("selected factor {0} has no derivatives")]
    NoDerivative(String),
    #[error("integrand {0} is not fully contracted (alpha-charge {1})")]
    Unbalanced(String, i64),
    #[error("integration by parts in the 0 direction is not supported ({0})")]
    ZeroDirection(String),
    #[error("rewrite guard of {limit} steps exceeded while processing {term}")]
    GuardExceeded { limit: usize, term: String },
    #[error("operator template is not linear in its placeholder: {0}")]
    Nonlinear(String),
    #[error("adjoint is not complex-linear: conjugate placeholder survives in {0}")]
    Antilinear(String),
    #[error("no adjoint between a real pairing and a hermitian pairing ({0} -> {1})")]
    PairingMismatch(String, String),
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error(transparent)]
    Calculus(#[from] CalculusError),
    #[error("corpus: {0}")]
    Corpus(String),
    #[error("unknown identity id {0:?}")]
    UnknownIdentity(String),
    #[error("unknown operator {0:?}")]
    UnknownOperator(String),
    #[error("point data: {0}")]
    PointData(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
