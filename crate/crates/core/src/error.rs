use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division is not exact: {dividend} is not a multiple of {divisor}")]
    NotDivisible { dividend: String, divisor: String },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("negative exponent of {var} evaluated at zero")]
    PoleAtZero { var: char },
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("entry ({row}, {col}) uses the variable z")]
    EntryUsesZ { row: usize, col: usize },
    #[error("product of linear factors has a nonzero alpha component: {0}")]
    AlphaComponentNonzero(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("bad parameters for `{id}`: {msg}")]
    BadParams { id: String, msg: String },
    #[error("exponent {what} = {value} is not an integer")]
    NonIntegralExponent { what: String, value: String },
    #[error("not proportional: the two sides differ by more than a signed monomial")]
    NotProportional,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}
