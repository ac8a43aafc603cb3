use thiserror::Error;

use crate::term::Signature;

/// Position and context of a syntax error. Lines and columns are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{line}:{column}: expected {expected}, found {found}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub expected: String,
    pub found: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error("operator `{operator}` is not part of the {signature} signature (at {line}:{column})")]
    SignatureError {
        operator: String,
        signature: Signature,
        line: usize,
        column: usize,
    },
    #[error("term mixes signatures; expected a {expected} term")]
    MixedSignature { expected: Signature },
    #[error("term contains variables but a closed term is required")]
    OpenTerm,
    #[error("term contains division or inverse but a ring term is required")]
    NotRingTerm,
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("{0} is not square-free; no minimal meadow of that characteristic exists")]
    NonSquareFree(u64),
    #[error("modulus {0} is out of range")]
    InvalidModulus(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field of order {p}^{n} is too large")]
    FieldTooLarge { p: u64, n: u32 },
    #[error("exhaustive checking needs a finite carrier, but {0} is infinite")]
    InfiniteExhaustive(String),
    #[error("exhaustive check over {0} would need more than {1} assignments")]
    SpaceTooLarge(String, u64),
    #[error("operation needs a finite carrier, but {0} is infinite")]
    InfiniteCarrier(String),
    #[error("not a polynomial in `{var}`: {reason}")]
    NotPolynomial { var: String, reason: String },
    #[error("premise failed: {0}")]
    PremiseFailed(String),
    #[error("no witness constructed: {0}")]
    NoWitnessConstructed(String),
    #[error("invalid element `{text}` for model {model}: {reason}")]
    InvalidElement {
        model: String,
        text: String,
        reason: String,
    },
    #[error("unknown model specifier `{0}`")]
    UnknownModel(String),
}
