use thiserror::Error;

/// Errors raised by the library.
///
/// Pairs and basis indices in messages are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("operands belong to different structures: {0}")]
    SpecMismatch(String),

    #[error("cyclotomic coefficient overflow")]
    Overflow,

    #[error("pair set is not closed; missing composites for chains {}", fmt_triples(.0))]
    NotClosed(Vec<(usize, usize, usize)>),

    #[error("pair ({i},{j}) out of range for n = {n}")]
    PairOutOfRange { i: usize, j: usize, n: usize },

    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("bad field: {0}")]
    BadField(String),

    #[error("enumeration needs {required} elements but the cap is {cap}")]
    SizeCapExceeded { required: u128, cap: u64 },

    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),

    #[error("closed set does not have the required shape: {0}")]
    ShapeMismatch(String),

    #[error("representative is not monomial (more than one nonzero entry in a row or column)")]
    NonMonomialRepresentative,

    #[error("structure constants are not associative at (i,j,k,l) = ({i},{j},{k},{l})")]
    NotAssociative { i: usize, j: usize, k: usize, l: usize },

    #[error("algebra is not nilpotent; nonzero product of basis elements {0:?}")]
    NotNilpotent(Vec<usize>),

    #[error("orbit scaling |λU|/|UλU| is not integral ({numerator}/{denominator})")]
    NonIntegralScaling { numerator: u64, denominator: u64 },
}

fn fmt_triples(t: &[(usize, usize, usize)]) -> String {
    t.iter()
        .map(|(i, j, k)| format!("({i},{j},{k})"))
        .collect::<Vec<_>>()
        .join(", ")
}

pub type Result<T> = std::result::Result<T, Error>;
