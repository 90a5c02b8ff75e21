//! Error type shared by all constructions.

use thiserror::Error;

/// Everything that can go wrong while building or checking a construction.
#[derive(Debug, Error)]
pub enum Error {
    /// A structure constant lands above the weight allowed by the filtration law.
    #[error("filtration violation: {product} has weight {found}, allowed at most {allowed}")]
    FiltrationViolation {
        product: String,
        found: u32,
        allowed: u32,
    },

    /// Associativity fails on a basis triple within the cap.
    #[error("associativity failure on ({a}, {b}, {c})")]
    AssocFailure { a: String, b: String, c: String },

    /// A value or an image cannot be represented below the truncation cap.
    #[error("cap overflow: {0}")]
    CapOverflow(String),

    /// Source/target of maps do not line up.
    #[error("type mismatch: {0}")]
    TypeMismatch(String),

    /// A kernel could not be certified closed under products within the cap.
    #[error("kernel not certified as ideal: {0}")]
    NotAnIdealWarning(String),

    /// A configured size limit was exceeded.
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    /// A claimed splitting is not a section of the surjection.
    #[error("splitting is not a section: fails on {witness}")]
    SplittingNotSection { witness: String },

    /// A diagram assumed commutative does not commute.
    #[error("diagram does not commute: fails on {witness}")]
    DiagramNotCommuting { witness: String },

    /// A homotopy chain has mismatched consecutive endpoints.
    #[error("broken chain at link {index}: {reason}")]
    BrokenChain { index: usize, reason: String },

    /// A constructed linear section fails the section law.
    #[error("section failure at level {level}: {witness}")]
    SectionFailure { level: u32, witness: String },

    /// A factorization step could not certify levelwise surjectivity.
    #[error("factorization failure: {0}")]
    FactorizationFailure(String),

    /// A graded contraction was requested on an algebra without a grading.
    #[error("no grading declared on {0}")]
    GradingMissing(String),

    /// Malformed scenario or certificate input.
    #[error("parse error at line {line}, column {col}: {msg}")]
    ParseError { line: usize, col: usize, msg: String },

    /// Scalars from different coefficient rings were mixed.
    #[error("coefficient ring mismatch: {0}")]
    RingMismatch(String),

    /// A construction that is only best-effort outside its guaranteed range.
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
