use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("graph is not normalized: {0}")]
    NotNormalized(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("polynomial division leaves a nonzero remainder")]
    NotDivisible,

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("expected constant term 1, found {0}")]
    ConstantTerm(BigInt),

    #[error("root finding did not converge after {iterations} iterations (degree {degree}, last correction {last_step:e})")]
    NoConvergence {
        degree: usize,
        iterations: usize,
        last_step: f64,
    },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("inconsistent geodesic counts at length {length}: {reason}")]
    InconsistentCounts { length: usize, reason: String },

    #[error("horizon {requested} exceeds the enumeration limit {limit}")]
    HorizonTooLarge { requested: usize, limit: usize },

    #[error("graph has no primes up to the requested horizon")]
    NoPrimes,

    #[error("graph is not regular (total degrees range over {min}..={max})")]
    NotRegular { min: usize, max: usize },

    #[error("graph has arrows; an undirected graph is required")]
    NotUndirected,

    #[error("graph has edges; a fully directed graph is required")]
    HasEdges,

    #[error("functional equation is degenerate for q = {0}")]
    DegenerateDegree(i64),

    #[error("invalid ADE label {0:?}")]
    InvalidAde(String),

    #[error("invalid valency list: {0}")]
    InvalidValencies(String),

    #[error("{}", match .row { Some(r) => format!("catalog row {r}: {}", .msg), None => format!("catalog: {}", .msg) })]
    Catalog { row: Option<u32>, msg: String },

    #[error("failed to parse {what}: {msg}")]
    Parse { what: String, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for failures caused by malformed input rather than by computation.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidGraph(_)
                | Error::NotNormalized(_)
                | Error::InvalidAde(_)
                | Error::InvalidValencies(_)
                | Error::Catalog { .. }
                | Error::Parse { .. }
                | Error::Io(_)
                | Error::NotRegular { .. }
                | Error::NotUndirected
                | Error::HasEdges
                | Error::DegenerateDegree(_)
                | Error::HorizonTooLarge { .. }
                | Error::NoPrimes
        )
    }
}
