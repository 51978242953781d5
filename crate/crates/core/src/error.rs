use thiserror::Error;

use crate::graph::Vertex;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("graph6 parse error at byte {offset}: {message}")]
    Graph6 { offset: usize, message: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("vertex {vertex} out of range for graph of order {order}")]
    VertexOutOfRange { vertex: Vertex, order: usize },

    /// An exponential search would exceed its configured limit.
    #[error("budget exceeded for {what}: needs {required}, limit {limit}")]
    BudgetExceeded {
        what: &'static str,
        required: u64,
        limit: u64,
    },

    #[error("set is not a zero forcing set")]
    NotZeroForcing,

    #[error("invalid force {from}->{to}: {reason}")]
    InvalidForce {
        from: Vertex,
        to: Vertex,
        reason: String,
    },

    #[error("invalid force set: {0}")]
    InvalidForceSet(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A proved property failed to hold on a concrete instance.
    #[error("theorem violation: {0}")]
    Violation(String),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
