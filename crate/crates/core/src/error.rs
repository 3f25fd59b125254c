use thiserror::Error;

use crate::interval::Endpoint;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("interval list is empty")]
    EmptyGraph,

    #[error("interval {vertex} has left endpoint {left} not below right endpoint {right}")]
    InvertedInterval {
        vertex: usize,
        left: Endpoint,
        right: Endpoint,
    },

    #[error("endpoint value {value} is shared by intervals {first} and {second}")]
    DuplicateEndpoint {
        value: Endpoint,
        first: usize,
        second: usize,
    },

    #[error("vertex {vertex} out of range (graph has {len} vertices)")]
    VertexOutOfRange { vertex: usize, len: usize },

    #[error("vertex {to} is not reachable from vertex {from}")]
    Unreachable { from: usize, to: usize },

    #[error("greedy path needs {from} to precede {to} in right-endpoint order")]
    NotOrdered { from: usize, to: usize },

    #[error("source {vertex} is not the leftmost interval")]
    NotLeftmost { vertex: usize },

    #[error("cover target set is empty")]
    EmptyTargets,

    #[error("cover target {target} is not in a layer after the root")]
    TargetNotAfterRoot { target: usize },

    #[error("terminal set is infeasible: {0}")]
    Infeasible(String),

    #[error("instance too large for the brute-force oracle: {0}")]
    OracleLimit(String),

    #[error("invalid layered graph: {0}")]
    InvalidLayering(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("generator gave up after {attempts} attempts: {reason}")]
    GeneratorExhausted { attempts: usize, reason: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("field `{field}`: {message}")]
    Field { field: String, message: String },

    #[error("{0}")]
    Io(String),
}
