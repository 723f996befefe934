use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A ranking query asked a node to rank itself.
    Reflexive { node: usize },
    /// Node label outside `1..=N`.
    NodeOutOfRange { node: usize, n: usize },
    /// The pair is not an edge of the acceptance graph.
    NotAcceptable { i: usize, j: usize },
    /// Invalid parameter, with a message naming it.
    InvalidParameter(String),
    /// Operation not defined for this preference kind.
    KindMismatch(String),
    /// Unsupported torus dimension / norm combination for ball volumes.
    UnsupportedBall { dim: usize, norm: &'static str },
    /// Latency matrix parse failure; `row`/`col` are 1-based.
    Load {
        row: usize,
        col: Option<usize>,
        message: String,
    },
    /// Configuration breaks quota, mutuality, or acceptance.
    MalformedConfiguration(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Reflexive { node } => write!(f, "node {node} cannot rank itself"),
            Error::NodeOutOfRange { node, n } => {
                write!(f, "node {node} out of range 1..={n}")
            }
            Error::NotAcceptable { i, j } => {
                write!(f, "pair {{{i}, {j}}} is not in the acceptance graph")
            }
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::KindMismatch(msg) => write!(f, "preference kind mismatch: {msg}"),
            Error::UnsupportedBall { dim, norm } => write!(
                f,
                "no ball volume formula for the {dim}-torus under the {norm} norm"
            ),
            Error::Load { row, col, message } => match col {
                Some(c) => write!(f, "row {row}, column {c}: {message}"),
                None => write!(f, "row {row}: {message}"),
            },
            Error::MalformedConfiguration(msg) => write!(f, "malformed configuration: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
