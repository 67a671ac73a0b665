use std::fmt;

use thiserror::Error;

/// A broken structural invariant of a [`crate::GameGraph`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    OutDegreeZero { vertex: u32 },
    EdgeOutOfRange { from: u32, to: u32 },
    DuplicateEdge { from: u32, to: u32 },
    AdjacencyMismatch { from: u32, to: u32 },
    InEdgeOrder { vertex: u32, position: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::OutDegreeZero { vertex } => {
                write!(f, "vertex {vertex} has out-degree 0")
            }
            Violation::EdgeOutOfRange { from, to } => {
                write!(f, "edge {from} -> {to} has an out-of-range endpoint")
            }
            Violation::DuplicateEdge { from, to } => {
                write!(f, "duplicate edge {from} -> {to}")
            }
            Violation::AdjacencyMismatch { from, to } => {
                write!(f, "edge {from} -> {to} is not mirrored in both adjacency lists")
            }
            Violation::InEdgeOrder { vertex, position } => {
                write!(
                    f,
                    "vertex {vertex}: player-1 predecessor precedes a player-2 predecessor at position {position}"
                )
            }
        }
    }
}

fn join_violations(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot build game graph: {}", join_violations(.0))]
    Build(Vec<Violation>),
    #[error("invalid game: {}", join_violations(.0))]
    InvalidGame(Vec<Violation>),
    #[error("kept set is not closed: vertices {stuck:?} lose all successors")]
    NotClosed { stuck: Vec<u32> },
    #[error("{0}")]
    Argument(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("result is inconsistent with the game: {0}")]
    Inconsistent(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn parse(line: usize, msg: impl Into<String>) -> Error {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
