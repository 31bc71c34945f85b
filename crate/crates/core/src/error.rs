use std::fmt;

use thiserror::Error;

use crate::cover::CoverViolation;
use crate::graph::{GraphViolation, MorphismViolation};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {}", Joined(.0))]
    InvalidGraph(Vec<GraphViolation>),
    #[error("invalid morphism: {}", Joined(.0))]
    InvalidMorphism(Vec<MorphismViolation>),
    #[error("invalid cover: {}", Joined(.0))]
    InvalidCover(Vec<CoverViolation>),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown component index {0}")]
    UnknownComponent(usize),
    #[error("vertices {0} and {1} are explicit basepoints of the same component")]
    BasepointsShareComponent(String, String),
    #[error("base mismatch: {0}")]
    MismatchedBase(String),
    #[error("dart path is not a closed loop at the base: {0}")]
    NotClosed(String),
    #[error("not a subgraph: {0}")]
    InvalidSubgraph(String),
    #[error("not a component: {0}")]
    NotAComponent(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("based category requires a basepoint: {0}")]
    MissingBasepoint(String),
    #[error("square does not commute: {0}")]
    NotCommuting(String),
    #[error("mismatched index sets: {0}")]
    MismatchedIndex(String),
    #[error("invalid word: {0}")]
    InvalidWord(String),
    #[error("empty fiber over {0}")]
    EmptyFiber(String),
    #[error("equalizer is not a union of components (component {0})")]
    RigidityViolated(usize),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{0}")]
    Workspace(String),
    #[error("line {line}: {source}")]
    At { line: usize, source: Box<Error> },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// One line per underlying violation, each prefixed with the location
    /// when one is known.
    pub fn lines(&self) -> Vec<String> {
        let (prefix, inner) = match self {
            Error::At { line, source } => (format!("line {line}: "), source.as_ref()),
            other => (String::new(), other),
        };
        let items: Vec<String> = match inner {
            Error::InvalidGraph(vs) => vs.iter().map(|v| format!("invalid graph: {v}")).collect(),
            Error::InvalidMorphism(vs) => vs.iter().map(|v| format!("invalid morphism: {v}")).collect(),
            Error::InvalidCover(vs) => vs.iter().map(|v| format!("invalid cover: {v}")).collect(),
            other => vec![other.to_string()],
        };
        items.into_iter().map(|m| format!("{prefix}{m}")).collect()
    }
}

struct Joined<'a, T>(&'a [T]);

impl<T: fmt::Display> fmt::Display for Joined<'_, T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, item) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{item}")?;
        }
        Ok(())
    }
}
