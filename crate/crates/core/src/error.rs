use std::fmt;

use thiserror::Error;

use crate::embedding::Violation;
use crate::geometry::Coord;
use crate::graph::VertexSet;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("points {first} and {second} share position {pos}")]
    DuplicatePosition {
        first: usize,
        second: usize,
        pos: Coord,
    },
    #[error("point id {0} appears more than once")]
    DuplicateId(usize),
    #[error("point ids are not dense: id {missing} is absent")]
    SparseIds { missing: usize },
    #[error("unknown point id {0}")]
    UnknownId(usize),
    #[error("coordinate {0} exceeds the supported range")]
    CoordOutOfRange(Coord),
    #[error("instance is empty")]
    EmptyInstance,

    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("edge ({0}, {1}) is a self-loop")]
    SelfLoop(usize, usize),
    #[error("edge ({0}, {1}) appears more than once")]
    DuplicateEdge(usize, usize),
    #[error("vertex set member {member} is outside 0..{n}")]
    OutOfRangeMember { member: usize, n: usize },

    #[error("embedding has no position for vertex {0}")]
    MissingVertex(usize),
    #[error("embedding has no path for edge ({0}, {1})")]
    MissingEdgePath(usize, usize),
    #[error("embedding has a path for ({0}, {1}), which is not an edge of the graph")]
    UnexpectedEdgePath(usize, usize),
    #[error("embedding places vertex {0}, which is not in the graph")]
    UnexpectedVertex(usize),
    #[error("vertex {vertex} has degree {degree}, above the supported maximum of 3")]
    DegreeTooHigh { vertex: usize, degree: usize },
    #[error("vertex {0} is isolated")]
    IsolatedVertex(usize),
    #[error("router gave up after {attempts} attempts")]
    RoutingFailed { attempts: usize },
    #[error("invalid embedding: {}", list_violations(.0))]
    InvalidEmbedding(Vec<Violation>),
    #[error("invalid step decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("vertex {0} has no free axis direction for its support chain")]
    NoFreeDirection(usize),
    #[error("reduction produced an unintended geometry: {0}")]
    SeparationViolation(String),

    #[error("search budget of {limit} exhausted")]
    BudgetExceeded { limit: u64 },
    #[error("instance is infeasible: {0}")]
    Infeasible(String),

    #[error("vertex set is not dominating (vertex {0} undominated)")]
    NotDominating(usize),
    #[error("vertex set is not a liar's dominating set: {0}")]
    NotLiarsDominating(String),
    #[error("{0}")]
    Falsification(Box<Certificate>),
}

fn list_violations(v: &[Violation]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

/// Which proof-derived claim a certificate falsifies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Claim {
    /// `D ∪ J ∪ S` is a liar's dominating set of the gadget graph.
    ForwardMapIsLiars,
    /// Every liar's dominating set of the gadget graph contains all support points.
    SupportContained,
    /// A dominating set of size at most `|L| - 4l - 3n` can be read off `L`.
    SizeBound,
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Claim::ForwardMapIsLiars => "forward map is a liar's dominating set",
            Claim::SupportContained => "support points are contained",
            Claim::SizeBound => "extracted dominating set respects |L| - 4l - 3n",
        })
    }
}

/// A concrete set witnessing that a proof-derived claim failed on an instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub claim: Claim,
    pub set: VertexSet,
    pub detail: String,
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "falsification certificate [{}]: {} (set = {})",
            self.claim, self.detail, self.set
        )
    }
}
