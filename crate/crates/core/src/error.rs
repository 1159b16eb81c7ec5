use thiserror::Error;

/// Errors raised by group, digraph, and search operations.
///
/// Variants split into three families reflected by [`Error::exit_code`]:
/// domain errors (bad input data), budget errors (a configured cap was hit),
/// and internal errors (a certified identity failed to verify, which means a
/// bug rather than bad input).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("table is not associative: ({a} * {b}) * {c} != {a} * ({b} * {c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("table has no two-sided identity element")]
    NoIdentity,
    #[error("element {element} has no two-sided inverse")]
    NoInverse { element: usize },
    #[error("malformed table: {detail}")]
    MalformedTable { detail: String },
    #[error("image array {index} is not a permutation of 0..{degree}")]
    NotAPermutation { index: usize, degree: usize },
    #[error("group order exceeds cap {cap}")]
    OrderCapExceeded { cap: usize },
    #[error("element set is not a subgroup: {detail}")]
    NotASubgroup { detail: String },
    #[error("subgroup is not normal: witness element {witness}")]
    NotNormal { witness: usize },
    #[error("permutation group is not transitive")]
    NotTransitive,
    #[error("not a block system: generator {generator} splits cell {cell}")]
    NotABlockSystem { generator: usize, cell: usize },
    #[error("vertex count {size} exceeds cap {cap}")]
    SizeOverflow { size: usize, cap: usize },
    #[error("point count {size} exceeds cap {cap}")]
    DegreeOverflow { size: usize, cap: usize },
    #[error("enumeration budget exceeded: {detail}")]
    BudgetExceeded { detail: String },
    #[error("arc ({u},{u}) would be a loop")]
    LoopArc { u: usize },
    #[error("partition does not cover the vertex set: {detail}")]
    BadPartition { detail: String },
    #[error("connection set contains the identity")]
    LoopInConnectionSet,
    #[error("connection set is not a union of double cosets: {detail}")]
    InvalidConnectionSet { detail: String },
    #[error("connection set meets the subgroup; coset digraph would have loops")]
    LoopsForbidden,
    #[error("subgroup is not a wreath witness for this connection set")]
    NotAWitness,
    #[error("set difference is not a union of cosets of the normal subgroup")]
    NotCosetUnion,
    #[error("digraph is not vertex-transitive")]
    NotVertexTransitive,
    #[error("instance size {size} exceeds cap {cap}")]
    SizeCap { size: usize, cap: usize },
    #[error("search node budget exhausted after {nodes} nodes")]
    Timeout { nodes: u64 },
    #[error("precondition violated: {detail}")]
    PreconditionViolated { detail: String },
    #[error("could not parse input: {detail}")]
    ParseError { detail: String },
    #[error("lifted map failed arc verification")]
    LiftFailedVerification,
    #[error("internal invariant failed: {detail}")]
    Internal { detail: String },
}

impl Error {
    /// Process exit code for the CLI: 1 domain error, 2 budget/timeout,
    /// 3 internal invariant failure.
    pub fn exit_code(&self) -> i32 {
        use Error::*;
        match self {
            OrderCapExceeded { .. }
            | SizeOverflow { .. }
            | DegreeOverflow { .. }
            | BudgetExceeded { .. }
            | SizeCap { .. }
            | Timeout { .. } => 2,
            LiftFailedVerification | Internal { .. } => 3,
            _ => 1,
        }
    }

    pub fn internal(detail: impl Into<String>) -> Self {
        Error::Internal {
            detail: detail.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
