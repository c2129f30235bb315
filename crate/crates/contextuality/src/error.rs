use thiserror::Error;

/// Errors produced by this crate.
///
/// Two error families matter to callers: ordinary invalid input, and
/// *capability refusals* where the request is well-formed but exceeds a
/// documented size or budget limit. [`Error::is_capability_refusal`]
/// distinguishes them so front ends can map them to distinct exit codes.
#[derive(Debug, Error)]
#[non_exhaustive]
pub enum Error {
    #[error("invalid Pauli letter {letter:?} at position {position}")]
    InvalidLetter { letter: char, position: usize },

    #[error("empty observable string")]
    EmptyObservable,

    #[error("qubit count {0} outside the supported range 1..={1}")]
    QubitCountOutOfRange(u32, u32),

    #[error("operands act on different qubit counts: {0} and {1}")]
    QubitCountMismatch(u32, u32),

    #[error("component bits above qubit position {0} must be zero")]
    StrayBits(u32),

    #[error("observables {0}, {1}, {2} do not form a line")]
    NotALine(String, String, String),

    #[error("the identity observable does not label a point; use the dedicated identity-quadric constructor")]
    IdentityIndex,

    #[error("index observable of a {expected:?} quadric must be {expected_symmetry}, {index} is not")]
    WrongIndexSymmetry {
        expected: crate::space::QuadricKind,
        expected_symmetry: &'static str,
        index: String,
    },

    #[error("space construction supports 1..=7 qubits, got {0}")]
    SpaceTooLarge(u32),

    #[error("elliptic quadrics require at least 2 qubits")]
    NoEllipticQuadrics,

    #[error("configuration has no contexts")]
    NoContexts,

    #[error("assignment covers {0} points but the configuration has {1}")]
    AssignmentSizeMismatch(usize, usize),

    #[error("assignment values must be +1 or -1, found {0}")]
    AssignmentValue(i8),

    #[error("{name} = {value} is outside [0, 1]")]
    ParameterOutOfRange { name: &'static str, value: f64 },

    #[error("incidence rank {rank} exceeds the enumeration budget of 2^{budget_log2} codewords")]
    BudgetExceeded { rank: u32, budget_log2: u32 },

    #[error("lower-bound formulas are defined for 2 or more qubits, got {0}")]
    BoundsDomain(u32),

    #[error("graph has {0} vertices, isomorphism checks are capped at {1}")]
    GraphTooLarge(usize, usize),

    #[error("line class {0:?} does not have two vertex-role points and one midpoint per line")]
    SkeletonRoles([u32; 3]),

    #[error("record schema version {0} is not supported (expected {1})")]
    SchemaVersion(u32, u32),

    #[error("record is inconsistent with its declared geometry: {0}")]
    RecordMismatch(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors that refuse a well-formed request on size or budget
    /// grounds rather than rejecting malformed input.
    pub fn is_capability_refusal(&self) -> bool {
        matches!(
            self,
            Error::SpaceTooLarge(_)
                | Error::NoEllipticQuadrics
                | Error::BudgetExceeded { .. }
                | Error::GraphTooLarge(..)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
