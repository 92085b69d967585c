use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("operator is not logical: anticommutes with {kind} check {index}")]
    NotLogical { kind: char, index: usize },
    #[error("operator is a stabilizer, not a nontrivial logical")]
    TrivialLogical,
    #[error("operator is reducible: its induced graph has column nullity {nullity}")]
    Reducible { nullity: usize },
    #[error("operator must be pure {0}-type")]
    WrongType(char),
    #[error("layer count must be odd and at least 1, got {0}")]
    EvenLayers(usize),
    #[error("X and Z operators must overlap on exactly one qubit, found {0}")]
    Overlap(usize),
    #[error("measured operators must have disjoint supports")]
    NotDisjoint,
    #[error("exhaustive cap exceeded: {size} > {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("syndrome is not in the column space of the check matrix")]
    InconsistentSyndrome,
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown code `{0}`")]
    UnknownCode(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
