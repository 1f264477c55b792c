use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty input")]
    Empty,
    #[error("cannot parse {0:?}")]
    Parse(String),
    #[error("value {value} out of range for degree {degree}")]
    ValueOutOfRange { value: usize, degree: usize },
    #[error("value {0} appears more than once")]
    Repeated(usize),
    #[error("degree {degree} exceeds the configured maximum {max}")]
    DegreeTooLarge { degree: usize, max: usize },
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("invalid index pair ({i},{j}) for degree {degree}")]
    InvalidIndices { i: usize, j: usize, degree: usize },
    #[error("{0} is not smooth")]
    NotSmooth(String),
    #[error("order does not match the reflections of the set: {0}")]
    SetMismatch(String),
    #[error("T({i},{j}) is not a wedge of the set")]
    NotAWedge { i: usize, j: usize },
    #[error("neither the set nor its inverse has a wedge")]
    NoWedge,
    #[error("rank {rank} outside the supported range {min}..={max}")]
    RankOutOfRange { rank: usize, min: usize, max: usize },
    #[error("{0} is not a positive root")]
    NotPositiveRoot(String),
    #[error("{0} is not an element of the generated group")]
    NotInGroup(String),
    #[error("{what}: {size} exceeds the cap {cap}")]
    CapExceeded { what: &'static str, size: usize, cap: usize },
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
