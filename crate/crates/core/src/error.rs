use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: color out of range: {color} (r = {r})")]
    ColorOutOfRange { line: usize, color: String, r: u8 },
    #[error("line {line}: color {color} is not in palette {palette}")]
    PaletteViolation { line: usize, color: String, palette: String },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid type: {0}")]
    InvalidType(String),
    #[error("invalid density: {0}")]
    InvalidDensity(String),
    #[error("size mismatch: {left} vs {right} vertices")]
    SizeMismatch { left: usize, right: usize },
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("graph needs at least 2 vertices, got {0}")]
    TooSmall(usize),
    #[error("empty vertex subset")]
    EmptySubset,
    #[error("tuple {0:?} is not in the weak clique spectrum")]
    NotInSpectrum(Vec<usize>),
    #[error("the property is trivial (chromatic number 1)")]
    TrivialProperty,
    #[error("the family is not symmetric under color permutations")]
    AsymmetricFamily,
    #[error("type enumeration refused: search space bound {bound} exceeds limit {limit}")]
    ResourceGuard { bound: u128, limit: u128 },
    #[error("no admissible type with at most {kmax} vertices")]
    NoAdmissibleType { kmax: usize },
    #[error("graph has {n} vertices, exact search is limited to {limit} (set EDK_GUARD_N to override)")]
    GuardExceeded { n: usize, limit: usize },
    #[error("no member of the property exists on {0} vertices")]
    NoMember(usize),
    #[error("index {index} out of range ({len} available)")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Malformed input (as opposed to a well-formed request the domain rejects).
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Syntax { .. }
                | Error::ColorOutOfRange { .. }
                | Error::PaletteViolation { .. }
                | Error::InvalidArgument(_)
        )
    }
}
