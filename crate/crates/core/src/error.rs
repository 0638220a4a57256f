use thiserror::Error;

/// Errors raised anywhere in the crate.
///
/// Variants split into two families: input/validation problems (bad graphs,
/// bad specs, unparseable polynomials) and internal failures (an exact
/// division that left a remainder, or two evaluation routes disagreeing).
/// The CLI maps the first family to exit code 1 and the second to 2.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("polynomials belong to different variable registries")]
    RegistryMismatch,

    #[error("negative power {exp} of a non-unit polynomial")]
    NonUnitPower { exp: i64 },

    #[error("variable `{var}` has a negative exponent but is bound to a non-unit")]
    NonUnitSubstitution { var: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("non-exact division: {0}")]
    NonExactDivision(String),

    #[error("cannot parse polynomial `{input}`: {reason}")]
    Parse { input: String, reason: String },

    #[error("unknown edge `{0}`")]
    UnknownEdge(String),

    #[error("duplicate edge id `{0}`")]
    DuplicateEdge(String),

    #[error("edge `{edge}`: endpoint {vertex} out of range (graph has {vertices} vertices)")]
    EndpointOutOfRange {
        edge: String,
        vertex: usize,
        vertices: usize,
    },

    #[error("graph has {edges} edges, above the enumeration cap of {cap}")]
    CapExceeded { edges: usize, cap: usize },

    #[error("no weights registered for color `{0}`")]
    UnregisteredColor(String),

    #[error("invalid label `{0}`: labels must be identifiers distinct from reserved variables")]
    InvalidLabel(String),

    #[error("{field}: {reason}")]
    Invalid { field: String, reason: String },

    #[error("edge `{0}`: replacement count must be nonzero")]
    ZeroReplacement(String),

    #[error("edge `{0}`: negative length/width needs the bracket-specialized ring")]
    NegativeInGeneralRing(String),

    #[error("edge `{0}` has no replacement directive")]
    MissingDirective(String),

    #[error("rational word term {index} is zero")]
    ZeroWordTerm { index: usize },

    #[error("internal check failed: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors that indicate a bug or an oracle mismatch rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::NonExactDivision(_) | Error::Internal(_) | Error::RegistryMismatch
        )
    }

    pub(crate) fn invalid(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Invalid {
            field: field.into(),
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
