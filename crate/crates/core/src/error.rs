use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unknown gate `{0}`")]
    UnknownGate(String),

    #[error("matrix is not unitary (max deviation from identity {deviation:.3e})")]
    NonUnitary { deviation: f64 },

    #[error("invalid polarity `{0}`")]
    InvalidPolarity(String),

    #[error("polarity has {found} digits but {expected} variables are present")]
    PolarityLengthMismatch { expected: usize, found: usize },

    #[error("expected a {expected} multiplexer, found {found}")]
    FormMismatch { expected: &'static str, found: String },

    #[error("vector length {0} is not a power of two")]
    LengthNotPowerOfTwo(usize),

    #[error("bit {bit} out of range for a vector over {vars} variables")]
    BitOutOfRange { bit: usize, vars: usize },

    #[error("{what}: size {size} exceeds the limit of {limit}")]
    SizeLimitExceeded {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("invalid multiplexer: {0}")]
    InvalidMultiplexer(String),

    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("line {line}: malformed cube `{cube}`")]
    MalformedCube { line: usize, cube: String },

    #[error("missing header directive `{0}`")]
    MissingHeader(&'static str),

    #[error("line {line}: expected width {expected}, found {found}")]
    InconsistentWidth {
        line: usize,
        expected: usize,
        found: usize,
    },

    #[error("unsupported PLA type `{0}`")]
    UnsupportedType(String),

    #[error("output index {index} out of range ({outputs} outputs)")]
    OutputIndexOutOfRange { index: usize, outputs: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
