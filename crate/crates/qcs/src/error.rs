use thiserror::Error;

/// Errors shared by every module of the crate.
///
/// The window-related variants (`WindowTooSmall`, `BoundaryTouch`) exist
/// because all quivers here are finite truncations of infinite ones: an
/// operation whose mesh reaches into the untrusted margin must fail loudly
/// instead of returning silently truncated data.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported Dynkin type: {0}")]
    UnsupportedType(String),

    #[error("word {0:?} is not adapted to any orientation")]
    NotAdapted(Vec<u8>),

    #[error("window too small: {0}")]
    WindowTooSmall(String),

    #[error("knitting failed: {0}")]
    KnittingFailed(String),

    #[error("vertex {0} is frozen")]
    FrozenVertex(String),

    #[error("operation touches the window boundary: {0}")]
    BoundaryTouch(String),

    #[error("green-round result is not a downward translation: {0}")]
    TranslationMismatch(String),

    #[error("stabilized g-vector block at m={0} is singular")]
    SingularBlock(i32),

    #[error("G-matrix sequence did not stabilize within {0} rounds")]
    NotStabilized(usize),

    #[error("elements belong to different quantum-torus frames")]
    FrameMismatch,

    #[error("identity `{identity}` failed, residual: {residual}")]
    IdentityFailed { identity: String, residual: String },

    #[error("oscillator seed disagrees with the A1 quantization matrix: {0}")]
    MismatchWithLambdaC(String),

    #[error("variable at {0} is not an invertible monomial")]
    NotInvertible(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
