use std::path::PathBuf;

/// Errors produced by the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("malformed {format} header: {reason}")]
    MalformedHeader { format: &'static str, reason: String },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("unsupported bit depth: {0}")]
    UnsupportedBitDepth(String),

    #[error("could not decode image: {0}")]
    Decode(String),

    #[error("could not read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("unknown image format for {0}")]
    UnknownFormat(PathBuf),

    #[error("image has no foreground pixels")]
    EmptyForeground,

    #[error("direction vector is not a unit vector: ({0}, {1})")]
    NotUnit(f64, f64),

    #[error("invalid direction count {count}: {reason}")]
    InvalidDirectionCount { count: usize, reason: &'static str },

    #[error("corrupted boundary curve at vertex {0}: neither the determinant nor the edge normal decides criticality")]
    CorruptedCurve(usize),

    #[error("region bounded by the curves has zero area")]
    ZeroArea,

    #[error("transforms are not comparable: {0}")]
    Incompatible(String),

    #[error("brute-force enumeration is capped at {cap} intervals, got {got}")]
    SizeCap { cap: usize, got: usize },

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
}

pub type Result<T> = std::result::Result<T, Error>;
