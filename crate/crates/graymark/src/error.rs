use thiserror::Error;

/// Errors shared by every module in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed PGM header: {0}")]
    MalformedHeader(String),

    #[error("unsupported maxval {0}, only 255 is accepted")]
    UnsupportedMaxval(u32),

    #[error("truncated pixel data: expected {expected} samples, got {got}")]
    TruncatedData { expected: usize, got: usize },

    #[error("watermark dimensions {width}x{height} exceed the 16-bit payload header limit")]
    DimensionOverflow { width: usize, height: usize },

    #[error("bad payload header: {0}")]
    BadHeader(String),

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("capacity exceeded: {requested} bits requested, {capacity} available")]
    CapacityExceeded { capacity: usize, requested: usize },

    #[error("geometry mismatch: metadata describes {expected} pairs, image has {got}")]
    GeometryMismatch { expected: usize, got: usize },

    #[error("inconsistent location map: {0}")]
    MapInconsistent(String),

    #[error("odd dimensions {width}x{height}: Haar decomposition needs even width and height")]
    OddDimensions { width: usize, height: usize },

    #[error("range violation at ({x},{y}): {detail}")]
    RangeViolation { x: usize, y: usize, detail: String },

    #[error("dimension mismatch: {a_width}x{a_height} vs {b_width}x{b_height}")]
    DimensionMismatch {
        a_width: usize,
        a_height: usize,
        b_width: usize,
        b_height: usize,
    },

    #[error("bad metadata file: {0}")]
    BadMetadata(String),

    #[error("invalid image: {0}")]
    InvalidImage(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

pub type Result<T> = std::result::Result<T, Error>;
