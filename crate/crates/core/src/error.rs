use thiserror::Error;

/// Errors produced by the codec library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A filter produced a non-finite sample, which only happens when an
    /// unstable all-pole filter is driven by the caller.
    #[error("numeric overflow in filter output")]
    NumericOverflow,

    #[error("LSP conversion failed: found {found} of {expected} roots")]
    FailedConversion { found: usize, expected: usize },

    #[error("malformed frame: {0}")]
    MalformedFrame(String),

    #[error("truncated frame: need {needed} bits, have {available}")]
    TruncatedFrame { needed: usize, available: usize },

    #[error("not a container (bad magic)")]
    NotAContainer,

    #[error("unsupported container version {0}")]
    UnsupportedVersion(u8),

    #[error("unknown mode id {0}")]
    UnknownMode(u8),

    #[error("container truncated at frame {frame_index}: {reason}")]
    TruncatedContainer { frame_index: usize, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
