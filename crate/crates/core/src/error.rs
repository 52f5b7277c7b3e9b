use thiserror::Error;

/// Errors produced by the navigation toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed Fibonacci word {word:?}: {reason}")]
    MalformedWord { word: String, reason: &'static str },

    #[error("zero has no Fibonacci coordinate")]
    ZeroHasNoWord,

    #[error("malformed address {input:?}: {reason}")]
    MalformedAddress { input: String, reason: String },

    #[error("sector {sector} out of range for {grid} (1..={arity})")]
    SectorOutOfRange { grid: &'static str, sector: u32, arity: u8 },

    #[error("unknown grid {0:?}")]
    UnknownGrid(String),

    #[error("grid mismatch: {left} vs {right}")]
    GridMismatch { left: &'static str, right: &'static str },

    #[error("{{{p},{q}}} is not a hyperbolic tiling")]
    NotHyperbolic { p: u32, q: u32 },

    #[error("geodesic needs two distinct points")]
    CoincidentPoints,

    #[error("radius {radius} exceeds the cap of {cap}")]
    RadiusCap { radius: usize, cap: usize },

    #[error("no origin arrow for the central tile")]
    CenterHasNoArrow,

    #[error("target not reachable inside the generated ball")]
    FrontierLimited,

    #[error("invalid relative address: {0}")]
    MalformedRelativeAddress(String),

    #[error("invalid rule: {0}")]
    InvalidRule(String),

    #[error("state {state} out of range (rule has {states} states)")]
    StateOutOfRange { state: u32, states: u32 },

    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),
}

pub type Result<T> = std::result::Result<T, Error>;
