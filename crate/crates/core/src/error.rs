use thiserror::Error;

/// Errors raised by the algebra, curve, frame and construction layers.
///
/// Geometric failures carry the parameter value at which they were detected so
/// that callers can report where a curve leaves the admissible class.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("NonSpatialInput: scalar part {scalar} exceeds tolerance")]
    NonSpatialInput { scalar: f64 },

    #[error("InsufficientSamples: need at least {needed}, got {got}")]
    InsufficientSamples { needed: usize, got: usize },

    #[error("NullTangent at parameter {param}")]
    NullTangent { param: f64 },

    #[error("OutOfRange: parameter {param} outside [{lo}, {hi}]")]
    OutOfRange { param: f64, lo: f64, hi: f64 },

    #[error("DegenerateFrame at parameter {param}: {what}")]
    DegenerateFrame { param: f64, what: String },

    #[error("NullRemainder at parameter {param}: {what}")]
    NullRemainder { param: f64, what: String },

    #[error("CausalFlip at parameter {param}: causal character of {vector} changes sign")]
    CausalFlip { param: f64, vector: String },

    #[error("NotSpatial at parameter {param}: scalar component {scalar}")]
    NotSpatial { param: f64, scalar: f64 },

    #[error("NotUnitSpeed at parameter {param}: N(curve') = {speed}")]
    NotUnitSpeed { param: f64, speed: f64 },

    #[error("NonUnitInput: {0}")]
    NonUnitInput(String),

    #[error("VanishingCurvature at parameter {param}: {what}")]
    VanishingCurvature { param: f64, what: String },

    #[error("PoleInRange: scaling factor vanishes near t = {t}")]
    PoleInRange { t: f64 },

    #[error("CausalMismatch: {0}")]
    CausalMismatch(String),

    #[error("InvalidFamilyParameter: {0}")]
    InvalidFamilyParameter(String),

    #[error("SingularOnRange at s = {s}: {what}")]
    SingularOnRange { s: f64, what: String },

    #[error("InvalidInitialFrame: {0}")]
    InvalidInitialFrame(String),

    #[error("InvalidCurve: {0}")]
    InvalidCurve(String),

    #[error("InvalidConfig: {0}")]
    InvalidConfig(String),

    #[error("Parse: {0}")]
    Parse(String),

    #[error("Io: {0}")]
    Io(String),
}

impl Error {
    /// True for failures caused by the geometry of the input curve rather
    /// than by malformed input.
    pub fn is_geometric(&self) -> bool {
        matches!(
            self,
            Error::NullTangent { .. }
                | Error::DegenerateFrame { .. }
                | Error::NullRemainder { .. }
                | Error::CausalFlip { .. }
                | Error::VanishingCurvature { .. }
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
