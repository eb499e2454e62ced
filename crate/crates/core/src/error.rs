use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("non-generic parameters: {0}")]
    NonGeneric(String),
    #[error("slope {0} lies on a wall")]
    SlopeOnWall(String),
    #[error("singular matrix")]
    SingularMatrix,
    #[error("singular Jacobian for fixed point {0}")]
    SingularJacobian(String),
    #[error("calibration inconsistent: {0}")]
    CalibrationInconsistent(String),
    #[error("series precision exhausted (known below order {known}, needed {needed})")]
    Precision { known: i64, needed: i64 },
    #[error("pole at q = 1: {0}")]
    PoleAtQOne(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
