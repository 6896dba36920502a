use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NqaError {
    #[error("slot count mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("dense form requested for m = {m}, cap is {cap}")]
    DenseCapExceeded { m: usize, cap: usize },

    #[error("bad shape: {0}")]
    Shape(String),

    #[error("graded bracket needs homogeneous arguments: {0}")]
    NotHomogeneous(String),

    #[error("slot {slot} out of range 1..={m}")]
    SlotOutOfRange { slot: usize, m: usize },

    #[error("slots must be distinct, got {0} twice")]
    RepeatedSlot(usize),

    #[error("controlled gate needs at least one control")]
    EmptyControls,

    #[error("generator does not square to a multiple of the identity")]
    NotExponentiable,

    #[error("matrix is not symmetric (deviation {0:e})")]
    NotSymmetric(f64),

    #[error("matrix is not orthogonal (deviation {0:e})")]
    NotOrthogonal(f64),

    #[error("Jacobi sweep did not converge after {sweeps} sweeps (off-diagonal mass {off:e})")]
    NoConvergence { sweeps: usize, off: f64 },

    #[error("direction is not a unit vector (norm {0})")]
    NotUnit(f64),

    #[error("invalid value: {0}")]
    InvalidValue(String),

    #[error("invalid word literal {0:?}")]
    InvalidLiteral(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("unknown gate {0:?}")]
    UnknownGate(String),
}

pub type Result<T> = std::result::Result<T, NqaError>;

pub(crate) fn check_same_m(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(NqaError::DimensionMismatch { left, right })
    }
}
