use thiserror::Error;

use crate::quadrature::QuadratureError;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("non-finite argument to {0}")]
    NonFinite(&'static str),

    /// The result is finite mathematically but not representable as `f64`.
    #[error("{function} overflows at z = {re} + {im}i")]
    Overflow { function: &'static str, re: f64, im: f64 },

    #[error("degenerate frame: mu and nu are both zero")]
    DegenerateFrame,

    #[error("root bracketing failed for {0}")]
    Bracketing(&'static str),

    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
}

pub(crate) fn positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be finite and strictly positive",
        })
    }
}

pub(crate) fn finite(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be finite",
        })
    }
}
