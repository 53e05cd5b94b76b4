use thiserror::Error;

/// Errors raised by the series, divisor and quadratic-form routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("invalid divisor query: {0}")]
    InvalidQuery(String),

    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("shift by {shift} exceeds series order {order}")]
    ShiftTooLarge { shift: usize, order: usize },

    #[error("z-window half-width {half_width} too small for q-order {order} (need at least {required})")]
    WindowTooSmall {
        order: usize,
        half_width: usize,
        required: usize,
    },

    #[error("coefficient overflow in {0}")]
    Overflow(&'static str),

    /// An internal invariant failed. This is always a bug, never bad input.
    #[error("invariant breach: {0}")]
    Invariant(String),
}

impl Error {
    /// True for errors caused by the caller's input rather than by the library.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::InvalidParams(_)
                | Error::InvalidQuery(_)
                | Error::OrderMismatch { .. }
                | Error::ShiftTooLarge { .. }
                | Error::WindowTooSmall { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
