//! Certified real and complex interval arithmetic over dyadic endpoints.

mod complex;
mod dyadic;
pub mod elementary;
mod interval;

pub use complex::ComplexBall;
pub use dyadic::{Dyadic, Round};
pub use interval::Interval;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BallError {
    #[error("division by an interval containing zero")]
    DivisionByZero,
    #[error("argument outside the domain: {0}")]
    Domain(&'static str),
}

/// Working-precision schedule: start, then double up to the cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrecisionPolicy {
    pub start_bits: u32,
    pub cap_bits: u32,
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        PrecisionPolicy { start_bits: 128, cap_bits: 4096 }
    }
}

impl PrecisionPolicy {
    pub fn new(start_bits: u32, cap_bits: u32) -> Self {
        PrecisionPolicy { start_bits, cap_bits: cap_bits.max(start_bits) }
    }

    /// The precisions tried, in order.
    pub fn schedule(&self) -> Vec<u32> {
        let mut out = vec![self.start_bits.max(16)];
        while *out.last().unwrap() < self.cap_bits {
            let next = (out.last().unwrap() * 2).min(self.cap_bits);
            out.push(next);
        }
        out
    }
}
