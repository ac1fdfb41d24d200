//! Exact scalar arithmetic and the precision contract for approximate
//! evaluation.
//!
//! Everything upstream of numerical rendering is exact: [`Rational`] is an
//! arbitrary-precision reduced fraction, [`SqrtThree`] is an element
//! `p + q*sqrt3` of the field Q(sqrt3), and [`ParityPolynomial`] is a
//! polynomial over Q(sqrt3) that structurally carries only even or only odd
//! powers. Approximate evaluation goes through [`Real`], a binary floating
//! value with explicit precision and round-to-nearest-even semantics,
//! governed by a [`PrecisionContext`].

mod parity;
mod rational;
mod real;
mod sqrt3;

pub use parity::{Parity, ParityPolynomial};
pub use rational::Rational;
pub use real::Real;
pub use sqrt3::{sqrt3_add, sqrt3_div, sqrt3_mul, SqrtThree};

/// Working-precision contract for approximate evaluation.
///
/// `bits` is the binary working precision; `target_digits` is the number of
/// decimal digits the caller may rely on in rendered output. The invariant
/// `bits >= ceil(3.33 * target_digits) + 64` keeps 64 guard bits above the
/// requested decimal accuracy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrecisionContext {
    bits: u32,
    target_digits: u32,
}

impl PrecisionContext {
    /// Context guaranteeing `target_digits` correct decimal digits.
    // the 3.33 bits-per-digit ratio is part of the precision contract
    // (a shade above log2(10), before the 64 guard bits)
    #[allow(clippy::approx_constant)]
    pub fn new(target_digits: u32) -> Self {
        let target_digits = target_digits.max(1);
        let bits = ((f64::from(target_digits) * 3.33).ceil() as u32) + 64;
        PrecisionContext {
            bits,
            target_digits,
        }
    }

    /// Context with an explicit bit count (still carrying the guard-bit
    /// invariant: the digit target is derived downward from `bits`).
    #[allow(clippy::approx_constant)]
    pub fn with_bits(bits: u32) -> Self {
        let bits = bits.max(96);
        let target_digits = (((bits - 64) as f64) / 3.33).floor() as u32;
        PrecisionContext {
            bits,
            target_digits: target_digits.max(1),
        }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn target_digits(&self) -> u32 {
        self.target_digits
    }

    /// Absolute tolerance `2^-(bits - 32)` used when a computation needs an
    /// internal error budget strictly below the rendered accuracy.
    pub fn budget_bits(&self) -> u32 {
        self.bits - 32
    }
}

impl Default for PrecisionContext {
    fn default() -> Self {
        PrecisionContext::new(30)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn context_guard_bits() {
        let ctx = PrecisionContext::new(30);
        assert!(ctx.bits() >= (30.0f64 * 3.33).ceil() as u32 + 64);
        assert_eq!(ctx.target_digits(), 30);
        let ctx = PrecisionContext::new(70);
        assert!(ctx.bits() >= 298);
    }
}
