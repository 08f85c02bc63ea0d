//! Exact arithmetic over ℚ and real quadratic fields ℚ(√d).

mod quad;
mod rational;
mod surd;

use std::fmt::Debug;

use num_traits::{Signed, Zero};
use thiserror::Error;

pub use quad::{
    eval_quadratic, gcd_all, qn_arith, qn_cross_compare, qn_sign, quadratic_roots, square_free_part, ArithOp, QuadNum,
};
pub use rational::{
    format_rational, int, ints, parse_rational, rat, serde_str, serde_vec, sign, to_f64, Display as RationalDisplay,
    Rational,
};
pub use surd::SurdSum;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ExactError {
    #[error("operands live in different quadratic fields (√{0} and √{1})")]
    MixedRadicand(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("quadratic A·t² + B·t + C is identically zero")]
    IdenticallyZero,
    #[error("negative radicand {0}")]
    NegativeRadicand(String),
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
}

/// An ordered field containing ℚ, as needed by the linear algebra in the
/// decomposition code. Implemented by [`Rational`] and by the infinitesimal
/// extension used to look just past a breakpoint.
pub trait OrderedScalar:
    Clone
    + Debug
    + PartialEq
    + std::ops::Add<Output = Self>
    + std::ops::Sub<Output = Self>
    + std::ops::Mul<Output = Self>
    + std::ops::Neg<Output = Self>
{
    fn from_rational(r: &Rational) -> Self;
    fn zero_value() -> Self {
        Self::from_rational(&Rational::zero())
    }
    fn scale(&self, r: &Rational) -> Self;
    fn signum(&self) -> i8;
    fn is_zero_value(&self) -> bool {
        self.signum() == 0
    }
}

impl OrderedScalar for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn scale(&self, r: &Rational) -> Self {
        self * r
    }

    fn signum(&self) -> i8 {
        if self.is_zero() {
            0
        } else if self.is_positive() {
            1
        } else {
            -1
        }
    }
}
