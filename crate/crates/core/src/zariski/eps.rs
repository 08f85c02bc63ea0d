//! Polynomials in a positive infinitesimal ε, ordered lexicographically from
//! the constant term up. Evaluating a class at `t₀ + ε` tells what happens on
//! the open interval just to the right of `t₀`.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::exactnum::{sign, OrderedScalar, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Eps(Vec<Rational>);

impl Eps {
    /// `c₀ + c₁·ε`.
    pub fn linear(c0: Rational, c1: Rational) -> Self {
        Self(vec![c0, c1]).trimmed()
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.0.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn trimmed(mut self) -> Self {
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
        self
    }
}

impl Add for Eps {
    type Output = Eps;
    fn add(self, rhs: Eps) -> Eps {
        let n = self.0.len().max(rhs.0.len());
        Eps((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect()).trimmed()
    }
}

impl Sub for Eps {
    type Output = Eps;
    fn sub(self, rhs: Eps) -> Eps {
        self + (-rhs)
    }
}

impl Neg for Eps {
    type Output = Eps;
    fn neg(self) -> Eps {
        Eps(self.0.into_iter().map(|c| -c).collect())
    }
}

impl Mul for Eps {
    type Output = Eps;
    fn mul(self, rhs: Eps) -> Eps {
        if self.0.is_empty() || rhs.0.is_empty() {
            return Eps(Vec::new());
        }
        let mut out = vec![Rational::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Eps(out).trimmed()
    }
}

impl OrderedScalar for Eps {
    fn from_rational(r: &Rational) -> Self {
        Eps(vec![r.clone()]).trimmed()
    }

    fn scale(&self, r: &Rational) -> Self {
        Eps(self.0.iter().map(|c| c * r).collect()).trimmed()
    }

    fn signum(&self) -> i8 {
        self.0.iter().map(sign).find(|&s| s != 0).unwrap_or(0)
    }
}
