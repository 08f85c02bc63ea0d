use serde::Serialize;

use crate::exactnum::{ExactError, QuadNum, Rational};

/// A continuous piecewise-linear function on `[t₀, t_k]` with rational
/// slopes. Consecutive pieces always have different slopes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PiecewiseLinear {
    /// `t₀ < t₁ < … < t_k`.
    pub breakpoints: Vec<QuadNum>,
    /// Function values at the breakpoints.
    pub values: Vec<QuadNum>,
    /// Slope on `[t_i, t_{i+1}]`.
    #[serde(with = "crate::exactnum::serde_vec")]
    pub slopes: Vec<Rational>,
}

pub struct Builder {
    pieces: Vec<(QuadNum, QuadNum, Rational, Rational)>,
}

impl PiecewiseLinear {
    pub fn builder() -> Builder {
        Builder { pieces: Vec::new() }
    }

    /// Evaluates at `t`, clamping to the domain ends.
    pub fn eval(&self, t: &QuadNum) -> Result<QuadNum, ExactError> {
        let n = self.slopes.len();
        let mut i = 0;
        while i + 1 < n && &self.breakpoints[i + 1] <= t {
            i += 1;
        }
        let dt = t.try_sub(&self.breakpoints[i])?;
        self.values[i].try_add(&dt.scale(&self.slopes[i]))
    }

    pub fn is_convex(&self) -> bool {
        self.slopes.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn is_concave(&self) -> bool {
        self.slopes.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn is_non_decreasing(&self) -> bool {
        self.slopes.iter().all(|s| s >= &Rational::from_integer(0.into()))
    }
}

impl Builder {
    /// Adds the piece `x ↦ c0 + c1·x` on `[lo, hi]`.
    pub fn push(&mut self, lo: &QuadNum, hi: &QuadNum, c0: &Rational, c1: &Rational) -> Result<(), ExactError> {
        if let Some(last) = self.pieces.last_mut() {
            if &last.3 == c1 {
                last.1 = hi.clone();
                return Ok(());
            }
        }
        self.pieces.push((lo.clone(), hi.clone(), c0.clone(), c1.clone()));
        Ok(())
    }

    pub fn finish(self) -> PiecewiseLinear {
        let mut breakpoints = Vec::new();
        let mut values = Vec::new();
        let mut slopes = Vec::new();
        let eval = |x: &QuadNum, c0: &Rational, c1: &Rational| x.scale(c1).add_rational(c0);
        for (lo, _, c0, c1) in &self.pieces {
            breakpoints.push(lo.clone());
            values.push(eval(lo, c0, c1));
            slopes.push(c1.clone());
        }
        if let Some((_, hi, c0, c1)) = self.pieces.last() {
            breakpoints.push(hi.clone());
            values.push(eval(hi, c0, c1));
        }
        PiecewiseLinear {
            breakpoints,
            values,
            slopes,
        }
    }
}
