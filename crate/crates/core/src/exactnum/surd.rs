//! Finite sums `Σ cᵢ·√kᵢ` over distinct square-free `kᵢ`, with exact sign.
//!
//! Used wherever values from different quadratic fields meet: cross-radicand
//! comparisons and second differences of slice samples.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::quad::{smallest_prime_factor, square_free_part};
use super::rational::{format_rational, sign, Rational};

/// Element of a multi-quadratic extension of ℚ. Key `1` holds the rational part.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SurdSum {
    terms: BTreeMap<BigInt, Rational>,
}

impl SurdSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::term(r, BigInt::one())
    }

    /// `c·√k` for any non-negative integer `k`.
    pub fn term(c: Rational, k: BigInt) -> Self {
        let mut s = Self::zero();
        if c.is_zero() || k.is_zero() {
            return s;
        }
        let (sq, kernel) = square_free_part(&k);
        s.terms.insert(kernel, c * Rational::from_integer(sq));
        s
    }

    fn push(&mut self, k: BigInt, c: Rational) {
        let entry = self.terms.entry(k.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BigInt, &Rational)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.push(k.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, c)| (k.clone(), c * r)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                // √k1·√k2 = g·√(k1·k2/g²)
                let g = k1.gcd(k2);
                let k = (k1 / &g) * (k2 / &g);
                out.push(k, c1 * c2 * Rational::from_integer(g));
            }
        }
        out
    }

    /// Exact sign by isolating one prime radical at a time and squaring.
    pub fn signum(&self) -> i8 {
        let Some(max_k) = self.terms.keys().filter(|k| !k.is_one()).max() else {
            return self.terms.get(&BigInt::one()).map(sign).unwrap_or(0);
        };
        let p = smallest_prime_factor(max_k);
        // self = y + z·√p with y, z free of √p
        let mut y = Self::zero();
        let mut z = Self::zero();
        for (k, c) in &self.terms {
            if (k % &p).is_zero() {
                z.push(k / &p, c.clone());
            } else {
                y.push(k.clone(), c.clone());
            }
        }
        let sy = y.signum();
        let sz = z.signum();
        if sz == 0 {
            return sy;
        }
        if sy == 0 || sy == sz {
            return sz;
        }
        let p_rat = Rational::from_integer(p);
        let diff = y.mul(&y).sub(&z.mul(&z).scale(&p_rat)).signum();
        if sy > 0 {
            diff
        } else {
            -diff
        }
    }
}

impl fmt::Display for SurdSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| {
                if k.is_one() {
                    format_rational(c)
                } else {
                    format!("({})√{}", format_rational(c), k)
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};

    fn s(c: Rational, k: i64) -> SurdSum {
        SurdSum::term(c, BigInt::from(k))
    }

    #[test]
    fn distinct_radicals_do_not_cancel() {
        let x = s(int(1), 2).add(&s(int(1), 3)).sub(&s(int(1), 5));
        assert!(!x.is_zero());
        // √2 + √3 ≈ 3.146 > √5 ≈ 2.236
        assert_eq!(x.signum(), 1);
    }

    #[test]
    fn sqrt_products_simplify() {
        let x = s(int(1), 6).mul(&s(int(1), 10));
        // √60 = 2√15
        assert_eq!(x, s(int(2), 15));
        assert_eq!(s(int(1), 8), s(int(2), 2));
    }

    #[test]
    fn near_cancellation() {
        // √2 + √3 vs √(5 + 2√6) are equal; compare (√2+√3)² − 5 − 2√6 = 0
        let a = s(int(1), 2).add(&s(int(1), 3));
        let sq = a.mul(&a).sub(&SurdSum::from_rational(int(5))).sub(&s(int(2), 6));
        assert!(sq.is_zero());
        // √7 + √11 vs √17 + 1: 2.6458 + 3.3166 = 5.9624 vs 4.1231 + 1
        let x = s(int(1), 7)
            .add(&s(int(1), 11))
            .sub(&s(int(1), 17))
            .sub(&SurdSum::from_rational(int(1)));
        assert_eq!(x.signum(), 1);
        // 1/2 − √(1/4) with kernel folding
        let y = SurdSum::from_rational(rat(1, 2)).sub(&SurdSum::term(rat(1, 2), BigInt::from(1)));
        assert_eq!(y.signum(), 0);
    }
}
