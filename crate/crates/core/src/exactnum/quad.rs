//! Numbers of the form `a + b·√d` with rational `a`, `b` and square-free `d`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{format_rational, int, parse_rational, sign, Rational};
use super::surd::SurdSum;
use super::ExactError;

/// Splits `n > 0` as `s² · k` with `k` square-free, by trial division.
pub fn square_free_part(n: &BigInt) -> (BigInt, BigInt) {
    assert!(n.is_positive(), "square_free_part expects a positive integer");
    if let Some(small) = n.to_u64() {
        let (s, k) = square_free_u64(small);
        return (BigInt::from(s), BigInt::from(k));
    }
    let mut rest = n.clone();
    let mut square = BigInt::one();
    let mut kernel = BigInt::one();
    let mut p = BigInt::from(2u32);
    while &p * &p <= rest {
        let mut e = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        for _ in 0..e / 2 {
            square *= &p;
        }
        if e % 2 == 1 {
            kernel *= &p;
        }
        p += if p == BigInt::from(2u32) { 1u32 } else { 2u32 };
    }
    (square, kernel * rest)
}

fn square_free_u64(mut n: u64) -> (u64, u64) {
    let mut square = 1u64;
    let mut kernel = 1u64;
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        let mut e = 0u32;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        for _ in 0..e / 2 {
            square *= p;
        }
        if e % 2 == 1 {
            kernel *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    (square, kernel * n)
}

/// Smallest prime factor of `n > 1`.
pub(crate) fn smallest_prime_factor(n: &BigInt) -> BigInt {
    let mut p = BigInt::from(2u32);
    while &p * &p <= *n {
        if (n % &p).is_zero() {
            return p;
        }
        p += if p == BigInt::from(2u32) { 1u32 } else { 2u32 };
    }
    n.clone()
}

/// Exact real number `a + b·√d`.
///
/// Always kept canonical: `d` is square-free, and `b == 0` exactly when
/// `d == 0`. Two canonical values are equal iff their fields are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadNum {
    a: Rational,
    b: Rational,
    d: BigInt,
}

/// The four field operations accepted by [`qn_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl QuadNum {
    /// Builds `a + b·√d`, canonicalizing the radicand.
    pub fn new(a: Rational, b: Rational, d: BigInt) -> Result<Self, ExactError> {
        if d.is_negative() {
            return Err(ExactError::NegativeRadicand(d.to_string()));
        }
        if d.is_zero() || b.is_zero() {
            return Ok(Self::rational(a));
        }
        let (s, k) = square_free_part(&d);
        let b = b * Rational::from_integer(s);
        if k.is_one() {
            return Ok(Self::rational(a + b));
        }
        Ok(Self { a, b, d: k })
    }

    pub fn rational(a: Rational) -> Self {
        Self {
            a,
            b: Rational::zero(),
            d: BigInt::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(int(n))
    }

    pub fn zero() -> Self {
        Self::rational(Rational::zero())
    }

    /// `√n` for a non-negative integer `n`.
    pub fn sqrt_int(n: i64) -> Result<Self, ExactError> {
        Self::new(Rational::zero(), Rational::one(), BigInt::from(n))
    }

    /// `√r` for a non-negative rational `r`.
    pub fn sqrt_rational(r: &Rational) -> Result<Self, ExactError> {
        if r.is_negative() {
            return Err(ExactError::NegativeRadicand(format_rational(r)));
        }
        // √(p/q) = √(p·q) / q
        let m = r.numer() * r.denom();
        Self::new(Rational::zero(), Rational::new(BigInt::one(), r.denom().clone()), m)
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.a)
    }

    /// Radicand shared with `other`, or an error if both are irrational
    /// over different square-free radicands.
    fn common_radicand(&self, other: &Self) -> Result<BigInt, ExactError> {
        match (self.is_rational(), other.is_rational()) {
            (true, true) => Ok(BigInt::zero()),
            (true, false) => Ok(other.d.clone()),
            (false, true) => Ok(self.d.clone()),
            (false, false) if self.d == other.d => Ok(self.d.clone()),
            _ => Err(ExactError::MixedRadicand(self.d.to_string(), other.d.to_string())),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ExactError> {
        let d = self.common_radicand(other)?;
        Self::new(&self.a + &other.a, &self.b + &other.b, d)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, ExactError> {
        let d = self.common_radicand(other)?;
        Self::new(&self.a - &other.a, &self.b - &other.b, d)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ExactError> {
        let d = self.common_radicand(other)?;
        let dr = Rational::from_integer(d.clone());
        let a = &self.a * &other.a + &self.b * &other.b * dr;
        let b = &self.a * &other.b + &self.b * &other.a;
        Self::new(a, b, d)
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, ExactError> {
        if other.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let d = self.common_radicand(other)?;
        let dr = Rational::from_integer(d.clone());
        // multiply through by the conjugate of the divisor
        let norm = &other.a * &other.a - &other.b * &other.b * &dr;
        let a = (&self.a * &other.a - &self.b * &other.b * &dr) / &norm;
        let b = (&self.b * &other.a - &self.a * &other.b) / &norm;
        Self::new(a, b, d)
    }

    pub fn neg(&self) -> Self {
        Self {
            a: -&self.a,
            b: -&self.b,
            d: self.d.clone(),
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            a: &self.a * k,
            b: &self.b * k,
            d: self.d.clone(),
        }
    }

    pub fn add_rational(&self, k: &Rational) -> Self {
        Self {
            a: &self.a + k,
            b: self.b.clone(),
            d: self.d.clone(),
        }
    }

    /// The Galois conjugate `a − b·√d`.
    pub fn conjugate(&self) -> Self {
        self.neg().add_rational(&(&self.a + &self.a))
    }

    /// Exact sign of `a + b·√d`, by squaring when the two terms disagree.
    pub fn signum(&self) -> i8 {
        let sa = sign(&self.a);
        let sb = sign(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * Rational::from_integer(self.d.clone());
        // sa and sb disagree: the larger magnitude wins
        match a2.cmp(&b2d) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn to_surd_sum(&self) -> SurdSum {
        let mut s = SurdSum::from_rational(self.a.clone());
        if !self.b.is_zero() {
            s = s.add(&SurdSum::term(self.b.clone(), self.d.clone()));
        }
        s
    }

    /// Lossy conversion for display and test oracles only.
    pub fn to_f64(&self) -> f64 {
        let d = self.d.to_f64().unwrap_or(f64::NAN);
        super::rational::to_f64(&self.a) + super::rational::to_f64(&self.b) * d.sqrt()
    }
}

impl From<Rational> for QuadNum {
    fn from(r: Rational) -> Self {
        Self::rational(r)
    }
}

impl PartialOrd for QuadNum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadNum {
    fn cmp(&self, other: &Self) -> Ordering {
        match qn_cross_compare(self, other) {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }
}

impl fmt::Display for QuadNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return f.write_str(&format_rational(&self.a));
        }
        let b = format_rational(&self.b.abs());
        let op = if self.b.is_negative() { "-" } else { "+" };
        let coeff = if self.b.abs().is_one() {
            String::new()
        } else {
            format!("({b})")
        };
        if self.a.is_zero() {
            let lead = if self.b.is_negative() { "-" } else { "" };
            write!(f, "{lead}{coeff}√{}", self.d)
        } else {
            write!(f, "{}{op}{coeff}√{}", format_rational(&self.a), self.d)
        }
    }
}

/// One field operation on two `QuadNum`s sharing a radicand (or with one rational operand).
pub fn qn_arith(x: &QuadNum, y: &QuadNum, op: ArithOp) -> Result<QuadNum, ExactError> {
    match op {
        ArithOp::Add => x.try_add(y),
        ArithOp::Sub => x.try_sub(y),
        ArithOp::Mul => x.try_mul(y),
        ArithOp::Div => x.try_div(y),
    }
}

pub fn qn_sign(x: &QuadNum) -> i8 {
    x.signum()
}

/// Sign of `x − y` for arbitrary radicands.
pub fn qn_cross_compare(x: &QuadNum, y: &QuadNum) -> i8 {
    if x.is_rational() && y.is_rational() {
        return sign(&(&x.a - &y.a));
    }
    if let Ok(diff) = x.try_sub(y) {
        return diff.signum();
    }
    x.to_surd_sum().sub(&y.to_surd_sum()).signum()
}

/// Real roots of `A·t² + B·t + C = 0` in ascending order; a double root is reported once.
pub fn quadratic_roots(a: &Rational, b: &Rational, c: &Rational) -> Result<Vec<QuadNum>, ExactError> {
    if a.is_zero() {
        if b.is_zero() {
            return if c.is_zero() {
                Err(ExactError::IdenticallyZero)
            } else {
                Ok(Vec::new())
            };
        }
        return Ok(vec![QuadNum::rational(-c / b)]);
    }
    let disc = b * b - int(4) * a * c;
    if disc.is_negative() {
        return Ok(Vec::new());
    }
    let two_a = int(2) * a;
    let center = QuadNum::rational(-b / &two_a);
    if disc.is_zero() {
        return Ok(vec![center]);
    }
    let half_width = QuadNum::sqrt_rational(&disc)?.scale(&(Rational::one() / &two_a).abs());
    let lo = center.try_sub(&half_width)?;
    let hi = center.try_add(&half_width)?;
    Ok(vec![lo, hi])
}

/// Evaluates `A·x² + B·x + C` exactly in the field of `x`.
pub fn eval_quadratic(a: &Rational, b: &Rational, c: &Rational, x: &QuadNum) -> Result<QuadNum, ExactError> {
    let x2 = x.try_mul(x)?;
    Ok(x2.scale(a).try_add(&x.scale(b))?.add_rational(c))
}

/// Greatest common divisor of a list of integers (0 for an empty or all-zero list).
pub fn gcd_all<'a>(xs: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    xs.into_iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// JSON encoding `{"a":"p/q","b":"p/q","d":n}`.
#[derive(Serialize, Deserialize)]
struct QuadNumJson {
    a: String,
    b: String,
    d: serde_json::Value,
}

impl Serialize for QuadNum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let d = match self.d.to_i64() {
            Some(v) => serde_json::Value::from(v),
            None => serde_json::Value::String(self.d.to_string()),
        };
        QuadNumJson {
            a: format_rational(&self.a),
            b: format_rational(&self.b),
            d,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuadNum {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = QuadNumJson::deserialize(de)?;
        let a = parse_rational(&raw.a).map_err(D::Error::custom)?;
        let b = parse_rational(&raw.b).map_err(D::Error::custom)?;
        let d: BigInt = match &raw.d {
            serde_json::Value::Number(n) => n
                .as_i64()
                .map(BigInt::from)
                .ok_or_else(|| D::Error::custom("radicand must be an integer"))?,
            serde_json::Value::String(s) => s.parse().map_err(D::Error::custom)?,
            _ => return Err(D::Error::custom("radicand must be an integer")),
        };
        QuadNum::new(a, b, d).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn q(a: Rational, b: Rational, d: i64) -> QuadNum {
        QuadNum::new(a, b, BigInt::from(d)).unwrap()
    }

    #[test]
    fn square_free_split() {
        assert_eq!(square_free_part(&BigInt::from(32)), (BigInt::from(4), BigInt::from(2)));
        assert_eq!(square_free_part(&BigInt::from(1)), (BigInt::from(1), BigInt::from(1)));
        assert_eq!(square_free_part(&BigInt::from(252)), (BigInt::from(6), BigInt::from(7)));
        let big = BigInt::from(u64::MAX) * BigInt::from(9);
        let (s, k) = square_free_part(&big);
        assert_eq!(&s * &s * &k, big);
    }

    #[test]
    fn canonical_forms() {
        // √32 = 4√2
        let x = q(int(8), int(-1), 32);
        assert_eq!(x, q(int(8), int(-4), 2));
        // d = 1 folds into a, d = 4 as well
        assert_eq!(q(int(1), int(3), 1), QuadNum::from_int(4));
        assert_eq!(q(int(1), int(3), 4), QuadNum::from_int(7));
        assert_eq!(q(int(5), int(0), 7), QuadNum::from_int(5));
        assert_eq!(q(int(5), int(0), 7).d(), &BigInt::zero());
        assert!(QuadNum::new(int(0), int(1), BigInt::from(-3)).is_err());
    }

    #[test]
    fn arithmetic_examples() {
        let one_plus = q(int(1), int(1), 2);
        let two = QuadNum::from_int(2);
        assert_eq!(qn_arith(&one_plus, &two, ArithOp::Add).unwrap(), q(int(3), int(1), 2));
        let one_minus = q(int(1), int(-1), 2);
        assert_eq!(
            qn_arith(&one_plus, &one_minus, ArithOp::Mul).unwrap(),
            QuadNum::from_int(-1)
        );
        let x = q(int(8), int(-1), 32);
        let eight = QuadNum::from_int(8);
        assert_eq!(qn_arith(&x, &eight, ArithOp::Div).unwrap(), q(int(1), rat(-1, 2), 2));
    }

    #[test]
    fn arithmetic_errors() {
        let r2 = QuadNum::sqrt_int(2).unwrap();
        let r3 = QuadNum::sqrt_int(3).unwrap();
        assert!(matches!(r2.try_add(&r3), Err(ExactError::MixedRadicand(..))));
        assert!(matches!(r2.try_div(&QuadNum::zero()), Err(ExactError::DivisionByZero)));
        // 1/(1+√2) = √2 − 1
        let inv = QuadNum::from_int(1).try_div(&q(int(1), int(1), 2)).unwrap();
        assert_eq!(inv, q(int(-1), int(1), 2));
    }

    #[test]
    fn sign_examples() {
        assert_eq!(qn_sign(&q(int(1), int(-1), 2)), -1);
        assert_eq!(qn_sign(&q(int(0), int(0), 7)), 0);
        // 4 − √7 > 0 since 16 > 7
        assert_eq!(qn_sign(&q(int(4), int(-1), 7)), 1);
        assert_eq!(qn_sign(&q(int(-3), int(1), 9 + 2)), 1);
        assert_eq!(qn_sign(&q(int(-3), int(1), 7)), -1);
    }

    #[test]
    fn cross_compare_examples() {
        let r2 = QuadNum::sqrt_int(2).unwrap();
        let r3 = QuadNum::sqrt_int(3).unwrap();
        assert_eq!(qn_cross_compare(&r2, &r3), -1);
        let x = q(int(1), int(1), 2);
        assert_eq!(qn_cross_compare(&x, &x.clone()), 0);
        // 4 − √7 ≈ 1.354 vs 1 + √2/2 ≈ 1.707
        let lhs = q(int(4), int(-1), 7);
        let rhs = q(int(1), rat(1, 2), 2);
        let oracle = (lhs.to_f64() - rhs.to_f64()).signum() as i8;
        assert_eq!(qn_cross_compare(&lhs, &rhs), oracle);
        assert_eq!(qn_cross_compare(&lhs, &rhs), -1);
    }

    #[test]
    fn roots_examples() {
        assert_eq!(
            quadratic_roots(&int(1), &int(-3), &int(2)).unwrap(),
            vec![QuadNum::from_int(1), QuadNum::from_int(2)]
        );
        assert_eq!(
            quadratic_roots(&int(8), &int(-16), &int(4)).unwrap(),
            vec![q(int(1), rat(-1, 2), 2), q(int(1), rat(1, 2), 2)]
        );
        assert_eq!(
            quadratic_roots(&int(0), &int(2), &int(-6)).unwrap(),
            vec![QuadNum::from_int(3)]
        );
        assert!(quadratic_roots(&int(1), &int(0), &int(1)).unwrap().is_empty());
        assert_eq!(
            quadratic_roots(&int(1), &int(-2), &int(1)).unwrap(),
            vec![QuadNum::from_int(1)]
        );
        assert!(matches!(
            quadratic_roots(&int(0), &int(0), &int(0)),
            Err(ExactError::IdenticallyZero)
        ));
        // negative leading coefficient still ascending
        let r = quadratic_roots(&int(-1), &int(0), &int(2)).unwrap();
        assert_eq!(r[0], q(int(0), int(-1), 2));
        assert_eq!(r[1], q(int(0), int(1), 2));
    }

    #[test]
    fn json_roundtrip() {
        let x = q(rat(1, 3), rat(-1, 2), 7);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"a":"1/3","b":"-1/2","d":7}"#);
        let back: QuadNum = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn display() {
        assert_eq!(q(int(4), int(-1), 7).to_string(), "4-√7");
        assert_eq!(q(int(1), rat(-1, 2), 2).to_string(), "1-(1/2)√2");
        assert_eq!(q(int(0), int(-1), 3).to_string(), "-√3");
    }
}
