//! Arbitrary-precision rationals and their string encoding.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ExactError;

/// Exact rational number in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// `n / d` as a [`Rational`]. Panics when `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a [`Rational`].
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Converts a slice of machine integers into a rational vector.
pub fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

/// Parses `"p/q"`, `"n"`, or a plain decimal like `"0.25"` into lowest terms.
pub fn parse_rational(s: &str) -> Result<Rational, ExactError> {
    let s = s.trim();
    let bad = || ExactError::Parse(s.to_string());
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.trim_start().starts_with('-');
        let whole: BigInt = if whole.is_empty() || whole == "-" || whole == "+" {
            BigInt::zero()
        } else {
            whole.parse().map_err(|_| bad())?
        };
        let frac_num: BigInt = frac.parse().map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let mut value = Rational::from_integer(whole.abs()) + Rational::new(frac_num, scale);
        if negative {
            value = -value;
        }
        return Ok(value);
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(n))
}

/// Formats as `"n"` for integers and `"p/q"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Sign as -1, 0 or +1.
pub fn sign(r: &Rational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Lossy conversion used only for display.
pub fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// Display adapter printing a rational in its canonical string form.
pub struct Display<'a>(pub &'a Rational);

impl fmt::Display for Display<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(self.0))
    }
}

/// Serde adapter for a single rational encoded as a string.
pub mod serde_str {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        from_json(&v).map_err(de::Error::custom)
    }

    /// Accepts either a JSON string or a JSON integer.
    pub fn from_json(v: &serde_json::Value) -> Result<Rational, ExactError> {
        match v {
            serde_json::Value::String(s) => parse_rational(s),
            serde_json::Value::Number(n) => {
                if let Some(i) = n.as_i64() {
                    Ok(int(i))
                } else {
                    parse_rational(&n.to_string())
                }
            }
            other => Err(ExactError::Parse(other.to_string())),
        }
    }
}

/// Serde adapter for a vector of rationals.
pub mod serde_vec {
    use super::*;
    use serde::{de, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&format_rational(r))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let v = Vec::<serde_json::Value>::deserialize(d)?;
        v.iter()
            .map(super::serde_str::from_json)
            .collect::<Result<_, _>>()
            .map_err(de::Error::custom)
    }
}
