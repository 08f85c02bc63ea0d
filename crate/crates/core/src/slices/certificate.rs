use serde::Serialize;

use super::{FSample, SliceBody};
use crate::error::{Error, Result};
use crate::exactnum::{int, Rational, SurdSum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "NON-POLYHEDRAL-ON-SAMPLE-WINDOW")]
    NonPolyhedral,
    #[serde(rename = "INCONCLUSIVE")]
    Inconclusive,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::NonPolyhedral => "NON-POLYHEDRAL-ON-SAMPLE-WINDOW",
            Verdict::Inconclusive => "INCONCLUSIVE",
        }
    }
}

/// `f(r − h) − 2f(r) + f(r + h)` on one window of samples.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SecondDifference {
    #[serde(with = "crate::exactnum::serde_vec")]
    pub window: Vec<Rational>,
    #[serde(serialize_with = "display")]
    pub value: SurdSum,
    pub sign: i8,
    /// Whether one boundary constraint is tight at all three samples, so the
    /// three values lie on a single smooth arc of `f`.
    pub same_arc: bool,
}

fn display<S: serde::Serializer>(v: &SurdSum, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub verdict: Verdict,
    pub witness: Option<SecondDifference>,
    pub second_differences: Vec<SecondDifference>,
}

fn second_difference(a: &FSample, b: &FSample, c: &FSample) -> SecondDifference {
    let value = a
        .value
        .to_surd_sum()
        .add(&c.value.to_surd_sum())
        .sub(&b.value.to_surd_sum().scale(&int(2)));
    let same_arc = a.active.iter().any(|k| b.active.contains(k) && c.active.contains(k));
    SecondDifference {
        window: vec![a.r.clone(), b.r.clone(), c.r.clone()],
        sign: value.signum(),
        value,
        same_arc,
    }
}

/// Exact second differences of `f` over every window of three consecutive,
/// equally spaced samples.
///
/// The verdict is non-polyhedral when some window whose samples lie on one
/// smooth arc has a non-zero second difference; the first such window is
/// the witness. Windows straddling a change of binding constraint are
/// reported but never used as witnesses.
pub fn nonpolyhedrality_certificate(body: &SliceBody) -> Result<Certificate> {
    let s = &body.f_samples;
    let mut second_differences = Vec::new();
    for w in s.windows(3) {
        if &w[1].r - &w[0].r == &w[2].r - &w[1].r {
            second_differences.push(second_difference(&w[0], &w[1], &w[2]));
        }
    }
    if second_differences.is_empty() {
        return Err(Error::InsufficientSamples {
            needed: 3,
            got: s.len(),
        });
    }
    let witness = second_differences.iter().find(|d| d.same_arc && d.sign != 0).cloned();
    let verdict = if witness.is_some() {
        Verdict::NonPolyhedral
    } else {
        Verdict::Inconclusive
    };
    Ok(Certificate {
        verdict,
        witness,
        second_differences,
    })
}
