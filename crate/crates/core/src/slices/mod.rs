//! Threefold Okounkov bodies assembled from surface slices.
//!
//! A slice body is `{0 ≤ t ≤ f(r), 0 ≤ y ≤ g(r, t)}` over a range of `r`,
//! where `f(r) = sup{s : v(r) − sC ample}` on the slice surface,
//! `v(r) = v₀ − r·w`, and `g(r, t) = C·v(r) − t·C²`. The slice surface must
//! have `Eff = Nef`, so the supremum over ample classes is `μ(v(r); C)`.

mod builtin;
mod certificate;

use std::collections::BTreeSet;

use num_traits::Signed;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{int, QuadNum, Rational};
use crate::okounkov::mu;
use crate::par::{self, Execution};
use crate::surface::{ConeModel, DivisorClass, SurfaceModel};

pub use builtin::{builtin, builtin_models, BuiltinSlice};
pub use certificate::{nonpolyhedrality_certificate, Certificate, SecondDifference, Verdict};

/// `r ↦ v₀ − r·w` for `r ∈ [r_lo, r_hi]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorPath {
    pub v0: DivisorClass,
    pub w: DivisorClass,
    pub r_lo: Rational,
    pub r_hi: Rational,
}

impl DivisorPath {
    pub fn new(v0: DivisorClass, w: DivisorClass, r_lo: Rational, r_hi: Rational) -> Self {
        Self { v0, w, r_lo, r_hi }
    }

    pub fn at(&self, r: &Rational) -> DivisorClass {
        self.v0.minus_multiple(r, &self.w)
    }

    pub fn contains(&self, r: &Rational) -> bool {
        &self.r_lo <= r && r <= &self.r_hi
    }

    /// Both endpoints pseudo-effective; by convexity of the cone the whole
    /// segment then is.
    pub fn validate(&self, s: &SurfaceModel) -> Result<()> {
        if self.r_lo > self.r_hi {
            return Err(Error::HypothesisViolated("empty path range".into()));
        }
        for r in [&self.r_lo, &self.r_hi] {
            if !s.is_pseff(&self.at(r))? {
                return Err(Error::HypothesisViolated(format!(
                    "v(r) is not pseudo-effective at r = {r}"
                )));
            }
        }
        Ok(())
    }
}

/// A boundary constraint of the cone, used to tell which arc of `f` a
/// sample lies on.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Constraint {
    /// Polyhedral facet, by index.
    Facet(usize),
    /// `v·v = 0`.
    Quadric,
    /// `v·h = 0`.
    Witness,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FSample {
    #[serde(with = "crate::exactnum::serde_str")]
    pub r: Rational,
    pub value: QuadNum,
    /// Constraints tight at `v(r) − f(r)·C`.
    pub active: BTreeSet<Constraint>,
}

/// `g(r, t) = c0 + cr·r + ct·t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AffineG {
    #[serde(with = "crate::exactnum::serde_str")]
    pub c0: Rational,
    #[serde(with = "crate::exactnum::serde_str")]
    pub cr: Rational,
    #[serde(with = "crate::exactnum::serde_str")]
    pub ct: Rational,
}

impl AffineG {
    pub fn eval(&self, r: &Rational, t: &Rational) -> Rational {
        &self.c0 + &self.cr * r + &self.ct * t
    }
}

/// `f(r) = (B(r) − √rad(r)) / A` with `B` affine and `rad` quadratic in `r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosedForm {
    #[serde(with = "crate::exactnum::serde_str")]
    pub a: Rational,
    /// `B(r) = b[0] + b[1]·r`.
    #[serde(with = "crate::exactnum::serde_vec")]
    pub b: Vec<Rational>,
    /// `rad(r) = rad[0] + rad[1]·r + rad[2]·r²`.
    #[serde(with = "crate::exactnum::serde_vec")]
    pub rad: Vec<Rational>,
}

impl ClosedForm {
    pub fn eval(&self, r: &Rational) -> Result<QuadNum> {
        let b = &self.b[0] + &self.b[1] * r;
        let rad = &self.rad[0] + &self.rad[1] * r + &self.rad[2] * r * r;
        let root = QuadNum::sqrt_rational(&rad)?;
        Ok(root
            .neg()
            .add_rational(&b)
            .scale(&(Rational::from_integer(1.into()) / &self.a)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SliceBody {
    pub path: DivisorPath,
    pub c: DivisorClass,
    /// Sorted by `r`.
    pub f_samples: Vec<FSample>,
    pub g: AffineG,
    pub closed_form: Option<ClosedForm>,
    /// Samples where `v(r)` is on the boundary of the pseudo-effective cone;
    /// there `f(r) = 0` is the value of the closure, and the slice is only
    /// a limit of genuine Okounkov slices.
    pub boundary_samples: Vec<Rational>,
}

fn check_hypothesis(s: &SurfaceModel) -> Result<()> {
    if s.cone.eff_equals_nef() {
        Ok(())
    } else {
        Err(Error::HypothesisViolated("slice surface must have Eff = Nef".into()))
    }
}

/// `f(r)` together with the constraints that bind there.
pub fn slice_f_detailed(s: &SurfaceModel, path: &DivisorPath, c: &DivisorClass, r: &Rational) -> Result<FSample> {
    check_hypothesis(s)?;
    let v = path.at(r);
    let value = if s.is_big(&v)? {
        mu(s, &v, c)?
    } else if s.is_pseff(&v)? {
        QuadNum::zero()
    } else {
        return Err(Error::NotPseudoEffective);
    };
    let active = active_constraints(s, &v, c, &value)?;
    Ok(FSample {
        r: r.clone(),
        value,
        active,
    })
}

fn active_constraints(
    s: &SurfaceModel,
    v: &DivisorClass,
    c: &DivisorClass,
    f: &QuadNum,
) -> Result<BTreeSet<Constraint>> {
    let mut out = BTreeSet::new();
    match &s.cone {
        ConeModel::Polyhedral { eff_facets, .. } => {
            for (i, fct) in eff_facets.iter().enumerate() {
                let fv: Rational = v.coeffs().iter().zip(fct).map(|(a, b)| a * b).sum();
                let fc: Rational = c.coeffs().iter().zip(fct).map(|(a, b)| a * b).sum();
                // fv − f·fc = 0
                if f.scale(&fc).neg().add_rational(&fv).is_zero() {
                    out.insert(Constraint::Facet(i));
                }
            }
        }
        ConeModel::Quadratic { ample } => {
            let vv = s.pair(v, v)?;
            let vc = s.pair(v, c)?;
            let cc = s.pair(c, c)?;
            // q(v − fC) = v² − 2f·v·C + f²·C²
            let q = f
                .try_mul(f)?
                .scale(&cc)
                .try_sub(&f.scale(&(int(2) * vc)))?
                .add_rational(&vv);
            if q.is_zero() {
                out.insert(Constraint::Quadric);
            }
            let h = DivisorClass(ample.clone());
            let hv = s.pair(&h, v)?;
            let hc = s.pair(&h, c)?;
            if f.scale(&hc).neg().add_rational(&hv).is_zero() {
                out.insert(Constraint::Witness);
            }
        }
    }
    Ok(out)
}

/// `f(r) = sup{s > 0 : v(r) − sC ample}`, or `0` where `v(r)` is
/// pseudo-effective but not big.
pub fn slice_f(s: &SurfaceModel, path: &DivisorPath, c: &DivisorClass, r: &Rational) -> Result<QuadNum> {
    Ok(slice_f_detailed(s, path, c, r)?.value)
}

/// The affine function `g(r, t) = C·v(r) − t·C²`.
pub fn g_coefficients(s: &SurfaceModel, path: &DivisorPath, c: &DivisorClass) -> Result<AffineG> {
    Ok(AffineG {
        c0: s.pair(c, &path.v0)?,
        cr: -s.pair(c, &path.w)?,
        ct: -s.pair(c, c)?,
    })
}

pub fn slice_g(s: &SurfaceModel, path: &DivisorPath, c: &DivisorClass, r: &Rational, t: &Rational) -> Result<Rational> {
    Ok(g_coefficients(s, path, c)?.eval(r, t))
}

/// The symbolic smaller root of `q(v(r) − sC) = 0` for quadratic cones with
/// `C² > 0`.
pub fn closed_form(s: &SurfaceModel, path: &DivisorPath, c: &DivisorClass) -> Result<Option<ClosedForm>> {
    if !s.cone.is_quadratic() {
        return Ok(None);
    }
    let a = s.pair(c, c)?;
    if !a.is_positive() {
        return Ok(None);
    }
    let b0 = s.pair(c, &path.v0)?;
    let b1 = -s.pair(c, &path.w)?;
    // q(v(r)) = v₀² − 2r·v₀·w + r²·w²
    let q0 = s.pair(&path.v0, &path.v0)?;
    let q1 = -int(2) * s.pair(&path.v0, &path.w)?;
    let q2 = s.pair(&path.w, &path.w)?;
    // rad = B² − A·q
    let rad = vec![&b0 * &b0 - &a * q0, int(2) * &b0 * &b1 - &a * q1, &b1 * &b1 - &a * q2];
    Ok(Some(ClosedForm {
        a,
        b: vec![b0, b1],
        rad,
    }))
}

/// Samples `f` at the given `r` values (in parallel when available) and
/// records `g` and, when it reproduces every sample, the closed form of `f`.
pub fn assemble_slice_body(
    s: &SurfaceModel,
    path: &DivisorPath,
    c: &DivisorClass,
    samples: &[Rational],
) -> Result<SliceBody> {
    assemble_slice_body_with(s, path, c, samples, Execution::available())
}

pub fn assemble_slice_body_with(
    s: &SurfaceModel,
    path: &DivisorPath,
    c: &DivisorClass,
    samples: &[Rational],
    exec: Execution,
) -> Result<SliceBody> {
    check_hypothesis(s)?;
    path.validate(s)?;
    if let Some(r) = samples.iter().find(|r| !path.contains(r)) {
        return Err(Error::HypothesisViolated(format!(
            "sample r = {r} outside the path range"
        )));
    }
    let mut rs: Vec<Rational> = samples.to_vec();
    rs.sort();
    rs.dedup();
    let f_samples = par::try_map(exec, &rs, |r| slice_f_detailed(s, path, c, r))?;
    let g = g_coefficients(s, path, c)?;
    let mut boundary_samples = Vec::new();
    for r in &rs {
        if !s.is_big(&path.at(r))? {
            boundary_samples.push(r.clone());
        }
    }
    let closed = match closed_form(s, path, c)? {
        Some(cf) => {
            let mut ok = true;
            for smp in &f_samples {
                match cf.eval(&smp.r) {
                    Ok(v) if v == smp.value => {}
                    _ => {
                        ok = false;
                        break;
                    }
                }
            }
            ok.then_some(cf)
        }
        None => None,
    };
    Ok(SliceBody {
        path: path.clone(),
        c: c.clone(),
        f_samples,
        g,
        closed_form: closed,
        boundary_samples,
    })
}

/// `k/n` for `k = 0..=n`, scaled into `[lo, hi]`.
pub fn uniform_samples(lo: &Rational, hi: &Rational, n: u32) -> Vec<Rational> {
    (0..=n)
        .map(|k| lo + (hi - lo) * Rational::new(k.into(), n.max(1).into()))
        .collect()
}

#[cfg(test)]
mod tests;
