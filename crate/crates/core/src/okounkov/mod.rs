//! Okounkov polygons of big divisors on surfaces with respect to a flag
//! `(C, x)`: the region `ν ≤ t ≤ μ, α(t) ≤ y ≤ β(t)` where
//! `α(t) = ord_x(N_t|_C)` and `β(t) = α(t) + P_t·C`.

mod pl;
mod theorem_b;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{eval_quadratic, int, quadratic_roots, QuadNum, Rational};
use crate::geometry::{Point, Polygon};
use crate::surface::{ConeModel, DivisorClass, FlagData, SurfaceModel};
use crate::zariski::{segment_walk, zariski_decompose, SegmentWalk};

pub use pl::PiecewiseLinear;
pub use theorem_b::{validate_theorem_b, validate_theorem_b_with, Lint, TheoremBReport};

fn dot(v: &[Rational], f: &[Rational]) -> Rational {
    v.iter().zip(f).map(|(a, b)| a * b).sum()
}

/// `μ(D; C) = sup{t > 0 : D − tC big}`.
pub fn mu(s: &SurfaceModel, d: &DivisorClass, c: &DivisorClass) -> Result<QuadNum> {
    Ok(mu_with_certificate(s, d, c)?.0)
}

/// Where `μ` came from: `A·μ² + B·μ + C = 0` over ℚ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MuCertificate {
    #[serde(with = "crate::exactnum::serde_str")]
    pub a: Rational,
    #[serde(with = "crate::exactnum::serde_str")]
    pub b: Rational,
    #[serde(with = "crate::exactnum::serde_str")]
    pub c: Rational,
}

impl MuCertificate {
    pub fn eval(&self, x: &QuadNum) -> Result<QuadNum> {
        Ok(eval_quadratic(&self.a, &self.b, &self.c, x)?)
    }
}

fn mu_with_certificate(s: &SurfaceModel, d: &DivisorClass, c: &DivisorClass) -> Result<(QuadNum, MuCertificate)> {
    if !s.is_big(d)? {
        return Err(Error::NotBig);
    }
    if c.is_zero() || !s.is_pseff(c)? {
        return Err(Error::InvalidFlag(
            "flag curve must be a non-zero pseudo-effective class".into(),
        ));
    }
    match &s.cone {
        ConeModel::Polyhedral { eff_facets, .. } => {
            let mut best: Option<(Rational, MuCertificate)> = None;
            for f in eff_facets {
                let fc = dot(c.coeffs(), f);
                if !fc.is_positive() {
                    continue;
                }
                let fd = dot(d.coeffs(), f);
                let t = &fd / &fc;
                if best.as_ref().is_none_or(|(b, _)| &t < b) {
                    let cert = MuCertificate {
                        a: Rational::zero(),
                        b: fc,
                        c: -fd,
                    };
                    best = Some((t, cert));
                }
            }
            best.map(|(t, cert)| (QuadNum::rational(t), cert))
                .ok_or(Error::Unbounded)
        }
        ConeModel::Quadratic { ample } => {
            // q(D − tC) = C²·t² − 2(D·C)·t + D²
            let c2 = s.pair(c, c)?;
            let dc = s.pair(d, c)?;
            let d2 = s.pair(d, d)?;
            let qa = c2;
            let qb = -int(2) * dc;
            let qc = d2;
            let root = quadratic_roots(&qa, &qb, &qc)?.into_iter().find(|r| r.signum() > 0);
            let h = DivisorClass(ample.clone());
            let hc = s.pair(&h, c)?;
            let linear = if hc.is_positive() {
                Some(s.pair(&h, d)? / &hc)
            } else {
                None
            };
            match (root, linear) {
                (Some(r), Some(l)) if QuadNum::rational(l.clone()) < r => Ok((
                    QuadNum::rational(l),
                    MuCertificate {
                        a: Rational::zero(),
                        b: hc.clone(),
                        c: -s.pair(&h, d)?,
                    },
                )),
                (Some(r), _) => Ok((r, MuCertificate { a: qa, b: qb, c: qc })),
                (None, Some(l)) => Ok((
                    QuadNum::rational(l),
                    MuCertificate {
                        a: Rational::zero(),
                        b: hc.clone(),
                        c: -s.pair(&h, d)?,
                    },
                )),
                (None, None) => Err(Error::Unbounded),
            }
        }
    }
}

/// The rational polynomial `μ` is a root of: linear from the binding facet
/// for polyhedral cones, `q(D − tC)` for quadratic ones. Checked by
/// substitution before it is returned.
pub fn mu_quadratic_certificate(s: &SurfaceModel, d: &DivisorClass, c: &DivisorClass) -> Result<MuCertificate> {
    let (m, cert) = mu_with_certificate(s, d, c)?;
    let value = cert.eval(&m)?;
    assert!(value.is_zero(), "certificate does not annihilate μ = {m}");
    Ok(cert)
}

/// `μ(π*D; E)` on a model of the blow-up at `x`.
///
/// This is an upper bound for the Seshadri constant `ε(D, x)`; the two agree
/// when the value is irrational.
pub fn seshadri_as_mu(s_blowup: &SurfaceModel, d_pullback: &DivisorClass, e: &DivisorClass) -> Result<QuadNum> {
    mu(s_blowup, d_pullback, e)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OkounkovPolygon {
    pub nu: Rational,
    pub mu: QuadNum,
    /// Walk breakpoints, `ν` first and `μ` last.
    pub breakpoints: Vec<QuadNum>,
    pub alpha: PiecewiseLinear,
    pub beta: PiecewiseLinear,
    pub vertices: Polygon,
}

impl OkounkovPolygon {
    /// Translates `t` by `−ν`, leaving `y` alone.
    pub fn translate_canonical(&self) -> Result<Polygon> {
        let by = Point::new(QuadNum::rational(-self.nu.clone()), QuadNum::zero());
        Ok(self.vertices.translate(&by)?)
    }
}

/// Affine data `(value at 0, slope)` of α and β on one walk piece.
fn piece_affine(
    s: &SurfaceModel,
    d: &DivisorClass,
    c: &DivisorClass,
    flag: &FlagData,
    a: &std::collections::BTreeMap<String, Rational>,
    b: &std::collections::BTreeMap<String, Rational>,
) -> Result<((Rational, Rational), (Rational, Rational))> {
    let mut alpha0 = Rational::zero();
    let mut alpha1 = Rational::zero();
    // P_t·C = D·C − t·C² − Σ (A_E + t·B_E)(E·C)
    let mut pc0 = s.pair(d, c)?;
    let mut pc1 = -s.pair(c, c)?;
    for (name, ae) in a {
        let be = &b[name];
        let e = s.curve(name).expect("walk supports are catalog curves");
        let m = int(flag.multiplicity(name).into());
        alpha0 += ae * &m;
        alpha1 += be * &m;
        let ec = s.pair_with_rational(c.coeffs(), &crate::exactnum::ints(&e.class));
        pc0 -= ae * &ec;
        pc1 -= be * &ec;
    }
    let beta0 = &alpha0 + pc0;
    let beta1 = &alpha1 + pc1;
    Ok(((alpha0, alpha1), (beta0, beta1)))
}

/// Assembles the polygon from a precomputed walk.
pub fn polygon_from_walk(
    s: &SurfaceModel,
    d: &DivisorClass,
    flag: &FlagData,
    walk: &SegmentWalk,
) -> Result<OkounkovPolygon> {
    let c = flag.class();
    let mut breakpoints: Vec<QuadNum> = Vec::new();
    let mut alpha = PiecewiseLinear::builder();
    let mut beta = PiecewiseLinear::builder();
    for piece in &walk.pieces {
        let ((a0, a1), (b0, b1)) = piece_affine(s, d, &c, flag, &piece.a, &piece.b)?;
        let lo = QuadNum::rational(piece.t_lo.clone());
        breakpoints.push(lo.clone());
        alpha.push(&lo, &piece.t_hi, &a0, &a1)?;
        beta.push(&lo, &piece.t_hi, &b0, &b1)?;
    }
    breakpoints.push(walk.mu.clone());
    let alpha = alpha.finish();
    let beta = beta.finish();
    let mut pts = Vec::new();
    for t in &breakpoints {
        pts.push(Point::new(t.clone(), alpha.eval(t)?));
        pts.push(Point::new(t.clone(), beta.eval(t)?));
    }
    let vertices = Polygon::hull(pts)?;
    Ok(OkounkovPolygon {
        nu: walk.nu.clone(),
        mu: walk.mu.clone(),
        breakpoints,
        alpha,
        beta,
        vertices,
    })
}

/// The Okounkov polygon `Δ_{(C,x)}(D)` of a big class.
pub fn okounkov_polygon(s: &SurfaceModel, d: &DivisorClass, flag: &FlagData) -> Result<OkounkovPolygon> {
    let walk = segment_walk(s, d, flag)?;
    polygon_from_walk(s, d, flag, &walk)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VolumeReport {
    pub area2: QuadNum,
    pub volume: QuadNum,
}

/// Checks `2·area(Δ) = P(D)²`.
pub fn volume_checks(s: &SurfaceModel, d: &DivisorClass, poly: &OkounkovPolygon) -> Result<VolumeReport> {
    let area2 = poly.vertices.area2()?;
    let p = zariski_decompose(s, d)?.positive;
    let volume = QuadNum::rational(s.pair(&p, &p)?);
    if area2 != volume {
        return Err(Error::Mismatch {
            area2: area2.to_string(),
            volume: volume.to_string(),
        });
    }
    Ok(VolumeReport { area2, volume })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RationalityReport {
    pub passed: bool,
    pub mu_is_rational: bool,
    /// Vertices left of `t = μ` with an irrational coordinate.
    pub irrational_vertices: Vec<String>,
    /// Number of vertices on `t = μ`.
    pub vertices_on_mu: usize,
}

/// Vertices with `t < μ` must be rational, and an irrational `μ` must carry
/// a vertical edge.
pub fn rationality_check(poly: &OkounkovPolygon) -> RationalityReport {
    let irrational_vertices: Vec<String> = poly
        .vertices
        .vertices()
        .iter()
        .filter(|p| p.x < poly.mu && !p.is_rational())
        .map(|p| p.to_string())
        .collect();
    let vertices_on_mu = poly.vertices.vertices().iter().filter(|p| p.x == poly.mu).count();
    let mu_is_rational = poly.mu.is_rational();
    let passed = irrational_vertices.is_empty() && (mu_is_rational || vertices_on_mu == 2);
    RationalityReport {
        passed,
        mu_is_rational,
        irrational_vertices,
        vertices_on_mu,
    }
}
