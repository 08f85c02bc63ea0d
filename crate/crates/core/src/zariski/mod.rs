//! Zariski decomposition `D = P + N` of pseudo-effective classes, and its
//! piecewise-linear variation along the segment `D − tC`.
//!
//! The decomposition is only as good as the model's curve catalog: a curve
//! missing from the catalog can never enter a negative part, and the result
//! is then wrong (or rejected by the nef test). The catalog is model input.

mod eps;

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{format_rational, int, OrderedScalar, QuadNum, Rational};
use crate::linalg;
use crate::okounkov;
use crate::surface::{ConeModel, DivisorClass, FlagData, SurfaceModel};

use eps::Eps;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZariskiDecomposition {
    pub positive: DivisorClass,
    /// Coefficient of each catalog curve in the negative part; only non-zero
    /// entries are stored.
    pub negative: BTreeMap<String, Rational>,
}

impl ZariskiDecomposition {
    pub fn negative_class(&self, s: &SurfaceModel) -> DivisorClass {
        let mut n = DivisorClass::zero(s.rank());
        for (name, c) in &self.negative {
            let e = s.curve(name).expect("support curves come from the catalog");
            n = n.add(&DivisorClass::from_ints(&e.class).scale(c));
        }
        n
    }
}

/// Decomposition over an arbitrary ordered field, keyed by catalog index.
pub(crate) struct RawDecomposition<K> {
    pub positive: Vec<K>,
    pub negative: BTreeMap<usize, K>,
}

fn gram(s: &SurfaceModel, idx: &[usize]) -> Vec<Vec<i64>> {
    idx.iter()
        .map(|&i| {
            idx.iter()
                .map(|&j| s.pair_int(&s.curves[i].class, &s.curves[j].class))
                .collect()
        })
        .collect()
}

/// Support growth: start from the curves `D` is negative on, solve for `N`
/// on the support, and add every curve the current `P` is negative on until
/// none is left.
pub(crate) fn decompose_generic<K: OrderedScalar>(s: &SurfaceModel, d: &[K]) -> Result<RawDecomposition<K>> {
    if !s.is_pseff_generic(d)? {
        return Err(Error::NotPseudoEffective);
    }
    let mut support: BTreeSet<usize> = BTreeSet::new();
    let mut coeffs: Vec<K> = Vec::new();
    let mut positive = d.to_vec();
    loop {
        let entering: Vec<usize> = (0..s.curves.len())
            .filter(|i| !support.contains(i))
            .filter(|&i| s.pair_with_int(&positive, &s.curves[i].class).signum() < 0)
            .collect();
        if entering.is_empty() {
            break;
        }
        support.extend(entering);
        let idx: Vec<usize> = support.iter().copied().collect();
        let g = gram(s, &idx);
        let g_big: Vec<Vec<BigInt>> = g.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        if !linalg::is_negative_definite(&g_big) {
            return Err(Error::GramNotNegativeDefinite(
                idx.iter().map(|&i| s.curves[i].name.clone()).collect(),
            ));
        }
        let g_rat: Vec<Vec<Rational>> = g.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
        let rhs: Vec<K> = idx.iter().map(|&i| s.pair_with_int(d, &s.curves[i].class)).collect();
        coeffs = linalg::solve(&g_rat, &rhs).expect("negative definite Gram matrix is invertible");
        if let Some(k) = coeffs.iter().position(|c| c.signum() < 0) {
            return Err(Error::InconsistentCatalog(format!(
                "negative coefficient for {}",
                s.curves[idx[k]].name
            )));
        }
        positive = d.to_vec();
        for (c, &i) in coeffs.iter().zip(&idx) {
            for (p, &e) in positive.iter_mut().zip(&s.curves[i].class) {
                if e != 0 {
                    *p = p.clone() - c.scale(&int(e));
                }
            }
        }
    }
    if !s.is_nef_generic(&positive)? {
        return Err(Error::NefTestFailed);
    }
    let negative = support
        .into_iter()
        .zip(coeffs)
        .filter(|(_, c)| !c.is_zero_value())
        .collect();
    Ok(RawDecomposition { positive, negative })
}

/// Zariski decomposition of a pseudo-effective class.
pub fn zariski_decompose(s: &SurfaceModel, d: &DivisorClass) -> Result<ZariskiDecomposition> {
    let raw = decompose_generic(s, d.coeffs())?;
    Ok(ZariskiDecomposition {
        positive: DivisorClass(raw.positive),
        negative: raw
            .negative
            .into_iter()
            .map(|(i, c)| (s.curves[i].name.clone(), c))
            .collect(),
    })
}

/// One linear piece of the walk: `N_t = A + t·B` for `t ∈ [t_lo, t_hi]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkPiece {
    pub t_lo: Rational,
    pub t_hi: QuadNum,
    pub a: BTreeMap<String, Rational>,
    pub b: BTreeMap<String, Rational>,
}

impl WalkPiece {
    pub fn support(&self) -> impl Iterator<Item = &str> {
        self.a.keys().map(String::as_str)
    }

    /// `N_t[E]` at a rational `t` of this piece.
    pub fn coeff_at(&self, name: &str, t: &Rational) -> Rational {
        let a = self.a.get(name).cloned().unwrap_or_else(Rational::zero);
        let b = self.b.get(name).cloned().unwrap_or_else(Rational::zero);
        a + b * t
    }

    /// `N_t` at a rational `t`, dropping zero entries.
    pub fn negative_at(&self, t: &Rational) -> BTreeMap<String, Rational> {
        self.a
            .keys()
            .map(|k| (k.clone(), self.coeff_at(k, t)))
            .filter(|(_, v)| !v.is_zero())
            .collect()
    }

    /// `N_t` at an arbitrary real `t` of the piece, in the field of `t`.
    pub fn negative_at_quad(&self, t: &QuadNum) -> BTreeMap<String, QuadNum> {
        self.a
            .keys()
            .map(|k| {
                let b = self.b.get(k).cloned().unwrap_or_else(Rational::zero);
                (k.clone(), t.scale(&b).add_rational(&self.a[k]))
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegmentWalk {
    pub nu: Rational,
    pub mu: QuadNum,
    pub pieces: Vec<WalkPiece>,
}

impl SegmentWalk {
    /// The piece containing the rational `t` (the left one at a breakpoint).
    pub fn piece_at(&self, t: &Rational) -> Option<&WalkPiece> {
        let tq = QuadNum::rational(t.clone());
        self.pieces.iter().find(|p| &p.t_lo <= t && tq <= p.t_hi)
    }

    /// `N_t` at a rational `t` in `[ν, μ]`.
    pub fn negative_at(&self, t: &Rational) -> Option<BTreeMap<String, Rational>> {
        self.piece_at(t).map(|p| p.negative_at(t))
    }

    /// Human-readable summary of each piece.
    pub fn describe(&self) -> Vec<String> {
        self.pieces
            .iter()
            .map(|p| {
                let terms: Vec<String> =
                    p.a.keys()
                        .map(|k| format!("({} + {}t){k}", format_rational(&p.a[k]), format_rational(&p.b[k])))
                        .collect();
                format!(
                    "[{}, {}]: N_t = {}",
                    format_rational(&p.t_lo),
                    p.t_hi,
                    terms.join(" + ")
                )
            })
            .collect()
    }
}

const MAX_EVENTS: usize = 100_000;

fn check_flag(s: &SurfaceModel, flag: &FlagData) -> Result<DivisorClass> {
    let problems = crate::surface::validate_flag(s, flag);
    if !problems.is_empty() {
        return Err(Error::InvalidFlag(problems.join("; ")));
    }
    let c = flag.class();
    if !s.is_pseff(&c)? {
        return Err(Error::InvalidFlag("flag curve is not pseudo-effective".into()));
    }
    Ok(c)
}

/// Walks `D_t = D − tC` from `t = ν` to `t = μ`, recording where the
/// negative part changes its linear formula.
///
/// At each breakpoint `t₀` the decomposition is evaluated at `t₀ + ε`, which
/// yields the support and the affine coefficients `A + tB` valid on the next
/// open interval. The interval ends at the first `t` where a supported
/// coefficient reaches zero, where `P_t` reaches zero on a curve outside the
/// support (or on a nef facet), or at `μ`.
pub fn segment_walk(s: &SurfaceModel, d: &DivisorClass, flag: &FlagData) -> Result<SegmentWalk> {
    let c = check_flag(s, flag)?;
    if !s.is_big(d)? {
        return Err(Error::NotBig);
    }
    let decomposition = zariski_decompose(s, d)?;
    let flag_curve = s.curve_index_of_class(&flag.curve);
    let nu = flag_curve
        .and_then(|i| decomposition.negative.get(&s.curves[i].name).cloned())
        .unwrap_or_else(Rational::zero);
    let mu = okounkov::mu(s, d, &c)?;

    let mut pieces: Vec<WalkPiece> = Vec::new();
    let mut t0 = nu.clone();
    for _ in 0..MAX_EVENTS {
        let d_eps: Vec<Eps> = d
            .coeffs()
            .iter()
            .zip(c.coeffs())
            .map(|(di, ci)| Eps::linear(di - &t0 * ci, -ci.clone()))
            .collect();
        let raw = decompose_generic(s, &d_eps)?;
        if let Some(fc) = flag_curve {
            if raw.negative.contains_key(&fc) {
                return Err(Error::FlagCurveInSupport);
            }
        }
        // N_{t0+ε} = n0 + n1·ε, so N_t = (n0 − t0·n1) + t·n1
        let mut a_idx = BTreeMap::new();
        let mut b_idx = BTreeMap::new();
        for (&i, coeff) in &raw.negative {
            debug_assert!(coeff.degree() <= 1);
            let n1 = coeff.coeff(1);
            a_idx.insert(i, coeff.coeff(0) - &t0 * &n1);
            b_idx.insert(i, n1);
        }
        // P_t = p0 + t·p1
        let mut p0: Vec<Rational> = d.coeffs().to_vec();
        let mut p1: Vec<Rational> = c.coeffs().iter().map(|x| -x).collect();
        for (&i, a) in &a_idx {
            let b = &b_idx[&i];
            for (k, &e) in s.curves[i].class.iter().enumerate() {
                p0[k] -= a * int(e);
                p1[k] -= b * int(e);
            }
        }
        let mut candidates: Vec<Rational> = Vec::new();
        for (&i, b) in &b_idx {
            if b < &Rational::zero() {
                candidates.push(-&a_idx[&i] / b);
            }
        }
        for (i, curve) in s.curves.iter().enumerate() {
            if a_idx.contains_key(&i) {
                continue;
            }
            let v0: Rational = s.pair_with_int(&p0, &curve.class);
            let v1: Rational = s.pair_with_int(&p1, &curve.class);
            if v1 < Rational::zero() {
                candidates.push(-v0 / v1);
            }
        }
        if let ConeModel::Polyhedral { nef_facets, .. } = &s.cone {
            for f in nef_facets {
                let v0: Rational = p0.iter().zip(f).map(|(x, y)| x * y).sum();
                let v1: Rational = p1.iter().zip(f).map(|(x, y)| x * y).sum();
                if v1 < Rational::zero() {
                    candidates.push(-v0 / v1);
                }
            }
        }
        let next = candidates.into_iter().filter(|t| t > &t0).min();
        let (t_hi, last) = match next {
            Some(t) if QuadNum::rational(t.clone()) < mu => (QuadNum::rational(t), false),
            _ => (mu.clone(), true),
        };
        let name = |i: &usize| s.curves[*i].name.clone();
        let piece = WalkPiece {
            t_lo: t0.clone(),
            t_hi: t_hi.clone(),
            a: a_idx.iter().map(|(i, v)| (name(i), v.clone())).collect(),
            b: b_idx.iter().map(|(i, v)| (name(i), v.clone())).collect(),
        };
        match pieces.last_mut() {
            Some(prev) if prev.a == piece.a && prev.b == piece.b => prev.t_hi = piece.t_hi,
            _ => pieces.push(piece),
        }
        if last {
            return Ok(SegmentWalk { nu, mu, pieces });
        }
        t0 = t_hi.as_rational().expect("interior events are rational").clone();
    }
    Err(Error::InconsistentCatalog("segment walk did not terminate".to_string()))
}

/// The Zariski decomposition of `D − tC` read off a walk at a rational `t`.
pub fn decomposition_from_walk(
    s: &SurfaceModel,
    d: &DivisorClass,
    c: &DivisorClass,
    walk: &SegmentWalk,
    t: &Rational,
) -> Option<ZariskiDecomposition> {
    let piece = walk.piece_at(t)?;
    let negative = piece.negative_at(t);
    let mut positive = d.minus_multiple(t, c);
    for (name, coeff) in &negative {
        let e = s.curve(name)?;
        positive = positive.sub(&DivisorClass::from_ints(&e.class).scale(coeff));
    }
    Some(ZariskiDecomposition { positive, negative })
}

/// Curve names in catalog order, with `1` for each name in `support`.
pub fn support_indicator(s: &SurfaceModel, support: &BTreeSet<String>) -> Vec<Rational> {
    s.curves
        .iter()
        .map(|c| {
            if support.contains(&c.name) {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
        .collect()
}
