//! Brute-force references for the verification suite.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::exactnum::{QuadNum, Rational};
use crate::linalg;
use crate::surface::{DivisorClass, SurfaceModel};
use crate::zariski::ZariskiDecomposition;

/// Every subset `S` of the catalog with negative definite Gram matrix for
/// which `P = D − Σ x_E E` with `P·E = 0` on `S` has all `x_E > 0` and `P`
/// nef. For a pseudo-effective `D` exactly one subset qualifies.
pub fn zariski_by_subsets(s: &SurfaceModel, d: &DivisorClass) -> Vec<ZariskiDecomposition> {
    let n = s.curves.len();
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let gram: Vec<Vec<i64>> = idx
            .iter()
            .map(|&i| {
                idx.iter()
                    .map(|&j| s.pair_int(&s.curves[i].class, &s.curves[j].class))
                    .collect()
            })
            .collect();
        let big: Vec<Vec<BigInt>> = gram.iter().map(|r| r.iter().map(|&x| x.into()).collect()).collect();
        if !idx.is_empty() && !linalg::is_negative_definite(&big) {
            continue;
        }
        let m: Vec<Vec<Rational>> = gram
            .iter()
            .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
            .collect();
        let rhs: Vec<Rational> = idx
            .iter()
            .map(|&i| s.pair_with_rational(d.coeffs(), &crate::exactnum::ints(&s.curves[i].class)))
            .collect();
        let Some(x) = linalg::solve(&m, &rhs) else {
            continue;
        };
        if x.iter().any(|v| !v.is_positive()) {
            continue;
        }
        let mut p = d.clone();
        let mut negative = BTreeMap::new();
        for (&i, xi) in idx.iter().zip(&x) {
            p = p.minus_multiple(xi, &DivisorClass::from_ints(&s.curves[i].class));
            negative.insert(s.curves[i].name.clone(), xi.clone());
        }
        if s.is_nef(&p).unwrap_or(false) {
            out.push(ZariskiDecomposition { positive: p, negative });
        }
    }
    out
}

/// Sign of `a + b√d` by bracketing `√(b²d)` between consecutive integers and
/// rescaling by powers of ten until the bracket excludes zero.
pub fn sign_by_refinement(x: &QuadNum) -> i8 {
    let l = x.a().denom().lcm(x.b().denom());
    let a = (x.a() * Rational::from_integer(l.clone())).to_integer();
    let b = (x.b() * Rational::from_integer(l)).to_integer();
    let d = x.d().clone();
    let sig = |v: &BigInt| {
        if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        }
    };
    if b.is_zero() || x.is_rational() {
        return sig(&a);
    }
    let mut scale = BigInt::from(1);
    loop {
        let aa = &a * &scale;
        let bb = &b * &scale;
        let lo: BigInt = (&bb * &bb * &d).sqrt();
        let hi: BigInt = &lo + 1;
        // b√d lies in [lo, hi] or [−hi, −lo]
        let (lo, hi) = if bb.is_negative() { (-hi, -lo) } else { (lo, hi) };
        if (&aa + &lo).is_positive() {
            return 1;
        }
        if (&aa + &hi).is_negative() {
            return -1;
        }
        scale *= 10;
    }
}
