//! Random inputs for the verification suite.

use rand::Rng;

use crate::exactnum::{int, QuadNum, Rational};
use crate::geometry::Point;
use crate::surface::{DivisorClass, SurfaceModel};

/// `n/d` with `n` in the given range and `1 ≤ d ≤ 7`.
pub fn small_rational<R: Rng>(rng: &mut R, lo: i64, hi: i64) -> Rational {
    Rational::new(rng.gen_range(lo..=hi).into(), rng.gen_range(1..=7i64).into())
}

fn positive_rational<R: Rng>(rng: &mut R) -> Rational {
    small_rational(rng, 1, 7)
}

/// Vertices of a random polygon `{0 ≤ t ≤ μ, α ≤ y ≤ β}` with α convex and
/// non-decreasing, β concave, at most six pieces each and slopes `n/d` with
/// `|n|, d ≤ 7`, translated by a random integer vector. The vertices are
/// listed counterclockwise.
pub fn theorem_b_polygon<R: Rng>(rng: &mut R) -> Vec<Point> {
    let ka = rng.gen_range(1..=6);
    let mut alpha_t = vec![int(0)];
    for _ in 0..ka {
        let next = alpha_t.last().expect("non-empty") + positive_rational(rng);
        alpha_t.push(next);
    }
    let mu = alpha_t.last().expect("non-empty").clone();
    let mut alpha_slopes: Vec<Rational> = (0..ka).map(|_| small_rational(rng, 0, 7)).collect();
    alpha_slopes.sort();
    let mut alpha_y = vec![int(0)];
    for (w, s) in alpha_t.windows(2).zip(&alpha_slopes) {
        let next = alpha_y.last().expect("non-empty") + (&w[1] - &w[0]) * s;
        alpha_y.push(next);
    }

    let kb = rng.gen_range(1..=6);
    let mut beta_t: Vec<Rational> = (1..kb)
        .map(|_| {
            let q = rng.gen_range(2..=7i64);
            &mu * Rational::new(rng.gen_range(1..q).into(), q.into())
        })
        .collect();
    beta_t.push(int(0));
    beta_t.push(mu.clone());
    beta_t.sort();
    beta_t.dedup();
    let mut beta_slopes: Vec<Rational> = (1..beta_t.len()).map(|_| small_rational(rng, -7, 7)).collect();
    beta_slopes.sort_by(|a, b| b.cmp(a));
    let mut beta_rel = vec![int(0)];
    for (w, s) in beta_t.windows(2).zip(&beta_slopes) {
        let next = beta_rel.last().expect("non-empty") + (&w[1] - &w[0]) * s;
        beta_rel.push(next);
    }
    let gap = alpha_y.last().expect("non-empty") - beta_rel.last().expect("non-empty");
    let y0 = gap.max(int(0)) + positive_rational(rng);

    let dx = int(rng.gen_range(-5..=5));
    let dy = int(rng.gen_range(-5..=5));
    let at = |t: &Rational, y: Rational| Point::rational(t + &dx, y + &dy);
    let mut pts: Vec<Point> = alpha_t.iter().zip(alpha_y).map(|(t, y)| at(t, y)).collect();
    pts.extend(beta_t.iter().zip(beta_rel).rev().map(|(t, y)| at(t, y + &y0)));
    pts
}

/// A random big integral class, or `None` after many misses.
pub fn big_divisor<R: Rng>(rng: &mut R, s: &SurfaceModel, lo: i64, hi: i64) -> Option<DivisorClass> {
    for _ in 0..500 {
        let v: Vec<i64> = (0..s.rank()).map(|_| rng.gen_range(lo..=hi)).collect();
        let d = DivisorClass::from_ints(&v);
        if s.is_big(&d).unwrap_or(false) {
            return Some(d);
        }
    }
    None
}

/// A random element of ℚ(√d) with small coefficients.
pub fn quad<R: Rng>(rng: &mut R, d: i64) -> QuadNum {
    QuadNum::new(small_rational(rng, -30, 30), small_rational(rng, -30, 30), d.into()).expect("positive radicand")
}
