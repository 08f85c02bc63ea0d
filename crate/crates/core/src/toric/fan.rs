use std::cmp::Ordering;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};

pub type Ray = (i64, i64);

pub fn det(v: Ray, w: Ray) -> i64 {
    v.0 * w.1 - v.1 * w.0
}

fn half(v: Ray) -> u8 {
    // 0 for angles in [0, π), 1 for [π, 2π)
    if v.1 > 0 || (v.1 == 0 && v.0 > 0) {
        0
    } else {
        1
    }
}

/// Counterclockwise angular order starting at the positive `x` axis.
pub fn angle_cmp(v: Ray, w: Ray) -> Ordering {
    half(v).cmp(&half(w)).then_with(|| 0.cmp(&det(v, w)))
}

pub fn primitive(v: Ray) -> Ray {
    let g = v.0.gcd(&v.1);
    if g == 0 {
        v
    } else {
        (v.0 / g, v.1 / g)
    }
}

/// A smooth complete fan in ℤ², rays in counterclockwise order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ToricSurface {
    rays: Vec<Ray>,
}

impl ToricSurface {
    /// Checks primitivity, counterclockwise order, completeness and
    /// smoothness (`det(vᵢ, vᵢ₊₁) = 1` for every consecutive pair).
    pub fn new(rays: Vec<Ray>) -> Result<Self> {
        let r = rays.len();
        if r < 3 {
            return Err(Error::InvalidFan(format!("{r} rays cannot span a complete fan")));
        }
        for &v in &rays {
            if v == (0, 0) || primitive(v) != v {
                return Err(Error::InvalidFan(format!("ray {v:?} is not primitive")));
            }
        }
        for i in 0..r {
            let (v, w) = (rays[i], rays[(i + 1) % r]);
            let d = det(v, w);
            if d != 1 {
                return Err(Error::InvalidFan(format!("det({v:?}, {w:?}) = {d}, expected 1")));
            }
        }
        // with every turn in (0, π) the rays wind around once exactly when
        // at most one step wraps past the positive x axis
        let wraps = (0..r)
            .filter(|&i| angle_cmp(rays[i], rays[(i + 1) % r]) != Ordering::Less)
            .count();
        if wraps != 1 {
            return Err(Error::InvalidFan("rays wind around the origin more than once".into()));
        }
        Ok(Self { rays })
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn index_of(&self, v: Ray) -> Option<usize> {
        self.rays.iter().position(|&w| w == v)
    }

    pub fn prev(&self, i: usize) -> usize {
        (i + self.len() - 1) % self.len()
    }

    pub fn next(&self, i: usize) -> usize {
        (i + 1) % self.len()
    }

    /// `Dᵢ² = −det(vᵢ₋₁, vᵢ₊₁)`, from `vᵢ₋₁ + vᵢ₊₁ = aᵢ·vᵢ`.
    pub fn self_intersection(&self, i: usize) -> i64 {
        -det(self.rays[self.prev(i)], self.rays[self.next(i)])
    }

    pub fn self_intersections(&self) -> Vec<i64> {
        (0..self.len()).map(|i| self.self_intersection(i)).collect()
    }

    /// `Dᵢ·Dⱼ` for the invariant divisors.
    pub fn intersection(&self, i: usize, j: usize) -> i64 {
        if i == j {
            self.self_intersection(i)
        } else if j == self.next(i) || i == self.next(j) {
            1
        } else {
            0
        }
    }
}

/// Sorts rays counterclockwise and refines the fan until it is smooth and
/// complete.
///
/// A gap of angle at least π is split by the quarter turn of its first ray.
/// A gap `(v, w)` with `det(v, w) = n > 1` is split by the lattice point `p`
/// with `det(v, p) = 1` and `1 ≤ det(p, w) < n`, so the determinants of the
/// remaining gap strictly decrease. Every inserted ray lies strictly inside
/// a gap, so when no input ray sits in the open first quadrant none is
/// added there.
pub fn smooth_complete_fan(rays: &[Ray]) -> Result<ToricSurface> {
    if rays.contains(&(0, 0)) {
        return Err(Error::InvalidFan("zero ray".into()));
    }
    let mut rs: Vec<Ray> = rays.iter().map(|&v| primitive(v)).collect();
    if !rs.contains(&(1, 0)) || !rs.contains(&(0, 1)) {
        return Err(Error::MissingAxisRays);
    }
    rs.sort_by(|&a, &b| angle_cmp(a, b));
    rs.dedup();
    let mut i = 0;
    while i < rs.len() {
        let v = rs[i];
        let w = rs[(i + 1) % rs.len()];
        let d = det(v, w);
        if d == 1 {
            i += 1;
            continue;
        }
        let p = if d <= 0 { (-v.1, v.0) } else { unimodular_step(v, w, d) };
        rs.insert(i + 1, p);
    }
    ToricSurface::new(rs)
}

fn unimodular_step(v: Ray, w: Ray, n: i64) -> Ray {
    // s·vx + t·vy = 1, so p₀ = (−t, s) has det(v, p₀) = 1
    let eg = v.0.extended_gcd(&v.1);
    debug_assert_eq!(eg.gcd, 1);
    let p0 = (-eg.y, eg.x);
    let r = det(p0, w).rem_euclid(n);
    debug_assert!(r != 0);
    // det(p₀ + k·v, w) = det(p₀, w) + k·n
    let k = (r - det(p0, w)) / n;
    (p0.0 + k * v.0, p0.1 + k * v.1)
}
