use serde::Serialize;

use crate::error::Result;
use crate::exactnum::QuadNum;
use crate::geometry::{simple_cycle, Point};

/// Optional strictness beyond the shape theorem itself.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Lint {
    /// Require α strictly increasing instead of non-decreasing.
    pub strict_alpha: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremBReport {
    pub passed: bool,
    pub violations: Vec<String>,
    /// Lower boundary from left to right.
    pub lower: Vec<Point>,
    /// Upper boundary from left to right.
    pub upper: Vec<Point>,
}

/// Checks that a vertex cycle bounds a region `{t₀ ≤ t ≤ t₁, α(t) ≤ y ≤ β(t)}`
/// with α, β piecewise linear with rational slopes, α convex and
/// non-decreasing, and β concave.
pub fn validate_theorem_b(points: &[Point]) -> Result<TheoremBReport> {
    validate_theorem_b_with(points, Lint::default())
}

fn slope(p: &Point, q: &Point) -> Result<QuadNum> {
    Ok(q.y.try_sub(&p.y)?.try_div(&q.x.try_sub(&p.x)?)?)
}

pub fn validate_theorem_b_with(points: &[Point], lint: Lint) -> Result<TheoremBReport> {
    let cycle = simple_cycle(points.to_vec())?;
    let n = cycle.len();
    let mut violations = Vec::new();

    // counterclockwise: the lower chain runs left to right
    let start = (0..n)
        .min_by(|&i, &j| cycle[i].cmp(&cycle[j]))
        .expect("non-empty cycle");
    let at = |k: usize| &cycle[(start + k) % n];
    let max_x = cycle.iter().map(|p| &p.x).max().expect("non-empty").clone();

    let mut lower = vec![at(0).clone()];
    let mut k = 0;
    while at(k).x != max_x && k < n {
        k += 1;
        lower.push(at(k).clone());
    }
    // the right side: vertical edge(s) at t = max_x
    while k + 1 < n && at(k + 1).x == max_x {
        k += 1;
    }
    let mut upper_rev = vec![at(k).clone()];
    while k + 1 < n {
        k += 1;
        upper_rev.push(at(k).clone());
    }
    // the cycle closes back to `start`, possibly through a vertical left edge
    let min_x = at(0).x.clone();
    if upper_rev.last().is_some_and(|p| p.x != min_x) {
        upper_rev.push(at(0).clone());
    }
    let upper: Vec<Point> = upper_rev.into_iter().rev().collect();

    let mut lower_slopes = Vec::new();
    for w in lower.windows(2) {
        if w[1].x <= w[0].x {
            violations.push("lower boundary is not the graph of a function of t".to_string());
            break;
        }
        lower_slopes.push(slope(&w[0], &w[1])?);
    }
    let mut upper_slopes = Vec::new();
    for w in upper.windows(2) {
        if w[1].x <= w[0].x {
            violations.push("upper boundary is not the graph of a function of t".to_string());
            break;
        }
        upper_slopes.push(slope(&w[0], &w[1])?);
    }
    if lower_slopes.iter().chain(&upper_slopes).any(|s| !s.is_rational()) {
        violations.push("boundary has an irrational slope".to_string());
    }
    let zero = QuadNum::zero();
    if lint.strict_alpha {
        if lower_slopes.iter().any(|s| s <= &zero) {
            violations.push("α is not strictly increasing".to_string());
        }
    } else if lower_slopes.iter().any(|s| s < &zero) {
        violations.push("α is decreasing on some piece".to_string());
    }
    if lower_slopes.windows(2).any(|w| w[0] > w[1]) {
        violations.push("α is not convex".to_string());
    }
    if upper_slopes.windows(2).any(|w| w[0] < w[1]) {
        violations.push("β is not concave".to_string());
    }
    // after translating by (−t₀, −min α) the region sits in the first
    // quadrant exactly when α attains its minimum at t₀
    let min_alpha = lower.iter().map(|p| &p.y).min().expect("non-empty");
    if &lower[0].y != min_alpha {
        violations.push("translated region leaves the first quadrant".to_string());
    }
    Ok(TheoremBReport {
        passed: violations.is_empty(),
        violations,
        lower,
        upper,
    })
}
