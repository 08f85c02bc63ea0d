use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use super::fan::{primitive, smooth_complete_fan, Ray, ToricSurface};
use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::geometry::{Point, Polygon};
use crate::okounkov::validate_theorem_b;

/// A toric divisor whose invariant-flag Okounkov body is a given polygon.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Realization {
    pub fan: ToricSurface,
    #[serde(with = "crate::exactnum::serde_vec")]
    pub a: Vec<Rational>,
    /// Indices of the rays `(1,0)` and `(0,1)`.
    pub flag: (usize, usize),
    /// The translated polygon, touching both axes inside the first quadrant.
    #[serde(skip)]
    pub polygon: Polygon,
    /// The translation that was applied.
    pub shift: Point,
}

/// Primitive integer direction of a rational vector.
fn primitive_direction(x: &Rational, y: &Rational) -> Ray {
    let l = x.denom().lcm(y.denom());
    let xi = (x * Rational::from_integer(l.clone())).to_integer();
    let yi = (y * Rational::from_integer(l)).to_integer();
    let g = xi.gcd(&yi);
    let to = |v: num_bigint::BigInt| i64::try_from(v / &g).expect("edge directions fit in i64");
    (to(xi), to(yi))
}

/// Realizes a shape-valid rational polygon as the Okounkov body of a toric
/// divisor for the flag of the rays `(1,0)`, `(0,1)`.
///
/// The polygon is translated by minus its lexicographically smallest vertex,
/// so it lies in the first quadrant and touches both axes. Edge inward
/// normals become rays with `aᵢ = −min⟨u, vᵢ⟩`, the axes are added with
/// `a = 0`, the fan is made smooth and complete, and every added ray gets
/// its support-function value so that `P(D)` is unchanged.
pub fn realize_polygon(points: &[Point]) -> Result<Realization> {
    if points.iter().any(|p| !p.is_rational()) {
        return Err(Error::InvalidPolygon("vertices must be rational".into()));
    }
    let report = validate_theorem_b(points).map_err(|e| Error::InvalidPolygon(e.to_string()))?;
    if !report.passed {
        return Err(Error::InvalidPolygon(report.violations.join("; ")));
    }
    let poly = Polygon::hull(points.iter().cloned())?;
    let origin = &poly.vertices()[0];
    let shift = Point::new(origin.x.neg(), origin.y.neg());
    let poly = poly.translate(&shift)?;

    let vs = poly.vertices();
    let n = vs.len();
    let mut rays: Vec<Ray> = Vec::with_capacity(n + 2);
    for i in 0..n {
        let p = vs[i].x.as_rational().zip(vs[i].y.as_rational()).expect("rational");
        let q = vs[(i + 1) % n]
            .x
            .as_rational()
            .zip(vs[(i + 1) % n].y.as_rational())
            .expect("rational");
        let (dx, dy) = (q.0 - p.0, q.1 - p.1);
        rays.push(primitive_direction(&-dy, &dx));
    }
    for axis in [(1, 0), (0, 1)] {
        if !rays.contains(&axis) {
            rays.push(axis);
        }
    }
    let fan = smooth_complete_fan(&rays)?;
    let a = fan
        .rays()
        .iter()
        .map(|&v| {
            let m = poly.min_dot(primitive(v))?.expect("non-empty polygon");
            Ok(-m.as_rational().expect("rational").clone())
        })
        .collect::<Result<Vec<Rational>>>()?;
    let i1 = fan.index_of((1, 0)).expect("axis rays are kept");
    let i2 = fan.index_of((0, 1)).expect("axis rays are kept");
    debug_assert!(a[i1].is_zero() && a[i2].is_zero());
    Ok(Realization {
        fan,
        a,
        flag: (i1, i2),
        polygon: poly,
        shift,
    })
}
