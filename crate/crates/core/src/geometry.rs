//! Exact convex polygons in the plane with coordinates in ℚ or one ℚ(√d).

use std::cmp::Ordering;
use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{ExactError, QuadNum, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Point {
    pub x: QuadNum,
    pub y: QuadNum,
}

impl Point {
    pub fn new(x: QuadNum, y: QuadNum) -> Self {
        Self { x, y }
    }

    pub fn rational(x: Rational, y: Rational) -> Self {
        Self::new(QuadNum::rational(x), QuadNum::rational(y))
    }

    pub fn ints(x: i64, y: i64) -> Self {
        Self::new(QuadNum::from_int(x), QuadNum::from_int(y))
    }

    pub fn is_rational(&self) -> bool {
        self.x.is_rational() && self.y.is_rational()
    }

    pub fn sub(&self, o: &Self) -> Result<Self, ExactError> {
        Ok(Self::new(self.x.try_sub(&o.x)?, self.y.try_sub(&o.y)?))
    }

    pub fn add(&self, o: &Self) -> Result<Self, ExactError> {
        Ok(Self::new(self.x.try_add(&o.x)?, self.y.try_add(&o.y)?))
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(self.x.scale(k), self.y.scale(k))
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// `(a − o) × (b − o)`.
pub fn cross(o: &Point, a: &Point, b: &Point) -> Result<QuadNum, ExactError> {
    let u = a.sub(o)?;
    let v = b.sub(o)?;
    u.x.try_mul(&v.y)?.try_sub(&u.y.try_mul(&v.x)?)
}

/// A convex polygon, possibly degenerate (empty, a point or a segment).
///
/// Vertices are stored counterclockwise, starting at the lexicographically
/// smallest one, without repeated or collinear vertices. Structural equality
/// is therefore equality of point sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polygon {
    vertices: Vec<Point>,
}

impl Polygon {
    pub fn empty() -> Self {
        Self { vertices: Vec::new() }
    }

    /// Convex hull of arbitrary points (monotone chain).
    pub fn hull(points: impl IntoIterator<Item = Point>) -> Result<Self, ExactError> {
        let mut pts: Vec<Point> = points.into_iter().collect();
        pts.sort();
        pts.dedup();
        if pts.len() <= 2 {
            return Ok(Self { vertices: pts });
        }
        let mut lower: Vec<Point> = Vec::new();
        for p in &pts {
            while lower.len() >= 2 && cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p)?.signum() <= 0 {
                lower.pop();
            }
            lower.push(p.clone());
        }
        let mut upper: Vec<Point> = Vec::new();
        for p in pts.iter().rev() {
            while upper.len() >= 2 && cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p)?.signum() <= 0 {
                upper.pop();
            }
            upper.push(p.clone());
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        Ok(Self { vertices: lower })
    }

    /// Builds a polygon from a vertex cycle that must already be convex and
    /// simple, in either orientation. Collinear and repeated vertices are
    /// dropped.
    pub fn from_convex_cycle(points: Vec<Point>) -> Result<Self> {
        let cycle = simple_cycle(points)?;
        let n = cycle.len();
        for i in 0..n {
            let turn = cross(&cycle[i], &cycle[(i + 1) % n], &cycle[(i + 2) % n])?;
            if turn.signum() < 0 {
                return Err(Error::NotAPolygon("vertex cycle is not convex".into()));
            }
        }
        Ok(Self::hull(cycle)?)
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_rational(&self) -> bool {
        self.vertices.iter().all(Point::is_rational)
    }

    /// Twice the signed area (shoelace), positive for proper polygons.
    pub fn area2(&self) -> Result<QuadNum, ExactError> {
        shoelace(&self.vertices)
    }

    pub fn translate(&self, by: &Point) -> Result<Self, ExactError> {
        let vertices = self.vertices.iter().map(|p| p.add(by)).collect::<Result<Vec<_>, _>>()?;
        Ok(Self { vertices })
    }

    /// `λ·P`; for `λ > 0` the vertex order is preserved.
    pub fn scale(&self, k: &Rational) -> Result<Self, ExactError> {
        Self::hull(self.vertices.iter().map(|p| p.scale(k)))
    }

    /// Translates so the first (lexicographically smallest) vertex sits at
    /// the origin.
    pub fn normalized(&self) -> Result<Self, ExactError> {
        match self.vertices.first() {
            None => Ok(self.clone()),
            Some(p0) => {
                let by = Point::new(p0.x.neg(), p0.y.neg());
                self.translate(&by)
            }
        }
    }

    pub fn eq_up_to_translation(&self, other: &Self) -> Result<bool, ExactError> {
        if self.len() != other.len() {
            return Ok(false);
        }
        Ok(self.normalized()? == other.normalized()?)
    }

    /// Smallest `x` over the vertices.
    pub fn min_x(&self) -> Option<&QuadNum> {
        self.vertices.first().map(|p| &p.x)
    }

    pub fn max_x(&self) -> Option<&QuadNum> {
        self.vertices.iter().map(|p| &p.x).max()
    }

    pub fn min_y(&self) -> Option<&QuadNum> {
        self.vertices.iter().map(|p| &p.y).min()
    }

    /// `min over the polygon of ⟨u, n⟩` for an integer direction `n`.
    pub fn min_dot(&self, n: (i64, i64)) -> Result<Option<QuadNum>, ExactError> {
        let mut best: Option<QuadNum> = None;
        for p in &self.vertices {
            let v =
                p.x.scale(&Rational::from_integer(n.0.into()))
                    .try_add(&p.y.scale(&Rational::from_integer(n.1.into())))?;
            if best.as_ref().is_none_or(|b| v < *b) {
                best = Some(v);
            }
        }
        Ok(best)
    }

    /// The single non-trivial radicand of the coordinates, if any.
    pub fn radicand(&self) -> Result<Option<num_bigint::BigInt>, ExactError> {
        let mut d: Option<num_bigint::BigInt> = None;
        for p in &self.vertices {
            for c in [&p.x, &p.y] {
                if c.is_rational() {
                    continue;
                }
                match &d {
                    None => d = Some(c.d().clone()),
                    Some(e) if e == c.d() => {}
                    Some(e) => return Err(ExactError::MixedRadicand(e.to_string(), c.d().to_string())),
                }
            }
        }
        Ok(d)
    }
}

impl fmt::Display for Polygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vertices.iter().map(Point::to_string).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

pub(crate) fn shoelace(vs: &[Point]) -> Result<QuadNum, ExactError> {
    let n = vs.len();
    let mut acc = QuadNum::zero();
    for i in 0..n {
        let p = &vs[i];
        let q = &vs[(i + 1) % n];
        acc = acc.try_add(&p.x.try_mul(&q.y)?.try_sub(&p.y.try_mul(&q.x)?)?)?;
    }
    Ok(acc)
}

/// Removes repeated and collinear vertices from a cycle, checks that it is a
/// simple polygon with non-zero area, and orients it counterclockwise.
pub(crate) fn simple_cycle(points: Vec<Point>) -> Result<Vec<Point>> {
    let mut pts: Vec<Point> = Vec::with_capacity(points.len());
    for p in points {
        if pts.last() != Some(&p) {
            pts.push(p);
        }
    }
    while pts.len() > 1 && pts.first() == pts.last() {
        pts.pop();
    }
    // drop vertices whose neighbors are collinear with them, but only when
    // the vertex lies between its neighbors (a spike is left for the
    // simplicity test to reject)
    let mut changed = true;
    while changed && pts.len() >= 3 {
        changed = false;
        let n = pts.len();
        for i in 0..n {
            let prev = &pts[(i + n - 1) % n];
            let next = &pts[(i + 1) % n];
            let here = &pts[i];
            if cross(prev, here, next)?.is_zero() && between(prev, here, next)? {
                pts.remove(i);
                changed = true;
                break;
            }
        }
    }
    if pts.len() < 3 {
        return Err(Error::NotAPolygon(format!(
            "{} distinct non-collinear vertices",
            pts.len()
        )));
    }
    let n = pts.len();
    for i in 0..n {
        for j in i + 1..n {
            if j == i + 1 || (i == 0 && j == n - 1) {
                continue;
            }
            if segments_meet(&pts[i], &pts[(i + 1) % n], &pts[j], &pts[(j + 1) % n])? {
                return Err(Error::NotAPolygon(format!("edges {i} and {j} intersect")));
            }
        }
    }
    // adjacent edges folding back onto each other
    for i in 0..n {
        let prev = &pts[(i + n - 1) % n];
        let next = &pts[(i + 1) % n];
        if cross(prev, &pts[i], next)?.is_zero() {
            return Err(Error::NotAPolygon(format!("edge folds back at vertex {i}")));
        }
    }
    let area = shoelace(&pts)?;
    match area.signum() {
        0 => return Err(Error::NotAPolygon("zero area".into())),
        s if s < 0 => pts.reverse(),
        _ => {}
    }
    Ok(pts)
}

/// `q` lies on the closed segment `[p, r]`, assuming collinearity.
fn between(p: &Point, q: &Point, r: &Point) -> Result<bool, ExactError> {
    let d1 = q.sub(p)?;
    let d2 = r.sub(q)?;
    let dot = d1.x.try_mul(&d2.x)?.try_add(&d1.y.try_mul(&d2.y)?)?;
    Ok(dot.signum() >= 0)
}

fn on_segment(p: &Point, q: &Point, r: &Point) -> bool {
    let (lo_x, hi_x) = if p.x <= r.x { (&p.x, &r.x) } else { (&r.x, &p.x) };
    let (lo_y, hi_y) = if p.y <= r.y { (&p.y, &r.y) } else { (&r.y, &p.y) };
    lo_x <= &q.x && &q.x <= hi_x && lo_y <= &q.y && &q.y <= hi_y
}

fn segments_meet(a: &Point, b: &Point, c: &Point, d: &Point) -> Result<bool, ExactError> {
    let o1 = cross(a, b, c)?.signum();
    let o2 = cross(a, b, d)?.signum();
    let o3 = cross(c, d, a)?.signum();
    let o4 = cross(c, d, b)?.signum();
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return Ok(true);
    }
    Ok((o1 == 0 && on_segment(a, c, b))
        || (o2 == 0 && on_segment(a, d, b))
        || (o3 == 0 && on_segment(c, a, d))
        || (o4 == 0 && on_segment(c, b, d)))
}

/// Vertices of `{u : ⟨u, nᵢ⟩ + aᵢ ≥ 0 for all i}`, assumed bounded.
///
/// Candidate vertices are the pairwise intersections of boundary lines that
/// satisfy every constraint; their hull is the answer.
pub fn half_plane_intersection(normals: &[(i64, i64)], a: &[Rational]) -> Polygon {
    let feasible = |x: &Rational, y: &Rational| {
        normals.iter().zip(a).all(|(n, ai)| {
            x * Rational::from_integer(n.0.into()) + y * Rational::from_integer(n.1.into()) + ai >= Rational::zero()
        })
    };
    let mut pts = Vec::new();
    for i in 0..normals.len() {
        for j in i + 1..normals.len() {
            let (p, q) = normals[i];
            let (r, s) = normals[j];
            let det = p * s - q * r;
            if det == 0 {
                continue;
            }
            // p x + q y = −a_i, r x + s y = −a_j
            let det = Rational::from_integer(det.into());
            let ai = -&a[i];
            let aj = -&a[j];
            let x = (&ai * Rational::from_integer(s.into()) - &aj * Rational::from_integer(q.into())) / &det;
            let y = (&aj * Rational::from_integer(p.into()) - &ai * Rational::from_integer(r.into())) / &det;
            if feasible(&x, &y) {
                pts.push(Point::rational(x, y));
            }
        }
    }
    Polygon::hull(pts).expect("rational coordinates never mix radicands")
}

/// Orders polygons by vertex lists; used only to make outputs deterministic.
pub fn compare_polygons(p: &Polygon, q: &Polygon) -> Ordering {
    p.vertices.cmp(&q.vertices)
}
