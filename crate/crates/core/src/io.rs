//! JSON encodings used by the command-line tool.
//!
//! Rationals are strings `"p/q"` (integers also accepted on input); numbers
//! in ℚ(√d) are objects `{"a": "p/q", "b": "p/q", "d": n}`. Every emitted
//! document parses back to equal values.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Map, Value};

use crate::exactnum::{format_rational, serde_str, QuadNum, Rational};
use crate::geometry::{Point, Polygon};
use crate::okounkov::{OkounkovPolygon, PiecewiseLinear};
use crate::slices::{Certificate, DivisorPath, SliceBody};
use crate::surface::{ConeModel, DivisorClass, FlagData, SurfaceModel};
use crate::toric::{Ray, Realization};
use crate::zariski::{SegmentWalk, WalkPiece, ZariskiDecomposition};

/// Malformed input: bad JSON or a document not matching its schema.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError {
    pub message: String,
    pub line: Option<usize>,
    pub column: Option<usize>,
}

impl InputError {
    pub fn schema(message: impl Into<String>) -> Self {
        Self {
            message: message.into(),
            line: None,
            column: None,
        }
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.line, self.column) {
            (Some(l), Some(c)) => write!(f, "{} at line {l}, column {c}", self.message),
            _ => f.write_str(&self.message),
        }
    }
}

impl std::error::Error for InputError {}

type In<T> = Result<T, InputError>;

pub fn parse_json(text: &str) -> In<Value> {
    serde_json::from_str(text).map_err(|e| InputError {
        message: e.to_string(),
        line: Some(e.line()),
        column: Some(e.column()),
    })
}

fn field<'a>(v: &'a Value, key: &str) -> In<&'a Value> {
    v.get(key)
        .ok_or_else(|| InputError::schema(format!("missing field \"{key}\"")))
}

fn array<'a>(v: &'a Value, what: &str) -> In<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| InputError::schema(format!("{what} must be an array")))
}

fn integer(v: &Value, what: &str) -> In<i64> {
    v.as_i64()
        .ok_or_else(|| InputError::schema(format!("{what} must be an integer")))
}

/// Bound on integer entries, so that intersection numbers fit in `i64`.
pub const MAX_ENTRY: i64 = 1 << 20;

fn int_vec(v: &Value, what: &str) -> In<Vec<i64>> {
    array(v, what)?
        .iter()
        .map(|x| {
            let n = integer(x, what)?;
            if n.abs() > MAX_ENTRY {
                return Err(InputError::schema(format!(
                    "{what} must not exceed {MAX_ENTRY} in absolute value"
                )));
            }
            Ok(n)
        })
        .collect()
}

pub fn rational_from_json(v: &Value) -> In<Rational> {
    serde_str::from_json(v).map_err(|e| InputError::schema(e.to_string()))
}

pub fn rational_to_json(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

pub fn rational_vec_from_json(v: &Value, what: &str) -> In<Vec<Rational>> {
    array(v, what)?.iter().map(rational_from_json).collect()
}

pub fn rational_vec_to_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational_to_json).collect())
}

pub fn quad_to_json(q: &QuadNum) -> Value {
    serde_json::to_value(q).expect("QuadNum serializes")
}

/// A number in ℚ(√d): a rational string or integer, or an `{a, b, d}` object.
pub fn quad_from_json(v: &Value) -> In<QuadNum> {
    if v.is_object() {
        serde_json::from_value(v.clone()).map_err(|e| InputError::schema(e.to_string()))
    } else {
        Ok(QuadNum::rational(rational_from_json(v)?))
    }
}

/// Rational values as strings, irrational ones as objects.
pub fn exact_to_json(q: &QuadNum) -> Value {
    match q.as_rational() {
        Some(r) => rational_to_json(r),
        None => quad_to_json(q),
    }
}

fn rational_map_to_json(m: &BTreeMap<String, Rational>) -> Value {
    Value::Object(m.iter().map(|(k, v)| (k.clone(), rational_to_json(v))).collect())
}

fn rational_map_from_json(v: &Value, what: &str) -> In<BTreeMap<String, Rational>> {
    v.as_object()
        .ok_or_else(|| InputError::schema(format!("{what} must be an object")))?
        .iter()
        .map(|(k, x)| Ok((k.clone(), rational_from_json(x)?)))
        .collect()
}

pub fn surface_from_json(v: &Value) -> In<SurfaceModel> {
    let rank = integer(field(v, "rank")?, "rank")?;
    let basis: Vec<String> = array(field(v, "basis")?, "basis")?
        .iter()
        .map(|x| {
            x.as_str()
                .map(str::to_string)
                .ok_or_else(|| InputError::schema("basis names must be strings"))
        })
        .collect::<In<_>>()?;
    if rank < 1 || basis.len() != rank as usize {
        return Err(InputError::schema(format!(
            "rank {rank} does not match {} basis names",
            basis.len()
        )));
    }
    let form: Vec<Vec<i64>> = array(field(v, "intersection_matrix")?, "intersection_matrix")?
        .iter()
        .map(|row| int_vec(row, "intersection_matrix entries"))
        .collect::<In<_>>()?;
    let curves: Vec<(String, Vec<i64>)> = match v.get("curves") {
        None => Vec::new(),
        Some(cs) => array(cs, "curves")?
            .iter()
            .map(|c| {
                let name = field(c, "name")?
                    .as_str()
                    .ok_or_else(|| InputError::schema("curve name must be a string"))?
                    .to_string();
                Ok((name, int_vec(field(c, "class")?, "curve class")?))
            })
            .collect::<In<_>>()?,
    };
    let cone = field(v, "cone")?;
    let kind = field(cone, "kind")?.as_str().unwrap_or_default();
    let cone = match kind {
        "quadratic" => ConeModel::Quadratic {
            ample: rational_vec_from_json(field(cone, "ample")?, "ample")?,
        },
        "polyhedral" => {
            let rows = |key: &str| -> In<Vec<Vec<Rational>>> {
                array(field(cone, key)?, key)?
                    .iter()
                    .map(|r| rational_vec_from_json(r, key))
                    .collect()
            };
            ConeModel::Polyhedral {
                eff_generators: rows("eff_generators")?,
                eff_facets: rows("eff_facets")?,
                nef_facets: rows("nef_facets")?,
            }
        }
        other => {
            return Err(InputError::schema(format!(
                "cone kind must be \"quadratic\" or \"polyhedral\", got {other:?}"
            )))
        }
    };
    let dims_ok = form.len() == basis.len()
        && form.iter().all(|r| r.len() == basis.len())
        && curves.iter().all(|(_, c)| c.len() == basis.len());
    if !dims_ok {
        return Err(InputError::schema("matrix and curve classes must match the rank"));
    }
    Ok(SurfaceModel::with_curves(basis, form, curves, cone))
}

/// Curves are listed sorted by name.
pub fn surface_to_json(s: &SurfaceModel) -> Value {
    let mut curves: Vec<_> = s.curves.iter().collect();
    curves.sort_by(|a, b| a.name.cmp(&b.name));
    let rows = |m: &[Vec<Rational>]| Value::Array(m.iter().map(|r| rational_vec_to_json(r)).collect());
    let cone = match &s.cone {
        ConeModel::Quadratic { ample } => json!({"kind": "quadratic", "ample": rational_vec_to_json(ample)}),
        ConeModel::Polyhedral {
            eff_generators,
            eff_facets,
            nef_facets,
        } => json!({
            "kind": "polyhedral",
            "eff_generators": rows(eff_generators),
            "eff_facets": rows(eff_facets),
            "nef_facets": rows(nef_facets),
        }),
    };
    json!({
        "rank": s.rank(),
        "basis": s.basis_names,
        "intersection_matrix": s.form,
        "curves": curves.iter().map(|c| json!({"name": c.name, "class": c.class})).collect::<Vec<_>>(),
        "cone": cone,
    })
}

pub fn flag_from_json(v: &Value) -> In<FlagData> {
    let curve = int_vec(field(v, "curve")?, "flag curve")?;
    let mut flag = FlagData::new(curve);
    if let Some(m) = v.get("multiplicities") {
        let obj = m
            .as_object()
            .ok_or_else(|| InputError::schema("multiplicities must be an object"))?;
        for (name, x) in obj {
            let k = integer(x, "multiplicity")?;
            let k = u32::try_from(k).map_err(|_| InputError::schema("multiplicities must be non-negative"))?;
            flag = flag.with_point_on(name, k);
        }
    }
    Ok(flag)
}

pub fn flag_to_json(f: &FlagData) -> Value {
    json!({"curve": f.curve, "multiplicities": f.multiplicities})
}

pub fn divisor_from_json(v: &Value) -> In<DivisorClass> {
    Ok(DivisorClass(rational_vec_from_json(v, "divisor")?))
}

/// Comma-separated rationals, as given on the command line.
pub fn rational_list(text: &str) -> In<Vec<Rational>> {
    text.split(',')
        .map(|s| crate::exactnum::parse_rational(s.trim()).map_err(|e| InputError::schema(e.to_string())))
        .collect()
}

pub fn point_to_json(p: &Point) -> Value {
    json!([exact_to_json(&p.x), exact_to_json(&p.y)])
}

pub fn polygon_to_json(p: &Polygon) -> Value {
    json!({"vertices": p.vertices().iter().map(point_to_json).collect::<Vec<_>>()})
}

/// Vertex list from `{"vertices": [...]}` or a bare array of `[t, y]` pairs.
pub fn points_from_json(v: &Value) -> In<Vec<Point>> {
    let list = match v.get("vertices") {
        Some(l) => l,
        None => v,
    };
    array(list, "vertices")?
        .iter()
        .map(|pt| {
            let xy = array(pt, "vertex")?;
            if xy.len() != 2 {
                return Err(InputError::schema("each vertex must have two coordinates"));
            }
            Ok(Point::new(quad_from_json(&xy[0])?, quad_from_json(&xy[1])?))
        })
        .collect()
}

fn pl_to_json(f: &PiecewiseLinear) -> Value {
    json!({
        "breakpoints": f.breakpoints.iter().map(exact_to_json).collect::<Vec<_>>(),
        "values": f.values.iter().map(exact_to_json).collect::<Vec<_>>(),
        "slopes": rational_vec_to_json(&f.slopes),
    })
}

pub fn okounkov_polygon_to_json(p: &OkounkovPolygon, vertices: &Polygon) -> Value {
    json!({
        "nu": rational_to_json(&p.nu),
        "mu": quad_to_json(&p.mu),
        "breakpoints": p.breakpoints.iter().map(exact_to_json).collect::<Vec<_>>(),
        "vertices": vertices.vertices().iter().map(point_to_json).collect::<Vec<_>>(),
        "alpha": pl_to_json(&p.alpha),
        "beta": pl_to_json(&p.beta),
    })
}

pub fn decomposition_to_json(z: &ZariskiDecomposition) -> Value {
    json!({"P": rational_vec_to_json(z.positive.coeffs()), "N": rational_map_to_json(&z.negative)})
}

pub fn decomposition_from_json(v: &Value) -> In<ZariskiDecomposition> {
    Ok(ZariskiDecomposition {
        positive: DivisorClass(rational_vec_from_json(field(v, "P")?, "P")?),
        negative: rational_map_from_json(field(v, "N")?, "N")?,
    })
}

pub fn walk_to_json(w: &SegmentWalk) -> Value {
    json!({
        "nu": rational_to_json(&w.nu),
        "mu": quad_to_json(&w.mu),
        "pieces": w.pieces.iter().map(|p| json!({
            "t_lo": rational_to_json(&p.t_lo),
            "t_hi": exact_to_json(&p.t_hi),
            "A": rational_map_to_json(&p.a),
            "B": rational_map_to_json(&p.b),
        })).collect::<Vec<_>>(),
    })
}

pub fn walk_from_json(v: &Value) -> In<SegmentWalk> {
    let pieces = array(field(v, "pieces")?, "pieces")?
        .iter()
        .map(|p| {
            Ok(WalkPiece {
                t_lo: rational_from_json(field(p, "t_lo")?)?,
                t_hi: quad_from_json(field(p, "t_hi")?)?,
                a: rational_map_from_json(field(p, "A")?, "A")?,
                b: rational_map_from_json(field(p, "B")?, "B")?,
            })
        })
        .collect::<In<_>>()?;
    Ok(SegmentWalk {
        nu: rational_from_json(field(v, "nu")?)?,
        mu: quad_from_json(field(v, "mu")?)?,
        pieces,
    })
}

/// Rays, coefficients and optional flag ray indices of a toric divisor.
pub type ToricInput = (Vec<Ray>, Vec<Rational>, Option<(usize, usize)>);

/// `{"rays": [[x, y], ...], "a": [...], "flag": [i1, i2]}`; the flag is
/// optional.
pub fn toric_divisor_from_json(v: &Value) -> In<ToricInput> {
    let rays = array(field(v, "rays")?, "rays")?
        .iter()
        .map(|r| {
            let xy = int_vec(r, "ray")?;
            if xy.len() != 2 {
                return Err(InputError::schema("rays must have two coordinates"));
            }
            Ok((xy[0], xy[1]))
        })
        .collect::<In<Vec<Ray>>>()?;
    let a = rational_vec_from_json(field(v, "a")?, "a")?;
    if a.len() != rays.len() {
        return Err(InputError::schema("one coefficient per ray is required"));
    }
    let flag = match v.get("flag") {
        None => None,
        Some(f) => {
            let ij = int_vec(f, "flag")?;
            if ij.len() != 2 || ij.iter().any(|&i| i < 0) {
                return Err(InputError::schema("flag must be two ray indices"));
            }
            Some((ij[0] as usize, ij[1] as usize))
        }
    };
    Ok((rays, a, flag))
}

pub fn realization_to_json(r: &Realization) -> Value {
    json!({
        "rays": r.fan.rays().iter().map(|v| json!([v.0, v.1])).collect::<Vec<_>>(),
        "a": rational_vec_to_json(&r.a),
        "flag": [r.flag.0, r.flag.1],
        "shift": point_to_json(&r.shift),
        "polygon": polygon_to_json(&r.polygon),
    })
}

/// `{"v0": [...], "w": [...], "range": [lo, hi]}`.
pub fn path_from_json(v: &Value) -> In<DivisorPath> {
    let range = rational_vec_from_json(field(v, "range")?, "range")?;
    if range.len() != 2 {
        return Err(InputError::schema("range must be [lo, hi]"));
    }
    Ok(DivisorPath::new(
        divisor_from_json(field(v, "v0")?)?,
        divisor_from_json(field(v, "w")?)?,
        range[0].clone(),
        range[1].clone(),
    ))
}

pub fn path_to_json(p: &DivisorPath) -> Value {
    json!({
        "v0": rational_vec_to_json(p.v0.coeffs()),
        "w": rational_vec_to_json(p.w.coeffs()),
        "range": [rational_to_json(&p.r_lo), rational_to_json(&p.r_hi)],
    })
}

pub fn slice_body_to_json(b: &SliceBody, cert: Option<&Certificate>) -> Value {
    let mut out = Map::new();
    out.insert("path".into(), path_to_json(&b.path));
    out.insert("curve".into(), rational_vec_to_json(b.c.coeffs()));
    out.insert(
        "g".into(),
        json!({"c0": rational_to_json(&b.g.c0), "cr": rational_to_json(&b.g.cr), "ct": rational_to_json(&b.g.ct)}),
    );
    out.insert(
        "f".into(),
        Value::Array(
            b.f_samples
                .iter()
                .map(|s| json!({"r": rational_to_json(&s.r), "value": quad_to_json(&s.value)}))
                .collect(),
        ),
    );
    if let Some(cf) = &b.closed_form {
        out.insert("closed_form".into(), serde_json::to_value(cf).expect("serializes"));
    }
    out.insert("boundary_samples".into(), rational_vec_to_json(&b.boundary_samples));
    if let Some(c) = cert {
        out.insert("certificate".into(), Value::String(c.verdict.as_str().into()));
        if let Some(w) = &c.witness {
            out.insert("witness".into(), serde_json::to_value(w).expect("serializes"));
        }
    }
    Value::Object(out)
}
