//! Smooth complete toric surfaces: intersection theory of the invariant
//! divisors, divisor polytopes, Okounkov bodies for invariant flags, and
//! realization of polygons as toric bodies.

mod fan;
mod realize;

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactnum::{int, Rational};
use crate::geometry::{half_plane_intersection, Point, Polygon};
use crate::okounkov::{okounkov_polygon, OkounkovPolygon};
use crate::surface::{normalize_covector, ConeModel, CurveEntry, DivisorClass, FlagData, SurfaceModel};

pub use fan::{angle_cmp, det, primitive, smooth_complete_fan, Ray, ToricSurface};
pub use realize::{realize_polygon, Realization};

/// A toric surface presented as a [`SurfaceModel`].
///
/// The Néron–Severi basis is the classes of the invariant divisors `Dᵢ` for
/// every ray except two: `(1,0)` and `(0,1)` when both are rays, otherwise
/// rays 0 and 1. The dropped classes are eliminated with the linear
/// relations `Σ ⟨u, vᵢ⟩ Dᵢ ~ 0`.
#[derive(Debug, Clone)]
pub struct ToricModel {
    pub fan: ToricSurface,
    pub model: SurfaceModel,
    /// Ray index of each basis element.
    pub basis: Vec<usize>,
    pub dropped: [usize; 2],
    /// `u₁, u₂` dual to the dropped rays.
    dual: [(i64, i64); 2],
}

pub fn curve_name(i: usize) -> String {
    format!("D{i}")
}

impl ToricModel {
    /// Class of `Σ aᵢ Dᵢ` in the model basis.
    pub fn class_of(&self, a: &[Rational]) -> DivisorClass {
        let rays = self.fan.rays();
        let [j1, j2] = self.dropped;
        let [u1, u2] = self.dual;
        DivisorClass(
            self.basis
                .iter()
                .map(|&i| {
                    let v = rays[i];
                    &a[i] - &a[j1] * int(u1.0 * v.0 + u1.1 * v.1) - &a[j2] * int(u2.0 * v.0 + u2.1 * v.1)
                })
                .collect(),
        )
    }

    pub fn class_of_ray(&self, i: usize) -> Vec<i64> {
        let mut a = vec![Rational::zero(); self.fan.len()];
        a[i] = int(1);
        self.class_of(&a)
            .0
            .iter()
            .map(|x| i64::try_from(x.to_integer()).expect("invariant divisor classes are small integers"))
            .collect()
    }

    /// The flag `C = D_{i1}`, `x = D_{i1} ∩ D_{i2}`.
    pub fn invariant_flag(&self, i1: usize, i2: usize) -> FlagData {
        let mut flag = FlagData::new(self.class_of_ray(i1));
        if self.model.curve(&curve_name(i2)).is_some() {
            flag = flag.with_point_on(&curve_name(i2), 1);
        }
        flag
    }
}

/// Builds the intersection form, curve catalog and cones of a toric surface.
///
/// Curves are the `Dᵢ` with `Dᵢ² < 0`. The effective cone is generated by the
/// `Dᵢ`; its facets are the minimal positive relations `Σ λᵢ vᵢ = 0` among
/// the rays (pairs of opposite rays and triples containing the origin in
/// their interior), read as covectors on the basis. The nef cone is cut out
/// by `v·Dᵢ ≥ 0`.
pub fn toric_surface_model(fan: &ToricSurface) -> Result<ToricModel> {
    let rays = fan.rays();
    let r = rays.len();
    let dropped = match (fan.index_of((1, 0)), fan.index_of((0, 1))) {
        (Some(a), Some(b)) => [a, b],
        _ => [0, 1],
    };
    let (v1, v2) = (rays[dropped[0]], rays[dropped[1]]);
    let dv = det(v1, v2);
    if dv.abs() != 1 {
        return Err(Error::InvalidFan("dropped rays do not form a lattice basis".into()));
    }
    // rows of the inverse of [v1 v2]
    let dual = [(v2.1 * dv, -v2.0 * dv), (-v1.1 * dv, v1.0 * dv)];
    let basis: Vec<usize> = (0..r).filter(|i| !dropped.contains(i)).collect();
    let n = basis.len();
    let form: Vec<Vec<i64>> = basis
        .iter()
        .map(|&i| basis.iter().map(|&j| fan.intersection(i, j)).collect())
        .collect();
    let basis_names: Vec<String> = basis.iter().map(|&i| curve_name(i)).collect();
    let mut tm = ToricModel {
        fan: fan.clone(),
        model: SurfaceModel::new(
            basis_names,
            form,
            Vec::new(),
            ConeModel::Quadratic { ample: Vec::new() },
        ),
        basis,
        dropped,
        dual,
    };
    let classes: Vec<Vec<i64>> = (0..r).map(|i| tm.class_of_ray(i)).collect();
    let curves: Vec<CurveEntry> = (0..r)
        .filter(|&i| fan.self_intersection(i) < 0)
        .map(|i| CurveEntry {
            name: curve_name(i),
            class: classes[i].clone(),
            self_int: fan.self_intersection(i),
        })
        .collect();

    let mut eff_facets: BTreeSet<Vec<num_bigint::BigInt>> = BTreeSet::new();
    let mut push_relation = |lambda: &[i64]| {
        let cov: Vec<Rational> = tm.basis.iter().map(|&i| int(lambda[i])).collect();
        eff_facets.insert(normalize_covector(&cov));
    };
    for i in 0..r {
        for j in i + 1..r {
            if rays[i] == (-rays[j].0, -rays[j].1) {
                let mut lambda = vec![0; r];
                lambda[i] = 1;
                lambda[j] = 1;
                push_relation(&lambda);
            }
            for k in j + 1..r {
                let (a, b, c) = (rays[i], rays[j], rays[k]);
                let l = [det(b, c), det(c, a), det(a, b)];
                if l.iter().all(|&x| x > 0) || l.iter().all(|&x| x < 0) {
                    let mut lambda = vec![0; r];
                    lambda[i] = l[0].abs();
                    lambda[j] = l[1].abs();
                    lambda[k] = l[2].abs();
                    push_relation(&lambda);
                }
            }
        }
    }
    let to_rat = |v: &Vec<num_bigint::BigInt>| -> Vec<Rational> {
        v.iter().map(|x| Rational::from_integer(x.clone())).collect()
    };
    let eff_facets: Vec<Vec<Rational>> = eff_facets.iter().map(to_rat).collect();
    let eff_generators: Vec<Vec<Rational>> = classes.iter().map(|c| c.iter().map(|&x| int(x)).collect()).collect();
    let nef_set: BTreeSet<Vec<num_bigint::BigInt>> = classes
        .iter()
        .map(|c| {
            let row: Vec<Rational> = tm.model.form_times_int(c).iter().map(|&x| int(x)).collect();
            normalize_covector(&row)
        })
        .collect();
    let nef_facets = nef_set.iter().map(to_rat).collect();
    debug_assert_eq!(eff_generators.iter().map(Vec::len).max(), Some(n));
    tm.model = SurfaceModel::new(
        tm.model.basis_names.clone(),
        tm.model.form.clone(),
        curves,
        ConeModel::Polyhedral {
            eff_generators,
            eff_facets,
            nef_facets,
        },
    );
    Ok(tm)
}

/// `P(D) = {u : ⟨u, vᵢ⟩ + aᵢ ≥ 0}`; may be empty or a single point.
pub fn polytope_of_divisor(fan: &ToricSurface, a: &[Rational]) -> Result<Polygon> {
    if a.len() != fan.len() {
        return Err(Error::Surface(crate::surface::SurfaceError::DimensionMismatch {
            expected: fan.len(),
            got: a.len(),
        }));
    }
    Ok(half_plane_intersection(fan.rays(), a))
}

/// The Okounkov body for the invariant flag `C = D_{i1}`, `x = D_{i1} ∩ D_{i2}`:
/// the image of `P(D)` under `u ↦ (⟨u, v_{i1}⟩ + a_{i1}, ⟨u, v_{i2}⟩ + a_{i2})`.
///
/// The shift by `(a_{i1}, a_{i2})` makes the result the actual valuation
/// vectors, so it does not change when a principal divisor is added to `D`.
/// When `v_{i1} = (1,0)`, `v_{i2} = (0,1)` and `a_{i1} = a_{i2} = 0` the map
/// is the identity.
pub fn okounkov_via_psi(fan: &ToricSurface, a: &[Rational], i1: usize, i2: usize) -> Result<Polygon> {
    let r = fan.len();
    if i1 >= r || i2 >= r || fan.next(i1) != i2 {
        return Err(Error::NonAdjacentFlag(i1, i2));
    }
    let p = polytope_of_divisor(fan, a)?;
    let (v1, v2) = (fan.rays()[i1], fan.rays()[i2]);
    let image = p.vertices().iter().map(|u| {
        let x = u.x.as_rational().expect("toric polytopes are rational");
        let y = u.y.as_rational().expect("toric polytopes are rational");
        Point::rational(
            x * int(v1.0) + y * int(v1.1) + &a[i1],
            x * int(v2.0) + y * int(v2.1) + &a[i2],
        )
    });
    Ok(Polygon::hull(image)?)
}

/// The same body computed through the surface model: Zariski walk of
/// `Σ aᵢ Dᵢ` along `D_{i1}` with the point on `D_{i2}`.
pub fn toric_forward_polygon(fan: &ToricSurface, a: &[Rational], i1: usize, i2: usize) -> Result<OkounkovPolygon> {
    if fan.next(i1) != i2 {
        return Err(Error::NonAdjacentFlag(i1, i2));
    }
    let tm = toric_surface_model(fan)?;
    let d = tm.class_of(a);
    let flag = tm.invariant_flag(i1, i2);
    okounkov_polygon(&tm.model, &d, &flag)
}
