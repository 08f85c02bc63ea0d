use crate::exactnum::int;
use crate::surface::models::{cutkosky_y1, elliptic_square, p1_times_p1};
use crate::surface::{DivisorClass, SurfaceModel};

use super::DivisorPath;

/// A slice surface with a path and flag curve.
#[derive(Debug, Clone)]
pub struct BuiltinSlice {
    pub name: &'static str,
    pub description: &'static str,
    pub model: SurfaceModel,
    pub path: DivisorPath,
    pub c: DivisorClass,
}

/// The built-in slice examples:
///
/// * `fano`: `E×E` with `v(r) = (9 − 9r)f₁ + 3f₂` and `C = f₁ + f₂ + Δ`;
///   `f(r) = 4 − 3r − √(9r² − 15r + 7)`, `g(r, t) = 24 − 18r − 6t`.
/// * `cutkosky`: the K3 surface `Y₁` with `v(r) = (3 − r)H − rC₁` and
///   `C = H + C₂`, whose `f` has radicands varying with `r`.
/// * `toric-control`: `ℙ¹×ℙ¹` with `v(r) = 3F₁ + (2 − r)F₂` and
///   `C = F₁ + F₂`, where `f(r) = 2 − r` is linear.
pub fn builtin_models() -> Vec<BuiltinSlice> {
    vec![
        BuiltinSlice {
            name: "fano",
            description: "E×E slice of the Fano threefold example",
            model: elliptic_square(),
            path: DivisorPath::new(
                DivisorClass::from_ints(&[9, 3, 0]),
                DivisorClass::from_ints(&[9, 0, 0]),
                int(0),
                int(1),
            ),
            c: DivisorClass::from_ints(&[1, 1, 1]),
        },
        BuiltinSlice {
            name: "cutkosky",
            description: "K3 surface Y1 with Pic = <H, C1, C2>",
            model: cutkosky_y1(),
            path: DivisorPath::new(
                DivisorClass::from_ints(&[3, 0, 0]),
                DivisorClass::from_ints(&[1, 1, 0]),
                int(0),
                int(1),
            ),
            c: DivisorClass::from_ints(&[1, 0, 1]),
        },
        BuiltinSlice {
            name: "toric-control",
            description: "P1xP1 slice with linear f",
            model: p1_times_p1(),
            path: DivisorPath::new(
                DivisorClass::from_ints(&[3, 2]),
                DivisorClass::from_ints(&[0, 1]),
                int(0),
                int(1),
            ),
            c: DivisorClass::from_ints(&[1, 1]),
        },
    ]
}

/// Looks up a built-in slice by name.
pub fn builtin(name: &str) -> Option<BuiltinSlice> {
    builtin_models().into_iter().find(|b| b.name == name)
}
