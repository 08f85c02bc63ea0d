//! Small hand-built models used in examples, tests and the `verify` command.

use super::{ConeModel, SurfaceModel};
use crate::exactnum::{int, ints};

fn names(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

/// ℙ² with basis `L`.
pub fn projective_plane() -> SurfaceModel {
    SurfaceModel::with_curves(
        names(&["L"]),
        vec![vec![1]],
        vec![],
        ConeModel::Polyhedral {
            eff_generators: vec![ints(&[1])],
            eff_facets: vec![ints(&[1])],
            nef_facets: vec![ints(&[1])],
        },
    )
}

/// The Hirzebruch surface F₁ = Bl_pℙ², basis `H, E` with `H² = 1`, `E² = −1`.
pub fn hirzebruch_f1() -> SurfaceModel {
    SurfaceModel::with_curves(
        names(&["H", "E"]),
        vec![vec![1, 0], vec![0, -1]],
        vec![("E".to_string(), vec![0, 1])],
        ConeModel::Polyhedral {
            // generated by E and H − E
            eff_generators: vec![ints(&[0, 1]), ints(&[1, -1])],
            eff_facets: vec![ints(&[1, 0]), ints(&[1, 1])],
            // v·E ≥ 0 and v·(H − E) ≥ 0
            nef_facets: vec![ints(&[0, -1]), ints(&[1, 1])],
        },
    )
}

/// ℙ² blown up at two points, basis `H, E1, E2`; curves `E1`, `E2` and the
/// strict transform `L12 = H − E1 − E2` of the line through both points.
pub fn blowup_p2_two_points() -> SurfaceModel {
    SurfaceModel::with_curves(
        names(&["H", "E1", "E2"]),
        vec![vec![1, 0, 0], vec![0, -1, 0], vec![0, 0, -1]],
        vec![
            ("E1".to_string(), vec![0, 1, 0]),
            ("E2".to_string(), vec![0, 0, 1]),
            ("L12".to_string(), vec![1, -1, -1]),
        ],
        ConeModel::Polyhedral {
            eff_generators: vec![ints(&[0, 1, 0]), ints(&[0, 0, 1]), ints(&[1, -1, -1])],
            eff_facets: vec![ints(&[1, 0, 0]), ints(&[1, 1, 0]), ints(&[1, 0, 1])],
            nef_facets: vec![ints(&[0, -1, 0]), ints(&[0, 0, -1]), ints(&[1, 1, 1])],
        },
    )
}

/// K3 surface with form `4x² − 4y² − 4z²`; `Eff = Nef` is the round cone on
/// the side of `(1,0,0)`.
pub fn k3_quartic() -> SurfaceModel {
    SurfaceModel::with_curves(
        names(&["x", "y", "z"]),
        vec![vec![4, 0, 0], vec![0, -4, 0], vec![0, 0, -4]],
        vec![],
        ConeModel::Quadratic {
            ample: vec![int(1), int(0), int(0)],
        },
    )
}

/// E×E for a general elliptic curve, basis `f1, f2, Δ`. The form gives
/// `v·v = 2(xy + xz + yz)` and, with `h = (1,1,1)`, `v·h = 2(x + y + z)`.
pub fn elliptic_square() -> SurfaceModel {
    SurfaceModel::with_curves(
        names(&["f1", "f2", "Delta"]),
        vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]],
        vec![],
        ConeModel::Quadratic {
            ample: vec![int(1), int(1), int(1)],
        },
    )
}

/// The anticanonical K3 surface of the Mori dream space example: basis
/// `H, C1, C2` with `H² = 4`, `C1² = C2² = 0`, `H·C1 = H·C2 = C1·C2 = 4`.
pub fn cutkosky_y1() -> SurfaceModel {
    SurfaceModel::with_curves(
        names(&["H", "C1", "C2"]),
        vec![vec![4, 4, 4], vec![4, 0, 4], vec![4, 4, 0]],
        vec![],
        ConeModel::Quadratic {
            ample: vec![int(1), int(0), int(0)],
        },
    )
}

/// ℙ¹×ℙ¹ with basis `F1, F2`; `Eff = Nef` is the first quadrant.
pub fn p1_times_p1() -> SurfaceModel {
    SurfaceModel::with_curves(
        names(&["F1", "F2"]),
        vec![vec![0, 1], vec![1, 0]],
        vec![],
        ConeModel::Polyhedral {
            eff_generators: vec![ints(&[1, 0]), ints(&[0, 1])],
            eff_facets: vec![ints(&[1, 0]), ints(&[0, 1])],
            nef_facets: vec![ints(&[0, 1]), ints(&[1, 0])],
        },
    )
}
