//! Exact computation of Zariski decompositions and Okounkov bodies of divisors
//! on surfaces, their toric realizations, and slice bodies of threefolds.
//!
//! Everything is computed over ℚ or a single real quadratic field ℚ(√d); no
//! floating point enters any decision. Modules:
//!
//! * [`exactnum`] rationals, `a + b√d` numbers, sums of surds.
//! * [`surface`] Néron–Severi lattices, curve catalogs and cone models.
//! * [`zariski`] Zariski decomposition and its variation along `D − tC`.
//! * [`okounkov`] polygons from a segment walk, shape checks and certificates.
//! * [`toric`] smooth complete toric surfaces and polygon realization.
//! * [`slices`] threefold bodies assembled from surface slices.
//! * [`io`] and [`svg`] JSON schemas and figures used by the CLI.

pub mod error;
pub mod exactnum;
pub mod geometry;
pub mod io;
pub mod linalg;
pub mod okounkov;
pub mod par;
pub mod slices;
pub mod surface;
pub mod svg;
pub mod toric;
pub mod verify;
pub mod zariski;

pub use error::Error;
pub use exactnum::{QuadNum, Rational};
