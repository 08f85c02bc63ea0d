//! Surface models: a Néron–Severi lattice with its intersection form, a
//! catalog of negative curves, and a description of the effective and nef
//! cones.
//!
//! The cone is model input. Two kinds are supported:
//!
//! * **polyhedral**: effective generators plus facet covectors for the
//!   pseudo-effective and nef cones. Covectors act on coordinate vectors by
//!   the plain dot product, not through the intersection form.
//! * **quadratic**: `Eff = Nef = {v : v·v ≥ 0, v·h ≥ 0}` for a witness `h`
//!   with `h·h > 0`, where `·` is the intersection form.

mod flag;
pub mod models;

use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::exactnum::{format_rational, gcd_all, int, OrderedScalar, Rational};
use crate::linalg;

pub use flag::{validate_flag, FlagData};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("effective cone is not full-dimensional (rank {rank} < {dim})")]
    DegenerateCone { rank: usize, dim: usize },
    #[error("invalid surface model: {0}")]
    Invalid(String),
}

/// An irreducible curve class from the model's negative-curve catalog.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveEntry {
    pub name: String,
    pub class: Vec<i64>,
    pub self_int: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConeModel {
    Polyhedral {
        eff_generators: Vec<Vec<Rational>>,
        eff_facets: Vec<Vec<Rational>>,
        nef_facets: Vec<Vec<Rational>>,
    },
    Quadratic {
        ample: Vec<Rational>,
    },
}

impl ConeModel {
    pub fn is_quadratic(&self) -> bool {
        matches!(self, ConeModel::Quadratic { .. })
    }

    /// True when the model asserts `Eff = Nef`: always for the quadratic kind,
    /// and for polyhedral models whose two facet lists agree up to scaling.
    pub fn eff_equals_nef(&self) -> bool {
        match self {
            ConeModel::Quadratic { .. } => true,
            ConeModel::Polyhedral {
                eff_facets, nef_facets, ..
            } => {
                let a: BTreeSet<_> = eff_facets.iter().map(|f| normalize_covector(f)).collect();
                let b: BTreeSet<_> = nef_facets.iter().map(|f| normalize_covector(f)).collect();
                a == b
            }
        }
    }
}

/// Scales a covector to a primitive integer vector with the same direction.
pub fn normalize_covector(f: &[Rational]) -> Vec<BigInt> {
    let lcm = f
        .iter()
        .fold(BigInt::from(1), |l, x| num_integer::Integer::lcm(&l, x.denom()));
    let ints: Vec<BigInt> = f
        .iter()
        .map(|x| (x * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = gcd_all(ints.iter());
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// A divisor class as a coordinate vector in the model's basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DivisorClass(pub Vec<Rational>);

impl DivisorClass {
    pub fn zero(rank: usize) -> Self {
        Self(vec![Rational::zero(); rank])
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Self(v.iter().map(|&x| int(x)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self(self.0.iter().map(|a| a * k).collect())
    }

    /// `self − t·other`.
    pub fn minus_multiple(&self, t: &Rational, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a - t * b).collect())
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(format_rational).collect()
    }
}

/// A surface model. Immutable once built; query methods are pure.
#[derive(Debug)]
pub struct SurfaceModel {
    pub basis_names: Vec<String>,
    pub form: Vec<Vec<i64>>,
    pub curves: Vec<CurveEntry>,
    pub cone: ConeModel,
    eff_rank: OnceLock<usize>,
}

impl Clone for SurfaceModel {
    fn clone(&self) -> Self {
        Self::new(
            self.basis_names.clone(),
            self.form.clone(),
            self.curves.clone(),
            self.cone.clone(),
        )
    }
}

impl PartialEq for SurfaceModel {
    fn eq(&self, other: &Self) -> bool {
        self.basis_names == other.basis_names
            && self.form == other.form
            && self.curves == other.curves
            && self.cone == other.cone
    }
}

/// Dot product of a coordinate vector with an integer vector.
fn dot_int<K: OrderedScalar>(v: &[K], w: &[i64]) -> K {
    v.iter().zip(w).fold(
        K::zero_value(),
        |acc, (x, &c)| {
            if c == 0 {
                acc
            } else {
                acc + x.scale(&int(c))
            }
        },
    )
}

fn dot_rat<K: OrderedScalar>(v: &[K], w: &[Rational]) -> K {
    v.iter().zip(w).fold(
        K::zero_value(),
        |acc, (x, c)| {
            if c.is_zero() {
                acc
            } else {
                acc + x.scale(c)
            }
        },
    )
}

impl SurfaceModel {
    /// Builds a model as given; call [`validate_surface`] to check the
    /// invariants.
    pub fn new(basis_names: Vec<String>, form: Vec<Vec<i64>>, curves: Vec<CurveEntry>, cone: ConeModel) -> Self {
        Self {
            basis_names,
            form,
            curves,
            cone,
            eff_rank: OnceLock::new(),
        }
    }

    /// Convenience constructor computing each curve's self-intersection.
    pub fn with_curves(
        basis_names: Vec<String>,
        form: Vec<Vec<i64>>,
        curves: Vec<(String, Vec<i64>)>,
        cone: ConeModel,
    ) -> Self {
        let mut model = Self::new(basis_names, form, Vec::new(), cone);
        model.curves = curves
            .into_iter()
            .map(|(name, class)| {
                let self_int = model.pair_int(&class, &class);
                CurveEntry { name, class, self_int }
            })
            .collect();
        model
    }

    pub fn rank(&self) -> usize {
        self.form.len()
    }

    pub fn curve(&self, name: &str) -> Option<&CurveEntry> {
        self.curves.iter().find(|c| c.name == name)
    }

    pub fn curve_index_of_class(&self, class: &[i64]) -> Option<usize> {
        self.curves.iter().position(|c| c.class == class)
    }

    fn check_dim(&self, len: usize) -> Result<(), SurfaceError> {
        if len == self.rank() {
            Ok(())
        } else {
            Err(SurfaceError::DimensionMismatch {
                expected: self.rank(),
                got: len,
            })
        }
    }

    /// `Q·w` for an integer vector `w`.
    pub fn form_times_int(&self, w: &[i64]) -> Vec<i64> {
        self.form
            .iter()
            .map(|row| row.iter().zip(w).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn pair_int(&self, v: &[i64], w: &[i64]) -> i64 {
        let qw = self.form_times_int(w);
        v.iter().zip(&qw).map(|(a, b)| a * b).sum()
    }

    /// `vᵀ Q w` for `v` over any ordered field and an integer `w`.
    pub fn pair_with_int<K: OrderedScalar>(&self, v: &[K], w: &[i64]) -> K {
        dot_int(v, &self.form_times_int(w))
    }

    /// `vᵀ Q v` over any ordered field.
    pub fn self_pair<K: OrderedScalar>(&self, v: &[K]) -> K {
        let n = self.rank();
        let mut acc = K::zero_value();
        for i in 0..n {
            for j in 0..n {
                let q = self.form[i][j];
                if q != 0 {
                    acc = acc + (v[i].clone() * v[j].clone()).scale(&int(q));
                }
            }
        }
        acc
    }

    /// `vᵀ Q w` over ℚ.
    pub fn pair(&self, v: &DivisorClass, w: &DivisorClass) -> Result<Rational, SurfaceError> {
        self.check_dim(v.dim())?;
        self.check_dim(w.dim())?;
        let n = self.rank();
        let mut acc = Rational::zero();
        for i in 0..n {
            if v.0[i].is_zero() {
                continue;
            }
            for j in 0..n {
                let q = self.form[i][j];
                if q != 0 && !w.0[j].is_zero() {
                    acc += &v.0[i] * &w.0[j] * int(q);
                }
            }
        }
        Ok(acc)
    }

    /// `vᵀ Q w` with a rational `w` and `v` over any ordered field.
    pub fn pair_with_rational<K: OrderedScalar>(&self, v: &[K], w: &[Rational]) -> K {
        let n = self.rank();
        let qw: Vec<Rational> = (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&j| self.form[i][j] != 0)
                    .map(|j| &w[j] * int(self.form[i][j]))
                    .sum()
            })
            .collect();
        dot_rat(v, &qw)
    }

    fn eff_rank(&self) -> usize {
        *self.eff_rank.get_or_init(|| match &self.cone {
            ConeModel::Polyhedral { eff_generators, .. } => linalg::rank(eff_generators),
            ConeModel::Quadratic { .. } => self.rank(),
        })
    }

    pub fn is_pseff_generic<K: OrderedScalar>(&self, v: &[K]) -> Result<bool, SurfaceError> {
        self.check_dim(v.len())?;
        Ok(match &self.cone {
            ConeModel::Polyhedral { eff_facets, .. } => eff_facets.iter().all(|f| dot_rat(v, f).signum() >= 0),
            ConeModel::Quadratic { ample } => {
                self.self_pair(v).signum() >= 0 && self.pair_with_rational(v, ample).signum() >= 0
            }
        })
    }

    pub fn is_nef_generic<K: OrderedScalar>(&self, v: &[K]) -> Result<bool, SurfaceError> {
        self.check_dim(v.len())?;
        match &self.cone {
            ConeModel::Polyhedral { nef_facets, .. } => Ok(nef_facets.iter().all(|f| dot_rat(v, f).signum() >= 0)),
            ConeModel::Quadratic { .. } => self.is_pseff_generic(v),
        }
    }

    pub fn is_big_generic<K: OrderedScalar>(&self, v: &[K]) -> Result<bool, SurfaceError> {
        self.check_dim(v.len())?;
        match &self.cone {
            ConeModel::Polyhedral { eff_facets, .. } => {
                let rank = self.eff_rank();
                if rank < self.rank() {
                    return Err(SurfaceError::DegenerateCone { rank, dim: self.rank() });
                }
                Ok(eff_facets.iter().all(|f| dot_rat(v, f).signum() > 0))
            }
            ConeModel::Quadratic { ample } => {
                Ok(self.self_pair(v).signum() > 0 && self.pair_with_rational(v, ample).signum() > 0)
            }
        }
    }

    pub fn is_pseff(&self, v: &DivisorClass) -> Result<bool, SurfaceError> {
        self.is_pseff_generic(&v.0)
    }

    pub fn is_nef(&self, v: &DivisorClass) -> Result<bool, SurfaceError> {
        self.is_nef_generic(&v.0)
    }

    pub fn is_big(&self, v: &DivisorClass) -> Result<bool, SurfaceError> {
        self.is_big_generic(&v.0)
    }

    pub fn form_rational(&self) -> Vec<Vec<Rational>> {
        self.form
            .iter()
            .map(|row| row.iter().map(|&x| int(x)).collect())
            .collect()
    }
}

/// Free function form of [`SurfaceModel::pair`].
pub fn pair(s: &SurfaceModel, v: &DivisorClass, w: &DivisorClass) -> Result<Rational, SurfaceError> {
    s.pair(v, w)
}

pub fn is_pseff(s: &SurfaceModel, v: &DivisorClass) -> Result<bool, SurfaceError> {
    s.is_pseff(v)
}

pub fn is_nef(s: &SurfaceModel, v: &DivisorClass) -> Result<bool, SurfaceError> {
    s.is_nef(v)
}

pub fn is_big(s: &SurfaceModel, v: &DivisorClass) -> Result<bool, SurfaceError> {
    s.is_big(v)
}

/// Checks every model invariant and returns the list of violations; an empty
/// list means the model is valid.
pub fn validate_surface(s: &SurfaceModel) -> Vec<String> {
    let mut out = Vec::new();
    let n = s.rank();
    if n == 0 {
        out.push("rank must be positive".to_string());
        return out;
    }
    if s.basis_names.len() != n {
        out.push(format!("basis has {} names for rank {n}", s.basis_names.len()));
    }
    if s.form.iter().any(|row| row.len() != n) {
        out.push("intersection matrix is not square".to_string());
        return out;
    }
    for i in 0..n {
        for j in 0..i {
            if s.form[i][j] != s.form[j][i] {
                out.push(format!("intersection matrix not symmetric at ({i},{j})"));
            }
        }
    }
    let (pos, neg, zero) = linalg::inertia(&s.form_rational());
    if (pos, neg, zero) != (1, n - 1, 0) {
        out.push(format!(
            "signature ({pos},{neg}) with {zero} null directions violates the Hodge index theorem, expected (1,{})",
            n - 1
        ));
    }
    let mut names = BTreeSet::new();
    for c in &s.curves {
        if !names.insert(c.name.as_str()) {
            out.push(format!("duplicate curve name {}", c.name));
        }
        if c.class.len() != n {
            out.push(format!("curve {} has class of length {}", c.name, c.class.len()));
            continue;
        }
        let sq = s.pair_int(&c.class, &c.class);
        if sq != c.self_int {
            out.push(format!(
                "curve {} records self-intersection {} but the form gives {sq}",
                c.name, c.self_int
            ));
        }
        let g = gcd_all(c.class.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>().iter());
        if g != BigInt::from(1) {
            out.push(format!("curve {} class is not primitive", c.name));
        }
    }
    match &s.cone {
        ConeModel::Quadratic { ample } => {
            if ample.len() != n {
                out.push(format!("ample witness has length {}", ample.len()));
            } else if !s.self_pair(ample).is_positive() {
                out.push("ample witness h must satisfy h·h > 0".to_string());
            }
        }
        ConeModel::Polyhedral {
            eff_generators,
            eff_facets,
            nef_facets,
        } => {
            let dims_ok = eff_generators
                .iter()
                .chain(eff_facets)
                .chain(nef_facets)
                .all(|v| v.len() == n);
            if !dims_ok {
                out.push("cone vectors must all have length equal to the rank".to_string());
                return out;
            }
            for (gi, g) in eff_generators.iter().enumerate() {
                for (fi, f) in eff_facets.iter().enumerate() {
                    if dot_rat(g, f).is_negative() {
                        out.push(format!("eff generator {gi} violates eff facet {fi}"));
                    }
                }
            }
            for (fi, f) in eff_facets.iter().enumerate() {
                let tight: Vec<Vec<Rational>> = eff_generators
                    .iter()
                    .filter(|g| dot_rat(g, f).is_zero())
                    .cloned()
                    .collect();
                let r = linalg::rank(&tight);
                if r + 1 < n {
                    out.push(format!("eff facet {fi} is tight on generators of rank {r} < {}", n - 1));
                }
                if f.iter().all(Zero::is_zero) {
                    out.push(format!("eff facet {fi} is the zero covector"));
                }
            }
            for c in &s.curves {
                let v: Vec<Rational> = c.class.iter().map(|&x| int(x)).collect();
                if !eff_facets.iter().all(|f| !dot_rat(&v, f).is_negative()) {
                    out.push(format!("catalog curve {} is not pseudo-effective", c.name));
                }
            }
        }
    }
    out
}
