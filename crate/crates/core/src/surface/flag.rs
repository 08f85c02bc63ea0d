use std::collections::BTreeMap;

use super::{DivisorClass, SurfaceModel};

/// An admissible flag `(C, x)`.
///
/// `x` is encoded only through `multiplicities`: for a catalog curve `E`,
/// `m_E` is the local intersection multiplicity of `E` and `C` at `x`, so that
/// `ord_x(N|_C) = Σ N[E]·m_E`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FlagData {
    pub curve: Vec<i64>,
    pub multiplicities: BTreeMap<String, u32>,
}

impl FlagData {
    pub fn new(curve: Vec<i64>) -> Self {
        Self {
            curve,
            multiplicities: BTreeMap::new(),
        }
    }

    pub fn with_point_on(mut self, curve_name: &str, m: u32) -> Self {
        self.multiplicities.insert(curve_name.to_string(), m);
        self
    }

    pub fn class(&self) -> DivisorClass {
        DivisorClass::from_ints(&self.curve)
    }

    pub fn self_int(&self, s: &SurfaceModel) -> i64 {
        s.pair_int(&self.curve, &self.curve)
    }

    pub fn multiplicity(&self, name: &str) -> u32 {
        self.multiplicities.get(name).copied().unwrap_or(0)
    }
}

/// Violations of the flag invariants against a model (empty = valid).
pub fn validate_flag(s: &SurfaceModel, flag: &FlagData) -> Vec<String> {
    let mut out = Vec::new();
    if flag.curve.len() != s.rank() {
        out.push(format!(
            "flag curve has length {} for rank {}",
            flag.curve.len(),
            s.rank()
        ));
        return out;
    }
    if flag.curve.iter().all(|&x| x == 0) {
        out.push("flag curve class is zero".to_string());
    }
    for (name, &m) in &flag.multiplicities {
        let Some(e) = s.curve(name) else {
            out.push(format!("multiplicity given for unknown curve {name}"));
            continue;
        };
        if m == 0 {
            continue;
        }
        if e.class == flag.curve {
            out.push(format!("flag curve {name} cannot carry a multiplicity at x"));
            continue;
        }
        let ec = s.pair_int(&e.class, &flag.curve);
        if i64::from(m) > ec {
            out.push(format!("multiplicity {m} of {name} at x exceeds {name}·C = {ec}"));
        }
    }
    out
}
