//! The built-in verification suite behind the `verify` command.
//!
//! Seven checks: the E×E slice values, the non-polyhedrality certificate,
//! the K3 boundary root, the three forward polygons, the converse
//! round trip on random polygons, Zariski decompositions against subset
//! enumeration, and a randomized property sweep.

pub mod oracle;
pub mod random;

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::exactnum::{int, rat, QuadNum, Rational};
use crate::geometry::{Point, Polygon};
use crate::okounkov::{mu, mu_quadratic_certificate, okounkov_polygon, validate_theorem_b, volume_checks};
use crate::slices::{
    assemble_slice_body, builtin, nonpolyhedrality_certificate, slice_f, slice_g, uniform_samples, Verdict,
};
use crate::surface::models::{blowup_p2_two_points, hirzebruch_f1, k3_quartic};
use crate::surface::{DivisorClass, FlagData, SurfaceModel};
use crate::toric::{
    okounkov_via_psi, realize_polygon, smooth_complete_fan, toric_forward_polygon, toric_surface_model, ToricSurface,
};
use crate::zariski::{segment_walk, zariski_decompose};

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u128,
}

impl Check {
    pub fn line(&self) -> String {
        format!(
            "[{}] {} {} ({} ms): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed_ms,
            self.detail
        )
    }
}

fn timed(id: u8, name: &'static str, budget: Option<Duration>, f: impl FnOnce() -> Result<(bool, String)>) -> Check {
    let start = Instant::now();
    let outcome = f();
    let elapsed = start.elapsed();
    let (mut passed, mut detail) = match outcome {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    if let Some(b) = budget {
        if elapsed > b {
            passed = false;
            detail = format!("{detail}; over the {} ms budget", b.as_millis());
        }
    }
    Check {
        id,
        name,
        passed,
        detail,
        elapsed_ms: elapsed.as_millis(),
    }
}

/// Runs every check with the given seed for the randomized ones.
pub fn run_all(seed: u64) -> Vec<Check> {
    vec![
        fano_exactness(),
        certificate(),
        k3_root(),
        forward_polygons(),
        converse_round_trip(seed, 30),
        zariski_oracle(seed, 60),
        properties(seed, 1000),
    ]
}

pub fn fano_exactness() -> Check {
    timed(1, "fano-exactness", Some(Duration::from_secs(1)), || {
        let b = builtin("fano").expect("built in");
        let mut bad = 0;
        for k in 0..=20 {
            let r = rat(k, 20);
            let rad = int(9) * &r * &r - int(15) * &r + int(7);
            let want = QuadNum::sqrt_rational(&rad)?
                .neg()
                .add_rational(&(int(4) - int(3) * &r));
            if slice_f(&b.model, &b.path, &b.c, &r)? != want {
                bad += 1;
            }
        }
        for i in 0..5 {
            for j in 0..5 {
                let (r, t) = (rat(i, 4), rat(j, 4));
                let want = int(24) - int(18) * &r - int(6) * &t;
                if slice_g(&b.model, &b.path, &b.c, &r, &t)? != want {
                    bad += 1;
                }
            }
        }
        Ok((bad == 0, format!("21 f-samples, 25 g-samples, {bad} mismatches")))
    })
}

pub fn certificate() -> Check {
    timed(2, "nonpolyhedrality-certificate", None, || {
        let samples = uniform_samples(&int(0), &int(1), 20);
        let fano = builtin("fano").expect("built in");
        let body = assemble_slice_body(&fano.model, &fano.path, &fano.c, &samples)?;
        let cert = nonpolyhedrality_certificate(&body)?;
        let witness = cert.witness.as_ref().map(|w| w.value.to_string());
        let fano_ok =
            cert.verdict == Verdict::NonPolyhedral && cert.witness.as_ref().is_some_and(|w| !w.value.is_zero());
        let ctl = builtin("toric-control").expect("built in");
        let body = assemble_slice_body(&ctl.model, &ctl.path, &ctl.c, &samples)?;
        let cert = nonpolyhedrality_certificate(&body)?;
        let ctl_ok = cert.verdict == Verdict::Inconclusive && cert.second_differences.iter().all(|d| d.value.is_zero());
        Ok((
            fano_ok && ctl_ok,
            format!(
                "fano witness {}; control {}",
                witness.unwrap_or_else(|| "none".into()),
                cert.verdict.as_str()
            ),
        ))
    })
}

pub fn k3_root() -> Check {
    timed(3, "k3-boundary-root", None, || {
        let s = k3_quartic();
        let d = DivisorClass::from_ints(&[1, 0, 0]);
        let c = DivisorClass::from_ints(&[2, 1, 1]);
        let (dc, dd, cc) = (s.pair(&d, &c)?, s.pair(&d, &d)?, s.pair(&c, &c)?);
        let formula = QuadNum::sqrt_rational(&(&dc * &dc - &dd * &cc))?
            .neg()
            .add_rational(&dc)
            .scale(&(Rational::from_integer(1.into()) / &cc));
        let expected = QuadNum::new(int(1), rat(-1, 2), 2.into())?;
        let m = mu(&s, &d, &c)?;
        let cert = mu_quadratic_certificate(&s, &d, &c)?;
        let annihilated = cert.eval(&m)?.is_zero();
        Ok((
            m == formula && m == expected && annihilated,
            format!("mu = {m}, formula = {formula}, certificate annihilates: {annihilated}"),
        ))
    })
}

fn poly(v: &[(i64, i64)]) -> Polygon {
    Polygon::hull(v.iter().map(|&(x, y)| Point::ints(x, y))).expect("integer points")
}

pub fn forward_polygons() -> Check {
    timed(4, "forward-polygons", Some(Duration::from_secs(1)), || {
        let f1 = hirzebruch_f1();
        let bl2 = blowup_p2_two_points();
        let cases: Vec<(&str, &SurfaceModel, DivisorClass, FlagData, Polygon, i64)> = vec![
            (
                "F1 point on E",
                &f1,
                DivisorClass::from_ints(&[2, 0]),
                FlagData::new(vec![1, -1]).with_point_on("E", 1),
                poly(&[(0, 0), (0, 2), (2, 2)]),
                4,
            ),
            (
                "F1 generic point",
                &f1,
                DivisorClass::from_ints(&[2, 0]),
                FlagData::new(vec![1, -1]),
                poly(&[(0, 0), (0, 2), (2, 0)]),
                4,
            ),
            (
                "Bl2 3H-2E1",
                &bl2,
                DivisorClass::from_ints(&[3, -2, 0]),
                FlagData::new(vec![1, -1, 0]),
                poly(&[(0, 0), (0, 1), (2, 1), (3, 0)]),
                5,
            ),
        ];
        let mut notes = Vec::new();
        let mut ok = true;
        for (name, s, d, flag, want, vol) in cases {
            let p = okounkov_polygon(s, &d, &flag)?;
            let shape = validate_theorem_b(p.vertices.vertices())?.passed;
            let v = volume_checks(s, &d, &p)?;
            let volume_ok = v.area2 == QuadNum::from_int(vol) && v.volume == QuadNum::from_int(vol);
            let rational = p.breakpoints.iter().all(QuadNum::is_rational);
            let this = p.vertices == want && shape && volume_ok && rational;
            if name.starts_with("Bl2") {
                ok &= p.breakpoints.contains(&QuadNum::from_int(2));
            }
            ok &= this;
            notes.push(format!("{name}: {}", if this { "ok" } else { "mismatch" }));
        }
        Ok((ok, notes.join(", ")))
    })
}

/// Realizes random shape-valid polygons and recomputes their bodies both
/// through the ψ map and through the toric surface model.
pub fn converse_round_trip(seed: u64, count: usize) -> Check {
    timed(5, "converse-round-trip", Some(Duration::from_secs(10)), || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut failures = Vec::new();
        for k in 0..count {
            let pts = random::theorem_b_polygon(&mut rng);
            let r = realize_polygon(&pts)?;
            let want = Polygon::hull(pts)?.translate(&r.shift)?;
            let (i1, i2) = r.flag;
            let psi = okounkov_via_psi(&r.fan, &r.a, i1, i2)?;
            let fwd = toric_forward_polygon(&r.fan, &r.a, i1, i2)?;
            if psi != want || fwd.vertices != want {
                failures.push(k);
            }
        }
        Ok((
            failures.is_empty(),
            format!("{count} polygons, failures at {failures:?}"),
        ))
    })
}

/// Polyhedral models with at most eight catalog curves.
pub fn polyhedral_fixtures() -> Vec<(String, SurfaceModel)> {
    let mut out = vec![
        ("F1".to_string(), hirzebruch_f1()),
        ("Bl2P2".to_string(), blowup_p2_two_points()),
    ];
    let fans: Vec<(&str, Vec<(i64, i64)>)> = vec![
        ("F2", vec![(1, 0), (0, 1), (-1, 2), (0, -1)]),
        ("dP6", vec![(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)]),
        (
            "toric-7",
            vec![(1, 0), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)],
        ),
    ];
    for (name, rays) in fans {
        let fan = ToricSurface::new(rays).expect("smooth complete fixture");
        let tm = toric_surface_model(&fan).expect("toric model");
        out.push((name.to_string(), tm.model));
    }
    if let Ok(fan) = smooth_complete_fan(&[(1, 0), (0, 1), (-2, -3), (3, -5)]) {
        let tm = toric_surface_model(&fan).expect("toric model");
        if tm.model.curves.len() <= 8 {
            out.push(("toric-completed".to_string(), tm.model));
        }
    }
    out
}

/// Flags built from catalog curves and from nef-cone rays.
fn fixture_flags(s: &SurfaceModel) -> Vec<FlagData> {
    let mut flags: Vec<FlagData> = s.curves.iter().map(|c| FlagData::new(c.class.clone())).collect();
    if let crate::surface::ConeModel::Polyhedral { eff_generators, .. } = &s.cone {
        for g in eff_generators {
            if g.iter().all(|x| x.is_integer()) {
                let v: Vec<i64> = g.iter().map(|x| i64::try_from(x.to_integer()).unwrap_or(0)).collect();
                if s.curve_index_of_class(&v).is_none() && s.pair_int(&v, &v) >= 0 {
                    flags.push(FlagData::new(v));
                }
            }
        }
    }
    flags
}

/// Walk facts: support coefficients never decrease, the flag curve never
/// enters the support, and consecutive pieces agree at their common end.
pub fn walk_is_monotone(s: &SurfaceModel, d: &DivisorClass, flag: &FlagData) -> Result<bool> {
    let w = segment_walk(s, d, flag)?;
    let c_name = s.curve_index_of_class(&flag.curve).map(|i| s.curves[i].name.clone());
    for p in &w.pieces {
        if p.b.values().any(|b| b < &int(0)) {
            return Ok(false);
        }
        if let Some(n) = &c_name {
            if p.a.contains_key(n) {
                return Ok(false);
            }
        }
    }
    for pair in w.pieces.windows(2) {
        let t = pair[1].t_lo.clone();
        if pair[0].negative_at(&t) != pair[1].negative_at(&t) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn zariski_oracle(seed: u64, per_fixture: usize) -> Check {
    timed(6, "zariski-oracle", None, || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5a);
        let mut total = 0;
        let mut agree = 0;
        let mut walks = 0;
        let mut monotone = 0;
        for (_, s) in polyhedral_fixtures() {
            let flags = fixture_flags(&s);
            for _ in 0..per_fixture {
                let Some(d) = random::big_divisor(&mut rng, &s, -6, 9) else {
                    continue;
                };
                total += 1;
                let oracle = oracle::zariski_by_subsets(&s, &d);
                if oracle.len() == 1 && zariski_decompose(&s, &d)? == oracle[0] {
                    agree += 1;
                }
                if !flags.is_empty() {
                    let flag = &flags[rng.gen_range(0..flags.len())];
                    walks += 1;
                    if walk_is_monotone(&s, &d, flag)? {
                        monotone += 1;
                    }
                }
            }
        }
        Ok((
            total >= 200 && agree == total && monotone == walks,
            format!("{agree}/{total} decompositions match, {monotone}/{walks} walks monotone"),
        ))
    })
}

pub fn properties(seed: u64, cases: usize) -> Check {
    timed(7, "property-sweep", None, || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xa5);
        let mut failed: Vec<&str> = Vec::new();

        let models = polyhedral_fixtures();
        let mut ok = true;
        for _ in 0..cases {
            let (_, s) = &models[rng.gen_range(0..models.len())];
            let v = |rng: &mut ChaCha8Rng| {
                DivisorClass((0..s.rank()).map(|_| random::small_rational(rng, -9, 9)).collect())
            };
            let (x, y, z) = (v(&mut rng), v(&mut rng), v(&mut rng));
            let (a, b) = (
                random::small_rational(&mut rng, -5, 5),
                random::small_rational(&mut rng, -5, 5),
            );
            let lhs = s.pair(&x.scale(&a).add(&y.scale(&b)), &z)?;
            let rhs = &a * s.pair(&x, &z)? + &b * s.pair(&y, &z)?;
            ok &= lhs == rhs && s.pair(&x, &y)? == s.pair(&y, &x)?;
        }
        if !ok {
            failed.push("bilinearity");
        }

        let mut ok = true;
        for _ in 0..cases {
            let d = [2, 3, 5, 6, 7][rng.gen_range(0..5)];
            let (x, y, z) = (
                random::quad(&mut rng, d),
                random::quad(&mut rng, d),
                random::quad(&mut rng, d),
            );
            let assoc = x.try_add(&y)?.try_add(&z)? == x.try_add(&y.try_add(&z)?)?
                && x.try_mul(&y)?.try_mul(&z)? == x.try_mul(&y.try_mul(&z)?)?;
            let comm = x.try_add(&y)? == y.try_add(&x)? && x.try_mul(&y)? == y.try_mul(&x)?;
            let dist = x.try_mul(&y.try_add(&z)?)? == x.try_mul(&y)?.try_add(&x.try_mul(&z)?)?;
            let inv = x.is_zero() || x.try_mul(&QuadNum::from_int(1).try_div(&x)?)? == QuadNum::from_int(1);
            let sub = x.try_sub(&x)?.is_zero();
            ok &= assoc && comm && dist && inv && sub;
        }
        if !ok {
            failed.push("field-axioms");
        }

        let mut ok = true;
        for _ in 0..cases.max(10_000) {
            let d = [2, 3, 5, 7, 11, 13][rng.gen_range(0..6)];
            let x = random::quad(&mut rng, d);
            ok &= x.signum() == oracle::sign_by_refinement(&x);
        }
        if !ok {
            failed.push("sign");
        }

        let mut ok = true;
        for _ in 0..cases {
            let mut rays = vec![(1, 0), (0, 1)];
            for _ in 0..rng.gen_range(1..=4) {
                let r: (i64, i64) = (rng.gen_range(-9..=9), rng.gen_range(-9..=9));
                if r != (0, 0) {
                    rays.push(r);
                }
            }
            match smooth_complete_fan(&rays) {
                Ok(fan) => {
                    let n = fan.len();
                    let dets = (0..n).all(|i| crate::toric::det(fan.rays()[i], fan.rays()[(i + 1) % n]) == 1);
                    let sum: i64 = fan.self_intersections().iter().sum();
                    ok &= dets && sum == 12 - 3 * n as i64;
                }
                Err(_) => ok = false,
            }
        }
        if !ok {
            failed.push("fan-identities");
        }

        let mut ok = true;
        let homog = [
            (hirzebruch_f1(), FlagData::new(vec![1, -1]).with_point_on("E", 1)),
            (blowup_p2_two_points(), FlagData::new(vec![1, -1, 0])),
            (
                blowup_p2_two_points(),
                FlagData::new(vec![1, 0, 0]).with_point_on("L12", 1),
            ),
        ];
        let mut done = 0;
        while done < cases {
            let (s, flag) = &homog[rng.gen_range(0..homog.len())];
            let Some(d) = random::big_divisor(&mut rng, s, -4, 6) else {
                continue;
            };
            done += 1;
            let lambda = int(rng.gen_range(2..=3));
            let p = okounkov_polygon(s, &d, flag)?.vertices;
            let q = okounkov_polygon(s, &d.scale(&lambda), flag)?.vertices;
            ok &= q == p.scale(&lambda)?;
        }
        if !ok {
            failed.push("homogeneity");
        }

        Ok((
            failed.is_empty(),
            if failed.is_empty() {
                format!("5 properties x {cases} cases (sign: {} cases)", cases.max(10_000))
            } else {
                format!("failed: {}", failed.join(", "))
            },
        ))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_checks_pass() {
        for c in [fano_exactness(), certificate(), k3_root(), forward_polygons()] {
            assert!(c.passed, "{}", c.line());
        }
    }

    #[test]
    fn small_random_runs_pass() {
        let c = converse_round_trip(7, 5);
        assert!(c.passed, "{}", c.line());
        let c = zariski_oracle(7, 10);
        assert!(c.detail.contains("walks monotone"), "{}", c.line());
        assert!(!c.detail.contains("error"), "{}", c.line());
    }
}
