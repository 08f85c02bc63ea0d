//! Acceptance suite. Runs without the libtest harness so that every
//! criterion prints one PASS/FAIL line; exits non-zero if any fails.

#![allow(clippy::needless_range_loop)]

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use okounkov_core::exactnum::{int, rat, QuadNum, Rational, SurdSum};
use okounkov_core::geometry::{Point, Polygon};
use okounkov_core::okounkov::{mu, mu_quadratic_certificate, okounkov_polygon, validate_theorem_b, volume_checks};
use okounkov_core::slices::{
    assemble_slice_body, builtin, nonpolyhedrality_certificate, slice_f, slice_g, uniform_samples, Verdict,
};
use okounkov_core::surface::models::{blowup_p2_two_points, hirzebruch_f1, k3_quartic};
use okounkov_core::surface::{ConeModel, DivisorClass, FlagData, SurfaceModel};
use okounkov_core::toric::{okounkov_via_psi, realize_polygon, smooth_complete_fan, toric_forward_polygon};
use okounkov_core::verify::polyhedral_fixtures;
use okounkov_core::zariski::{segment_walk, zariski_decompose};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn q(a: Rational, b: Rational, d: i64) -> QuadNum {
    QuadNum::new(a, b, d.into()).unwrap()
}

// ---------------------------------------------------------------- oracles

/// `v·w` straight from the Gram matrix.
fn dot(s: &SurfaceModel, v: &[Rational], w: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (i, vi) in v.iter().enumerate() {
        for (j, wj) in w.iter().enumerate() {
            acc += vi * wj * Rational::from_integer(s.form[i][j].into());
        }
    }
    acc
}

fn ratv(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

/// Gaussian elimination; `None` when singular.
fn gauss(mut m: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = m.len();
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero())?;
        m.swap(c, p);
        b.swap(c, p);
        let inv = Rational::one() / &m[c][c];
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = &m[r][c] * &inv;
                for k in 0..n {
                    let d = &f * &m[c][k];
                    m[r][k] -= d;
                }
                let d = &f * &b[c];
                b[r] -= d;
            }
        }
    }
    Some((0..n).map(|i| &b[i] / &m[i][i]).collect())
}

fn det(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut acc = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            m.swap(c, p);
            acc = -acc;
        }
        acc *= m[c][c].clone();
        for r in c + 1..n {
            let f = &m[r][c] / &m[c][c];
            for k in c..n {
                let d = &f * &m[c][k];
                m[r][k] -= d;
            }
        }
    }
    acc
}

/// Sylvester: `(−1)^k det_k > 0` for every leading minor.
fn negative_definite(m: &[Vec<Rational>]) -> bool {
    (1..=m.len()).all(|k| {
        let sub: Vec<Vec<Rational>> = m[..k].iter().map(|r| r[..k].to_vec()).collect();
        let d = det(sub);
        if k % 2 == 1 {
            d.is_negative()
        } else {
            d.is_positive()
        }
    })
}

fn nef_by_facets(s: &SurfaceModel, v: &[Rational]) -> bool {
    match &s.cone {
        ConeModel::Polyhedral { nef_facets, .. } => nef_facets
            .iter()
            .all(|f| !f.iter().zip(v).map(|(a, b)| a * b).sum::<Rational>().is_negative()),
        ConeModel::Quadratic { .. } => unreachable!("polyhedral fixtures only"),
    }
}

/// All subsets giving a valid decomposition: negative definite support,
/// positive coefficients, P orthogonal to the support and nef.
fn subset_oracle(s: &SurfaceModel, d: &[Rational]) -> Vec<(Vec<Rational>, BTreeMap<String, Rational>)> {
    let n = s.curves.len();
    let classes: Vec<Vec<Rational>> = s.curves.iter().map(|c| ratv(&c.class)).collect();
    let mut found = Vec::new();
    for mask in 0usize..(1 << n) {
        let idx: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let g: Vec<Vec<Rational>> = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| dot(s, &classes[i], &classes[j])).collect())
            .collect();
        if !negative_definite(&g) {
            continue;
        }
        let rhs: Vec<Rational> = idx.iter().map(|&i| dot(s, d, &classes[i])).collect();
        let Some(x) = gauss(g, rhs) else { continue };
        if x.iter().any(|v| !v.is_positive()) {
            continue;
        }
        let mut p = d.to_vec();
        let mut neg = BTreeMap::new();
        for (&i, xi) in idx.iter().zip(&x) {
            for (pk, ck) in p.iter_mut().zip(&classes[i]) {
                *pk -= xi * ck;
            }
            neg.insert(s.curves[i].name.clone(), xi.clone());
        }
        if nef_by_facets(s, &p) {
            found.push((p, neg));
        }
    }
    found
}

/// Sign of `a + b√d` by integer square-root brackets refined by powers of 10.
fn sign_oracle(x: &QuadNum) -> i8 {
    let l = x.a().denom().lcm(x.b().denom());
    let a = (x.a() * Rational::from_integer(l.clone())).to_integer();
    let b = (x.b() * Rational::from_integer(l)).to_integer();
    let s = |v: &BigInt| -> i8 {
        if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        }
    };
    if b.is_zero() {
        return s(&a);
    }
    let mut k = BigInt::one();
    loop {
        let (aa, bb) = (&a * &k, &b * &k);
        let r: BigInt = (&bb * &bb * x.d()).sqrt();
        let (lo, hi) = if bb.is_positive() {
            (r.clone(), &r + 1u32)
        } else {
            (-(&r + 1u32), -r)
        };
        if (&aa + &lo).is_positive() {
            return 1;
        }
        if (&aa + &hi).is_negative() {
            return -1;
        }
        k *= 10;
    }
}

fn area2(vs: &[Point]) -> QuadNum {
    let n = vs.len();
    let mut acc = QuadNum::zero();
    for i in 0..n {
        let (p, r) = (&vs[i], &vs[(i + 1) % n]);
        let term = p.x.try_mul(&r.y).unwrap().try_sub(&r.x.try_mul(&p.y).unwrap()).unwrap();
        acc = acc.try_add(&term).unwrap();
    }
    acc
}

fn poly(v: &[(i64, i64)]) -> Polygon {
    Polygon::hull(v.iter().map(|&(x, y)| Point::ints(x, y))).unwrap()
}

// ---------------------------------------------------------------- criteria

fn closed_form_f(r: &Rational) -> QuadNum {
    let rad = int(9) * r * r - int(15) * r + int(7);
    QuadNum::sqrt_rational(&rad)
        .unwrap()
        .neg()
        .add_rational(&(int(4) - int(3) * r))
}

fn criterion_1() -> Outcome {
    let b = builtin("fano").unwrap();
    for k in 0..=20 {
        let r = rat(k, 20);
        let got = slice_f(&b.model, &b.path, &b.c, &r).map_err(|e| e.to_string())?;
        ensure(got == closed_form_f(&r), || {
            format!("f({r}) = {got}, expected {}", closed_form_f(&r))
        })?;
        // independent: on the quadric, v(r) − f·C is isotropic (or f = 0 at the closure)
        let v: Vec<Rational> = b.path.at(&r).coeffs().to_vec();
        if !got.is_zero() {
            let c = b.c.coeffs();
            let (vv, vc, cc) = (dot(&b.model, &v, &v), dot(&b.model, &v, c), dot(&b.model, c, c));
            let qv = got
                .try_mul(&got)
                .unwrap()
                .scale(&cc)
                .try_sub(&got.scale(&(int(2) * vc)))
                .unwrap()
                .add_rational(&vv);
            ensure(qv.is_zero(), || format!("q(v − fC) = {qv} at r = {r}"))?;
        }
    }
    for i in 0..5 {
        for j in 0..5 {
            let (r, t) = (rat(i, 4), rat(j, 4));
            let got = slice_g(&b.model, &b.path, &b.c, &r, &t).map_err(|e| e.to_string())?;
            let want = int(24) - int(18) * &r - int(6) * &t;
            ensure(got == want, || format!("g({r}, {t}) = {got}, expected {want}"))?;
        }
    }
    Ok("21 f samples and 25 g samples exact".into())
}

fn criterion_2() -> Outcome {
    let samples = uniform_samples(&int(0), &int(1), 20);
    let b = builtin("fano").unwrap();
    let body = assemble_slice_body(&b.model, &b.path, &b.c, &samples).map_err(|e| e.to_string())?;
    let cert = nonpolyhedrality_certificate(&body).map_err(|e| e.to_string())?;
    ensure(cert.verdict == Verdict::NonPolyhedral, || {
        "fano verdict is not NON-POLYHEDRAL".into()
    })?;
    let w = cert.witness.clone().ok_or("no witness")?;
    ensure(!w.value.is_zero(), || "zero witness".into())?;
    let [r0, r1, r2] = [&w.window[0], &w.window[1], &w.window[2]];
    let own = closed_form_f(r0)
        .to_surd_sum()
        .add(&closed_form_f(r2).to_surd_sum())
        .sub(&closed_form_f(r1).to_surd_sum().scale(&int(2)));
    ensure(own == w.value, || {
        format!("witness {} disagrees with the closed form {own}", w.value)
    })?;
    ensure(own.signum() < 0, || {
        "closed-form second difference is not negative".into()
    })?;

    let t = builtin("toric-control").unwrap();
    let body = assemble_slice_body(&t.model, &t.path, &t.c, &samples).map_err(|e| e.to_string())?;
    let cert = nonpolyhedrality_certificate(&body).map_err(|e| e.to_string())?;
    ensure(cert.verdict == Verdict::Inconclusive, || {
        "control is not INCONCLUSIVE".into()
    })?;
    ensure(
        cert.second_differences.iter().all(|d| d.value == SurdSum::zero()),
        || "control has a non-zero second difference".into(),
    )?;
    Ok(format!(
        "fano witness on [{r0}, {r2}] = {}; control INCONCLUSIVE with {} zero differences",
        w.value,
        cert.second_differences.len()
    ))
}

fn criterion_3() -> Outcome {
    let s = k3_quartic();
    let d = DivisorClass::from_ints(&[1, 0, 0]);
    let c = DivisorClass::from_ints(&[2, 1, 1]);
    let (dc, dd, cc) = (
        dot(&s, d.coeffs(), c.coeffs()),
        dot(&s, d.coeffs(), d.coeffs()),
        dot(&s, c.coeffs(), c.coeffs()),
    );
    let root = QuadNum::sqrt_rational(&(&dc * &dc - &dd * &cc))
        .unwrap()
        .neg()
        .add_rational(&dc)
        .scale(&(Rational::one() / &cc));
    let expected = q(int(1), rat(-1, 2), 2);
    ensure(root == expected, || format!("formula gives {root}"))?;
    let m = mu(&s, &d, &c).map_err(|e| e.to_string())?;
    ensure(m == expected, || format!("mu = {m}"))?;
    let cert = mu_quadratic_certificate(&s, &d, &c).map_err(|e| e.to_string())?;
    let val = cert.eval(&m).map_err(|e| e.to_string())?;
    ensure(val.is_zero(), || format!("certificate leaves {val}"))?;
    Ok(format!(
        "mu = {m}, annihilated by {}t² + ({})t + ({})",
        cert.a, cert.b, cert.c
    ))
}

fn criterion_4() -> Outcome {
    let f1 = hirzebruch_f1();
    let bl2 = blowup_p2_two_points();
    let cases = [
        (
            &f1,
            vec![2, 0],
            FlagData::new(vec![1, -1]).with_point_on("E", 1),
            poly(&[(0, 0), (0, 2), (2, 2)]),
            4,
        ),
        (
            &f1,
            vec![2, 0],
            FlagData::new(vec![1, -1]),
            poly(&[(0, 0), (0, 2), (2, 0)]),
            4,
        ),
        (
            &bl2,
            vec![3, -2, 0],
            FlagData::new(vec![1, -1, 0]),
            poly(&[(0, 0), (0, 1), (2, 1), (3, 0)]),
            5,
        ),
    ];
    for (k, (s, d, flag, want, vol)) in cases.into_iter().enumerate() {
        let d = DivisorClass::from_ints(&d);
        let p = okounkov_polygon(s, &d, &flag).map_err(|e| e.to_string())?;
        ensure(p.vertices == want, || {
            format!("case {k}: got {:?}", p.vertices.vertices())
        })?;
        let report = validate_theorem_b(p.vertices.vertices()).map_err(|e| e.to_string())?;
        ensure(report.passed, || format!("case {k}: {:?}", report.violations))?;
        let a2 = area2(p.vertices.vertices());
        ensure(a2 == QuadNum::from_int(vol), || format!("case {k}: 2·area = {a2}"))?;
        // D is nef in all three cases, so P(D)² = D²
        ensure(dot(s, d.coeffs(), d.coeffs()) == int(vol), || {
            format!("case {k}: D² ≠ {vol}")
        })?;
        let v = volume_checks(s, &d, &p).map_err(|e| e.to_string())?;
        ensure(v.volume == QuadNum::from_int(vol), || {
            format!("case {k}: volume {}", v.volume)
        })?;
        ensure(p.breakpoints.iter().all(QuadNum::is_rational), || {
            format!("case {k}: irrational breakpoint")
        })?;
        if k == 2 {
            ensure(p.breakpoints.contains(&QuadNum::from_int(2)), || {
                "no breakpoint at t = 2".into()
            })?;
        }
    }
    Ok("triangles and quadrilateral exact, 2·area = 4, 4, 5".into())
}

/// A random counterclockwise polygon `{t₀ ≤ t ≤ t₁, α ≤ y ≤ β}`.
fn random_shape(rng: &mut ChaCha8Rng) -> Vec<Point> {
    let r = |rng: &mut ChaCha8Rng, lo: i64, hi: i64| {
        Rational::new(rng.gen_range(lo..=hi).into(), rng.gen_range(1..=7i64).into())
    };
    // α: breakpoints at cumulative positive lengths, sorted non-negative slopes
    let na = rng.gen_range(1..=6);
    let mut ts = vec![int(0)];
    for _ in 0..na {
        let next = ts.last().unwrap() + r(rng, 1, 7);
        ts.push(next);
    }
    let width = ts.last().unwrap().clone();
    let mut sa: Vec<Rational> = (0..na).map(|_| r(rng, 0, 7)).collect();
    sa.sort();
    let mut lower = vec![(int(0), int(0))];
    for (i, s) in sa.iter().enumerate() {
        let (_, y) = lower.last().unwrap().clone();
        lower.push((ts[i + 1].clone(), y + (&ts[i + 1] - &ts[i]) * s));
    }
    // β: breakpoints at random fractions of the width, decreasing slopes
    let nb = rng.gen_range(1..=6);
    let mut us: Vec<Rational> = (1..nb)
        .map(|_| &width * Rational::new(rng.gen_range(1..7).into(), 7.into()))
        .collect();
    us.push(int(0));
    us.push(width.clone());
    us.sort();
    us.dedup();
    let mut sb: Vec<Rational> = (1..us.len()).map(|_| r(rng, -7, 7)).collect();
    sb.sort();
    sb.reverse();
    let mut upper = vec![(int(0), int(0))];
    for (i, s) in sb.iter().enumerate() {
        let (_, y) = upper.last().unwrap().clone();
        upper.push((us[i + 1].clone(), y + (&us[i + 1] - &us[i]) * s));
    }
    let end_gap = &lower.last().unwrap().1 - &upper.last().unwrap().1;
    let lift = std::cmp::max(end_gap, int(0)) + r(rng, 1, 7);
    let (ox, oy) = (r(rng, -20, 20), r(rng, -20, 20));
    let mut pts: Vec<Point> = lower
        .into_iter()
        .map(|(t, y)| Point::rational(t + &ox, y + &oy))
        .collect();
    pts.extend(
        upper
            .into_iter()
            .rev()
            .map(|(t, y)| Point::rational(t + &ox, y + &lift + &oy)),
    );
    pts
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xb0d1e5);
    let n = 30;
    for k in 0..n {
        let pts = random_shape(&mut rng);
        let r = realize_polygon(&pts).map_err(|e| format!("polygon {k}: {e}"))?;
        let input = Polygon::hull(pts.clone()).unwrap();
        // documented translation: minus the lexicographically smallest vertex
        let origin = pts.iter().min().unwrap();
        let shift = Point::new(origin.x.neg(), origin.y.neg());
        ensure(r.shift == shift, || format!("polygon {k}: shift {:?}", r.shift))?;
        let want = input.translate(&shift).unwrap();
        let (i1, i2) = r.flag;
        let psi = okounkov_via_psi(&r.fan, &r.a, i1, i2).map_err(|e| format!("polygon {k}: {e}"))?;
        ensure(psi == want, || format!("polygon {k}: psi image differs"))?;
        let fwd = toric_forward_polygon(&r.fan, &r.a, i1, i2).map_err(|e| format!("polygon {k}: {e}"))?;
        ensure(fwd.vertices == want, || {
            format!("polygon {k}: forward pipeline differs")
        })?;
    }
    Ok(format!("{n} random polygons reproduced by both pipelines"))
}

fn fixture_flags(s: &SurfaceModel) -> Vec<FlagData> {
    let mut out: Vec<FlagData> = s.curves.iter().map(|c| FlagData::new(c.class.clone())).collect();
    if let ConeModel::Polyhedral { eff_generators, .. } = &s.cone {
        for g in eff_generators {
            let v: Vec<i64> = g.iter().map(|x| i64::try_from(x.to_integer()).unwrap()).collect();
            if s.curves.iter().all(|c| c.class != v) {
                out.push(FlagData::new(v));
            }
        }
    }
    out
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x2a215c1);
    let mut divisors = 0;
    let mut walks = 0;
    for (name, s) in polyhedral_fixtures() {
        ensure(s.curves.len() <= 8, || format!("{name} has too many curves"))?;
        let flags = fixture_flags(&s);
        let mut here = 0;
        while here < 45 {
            let v: Vec<i64> = (0..s.rank()).map(|_| rng.gen_range(-5..=8)).collect();
            let d = DivisorClass::from_ints(&v);
            if !s.is_big(&d).unwrap() {
                continue;
            }
            here += 1;
            let oracle = subset_oracle(&s, d.coeffs());
            ensure(oracle.len() == 1, || {
                format!("{name} {v:?}: {} valid subsets", oracle.len())
            })?;
            let z = zariski_decompose(&s, &d).map_err(|e| format!("{name} {v:?}: {e}"))?;
            ensure(
                z.positive.coeffs() == oracle[0].0.as_slice() && z.negative == oracle[0].1,
                || format!("{name} {v:?}: decomposition differs from the oracle"),
            )?;

            let flag = &flags[rng.gen_range(0..flags.len())];
            let walk = segment_walk(&s, &d, flag).map_err(|e| format!("{name} {v:?} walk: {e}"))?;
            let c = DivisorClass::from_ints(&flag.curve);
            let c_name = s.curves.iter().find(|e| e.class == flag.curve).map(|e| e.name.clone());
            // sample [ν, μ) at piece ends and midpoints
            let mut ts = Vec::new();
            for p in &walk.pieces {
                ts.push(p.t_lo.clone());
                if let Some(hi) = p.t_hi.as_rational() {
                    ts.push((&p.t_lo + hi) / int(2));
                } else {
                    let approx = Rational::new(
                        BigInt::from((p.t_hi.to_f64() * 1e6).floor() as i64),
                        BigInt::from(1_000_000),
                    );
                    if approx > p.t_lo {
                        ts.push((&p.t_lo + approx) / int(2));
                    }
                }
            }
            let mut prev: Option<BTreeMap<String, Rational>> = None;
            for t in ts {
                let dt = d.minus_multiple(&t, &c);
                let nt = zariski_decompose(&s, &dt)
                    .map_err(|e| format!("{name} {v:?} at t = {t}: {e}"))?
                    .negative;
                ensure(Some(&nt) == walk.negative_at(&t).as_ref(), || {
                    format!("{name} {v:?}: walk differs at t = {t}")
                })?;
                if let Some(cn) = &c_name {
                    ensure(!nt.contains_key(cn), || {
                        format!("{name} {v:?}: flag curve in support at t = {t}")
                    })?;
                }
                if let Some(p) = &prev {
                    for (e, x) in p {
                        let y = nt.get(e).cloned().unwrap_or_else(Rational::zero);
                        ensure(&y >= x, || format!("{name} {v:?}: N[{e}] decreases at t = {t}"))?;
                    }
                }
                prev = Some(nt);
            }
            walks += 1;
        }
        divisors += here;
    }
    ensure(divisors >= 200, || format!("only {divisors} divisors"))?;
    Ok(format!(
        "{divisors}/{divisors} decompositions match the subset oracle, {walks} walks monotone"
    ))
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7e57);
    let n = 1000;
    let r = |rng: &mut ChaCha8Rng, m: i64| Rational::new(rng.gen_range(-m..=m).into(), rng.gen_range(1..=9i64).into());

    let models = polyhedral_fixtures();
    for _ in 0..n {
        let (_, s) = &models[rng.gen_range(0..models.len())];
        let mut v = || DivisorClass((0..s.rank()).map(|_| r(&mut rng, 12)).collect());
        let (x, y, z) = (v(), v(), v());
        let (a, b) = (r(&mut rng, 6), r(&mut rng, 6));
        let lhs = s.pair(&x.scale(&a).add(&y.scale(&b)), &z).unwrap();
        ensure(
            lhs == &a * s.pair(&x, &z).unwrap() + &b * s.pair(&y, &z).unwrap(),
            || "bilinearity".into(),
        )?;
        ensure(s.pair(&x, &y).unwrap() == s.pair(&y, &x).unwrap(), || "symmetry".into())?;
        ensure(s.pair(&x, &y).unwrap() == dot(s, x.coeffs(), y.coeffs()), || {
            "pairing".into()
        })?;
    }

    for _ in 0..n {
        let d = [2, 3, 5, 7, 10][rng.gen_range(0..5)];
        let mut g = || q(r(&mut rng, 40), r(&mut rng, 40), d);
        let (x, y, z) = (g(), g(), g());
        let one = QuadNum::from_int(1);
        ensure(x.try_add(&y).unwrap() == y.try_add(&x).unwrap(), || {
            "additive commutativity".into()
        })?;
        ensure(x.try_mul(&y).unwrap() == y.try_mul(&x).unwrap(), || {
            "multiplicative commutativity".into()
        })?;
        ensure(
            x.try_add(&y).unwrap().try_add(&z).unwrap() == x.try_add(&y.try_add(&z).unwrap()).unwrap(),
            || "additive associativity".into(),
        )?;
        ensure(
            x.try_mul(&y).unwrap().try_mul(&z).unwrap() == x.try_mul(&y.try_mul(&z).unwrap()).unwrap(),
            || "multiplicative associativity".into(),
        )?;
        ensure(
            x.try_mul(&y.try_add(&z).unwrap()).unwrap()
                == x.try_mul(&y).unwrap().try_add(&x.try_mul(&z).unwrap()).unwrap(),
            || "distributivity".into(),
        )?;
        if !x.is_zero() {
            ensure(x.try_mul(&one.try_div(&x).unwrap()).unwrap() == one, || {
                "inverse".into()
            })?;
        }
        ensure(x.try_add(&x.neg()).unwrap().is_zero(), || "negation".into())?;
    }

    for _ in 0..10 * n {
        let d = [2, 3, 5, 6, 7, 11, 13, 101][rng.gen_range(0..8)];
        let x = q(r(&mut rng, 500), r(&mut rng, 50), d);
        ensure(x.signum() == sign_oracle(&x), || format!("sign of {x}"))?;
    }
    // near-cancellations: convergents of √2
    let (mut p, mut qq) = (BigInt::from(1), BigInt::from(1));
    for _ in 0..40 {
        let x = q(Rational::new(-p.clone(), qq.clone()), int(1), 2);
        ensure(x.signum() == sign_oracle(&x), || format!("sign of {x}"))?;
        let np = &p + 2 * &qq;
        qq = &p + &qq;
        p = np;
    }

    for _ in 0..n {
        let mut rays = vec![(1, 0), (0, 1)];
        for _ in 0..rng.gen_range(1..=5) {
            let v: (i64, i64) = (rng.gen_range(-12..=12), rng.gen_range(-12..=12));
            if v != (0, 0) {
                rays.push(v);
            }
        }
        let fan = match smooth_complete_fan(&rays) {
            Ok(f) => f,
            Err(e) => return Err(format!("fan {rays:?}: {e}")),
        };
        let vs = fan.rays();
        let m = vs.len();
        let mut total = 0;
        for i in 0..m {
            let (p, c, nx) = (vs[(i + m - 1) % m], vs[i], vs[(i + 1) % m]);
            ensure(c.0 * nx.1 - c.1 * nx.0 == 1, || format!("fan {rays:?}: det ≠ 1"))?;
            // v_{i−1} + v_{i+1} = −D_i²·v_i
            let (sx, sy) = (p.0 + nx.0, p.1 + nx.1);
            let k = if c.0 != 0 { -sx / c.0 } else { -sy / c.1 };
            ensure((sx, sy) == (-k * c.0, -k * c.1), || {
                format!("fan {rays:?}: relation fails")
            })?;
            ensure(fan.self_intersection(i) == k, || format!("fan {rays:?}: D_{i}²"))?;
            total += k;
        }
        ensure(total == 12 - 3 * m as i64, || format!("fan {rays:?}: ΣD² = {total}"))?;
    }

    let homog = [
        (hirzebruch_f1(), FlagData::new(vec![1, -1]).with_point_on("E", 1)),
        (hirzebruch_f1(), FlagData::new(vec![1, 0])),
        (blowup_p2_two_points(), FlagData::new(vec![1, -1, 0])),
        (blowup_p2_two_points(), FlagData::new(vec![0, 1, 0])),
    ];
    let mut done = 0;
    while done < n {
        let (s, flag) = &homog[rng.gen_range(0..homog.len())];
        let v: Vec<i64> = (0..s.rank()).map(|_| rng.gen_range(-4..=7)).collect();
        let d = DivisorClass::from_ints(&v);
        if !s.is_big(&d).unwrap() {
            continue;
        }
        done += 1;
        let lambda = int(rng.gen_range(2..=3));
        let p = okounkov_polygon(s, &d, flag)
            .map_err(|e| format!("{v:?}: {e}"))?
            .vertices;
        let pl = okounkov_polygon(s, &d.scale(&lambda), flag)
            .map_err(|e| format!("{v:?}: {e}"))?
            .vertices;
        ensure(pl == p.scale(&lambda).unwrap(), || {
            format!("homogeneity fails for {v:?}")
        })?;
    }
    Ok(format!(
        "bilinearity, field axioms, fan identities, homogeneity x {n}; sign x {}",
        10 * n + 40
    ))
}

type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

fn main() {
    let criteria: [Criterion; 7] = [
        ("fano slice values", criterion_1, Some(Duration::from_secs(1))),
        ("non-polyhedrality certificate", criterion_2, None),
        ("K3 boundary root", criterion_3, None),
        ("forward polygons", criterion_4, Some(Duration::from_secs(1))),
        ("converse round trip", criterion_5, Some(Duration::from_secs(10))),
        ("Zariski oracle and walk monotonicity", criterion_6, None),
        ("property suite", criterion_7, None),
    ];
    let mut failures = 0;
    for (k, (name, run, budget)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match (outcome, budget) {
            (Ok(_), Some(b)) if elapsed > b => Err(format!("took {elapsed:?}, budget {b:?}")),
            (o, _) => o,
        };
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d.as_str()),
            Err(d) => ("FAIL", d.as_str()),
        };
        if outcome.is_err() {
            failures += 1;
        }
        println!("criterion {} [{tag}] {name} ({:.0?}): {detail}", k + 1, elapsed);
    }
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
    println!("all 7 criteria passed");
}
