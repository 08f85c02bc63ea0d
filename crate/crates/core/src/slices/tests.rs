use super::*;
use crate::exactnum::{rat, SurdSum};
use crate::surface::models::hirzebruch_f1;

fn fano() -> BuiltinSlice {
    builtin("fano").unwrap()
}

fn q(a: Rational, b: Rational, d: i64) -> QuadNum {
    QuadNum::new(a, b, d.into()).unwrap()
}

#[test]
fn fano_values() {
    let b = fano();
    let f = |r: Rational| slice_f(&b.model, &b.path, &b.c, &r).unwrap();
    assert_eq!(f(int(0)), q(int(4), int(-1), 7));
    assert_eq!(f(int(1)), QuadNum::zero());
    assert_eq!(f(rat(1, 3)), q(int(3), int(-1), 3));
    let g = |r: Rational, t: Rational| slice_g(&b.model, &b.path, &b.c, &r, &t).unwrap();
    assert_eq!(g(int(0), int(0)), int(24));
    assert_eq!(g(int(1), int(1)), int(0));
    assert_eq!(g(rat(1, 2), rat(1, 2)), int(12));
}

#[test]
fn fano_body_and_certificate() {
    let b = fano();
    let samples: Vec<Rational> = uniform_samples(&int(0), &int(1), 4);
    let body = assemble_slice_body(&b.model, &b.path, &b.c, &samples).unwrap();
    let cf = body.closed_form.clone().expect("closed form reproduces the samples");
    assert_eq!(cf.a, int(6));
    assert_eq!(cf.b, vec![int(24), int(-18)]);
    assert_eq!(cf.rad, vec![int(36 * 7), int(-36 * 15), int(36 * 9)]);
    assert_eq!(body.boundary_samples, vec![int(1)]);
    let cert = nonpolyhedrality_certificate(&body).unwrap();
    assert_eq!(cert.verdict, Verdict::NonPolyhedral);
    assert!(cert.second_differences.iter().all(|d| d.sign <= 0));

    let three = assemble_slice_body(&b.model, &b.path, &b.c, &[int(0), rat(1, 2), int(1)]).unwrap();
    let cert = nonpolyhedrality_certificate(&three).unwrap();
    let w = cert.witness.unwrap();
    assert_eq!(w.value, SurdSum::from_rational(int(-1)));
}

#[test]
fn control_and_prism_are_inconclusive() {
    let t = builtin("toric-control").unwrap();
    let samples = uniform_samples(&int(0), &int(1), 4);
    let body = assemble_slice_body(&t.model, &t.path, &t.c, &samples).unwrap();
    assert_eq!(body.f_samples[0].value, QuadNum::from_int(2));
    let cert = nonpolyhedrality_certificate(&body).unwrap();
    assert_eq!(cert.verdict, Verdict::Inconclusive);
    assert!(cert.second_differences.iter().all(|d| d.sign == 0));

    let b = fano();
    let prism = DivisorPath::new(b.path.v0.clone(), DivisorClass::zero(3), int(0), int(1));
    let body = assemble_slice_body(&b.model, &prism, &b.c, &samples).unwrap();
    assert!(body.f_samples.iter().all(|s| s.value == body.f_samples[0].value));
    assert_eq!(
        nonpolyhedrality_certificate(&body).unwrap().verdict,
        Verdict::Inconclusive
    );
}

#[test]
fn too_few_samples() {
    let b = fano();
    let body = assemble_slice_body(&b.model, &b.path, &b.c, &[int(0), int(1)]).unwrap();
    assert_eq!(
        nonpolyhedrality_certificate(&body),
        Err(Error::InsufficientSamples { needed: 3, got: 2 })
    );
}

#[test]
fn cutkosky_radicands_vary() {
    let b = builtin("cutkosky").unwrap();
    let samples = uniform_samples(&int(0), &int(1), 4);
    let body = assemble_slice_body(&b.model, &b.path, &b.c, &samples).unwrap();
    assert!(body.closed_form.is_some());
    let radicands: std::collections::BTreeSet<_> = body
        .f_samples
        .iter()
        .filter(|s| !s.value.is_rational())
        .map(|s| s.value.d().clone())
        .collect();
    assert!(radicands.len() >= 2, "{radicands:?}");
    assert_eq!(body.f_samples[0].value, QuadNum::from_int(1));
}

#[test]
fn hypothesis_is_enforced() {
    let s = hirzebruch_f1();
    let path = DivisorPath::new(DivisorClass::from_ints(&[2, 0]), DivisorClass::zero(2), int(0), int(1));
    assert!(matches!(
        slice_f(&s, &path, &DivisorClass::from_ints(&[1, -1]), &int(0)),
        Err(Error::HypothesisViolated(_))
    ));
}

#[test]
fn sequential_matches_parallel() {
    let b = fano();
    let samples = uniform_samples(&int(0), &int(1), 20);
    let seq = assemble_slice_body_with(&b.model, &b.path, &b.c, &samples, Execution::Sequential).unwrap();
    let par = assemble_slice_body_with(&b.model, &b.path, &b.c, &samples, Execution::Parallel).unwrap();
    assert_eq!(seq, par);
}
