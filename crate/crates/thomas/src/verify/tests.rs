use super::*;
use num_traits::Zero;
use crate::decompose::{decompose, AlgebraicEngine};
use crate::algsys::System;

type P = Poly<Variable>;

fn v(i: u32) -> P {
    P::var(Variable(i))
}

fn c(n: i64) -> P {
    P::from_int(n)
}

fn simple(rels: Vec<Relation<Variable>>) -> SimpleSystem<Variable> {
    SimpleSystem { relations: rels }
}

fn cfg() -> SampleConfig {
    SampleConfig::default()
}

fn vars(n: u32) -> Vec<Variable> {
    (0..n).map(Variable).collect()
}

fn re_parts(points: &[Point], x: u32) -> Vec<f64> {
    let mut r: Vec<f64> = points.iter().map(|p| p[&Variable(x)].to_f64().0).collect();
    r.sort_by(f64::total_cmp);
    r
}

#[test]
fn roots_of_unity_cubed() {
    let prec = 128;
    let one = Complex::from_f64(1.0, 0.0, prec);
    let a = vec![one.clone(), one.clone(), one.clone()];
    let roots = complex_roots(&a, prec).unwrap();
    assert_eq!(roots.len(), 2);
    for z in &roots {
        let cube = z.mul(z).mul(z).sub(&one);
        assert!(cube.norm_sqr().to_f64().value() < 1e-70);
        assert!((z.to_f64().0 + 0.5).abs() < 1e-15);
    }
}

#[test]
fn sample_examples() {
    let s = simple(vec![Relation::eq(v(0).pow(2) - c(1))]);
    let pts = sample_solutions(&s, &vars(1), 0, &cfg()).unwrap();
    assert_eq!(re_parts(&pts, 0), vec![-1.0, 1.0]);

    let s = simple(vec![Relation::eq(v(0).pow(2) + v(0)), Relation::eq(v(1))]);
    let pts = sample_solutions(&s, &vars(2), 0, &cfg()).unwrap();
    assert_eq!(re_parts(&pts, 0), vec![-1.0, 0.0]);
    assert!(pts.iter().all(|p| p[&Variable(1)].norm_f64() < 1e-30));

    let s = simple(vec![Relation::ne(v(0).pow(2) - v(0) + c(1)), Relation::eq(v(1).pow(2) + v(1) + c(1))]);
    let pts = sample_solutions(&s, &vars(2), 0, &cfg()).unwrap();
    assert_eq!(pts.len(), 2 * cfg().samples);
    for p in &pts {
        let (re, im) = p[&Variable(1)].to_f64();
        assert!((re + 0.5).abs() < 1e-12 && (im.abs() - 3f64.sqrt() / 2.0).abs() < 1e-12);
    }
}

#[test]
fn curve_decomposition_is_disjoint() {
    let f = v(1).pow(2) - v(0).pow(3) - v(0).pow(2);
    let out = decompose(&AlgebraicEngine::default(), System::from_relations([Relation::eq(f.clone())])).unwrap();
    let report = check_decomposition(&[Relation::eq(f)], &out.systems, &vars(2), &cfg()).unwrap();
    assert!(report.ok(), "{:?}", report.violations);
    let origin: Point = [(Variable(0), Complex::zero(128)), (Variable(1), Complex::zero(128))].into();
    let node = out.systems.iter().find(|s| s.relations.iter().any(|r| !r.is_equation())).unwrap();
    assert!(!contains(node, &origin, &cfg()));
}

#[test]
fn duplicate_system_is_reported() {
    let s = simple(vec![Relation::eq(v(0).pow(2) - c(1))]);
    let report = check_disjoint(&[s.clone(), s.clone()], &vars(1), &cfg()).unwrap();
    assert!(!report.ok());
    assert_eq!(report.precision, 256);
    assert!(check_disjoint(&[s], &vars(1), &cfg()).unwrap().ok());
}

#[test]
fn counting_examples() {
    let s = simple(vec![Relation::eq(v(0).pow(2) - c(1)), Relation::eq(v(1).pow(2) - c(4))]);
    assert_eq!(count_zero_dim(&s, &vars(2)), Count::Finite(4));
    let s = simple(vec![Relation::eq(v(0).pow(2) - v(0) + c(1)), Relation::eq(v(1) - v(0) + c(1))]);
    assert_eq!(count_zero_dim(&s, &vars(2)), Count::Finite(2));
    assert_eq!(sample_solutions(&s, &vars(2), 0, &cfg()).unwrap().len(), 2);
    let s = simple(vec![Relation::ne(v(0).pow(2) - v(0) + c(1)), Relation::eq(v(1).pow(2) + v(1) + c(1))]);
    assert_eq!(count_zero_dim(&s, &vars(2)), Count::Infinite);
}

#[test]
fn brute_count_examples() {
    let rels = [Relation::eq(v(0).pow(2) - c(1)), Relation::eq(v(1).pow(2) - c(4))];
    assert_eq!(brute_count(&rels, &vars(2), &cfg()).unwrap().0, Count::Finite(4));
    let rels = [Relation::eq(v(1).pow(2) + v(1) + c(1)), Relation::ne(v(1) + v(0))];
    assert_eq!(brute_count(&rels, &vars(2), &cfg()).unwrap().0, Count::Infinite);
    let rels = [
        Relation::eq(v(1).pow(2) + v(1) + c(1)),
        Relation::eq(v(0).pow(2) - v(0) + c(1)),
        Relation::ne(v(1) + v(0)),
    ];
    assert_eq!(brute_count(&rels, &vars(2), &cfg()).unwrap().0, Count::Finite(2));
    let rels = [Relation::eq(v(0)), Relation::eq(v(0) + c(1))];
    assert_eq!(brute_count(&rels, &vars(1), &cfg()).unwrap().0, Count::Finite(0));
}

#[test]
fn config_validation() {
    assert!(cfg().validate().is_ok());
    assert!(SampleConfig { tolerance: 1e-40, ..cfg() }.validate().is_err());
}

#[test]
fn brute_count_detects_curves() {
    let rels = [Relation::eq(&c(-3) * &(&v(1) * &v(0)))];
    assert_eq!(brute_count(&rels, &vars(2), &cfg()).unwrap().0, Count::Infinite);
    let rels = [Relation::eq(v(0).pow(2) * v(1).pow(3)), Relation::eq(v(0) + v(1) - c(2))];
    assert_eq!(brute_count(&rels, &vars(2), &cfg()).unwrap().0, Count::Finite(2));
}

fn dp(terms: &[(&[u32], i64)]) -> groebner::DPoly {
    groebner::DPoly::from_map(terms.iter().map(|(e, c)| (e.to_vec(), Rational::from_integer((*c).into()))).collect())
}

#[test]
fn groebner_circle_and_line() {
    // x^2 + y^2 - 1, x - y
    let g = groebner::groebner(&[dp(&[(&[2, 0], 1), (&[0, 2], 1), (&[0, 0], -1)]), dp(&[(&[1, 0], 1), (&[0, 1], -1)])]);
    assert!(groebner::is_zero_dimensional(&g));
    let half = Rational::new(1.into(), 2.into());
    assert_eq!(groebner::minimal_polynomial(&g, 0), vec![-half.clone(), Rational::zero(), Rational::one()]);
    assert_eq!(groebner::minimal_polynomial(&g, 1), vec![-half, Rational::zero(), Rational::one()]);
}

#[test]
fn groebner_detects_unit_and_curves() {
    let g = groebner::groebner(&[dp(&[(&[1, 1], 1), (&[0, 0], -1)]), dp(&[(&[1, 0], 1)])]);
    assert!(g[0].is_constant());
    let g = groebner::groebner(&[dp(&[(&[1, 1], 1)]), dp(&[(&[2, 0], 1), (&[1, 1], 1)])]);
    assert!(!groebner::is_zero_dimensional(&g));
}

#[test]
fn inequations_can_empty_a_curve() {
    let rels = [Relation::eq(&c(4) * &v(0)), Relation::ne(&(&v(1) * &v(0)) - &(&c(4) * &v(1)) - c(1)), Relation::ne(&c(2) * &v(0).pow(2))];
    assert_eq!(brute_count(&rels, &vars(2), &cfg()).unwrap().0, Count::Finite(0));
    let rels = [Relation::eq(&v(1) * &v(0)), Relation::ne(v(1))];
    assert_eq!(brute_count(&rels, &vars(2), &cfg()).unwrap().0, Count::Infinite);
}
