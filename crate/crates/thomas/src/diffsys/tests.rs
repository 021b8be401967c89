use super::*;
use crate::decompose::Options;
use proptest::prelude::*;

type D = DiffPoly;

struct CH {
    r: DiffRanking,
}

impl CH {
    fn orderly() -> Self {
        CH { r: DiffRanking::orderly(2, &["zeta", "eta"]).unwrap() }
    }
    fn z(&self, i: &[u32]) -> D {
        D::var(self.r.jet(0, i))
    }
    fn e(&self, i: &[u32]) -> D {
        D::var(self.r.jet(1, i))
    }
}

fn c(n: i64) -> D {
    D::from_int(n)
}

#[test]
fn derive_examples() {
    let ch = CH::orderly();
    let p = ch.e(&[1, 0]) - &ch.e(&[0, 0]) * &ch.z(&[0, 0]);
    let expected = ch.e(&[2, 0]) - &ch.e(&[1, 0]) * &ch.z(&[0, 0]) - &ch.e(&[0, 0]) * &ch.z(&[1, 0]);
    assert_eq!(diff_derive(&p, 0), expected);
    assert!(diff_derive(&c(7), 1).is_zero());
    assert_eq!(diff_derive(&ch.z(&[1, 0]), 1), ch.z(&[1, 1]));
}

#[test]
fn reduce_examples() {
    let r = DiffRanking::orderly(1, &["u"]).unwrap();
    let u = |i: u32| D::var(r.jet(0, &[i]));
    let mut s = DiffSystem::new();
    assert_eq!(diff_reduce(&s, &u(2)), u(2));
    diff_insert_equation(&mut s, u(1) - u(0));
    assert!(s.q.is_empty());
    assert_eq!(diff_reduce(&s, &u(2)), u(0));
    assert!(diff_reduce(&s, &(u(3) - u(0))).is_zero());
}

#[test]
fn insert_moves_derivative_leaders() {
    let r = DiffRanking::orderly(2, &["u"]).unwrap();
    let u = |i: &[u32]| D::var(r.jet(0, i));
    let mut s = DiffSystem::new();
    diff_insert_equation(&mut s, u(&[2, 0]) - u(&[0, 0]));
    diff_insert_equation(&mut s, u(&[1, 0]) + u(&[0, 1]));
    assert_eq!(s.t.len(), 1);
    assert!(s.q.contains(&Relation::eq(u(&[2, 0]) - u(&[0, 0]))));
}

#[test]
fn insert_queues_non_admissible_prolongations() {
    let r = DiffRanking::orderly(2, &["u"]).unwrap();
    let u = |i: &[u32]| D::var(r.jet(0, i));
    let mut s = DiffSystem::new();
    diff_insert_equation(&mut s, u(&[2, 0]) - u(&[0, 0]));
    let p = u(&[1, 1]) - u(&[0, 1]);
    diff_insert_equation(&mut s, p.clone());
    assert_eq!(s.t.len(), 2);
    assert_eq!(s.ext.cones[&r.jet(0, &[1, 1])], 0b10);
    assert_eq!(s.ext.cones[&r.jet(0, &[2, 0])], 0b11);
    assert_eq!(s.q.len(), 1);
    assert!(s.q.contains(&Relation::eq(diff_derive(&p, 0))));
    diff_insert_equation(&mut s, p);
    assert_eq!(s.q.len(), 1, "prolongations are queued once");
}

#[test]
fn cole_hopf_orderly() {
    let ch = CH::orderly();
    let (eta, zeta) = (ch.e(&[0, 0]), ch.z(&[0, 0]));
    let h = ch.e(&[0, 1]) + ch.e(&[2, 0]);
    let link = &eta * &zeta - ch.e(&[1, 0]);
    let eng = DiffEngine::new(ch.r.clone(), Options::default());
    let out = diff_decompose(&eng, vec![Relation::eq(h), Relation::eq(link), Relation::ne(eta.clone())]).unwrap();
    assert_eq!(out.systems.len(), 1);
    let s = &out.systems[0];
    let mut expected = vec![
        Relation::ne(eta.clone()),
        Relation::eq(ch.e(&[1, 0]) - &eta * &zeta),
        Relation::eq(&eta * &ch.z(&[1, 0]) + ch.e(&[0, 1]) + &eta * &zeta.pow(2)),
    ];
    expected.iter_mut().for_each(|r| *r = r.normalized());
    let mut got = s.relations.clone();
    got.sort();
    expected.sort();
    assert_eq!(got, expected);
    let burgers = ch.z(&[0, 1]) + ch.z(&[2, 0]) + &(&c(2) * &ch.z(&[1, 0])) * &zeta;
    assert!(diff_reduce(&with_cones(s), &burgers).is_zero());
    assert!(involutivity_defects(s).is_empty());
    assert!(is_minimal(s));
    assert!(reducible_inequations(s).is_empty());
}

#[test]
fn inconsistent_differential_system() {
    let r = DiffRanking::orderly(1, &["u"]).unwrap();
    let u = |i: u32| D::var(r.jet(0, &[i]));
    let eng = DiffEngine::new(r.clone(), Options::default());
    let out = diff_decompose(&eng, vec![Relation::eq(u(1) - c(1)), Relation::eq(u(0))]).unwrap();
    assert!(out.systems.is_empty());
}

fn arb_dpoly() -> impl Strategy<Value = D> {
    let r = DiffRanking::orderly(2, &["u", "v"]).unwrap();
    let term = (0u32..2, 0u32..3, 0u32..3, 1u32..3, -3i64..=3);
    proptest::collection::vec(term, 1..4).prop_map(move |ts| {
        ts.into_iter().fold(D::zero(), |acc, (j, a, b, e, k)| acc + &c(k) * &D::var(r.jet(j, &[a, b])).pow(e))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn prop_leibniz(p in arb_dpoly(), q in arb_dpoly(), k in 0usize..2) {
        let lhs = diff_derive(&(&p * &q), k);
        let rhs = &diff_derive(&p, k) * &q + &p * &diff_derive(&q, k);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn prop_separant_is_initial(p in arb_dpoly(), k in 0usize..2) {
        let Some(x) = p.leader().cloned() else { return Ok(()); };
        let d = diff_derive(&p, k);
        prop_assert_eq!(d.leader(), Some(&x.derive(k)));
        prop_assert_eq!(d.initial(), separant(&p));
    }

    #[test]
    fn prop_reduced_has_no_divisor(eqs in proptest::collection::vec(arb_dpoly(), 1..3), p in arb_dpoly()) {
        let mut s = DiffSystem::new();
        for e in eqs.into_iter().filter(|e| !e.is_constant()) {
            diff_insert_equation(&mut s, e);
        }
        let q = diff_reduce(&s, &p);
        prop_assert!(!is_janet_reducible(&s, &q));
    }
}
