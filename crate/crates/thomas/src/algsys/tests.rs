use super::*;
use crate::polyring::Variable;
use proptest::prelude::*;

type P = Poly<Variable>;
type S = System<Variable>;

const A: Variable = Variable(0);
const X: Variable = Variable(1);

fn v(i: u32) -> P {
    P::var(Variable(i))
}

fn c(n: i64) -> P {
    P::from_int(n)
}

fn worked_t() -> S {
    let mut s = S::new();
    insert_equation_alg(&mut s, v(1).pow(2) + v(1) + c(1));
    insert_equation_alg(&mut s, v(0).pow(2) - v(0) + c(1));
    s
}

#[test]
fn reduce_to_zero_in_worked_example() {
    assert!(reduce(&worked_t(), &(v(0).pow(2) - v(0) + c(1))).is_zero());
}

#[test]
fn reduce_with_empty_t_is_identity() {
    let p = v(1).pow(2) + &v(0) * &v(1);
    assert_eq!(reduce(&S::new(), &p), p);
}

#[test]
fn reduce_cubic() {
    let mut s = S::new();
    insert_equation_alg(&mut s, v(1).pow(2) + v(1) + c(1));
    assert_eq!(reduce(&s, &v(1).pow(3)), c(1));
}

#[test]
fn reduce_strips_vanishing_initial() {
    // (a^2-a+1)·x^2 + x + a: the initial vanishes, so the result is x + a
    let p = &(v(0).pow(2) - v(0) + c(1)) * &v(1).pow(2) + v(1) + v(0);
    let mut s = S::new();
    insert_equation_alg(&mut s, v(0).pow(2) - v(0) + c(1));
    assert_eq!(reduce(&s, &p), v(1) + v(0));
}

#[test]
fn coefficient_reduction_uses_lower_equations() {
    let mut s = S::new();
    insert_equation_alg(&mut s, v(0).pow(2) - c(2));
    let p = &v(0).pow(3) * &v(1) + c(1);
    assert_eq!(reduce(&s, &p), p);
    assert_eq!(reduce_coefficients(&s, &p), &(&c(2) * &v(0)) * &v(1) + c(1));
}

#[test]
fn select_examples() {
    let q: BTreeSet<_> = [Relation::ne(v(1) + v(0)), Relation::eq(v(1).pow(2) + v(1) + c(1))].into();
    assert_eq!(select(&q).unwrap(), Relation::eq(v(1).pow(2) + v(1) + c(1)));
    let q: BTreeSet<_> = [Relation::eq(v(1).pow(2) - v(0))].into();
    assert_eq!(select(&q).unwrap(), Relation::eq(v(1).pow(2) - v(0)));
    let q: BTreeSet<_> = [Relation::eq(v(0).pow(2) - v(0) + c(1)), Relation::ne(v(1) + v(0))].into();
    assert_eq!(select(&q).unwrap(), Relation::eq(v(0).pow(2) - v(0) + c(1)));
    assert_eq!(select::<Variable>(&BTreeSet::new()), Err(EmptyQueue));
}

#[test]
fn insert_replaces_same_leader() {
    let mut s = S::new();
    insert_equation_alg(&mut s, v(1).pow(2) + v(1) + c(1));
    insert_equation_alg(&mut s, v(1) - v(0) + c(1));
    assert_eq!(s.t.len(), 1);
    assert_eq!(s.equation(&X), Some(&(v(1) - v(0) + c(1))));
    assert!(s.equation(&A).is_none());
}

#[test]
fn queue_collapses_scalar_multiples() {
    let mut s = S::new();
    s.push_eq(&c(2) * &v(1));
    s.push_eq(&c(-3) * &v(1));
    s.push_ne(v(1));
    assert_eq!(s.q.len(), 2);
    s.push_eq(c(5));
    assert!(s.has_contradiction());
}

#[test]
fn relation_classification() {
    assert!(Relation::ne(P::zero()).is_contradiction());
    assert!(Relation::eq(c(3)).is_contradiction());
    assert!(Relation::eq(P::zero()).is_tautology());
    assert!(Relation::ne(c(7)).is_tautology());
    assert!(!Relation::ne(v(1) + v(0)).is_tautology());
}

fn arb_relation() -> impl Strategy<Value = Relation<Variable>> {
    (0u32..5, 0u32..4, 1u32..4, any::<bool>()).prop_map(|(lead, lower, deg, eq)| {
        let p = if lead == 0 { c(1) } else { v(lead - 1).pow(deg) + v(lower.min(lead - 1)) };
        if eq {
            Relation::eq(p)
        } else {
            Relation::ne(p)
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn prop_select_axioms(rels in proptest::collection::vec(arb_relation(), 1..8)) {
        let q: BTreeSet<_> = rels.into_iter().collect();
        let pick = select(&q).unwrap();
        prop_assert!(q.contains(&pick));
        let ld = pick.leader();
        for r in q.iter().filter(|r| r.is_equation()) {
            if pick.is_equation() {
                prop_assert!(r.leader() >= ld);
            } else {
                prop_assert!(r.leader() > ld);
            }
        }
    }

    #[test]
    fn prop_insert_keeps_triangular(rels in proptest::collection::vec(arb_relation(), 1..8)) {
        let mut s = S::new();
        for r in rels.into_iter().filter(|r| !r.poly.is_constant()) {
            insert_equation_alg(&mut s, r.poly.clone());
            for (x, t) in &s.t {
                prop_assert_eq!(t.leader(), Some(x));
            }
        }
    }
}
