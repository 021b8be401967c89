use super::*;
use proptest::prelude::*;

fn r2() -> DiffRanking {
    DiffRanking::orderly(2, &["u"]).unwrap()
}

fn u(i: &[u32]) -> Jet {
    let r = DiffRanking::orderly(i.len(), &["u"]).unwrap();
    r.jet(0, i)
}

fn set(js: &[&[u32]]) -> BTreeSet<Jet> {
    js.iter().map(|i| u(i)).collect()
}

/// All multi-indices of length `n` with total degree at most `d`.
fn indices(n: usize, d: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 0..=d {
        for mut rest in indices(n - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Number of cones containing each jet of degree at most `d`, and whether the
/// jet lies in the full closure of `w`.
fn cone_census(w: &BTreeSet<Jet>, d: u32) -> Vec<(usize, bool)> {
    let n = w.iter().next().unwrap().index.len();
    let cones = assign_admissible(w);
    indices(n, d)
        .into_iter()
        .map(|i| {
            let v = u(&i);
            let hits = cones
                .iter()
                .filter(|(c, m)| {
                    c.index.iter().zip(&v.index).enumerate().all(|(l, (a, b))| b >= a && (b == a || *m & (1 << l) != 0))
                })
                .count();
            let closed = w.iter().any(|c| c.index.iter().zip(&v.index).all(|(a, b)| b >= a));
            (hits, closed)
        })
        .collect()
}

#[test]
fn admissible_examples() {
    let a = assign_admissible(&set(&[&[2, 0]]));
    assert_eq!(a[&u(&[2, 0])], 0b11);
    let a = assign_admissible(&set(&[&[2, 0], &[1, 1]]));
    assert_eq!(a[&u(&[2, 0])], 0b11);
    assert_eq!(a[&u(&[1, 1])], 0b10);
    let a = assign_admissible(&set(&[&[2, 0], &[0, 2]]));
    assert_eq!(a[&u(&[2, 0])], 0b11);
    assert_eq!(a[&u(&[0, 2])], 0b10);
    for w in [set(&[&[2, 0], &[1, 1]]), set(&[&[2, 0], &[0, 2]])] {
        assert!(cone_census(&w, 8).iter().all(|(h, _)| *h <= 1));
    }
}

#[test]
fn completion_examples() {
    assert_eq!(complete(&set(&[&[2, 0], &[0, 2]])), set(&[&[2, 0], &[1, 2], &[0, 2]]));
    assert_eq!(complete(&set(&[&[1, 0]])), set(&[&[1, 0]]));
    assert_eq!(complete(&set(&[&[2, 0], &[1, 1]])), set(&[&[2, 0], &[1, 1]]));
    assert!(cone_census(&set(&[&[2, 0], &[1, 2], &[0, 2]]), 8).iter().all(|&(h, c)| h == usize::from(c)));
}

#[test]
fn indeterminates_have_separate_cones() {
    let r = DiffRanking::orderly(2, &["u", "v"]).unwrap();
    let w = [r.jet(0, &[1, 0]), r.jet(1, &[0, 1])];
    let a = assign_admissible(&w);
    assert_eq!(a[&w[0]], 0b11);
    assert_eq!(a[&w[1]], 0b11);
}

#[test]
fn divisor_examples() {
    let r = r2();
    let p = Poly::var(r.jet(0, &[2, 0]));
    let q = Poly::var(r.jet(0, &[1, 1]));
    let x = r.jet(0, &[3, 1]);
    let (d, k) = janet_divisor(&x, 1, [(&p, 0b11)]).unwrap();
    assert_eq!(d, &p);
    assert_eq!(k.as_slice(), &[1, 1]);
    assert!(janet_divisor(&x, 1, [(&q, 0b10)]).is_none());
    let p2 = p.pow(2);
    assert!(janet_divisor(&r.jet(0, &[2, 0]), 1, [(&p2, 0b11)]).is_none());
    assert!(janet_divisor(&r.jet(0, &[2, 0]), 2, [(&p2, 0b11)]).is_some());
    assert!(janet_divisor(&r.jet(0, &[3, 0]), 1, [(&p2, 0b11)]).is_some());
}

#[test]
fn cole_hopf_orderly_comparisons() {
    let r = DiffRanking::orderly(2, &["zeta", "eta"]).unwrap();
    let (z, e) = (0, 1);
    let zx = r.jet(z, &[1, 0]);
    let zt = r.jet(z, &[0, 1]);
    let ex = r.jet(e, &[1, 0]);
    let et = r.jet(e, &[0, 1]);
    assert!(zx > zt && zt > ex && ex > et);
    assert!(r.base(z) > r.base(e));
    assert!(r.jet(e, &[2, 0]) > zx);
}

#[test]
fn elimination_blocks_dominate() {
    let r = DiffRanking::elimination(2, &[vec!["eta"], vec!["zeta"]]).unwrap();
    assert!(r.base(0) > r.jet(1, &[5, 5]));
    assert_eq!(r.format_jet(&r.jet(1, &[2, 0])), "zeta[2,0]");
    assert_eq!(r.format_jet(&r.base(0)), "eta");
    assert!(DiffRanking::orderly(2, &["u", "u"]).is_err());
}

fn arb_ranking() -> impl Strategy<Value = DiffRanking> {
    prop_oneof![
        Just(DiffRanking::orderly(2, &["a", "b", "c"]).unwrap()),
        Just(DiffRanking::elimination(2, &[vec!["a"], vec!["b", "c"]]).unwrap()),
        Just(DiffRanking::elimination(2, &[vec!["a", "b"], vec!["c"]]).unwrap()),
    ]
}

fn arb_leader_set() -> impl Strategy<Value = BTreeSet<Jet>> {
    (2usize..=3).prop_flat_map(|n| {
        proptest::collection::vec(proptest::collection::vec(0u32..=5, n), 1..=5).prop_map(move |idx| {
            idx.into_iter().map(|mut i| {
                while i.iter().sum::<u32>() > 5 {
                    let m = i.iter().position(|&e| e > 0).unwrap();
                    i[m] -= 1;
                }
                u(&i)
            })
            .collect()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn prop_ranking_axioms(r in arb_ranking(), a in 0u32..3, b in 0u32..3,
                           i in proptest::collection::vec(0u32..4, 2), j in proptest::collection::vec(0u32..4, 2), k in 0usize..2) {
        let (v, w) = (r.jet(a, &i), r.jet(b, &j));
        prop_assert!(v < v.derive(k));
        if v < w {
            prop_assert!(v.derive(k) < w.derive(k));
        }
    }

    #[test]
    fn prop_cones_disjoint(w in arb_leader_set()) {
        prop_assert!(cone_census(&w, 8).iter().all(|(h, _)| *h <= 1));
    }

    #[test]
    fn prop_completion_partitions_closure(w in arb_leader_set()) {
        let full = complete(&w);
        prop_assert!(full.is_superset(&w));
        for (hits, closed) in cone_census(&full, 10) {
            prop_assert_eq!(hits, usize::from(closed));
        }
    }
}
