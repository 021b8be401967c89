//! Gröbner bases in the graded reverse lexicographic order on dense exponent
//! vectors, used to decide finiteness and to compute eliminants exactly.

use crate::polyring::Rational;
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;

pub type Exps = Vec<u32>;

/// Terms sorted from the largest monomial down, nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DPoly {
    pub terms: Vec<(Exps, Rational)>,
}

pub fn grevlex(a: &Exps, b: &Exps) -> Ordering {
    let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

#[derive(PartialEq, Eq)]
struct Key(Exps);

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        grevlex(&self.0, &other.0)
    }
}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn divides(a: &Exps, b: &Exps) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn quotient(b: &Exps, a: &Exps) -> Exps {
    b.iter().zip(a).map(|(y, x)| y - x).collect()
}

fn lcm(a: &Exps, b: &Exps) -> Exps {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

impl DPoly {
    pub fn from_map(m: BTreeMap<Exps, Rational>) -> Self {
        let mut terms: Vec<(Exps, Rational)> = m.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| grevlex(&b.0, &a.0));
        DPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(e, _)| e.iter().all(|&x| x == 0))
    }

    fn lead(&self) -> &Exps {
        &self.terms[0].0
    }

    fn monic(mut self) -> Self {
        let c = self.terms[0].1.clone();
        for (_, d) in &mut self.terms {
            *d = &*d / &c;
        }
        self
    }

    fn shifted(&self, k: &Exps) -> DPoly {
        let terms = self.terms.iter().map(|(e, c)| (e.iter().zip(k).map(|(x, y)| x + y).collect(), c.clone()));
        DPoly { terms: terms.collect() }
    }

    /// `self - c·x^k·q`.
    fn sub_scaled(&self, c: &Rational, k: &Exps, q: &DPoly) -> DPoly {
        let mut acc: BTreeMap<Key, Rational> = self.terms.iter().map(|(e, d)| (Key(e.clone()), d.clone())).collect();
        for (e, d) in &q.terms {
            let m: Exps = e.iter().zip(k).map(|(x, y)| x + y).collect();
            let slot = acc.entry(Key(m)).or_insert_with(Rational::zero);
            *slot = &*slot - &(c * d);
        }
        DPoly { terms: acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k.0, c)).collect() }
    }
}

/// Full remainder of `p` modulo `g`.
pub fn normal_form(p: &DPoly, g: &[DPoly]) -> DPoly {
    let mut p = p.clone();
    let mut r: Vec<(Exps, Rational)> = Vec::new();
    while let Some((m, c)) = p.terms.first().cloned() {
        match g.iter().find(|q| divides(q.lead(), &m)) {
            Some(q) => {
                let k = quotient(&m, q.lead());
                p = p.sub_scaled(&(&c / &q.terms[0].1), &k, q);
            }
            None => {
                p.terms.remove(0);
                r.push((m, c));
            }
        }
    }
    DPoly { terms: r }
}

/// Reduced Gröbner basis; `[1]` for the unit ideal.
pub fn groebner(polys: &[DPoly]) -> Vec<DPoly> {
    let mut g: Vec<DPoly> = polys.iter().filter(|p| !p.is_zero()).cloned().map(DPoly::monic).collect();
    if g.iter().any(|p| p.is_constant()) {
        return vec![one(polys[0].terms[0].0.len())];
    }
    let mut pairs: Vec<(usize, usize)> = (0..g.len()).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    while !pairs.is_empty() {
        let at = (0..pairs.len())
            .min_by_key(|&k| {
                let (i, j) = pairs[k];
                lcm(g[i].lead(), g[j].lead()).iter().sum::<u32>()
            })
            .unwrap();
        let (i, j) = pairs.swap_remove(at);
        let l = lcm(g[i].lead(), g[j].lead());
        if l.iter().zip(g[i].lead()).zip(g[j].lead()).all(|((m, a), b)| *m == a + b) {
            continue;
        }
        let chain = (0..g.len()).any(|k| {
            k != i
                && k != j
                && divides(g[k].lead(), &l)
                && !pairs.contains(&(i.min(k), i.max(k)))
                && !pairs.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let a = g[i].shifted(&quotient(&l, g[i].lead()));
        let s = a.sub_scaled(&Rational::one(), &quotient(&l, g[j].lead()), &g[j]);
        let r = normal_form(&s, &g);
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return vec![one(l.len())];
        }
        g.push(r.monic());
        let k = g.len() - 1;
        pairs.extend((0..k).map(|i| (i, k)));
    }
    let mut minimal: Vec<DPoly> = Vec::new();
    for (k, p) in g.iter().enumerate() {
        let redundant = g
            .iter()
            .enumerate()
            .any(|(l, q)| l != k && divides(q.lead(), p.lead()) && (q.lead() != p.lead() || l < k));
        if !redundant {
            minimal.push(p.clone());
        }
    }
    let mut out: Vec<DPoly> = (0..minimal.len())
        .map(|k| {
            let rest: Vec<DPoly> =
                minimal.iter().enumerate().filter(|(l, _)| *l != k).map(|(_, q)| q.clone()).collect();
            let tail = DPoly { terms: minimal[k].terms[1..].to_vec() };
            let mut r = normal_form(&tail, &rest);
            r.terms.insert(0, minimal[k].terms[0].clone());
            r
        })
        .collect();
    out.sort_by(|a, b| grevlex(a.lead(), b.lead()));
    out
}

fn one(n: usize) -> DPoly {
    DPoly { terms: vec![(vec![0; n], Rational::one())] }
}

/// Whether the basis defines finitely many points: every variable has a pure
/// power among the leading monomials.
pub fn is_zero_dimensional(g: &[DPoly]) -> bool {
    let n = g[0].terms[0].0.len();
    (0..n).all(|i| g.iter().any(|p| p.lead().iter().enumerate().all(|(k, &e)| (k == i) == (e > 0))))
}

/// Monic generator of the ideal's intersection with `Q[x_i]` for a
/// zero-dimensional basis, as ascending coefficients.
pub fn minimal_polynomial(g: &[DPoly], i: usize) -> Vec<Rational> {
    let n = g[0].terms[0].0.len();
    // Echelon rows from the normal forms of 1, x_i, x_i^2, ..., each with the
    // combination of powers it stands for.
    let mut rows: Vec<(BTreeMap<Exps, Rational>, Vec<Rational>)> = Vec::new();
    let mut pivots: Vec<Exps> = Vec::new();
    let mut power = one(n);
    for k in 0.. {
        let nf = normal_form(&power, g);
        let mut v: BTreeMap<Exps, Rational> = nf.terms.into_iter().collect();
        let mut combo = vec![Rational::zero(); k + 1];
        combo[k] = Rational::one();
        for ((row, rc), piv) in rows.iter().zip(&pivots) {
            if let Some(c) = v.get(piv).cloned() {
                for (e, d) in row {
                    let slot = v.entry(e.clone()).or_insert_with(Rational::zero);
                    *slot = &*slot - &(&c * d);
                }
                for (t, d) in rc.iter().enumerate() {
                    combo[t] = &combo[t] - &(&c * d);
                }
            }
        }
        v.retain(|_, c| !c.is_zero());
        match v.iter().next().map(|(e, c)| (e.clone(), c.clone())) {
            None => return combo,
            Some((piv, c)) => {
                for d in v.values_mut() {
                    *d = &*d / &c;
                }
                for d in &mut combo {
                    *d = &*d / &c;
                }
                rows.push((v, combo));
                pivots.push(piv);
            }
        }
        let mut e = vec![0; n];
        e[i] = 1;
        power = power.shifted(&e);
    }
    unreachable!()
}
