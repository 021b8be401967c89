//! Differential polynomials over jets: total derivatives, Janet reduction,
//! differential equation insertion and the differential engine.

use crate::algsys::{reduce_with, Relation, System};
use crate::decompose::{self, Decomposition, DecomposeError, Engine, Options, SimpleSystem};
use crate::janet::{assign_admissible, in_cone, janet_divisor, non_admissible, DiffRanking, Jet, Mask};
use crate::polyring::{prem, Poly};
use crate::subres::PrsCache;
use std::collections::{BTreeMap, BTreeSet};

pub type DiffPoly = Poly<Jet>;

/// Cone assignment of the `T`-equations and the prolongations already queued.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiffExt {
    pub cones: BTreeMap<Jet, Mask>,
    pub seen: BTreeSet<(DiffPoly, usize)>,
}

pub type DiffSystem = System<Jet, DiffExt>;

/// Total derivative by the `k`-th derivation (0-based).
pub fn diff_derive(p: &DiffPoly, k: usize) -> DiffPoly {
    let mut out = DiffPoly::zero();
    for v in p.vars() {
        out += &(&p.derive(&v) * &DiffPoly::var(v.derive(k)));
    }
    out
}

/// `∂^k p`.
pub fn diff_derive_by(p: &DiffPoly, k: &[u32]) -> DiffPoly {
    let mut q = p.clone();
    for (l, &e) in k.iter().enumerate() {
        for _ in 0..e {
            q = diff_derive(&q, l);
        }
    }
    q
}

/// The separant `∂p/∂ld(p)`.
pub fn separant(p: &DiffPoly) -> DiffPoly {
    match p.leader() {
        Some(x) => p.derive(x),
        None => DiffPoly::zero(),
    }
}

fn t_equations<'a, X>(s: &'a System<Jet, X>, cones: &BTreeMap<Jet, Mask>) -> Vec<(&'a DiffPoly, Mask)> {
    s.equations().map(|r| (&r.poly, cones.get(r.leader().unwrap()).copied().unwrap_or(0))).collect()
}

fn janet_step(s: &DiffSystem, q: &DiffPoly) -> Option<DiffPoly> {
    let x = q.leader()?;
    janet_reduce_at(s, q, x)
}

fn janet_reduce_at(s: &DiffSystem, q: &DiffPoly, y: &Jet) -> Option<DiffPoly> {
    let (p, k) = janet_divisor(y, q.degree(y), t_equations(s, &s.ext.cones))?;
    let d = diff_derive_by(p, &k);
    Some(prem(q, &d, y).expect("prolongations contain their leader"))
}

/// Whether `q` has a Janet divisor among the `T`-equations.
pub fn is_janet_reducible(s: &DiffSystem, q: &DiffPoly) -> bool {
    q.leader().is_some_and(|x| janet_divisor(x, q.rank(), t_equations(s, &s.ext.cones)).is_some())
}

/// Janet reduction modulo the `T`-equations, recursing into vanishing initials.
pub fn diff_reduce(s: &DiffSystem, p: &DiffPoly) -> DiffPoly {
    reduce_with(p, &|q| janet_step(s, q), &|q| q)
}

/// [`diff_reduce`] followed by reduction of the non-leading jets.
pub fn diff_reduce_coefficients(s: &DiffSystem, p: &DiffPoly) -> DiffPoly {
    reduce_with(p, &|q| janet_step(s, q), &|q| diff_tail_reduce(s, &q))
}

/// Eliminates Janet-reducible jets below the leader, from the top down.
pub fn diff_tail_reduce(s: &DiffSystem, p: &DiffPoly) -> DiffPoly {
    let Some(mut bound) = p.leader().cloned() else {
        return p.clone();
    };
    let mut q = p.clone();
    loop {
        let step = q.vars().into_iter().rev().filter(|y| *y < bound).find_map(|y| {
            let r = janet_reduce_at(s, &q, &y)?;
            Some((y, r))
        });
        match step {
            Some((y, r)) => {
                q = r;
                bound = y;
            }
            None => return q,
        }
    }
}

/// Inserts `p = 0` into `T` with the Janet discipline: relations whose leader
/// is a derivative of `ld(p)` go back to the queue, cones are reassigned and
/// unseen non-admissible prolongations are queued.
pub fn diff_insert_equation(s: &mut DiffSystem, p: DiffPoly) {
    let x = p.leader().cloned().expect("inserted equations are not constant");
    s.t.remove(&x);
    let moved: Vec<Jet> = s.t.keys().filter(|y| x.divides(y).is_some()).cloned().collect();
    for y in moved {
        let r = s.t.remove(&y).unwrap();
        s.push(r);
    }
    s.t.insert(x, Relation::eq(p));
    s.ext.cones = assign_admissible(s.equations().map(|r| r.leader().unwrap()));
    let reducible: Vec<Jet> = s
        .t
        .iter()
        .filter(|(_, r)| !r.is_equation() && is_janet_reducible(s, &r.poly))
        .map(|(y, _)| y.clone())
        .collect();
    for y in reducible {
        let r = s.t.remove(&y).unwrap();
        s.push(r);
    }
    let mut prolongations = Vec::new();
    for (w, l) in non_admissible(&s.ext.cones) {
        let e = s.t[&w].poly.clone();
        if s.ext.seen.insert((e.clone(), l)) {
            prolongations.push(diff_derive(&e, l));
        }
    }
    for d in prolongations {
        s.push_eq(d);
    }
}

/// Decomposition engine for differential systems under a fixed ranking.
pub struct DiffEngine {
    ranking: DiffRanking,
    options: Options,
    cache: PrsCache<Jet>,
}

impl DiffEngine {
    pub fn new(ranking: DiffRanking, options: Options) -> Self {
        DiffEngine { ranking, options, cache: PrsCache::new() }
    }

    pub fn ranking(&self) -> &DiffRanking {
        &self.ranking
    }
}

impl Engine for DiffEngine {
    type V = Jet;
    type Ext = DiffExt;

    fn reduce(&self, s: &DiffSystem, p: &DiffPoly) -> DiffPoly {
        if self.options.coeff_reduce {
            diff_reduce_coefficients(s, p)
        } else {
            diff_reduce(s, p)
        }
    }

    fn insert_equation(&self, s: &mut DiffSystem, p: DiffPoly) {
        diff_insert_equation(s, p);
    }

    fn tail_reduce(&self, s: &DiffSystem, p: &DiffPoly) -> DiffPoly {
        diff_tail_reduce(s, p)
    }

    fn prs_cache(&self) -> &PrsCache<Jet> {
        &self.cache
    }

    fn options(&self) -> &Options {
        &self.options
    }
}

pub fn diff_decompose(eng: &DiffEngine, rels: Vec<Relation<Jet>>) -> Result<Decomposition<Jet>, DecomposeError> {
    decompose::decompose(eng, DiffSystem::from_relations(rels))
}

/// A finished system with its Janet cones recomputed.
pub fn with_cones(s: &SimpleSystem<Jet>) -> DiffSystem {
    let mut sys: DiffSystem = s.to_system();
    sys.ext.cones = assign_admissible(sys.equations().map(|r| r.leader().unwrap()));
    sys
}

/// Non-admissible prolongations of the equations that do not reduce to zero.
pub fn involutivity_defects(s: &SimpleSystem<Jet>) -> Vec<DiffPoly> {
    let sys = with_cones(s);
    non_admissible(&sys.ext.cones)
        .into_iter()
        .filter_map(|(w, l)| {
            let r = diff_reduce(&sys, &diff_derive(&sys.t[&w].poly, l));
            (!r.is_zero()).then_some(r)
        })
        .collect()
}

/// No equation leader is a derivative of another.
pub fn is_minimal(s: &SimpleSystem<Jet>) -> bool {
    let leaders: Vec<&Jet> = s.equations().map(|p| p.leader().unwrap()).collect();
    leaders.iter().all(|a| leaders.iter().all(|b| a == b || a.divides(b).is_none()))
}

/// Inequations that have a Janet divisor among the equations.
pub fn reducible_inequations(s: &SimpleSystem<Jet>) -> Vec<DiffPoly> {
    let sys = with_cones(s);
    s.inequations().filter(|q| is_janet_reducible(&sys, q)).cloned().collect()
}

/// Whether `v` lies in the Janet cone of some equation of `s`.
pub fn janet_covered(s: &SimpleSystem<Jet>, v: &Jet) -> bool {
    let sys = with_cones(s);
    sys.ext.cones.iter().any(|(w, m)| in_cone(w, *m, v).is_some())
}

#[cfg(test)]
mod tests;
