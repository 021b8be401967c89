//! Systems of equations and inequations, reduction modulo the triangular
//! candidate, the selection strategy and algebraic equation insertion.

use crate::polyring::{prem, Poly, RankedVar};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Inequation,
    Equation,
}

impl Kind {
    pub fn symbol(self) -> &'static str {
        match self {
            Kind::Equation => "=",
            Kind::Inequation => "!=",
        }
    }
}

/// `p = 0` or `p ≠ 0`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Relation<V: RankedVar> {
    pub poly: Poly<V>,
    pub kind: Kind,
}

impl<V: RankedVar> Relation<V> {
    pub fn new(poly: Poly<V>, kind: Kind) -> Self {
        Relation { poly, kind }
    }

    pub fn eq(poly: Poly<V>) -> Self {
        Relation { poly, kind: Kind::Equation }
    }

    pub fn ne(poly: Poly<V>) -> Self {
        Relation { poly, kind: Kind::Inequation }
    }

    pub fn is_equation(&self) -> bool {
        self.kind == Kind::Equation
    }

    pub fn leader(&self) -> Option<&V> {
        self.poly.leader()
    }

    pub fn normalized(&self) -> Self {
        Relation { poly: self.poly.normalized(), kind: self.kind }
    }

    /// `c = 0` with `c ≠ 0` constant, or `0 ≠ 0`.
    pub fn is_contradiction(&self) -> bool {
        match self.kind {
            Kind::Equation => self.poly.is_constant() && !self.poly.is_zero(),
            Kind::Inequation => self.poly.is_zero(),
        }
    }

    /// `0 = 0`, or `c ≠ 0` with `c ≠ 0` constant.
    pub fn is_tautology(&self) -> bool {
        match self.kind {
            Kind::Equation => self.poly.is_zero(),
            Kind::Inequation => self.poly.is_constant() && !self.poly.is_zero(),
        }
    }
}

impl<V: RankedVar> fmt::Debug for Relation<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}) {} 0", self.poly, self.kind.symbol())
    }
}

/// A pair `(T, Q)`: the triangular candidate with at most one relation per
/// leader, and the queue of unprocessed relations. `ext` carries data only the
/// differential engine needs.
#[derive(Clone, PartialEq, Eq)]
pub struct System<V: RankedVar, X = ()> {
    pub t: BTreeMap<V, Relation<V>>,
    pub q: BTreeSet<Relation<V>>,
    pub ext: X,
}

impl<V: RankedVar, X: Default> Default for System<V, X> {
    fn default() -> Self {
        System { t: BTreeMap::new(), q: BTreeSet::new(), ext: X::default() }
    }
}

impl<V: RankedVar, X: Default> System<V, X> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_relations<I: IntoIterator<Item = Relation<V>>>(rels: I) -> Self {
        let mut s = Self::new();
        for r in rels {
            s.push(r);
        }
        s
    }
}

impl<V: RankedVar, X> System<V, X> {
    /// Queues a relation; scalar multiples collapse to one entry.
    pub fn push(&mut self, r: Relation<V>) {
        self.q.insert(r.normalized());
    }

    pub fn push_eq(&mut self, p: Poly<V>) {
        self.push(Relation::eq(p));
    }

    pub fn push_ne(&mut self, p: Poly<V>) {
        self.push(Relation::ne(p));
    }

    /// `T[x]` if it is an equation.
    pub fn equation(&self, x: &V) -> Option<&Poly<V>> {
        self.t.get(x).filter(|r| r.is_equation()).map(|r| &r.poly)
    }

    pub fn equations(&self) -> impl Iterator<Item = &Relation<V>> {
        self.t.values().filter(|r| r.is_equation())
    }

    /// Whether some queued relation is an obvious contradiction.
    pub fn has_contradiction(&self) -> bool {
        self.q.iter().any(|r| r.is_contradiction())
    }

    /// Whether `Q` holds an equation with leader strictly below `x`.
    pub fn has_queued_equation_below(&self, x: &V) -> bool {
        self.q.iter().any(|r| r.is_equation() && r.leader().is_none_or(|l| l < x))
    }

    /// Relations of `T` ordered ascending by leader.
    pub fn relations(&self) -> impl Iterator<Item = &Relation<V>> {
        self.t.values()
    }
}

impl<V: RankedVar, X> fmt::Debug for System<V, X> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("System").field("t", &self.t.values().collect::<Vec<_>>()).field("q", &self.q).finish()
    }
}

/// Reduction skeleton shared by the algebraic and differential engines.
///
/// `step` performs one pseudo-reduction of the leading part, or returns `None`
/// when no reductor applies; `finish` post-processes the irreducible result.
/// If the initial of the result reduces to zero it is dropped and reduction
/// continues on the remaining terms.
pub fn reduce_with<V, S, F>(p: &Poly<V>, step: &S, finish: &F) -> Poly<V>
where
    V: RankedVar,
    S: Fn(&Poly<V>) -> Option<Poly<V>>,
    F: Fn(Poly<V>) -> Poly<V>,
{
    let mut q = p.normalized();
    while let Some(r) = step(&q) {
        q = r.normalized();
    }
    let q = finish(q).normalized();
    let Some(x) = q.leader().cloned() else {
        return q;
    };
    let init = q.initial();
    if reduce_with(&init, step, finish).is_zero() {
        let rest = &q - &(&init * &Poly::var_pow(x, q.rank()));
        return reduce_with(&rest, step, finish);
    }
    q
}

/// Pseudo-reduction of `p` modulo the `T`-equation with the same leader.
pub fn reduce<V: RankedVar, X>(s: &System<V, X>, p: &Poly<V>) -> Poly<V> {
    reduce_with(p, &|q| alg_step(s, q), &|q| q)
}

/// As [`reduce`], additionally reducing the coefficients modulo lower equations.
pub fn reduce_coefficients<V: RankedVar, X>(s: &System<V, X>, p: &Poly<V>) -> Poly<V> {
    reduce_with(p, &|q| alg_step(s, q), &|q| tail_reduce(s, &q))
}

fn alg_step<V: RankedVar, X>(s: &System<V, X>, q: &Poly<V>) -> Option<Poly<V>> {
    let x = q.leader()?;
    let t = s.equation(x)?;
    if q.rank() < t.rank() {
        return None;
    }
    Some(prem(q, t, x).expect("T-equations contain their leader"))
}

/// Reduces every variable below `ld(p)` that is the leader of a `T`-equation
/// of at most the occurring degree. The multipliers are powers of initials, so
/// the result is equivalent to `p` on the solutions of `T`.
pub fn tail_reduce<V: RankedVar, X>(s: &System<V, X>, p: &Poly<V>) -> Poly<V> {
    let Some(x) = p.leader().cloned() else {
        return p.clone();
    };
    let mut q = p.clone();
    for (y, r) in s.t.range(..x).rev() {
        if r.is_equation() && q.degree(y) >= r.poly.rank() {
            q = prem(&q, &r.poly, y).expect("T-equations contain their leader");
        }
    }
    q
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmptyQueue;

impl fmt::Display for EmptyQueue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "select called on an empty queue")
    }
}

impl std::error::Error for EmptyQueue {}

/// Picks the next relation to process.
///
/// Only equations of the smallest equation leader and inequations strictly
/// below it are eligible; among those the smallest leader wins, then
/// equations, then smaller rank, total degree and canonical order.
pub fn select<V: RankedVar>(q: &BTreeSet<Relation<V>>) -> Result<Relation<V>, EmptyQueue> {
    let min_eq = q.iter().filter(|r| r.is_equation()).map(|r| r.leader()).min();
    q.iter()
        .filter(|r| match (r.kind, min_eq) {
            (_, None) => true,
            (Kind::Equation, Some(m)) => r.leader() == m,
            (Kind::Inequation, Some(m)) => r.leader() < m,
        })
        .min_by(|a, b| select_key(a).cmp(&select_key(b)))
        .cloned()
        .ok_or(EmptyQueue)
}

type SelectKey<'a, V> = (Option<&'a V>, bool, u32, u32, &'a Poly<V>);

fn select_key<V: RankedVar>(r: &Relation<V>) -> SelectKey<'_, V> {
    (r.leader(), !r.is_equation(), r.poly.rank(), r.poly.total_degree(), &r.poly)
}

/// Puts `r = 0` into `T`, replacing whatever relation had the same leader.
pub fn insert_equation_alg<V: RankedVar, X>(s: &mut System<V, X>, r: Poly<V>) {
    let x = r.leader().cloned().expect("inserted equations are not constant");
    s.t.insert(x, Relation::eq(r));
}

#[cfg(test)]
mod tests;
