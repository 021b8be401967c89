//! Splitting subalgorithms that partition the solution set of a system.

use crate::algsys::{Kind, Relation, System};
use crate::decompose::Engine;
use crate::polyring::{pquo, prem, Poly, RankedVar};
use crate::subres::SubresError;
use std::fmt;

type Sys<E> = System<<E as Engine>::V, <E as Engine>::Ext>;

/// Result of a splitting step. `kept` is the branch where the generic
/// condition holds, `other` the complementary branch (if any).
#[derive(Clone, Debug)]
pub struct SplitOutcome<V: RankedVar, X> {
    pub kept: System<V, X>,
    pub other: Option<System<V, X>>,
    pub witness: Poly<V>,
    pub extra: Option<Poly<V>>,
    pub fiber: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SplitError {
    /// An equation with a smaller leader is still queued.
    QueuedEquationBelow(String),
    Subresultant(SubresError),
    /// The polynomials do not share the leader `x`.
    Leader(String),
}

impl fmt::Display for SplitError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SplitError::QueuedEquationBelow(x) => write!(f, "queue holds an equation with leader below {x}"),
            SplitError::Subresultant(e) => write!(f, "{e}"),
            SplitError::Leader(x) => write!(f, "polynomials do not both have leader {x}"),
        }
    }
}

impl std::error::Error for SplitError {}

impl From<SubresError> for SplitError {
    fn from(e: SubresError) -> Self {
        SplitError::Subresultant(e)
    }
}

/// `(S ∪ {p ≠ 0}, S ∪ {p = 0})`.
pub fn split<V: RankedVar, X: Clone>(s: &System<V, X>, p: &Poly<V>) -> (System<V, X>, System<V, X>) {
    let mut s1 = s.clone();
    let mut s2 = s.clone();
    s1.push_ne(p.clone());
    s2.push_eq(p.clone());
    (s1, s2)
}

/// Splits on the initial of `q`; the second branch receives `q` with its
/// leading term removed.
pub fn init_split<V: RankedVar, X: Clone>(s: &System<V, X>, q: &Relation<V>) -> (System<V, X>, System<V, X>) {
    let (s1, mut s2) = split(s, &q.poly.initial());
    s2.push(Relation::new(q.poly.tail(), q.kind));
    (s1, s2)
}

fn leader_of<V: RankedVar>(p: &Poly<V>) -> Result<V, SplitError> {
    p.leader().cloned().ok_or_else(|| SplitError::Leader("1".into()))
}

/// Quasi fiber cardinality `i` of `p` and `q`, and the split on `res_i`.
///
/// `q` may have a leader below `ld(p)`; it then acts as `res_0`.
pub fn res_split<E: Engine>(
    eng: &E,
    s: &Sys<E>,
    p: &Poly<E::V>,
    q: &Poly<E::V>,
) -> Result<SplitOutcome<E::V, E::Ext>, SplitError> {
    let x = leader_of(p)?;
    if q.leader().is_some_and(|l| *l > x) {
        return Err(SplitError::Leader(format!("{x:?}")));
    }
    if s.has_queued_equation_below(&x) {
        return Err(SplitError::QueuedEquationBelow(format!("{x:?}")));
    }
    let seq = eng.prs_cache().get(p, q, &x)?;
    for i in 0..=seq.dp {
        let r = seq.res(i)?;
        if !eng.reduce(s, &r).is_zero() {
            let (kept, other) = split(s, &r);
            return Ok(SplitOutcome { kept, other: Some(other), witness: r, extra: None, fiber: Some(i) });
        }
    }
    unreachable!("res_dp = 1 never reduces to zero")
}

/// Conditional gcd of the `T`-equation with leader `ld(q)` and the equation `q`.
pub fn res_split_gcd<E: Engine>(eng: &E, s: &Sys<E>, q: &Poly<E::V>) -> Result<SplitOutcome<E::V, E::Ext>, SplitError> {
    let x = leader_of(q)?;
    let t = s.equation(&x).ok_or_else(|| SplitError::Leader(format!("{x:?}")))?.clone();
    let mut out = res_split(eng, s, &t, q)?;
    let i = out.fiber.expect("res_split sets the fiber");
    if let Some(o) = out.other.as_mut() {
        o.push_eq(q.clone());
    }
    out.extra = Some(eng.prs_cache().get(&t, q, &x)?.member(i));
    Ok(out)
}

/// Conditional quotient of `p` by `gcd(p, q)`; the second branch re-queues `q`
/// with the given kind.
pub fn res_split_divide<E: Engine>(
    eng: &E,
    s: &Sys<E>,
    p: &Poly<E::V>,
    q: &Poly<E::V>,
    kind: Kind,
) -> Result<SplitOutcome<E::V, E::Ext>, SplitError> {
    let mut out = divide(eng, s, p, q)?;
    if let Some(o) = out.other.as_mut() {
        o.push(Relation::new(q.clone(), kind));
    }
    Ok(out)
}

fn divide<E: Engine>(
    eng: &E,
    s: &Sys<E>,
    p: &Poly<E::V>,
    q: &Poly<E::V>,
) -> Result<SplitOutcome<E::V, E::Ext>, SplitError> {
    let x = leader_of(p)?;
    let q1 = if q.degree(&x) >= p.rank() { prem(q, p, &x).expect("p contains its leader") } else { q.clone() };
    let mut out = res_split(eng, s, p, &q1)?;
    let i = out.fiber.expect("res_split sets the fiber");
    let quotient = if i > 0 {
        let g = eng.prs_cache().get(p, &q1, &x)?.member(i);
        pquo(p, &g, &x).expect("regular members have positive degree")
    } else {
        p.clone()
    };
    out.extra = Some(quotient);
    Ok(out)
}

/// Conditional square-free part of `p`; the second branch re-queues `p` with
/// the given kind. Linear polynomials are returned unchanged without a split.
pub fn res_split_squarefree<E: Engine>(
    eng: &E,
    s: &Sys<E>,
    p: &Poly<E::V>,
    kind: Kind,
) -> Result<SplitOutcome<E::V, E::Ext>, SplitError> {
    let x = leader_of(p)?;
    if p.rank() == 1 {
        return Ok(SplitOutcome { kept: s.clone(), other: None, witness: Poly::one(), extra: Some(p.clone()), fiber: Some(0) });
    }
    let mut out = divide(eng, s, p, &p.derive(&x))?;
    if let Some(o) = out.other.as_mut() {
        o.push(Relation::new(p.clone(), kind));
    }
    Ok(out)
}
