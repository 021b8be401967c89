//! The main decomposition loop, generic over the reduction and insertion
//! strategy of the algebraic and differential engines.

use crate::algsys::{self, Kind, Relation, System};
use crate::polyring::{content, content_free, div_exact, gcd, Poly, RankedVar, Variable};
use crate::splitting::{init_split, res_split_divide, res_split_gcd, res_split_squarefree, SplitError};
use crate::subres::{PrsCache, SubresError};
use std::cmp::Ordering as CmpOrdering;
use std::fmt;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    /// Split products over their rational factors.
    pub factor: bool,
    /// Reduce coefficients modulo lower equations during reduction.
    pub coeff_reduce: bool,
    pub jobs: usize,
    pub max_iterations: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options { factor: false, coeff_reduce: false, jobs: 1, max_iterations: 1_000_000 }
    }
}

/// What the main loop needs from an algebraic or differential engine.
pub trait Engine: Sync {
    type V: RankedVar;
    type Ext: Clone + Default + Send + Sync;

    fn reduce(&self, s: &System<Self::V, Self::Ext>, p: &Poly<Self::V>) -> Poly<Self::V>;
    /// Inserts `p = 0` into `T`; `p` has a nonvanishing initial and is square-free.
    fn insert_equation(&self, s: &mut System<Self::V, Self::Ext>, p: Poly<Self::V>);
    /// Rewrites the non-leading variables of `p` modulo lower equations of `T`.
    fn tail_reduce(&self, s: &System<Self::V, Self::Ext>, p: &Poly<Self::V>) -> Poly<Self::V>;
    fn prs_cache(&self) -> &PrsCache<Self::V>;
    fn options(&self) -> &Options;
}

/// Engine over plain polynomial rings.
pub struct AlgebraicEngine<V: RankedVar = Variable> {
    options: Options,
    cache: PrsCache<V>,
}

impl<V: RankedVar> AlgebraicEngine<V> {
    pub fn new(options: Options) -> Self {
        AlgebraicEngine { options, cache: PrsCache::new() }
    }
}

impl<V: RankedVar> Default for AlgebraicEngine<V> {
    fn default() -> Self {
        Self::new(Options::default())
    }
}

impl<V: RankedVar> Engine for AlgebraicEngine<V> {
    type V = V;
    type Ext = ();

    fn reduce(&self, s: &System<V>, p: &Poly<V>) -> Poly<V> {
        if self.options.coeff_reduce {
            algsys::reduce_coefficients(s, p)
        } else {
            algsys::reduce(s, p)
        }
    }

    fn insert_equation(&self, s: &mut System<V>, p: Poly<V>) {
        algsys::insert_equation_alg(s, p);
    }

    fn tail_reduce(&self, s: &System<V>, p: &Poly<V>) -> Poly<V> {
        algsys::tail_reduce(s, p)
    }

    fn prs_cache(&self) -> &PrsCache<V> {
        &self.cache
    }

    fn options(&self) -> &Options {
        &self.options
    }
}

/// A finished system: the relations of `T` in ascending order of leaders.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimpleSystem<V: RankedVar> {
    pub relations: Vec<Relation<V>>,
}

impl<V: RankedVar> SimpleSystem<V> {
    pub fn equations(&self) -> impl Iterator<Item = &Poly<V>> {
        self.relations.iter().filter(|r| r.is_equation()).map(|r| &r.poly)
    }

    pub fn inequations(&self) -> impl Iterator<Item = &Poly<V>> {
        self.relations.iter().filter(|r| !r.is_equation()).map(|r| &r.poly)
    }

    /// The system as a `(T, Q)` pair with empty queue.
    pub fn to_system<X: Default>(&self) -> System<V, X> {
        let mut s = System::new();
        for r in &self.relations {
            let x = r.leader().cloned().expect("simple systems have no constants");
            s.t.insert(x, r.clone());
        }
        s
    }

    fn shape(&self) -> Vec<(Option<&V>, u32, Kind)> {
        self.relations.iter().map(|r| (r.leader(), r.poly.rank(), r.kind)).collect()
    }
}

impl<V: RankedVar> PartialOrd for SimpleSystem<V> {
    fn partial_cmp(&self, other: &Self) -> Option<CmpOrdering> {
        Some(self.cmp(other))
    }
}

impl<V: RankedVar> Ord for SimpleSystem<V> {
    fn cmp(&self, other: &Self) -> CmpOrdering {
        self.shape().cmp(&other.shape()).then_with(|| self.relations.cmp(&other.relations))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    pub iterations: u64,
    pub splits: u64,
    pub discarded: u64,
}

#[derive(Clone, Debug)]
pub struct Decomposition<V: RankedVar> {
    pub systems: Vec<SimpleSystem<V>>,
    pub stats: Stats,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecomposeError {
    /// The iteration budget ran out before the loop finished.
    IterationBudget(u64),
    Split(SplitError),
    ThreadPool(String),
}

impl fmt::Display for DecomposeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecomposeError::IterationBudget(n) => write!(f, "iteration budget of {n} exhausted"),
            DecomposeError::Split(e) => write!(f, "{e}"),
            DecomposeError::ThreadPool(e) => write!(f, "cannot start worker pool: {e}"),
        }
    }
}

impl std::error::Error for DecomposeError {}

impl From<SplitError> for DecomposeError {
    fn from(e: SplitError) -> Self {
        DecomposeError::Split(e)
    }
}

impl From<SubresError> for DecomposeError {
    fn from(e: SubresError) -> Self {
        DecomposeError::Split(SplitError::Subresultant(e))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    DiscardSystem,
    DropRelation,
    Process,
}

/// Classifies a reduced relation: contradictions end the system, tautologies
/// are dropped.
pub fn is_consistent_relation<V: RankedVar>(q: &Relation<V>) -> Verdict {
    if q.is_contradiction() {
        Verdict::DiscardSystem
    } else if q.is_tautology() {
        Verdict::DropRelation
    } else {
        Verdict::Process
    }
}

/// Distinct non-constant factors found by content extraction and square-free
/// decomposition over ℚ.
pub fn rational_factors<V: RankedVar>(p: &Poly<V>) -> Vec<Poly<V>> {
    let Some(x) = p.leader().cloned() else {
        return Vec::new();
    };
    let mut out = rational_factors(&content(p, &x));
    let pp = content_free(p, &x);
    for f in squarefree_factors(&pp, &x) {
        if !out.contains(&f) {
            out.push(f);
        }
    }
    out
}

fn squarefree_factors<V: RankedVar>(a: &Poly<V>, x: &V) -> Vec<Poly<V>> {
    let b = a.derive(x);
    let c = gcd(a, &b);
    if c.is_constant() {
        return vec![a.normalized()];
    }
    let mut out = Vec::new();
    let mut w = div_exact(a, &c).expect("gcd divides");
    let mut z = &div_exact(&b, &c).expect("gcd divides") - &w.derive(x);
    while !w.is_constant() {
        let g = gcd(&w, &z);
        w = div_exact(&w, &g).expect("gcd divides");
        let y = div_exact(&z, &g).expect("gcd divides");
        z = &y - &w.derive(x);
        if !g.is_constant() {
            out.push(g.normalized());
        }
    }
    out
}

/// Splits a system on the factors of a product relation. `None` if the
/// polynomial has no nontrivial factorization found by [`rational_factors`].
pub fn factor_split<V: RankedVar, X: Clone>(s: &System<V, X>, q: &Relation<V>) -> Option<Vec<System<V, X>>> {
    let factors = rational_factors(&q.poly);
    if factors.len() == 1 && factors[0] == q.poly.normalized() || factors.is_empty() {
        return None;
    }
    Some(match q.kind {
        Kind::Inequation => {
            let mut t = s.clone();
            for f in factors {
                t.push_ne(f);
            }
            vec![t]
        }
        Kind::Equation => (0..factors.len())
            .map(|j| {
                let mut t = s.clone();
                for f in &factors[..j] {
                    t.push_ne(f.clone());
                }
                t.push_eq(factors[j].clone());
                t
            })
            .collect(),
    })
}

struct Ctx<V: RankedVar, X> {
    iterations: AtomicU64,
    splits: AtomicU64,
    discarded: AtomicU64,
    stop: AtomicBool,
    results: Mutex<Vec<System<V, X>>>,
    error: Mutex<Option<DecomposeError>>,
}

enum Step<V: RankedVar, X> {
    Done(System<V, X>),
    Continue { main: Option<System<V, X>>, side: Vec<System<V, X>> },
}

/// Thomas decomposition of `s0` (whose `T` must be empty).
pub fn decompose<E: Engine>(eng: &E, s0: System<E::V, E::Ext>) -> Result<Decomposition<E::V>, DecomposeError> {
    let ctx = Ctx {
        iterations: AtomicU64::new(0),
        splits: AtomicU64::new(0),
        discarded: AtomicU64::new(0),
        stop: AtomicBool::new(false),
        results: Mutex::new(Vec::new()),
        error: Mutex::new(None),
    };
    let jobs = eng.options().jobs.max(1);
    if jobs == 1 {
        run_stack(eng, &ctx, vec![s0], &mut |s| s);
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| DecomposeError::ThreadPool(e.to_string()))?;
        pool.scope(|scope| spawn(scope, eng, &ctx, s0));
    }
    if let Some(e) = ctx.error.into_inner().unwrap() {
        return Err(e);
    }
    let mut systems: Vec<_> = ctx.results.into_inner().unwrap().iter().map(|s| finalize(eng, s)).collect();
    systems.sort();
    Ok(Decomposition {
        systems,
        stats: Stats {
            iterations: ctx.iterations.into_inner(),
            splits: ctx.splits.into_inner(),
            discarded: ctx.discarded.into_inner(),
        },
    })
}

fn spawn<'s, E: Engine>(scope: &rayon::Scope<'s>, eng: &'s E, ctx: &'s Ctx<E::V, E::Ext>, s: System<E::V, E::Ext>) {
    scope.spawn(move |scope| {
        run_stack(eng, ctx, vec![s], &mut |side| {
            spawn(scope, eng, ctx, side);
            None
        })
    });
}

/// Depth-first processing of a local stack. `offload` may take a side branch
/// away (returning `None`) or hand it back to be pushed locally.
fn run_stack<E, F, R>(eng: &E, ctx: &Ctx<E::V, E::Ext>, mut stack: Vec<System<E::V, E::Ext>>, offload: &mut F)
where
    E: Engine,
    F: FnMut(System<E::V, E::Ext>) -> R,
    R: Into<Option<System<E::V, E::Ext>>>,
{
    while let Some(s) = stack.pop() {
        if ctx.stop.load(Ordering::Relaxed) {
            return;
        }
        match step(eng, ctx, s) {
            Ok(Step::Done(s)) => ctx.results.lock().unwrap().push(s),
            Ok(Step::Continue { main, side }) => {
                for b in side {
                    if let Some(b) = offload(b).into() {
                        stack.push(b);
                    }
                }
                stack.extend(main);
            }
            Err(e) => {
                ctx.stop.store(true, Ordering::Relaxed);
                ctx.error.lock().unwrap().get_or_insert(e);
                return;
            }
        }
    }
}

fn step<E: Engine>(eng: &E, ctx: &Ctx<E::V, E::Ext>, mut s: System<E::V, E::Ext>) -> Result<Step<E::V, E::Ext>, DecomposeError> {
    if s.q.is_empty() {
        return Ok(Step::Done(s));
    }
    let budget = eng.options().max_iterations;
    if ctx.iterations.fetch_add(1, Ordering::Relaxed) >= budget {
        return Err(DecomposeError::IterationBudget(budget));
    }
    let picked = algsys::select(&s.q).expect("queue is nonempty");
    s.q.remove(&picked);
    let q = Relation::new(eng.reduce(&s, &picked.poly), picked.kind);
    match is_consistent_relation(&q) {
        Verdict::DiscardSystem => {
            ctx.discarded.fetch_add(1, Ordering::Relaxed);
            return Ok(Step::Continue { main: None, side: Vec::new() });
        }
        Verdict::DropRelation => return Ok(Step::Continue { main: Some(s), side: Vec::new() }),
        Verdict::Process => {}
    }
    let x = q.leader().cloned().expect("processed relations are not constant");
    if eng.options().factor {
        if let Some(branches) = factor_split(&s, &q) {
            return Ok(Step::Continue { main: None, side: keep_consistent(ctx, branches) });
        }
    }

    let mut side = Vec::new();
    let mut main = Some(s);
    let s = main.as_mut().unwrap();
    match (q.kind, s.t.get(&x).map(|r| r.kind)) {
        (Kind::Equation, Some(Kind::Equation)) => {
            let t = s.equation(&x).unwrap().clone();
            let r0 = eng.prs_cache().get(&t, &q.poly, &x)?.res(0)?;
            if eng.reduce(s, &r0).is_zero() {
                let out = res_split_gcd(eng, s, &q.poly)?;
                side.extend(out.other);
                *s = out.kept;
                if !insert(eng, s, &out.extra.unwrap(), &x) {
                    main = None;
                }
            } else {
                s.push(q.clone());
                s.push_eq(r0);
            }
        }
        (Kind::Equation, previous) => {
            if previous == Some(Kind::Inequation) {
                let r = s.t.remove(&x).unwrap();
                s.push(r);
            }
            let (s1, s2) = init_split(s, &q);
            side.push(s2);
            *s = s1;
            let p = content_free(&q.poly, &x);
            let out = res_split_squarefree(eng, s, &p, Kind::Equation)?;
            side.extend(out.other);
            *s = out.kept;
            if !insert(eng, s, &out.extra.unwrap(), &x) {
                main = None;
            }
        }
        (Kind::Inequation, Some(Kind::Equation)) => {
            let t = s.equation(&x).unwrap().clone();
            let out = res_split_divide(eng, s, &t, &q.poly, Kind::Inequation)?;
            side.extend(out.other);
            *s = out.kept;
            if !insert(eng, s, &out.extra.unwrap(), &x) {
                main = None;
            }
        }
        (Kind::Inequation, previous) => {
            let (s1, s5) = init_split(s, &q);
            side.push(s5);
            *s = s1;
            let p = content_free(&q.poly, &x);
            let out = res_split_squarefree(eng, s, &p, Kind::Inequation)?;
            side.extend(out.other);
            *s = out.kept;
            let p = content_free(&out.extra.unwrap(), &x);
            if previous == Some(Kind::Inequation) {
                let t = s.t[&x].poly.clone();
                let out = res_split_divide(eng, s, &t, &p, Kind::Inequation)?;
                side.extend(out.other);
                *s = out.kept;
                let lcm = &out.extra.unwrap() * &p;
                s.t.insert(x.clone(), Relation::ne(content_free(&lcm, &x)));
            } else {
                s.t.insert(x.clone(), Relation::ne(p));
            }
        }
    }
    if main.is_none() {
        ctx.discarded.fetch_add(1, Ordering::Relaxed);
    }
    Ok(Step::Continue { main, side: keep_consistent(ctx, side) })
}

/// Inserts a conditional gcd, quotient or square-free part. A constant means
/// the system has no solutions.
fn insert<E: Engine>(eng: &E, s: &mut System<E::V, E::Ext>, p: &Poly<E::V>, x: &E::V) -> bool {
    if p.leader() != Some(x) {
        return false;
    }
    eng.insert_equation(s, content_free(p, x));
    true
}

fn keep_consistent<V: RankedVar, X>(ctx: &Ctx<V, X>, systems: Vec<System<V, X>>) -> Vec<System<V, X>> {
    let n = systems.len() as u64;
    let kept: Vec<_> = systems.into_iter().filter(|s| !s.has_contradiction()).collect();
    ctx.splits.fetch_add(n, Ordering::Relaxed);
    ctx.discarded.fetch_add(n - kept.len() as u64, Ordering::Relaxed);
    kept
}

/// Canonical output form: relations rewritten modulo lower equations, made
/// content free and sorted by leader.
pub fn finalize<E: Engine>(eng: &E, s: &System<E::V, E::Ext>) -> SimpleSystem<E::V> {
    let relations = s
        .t
        .iter()
        .map(|(x, r)| {
            let p = eng.tail_reduce(s, &r.poly);
            Relation::new(content_free(&p, x).normalized(), r.kind)
        })
        .collect();
    SimpleSystem { relations }
}
