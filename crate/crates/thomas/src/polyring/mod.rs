//! Sparse multivariate polynomials over ℚ with ranking-aware structure.
//!
//! A polynomial is a map from monomials to nonzero rational coefficients.
//! Monomials store only the variables that occur, sorted from the largest
//! variable (w.r.t. the ranking) downwards, so the ranking is simply the
//! `Ord` of the variable type. Under the induced lexicographic order the
//! largest monomial starts with the leader raised to the rank.

mod division;
mod gcd;
mod monomial;
mod ops;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::hash::Hash;

pub use division::{div_exact, prem, prem_classical, prem_pquo, pquo, PseudoDivision};
pub use gcd::{content, content_free, gcd, primitive_part};
pub use monomial::Monomial;

pub type Rational = BigRational;

/// Anything usable as a polynomial variable. The `Ord` implementation is the ranking.
pub trait RankedVar: Ord + Clone + Eq + Hash + fmt::Debug + Send + Sync + 'static {}
impl<T: Ord + Clone + Eq + Hash + fmt::Debug + Send + Sync + 'static> RankedVar for T {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyError {
    /// The divisor does not contain the division variable.
    NotInDivisor(String),
    /// An evaluation point lacks a value for a variable that must be substituted.
    MissingAssignment(String),
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::NotInDivisor(v) => write!(f, "divisor has degree 0 in {v}"),
            PolyError::MissingAssignment(v) => write!(f, "no value assigned to {v}"),
        }
    }
}

impl std::error::Error for PolyError {}

// =============================================================================
// Rankings of algebraic variables
// =============================================================================

/// An algebraic variable, identified by its position in the ascending ranking.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Variable(pub u32);

/// Ascending list of variable names; `Variable(i)` is the i-th entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ranking {
    names: Vec<String>,
    lookup: HashMap<String, u32>,
}

impl Ranking {
    pub fn new<S: AsRef<str>>(ascending: &[S]) -> Result<Self, String> {
        let mut lookup = HashMap::new();
        let mut names = Vec::with_capacity(ascending.len());
        for (i, n) in ascending.iter().enumerate() {
            let n = n.as_ref().to_string();
            if lookup.insert(n.clone(), i as u32).is_some() {
                return Err(format!("variable {n} listed twice in ranking"));
            }
            names.push(n);
        }
        Ok(Ranking { names, lookup })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn var(&self, name: &str) -> Option<Variable> {
        self.lookup.get(name).map(|&i| Variable(i))
    }

    pub fn name(&self, v: Variable) -> &str {
        &self.names[v.0 as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn variables(&self) -> impl Iterator<Item = Variable> + '_ {
        (0..self.names.len() as u32).map(Variable)
    }
}

// =============================================================================
// Polynomials
// =============================================================================

/// Leader, rank and initial of a polynomial. `leader == None` is the constant symbol 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Head<V: RankedVar> {
    pub leader: Option<V>,
    pub rank: u32,
    pub initial: Poly<V>,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly<V: RankedVar> {
    terms: BTreeMap<Monomial<V>, Rational>,
}

impl<V: RankedVar> Default for Poly<V> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<V: RankedVar> Poly<V> {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Poly { terms }
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(Rational::from_integer(BigInt::from(c)))
    }

    pub fn var(v: V) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: V, e: u32) -> Self {
        Self::term(Rational::one(), Monomial::var_pow(v, e))
    }

    pub fn term(c: Rational, m: Monomial<V>) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (Monomial<V>, Rational)>>(it: I) -> Self {
        let mut p = Poly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, m: Monomial<V>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.constant_value().is_some_and(|c| c.is_one())
    }

    /// True for elements of ℚ, including zero.
    pub fn is_constant(&self) -> bool {
        match self.terms.len() {
            0 => true,
            1 => self.terms.keys().next().unwrap().is_one(),
            _ => false,
        }
    }

    /// The value of a constant polynomial.
    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial<V>, &Rational)> {
        self.terms.iter()
    }

    /// Terms from the largest monomial to the smallest.
    pub fn terms_desc(&self) -> impl Iterator<Item = (&Monomial<V>, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn leading_term(&self) -> Option<(&Monomial<V>, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Coefficient of the largest monomial; the leading coefficient of the initial chain.
    pub fn leading_coefficient(&self) -> Rational {
        self.leading_term().map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero)
    }

    pub fn leader(&self) -> Option<&V> {
        self.leading_term().and_then(|(m, _)| m.first().map(|(v, _)| v))
    }

    pub fn rank(&self) -> u32 {
        self.leading_term().and_then(|(m, _)| m.first().map(|&(_, e)| e)).unwrap_or(0)
    }

    pub fn head(&self) -> Head<V> {
        match self.leader() {
            None => Head { leader: None, rank: 0, initial: self.clone() },
            Some(x) => {
                let x = x.clone();
                let rank = self.rank();
                let initial = self.coeff(&x, rank);
                Head { leader: Some(x), rank, initial }
            }
        }
    }

    pub fn initial(&self) -> Poly<V> {
        match self.leader() {
            None => self.clone(),
            Some(x) => self.coeff(&x.clone(), self.rank()),
        }
    }

    /// `p − init(p)·ld(p)^rank(p)`.
    pub fn tail(&self) -> Poly<V> {
        match self.leader() {
            None => Poly::zero(),
            Some(x) => {
                let (x, r) = (x.clone(), self.rank());
                Poly {
                    terms: self
                        .terms
                        .iter()
                        .filter(|(m, _)| m.degree(&x) != r)
                        .map(|(m, c)| (m.clone(), c.clone()))
                        .collect(),
                }
            }
        }
    }

    pub fn degree(&self, x: &V) -> u32 {
        self.terms.keys().map(|m| m.degree(x)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0)
    }

    pub fn contains(&self, x: &V) -> bool {
        self.terms.keys().any(|m| m.degree(x) > 0)
    }

    pub fn vars(&self) -> BTreeSet<V> {
        self.terms.keys().flat_map(|m| m.iter().map(|(v, _)| v.clone())).collect()
    }

    /// Coefficient of `x^k`, as a polynomial free of `x`.
    pub fn coeff(&self, x: &V, k: u32) -> Poly<V> {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree(x) == k)
                .map(|(m, c)| (m.without(x), c.clone()))
                .collect(),
        }
    }

    /// Dense coefficient list in `x`: entry k is the coefficient of `x^k`.
    pub fn coeffs(&self, x: &V) -> Vec<Poly<V>> {
        let mut out = vec![Poly::zero(); self.degree(x) as usize + 1];
        for (m, c) in &self.terms {
            let k = m.degree(x) as usize;
            out[k].terms.insert(m.without(x), c.clone());
        }
        out
    }

    /// Inverse of [`Poly::coeffs`]; the coefficients must be free of `x`.
    pub fn from_coeffs(x: &V, coeffs: &[Poly<V>]) -> Self {
        let mut p = Poly::zero();
        for (k, c) in coeffs.iter().enumerate() {
            for (m, a) in &c.terms {
                p.terms.insert(m.times_var_pow(x, k as u32), a.clone());
            }
        }
        p
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial<V>, c: &Rational) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(n, a)| (n.mul(m), a * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Formal partial derivative with respect to `x`.
    pub fn derive(&self, x: &V) -> Self {
        let mut p = Poly::zero();
        for (m, c) in &self.terms {
            let d = m.degree(x);
            if d > 0 {
                let coef = c * Rational::from_integer(BigInt::from(d));
                p.add_term(m.with_degree(x, d - 1), coef);
            }
        }
        p
    }

    /// Substitutes every variable below `below` (all variables if `None`) using `a`.
    pub fn evaluate(&self, a: &BTreeMap<V, Rational>, below: Option<&V>) -> Result<Self, PolyError> {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut coef = c.clone();
            let mut kept = Vec::new();
            for (v, e) in m.iter() {
                if below.is_none_or(|b| v < b) {
                    let val = a.get(v).ok_or_else(|| PolyError::MissingAssignment(format!("{v:?}")))?;
                    coef *= num_traits::pow(val.clone(), *e as usize);
                } else {
                    kept.push((v.clone(), *e));
                }
            }
            out.add_term(Monomial::from_sorted(kept), coef);
        }
        Ok(out)
    }

    /// Renames variables; `f` need not preserve the order.
    pub fn map_vars<W: RankedVar>(&self, f: impl Fn(&V) -> W) -> Poly<W> {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            out.add_term(Monomial::from_unsorted(m.iter().map(|(v, e)| (f(v), *e))), c.clone());
        }
        out
    }

    /// Replaces `x` by the polynomial `s`.
    pub fn substitute(&self, x: &V, s: &Poly<V>) -> Self {
        let coeffs = self.coeffs(x);
        let mut acc = Poly::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * s) + c;
        }
        acc
    }

    /// Positive rational `c` with `self / c` having coprime integer coefficients.
    pub fn rational_content(&self) -> Rational {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            return Rational::one();
        }
        Rational::new(num, den)
    }

    /// Canonical associate: coprime integer coefficients, positive leading coefficient.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.rational_content();
        if self.leading_coefficient().is_negative() {
            c = -c;
        }
        let inv = c.recip();
        self.scale(&inv)
    }

    /// Whether every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }
}

impl<V: RankedVar> fmt::Debug for Poly<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms_desc() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for (v, e) in m.iter() {
                write!(f, "*{v:?}^{e}")?;
            }
        }
        Ok(())
    }
}
