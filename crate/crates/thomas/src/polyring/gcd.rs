use super::{div_exact, prem, prem_classical, Poly, RankedVar, Rational};
use std::collections::BTreeMap;

/// Normalized greatest common divisor in ℚ[variables], computed recursively by
/// content / primitive-part splitting and subresultant remainder sequences.
pub fn gcd<V: RankedVar>(a: &Poly<V>, b: &Poly<V>) -> Poly<V> {
    if a.is_zero() {
        return b.normalized();
    }
    if b.is_zero() {
        return a.normalized();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    let x = std::cmp::max(a.leader().unwrap(), b.leader().unwrap()).clone();
    let (da, db) = (a.degree(&x), b.degree(&x));
    if da == 0 {
        return gcd(a, &content(b, &x));
    }
    if db == 0 {
        return gcd(&content(a, &x), b);
    }
    let ca = content(a, &x);
    let cb = content(b, &x);
    let gc = gcd(&ca, &cb);
    let mut u = div_exact(a, &ca).expect("content divides");
    let mut v = div_exact(b, &cb).expect("content divides");
    if u.degree(&x) < v.degree(&x) {
        std::mem::swap(&mut u, &mut v);
    }
    if coprime_by_specialization(&u, &v, &x) {
        return gc.normalized();
    }
    let mut g = Poly::one();
    let mut h = Poly::one();
    loop {
        let delta = u.degree(&x) - v.degree(&x);
        let r = prem_classical(&u, &v, &x).expect("v has positive degree");
        if r.is_zero() {
            break;
        }
        if r.degree(&x) == 0 {
            return gc.normalized();
        }
        let d = &g * &h.pow(delta);
        u = std::mem::replace(&mut v, div_exact(&r, &d).expect("subresultant division is exact"));
        g = u.coeff(&x, u.degree(&x));
        h = if delta == 0 {
            h
        } else {
            div_exact(&g.pow(delta), &h.pow(delta - 1)).expect("subresultant division is exact")
        };
    }
    (&primitive_part(&v, &x) * &gc).normalized()
}

/// Sufficient test for `gcd(u, v)` being free of `x`: the specialized gcd at
/// a point where both leading coefficients survive has degree 0 in `x`.
fn coprime_by_specialization<V: RankedVar>(u: &Poly<V>, v: &Poly<V>, x: &V) -> bool {
    let others: Vec<V> = u.vars().union(&v.vars()).filter(|y| *y != x).cloned().collect();
    if others.is_empty() {
        return false;
    }
    let (lu, lv) = (u.coeff(x, u.degree(x)), v.coeff(x, v.degree(x)));
    for attempt in 0..3i64 {
        let point: BTreeMap<V, Rational> = others
            .iter()
            .enumerate()
            .map(|(k, y)| (y.clone(), Rational::from_integer((3 + 7 * attempt + 11 * k as i64 * (attempt + 1)).into())))
            .collect();
        let eval = |p: &Poly<V>| p.evaluate(&point, Some(x)).expect("all variables are assigned");
        if eval(&lu).is_zero() || eval(&lv).is_zero() {
            continue;
        }
        let mut a = eval(u);
        let mut b = eval(v);
        while !b.is_zero() {
            if b.degree(x) == 0 {
                return true;
            }
            let r = prem(&a, &b, x).expect("b has positive degree");
            a = b;
            b = r.normalized();
        }
        return false;
    }
    false
}

/// Gcd of the coefficients of `p` viewed as a univariate polynomial in `x`.
pub fn content<V: RankedVar>(p: &Poly<V>, x: &V) -> Poly<V> {
    let mut g = Poly::zero();
    for c in p.coeffs(x).iter().rev() {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

pub fn primitive_part<V: RankedVar>(p: &Poly<V>, x: &V) -> Poly<V> {
    if p.is_zero() {
        return p.clone();
    }
    let c = content(p, x);
    div_exact(p, &c).expect("content divides").normalized()
}

/// `p` divided by its content in `x` and by its rational content, sign-normalized.
pub fn content_free<V: RankedVar>(p: &Poly<V>, x: &V) -> Poly<V> {
    primitive_part(p, x)
}
