use super::{Monomial, Poly, PolyError, RankedVar};

/// Result of a sparse pseudo-division: `m·p = pquo·q + prem`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudoDivision<V: RankedVar> {
    pub prem: Poly<V>,
    pub pquo: Poly<V>,
    pub m: Poly<V>,
    /// Number of steps that multiplied by `init(q)`; `m = init(q)^steps`.
    pub steps: u32,
}

fn trim<V: RankedVar>(c: &mut Vec<Poly<V>>) {
    while c.len() > 1 && c.last().is_some_and(|p| p.is_zero()) {
        c.pop();
    }
}

/// Sparse pseudo-division of `p` by `q` with respect to `x`.
///
/// `p` may contain variables above `x`; they are treated as coefficients.
pub fn prem_pquo<V: RankedVar>(p: &Poly<V>, q: &Poly<V>, x: &V) -> Result<PseudoDivision<V>, PolyError> {
    let dq = q.degree(x) as usize;
    if dq == 0 {
        return Err(PolyError::NotInDivisor(format!("{x:?}")));
    }
    let qc = q.coeffs(x);
    let iq = &qc[dq];
    let mut rc = p.coeffs(x);
    trim(&mut rc);
    if rc.len() <= dq || p.is_zero() {
        return Ok(PseudoDivision { prem: p.clone(), pquo: Poly::zero(), m: Poly::one(), steps: 0 });
    }
    let mut quo = vec![Poly::zero(); rc.len() - dq];
    let mut steps = 0;
    while rc.len() > dq {
        let k = rc.len() - 1;
        let shift = k - dq;
        // When init(q) divides the leading coefficient no multiplier is needed.
        let (lc, scaled) = match div_exact(&rc[k], iq) {
            Some(t) => (t, false),
            None => (rc[k].clone(), true),
        };
        for (j, r) in rc.iter_mut().enumerate().take(k) {
            if scaled {
                *r = iq * &*r;
            }
            if j >= shift {
                *r -= &(&lc * &qc[j - shift]);
            }
        }
        rc.pop();
        if scaled {
            for c in quo.iter_mut() {
                if !c.is_zero() {
                    *c = iq * &*c;
                }
            }
            steps += 1;
        }
        quo[shift] += &lc;
        trim(&mut rc);
    }
    Ok(PseudoDivision {
        prem: Poly::from_coeffs(x, &rc),
        pquo: Poly::from_coeffs(x, &quo),
        m: iq.pow(steps),
        steps,
    })
}

pub fn prem<V: RankedVar>(p: &Poly<V>, q: &Poly<V>, x: &V) -> Result<Poly<V>, PolyError> {
    prem_pquo(p, q, x).map(|d| d.prem)
}

pub fn pquo<V: RankedVar>(p: &Poly<V>, q: &Poly<V>, x: &V) -> Result<Poly<V>, PolyError> {
    prem_pquo(p, q, x).map(|d| d.pquo)
}

/// Classical pseudo-remainder with multiplier `init(q)^(deg p − deg q + 1)`.
pub fn prem_classical<V: RankedVar>(p: &Poly<V>, q: &Poly<V>, x: &V) -> Result<Poly<V>, PolyError> {
    let dp = p.degree(x);
    let dq = q.degree(x);
    let d = prem_pquo(p, q, x)?;
    if dp < dq {
        return Ok(d.prem);
    }
    let missing = dp - dq + 1 - d.steps;
    if missing == 0 {
        return Ok(d.prem);
    }
    Ok(&d.prem * &q.coeff(x, dq).pow(missing))
}

/// Exact quotient `p / d`, or `None` if `d` does not divide `p`.
pub fn div_exact<V: RankedVar>(p: &Poly<V>, d: &Poly<V>) -> Option<Poly<V>> {
    if d.is_zero() {
        return None;
    }
    if let Some(c) = d.constant_value() {
        return Some(p.scale(&c.recip()));
    }
    let (dm, dc) = d.leading_term().map(|(m, c)| (m.clone(), c.clone()))?;
    let mut r = p.clone();
    let mut q = Poly::zero();
    while let Some((rm, rc)) = r.leading_term() {
        let m: Monomial<V> = rm.div(&dm)?;
        let c = rc / &dc;
        r -= &d.mul_monomial(&m, &c);
        q.add_term(m, c);
    }
    Some(q)
}
