//! Regular subresultants and the `res_i` coefficients.
//!
//! The chain is computed with the structure theorem: from a regular `S_d` and
//! the next nonzero `S_{d-1}` of degree `e`, the regular `S_e` follows by
//! Lazard's scaling and `S_{e-1}` by one classical pseudo-remainder and an exact
//! division by a power of the principal coefficient of `S_d`.

use crate::polyring::{div_exact, prem_classical, Poly, RankedVar};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubresError {
    /// `deg_x(p) > deg_x(q)` does not hold.
    Degree { dp: u32, dq: u32 },
    /// `res_i` requested with `i > d_p`.
    Index { i: u32, dp: u32 },
}

impl fmt::Display for SubresError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubresError::Degree { dp, dq } => write!(f, "subresultants need deg p > deg q, got {dp} and {dq}"),
            SubresError::Index { i, dp } => write!(f, "res index {i} exceeds deg p = {dp}"),
        }
    }
}

impl std::error::Error for SubresError {}

/// The regular members of the subresultant sequence of `p` and `q` in `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubresultantSequence<V: RankedVar> {
    pub x: V,
    pub dp: u32,
    pub dq: u32,
    regular: BTreeMap<u32, Poly<V>>,
}

impl<V: RankedVar> SubresultantSequence<V> {
    /// `PRS_i`: the stored member of degree `i`, or zero.
    pub fn member(&self, i: u32) -> Poly<V> {
        self.regular.get(&i).cloned().unwrap_or_default()
    }

    pub fn regular(&self) -> &BTreeMap<u32, Poly<V>> {
        &self.regular
    }

    pub fn res(&self, i: u32) -> Result<Poly<V>, SubresError> {
        if i > self.dp {
            return Err(SubresError::Index { i, dp: self.dp });
        }
        if i == self.dp {
            return Ok(Poly::one());
        }
        Ok(match self.regular.get(&i) {
            None => Poly::zero(),
            Some(m) if i == 0 => m.clone(),
            Some(m) => m.coeff(&self.x, i),
        })
    }
}

/// Subresultant sequence of `p` and `q` with respect to `x`.
///
/// `q` may be free of `x` (including zero); then `PRS_0 = q` and no other
/// member below `d_p` exists.
pub fn prs<V: RankedVar>(p: &Poly<V>, q: &Poly<V>, x: &V) -> Result<SubresultantSequence<V>, SubresError> {
    let dp = p.degree(x);
    let dq = q.degree(x);
    if dp <= dq {
        return Err(SubresError::Degree { dp, dq });
    }
    let mut regular = BTreeMap::new();
    regular.insert(dp, p.clone());
    if q.is_zero() {
        return Ok(SubresultantSequence { x: x.clone(), dp, dq, regular });
    }
    regular.insert(dq, q.clone());
    if dq == 0 {
        return Ok(SubresultantSequence { x: x.clone(), dp, dq, regular });
    }

    let mut s_d = p.clone();
    let mut lead_d = Poly::one();
    let mut s_d1 = q.clone();
    let mut d = dp;
    let mut first = true;
    loop {
        let e = s_d1.degree(x);
        let delta = d - e;
        let s_e = if delta > 1 {
            let c = s_d1.coeff(x, e);
            let num = &c.pow(delta - 1) * &s_d1;
            div_exact(&num, &lead_d.pow(delta - 1)).expect("Lazard scaling is exact")
        } else {
            s_d1.clone()
        };
        if !first {
            regular.insert(e, s_e.clone());
        }
        first = false;
        if e == 0 {
            break;
        }
        let r = prem_classical(&s_d, &s_d1, x).expect("s_d1 has positive degree");
        if r.is_zero() {
            break;
        }
        let mut next = div_exact(&r, &lead_d.pow(delta + 1)).expect("subresultant division is exact");
        if (delta + 1) % 2 == 1 {
            next = -next;
        }
        lead_d = s_e.coeff(x, e);
        s_d = s_e;
        s_d1 = next;
        d = e;
    }
    Ok(SubresultantSequence { x: x.clone(), dp, dq, regular })
}

type PrsKey<V> = (Poly<V>, Poly<V>, V);

/// Memo of subresultant sequences keyed by `(p, q, x)`, shared between workers.
pub struct PrsCache<V: RankedVar> {
    map: Mutex<HashMap<PrsKey<V>, Arc<SubresultantSequence<V>>>>,
}

impl<V: RankedVar> Default for PrsCache<V> {
    fn default() -> Self {
        PrsCache { map: Mutex::new(HashMap::new()) }
    }
}

impl<V: RankedVar> PrsCache<V> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, p: &Poly<V>, q: &Poly<V>, x: &V) -> Result<Arc<SubresultantSequence<V>>, SubresError> {
        let key = (p.clone(), q.clone(), x.clone());
        if let Some(s) = self.map.lock().unwrap().get(&key) {
            return Ok(s.clone());
        }
        let seq = Arc::new(prs(p, q, x)?);
        let mut map = self.map.lock().unwrap();
        Ok(map.entry(key).or_insert(seq).clone())
    }

    pub fn len(&self) -> usize {
        self.map.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
