use super::RankedVar;
use smallvec::SmallVec;
use std::cmp::Ordering;

/// Power product stored as `(variable, exponent)` pairs, largest variable first,
/// exponents positive. Ordered lexicographically with the largest variable most
/// significant.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial<V: RankedVar>(SmallVec<[(V, u32); 4]>);

impl<V: RankedVar> Monomial<V> {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var_pow(v: V, e: u32) -> Self {
        let mut s = SmallVec::new();
        if e > 0 {
            s.push((v, e));
        }
        Monomial(s)
    }

    /// From pairs already sorted descending with distinct variables.
    pub fn from_sorted(pairs: Vec<(V, u32)>) -> Self {
        debug_assert!(pairs.windows(2).all(|w| w[0].0 > w[1].0));
        Monomial(pairs.into_iter().filter(|(_, e)| *e > 0).collect())
    }

    pub fn from_unsorted<I: IntoIterator<Item = (V, u32)>>(pairs: I) -> Self {
        let mut v: Vec<(V, u32)> = pairs.into_iter().filter(|(_, e)| *e > 0).collect();
        v.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: SmallVec<[(V, u32); 4]> = SmallVec::new();
        for (x, e) in v {
            match out.last_mut() {
                Some((y, f)) if *y == x => *f += e,
                _ => out.push((x, e)),
            }
        }
        Monomial(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<&(V, u32)> {
        self.0.first()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(V, u32)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self, x: &V) -> u32 {
        self.0.iter().find(|(v, _)| v == x).map(|&(_, e)| e).unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn without(&self, x: &V) -> Self {
        Monomial(self.0.iter().filter(|(v, _)| v != x).cloned().collect())
    }

    pub fn with_degree(&self, x: &V, e: u32) -> Self {
        let mut out: SmallVec<[(V, u32); 4]> = SmallVec::new();
        let mut placed = e == 0;
        for (v, f) in &self.0 {
            if v == x {
                continue;
            }
            if !placed && *v < *x {
                out.push((x.clone(), e));
                placed = true;
            }
            out.push((v.clone(), *f));
        }
        if !placed {
            out.push((x.clone(), e));
        }
        Monomial(out)
    }

    pub fn times_var_pow(&self, x: &V, e: u32) -> Self {
        if e == 0 {
            return self.clone();
        }
        self.with_degree(x, self.degree(x) + e)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = (&self.0, &other.0);
        let mut out: SmallVec<[(V, u32); 4]> = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0.clone(), a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().cloned());
        Monomial(out)
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Self) -> Option<Self> {
        let mut out: SmallVec<[(V, u32); 4]> = SmallVec::new();
        let mut j = 0;
        for (v, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 > *v {
                return None;
            }
            if j < other.0.len() && other.0[j].0 == *v {
                let f = other.0[j].1;
                if f > *e {
                    return None;
                }
                if f < *e {
                    out.push((v.clone(), e - f));
                }
                j += 1;
            } else {
                out.push((v.clone(), *e));
            }
        }
        (j == other.0.len()).then_some(Monomial(out))
    }
}

impl<V: RankedVar> PartialOrd for Monomial<V> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<V: RankedVar> Ord for Monomial<V> {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            match a.0.cmp(&b.0) {
                Ordering::Equal => match a.1.cmp(&b.1) {
                    Ordering::Equal => continue,
                    o => return o,
                },
                o => return o,
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}
