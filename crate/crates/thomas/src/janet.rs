//! Jet variables, differential rankings and the combinatorics of Janet
//! division.

use crate::polyring::Poly;
use smallvec::SmallVec;
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

pub type MultiIndex = SmallVec<[u32; 3]>;

/// Set of admissible derivations; bit `k` stands for the `(k+1)`-th derivation.
pub type Mask = u32;

/// The derivative `u_i` of a differential indeterminate. The ranking data
/// (`block`, `prio`) travels with the variable so that `Ord` is the ranking.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Jet {
    pub indet: u32,
    pub index: MultiIndex,
    block: u32,
    prio: u32,
}

impl Jet {
    /// Total derivation order `|i|`.
    pub fn order(&self) -> u32 {
        self.index.iter().sum()
    }

    pub fn derive(&self, k: usize) -> Jet {
        let mut j = self.clone();
        j.index[k] += 1;
        j
    }

    pub fn derive_by(&self, k: &[u32]) -> Jet {
        let mut j = self.clone();
        for (a, b) in j.index.iter_mut().zip(k) {
            *a += b;
        }
        j
    }

    /// `k` with `∂^k self = v`, if `v` is a derivative of `self`.
    pub fn divides(&self, v: &Jet) -> Option<MultiIndex> {
        if self.indet != v.indet {
            return None;
        }
        self.index.iter().zip(&v.index).map(|(a, b)| b.checked_sub(*a)).collect()
    }
}

impl Ord for Jet {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.block, self.order(), self.prio, &self.index, self.indet).cmp(&(
            other.block,
            other.order(),
            other.prio,
            &other.index,
            other.indet,
        ))
    }
}

impl PartialOrd for Jet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "u{}{:?}", self.indet, self.index.as_slice())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankingKind {
    Orderly,
    Elimination,
}

/// A ranking on the jets of named indeterminates with `n` derivations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffRanking {
    n: usize,
    kind: RankingKind,
    names: Vec<String>,
    keys: Vec<(u32, u32)>,
}

impl DiffRanking {
    /// Orderly ranking: derivation order first, then indeterminate priority
    /// (`priority` lists the highest first), then the multi-index.
    pub fn orderly<S: AsRef<str>>(n: usize, priority: &[S]) -> Result<Self, String> {
        let m = priority.len() as u32;
        let keys = (0..m).map(|i| (0, m - 1 - i)).collect();
        Self::build(n, RankingKind::Orderly, priority.iter().map(|s| s.as_ref().to_string()).collect(), keys)
    }

    /// Elimination ranking: every jet of an earlier block ranks above every
    /// jet of a later one; orderly inside a block.
    pub fn elimination<S: AsRef<str>>(n: usize, blocks: &[Vec<S>]) -> Result<Self, String> {
        let nb = blocks.len() as u32;
        let mut names = Vec::new();
        let mut keys = Vec::new();
        for (b, block) in blocks.iter().enumerate() {
            let m = block.len() as u32;
            for (i, s) in block.iter().enumerate() {
                names.push(s.as_ref().to_string());
                keys.push((nb - 1 - b as u32, m - 1 - i as u32));
            }
        }
        Self::build(n, RankingKind::Elimination, names, keys)
    }

    fn build(n: usize, kind: RankingKind, names: Vec<String>, keys: Vec<(u32, u32)>) -> Result<Self, String> {
        if n == 0 || n > Mask::BITS as usize {
            return Err(format!("number of derivations must be between 1 and {}", Mask::BITS));
        }
        let mut seen = BTreeSet::new();
        for s in &names {
            if !seen.insert(s) {
                return Err(format!("indeterminate {s} listed twice"));
            }
        }
        Ok(DiffRanking { n, kind, names, keys })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> RankingKind {
        self.kind
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, indet: u32) -> &str {
        &self.names[indet as usize]
    }

    pub fn indeterminate(&self, name: &str) -> Option<u32> {
        self.names.iter().position(|s| s == name).map(|i| i as u32)
    }

    /// Indeterminates from the lowest-ranked block upwards.
    pub fn blocks(&self) -> Vec<Vec<u32>> {
        let mut by: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
        for (i, (b, _)) in self.keys.iter().enumerate() {
            by.entry(*b).or_default().push(i as u32);
        }
        by.into_values().collect()
    }

    pub fn block_of(&self, indet: u32) -> u32 {
        self.keys[indet as usize].0
    }

    pub fn jet(&self, indet: u32, index: &[u32]) -> Jet {
        assert_eq!(index.len(), self.n, "multi-index arity");
        let (block, prio) = self.keys[indet as usize];
        Jet { indet, index: index.into(), block, prio }
    }

    /// The indeterminate itself, `u_(0,…,0)`.
    pub fn base(&self, indet: u32) -> Jet {
        self.jet(indet, &vec![0; self.n])
    }

    pub fn format_jet(&self, j: &Jet) -> String {
        let name = self.name(j.indet);
        if j.order() == 0 {
            name.to_string()
        } else {
            let idx: Vec<String> = j.index.iter().map(|i| i.to_string()).collect();
            format!("{name}[{}]", idx.join(","))
        }
    }
}

/// Janet's rule: `∂_l` is admissible for `w` iff `w`'s `l`-th index is maximal
/// among the members of the same indeterminate agreeing with `w` on the
/// indices before `l`.
pub fn assign_admissible<'a, I: IntoIterator<Item = &'a Jet>>(w: I) -> BTreeMap<Jet, Mask> {
    let jets: BTreeSet<&Jet> = w.into_iter().collect();
    let mut max: HashMap<(u32, &[u32]), u32> = HashMap::new();
    for j in &jets {
        for l in 0..j.index.len() {
            let e = max.entry((j.indet, &j.index[..l])).or_insert(0);
            *e = (*e).max(j.index[l]);
        }
    }
    jets.iter()
        .map(|j| {
            let mask = (0..j.index.len())
                .filter(|&l| max[&(j.indet, &j.index[..l])] == j.index[l])
                .fold(0, |m, l| m | 1 << l);
            ((*j).clone(), mask)
        })
        .collect()
}

/// `k` with `∂^k w = v` using admissible derivations only.
pub fn in_cone(w: &Jet, mask: Mask, v: &Jet) -> Option<MultiIndex> {
    let k = w.divides(v)?;
    k.iter().enumerate().all(|(l, &e)| e == 0 || mask & (1 << l) != 0).then_some(k)
}

/// Non-admissible prolongations `∂_k w` of the cone assignment.
pub fn non_admissible(cones: &BTreeMap<Jet, Mask>) -> Vec<(Jet, usize)> {
    cones
        .iter()
        .flat_map(|(w, m)| (0..w.index.len()).filter(move |l| m & (1 << l) == 0).map(move |l| (w.clone(), l)))
        .collect()
}

pub fn covered(cones: &BTreeMap<Jet, Mask>, v: &Jet) -> bool {
    cones.iter().any(|(w, m)| in_cone(w, *m, v).is_some())
}

/// Janet completion: adjoin the smallest uncovered non-admissible prolongation
/// until the cones cover the full derivative closure.
pub fn complete<'a, I: IntoIterator<Item = &'a Jet>>(w: I) -> BTreeSet<Jet> {
    let mut set: BTreeSet<Jet> = w.into_iter().cloned().collect();
    loop {
        let cones = assign_admissible(&set);
        let missing =
            non_admissible(&cones).into_iter().map(|(w, l)| w.derive(l)).filter(|v| !covered(&cones, v)).min();
        match missing {
            Some(v) => {
                set.insert(v);
            }
            None => return set,
        }
    }
}

/// The equation of `t` whose admissible prolongation has leader `x` and rank at
/// most `rank`, with the derivation multi-index.
pub fn janet_divisor<'a, I>(x: &Jet, rank: u32, t: I) -> Option<(&'a Poly<Jet>, MultiIndex)>
where
    I: IntoIterator<Item = (&'a Poly<Jet>, Mask)>,
{
    t.into_iter().find_map(|(p, mask)| {
        let k = in_cone(p.leader()?, mask, x)?;
        let proper = k.iter().any(|&e| e > 0);
        (proper || p.rank() <= rank).then_some((p, k))
    })
}

#[cfg(test)]
mod tests;
