use std::collections::BTreeSet;

use itertools::Itertools;
use serde::Serialize;

use crate::polytope::NormalMatrix;

/// Determinant cutoff for bases.
const BASIS_DET_TOL: f64 = 1e-9;

/// A closed column set together with its rank.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Flat {
    pub rank: usize,
    pub indices: Vec<usize>,
}

impl Flat {
    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }
}

/// Bases, flats, separators and irreducible blocks of `U`.
///
/// Flats and separators are sorted by `(rank, indices)`; this is the order in
/// which violations are reported by the SCC checks.
#[derive(Clone, Debug, Serialize)]
pub struct MatroidData {
    pub n: usize,
    pub m: usize,
    pub bases: Vec<Vec<usize>>,
    pub flats: Vec<Flat>,
    pub separators: Vec<Flat>,
    pub partition: Vec<Vec<usize>>,
}

impl MatroidData {
    pub fn new(u: &NormalMatrix) -> Self {
        let bases = enumerate_bases(u);
        let flats = enumerate_flats(u);
        let separators = enumerate_separators(u, &flats);
        let partition = partition_from_separators(u.len(), &separators);
        Self { n: u.dim(), m: u.len(), bases, flats, separators, partition }
    }

    /// Number of irreducible blocks.
    pub fn d(&self) -> usize {
        self.partition.len()
    }

    pub fn is_separator(&self, flat: &Flat) -> bool {
        self.separators.binary_search(flat).is_ok()
    }

    /// Characteristic 0/1 vector of a basis.
    pub fn chi(&self, basis: &[usize]) -> Vec<u8> {
        let mut v = vec![0; self.m];
        for &i in basis {
            v[i] = 1;
        }
        v
    }
}

/// All `n`-subsets with `|det U_S| > 1e-9`, in lexicographic order.
pub fn enumerate_bases(u: &NormalMatrix) -> Vec<Vec<usize>> {
    (0..u.len()).combinations(u.dim()).filter(|s| u.submatrix(s).determinant().abs() > BASIS_DET_TOL).collect()
}

/// Flats of the whole column set.
pub fn enumerate_flats(u: &NormalMatrix) -> Vec<Flat> {
    let all: Vec<usize> = (0..u.len()).collect();
    flats_of(u, &all)
}

/// Flats of the restriction to `ground`: closures within `ground` of subsets
/// whose rank lies strictly between 0 and the rank of `ground`.
pub fn flats_of(u: &NormalMatrix, ground: &[usize]) -> Vec<Flat> {
    let full = u.rank_of(ground);
    let mut out: BTreeSet<Flat> = BTreeSet::new();
    for k in 1..full {
        for subset in ground.iter().copied().combinations(k) {
            if u.rank_of(&subset) != k {
                continue;
            }
            out.insert(Flat { rank: k, indices: closure(u, ground, &subset, k) });
        }
    }
    out.into_iter().collect()
}

fn closure(u: &NormalMatrix, ground: &[usize], subset: &[usize], rank: usize) -> Vec<usize> {
    let mut idx = subset.to_vec();
    let mut out: Vec<usize> = ground
        .iter()
        .copied()
        .filter(|j| {
            if subset.contains(j) {
                return true;
            }
            idx.push(*j);
            let r = u.rank_of(&idx);
            idx.pop();
            r == rank
        })
        .collect();
    out.sort_unstable();
    out
}

/// Flats `S` with `rg(S) + rg(U \ S) = n`, i.e. `lin S` and `lin(U \ S)` are
/// complementary.
pub fn enumerate_separators(u: &NormalMatrix, flats: &[Flat]) -> Vec<Flat> {
    let all: Vec<usize> = (0..u.len()).collect();
    separators_within(u, &all, flats)
}

fn separators_within(u: &NormalMatrix, ground: &[usize], flats: &[Flat]) -> Vec<Flat> {
    let full = u.rank_of(ground);
    flats
        .iter()
        .filter(|f| {
            let rest: Vec<usize> = ground.iter().copied().filter(|i| !f.contains(*i)).collect();
            f.rank + u.rank_of(&rest) == full
        })
        .cloned()
        .collect()
}

/// The irreducible blocks `S_1, ..., S_d`, sorted by smallest index.
pub fn irreducible_partition(u: &NormalMatrix) -> Vec<Vec<usize>> {
    let seps = enumerate_separators(u, &enumerate_flats(u));
    partition_from_separators(u.len(), &seps)
}

/// Atoms of the Boolean algebra generated by the separators: two columns
/// share a block iff no separator tells them apart.
fn partition_from_separators(m: usize, seps: &[Flat]) -> Vec<Vec<usize>> {
    let mut blocks: Vec<(Vec<bool>, Vec<usize>)> = Vec::new();
    for i in 0..m {
        let sig: Vec<bool> = seps.iter().map(|s| s.contains(i)).collect();
        match blocks.iter_mut().find(|(s, _)| *s == sig) {
            Some((_, b)) => b.push(i),
            None => blocks.push((sig, vec![i])),
        }
    }
    blocks.into_iter().map(|(_, b)| b).collect()
}

/// True when `block` has no separator of its own.
pub fn block_is_irreducible(u: &NormalMatrix, block: &[usize]) -> bool {
    separators_within(u, block, &flats_of(u, block)).is_empty()
}

/// Bases of the restriction to `block` (subsets of size `rg(block)`).
pub fn block_bases(u: &NormalMatrix, block: &[usize]) -> Vec<Vec<usize>> {
    let r = u.rank_of(block);
    block.iter().copied().combinations(r).filter(|s| u.rank_of(s) == r).collect()
}
