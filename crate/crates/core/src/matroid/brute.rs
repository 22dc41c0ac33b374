use std::collections::BTreeMap;

use super::data::Flat;
use super::scc::{classify, validate_gamma, SccVerdict};
use super::{MatroidError, SCC_TOL};
use crate::polytope::NormalMatrix;

/// Independent SCC oracle.
///
/// Enumerates all `2^m` column subsets, takes the subspace `L` each one spans
/// and the set `S_L` of columns inside `L`. Equality `mu(L) = dim L / n` is
/// admissible only if the remaining columns span a complement of `L`, which
/// is tested directly by `rank(U \ S_L) = n - dim L`. For such `L` the same
/// condition on the complement forces equality, so any deviation is an
/// equality-case violation.
pub fn brute_force_scc(u: &NormalMatrix, gamma: &[f64]) -> Result<SccVerdict, MatroidError> {
    let (n, m) = (u.dim(), u.len());
    validate_gamma(m, gamma)?;
    let mut spaces: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for mask in 1u64..(1u64 << m) {
        let subset: Vec<usize> = (0..m).filter(|&i| mask >> i & 1 == 1).collect();
        let r = u.rank_of(&subset);
        if r == 0 || r >= n {
            continue;
        }
        let s_l: Vec<usize> = (0..m)
            .filter(|&i| {
                let mut ext = subset.clone();
                ext.push(i);
                u.rank_of(&ext) == r
            })
            .collect();
        spaces.insert(s_l, r);
    }
    let mut violations: Vec<(Flat, SccVerdict)> = spaces
        .into_iter()
        .filter_map(|(indices, rank)| {
            let rest: Vec<usize> = (0..m).filter(|i| !indices.contains(i)).collect();
            let complement = u.rank_of(&rest) == n - rank;
            let flat = Flat { rank, indices };
            classify(&flat, complement, n, gamma, SCC_TOL).map(|v| (flat, v))
        })
        .collect();
    violations.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(violations.into_iter().next().map(|(_, v)| v).unwrap_or(SccVerdict::Satisfies))
}
