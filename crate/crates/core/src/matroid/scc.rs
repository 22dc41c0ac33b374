use serde::Serialize;

use super::data::{Flat, MatroidData};
use super::{MatroidError, SCC_TOL};
use crate::polytope::NormalMatrix;

/// Outcome of the subspace concentration test, with the offending flat.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum SccVerdict {
    Satisfies,
    /// `sum_S gamma > rg(S)/n`.
    ViolatesInequality {
        flat: Vec<usize>,
        rank: usize,
        sum: f64,
    },
    /// Equality on a non-separator, or inequality on a separator.
    ViolatesEqualityCase {
        flat: Vec<usize>,
        rank: usize,
        sum: f64,
    },
}

impl SccVerdict {
    pub fn is_satisfied(&self) -> bool {
        matches!(self, SccVerdict::Satisfies)
    }

    /// Same variant and same flat, ignoring the reported sums.
    pub fn same_as(&self, other: &SccVerdict) -> bool {
        use SccVerdict::*;
        match (self, other) {
            (Satisfies, Satisfies) => true,
            (ViolatesInequality { flat: a, .. }, ViolatesInequality { flat: b, .. })
            | (ViolatesEqualityCase { flat: a, .. }, ViolatesEqualityCase { flat: b, .. }) => a == b,
            _ => false,
        }
    }
}

/// Positivity and `sum = 1` checks shared by both SCC procedures.
pub fn validate_gamma(m: usize, gamma: &[f64]) -> Result<(), MatroidError> {
    if gamma.len() != m {
        return Err(MatroidError::DimensionMismatch { expected: m, found: gamma.len() });
    }
    if let Some((index, &value)) = gamma.iter().enumerate().find(|(_, &g)| !(g > 0.0)) {
        return Err(MatroidError::NotPositive { index, value });
    }
    let sum: f64 = gamma.iter().sum();
    if (sum - 1.0).abs() > SCC_TOL {
        return Err(MatroidError::NotNormalized { sum });
    }
    Ok(())
}

/// Classifies one flat; shared by the fast check and the brute-force oracle.
pub(crate) fn classify(flat: &Flat, separator: bool, n: usize, gamma: &[f64], tol: f64) -> Option<SccVerdict> {
    let sum: f64 = flat.indices.iter().map(|&i| gamma[i]).sum();
    let target = flat.rank as f64 / n as f64;
    let (flat, rank) = (flat.indices.clone(), flat.rank);
    if separator {
        ((sum - target).abs() > tol).then_some(SccVerdict::ViolatesEqualityCase { flat, rank, sum })
    } else if sum > target + tol {
        Some(SccVerdict::ViolatesInequality { flat, rank, sum })
    } else if sum >= target - tol {
        Some(SccVerdict::ViolatesEqualityCase { flat, rank, sum })
    } else {
        None
    }
}

/// Tests `gamma in relint P_scc(U)` through the flats of `U`.
pub fn scc_check(u: &NormalMatrix, gamma: &[f64]) -> Result<SccVerdict, MatroidError> {
    scc_check_with(&MatroidData::new(u), gamma, SCC_TOL)
}

/// As [`scc_check`], reusing precomputed matroid data. The first violated
/// flat in `(rank, indices)` order is reported.
pub fn scc_check_with(data: &MatroidData, gamma: &[f64], tol: f64) -> Result<SccVerdict, MatroidError> {
    validate_gamma(data.m, gamma)?;
    Ok(data
        .flats
        .iter()
        .find_map(|f| classify(f, data.is_separator(f), data.n, gamma, tol))
        .unwrap_or(SccVerdict::Satisfies))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::data::tests::{parallelepiped, trapezoid};

    #[test]
    fn square_verdicts() {
        let u = parallelepiped(2);
        assert_eq!(scc_check(&u, &[0.25; 4]).unwrap(), SccVerdict::Satisfies);
        let v = scc_check(&u, &[0.5, 0.25, 0.125, 0.125]).unwrap();
        assert!(matches!(v, SccVerdict::ViolatesEqualityCase { ref flat, .. } if flat == &vec![0, 2]));
    }

    #[test]
    fn trapezoid_point_outside_relint() {
        let v = scc_check(&trapezoid(), &[1.0 / 9.0, 2.0 / 9.0, 4.0 / 9.0, 2.0 / 9.0]).unwrap();
        assert!(matches!(v, SccVerdict::ViolatesInequality { ref flat, rank: 1, .. } if flat == &vec![0, 2]));
    }

    #[test]
    fn input_validation() {
        let u = parallelepiped(2);
        assert!(matches!(scc_check(&u, &[0.5, 0.5, 0.0, 0.0]), Err(MatroidError::NotPositive { index: 2, .. })));
        assert!(matches!(scc_check(&u, &[0.3; 4]), Err(MatroidError::NotNormalized { .. })));
    }
}
