//! Degree notions for multivariate polynomials and the size of fully
//! occupied polynomials under each of them.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Which norm of the exponent vectors defines "the" degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DegreeKind {
    /// Maximal l1 norm (sum of exponents).
    Total,
    /// Maximal l2 norm.
    Euclidean,
    /// Maximal l-infinity norm (largest single exponent).
    Maximal,
}

impl DegreeKind {
    pub const ALL: [DegreeKind; 3] = [DegreeKind::Total, DegreeKind::Euclidean, DegreeKind::Maximal];

    pub fn name(self) -> &'static str {
        match self {
            DegreeKind::Total => "total",
            DegreeKind::Euclidean => "euclidean",
            DegreeKind::Maximal => "maximal",
        }
    }
}

impl fmt::Display for DegreeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown degree kind `{0}` (expected total, euclidean or maximal)")]
pub struct UnknownDegreeKind(pub String);

impl FromStr for DegreeKind {
    type Err = UnknownDegreeKind;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "total" => Ok(DegreeKind::Total),
            "euclidean" => Ok(DegreeKind::Euclidean),
            "maximal" => Ok(DegreeKind::Maximal),
            _ => Err(UnknownDegreeKind(s.to_owned())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountError {
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("monomial count for m={m}, n={n} ({kind}) does not fit in 64 bits")]
    Overflow { m: usize, n: u64, kind: DegreeKind },
    #[error("euclidean lattice enumeration for n={n} exceeds {limit} radius^2 cells")]
    TooLarge { n: u64, limit: u64 },
}

/// Upper bound on `n^2 + 1` for the euclidean lattice table.
const EUCLIDEAN_TABLE_LIMIT: u64 = 1 << 24;

/// Number of exponent vectors `e` in `N^m` with `||e|| <= n` under `kind`.
///
/// Maximal kind is `(n+1)^m`, total kind is `C(n+m, m)`, and the euclidean
/// kind is counted by enumerating lattice points inside the quarter ball,
/// one dimension at a time.
pub fn count_fully_occupied(m: usize, n: u64, kind: DegreeKind) -> Result<u64, CountError> {
    if m == 0 {
        return Err(CountError::ZeroDimension);
    }
    let overflow = CountError::Overflow { m, n, kind };
    match kind {
        DegreeKind::Maximal => {
            let exp = u32::try_from(m).map_err(|_| overflow.clone())?;
            n.checked_add(1)
                .and_then(|b| b.checked_pow(exp))
                .ok_or(overflow)
        }
        DegreeKind::Total => {
            // C(n+i, i) = C(n+i-1, i-1) * (n+i) / i, exact at every step
            let mut c: u128 = 1;
            for i in 1..=m as u128 {
                c = c
                    .checked_mul(u128::from(n) + i)
                    .ok_or_else(|| overflow.clone())?
                    / i;
                if c > u128::from(u64::MAX) {
                    return Err(overflow);
                }
            }
            Ok(c as u64)
        }
        DegreeKind::Euclidean => count_euclidean(m, n),
    }
}

fn count_euclidean(m: usize, n: u64) -> Result<u64, CountError> {
    let overflow = CountError::Overflow {
        m,
        n,
        kind: DegreeKind::Euclidean,
    };
    let radius_sq = n
        .checked_mul(n)
        .filter(|&r| r < EUCLIDEAN_TABLE_LIMIT)
        .ok_or(CountError::TooLarge {
            n,
            limit: EUCLIDEAN_TABLE_LIMIT,
        })? as usize;

    // table[b] = number of vectors in the current dimension with squared norm <= b
    let mut table = vec![1u64; radius_sq + 1];
    for _ in 0..m {
        let mut next = vec![0u64; radius_sq + 1];
        for (b, slot) in next.iter_mut().enumerate() {
            let mut acc: u64 = 0;
            let mut e = 0usize;
            while e * e <= b {
                acc = acc
                    .checked_add(table[b - e * e])
                    .ok_or_else(|| overflow.clone())?;
                e += 1;
            }
            *slot = acc;
        }
        table = next;
    }
    Ok(table[radius_sq])
}
