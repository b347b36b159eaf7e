//! Canonical (sum-of-monomials) representation of sparse multivariate polynomials.
//!
//! A polynomial is stored as a coefficient vector together with an exponent
//! matrix: row `i` holds the exponents of monomial `i`, so that
//!
//! ```text
//! p(x) = sum_i  c_i * prod_j  x_j ^ e_ij
//! ```
//!
//! The representation never drops zero coefficients. Factorisations built on
//! top of it only look at exponents, which is what allows coefficients to be
//! swapped after the fact.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::degree::DegreeKind;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolyError {
    #[error("a polynomial needs at least one monomial")]
    Empty,
    #[error("exponent rows must have at least one column")]
    ZeroDimension,
    #[error("{coefficients} coefficients but {rows} exponent rows")]
    LengthMismatch { coefficients: usize, rows: usize },
    #[error("exponent row {row} has {found} entries, expected {expected}")]
    RaggedExponents {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("exponent entry [{row}][{col}] = {value} is not a nonnegative integer")]
    InvalidExponent {
        row: usize,
        col: usize,
        value: String,
    },
    #[error("exponent rows {first} and {second} are identical")]
    DuplicateMonomial { first: usize, second: usize },
    #[error("point has {found} coordinates, polynomial has dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("variable index {var} out of range for dimension {dimension}")]
    VariableOutOfRange { var: usize, dimension: usize },
}

/// Exponents of a single monomial, one entry per variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(entries: Vec<u32>) -> Self {
        ExponentVector(entries)
    }

    pub fn zeros(dimension: usize) -> Self {
        ExponentVector(vec![0; dimension])
    }

    pub fn dimension(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, var: usize) -> u32 {
        self.0[var]
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Sum of exponents (l1 norm).
    pub fn total(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    /// Largest single exponent (l-infinity norm).
    pub fn max_entry(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn squared_norm(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e) * u64::from(e)).sum()
    }

    pub fn norm(&self, kind: DegreeKind) -> f64 {
        match kind {
            DegreeKind::Total => self.total() as f64,
            DegreeKind::Euclidean => (self.squared_norm() as f64).sqrt(),
            DegreeKind::Maximal => f64::from(self.max_entry()),
        }
    }

    /// Copy with one power of `var` removed. Caller guarantees the entry is positive.
    pub(crate) fn divided_by(&self, var: usize) -> Self {
        let mut entries = self.0.clone();
        entries[var] -= 1;
        ExponentVector(entries)
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(entries: Vec<u32>) -> Self {
        ExponentVector(entries)
    }
}

/// Graded lexicographic order: total degree first, then entries compared
/// lexicographically. This is the order rectified polynomials are stored in.
pub fn grlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let ta: u64 = a.iter().map(|&e| u64::from(e)).sum();
    let tb: u64 = b.iter().map(|&e| u64::from(e)).sum();
    ta.cmp(&tb).then_with(|| a.cmp(b))
}

/// `base^exp` by repeated squaring. Shared by every evaluation path so that
/// powers round identically everywhere.
#[inline]
pub fn ipow(base: f64, mut exp: u32) -> f64 {
    let mut result = 1.0;
    let mut b = base;
    while exp > 0 {
        if exp & 1 == 1 {
            result *= b;
        }
        exp >>= 1;
        if exp > 0 {
            b *= b;
        }
    }
    result
}

/// A polynomial as a plain sum of coefficient-weighted monomials.
#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalPolynomial {
    coefficients: Vec<f64>,
    exponents: Vec<ExponentVector>,
    dimension: usize,
}

impl CanonicalPolynomial {
    /// Builds a polynomial from coefficients and an exponent matrix.
    ///
    /// With `rectify` set, duplicate exponent rows are merged by summing their
    /// coefficients and rows are sorted with [`grlex_cmp`]. Without it the
    /// input order is kept as given and duplicates are rejected.
    pub fn new(
        coefficients: Vec<f64>,
        exponents: Vec<Vec<u32>>,
        rectify: bool,
    ) -> Result<Self, PolyError> {
        if coefficients.is_empty() || exponents.is_empty() {
            return Err(PolyError::Empty);
        }
        if coefficients.len() != exponents.len() {
            return Err(PolyError::LengthMismatch {
                coefficients: coefficients.len(),
                rows: exponents.len(),
            });
        }
        let dimension = exponents[0].len();
        if dimension == 0 {
            return Err(PolyError::ZeroDimension);
        }
        if let Some((row, r)) = exponents
            .iter()
            .enumerate()
            .find(|(_, r)| r.len() != dimension)
        {
            return Err(PolyError::RaggedExponents {
                row,
                expected: dimension,
                found: r.len(),
            });
        }

        if rectify {
            return Ok(Self::rectified(coefficients, exponents, dimension));
        }

        let mut seen: HashMap<&[u32], usize> = HashMap::with_capacity(exponents.len());
        for (i, row) in exponents.iter().enumerate() {
            if let Some(&first) = seen.get(row.as_slice()) {
                return Err(PolyError::DuplicateMonomial { first, second: i });
            }
            seen.insert(row, i);
        }
        Ok(CanonicalPolynomial {
            coefficients,
            exponents: exponents.into_iter().map(ExponentVector).collect(),
            dimension,
        })
    }

    fn rectified(coefficients: Vec<f64>, exponents: Vec<Vec<u32>>, dimension: usize) -> Self {
        let mut order: Vec<usize> = (0..exponents.len()).collect();
        // stable, so duplicates are summed in input order
        order.sort_by(|&a, &b| grlex_cmp(&exponents[a], &exponents[b]));

        let mut merged_coeffs: Vec<f64> = Vec::with_capacity(order.len());
        let mut merged_rows: Vec<ExponentVector> = Vec::with_capacity(order.len());
        for i in order {
            match merged_rows.last() {
                Some(last) if last.entries() == exponents[i].as_slice() => {
                    *merged_coeffs.last_mut().unwrap() += coefficients[i];
                }
                _ => {
                    merged_coeffs.push(coefficients[i]);
                    merged_rows.push(ExponentVector(exponents[i].clone()));
                }
            }
        }
        CanonicalPolynomial {
            coefficients: merged_coeffs,
            exponents: merged_rows,
            dimension,
        }
    }

    /// The zero polynomial: one monomial, coefficient 0.0, all-zero exponents.
    pub fn zero(dimension: usize) -> Self {
        assert!(dimension >= 1, "dimension must be positive");
        CanonicalPolynomial {
            coefficients: vec![0.0],
            exponents: vec![ExponentVector::zeros(dimension)],
            dimension,
        }
    }

    /// Same exponent matrix, different coefficients.
    pub fn with_coefficients(&self, coefficients: Vec<f64>) -> Result<Self, PolyError> {
        if coefficients.len() != self.coefficients.len() {
            return Err(PolyError::LengthMismatch {
                coefficients: coefficients.len(),
                rows: self.exponents.len(),
            });
        }
        Ok(CanonicalPolynomial {
            coefficients,
            exponents: self.exponents.clone(),
            dimension: self.dimension,
        })
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn exponents(&self) -> &[ExponentVector] {
        &self.exponents
    }

    /// Exponent matrix as nested vectors.
    pub fn exponent_rows(&self) -> Vec<Vec<u32>> {
        self.exponents.iter().map(|e| e.entries().to_vec()).collect()
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Number of monomials.
    pub fn num_monomials(&self) -> usize {
        self.coefficients.len()
    }

    /// Direct sum-of-monomials evaluation, with `0^0 = 1`.
    ///
    /// Each monomial is accumulated as `((c * x_1^e_1) * x_2^e_2) * ...` and the
    /// monomials are summed left to right.
    pub fn eval(&self, x: &[f64]) -> Result<f64, PolyError> {
        self.eval_with_coefficients(&self.coefficients, x)
    }

    /// Evaluates the exponent structure of `self` with replacement coefficients.
    pub fn eval_with_coefficients(&self, coefficients: &[f64], x: &[f64]) -> Result<f64, PolyError> {
        if coefficients.len() != self.coefficients.len() {
            return Err(PolyError::LengthMismatch {
                coefficients: coefficients.len(),
                rows: self.exponents.len(),
            });
        }
        self.check_point(x)?;
        let mut sum = 0.0;
        for (c, row) in coefficients.iter().zip(&self.exponents) {
            let mut term = *c;
            for (&xi, &e) in x.iter().zip(row.entries()) {
                term *= ipow(xi, e);
            }
            sum += term;
        }
        Ok(sum)
    }

    pub(crate) fn check_point(&self, x: &[f64]) -> Result<(), PolyError> {
        if x.len() != self.dimension {
            return Err(PolyError::DimensionMismatch {
                expected: self.dimension,
                found: x.len(),
            });
        }
        Ok(())
    }

    /// Operation count of the matrix-style evaluation: one exponentiation and
    /// one multiplication per (monomial, variable) pair, plus `N - 1` additions.
    pub fn num_ops_canonical(&self) -> usize {
        let n = self.num_monomials();
        2 * n * self.dimension + (n - 1)
    }

    /// Largest norm of any exponent row under the chosen degree notion.
    pub fn degree(&self, kind: DegreeKind) -> f64 {
        self.exponents
            .iter()
            .map(|e| e.norm(kind))
            .fold(0.0, f64::max)
    }

    /// Exact integer degree for the total and maximal notions; the ceiling of
    /// the real-valued degree for the euclidean one.
    pub fn reference_degree(&self, kind: DegreeKind) -> u64 {
        match kind {
            DegreeKind::Total => self.exponents.iter().map(|e| e.total()).max().unwrap_or(0),
            DegreeKind::Maximal => self
                .exponents
                .iter()
                .map(|e| u64::from(e.max_entry()))
                .max()
                .unwrap_or(0),
            DegreeKind::Euclidean => {
                let sq = self
                    .exponents
                    .iter()
                    .map(|e| e.squared_norm())
                    .max()
                    .unwrap_or(0);
                ceil_sqrt(sq)
            }
        }
    }

    /// Fraction of monomials present relative to the fully occupied
    /// polynomial of the same degree.
    pub fn occupancy(&self, kind: DegreeKind) -> Result<f64, crate::degree::CountError> {
        let full =
            crate::degree::count_fully_occupied(self.dimension, self.reference_degree(kind), kind)?;
        Ok(self.num_monomials() as f64 / full as f64)
    }

    /// Partial derivative with respect to variable `var` (0-based).
    ///
    /// Monomials free of `var` vanish; if all of them do, the zero polynomial
    /// is returned.
    pub fn partial_derivative(&self, var: usize) -> Result<Self, PolyError> {
        if var >= self.dimension {
            return Err(PolyError::VariableOutOfRange {
                var,
                dimension: self.dimension,
            });
        }
        let mut coefficients = Vec::new();
        let mut exponents = Vec::new();
        for (c, row) in self.coefficients.iter().zip(&self.exponents) {
            let e = row.get(var);
            if e >= 1 {
                coefficients.push(c * f64::from(e));
                exponents.push(row.divided_by(var));
            }
        }
        if coefficients.is_empty() {
            return Ok(Self::zero(self.dimension));
        }
        // lowering one exponent of distinct rows keeps them distinct
        Ok(CanonicalPolynomial {
            coefficients,
            exponents,
            dimension: self.dimension,
        })
    }
}

fn ceil_sqrt(v: u64) -> u64 {
    let mut r = (v as f64).sqrt() as u64;
    while r * r > v {
        r -= 1;
    }
    while r * r < v {
        r += 1;
    }
    r
}

impl fmt::Display for CanonicalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (c, row)) in self.coefficients.iter().zip(&self.exponents).enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{}", crate::fmt_coeff(*c))?;
            crate::horner::write_monomial_factors(f, row.entries())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_p() -> CanonicalPolynomial {
        CanonicalPolynomial::new(
            vec![5.0, 1.0, 2.0, 3.0],
            vec![vec![0, 0, 0], vec![3, 1, 0], vec![2, 0, 1], vec![1, 1, 1]],
            false,
        )
        .unwrap()
    }

    #[test]
    fn builds_worked_example() {
        let p = example_p();
        assert_eq!(p.num_monomials(), 4);
        assert_eq!(p.dimension(), 3);
    }

    #[test]
    fn rectify_merges_duplicates() {
        let p = CanonicalPolynomial::new(vec![1.0, 2.0], vec![vec![1, 0], vec![1, 0]], true).unwrap();
        assert_eq!(p.coefficients(), &[3.0]);
        assert_eq!(p.exponent_rows(), vec![vec![1, 0]]);
    }

    #[test]
    fn rectify_sorts_graded_lex_and_keeps_zeros() {
        let p = CanonicalPolynomial::new(
            vec![5.0, 1.0, 0.0, 3.0],
            vec![vec![0, 0, 0], vec![3, 1, 0], vec![2, 0, 1], vec![1, 1, 1]],
            true,
        )
        .unwrap();
        assert_eq!(
            p.exponent_rows(),
            vec![vec![0, 0, 0], vec![1, 1, 1], vec![2, 0, 1], vec![3, 1, 0]]
        );
        assert_eq!(p.coefficients(), &[5.0, 3.0, 0.0, 1.0]);
    }

    #[test]
    fn rejects_bad_shapes() {
        assert_eq!(
            CanonicalPolynomial::new(vec![1.0], vec![vec![0, 0], vec![1, 0]], false),
            Err(PolyError::LengthMismatch {
                coefficients: 1,
                rows: 2
            })
        );
        assert_eq!(
            CanonicalPolynomial::new(vec![], vec![], true),
            Err(PolyError::Empty)
        );
        assert_eq!(
            CanonicalPolynomial::new(vec![1.0, 1.0], vec![vec![0, 0], vec![1]], false),
            Err(PolyError::RaggedExponents {
                row: 1,
                expected: 2,
                found: 1
            })
        );
        assert_eq!(
            CanonicalPolynomial::new(vec![1.0], vec![vec![]], false),
            Err(PolyError::ZeroDimension)
        );
        assert_eq!(
            CanonicalPolynomial::new(vec![1.0, 2.0], vec![vec![1, 0], vec![1, 0]], false),
            Err(PolyError::DuplicateMonomial {
                first: 0,
                second: 1
            })
        );
    }

    #[test]
    fn evaluates_worked_example() {
        let p = example_p();
        assert_eq!(p.eval(&[-2.0, 3.0, 1.0]).unwrap(), -29.0);
        assert_eq!(p.eval(&[1.0, 1.0, 1.0]).unwrap(), 11.0);
        assert_eq!(
            p.eval(&[1.0, 1.0]),
            Err(PolyError::DimensionMismatch {
                expected: 3,
                found: 2
            })
        );
        let c = CanonicalPolynomial::new(vec![7.0], vec![vec![0, 0]], false).unwrap();
        assert_eq!(c.eval(&[0.0, -3.5]).unwrap(), 7.0);
    }

    #[test]
    fn canonical_op_counts() {
        assert_eq!(example_p().num_ops_canonical(), 27);
        let c = CanonicalPolynomial::new(vec![1.0], vec![vec![0, 0, 0]], false).unwrap();
        assert_eq!(c.num_ops_canonical(), 6);
        let u = CanonicalPolynomial::new(vec![1.0, 2.0, 3.0], vec![vec![0], vec![1], vec![2]], false)
            .unwrap();
        assert_eq!(u.num_ops_canonical(), 8);
    }

    #[test]
    fn degrees_of_worked_example() {
        let p = example_p();
        assert_eq!(p.degree(DegreeKind::Total), 4.0);
        assert_eq!(p.degree(DegreeKind::Maximal), 3.0);
        assert!((p.degree(DegreeKind::Euclidean) - 10f64.sqrt()).abs() < 1e-12);
        assert_eq!(p.reference_degree(DegreeKind::Euclidean), 4);
    }

    #[test]
    fn occupancy_values() {
        assert_eq!(example_p().occupancy(DegreeKind::Maximal).unwrap(), 4.0 / 64.0);
        let c = CanonicalPolynomial::new(vec![2.0], vec![vec![0, 0, 0]], false).unwrap();
        for kind in DegreeKind::ALL {
            assert_eq!(c.occupancy(kind).unwrap(), 1.0);
        }
        // 1 + x + y + xy is fully occupied in the maximal sense
        let full = CanonicalPolynomial::new(
            vec![1.0; 4],
            vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]],
            false,
        )
        .unwrap();
        assert_eq!(full.occupancy(DegreeKind::Maximal).unwrap(), 1.0);
    }

    #[test]
    fn derivatives_of_worked_example() {
        let p = example_p();
        let d1 = p.partial_derivative(0).unwrap();
        assert_eq!(d1.coefficients(), &[3.0, 4.0, 3.0]);
        assert_eq!(
            d1.exponent_rows(),
            vec![vec![2, 1, 0], vec![1, 0, 1], vec![0, 1, 1]]
        );
        let d2 = p.partial_derivative(1).unwrap();
        assert_eq!(d2.coefficients(), &[1.0, 3.0]);
        assert_eq!(d2.exponent_rows(), vec![vec![3, 0, 0], vec![1, 0, 1]]);
        assert_eq!(
            p.partial_derivative(3),
            Err(PolyError::VariableOutOfRange {
                var: 3,
                dimension: 3
            })
        );
    }

    #[test]
    fn derivative_of_constant_is_zero() {
        let c = CanonicalPolynomial::new(vec![7.0], vec![vec![0, 0]], false).unwrap();
        assert_eq!(c.partial_derivative(1).unwrap(), CanonicalPolynomial::zero(2));
    }

    #[test]
    fn ipow_matches_repeated_multiplication_on_small_ints() {
        assert_eq!(ipow(0.0, 0), 1.0);
        assert_eq!(ipow(-2.0, 3), -8.0);
        assert_eq!(ipow(3.0, 5), 243.0);
        assert_eq!(ipow(1.5, 1), 1.5);
    }

    #[test]
    fn ceil_sqrt_is_exact() {
        for v in 0..200u64 {
            let r = ceil_sqrt(v);
            assert!(r * r >= v);
            assert!(r == 0 || (r - 1) * (r - 1) < v);
        }
    }
}
