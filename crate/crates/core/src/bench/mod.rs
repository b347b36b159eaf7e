//! Random-occupancy benchmark: operation counts and numerical error at the
//! all-ones point, canonical form against the greedy Horner recipe.
//!
//! At `x = (1, ..., 1)` every monomial equals its coefficient, so the true
//! value is the coefficient sum. It is computed exactly, and the error of each
//! representation is the distance of its double-precision result to it.

mod exact;
mod output;
pub mod rng;

use std::collections::BTreeMap;

use rayon::prelude::*;
use thiserror::Error;

use crate::degree::{count_fully_occupied, DegreeKind};
use crate::horner::factorize_greedy;
use crate::poly::{grlex_cmp, CanonicalPolynomial};
use crate::recipe::{compile, Evaluator};

pub use exact::{abs_error_against_sum, exact_sum};
pub use output::{write_csv, CSV_HEADER};
pub use rng::{poly_seed, BenchRng};

/// Cells whose candidate set would exceed this many exponent vectors are skipped.
pub const DEFAULT_MAX_CANDIDATES: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BenchError {
    #[error("invalid benchmark configuration: {0}")]
    InvalidConfig(String),
    #[error("m={m}, n={n}: {reason}")]
    Cell { m: usize, n: usize, reason: String },
    #[error("no records to summarize")]
    EmptyRecords,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoefficientRange {
    pub lo: f64,
    pub hi: f64,
}

impl CoefficientRange {
    pub fn new(lo: f64, hi: f64) -> Result<Self, BenchError> {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(BenchError::InvalidConfig(format!(
                "coefficient range [{lo}, {hi}] is empty"
            )));
        }
        Ok(CoefficientRange { lo, hi })
    }

    fn draw(&self, rng: &mut BenchRng) -> f64 {
        rng.uniform(self.lo, self.hi)
    }
}

impl Default for CoefficientRange {
    fn default() -> Self {
        CoefficientRange { lo: -1.0, hi: 1.0 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkConfig {
    pub max_dimension: usize,
    /// Maximal (l-infinity) degree.
    pub max_degree: usize,
    pub polys_per_cell: usize,
    pub coefficient_trials: usize,
    pub master_seed: u64,
    pub coefficient_range: CoefficientRange,
    pub max_candidates: u64,
}

impl BenchmarkConfig {
    pub fn new(
        max_dimension: usize,
        max_degree: usize,
        polys_per_cell: usize,
        coefficient_trials: usize,
        master_seed: u64,
    ) -> Self {
        BenchmarkConfig {
            max_dimension,
            max_degree,
            polys_per_cell,
            coefficient_trials,
            master_seed,
            coefficient_range: CoefficientRange::default(),
            max_candidates: DEFAULT_MAX_CANDIDATES,
        }
    }

    /// Degrees and dimensions up to 7, five polynomials per cell, 100 trials.
    pub fn full_scale(master_seed: u64) -> Self {
        Self::new(7, 7, 5, 100, master_seed)
    }

    pub fn validate(&self) -> Result<(), BenchError> {
        for (name, v) in [
            ("max_dimension", self.max_dimension),
            ("max_degree", self.max_degree),
            ("polys_per_cell", self.polys_per_cell),
            ("coefficient_trials", self.coefficient_trials),
        ] {
            if v == 0 {
                return Err(BenchError::InvalidConfig(format!("{name} must be at least 1")));
            }
        }
        CoefficientRange::new(self.coefficient_range.lo, self.coefficient_range.hi)?;
        Ok(())
    }

    /// All `(m, n, poly_index)` jobs in output order.
    pub fn jobs(&self) -> Vec<(usize, usize, usize)> {
        let mut jobs = Vec::with_capacity(self.max_dimension * self.max_degree * self.polys_per_cell);
        for m in 1..=self.max_dimension {
            for n in 1..=self.max_degree {
                for i in 0..self.polys_per_cell {
                    jobs.push((m, n, i));
                }
            }
        }
        jobs
    }
}

/// One measured polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub m: usize,
    pub n: usize,
    pub poly_index: usize,
    pub occupancy_probability: f64,
    pub num_monomials: usize,
    pub ops_canonical: usize,
    pub ops_horner: usize,
    pub mean_abs_error_canonical: f64,
    pub mean_abs_error_horner: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RandomPolynomial {
    pub polynomial: CanonicalPolynomial,
    /// Inclusion probability that produced the accepted monomial set.
    pub occupancy_probability: f64,
}

/// Every exponent vector in `{0..=n}^m`, in graded lexicographic order.
pub fn maximal_degree_candidates(m: usize, n: usize) -> Vec<Vec<u32>> {
    let side = n as u32 + 1;
    let total = (n + 1).pow(m as u32);
    let mut out = Vec::with_capacity(total);
    let mut cur = vec![0u32; m];
    for _ in 0..total {
        out.push(cur.clone());
        for e in cur.iter_mut().rev() {
            *e += 1;
            if *e < side {
                break;
            }
            *e = 0;
        }
    }
    out.sort_by(|a, b| grlex_cmp(a, b));
    out
}

fn check_cell(m: usize, n: usize, max_candidates: u64) -> Result<(), BenchError> {
    let cell_err = |reason: String| BenchError::Cell { m, n, reason };
    if m == 0 {
        return Err(cell_err("dimension must be at least 1".into()));
    }
    let count = count_fully_occupied(m, n as u64, DegreeKind::Maximal)
        .map_err(|e| cell_err(e.to_string()))?;
    if count < 2 {
        return Err(cell_err("fewer than two candidate monomials".into()));
    }
    if count > max_candidates {
        return Err(cell_err(format!(
            "{count} candidate monomials exceed the limit of {max_candidates}"
        )));
    }
    Ok(())
}

/// Draws a polynomial of maximal degree at most `n` in `m` variables.
///
/// An inclusion probability `q` is drawn from `(0, 1]` and every candidate
/// exponent vector is kept independently with probability `q`; if fewer than
/// two survive, `q` is redrawn. Coefficients are then drawn uniformly from
/// `range`.
pub fn random_polynomial(
    m: usize,
    n: usize,
    range: CoefficientRange,
    rng: &mut BenchRng,
) -> Result<RandomPolynomial, BenchError> {
    check_cell(m, n, u64::MAX)?;
    let candidates = maximal_degree_candidates(m, n);
    Ok(draw_from_candidates(&candidates, range, rng))
}

fn draw_from_candidates(
    candidates: &[Vec<u32>],
    range: CoefficientRange,
    rng: &mut BenchRng,
) -> RandomPolynomial {
    loop {
        let q = rng.unit_open_closed();
        let chosen: Vec<Vec<u32>> = candidates
            .iter()
            .filter(|_| rng.unit() < q)
            .cloned()
            .collect();
        if chosen.len() < 2 {
            continue;
        }
        let coefficients = (0..chosen.len()).map(|_| range.draw(rng)).collect();
        let polynomial = CanonicalPolynomial::new(coefficients, chosen, false)
            .expect("candidates are distinct and rectangular");
        return RandomPolynomial {
            polynomial,
            occupancy_probability: q,
        };
    }
}

/// Mean absolute error of canonical and Horner evaluation at the all-ones
/// point over `trials` fresh coefficient draws.
///
/// The Horner recipe is compiled once; each trial only swaps coefficients.
pub fn error_trial(
    p: &CanonicalPolynomial,
    trials: usize,
    range: CoefficientRange,
    rng: &mut BenchRng,
) -> (f64, f64) {
    let recipe = compile(&factorize_greedy(p));
    let mut evaluator = recipe.evaluator();
    let ones = vec![1.0; p.dimension()];
    let mut coefficients = vec![0.0; p.num_monomials()];
    let mut err_canonical = 0.0;
    let mut err_horner = 0.0;
    for _ in 0..trials {
        for c in coefficients.iter_mut() {
            *c = range.draw(rng);
        }
        let (c, h) = errors_at_ones(p, &mut evaluator, &ones, &coefficients);
        err_canonical += c;
        err_horner += h;
    }
    let t = trials.max(1) as f64;
    (err_canonical / t, err_horner / t)
}

/// Absolute errors of canonical and recipe evaluation at `ones` for one coefficient set.
pub fn errors_at_ones(
    p: &CanonicalPolynomial,
    evaluator: &mut Evaluator<'_>,
    ones: &[f64],
    coefficients: &[f64],
) -> (f64, f64) {
    let canonical = p
        .eval_with_coefficients(coefficients, ones)
        .expect("shapes match");
    let horner = evaluator.eval(coefficients, ones).expect("shapes match");
    (
        abs_error_against_sum(canonical, coefficients),
        abs_error_against_sum(horner, coefficients),
    )
}

fn measure(config: &BenchmarkConfig, candidates: &[Vec<u32>], m: usize, n: usize, i: usize) -> TrialRecord {
    let mut rng = BenchRng::from_seed(poly_seed(config.master_seed, m, n, i));
    let drawn = draw_from_candidates(candidates, config.coefficient_range, &mut rng);
    let p = &drawn.polynomial;
    let (mean_abs_error_canonical, mean_abs_error_horner) =
        error_trial(p, config.coefficient_trials, config.coefficient_range, &mut rng);
    TrialRecord {
        m,
        n,
        poly_index: i,
        occupancy_probability: drawn.occupancy_probability,
        num_monomials: p.num_monomials(),
        ops_canonical: p.num_ops_canonical(),
        ops_horner: factorize_greedy(p).op_count(),
        mean_abs_error_canonical,
        mean_abs_error_horner,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SkippedCell {
    pub m: usize,
    pub n: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    /// Sorted by `(m, n, poly_index)`.
    pub records: Vec<TrialRecord>,
    pub skipped: Vec<SkippedCell>,
}

/// Runs every `(m, n)` cell of the configuration.
///
/// Each polynomial has its own seed, so the result does not depend on how
/// rayon schedules the work. Cells that cannot be generated are listed in
/// `skipped`.
pub fn sweep(config: &BenchmarkConfig) -> Result<SweepReport, BenchError> {
    config.validate()?;
    let mut skipped = Vec::new();
    let mut cells: BTreeMap<(usize, usize), Vec<Vec<u32>>> = BTreeMap::new();
    for m in 1..=config.max_dimension {
        for n in 1..=config.max_degree {
            match check_cell(m, n, config.max_candidates) {
                Ok(()) => {
                    cells.insert((m, n), maximal_degree_candidates(m, n));
                }
                Err(e) => skipped.push(SkippedCell {
                    m,
                    n,
                    reason: e.to_string(),
                }),
            }
        }
    }

    let jobs: Vec<(usize, usize, usize)> = config
        .jobs()
        .into_iter()
        .filter(|(m, n, _)| cells.contains_key(&(*m, *n)))
        .collect();
    let mut records: Vec<TrialRecord> = jobs
        .par_iter()
        .map(|&(m, n, i)| measure(config, &cells[&(m, n)], m, n, i))
        .collect();
    records.sort_by_key(|r| (r.m, r.n, r.poly_index));
    Ok(SweepReport { records, skipped })
}

/// Per-cell aggregate of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct CellSummary {
    pub m: usize,
    pub n: usize,
    pub polys: usize,
    pub mean_num_monomials: f64,
    pub mean_ops_canonical: f64,
    pub mean_ops_horner: f64,
    pub mean_abs_error_canonical: f64,
    pub mean_abs_error_horner: f64,
    /// canonical / horner; infinite when only the Horner error is zero, 1 when both are.
    pub error_ratio: f64,
    pub op_ratio: f64,
}

pub fn ratio(num: f64, den: f64) -> f64 {
    if den == 0.0 {
        if num == 0.0 {
            1.0
        } else {
            f64::INFINITY
        }
    } else {
        num / den
    }
}

pub fn summarize(records: &[TrialRecord]) -> Result<Vec<CellSummary>, BenchError> {
    if records.is_empty() {
        return Err(BenchError::EmptyRecords);
    }
    let mut cells: BTreeMap<(usize, usize), Vec<&TrialRecord>> = BTreeMap::new();
    for r in records {
        cells.entry((r.m, r.n)).or_default().push(r);
    }
    Ok(cells
        .into_iter()
        .map(|((m, n), rs)| {
            let k = rs.len() as f64;
            let mean = |f: &dyn Fn(&TrialRecord) -> f64| rs.iter().map(|r| f(r)).sum::<f64>() / k;
            let mean_ops_canonical = mean(&|r| r.ops_canonical as f64);
            let mean_ops_horner = mean(&|r| r.ops_horner as f64);
            let mean_abs_error_canonical = mean(&|r| r.mean_abs_error_canonical);
            let mean_abs_error_horner = mean(&|r| r.mean_abs_error_horner);
            CellSummary {
                m,
                n,
                polys: rs.len(),
                mean_num_monomials: mean(&|r| r.num_monomials as f64),
                mean_ops_canonical,
                mean_ops_horner,
                mean_abs_error_canonical,
                mean_abs_error_horner,
                error_ratio: ratio(mean_abs_error_canonical, mean_abs_error_horner),
                op_ratio: ratio(mean_ops_canonical, mean_ops_horner),
            }
        })
        .collect())
}

/// Fixed-width text table of cell summaries.
pub fn format_summary(rows: &[CellSummary]) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    writeln!(
        out,
        "{:>3} {:>3} {:>5} {:>10} {:>12} {:>10} {:>8} {:>24} {:>24} {:>10}",
        "m", "n", "polys", "monomials", "ops_canon", "ops_horner", "op_ratio", "err_canonical", "err_horner", "err_ratio"
    )
    .unwrap();
    for r in rows {
        writeln!(
            out,
            "{:>3} {:>3} {:>5} {:>10.1} {:>12.1} {:>10.1} {:>8.3} {:>24} {:>24} {:>10}",
            r.m,
            r.n,
            r.polys,
            r.mean_num_monomials,
            r.mean_ops_canonical,
            r.mean_ops_horner,
            r.op_ratio,
            format!("{:?}", r.mean_abs_error_canonical),
            format!("{:?}", r.mean_abs_error_horner),
            format_ratio(r.error_ratio),
        )
        .unwrap();
    }
    out
}

fn format_ratio(r: f64) -> String {
    if r.is_infinite() {
        "inf".to_owned()
    } else {
        format!("{r:.3}")
    }
}
