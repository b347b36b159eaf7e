//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use polyhorner::bench::{random_polynomial, BenchRng, CoefficientRange};
use polyhorner::CanonicalPolynomial;

pub fn example_p() -> CanonicalPolynomial {
    CanonicalPolynomial::new(
        vec![5.0, 1.0, 2.0, 3.0],
        vec![vec![0, 0, 0], vec![3, 1, 0], vec![2, 0, 1], vec![1, 1, 1]],
        false,
    )
    .unwrap()
}

pub const EXAMPLE_STRING: &str = "x_1 (x_1 (x_1 (1.0 x_2) + 2.0 x_3) + 3.0 x_2 x_3) + 5.0";

/// Exact binary rational `mant * 2^exp`; every finite double is one.
#[derive(Debug, Clone, PartialEq)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic { mant: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        Dyadic { mant: BigInt::from(1), exp: 0 }
    }

    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite());
        if x == 0.0 {
            return Self::zero();
        }
        let bits = x.to_bits();
        let negative = bits >> 63 == 1;
        let biased = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if biased == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), biased - 1075)
        };
        let mant = if negative { -BigInt::from(m) } else { BigInt::from(m) };
        Dyadic { mant, exp: e }
    }

    pub fn mul(&self, other: &Dyadic) -> Dyadic {
        Dyadic {
            mant: &self.mant * &other.mant,
            exp: self.exp + other.exp,
        }
    }

    pub fn add(&self, other: &Dyadic) -> Dyadic {
        if self.mant.is_zero() {
            return other.clone();
        }
        if other.mant.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << ((self.exp - e) as usize);
        let b = &other.mant << ((other.exp - e) as usize);
        Dyadic { mant: a + b, exp: e }
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic { mant: -&self.mant, exp: self.exp }
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant << (self.exp as usize))
        } else {
            BigRational::new(self.mant.clone(), BigInt::from(1) << ((-self.exp) as usize))
        }
    }

    pub fn abs_f64(&self) -> f64 {
        self.to_rational().abs().to_f64().unwrap()
    }
}

/// Exact value of `sum_i c_i prod_j x_j^e_ij`.
pub fn exact_eval(exponents: &[Vec<u32>], coefficients: &[f64], x: &[f64]) -> Dyadic {
    let max_e = exponents.iter().flatten().copied().max().unwrap_or(0) as usize;
    let powers: Vec<Vec<Dyadic>> = x
        .iter()
        .map(|&xi| {
            let base = Dyadic::from_f64(xi);
            let mut table = vec![Dyadic::one()];
            for k in 1..=max_e {
                let next = table[k - 1].mul(&base);
                table.push(next);
            }
            table
        })
        .collect();
    let mut sum = Dyadic::zero();
    for (row, &c) in exponents.iter().zip(coefficients) {
        let mut term = Dyadic::from_f64(c);
        for (j, &e) in row.iter().enumerate() {
            if e > 0 {
                term = term.mul(&powers[j][e as usize]);
            }
        }
        sum = sum.add(&term);
    }
    sum
}

/// `|approx - exact|` and `|exact|`, both rounded to double.
pub fn error_against(approx: f64, exact: &Dyadic) -> (f64, f64) {
    (Dyadic::from_f64(approx).add(&exact.neg()).abs_f64(), exact.abs_f64())
}

/// Minimum operation count over the whole factorisation space, by exhaustive
/// recursion: a group of one monomial is a leaf; otherwise try every variable
/// present in the group as the next single-power factor.
pub fn brute_force_min_ops(group: &[Vec<u32>]) -> usize {
    if group.len() == 1 {
        return group[0]
            .iter()
            .map(|&e| match e {
                0 => 0,
                1 => 1,
                _ => 2,
            })
            .sum();
    }
    let m = group[0].len();
    let mut best = usize::MAX;
    for v in 0..m {
        let factored: Vec<Vec<u32>> = group
            .iter()
            .filter(|r| r[v] >= 1)
            .map(|r| {
                let mut r = r.clone();
                r[v] -= 1;
                r
            })
            .collect();
        if factored.is_empty() {
            continue;
        }
        let remainder: Vec<Vec<u32>> = group.iter().filter(|r| r[v] == 0).cloned().collect();
        let mut cost = 1 + brute_force_min_ops(&factored);
        if !remainder.is_empty() {
            cost += 1 + brute_force_min_ops(&remainder);
        }
        best = best.min(cost);
    }
    best
}

/// Exponent vectors in `{0..=n}^m` whose norm of the given kind is at most `n`,
/// counted by visiting every vector.
pub fn enumerate_ball(m: usize, n: u64, kind: &str) -> u64 {
    let side = n + 1;
    let total = side.pow(m as u32);
    let mut count = 0;
    for code in 0..total {
        let mut c = code;
        let mut sum = 0u64;
        let mut sq = 0u64;
        let mut max = 0u64;
        for _ in 0..m {
            let e = c % side;
            c /= side;
            sum += e;
            sq += e * e;
            max = max.max(e);
        }
        let inside = match kind {
            "total" => sum <= n,
            "euclidean" => sq <= n * n,
            "maximal" => max <= n,
            _ => unreachable!(),
        };
        if inside {
            count += 1;
        }
    }
    count
}

/// Seeded random instance with dimension and maximal degree drawn from `1..=max`.
pub fn random_instance(seed: u64, max_dim: usize, max_deg: usize, range: (f64, f64)) -> CanonicalPolynomial {
    let mut rng = BenchRng::from_seed(seed);
    let m = 1 + (rng.next_u64() % max_dim as u64) as usize;
    let n = 1 + (rng.next_u64() % max_deg as u64) as usize;
    random_polynomial(m, n, CoefficientRange::new(range.0, range.1).unwrap(), &mut rng)
        .unwrap()
        .polynomial
}

pub fn random_point(rng: &mut BenchRng, m: usize, lo: f64, hi: f64) -> Vec<f64> {
    (0..m).map(|_| rng.uniform(lo, hi)).collect()
}

pub fn central_difference(p: &CanonicalPolynomial, x: &[f64], var: usize, h: f64) -> f64 {
    let mut hi = x.to_vec();
    let mut lo = x.to_vec();
    hi[var] += h;
    lo[var] -= h;
    (p.eval(&hi).unwrap() - p.eval(&lo).unwrap()) / (2.0 * h)
}

/// Multiset of (coefficient bits, exponent row) pairs.
pub fn monomial_set(p: &CanonicalPolynomial) -> BTreeSet<(u64, Vec<u32>)> {
    p.coefficients()
        .iter()
        .map(|c| c.to_bits())
        .zip(p.exponent_rows())
        .collect()
}

/// Every subset of size `1..=max_size` of the exponent vectors in `{0..=max_exp}^m`.
pub fn all_small_instances(m: usize, max_exp: u32, max_size: usize) -> Vec<Vec<Vec<u32>>> {
    let side = max_exp + 1;
    let vectors: Vec<Vec<u32>> = (0..side.pow(m as u32))
        .map(|mut code| {
            (0..m)
                .map(|_| {
                    let e = code % side;
                    code /= side;
                    e
                })
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn rec(
        vectors: &[Vec<u32>],
        start: usize,
        max_size: usize,
        chosen: &mut Vec<Vec<u32>>,
        out: &mut Vec<Vec<Vec<u32>>>,
    ) {
        if !chosen.is_empty() {
            out.push(chosen.clone());
        }
        if chosen.len() == max_size {
            return;
        }
        for i in start..vectors.len() {
            chosen.push(vectors[i].clone());
            rec(vectors, i + 1, max_size, chosen, out);
            chosen.pop();
        }
    }
    rec(&vectors, 0, max_size, &mut chosen, &mut out);
    out
}
