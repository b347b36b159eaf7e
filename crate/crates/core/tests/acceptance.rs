//! Acceptance criteria. Prints one `criterion N: PASS|FAIL ...` line each and
//! exits non-zero if any criterion fails.

mod common;

use std::process::Command;
use std::time::Instant;

use polyhorner::bench::{summarize, sweep, BenchRng, BenchmarkConfig};
use polyhorner::{
    compile, count_fully_occupied, factorize_greedy, factorize_optimal, CanonicalPolynomial,
    DegreeKind,
};

use common::*;

const INSTANCES: u64 = 500;

type Outcome = (bool, String);

fn main() {
    let criteria: [fn() -> Outcome; 9] = [
        criterion_1_worked_example,
        criterion_2_oracle_equivalence,
        criterion_3_operation_count_dominance,
        criterion_4_optimal_search,
        criterion_5_numerical_stability_trend,
        criterion_6_combinatorics,
        criterion_7_derivatives,
        criterion_8_coefficient_swap,
        criterion_9_determinism,
    ];
    let mut failed = 0;
    for (i, criterion) in criteria.iter().enumerate() {
        let (pass, detail) = std::panic::catch_unwind(criterion)
            .unwrap_or_else(|_| (false, "panicked".to_string()));
        println!("criterion {}: {} {detail}", i + 1, if pass { "PASS" } else { "FAIL" });
        failed += usize::from(!pass);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

fn oracle_instances() -> Vec<CanonicalPolynomial> {
    (0..INSTANCES)
        .map(|seed| random_instance(0xACCE_0000 + seed, 5, 5, (-2.0, 2.0)))
        .collect()
}

fn criterion_1_worked_example() -> Outcome {
    let p = example_p();
    let f = factorize_greedy(&p);
    let rendered = f.render(p.coefficients()).unwrap();
    let value = compile(&f).eval(p.coefficients(), &[-2.0, 3.0, 1.0]).unwrap();
    let canonical_value = p.eval(&[-2.0, 3.0, 1.0]).unwrap();
    let pass = rendered == EXAMPLE_STRING
        && f.op_count() == 10
        && p.num_ops_canonical() == 27
        && value == -29.0
        && canonical_value == -29.0;
    (
        pass,
        format!(
            "rendered {rendered:?}, ops_horner {}, ops_canonical {}, eval {value:?}",
            f.op_count(),
            p.num_ops_canonical()
        ),
    )
}

fn criterion_2_oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut rng = BenchRng::from_seed(2);
    let mut worst = 0.0f64;
    let mut eval_failures = 0;
    let mut expand_failures = 0;
    for p in oracle_instances() {
        let f = factorize_greedy(&p);
        if f.expand(p.coefficients()).unwrap() != p {
            expand_failures += 1;
        }
        let recipe = compile(&f);
        let x = random_point(&mut rng, p.dimension(), -2.0, 2.0);
        let value = recipe.eval(p.coefficients(), &x).unwrap();
        let exact = exact_eval(&p.exponent_rows(), p.coefficients(), &x);
        let (err, mag) = error_against(value, &exact);
        let scaled = err / mag.max(1.0);
        worst = worst.max(scaled);
        if scaled > 1e-9 {
            eval_failures += 1;
        }
    }
    (
        eval_failures == 0 && expand_failures == 0,
        format!(
            "{INSTANCES} instances, worst scaled error {worst:e}, {eval_failures} eval and \
             {expand_failures} expansion mismatches, {:.1?}",
            start.elapsed()
        ),
    )
}

fn criterion_3_operation_count_dominance() -> Outcome {
    let mut exceeded = Vec::new();
    let mut ties = Vec::new();
    for p in oracle_instances() {
        let h = factorize_greedy(&p).op_count();
        let c = p.num_ops_canonical();
        if h > c {
            exceeded.push((p.exponent_rows(), h, c));
        } else if h == c && p.num_monomials() >= 2 {
            ties.push((p.exponent_rows(), h, c));
        }
    }
    (
        exceeded.is_empty() && ties.is_empty(),
        format!(
            "{INSTANCES} instances, {} with ops_horner > ops_canonical {:?}, \
             {} non-strict with N >= 2 {:?}",
            exceeded.len(),
            exceeded,
            ties.len(),
            ties
        ),
    )
}

fn criterion_4_optimal_search() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    let mut not_minimal = Vec::new();
    let mut worse_than_greedy = 0;
    for m in 1..=3 {
        for exps in all_small_instances(m, 2, 4) {
            let coeffs = (1..=exps.len()).map(|i| i as f64).collect();
            let p = CanonicalPolynomial::new(coeffs, exps.clone(), false).unwrap();
            let optimal = factorize_optimal(&p, polyhorner::horner::DEFAULT_NODE_BUDGET)
                .unwrap()
                .factorisation
                .op_count();
            let minimum = brute_force_min_ops(&exps);
            if optimal != minimum {
                not_minimal.push((exps, optimal, minimum));
            }
            if optimal > factorize_greedy(&p).op_count() {
                worse_than_greedy += 1;
            }
            checked += 1;
        }
    }
    not_minimal.truncate(5);
    (
        not_minimal.is_empty() && worse_than_greedy == 0,
        format!(
            "{checked} instances, mismatches {not_minimal:?}, {worse_than_greedy} worse than greedy, {:.1?}",
            start.elapsed()
        ),
    )
}

fn criterion_5_numerical_stability_trend() -> Outcome {
    let start = Instant::now();
    let report_ = sweep(&BenchmarkConfig::new(5, 5, 5, 100, 0)).unwrap();
    assert!(report_.skipped.is_empty());
    let cells = summarize(&report_.records).unwrap();
    let better = cells
        .iter()
        .filter(|c| c.mean_abs_error_horner <= c.mean_abs_error_canonical)
        .count();
    let grand = |f: fn(&polyhorner::bench::CellSummary) -> f64| {
        cells.iter().map(f).sum::<f64>() / cells.len() as f64
    };
    let grand_ratio = grand(|c| c.mean_abs_error_canonical) / grand(|c| c.mean_abs_error_horner);
    let share = better as f64 / cells.len() as f64;
    (
        share >= 0.7 && grand_ratio >= 1.0,
        format!(
            "horner no worse in {better}/{} cells, grand-mean ratio {grand_ratio:.3}, {:.1?}",
            cells.len(),
            start.elapsed()
        ),
    )
}

fn criterion_6_combinatorics() -> Outcome {
    let mut mismatches = Vec::new();
    for m in 1..=4usize {
        for n in 0..=6u64 {
            for kind in DegreeKind::ALL {
                let counted = count_fully_occupied(m, n, kind).unwrap();
                let enumerated = enumerate_ball(m, n, kind.name());
                if counted != enumerated {
                    mismatches.push((m, n, kind, counted, enumerated));
                }
                if kind == DegreeKind::Maximal && counted != (n + 1).pow(m as u32) {
                    mismatches.push((m, n, kind, counted, (n + 1).pow(m as u32)));
                }
            }
        }
    }
    (
        mismatches.is_empty(),
        format!("m <= 4, n <= 6, all kinds, mismatches {mismatches:?}"),
    )
}

fn criterion_7_derivatives() -> Outcome {
    let mut rng = BenchRng::from_seed(7);
    let mut worst = 0.0f64;
    let mut failures = 0;
    for seed in 0..100 {
        let p = random_instance(0xD1FF_0000 + seed, 4, 4, (-1.0, 1.0));
        for _ in 0..5 {
            let x = random_point(&mut rng, p.dimension(), -1.0, 1.0);
            for var in 0..p.dimension() {
                let exact = p.partial_derivative(var).unwrap().eval(&x).unwrap();
                let fd = central_difference(&p, &x, var, 1e-5);
                let rel = (exact - fd).abs() / exact.abs().max(1.0);
                worst = worst.max(rel);
                if rel > 1e-6 {
                    failures += 1;
                }
            }
        }
    }
    (
        failures == 0,
        format!("100 polynomials x 5 points, worst relative difference {worst:e}, {failures} failures"),
    )
}

fn criterion_8_coefficient_swap() -> Outcome {
    let mut rng = BenchRng::from_seed(8);
    let mut mismatches = 0;
    for seed in 0..100 {
        let p = random_instance(0x5A_0000 + seed, 5, 4, (-1.0, 1.0));
        let coeffs: Vec<f64> = (0..p.num_monomials()).map(|_| rng.uniform(-1.0, 1.0)).collect();
        let q = p.with_coefficients(coeffs).unwrap();
        let x = random_point(&mut rng, p.dimension(), -1.0, 1.0);
        let reused = compile(&factorize_greedy(&p)).eval(q.coefficients(), &x).unwrap();
        let fresh = compile(&factorize_greedy(&q)).eval(q.coefficients(), &x).unwrap();
        if reused.to_bits() != fresh.to_bits() {
            mismatches += 1;
        }
    }
    (mismatches == 0, format!("100 pairs, {mismatches} bitwise mismatches"))
}

fn criterion_9_determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, threads: &str| {
        let out = dir.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_polyhorner"))
            .args(["bench", "--max-dim", "3", "--max-degree", "3", "--polys-per-cell", "3"])
            .args(["--trials", "20", "--seed", "9", "--out"])
            .arg(&out)
            .env("RAYON_NUM_THREADS", threads)
            .output()
            .unwrap();
        assert!(status.status.success());
        std::fs::read(out).unwrap()
    };
    let a = run("a.csv", "1");
    let b = run("b.csv", "4");
    (
        a == b && !a.is_empty(),
        format!("two runs, {} bytes, identical: {}", a.len(), a == b),
    )
}
