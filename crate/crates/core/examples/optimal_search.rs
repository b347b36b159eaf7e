//! Compare the greedy factorisation with the search for a minimal one.

use polyhorner::horner::DEFAULT_NODE_BUDGET;
use polyhorner::{factorize_greedy, factorize_optimal, CanonicalPolynomial, SearchError};

fn main() {
    // x_1 occurs most often, which leads greedy astray
    let exponents = vec![
        vec![1, 0, 0],
        vec![1, 1, 1],
        vec![0, 1, 1],
        vec![0, 2, 2],
        vec![2, 0, 0],
        vec![1, 2, 2],
    ];
    let p = CanonicalPolynomial::new(vec![1.0; exponents.len()], exponents, true).unwrap();

    let greedy = factorize_greedy(&p);
    println!("greedy  [#ops={}] {}", greedy.op_count(), greedy.render(p.coefficients()).unwrap());

    let best = factorize_optimal(&p, DEFAULT_NODE_BUDGET).unwrap();
    let f = &best.factorisation;
    println!(
        "optimal [#ops={}] {}  ({} expansions)",
        f.op_count(),
        f.render(p.coefficients()).unwrap(),
        best.expansions
    );

    match factorize_optimal(&p, 3) {
        Ok(r) => println!("budget 3: {} ops, exhausted = {}", r.factorisation.op_count(), r.exhausted),
        Err(SearchError::BudgetExhausted { fallback, .. }) => {
            println!("budget 3: exhausted, greedy fallback with {} ops", fallback.op_count())
        }
    }
}
