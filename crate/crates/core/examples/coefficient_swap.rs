//! A factorisation depends only on the exponents, so one compiled recipe
//! serves every coefficient vector on the same support.

use polyhorner::bench::BenchRng;
use polyhorner::{compile, factorize_greedy, CanonicalPolynomial};

fn main() {
    let exponents = vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![2, 1], vec![1, 3]];
    let template = CanonicalPolynomial::new(vec![0.0; exponents.len()], exponents, true).unwrap();
    let recipe = compile(&factorize_greedy(&template));
    let mut evaluator = recipe.evaluator();

    let mut rng = BenchRng::from_seed(1);
    let x = [0.75, -0.5];
    for _ in 0..4 {
        let coeffs: Vec<f64> = (0..template.num_monomials()).map(|_| rng.uniform(-1.0, 1.0)).collect();
        let p = template.with_coefficients(coeffs).unwrap();
        let reused = evaluator.eval(p.coefficients(), &x).unwrap();
        let direct = p.eval(&x).unwrap();
        println!("{p}\n    recipe {reused:?}, canonical {direct:?}");
    }
}
