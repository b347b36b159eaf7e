//! Partial derivatives stay in canonical form and can be factorised again.

use polyhorner::{factorize_greedy, CanonicalPolynomial};

fn main() {
    let p = CanonicalPolynomial::new(
        vec![5.0, 1.0, 2.0, 3.0],
        vec![vec![0, 0, 0], vec![3, 1, 0], vec![2, 0, 1], vec![1, 1, 1]],
        true,
    )
    .unwrap();
    let x = [0.5, -1.5, 2.0];
    for var in 0..p.dimension() {
        let d = p.partial_derivative(var).unwrap();
        let f = factorize_greedy(&d);
        println!("dp/dx_{} = {}", var + 1, f.render(d.coefficients()).unwrap());
        println!("    at {x:?}: {:?}", d.eval(&x).unwrap());
    }
}
