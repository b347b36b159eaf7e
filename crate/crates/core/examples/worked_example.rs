//! Factorise, compile and evaluate a small three-variable polynomial.

use polyhorner::{compile, factorize_greedy, CanonicalPolynomial};

fn main() {
    let p = CanonicalPolynomial::new(
        vec![5.0, 1.0, 2.0, 3.0],
        vec![vec![0, 0, 0], vec![3, 1, 0], vec![2, 0, 1], vec![1, 1, 1]],
        true,
    )
    .unwrap();
    println!("p(x) = {p}");

    let f = factorize_greedy(&p);
    println!("[#ops={}] p(x) = {}", f.op_count(), f.render(p.coefficients()).unwrap());
    println!("canonical form needs {} operations", p.num_ops_canonical());

    let recipe = compile(&f);
    let x = [-2.0, 3.0, 1.0];
    println!("p({x:?}) = {:?}", recipe.eval(p.coefficients(), &x).unwrap());
}
