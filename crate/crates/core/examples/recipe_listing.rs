//! Print, validate and reload the instruction listing of a compiled recipe.

use polyhorner::recipe::parse_listing;
use polyhorner::{compile, factorize_greedy, CanonicalPolynomial, Recipe};

fn main() {
    let p = CanonicalPolynomial::new(
        vec![1.0, -2.0, 0.5],
        vec![vec![0, 0, 3], vec![2, 1, 0], vec![1, 0, 0]],
        true,
    )
    .unwrap();
    let f = factorize_greedy(&p);
    let recipe = compile(&f);
    println!("{}", f.render(p.coefficients()).unwrap());
    print!("{}", recipe.dump());
    println!(
        "{} counted ops, {} slots, result in slot {}",
        recipe.op_count(),
        recipe.slot_count(),
        recipe.result_slot()
    );

    let reloaded = Recipe::from_parts(
        parse_listing(&recipe.dump()).unwrap(),
        recipe.dimension(),
        recipe.num_coefficients(),
        recipe.slot_count(),
        recipe.result_slot(),
    );
    assert!(reloaded.validate().is_empty());
    let x = [1.5, 2.0, -1.0];
    println!("p({x:?}) = {:?}", reloaded.eval(p.coefficients(), &x).unwrap());
}
