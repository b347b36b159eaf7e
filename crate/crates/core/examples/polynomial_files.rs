//! Round-trip a polynomial and its derivative through the JSON file format.

use polyhorner::io::{read_polynomial, to_json, write_polynomial};
use polyhorner::CanonicalPolynomial;

fn main() {
    let p = CanonicalPolynomial::new(vec![2.0, -1.0, 4.0], vec![vec![2, 1], vec![0, 3], vec![0, 0]], true).unwrap();
    let dir = std::env::temp_dir().join("polyhorner-example");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("q.json");
    write_polynomial(&path, &p, Some("q")).unwrap();

    let file = read_polynomial(&path).unwrap();
    assert_eq!(file.polynomial, p);
    let d = file.polynomial.partial_derivative(1).unwrap();
    print!("{}", to_json(&d, Some("d(q)/dx_2")));
}
