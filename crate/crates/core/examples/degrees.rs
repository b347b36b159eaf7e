//! Degree notions, occupancy, and the size of fully occupied polynomials.

use polyhorner::{count_fully_occupied, CanonicalPolynomial, DegreeKind};

fn main() {
    let p = CanonicalPolynomial::new(
        vec![5.0, 1.0, 2.0, 3.0],
        vec![vec![0, 0, 0], vec![3, 1, 0], vec![2, 0, 1], vec![1, 1, 1]],
        true,
    )
    .unwrap();
    for kind in DegreeKind::ALL {
        println!(
            "{kind:>9}: degree {:.4}, occupancy {:.4}",
            p.degree(kind),
            p.occupancy(kind).unwrap()
        );
    }

    println!();
    println!("monomials in a fully occupied polynomial of degree 5:");
    println!("{:>3} {:>10} {:>10} {:>10}", "m", "total", "euclidean", "maximal");
    for m in 1..=7 {
        let counts: Vec<u64> = DegreeKind::ALL
            .iter()
            .map(|&k| count_fully_occupied(m, 5, k).unwrap())
            .collect();
        println!("{m:>3} {:>10} {:>10} {:>10}", counts[0], counts[1], counts[2]);
    }
}
