use crate::poly::CanonicalPolynomial;

use super::{leaf_of, split_on, terms_of, HornerFactorisation, HornerNode, Term};

/// Factorises by repeatedly pulling out the variable that occurs in the most
/// monomials of the current group.
///
/// Usage counts how many monomials contain the variable at all, not how often.
/// Ties go to the lowest variable index, so the result is fully determined by
/// the exponent matrix.
pub fn factorize_greedy(p: &CanonicalPolynomial) -> HornerFactorisation {
    let root = build(terms_of(p), p.dimension());
    HornerFactorisation::from_root_unchecked(root, p.dimension(), p.num_monomials())
}

fn build(mut terms: Vec<Term>, dimension: usize) -> HornerNode {
    if terms.len() == 1 {
        return leaf_of(terms.pop().unwrap());
    }
    let var = most_used_var(&terms, dimension);
    let (factored, remainder) = split_on(terms, var);
    let factored = build(factored, dimension);
    let remainder = (!remainder.is_empty()).then(|| build(remainder, dimension));
    HornerNode::branch(var, factored, remainder)
}

fn most_used_var(terms: &[Term], dimension: usize) -> usize {
    let mut usage = vec![0usize; dimension];
    for t in terms {
        for (u, &e) in usage.iter_mut().zip(&t.exps) {
            if e >= 1 {
                *u += 1;
            }
        }
    }
    let mut best = 0;
    for (v, &u) in usage.iter().enumerate() {
        if u > usage[best] {
            best = v;
        }
    }
    // distinct rows: a group of two or more always has a non-constant monomial
    debug_assert!(usage[best] > 0);
    best
}
