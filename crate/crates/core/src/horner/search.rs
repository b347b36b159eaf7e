//! Best-first (A*) search for a factorisation with the fewest operations.
//!
//! A search state is a stack of monomial groups that still need factorising,
//! the operations already committed, and the trail of factor choices that led
//! there. Expansion always works on the group at the top of the stack; groups
//! are independent subproblems, so fixing the expansion order loses no
//! solutions while removing permutations of the same choices.
//!
//! Lower bound for an open group of `k >= 2` monomials: it needs `k - 1`
//! additions plus at least one multiplication, i.e. `k` operations.
//! Single-monomial groups are closed as leaves as soon as they appear.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;
use std::rc::Rc;

use thiserror::Error;

use crate::poly::CanonicalPolynomial;

use super::{
    factorize_greedy, leaf_cost, leaf_of, split_on, terms_of, HornerFactorisation, HornerNode,
    Term,
};

pub const DEFAULT_NODE_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    /// No complete factorisation beat the greedy bound within the budget.
    #[error("search budget of {budget} expansions exhausted before any complete factorisation")]
    BudgetExhausted {
        budget: usize,
        fallback: Box<HornerFactorisation>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptimalFactorisation {
    pub factorisation: HornerFactorisation,
    /// Number of states taken off the queue and expanded.
    pub expansions: usize,
    /// True when the budget ran out; the factorisation is then only the best found.
    pub exhausted: bool,
}

type Group = Rc<[Term]>;

/// Factor choices applied in depth-first pre-order.
struct Trail {
    var: usize,
    prev: Option<Rc<Trail>>,
}

struct State {
    cost: usize,
    bound: usize,
    open: Vec<Group>,
    trail: Option<Rc<Trail>>,
}

struct Queued {
    estimate: usize,
    cost: usize,
    seq: u64,
    state: State,
}

impl Queued {
    fn key(&self) -> (Reverse<usize>, usize, Reverse<u64>) {
        (Reverse(self.estimate), self.cost, Reverse(self.seq))
    }
}

impl PartialEq for Queued {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for Queued {}

impl PartialOrd for Queued {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Queued {
    // max-heap: lowest estimate first, then deepest (highest committed cost), then oldest
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

/// Searches for a minimal-operation factorisation, expanding at most
/// `node_budget` states.
///
/// The greedy factorisation serves as the upper bound: states that cannot beat
/// or match it are pruned, and the result never costs more than greedy. When
/// the budget runs out after a complete candidate was seen, the best one is
/// returned with `exhausted` set.
pub fn factorize_optimal(
    p: &CanonicalPolynomial,
    node_budget: usize,
) -> Result<OptimalFactorisation, SearchError> {
    let greedy = factorize_greedy(p);
    let dimension = p.dimension();
    let num_coefficients = p.num_monomials();
    let upper = greedy.op_count();

    let mut root_terms = terms_of(p);
    if root_terms.len() == 1 {
        let leaf = leaf_of(root_terms.pop().unwrap());
        return Ok(OptimalFactorisation {
            factorisation: HornerFactorisation::from_root_unchecked(leaf, dimension, num_coefficients),
            expansions: 0,
            exhausted: false,
        });
    }

    let root_group: Group = root_terms.into();
    let start = State {
        cost: 0,
        bound: root_group.len(),
        open: vec![root_group],
        trail: None,
    };

    let mut heap = BinaryHeap::new();
    let mut seq = 0u64;
    heap.push(Queued {
        estimate: start.bound,
        cost: 0,
        seq,
        state: start,
    });

    let mut best: Option<(usize, Option<Rc<Trail>>)> = None;
    let mut expansions = 0usize;

    while let Some(Queued { state, .. }) = heap.pop() {
        if state.open.is_empty() {
            // first complete state off the queue is optimal
            let tree = rebuild(p, state.trail.as_ref());
            return Ok(OptimalFactorisation {
                factorisation: HornerFactorisation::from_root_unchecked(tree, dimension, num_coefficients),
                expansions,
                exhausted: false,
            });
        }
        if expansions >= node_budget {
            return finish_exhausted(p, greedy, best, expansions, node_budget);
        }
        expansions += 1;

        let incumbent = best.as_ref().map_or(upper, |(c, _)| *c);
        let mut open = state.open;
        let group = open.pop().unwrap();
        for var in 0..dimension {
            if !group.iter().any(|t| t.exps[var] >= 1) {
                continue;
            }
            let (factored, remainder) = split_on(group.to_vec(), var);
            let mut cost = state.cost + 1;
            let mut bound = state.bound - group.len();
            let mut next_open = open.clone();
            if !remainder.is_empty() {
                cost += 1;
                push_group(remainder, &mut next_open, &mut cost, &mut bound);
            }
            push_group(factored, &mut next_open, &mut cost, &mut bound);

            let estimate = cost + bound;
            if estimate > incumbent {
                continue;
            }
            let trail = Some(Rc::new(Trail {
                var,
                prev: state.trail.clone(),
            }));
            if next_open.is_empty() && best.as_ref().is_none_or(|(c, _)| cost < *c) {
                best = Some((cost, trail.clone()));
            }
            seq += 1;
            heap.push(Queued {
                estimate,
                cost,
                seq,
                state: State {
                    cost,
                    bound,
                    open: next_open,
                    trail,
                },
            });
        }
    }

    // Everything below the greedy bound was pruned away: greedy is optimal.
    match best {
        Some((_, trail)) => Ok(OptimalFactorisation {
            factorisation: HornerFactorisation::from_root_unchecked(
                rebuild(p, trail.as_ref()),
                dimension,
                num_coefficients,
            ),
            expansions,
            exhausted: false,
        }),
        None => Ok(OptimalFactorisation {
            factorisation: greedy,
            expansions,
            exhausted: false,
        }),
    }
}

fn push_group(terms: Vec<Term>, open: &mut Vec<Group>, cost: &mut usize, bound: &mut usize) {
    if terms.len() == 1 {
        *cost += leaf_cost(&terms[0].exps);
    } else {
        *bound += terms.len();
        open.push(terms.into());
    }
}

fn finish_exhausted(
    p: &CanonicalPolynomial,
    greedy: HornerFactorisation,
    best: Option<(usize, Option<Rc<Trail>>)>,
    expansions: usize,
    budget: usize,
) -> Result<OptimalFactorisation, SearchError> {
    match best {
        Some((cost, trail)) if cost <= greedy.op_count() => Ok(OptimalFactorisation {
            factorisation: HornerFactorisation::from_root_unchecked(
                rebuild(p, trail.as_ref()),
                p.dimension(),
                p.num_monomials(),
            ),
            expansions,
            exhausted: true,
        }),
        _ => Err(SearchError::BudgetExhausted {
            budget,
            fallback: Box::new(greedy),
        }),
    }
}

/// Replays a trail of factor choices into a tree.
fn rebuild(p: &CanonicalPolynomial, trail: Option<&Rc<Trail>>) -> HornerNode {
    let mut vars = Vec::new();
    let mut cur = trail;
    while let Some(t) = cur {
        vars.push(t.var);
        cur = t.prev.as_ref();
    }
    vars.reverse();
    let mut choices = vars.into_iter();
    let tree = replay(terms_of(p), &mut choices);
    debug_assert!(choices.next().is_none());
    tree
}

fn replay(mut terms: Vec<Term>, choices: &mut impl Iterator<Item = usize>) -> HornerNode {
    if terms.len() == 1 {
        return leaf_of(terms.pop().unwrap());
    }
    let var = choices.next().expect("trail covers every open group");
    let (factored, remainder) = split_on(terms, var);
    // the factored group sits on top of the stack, so it is expanded first
    let factored = replay(factored, choices);
    let remainder = (!remainder.is_empty()).then(|| replay(remainder, choices));
    HornerNode::branch(var, factored, remainder)
}
