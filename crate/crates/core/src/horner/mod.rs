//! Horner factorisation trees.
//!
//! A tree is built purely from the exponent matrix of a polynomial. Leaves
//! refer to coefficients by index, so a single tree serves every polynomial
//! sharing that exponent matrix.
//!
//! Every branch pulls exactly one power of one variable out of a group of
//! monomials:
//!
//! ```text
//! group = x_v * (factored) + (remainder)
//! ```
//!
//! and a group becomes a leaf once it holds a single monomial.

mod greedy;
mod search;

use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::poly::{CanonicalPolynomial, ExponentVector};

pub use greedy::factorize_greedy;
pub use search::{factorize_optimal, OptimalFactorisation, SearchError, DEFAULT_NODE_BUDGET};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HornerError {
    #[error("factorisation has {expected} coefficients, got {found}")]
    CoefficientCount { expected: usize, found: usize },
    #[error("malformed factorisation tree: {0}")]
    Malformed(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HornerNode {
    /// A single monomial: `coefficient[coeff_index] * prod x_j^exponents_j`.
    Leaf {
        coeff_index: usize,
        exponents: ExponentVector,
    },
    /// `x_factor_var * factored + remainder`, with `factor_var` 0-based.
    Branch {
        factor_var: usize,
        factored: Box<HornerNode>,
        remainder: Option<Box<HornerNode>>,
    },
}

impl HornerNode {
    pub fn leaf(coeff_index: usize, exponents: impl Into<ExponentVector>) -> Self {
        HornerNode::Leaf {
            coeff_index,
            exponents: exponents.into(),
        }
    }

    pub fn branch(factor_var: usize, factored: HornerNode, remainder: Option<HornerNode>) -> Self {
        HornerNode::Branch {
            factor_var,
            factored: Box::new(factored),
            remainder: remainder.map(Box::new),
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, HornerNode::Leaf { .. })
    }

    /// Operations needed to evaluate this subtree.
    ///
    /// A leaf costs one multiplication per variable with exponent >= 1 and one
    /// extra exponentiation per variable with exponent >= 2. A branch costs one
    /// multiplication by its factor, and one addition if it has a remainder.
    /// Multiplications by coefficients equal to one are still charged.
    pub fn num_ops(&self) -> usize {
        match self {
            HornerNode::Leaf { exponents, .. } => leaf_cost(exponents.entries()),
            HornerNode::Branch {
                factored,
                remainder,
                ..
            } => {
                1 + factored.num_ops()
                    + remainder.as_ref().map_or(0, |r| 1 + r.num_ops())
            }
        }
    }

    pub fn count_branches(&self) -> usize {
        match self {
            HornerNode::Leaf { .. } => 0,
            HornerNode::Branch {
                factored,
                remainder,
                ..
            } => 1 + factored.count_branches() + remainder.as_ref().map_or(0, |r| r.count_branches()),
        }
    }

    /// Depth-first visit of every branch's factor variable.
    pub fn factor_vars(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_factor_vars(&mut out);
        out
    }

    fn collect_factor_vars(&self, out: &mut Vec<usize>) {
        if let HornerNode::Branch {
            factor_var,
            factored,
            remainder,
        } = self
        {
            out.push(*factor_var);
            factored.collect_factor_vars(out);
            if let Some(r) = remainder {
                r.collect_factor_vars(out);
            }
        }
    }
}

pub(crate) fn leaf_cost(exponents: &[u32]) -> usize {
    exponents
        .iter()
        .map(|&e| match e {
            0 => 0,
            1 => 1,
            _ => 2,
        })
        .sum()
}

/// A complete factorisation tree for a polynomial of known shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HornerFactorisation {
    root: HornerNode,
    dimension: usize,
    num_coefficients: usize,
    op_count: usize,
}

impl HornerFactorisation {
    /// Wraps a tree after checking it is well formed: every coefficient index
    /// below `num_coefficients` appears in exactly one leaf, and all factor
    /// variables and leaf exponent vectors fit `dimension`.
    pub fn from_root(
        root: HornerNode,
        dimension: usize,
        num_coefficients: usize,
    ) -> Result<Self, HornerError> {
        let mut seen = vec![false; num_coefficients];
        check_node(&root, dimension, &mut seen)?;
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(HornerError::Malformed(format!(
                "coefficient {missing} has no leaf"
            )));
        }
        Ok(Self::from_root_unchecked(root, dimension, num_coefficients))
    }

    pub(crate) fn from_root_unchecked(
        root: HornerNode,
        dimension: usize,
        num_coefficients: usize,
    ) -> Self {
        let op_count = root.num_ops();
        HornerFactorisation {
            root,
            dimension,
            num_coefficients,
            op_count,
        }
    }

    pub fn root(&self) -> &HornerNode {
        &self.root
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn num_coefficients(&self) -> usize {
        self.num_coefficients
    }

    pub fn op_count(&self) -> usize {
        self.op_count
    }

    fn check_coefficients(&self, coefficients: &[f64]) -> Result<(), HornerError> {
        if coefficients.len() != self.num_coefficients {
            return Err(HornerError::CoefficientCount {
                expected: self.num_coefficients,
                found: coefficients.len(),
            });
        }
        Ok(())
    }

    /// Human-readable nested form, e.g.
    /// `x_1 (x_1 (x_1 (1.0 x_2) + 2.0 x_3) + 3.0 x_2 x_3) + 5.0`.
    pub fn render(&self, coefficients: &[f64]) -> Result<String, HornerError> {
        self.check_coefficients(coefficients)?;
        let mut out = String::new();
        write_node(&mut out, &self.root, coefficients).expect("writing to a String");
        Ok(out)
    }

    /// Multiplies all factors back out into canonical form, with monomials
    /// ordered by coefficient index.
    pub fn expand(&self, coefficients: &[f64]) -> Result<CanonicalPolynomial, HornerError> {
        self.check_coefficients(coefficients)?;
        let mut rows: Vec<Option<Vec<u32>>> = vec![None; self.num_coefficients];
        let mut acc = vec![0u32; self.dimension];
        collect_monomials(&self.root, &mut acc, &mut rows);
        let exponents: Vec<Vec<u32>> = rows
            .into_iter()
            .map(|r| r.expect("validated tree covers every coefficient"))
            .collect();
        CanonicalPolynomial::new(coefficients.to_vec(), exponents, false)
            .map_err(|e| HornerError::Malformed(e.to_string()))
    }
}

fn check_node(node: &HornerNode, dimension: usize, seen: &mut [bool]) -> Result<(), HornerError> {
    match node {
        HornerNode::Leaf {
            coeff_index,
            exponents,
        } => {
            if exponents.dimension() != dimension {
                return Err(HornerError::Malformed(format!(
                    "leaf {coeff_index} has {} exponents, expected {dimension}",
                    exponents.dimension()
                )));
            }
            match seen.get_mut(*coeff_index) {
                None => Err(HornerError::Malformed(format!(
                    "coefficient index {coeff_index} out of range"
                ))),
                Some(true) => Err(HornerError::Malformed(format!(
                    "coefficient {coeff_index} appears in more than one leaf"
                ))),
                Some(s) => {
                    *s = true;
                    Ok(())
                }
            }
        }
        HornerNode::Branch {
            factor_var,
            factored,
            remainder,
        } => {
            if *factor_var >= dimension {
                return Err(HornerError::Malformed(format!(
                    "factor variable {factor_var} out of range"
                )));
            }
            check_node(factored, dimension, seen)?;
            if let Some(r) = remainder {
                check_node(r, dimension, seen)?;
            }
            Ok(())
        }
    }
}

fn collect_monomials(node: &HornerNode, acc: &mut [u32], rows: &mut [Option<Vec<u32>>]) {
    match node {
        HornerNode::Leaf {
            coeff_index,
            exponents,
        } => {
            let row = acc
                .iter()
                .zip(exponents.entries())
                .map(|(a, e)| a + e)
                .collect();
            rows[*coeff_index] = Some(row);
        }
        HornerNode::Branch {
            factor_var,
            factored,
            remainder,
        } => {
            acc[*factor_var] += 1;
            collect_monomials(factored, acc, rows);
            acc[*factor_var] -= 1;
            if let Some(r) = remainder {
                collect_monomials(r, acc, rows);
            }
        }
    }
}

/// Writes ` x_i` / ` x_i^e` for every nonzero exponent (1-based names).
pub(crate) fn write_monomial_factors<W: fmt::Write>(out: &mut W, exponents: &[u32]) -> fmt::Result {
    for (j, &e) in exponents.iter().enumerate() {
        match e {
            0 => {}
            1 => write!(out, " x_{}", j + 1)?,
            _ => write!(out, " x_{}^{}", j + 1, e)?,
        }
    }
    Ok(())
}

fn write_node(out: &mut String, node: &HornerNode, coefficients: &[f64]) -> fmt::Result {
    match node {
        HornerNode::Leaf {
            coeff_index,
            exponents,
        } => {
            out.push_str(&crate::fmt_coeff(coefficients[*coeff_index]));
            write_monomial_factors(out, exponents.entries())
        }
        HornerNode::Branch {
            factor_var,
            factored,
            remainder,
        } => {
            write!(out, "x_{} (", factor_var + 1)?;
            write_node(out, factored, coefficients)?;
            out.push(')');
            if let Some(r) = remainder {
                out.push_str(" + ");
                write_node(out, r, coefficients)?;
            }
            Ok(())
        }
    }
}

/// Working representation of a monomial while a tree is being built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Term {
    pub index: usize,
    pub exps: Vec<u32>,
}

pub(crate) fn terms_of(p: &CanonicalPolynomial) -> Vec<Term> {
    p.exponents()
        .iter()
        .enumerate()
        .map(|(index, e)| Term {
            index,
            exps: e.entries().to_vec(),
        })
        .collect()
}

/// Splits `terms` into those containing `var` (with one power removed) and the rest.
pub(crate) fn split_on(terms: Vec<Term>, var: usize) -> (Vec<Term>, Vec<Term>) {
    let (mut factored, remainder): (Vec<Term>, Vec<Term>) =
        terms.into_iter().partition(|t| t.exps[var] >= 1);
    for t in &mut factored {
        t.exps[var] -= 1;
    }
    (factored, remainder)
}

pub(crate) fn leaf_of(term: Term) -> HornerNode {
    HornerNode::Leaf {
        coeff_index: term.index,
        exponents: ExponentVector::new(term.exps),
    }
}
