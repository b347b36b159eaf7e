//! Sparse multivariate polynomials in canonical form, their Horner
//! factorisations, and a small register machine that evaluates them.
//!
//! ```
//! use polyhorner::{compile, factorize_greedy, CanonicalPolynomial};
//!
//! let p = CanonicalPolynomial::new(
//!     vec![5.0, 1.0, 2.0, 3.0],
//!     vec![vec![0, 0, 0], vec![3, 1, 0], vec![2, 0, 1], vec![1, 1, 1]],
//!     true,
//! )
//! .unwrap();
//! let f = factorize_greedy(&p);
//! assert_eq!(f.op_count(), 10);
//! assert_eq!(p.num_ops_canonical(), 27);
//!
//! let recipe = compile(&f);
//! assert_eq!(recipe.eval(p.coefficients(), &[-2.0, 3.0, 1.0]).unwrap(), -29.0);
//! ```
//!
//! Variable indices are 0-based throughout the library API; rendered
//! factorisations and the command line use 1-based names (`x_1`, `--var 1`).

pub mod bench;
pub mod cli;
pub mod degree;
pub mod horner;
pub mod io;
pub mod poly;
pub mod recipe;

pub use degree::{count_fully_occupied, CountError, DegreeKind};
pub use horner::{
    factorize_greedy, factorize_optimal, HornerError, HornerFactorisation, HornerNode,
    OptimalFactorisation, SearchError,
};
pub use poly::{CanonicalPolynomial, ExponentVector, PolyError};
pub use recipe::{compile, Evaluator, Instruction, Recipe, RecipeError, Violation};

/// Shortest round-trip decimal, always with a fractional part or exponent (`1.0`, `0.1`, `1e-7`).
pub fn fmt_coeff(c: f64) -> String {
    format!("{c:?}")
}
