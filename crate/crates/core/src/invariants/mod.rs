//! U-, W- and rooted U-polynomials, each available through two independent
//! computations that can be checked against one another.

mod chromatic;
mod deletion;
mod fast;
mod subset;

use thiserror::Error;

use crate::graph::{Graph, GraphError, RootedGraph};
use crate::poly::UPolynomial;

pub use chromatic::{chromatic_symmetric, chromatic_symmetric_with, PowerSumPoly};
pub use deletion::{w_polynomial, w_polynomial_with, WOptions};
pub use fast::{u_rooted_tree, u_tree};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("{edges} edges exceeds the cap of {cap}; use the fast strategy for trees")]
    CapExceeded { edges: usize, cap: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Sum over all edge subsets.
    Subset,
    /// Product recursion over the branches; trees only.
    Fast,
}

pub const DEFAULT_SUBSET_CAP: usize = 24;

/// U-polynomial by subset expansion.
pub fn u_polynomial(g: &Graph) -> Result<UPolynomial, InvariantError> {
    u_polynomial_with(g, DEFAULT_SUBSET_CAP)
}

pub fn u_polynomial_with(g: &Graph, max_edges: usize) -> Result<UPolynomial, InvariantError> {
    subset::expand(g, None, max_edges)
}

pub fn u_rooted(g: &RootedGraph, strategy: Strategy) -> Result<UPolynomial, InvariantError> {
    u_rooted_with(g, strategy, DEFAULT_SUBSET_CAP)
}

pub fn u_rooted_with(g: &RootedGraph, strategy: Strategy, max_edges: usize) -> Result<UPolynomial, InvariantError> {
    match strategy {
        Strategy::Subset => subset::expand(g.graph(), Some(g.root()), max_edges),
        Strategy::Fast => Ok(u_rooted_tree(&g.to_tree()?)),
    }
}
