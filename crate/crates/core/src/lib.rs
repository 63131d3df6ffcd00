//! Exact U-, W- and rooted U-polynomials of graphs and trees.

pub mod poly;

pub use poly::{Coeff, DivisionError, Monomial, Partition, PolyError, UPolynomial};
pub mod graph;

pub use graph::{CanonicalCode, CodeMode, Graph, GraphError, RootedGraph, RootedTree, WeightedGraph};

mod limits;
pub use limits::Limits;

pub mod invariants;
pub mod constructions;
pub mod reconstruction;
pub mod search;
