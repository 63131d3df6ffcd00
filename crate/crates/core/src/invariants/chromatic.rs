//! Chromatic symmetric function in the power-sum basis, obtained from U by
//! `y = 0`, `x_i = -p_i` and the sign `(-1)^{|V|}`. The rooted version also
//! divides by `z` and keeps `z` as the marker of the root's block.

use std::fmt;

use serde::Serialize;

use crate::graph::{Graph, RootedGraph};
use crate::poly::{PolyJson, UPolynomial};

use super::{u_polynomial_with, u_rooted_tree, u_tree, InvariantError, DEFAULT_SUBSET_CAP};

/// Polynomial in the power sums `p_1, p_2, ...` (stored partition-indexed) and,
/// for rooted graphs, the marker `z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSumPoly {
    poly: UPolynomial,
}

#[derive(Serialize)]
struct PowerSumJson {
    basis: &'static str,
    #[serde(flatten)]
    poly: PolyJson,
}

impl PowerSumPoly {
    /// Coefficients with `p_λ` stored where `x_λ` would be.
    pub fn as_poly(&self) -> &UPolynomial {
        &self.poly
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&PowerSumJson {
            basis: "power_sum",
            poly: PolyJson::from(&self.poly),
        })
        .expect("polynomial serializes")
    }

    fn from_u(u: &UPolynomial, n: usize, rooted: bool) -> Self {
        let global = if n.is_multiple_of(2) { 1 } else { -1 };
        let poly = UPolynomial::from_terms(u.terms().filter(|(m, _)| m.y_exp() == 0).map(|(m, c)| {
            let sign = if m.parts().len() % 2 == 0 { 1 } else { -1 };
            let mut m = m.clone();
            if rooted {
                m = crate::poly::Monomial::new(m.parts().clone(), 0, m.z_exp() - 1);
            }
            (m, c * sign * global)
        }));
        Self { poly }
    }
}

impl fmt::Display for PowerSumPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly.display_with("p"))
    }
}

pub fn chromatic_symmetric(g: &Graph, root: Option<usize>) -> Result<PowerSumPoly, InvariantError> {
    chromatic_symmetric_with(g, root, DEFAULT_SUBSET_CAP)
}

/// Trees go through the product recursion; other graphs through subset expansion.
pub fn chromatic_symmetric_with(
    g: &Graph,
    root: Option<usize>,
    max_edges: usize,
) -> Result<PowerSumPoly, InvariantError> {
    let n = g.vertex_count();
    match root {
        None => {
            let u = if g.is_tree() {
                u_tree(&RootedGraph::new(g.clone(), 0)?.to_tree()?)
            } else {
                u_polynomial_with(g, max_edges)?
            };
            Ok(PowerSumPoly::from_u(&u, n, false))
        }
        Some(r) => {
            let rg = RootedGraph::new(g.clone(), r)?;
            let u = if g.is_tree() {
                u_rooted_tree(&rg.to_tree()?)
            } else {
                super::u_rooted_with(&rg, super::Strategy::Subset, max_edges)?
            };
            Ok(PowerSumPoly::from_u(&u, n, true))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_vertex_is_p1() {
        let x = chromatic_symmetric(&Graph::empty(1), None).unwrap();
        assert_eq!(x.to_string(), "p1");
    }

    #[test]
    fn path_on_three_vertices() {
        let g = Graph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        let x = chromatic_symmetric(&g, None).unwrap();
        assert_eq!(x.as_poly(), &"x1^3 - 2*x1*x2 + x3".parse().unwrap());
        assert_eq!(x.to_string(), "p3 - 2*p1*p2 + p1^3");
    }

    #[test]
    fn rooted_edge() {
        let g = Graph::new(2, vec![(0, 1)]).unwrap();
        let x = chromatic_symmetric(&g, Some(0)).unwrap();
        assert_eq!(x.as_poly(), &"z - x1".parse().unwrap());
        assert_eq!(x.to_string(), "-p1 + z");
        assert!(x.to_json().starts_with(r#"{"basis":"power_sum","terms":"#));
    }

    #[test]
    fn triangle_drops_cycle_terms() {
        // X(K_3) = p1^3 - 3 p1 p2 + 2 p3
        let g = Graph::new(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap();
        let x = chromatic_symmetric(&g, None).unwrap();
        assert_eq!(x.as_poly(), &"x1^3 - 3*x1*x2 + 2*x3".parse().unwrap());
    }
}
