//! Recovering a rooted tree from its rooted U-polynomial by peeling off
//! root-degree-one branches with exact division.

use rayon::prelude::*;
use thiserror::Error;

use crate::graph::RootedTree;
use crate::invariants::u_rooted_tree;
use crate::poly::UPolynomial;
use crate::Limits;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReconstructionError {
    #[error("malformed rooted polynomial: {0}")]
    Malformed(String),
    #[error("{size} vertices exceeds the enumeration cap of {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("reconstruction failed: {0}")]
    ReconstructionFailed(String),
}

/// Rooted trees on `n` vertices, one per isomorphism class, in decreasing
/// order of canonical level sequence (path first, star last).
#[derive(Debug, Clone)]
pub struct RootedTrees {
    next: Option<Vec<usize>>,
}

impl RootedTrees {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            next: (n > 0).then(|| (0..n).collect()),
        }
    }
}

impl Iterator for RootedTrees {
    type Item = RootedTree;

    fn next(&mut self) -> Option<RootedTree> {
        let cur = self.next.take()?;
        // Successor: the last vertex p deeper than the root's children is
        // replaced, along with everything after it, by copies of the subtree
        // pattern starting at p's parent-level predecessor q.
        if let Some(p) = cur.iter().rposition(|&d| d > 1) {
            let q = cur[..p].iter().rposition(|&d| d == cur[p] - 1).expect("parent level precedes p");
            let mut succ = cur.clone();
            for i in p..succ.len() {
                succ[i] = succ[i - (p - q)];
            }
            self.next = Some(succ);
        }
        Some(RootedTree::from_level_sequence(&cur).expect("valid level sequence"))
    }
}

pub fn enumerate_rooted(n: usize) -> Result<RootedTrees, ReconstructionError> {
    enumerate_rooted_with(n, &Limits::default())
}

pub fn enumerate_rooted_with(n: usize, limits: &Limits) -> Result<RootedTrees, ReconstructionError> {
    if n > limits.rooted_vertices {
        return Err(ReconstructionError::CapExceeded {
            size: n,
            cap: limits.rooted_vertices,
        });
    }
    Ok(RootedTrees::new(n))
}

/// Vertex count and root degree: `n` is the exponent of the bare `z^n`
/// term, and the root degree is the fewest `x` factors on a `z^1` term.
pub fn read_invariants(p: &UPolynomial) -> Result<(usize, usize), ReconstructionError> {
    let malformed = |m: &str| Err(ReconstructionError::Malformed(m.to_string()));
    let Some(top) = p.max_z() else {
        return malformed("zero polynomial");
    };
    let bare = p
        .terms()
        .any(|(m, c)| m.z_exp() == top && m.y_exp() == 0 && m.parts().is_empty() && c == 1);
    if top == 0 || !bare {
        return malformed("no bare z^n term");
    }
    let Some(d) = p.terms().filter(|(m, _)| m.z_exp() == 1).map(|(m, _)| m.degree() - 1).min() else {
        return malformed("no z^1 term");
    };
    Ok((top as usize, d))
}

pub fn reconstruct(p: &UPolynomial) -> Result<RootedTree, ReconstructionError> {
    reconstruct_with(p, &Limits::default())
}

/// Rebuilds a rooted tree from `U^r`. A root of degree one is split off and
/// the rest rebuilt recursively; otherwise each branch is found by trying
/// every degree-one candidate of the right size as an exact divisor of
/// `U^r / z`, largest branches first. The result is checked against `p`.
pub fn reconstruct_with(p: &UPolynomial, limits: &Limits) -> Result<RootedTree, ReconstructionError> {
    if p.terms().any(|(m, _)| m.y_exp() != 0) {
        return Err(ReconstructionError::Malformed("contains y".into()));
    }
    read_invariants(p)?;
    let t = rebuild(p, limits).map_err(|e| match e {
        ReconstructionError::Malformed(m) => ReconstructionError::ReconstructionFailed(m),
        other => other,
    })?;
    if u_rooted_tree(&t) != *p {
        return Err(ReconstructionError::ReconstructionFailed(
            "rebuilt tree does not reproduce the polynomial".into(),
        ));
    }
    Ok(t)
}

fn rebuild(p: &UPolynomial, limits: &Limits) -> Result<RootedTree, ReconstructionError> {
    let (n, d) = read_invariants(p)?;
    if n == 1 || d == 0 {
        return Ok(RootedTree::single());
    }
    if d == 1 {
        let rest = p
            .filter(|m| m.z_exp() >= 2)
            .div_z()
            .expect("every kept term has z");
        return Ok(RootedTree::single().concat(&rebuild(&rest, limits)?));
    }
    let lowest = p
        .terms()
        .find(|(m, _)| m.z_exp() == 1 && m.degree() == d + 1)
        .map(|(m, _)| m.parts().clone())
        .expect("read_invariants saw this term");
    let mut quotient = p.div_z().expect("z^1 is the lowest z power");
    let mut branches = Vec::with_capacity(d);
    // parts() runs from the largest part down
    for size in lowest.parts() {
        let below = size as usize;
        let candidates: Vec<RootedTree> = enumerate_rooted_with(below, limits)?
            .map(|t| RootedTree::single().concat(&t))
            .collect();
        let found = candidates.par_iter().find_map_first(|c| {
            let f = u_rooted_tree(c).div_z().expect("rooted polynomial has z");
            quotient.exact_divide(&f).ok().map(|q| (c.clone(), q))
        });
        let Some((branch, q)) = found else {
            return Err(ReconstructionError::ReconstructionFailed(format!(
                "no branch with {} vertices divides",
                below + 1
            )));
        };
        quotient = q;
        branches.push(branch);
    }
    if quotient != UPolynomial::one() {
        return Err(ReconstructionError::ReconstructionFailed(
            "branches do not account for the whole polynomial".into(),
        ));
    }
    Ok(branches
        .iter()
        .skip(1)
        .fold(branches[0].clone(), |acc, b| acc.join(b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::CodeMode;
    use std::collections::BTreeSet;

    const EXAMPLE: &str = "x1^5*z + 3*x1^4*z^2 + 4*x1^3*z^3 + 4*x1^2*z^4 + 3*x1*z^5 + z^6 \
        + 2*x1^3*x2*z + 5*x1^2*x2*z^2 + 4*x1*x2*z^3 + x2*z^4 + x1^2*x3*z + 2*x1*x3*z^2 + x3*z^3";

    /// Every recursive tree (parent of `i` below `i`) on `n` vertices, up to rooted isomorphism.
    fn brute_force_classes(n: usize) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        let mut parent = vec![0usize; n];
        loop {
            let p: Vec<Option<usize>> = (0..n).map(|i| (i > 0).then(|| parent[i])).collect();
            out.insert(RootedTree::from_parents(p).unwrap().canonical_form(CodeMode::Rooted).to_string());
            let mut i = n.saturating_sub(1);
            while i > 0 && parent[i] == i - 1 {
                parent[i] = 0;
                i -= 1;
            }
            if i == 0 {
                return out;
            }
            parent[i] += 1;
        }
    }

    #[test]
    fn rooted_counts() {
        let counts: Vec<usize> = (1..=8).map(|n| enumerate_rooted(n).unwrap().count()).collect();
        assert_eq!(counts, [1, 1, 2, 4, 9, 20, 48, 115]);
        assert_eq!(enumerate_rooted(0).unwrap().count(), 0);
        assert!(enumerate_rooted(17).is_err());
    }

    #[test]
    fn rooted_enumeration_matches_brute_force() {
        for n in 1..=7 {
            let codes: Vec<String> = enumerate_rooted(n)
                .unwrap()
                .map(|t| t.canonical_form(CodeMode::Rooted).to_string())
                .collect();
            let distinct: BTreeSet<String> = codes.iter().cloned().collect();
            assert_eq!(distinct.len(), codes.len(), "duplicates at n = {n}");
            assert_eq!(distinct, brute_force_classes(n), "n = {n}");
        }
    }

    #[test]
    fn invariants_of_small_polynomials() {
        assert_eq!(read_invariants(&UPolynomial::z()).unwrap(), (1, 0));
        assert_eq!(read_invariants(&"x1*z + z^2".parse().unwrap()).unwrap(), (2, 1));
        assert_eq!(read_invariants(&EXAMPLE.parse().unwrap()).unwrap(), (6, 3));
        assert!(matches!(
            read_invariants(&"x1*z".parse().unwrap()),
            Err(ReconstructionError::Malformed(_))
        ));
        assert!(matches!(
            read_invariants(&"z^2".parse().unwrap()),
            Err(ReconstructionError::Malformed(_))
        ));
    }

    #[test]
    fn example_tree() {
        let one = RootedTree::single();
        let edge = one.concat(&one);
        let expected = one.concat(&one.concat(&edge)).join(&edge).join(&edge);
        let t = reconstruct(&EXAMPLE.parse().unwrap()).unwrap();
        assert_eq!(t.canonical_form(CodeMode::Rooted), expected.canonical_form(CodeMode::Rooted));
        assert_eq!(reconstruct(&UPolynomial::z()).unwrap().vertex_count(), 1);
    }

    #[test]
    fn round_trip_up_to_seven() {
        for n in 1..=7 {
            for t in enumerate_rooted(n).unwrap() {
                let back = reconstruct(&u_rooted_tree(&t)).unwrap();
                assert_eq!(back.canonical_form(CodeMode::Rooted), t.canonical_form(CodeMode::Rooted));
            }
        }
    }

    #[test]
    fn rejects_non_tree_polynomials() {
        // rooted triangle
        let tri = "x1^2*z + 2*x2*z + 3*z^3 + z^3*y".parse::<UPolynomial>().unwrap();
        assert!(reconstruct(&tri).is_err());
        let bogus = "x1*z + 2*x1^2*z + z^3".parse::<UPolynomial>().unwrap();
        assert!(matches!(reconstruct(&bogus), Err(ReconstructionError::ReconstructionFailed(_))));
    }
}
