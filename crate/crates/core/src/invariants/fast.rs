//! Rooted U-polynomial of a tree by the product recursion
//! `U^r(T) = z * prod_i (U^r(S_i) + U(S_i))` over the child subtrees `S_i`.

use rustc_hash::FxHashMap;

use crate::graph::RootedTree;
use crate::poly::UPolynomial;

pub fn u_rooted_tree(t: &RootedTree) -> UPolynomial {
    let ch = t.children();
    // Isomorphic subtrees share a class id and are evaluated once.
    let mut class_of = vec![usize::MAX; t.vertex_count()];
    let mut classes: FxHashMap<Vec<usize>, usize> = FxHashMap::default();
    let mut polys: Vec<UPolynomial> = Vec::new();
    for &v in t.preorder().iter().rev() {
        let mut kids: Vec<usize> = ch[v].iter().map(|&c| class_of[c]).collect();
        kids.sort_unstable();
        let next = classes.len();
        let id = *classes.entry(kids.clone()).or_insert(next);
        if id == next {
            let mut factors: Vec<UPolynomial> = kids
                .iter()
                .map(|&k| {
                    let r = &polys[k];
                    r + &r.star_specialize()
                })
                .collect();
            factors.sort_by_key(UPolynomial::len);
            let p = factors
                .into_iter()
                .fold(UPolynomial::z(), |acc, f| acc * f);
            polys.push(p);
        }
        class_of[v] = id;
    }
    polys.swap_remove(class_of[t.root()])
}

/// `U(T)`, the star specialization of the rooted polynomial.
pub fn u_tree(t: &RootedTree) -> UPolynomial {
    u_rooted_tree(t).star_specialize()
}
