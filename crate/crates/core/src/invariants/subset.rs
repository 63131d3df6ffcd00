//! Direct summation over all edge subsets.

use rayon::prelude::*;
use rustc_hash::FxHashMap;

use crate::graph::{DisjointSets, Graph};
use crate::poly::{checked_mul, Coeff, Monomial, Partition, UPolynomial};

use super::InvariantError;

/// (partition of non-root components, root component size or 0, nullity)
type Key = (Partition, u32, u32);

fn tally(g: &Graph, root: Option<usize>, masks: std::ops::Range<u64>) -> FxHashMap<Key, Coeff> {
    let n = g.vertex_count();
    let edges = g.edges();
    let mut counts: FxHashMap<Key, Coeff> = FxHashMap::default();
    let mut sizes = Vec::with_capacity(n);
    for mask in masks {
        let mut ds = DisjointSets::new(n);
        let mut nullity = 0u32;
        for (e, &(u, v)) in edges.iter().enumerate() {
            if mask >> e & 1 == 1 && !ds.union(u, v) {
                nullity += 1;
            }
        }
        let root_comp = root.map(|r| ds.find(r));
        let mut root_size = 0;
        sizes.clear();
        for v in 0..n {
            if ds.find(v) == v {
                let s = ds.component_size(v) as u32;
                if Some(v) == root_comp {
                    root_size = s;
                } else {
                    sizes.push(s);
                }
            }
        }
        let parts = Partition::new(sizes.iter().copied()).expect("component sizes are positive");
        *counts.entry((parts, root_size, nullity)).or_insert(0) += 1;
    }
    counts
}

fn binomial(n: u32, k: u32) -> Coeff {
    (0..k).fold(1, |acc: Coeff, i| checked_mul(acc, (n - i) as Coeff) / (i + 1) as Coeff)
}

/// Sums `x_{λ_-(A)} z^{λ_r(A)} (y-1)^{|A|-r(A)}` over all subsets `A`
/// (no `z` factor when `root` is `None`), expanding `(y-1)^m` in powers of `y`.
pub(super) fn expand(g: &Graph, root: Option<usize>, cap: usize) -> Result<UPolynomial, InvariantError> {
    let m = g.edge_count();
    if m > cap || m >= 64 {
        return Err(InvariantError::CapExceeded { edges: m, cap });
    }
    let total = 1u64 << m;
    let counts = if m < 14 {
        tally(g, root, 0..total)
    } else {
        let chunk = 1u64 << 12;
        (0..total / chunk)
            .into_par_iter()
            .map(|i| tally(g, root, i * chunk..(i + 1) * chunk))
            .reduce(FxHashMap::default, |mut a, b| {
                for (k, c) in b {
                    *a.entry(k).or_insert(0) += c;
                }
                a
            })
    };
    let mut terms = Vec::new();
    for ((parts, root_size, nullity), count) in counts {
        for j in 0..=nullity {
            let sign = if (nullity - j) % 2 == 0 { 1 } else { -1 };
            let c = checked_mul(count, checked_mul(sign, binomial(nullity, j)));
            terms.push((Monomial::new(parts.clone(), j, root_size), c));
        }
    }
    Ok(UPolynomial::from_terms(terms))
}
