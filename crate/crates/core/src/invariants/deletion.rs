//! Deletion–contraction for the W-polynomial of a vertex-weighted multigraph.

use rustc_hash::FxHashMap;

use crate::graph::{Graph, WeightedGraph};
use crate::poly::{Monomial, Partition, UPolynomial};

use super::InvariantError;

/// Largest number of labelings tried when canonicalising a memo key.
const MAX_LABELINGS: usize = 5040;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WOptions {
    pub max_edges: usize,
    pub memoize: bool,
}

impl Default for WOptions {
    fn default() -> Self {
        Self {
            max_edges: 24,
            memoize: true,
        }
    }
}

/// Colour refinement on (weight, degree), then the lexicographically least
/// encoding over all labelings that respect the colour classes. Falls back to
/// a single colour-sorted labeling when the classes allow too many orderings;
/// the key is then still exact, only less likely to be shared.
fn memo_key(g: &WeightedGraph) -> Vec<u32> {
    let n = g.graph().vertex_count();
    let edges = g.graph().edges();
    let mut nbrs = vec![Vec::new(); n];
    for &(u, v) in edges {
        nbrs[u].push(v);
        nbrs[v].push(u);
    }
    let mut colour: Vec<usize> = {
        let sig: Vec<(u32, usize)> = (0..n).map(|v| (g.weights()[v], nbrs[v].len())).collect();
        relabel(&sig)
    };
    loop {
        let sig: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut around: Vec<usize> = nbrs[v].iter().map(|&u| colour[u]).collect();
                around.sort_unstable();
                (colour[v], around)
            })
            .collect();
        let next = relabel(&sig);
        let classes = |c: &[usize]| c.iter().max().map_or(0, |m| m + 1);
        let done = classes(&next) == classes(&colour);
        colour = next;
        if done {
            break;
        }
    }
    let mut cells: Vec<Vec<usize>> = vec![Vec::new(); colour.iter().max().map_or(0, |m| m + 1)];
    for v in 0..n {
        cells[colour[v]].push(v);
    }
    let mut labelings = 1usize;
    for c in &cells {
        labelings = labelings.saturating_mul((1..=c.len()).product());
    }
    let encode = |order: &[usize]| {
        let mut label = vec![0usize; n];
        for (i, &v) in order.iter().enumerate() {
            label[v] = i;
        }
        let mut es: Vec<(u32, u32)> = edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (label[u] as u32, label[v] as u32);
                (a.min(b), a.max(b))
            })
            .collect();
        es.sort_unstable();
        let mut key = Vec::with_capacity(1 + n + 2 * es.len());
        key.push(n as u32);
        key.extend(order.iter().map(|&v| g.weights()[v]));
        key.extend(es.into_iter().flat_map(|(a, b)| [a, b]));
        key
    };
    let base: Vec<usize> = cells.iter().flatten().copied().collect();
    if labelings > MAX_LABELINGS {
        return encode(&base);
    }
    let mut best: Option<Vec<u32>> = None;
    let mut order = base;
    let bounds: Vec<(usize, usize)> = {
        let mut start = 0;
        cells
            .iter()
            .map(|c| {
                let b = (start, start + c.len());
                start += c.len();
                b
            })
            .collect()
    };
    permute_cells(&mut order, &bounds, 0, &mut |o| {
        let key = encode(o);
        if best.as_ref().is_none_or(|b| key < *b) {
            best = Some(key);
        }
    });
    best.expect("at least one labeling")
}

fn relabel<T: Ord + Clone>(sig: &[T]) -> Vec<usize> {
    let mut distinct: Vec<T> = sig.to_vec();
    distinct.sort();
    distinct.dedup();
    sig.iter()
        .map(|s| distinct.binary_search(s).expect("present"))
        .collect()
}

/// Visits every ordering of `order` that permutes only within each `[start, end)` cell.
fn permute_cells(order: &mut Vec<usize>, cells: &[(usize, usize)], cell: usize, visit: &mut dyn FnMut(&[usize])) {
    let Some(&(start, end)) = cells.get(cell) else {
        visit(order);
        return;
    };
    permute_range(order, start, end, &mut |o| permute_cells(o, cells, cell + 1, visit));
}

fn permute_range(order: &mut Vec<usize>, k: usize, end: usize, visit: &mut dyn FnMut(&mut Vec<usize>)) {
    if end - k <= 1 {
        visit(order);
        return;
    }
    for i in k..end {
        order.swap(k, i);
        permute_range(order, k + 1, end, visit);
        order.swap(k, i);
    }
}

fn isolated(g: &WeightedGraph) -> UPolynomial {
    let parts = Partition::new(g.weights().iter().copied()).expect("weights are positive");
    UPolynomial::term(Monomial::new(parts, 0, 0), 1)
}

struct Recursion {
    memo: Option<FxHashMap<Vec<u32>, UPolynomial>>,
}

impl Recursion {
    fn w(&mut self, g: &WeightedGraph) -> UPolynomial {
        let loops = g.graph().edges().iter().filter(|(u, v)| u == v).count() as u32;
        if loops > 0 {
            let kept: Vec<_> = g.graph().edges().iter().copied().filter(|(u, v)| u != v).collect();
            let stripped = WeightedGraph::new(
                Graph::new(g.graph().vertex_count(), kept).expect("same vertices"),
                g.weights().to_vec(),
            )
            .expect("same weights");
            let y = UPolynomial::term(Monomial::new(Partition::empty(), loops, 0), 1);
            return self.w(&stripped) * y;
        }
        if g.graph().edge_count() == 0 {
            return isolated(g);
        }
        let key = self.memo.as_ref().map(|_| memo_key(g));
        if let (Some(memo), Some(key)) = (&self.memo, &key) {
            if let Some(p) = memo.get(key) {
                return p.clone();
            }
        }
        let deleted = g.delete(0).expect("edge 0 exists");
        let contracted = g.contract(0).expect("edge 0 is not a loop");
        let result = self.w(&deleted) + self.w(&contracted);
        if let (Some(memo), Some(key)) = (&mut self.memo, key) {
            memo.insert(key, result.clone());
        }
        result
    }
}

/// W-polynomial by deletion–contraction on the lowest-indexed edge, loops
/// first stripped as factors of `y`.
pub fn w_polynomial_with(g: &WeightedGraph, options: &WOptions) -> Result<UPolynomial, InvariantError> {
    let m = g.graph().edge_count();
    if m > options.max_edges {
        return Err(InvariantError::CapExceeded {
            edges: m,
            cap: options.max_edges,
        });
    }
    let mut rec = Recursion {
        memo: options.memoize.then(FxHashMap::default),
    };
    Ok(rec.w(g))
}

pub fn w_polynomial(g: &WeightedGraph) -> Result<UPolynomial, InvariantError> {
    w_polynomial_with(g, &WOptions::default())
}
