//! Multigraphs, vertex-weighted multigraphs and rooted trees.

mod canon;
mod codec;
mod tree;

use thiserror::Error;

use crate::poly::Partition;

pub use canon::{CanonicalCode, CodeMode};
pub use codec::{GraphJson, TreeJson};
pub use tree::RootedTree;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge {index} has endpoint {vertex} outside 0..{n}")]
    EndpointOutOfRange { index: usize, vertex: usize, n: usize },
    #[error("edge index {0} out of range")]
    EdgeOutOfRange(usize),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("vertex weights must be positive and one per vertex")]
    InvalidWeights,
    #[error("cannot contract loop edge {0}")]
    LoopContraction(usize),
    #[error("not a tree: {0}")]
    NotATree(String),
    #[error("parse error at {position}: {message}")]
    Parse { position: String, message: String },
}

pub(crate) struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSets {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub(crate) fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    /// Returns false if `a` and `b` were already connected.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }

    pub(crate) fn component_size(&mut self, v: usize) -> usize {
        let r = self.find(v);
        self.size[r]
    }
}

/// Finite multigraph; loops and parallel edges are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

/// Component statistics of the spanning subgraph `G|_A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetStats {
    pub lambda: Partition,
    pub lambda_root: Option<u32>,
    pub lambda_minus: Option<Partition>,
    pub rank: usize,
}

impl Graph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        for (index, &(u, v)) in edges.iter().enumerate() {
            for vertex in [u, v] {
                if vertex >= n {
                    return Err(GraphError::EndpointOutOfRange { index, vertex, n });
                }
            }
        }
        Ok(Self { n, edges })
    }

    pub fn empty(n: usize) -> Self {
        Self { n, edges: Vec::new() }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn is_loop(&self, e: usize) -> bool {
        let (u, v) = self.edges[e];
        u == v
    }

    pub fn is_tree(&self) -> bool {
        if self.n == 0 || self.edges.len() != self.n - 1 {
            return false;
        }
        let mut ds = DisjointSets::new(self.n);
        self.edges.iter().all(|&(u, v)| ds.union(u, v))
    }

    /// Same graph with the edge list reordered by `order` (a permutation of edge indices).
    pub fn with_edge_order(&self, order: &[usize]) -> Self {
        Self {
            n: self.n,
            edges: order.iter().map(|&i| self.edges[i]).collect(),
        }
    }

    pub fn subset_stats(&self, subset: &[usize], root: Option<usize>) -> Result<SubsetStats, GraphError> {
        if let Some(r) = root {
            if r >= self.n {
                return Err(GraphError::VertexOutOfRange(r));
            }
        }
        let mut chosen = vec![false; self.edges.len()];
        for &e in subset {
            *chosen.get_mut(e).ok_or(GraphError::EdgeOutOfRange(e))? = true;
        }
        let mut ds = DisjointSets::new(self.n);
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            if chosen[e] {
                ds.union(u, v);
            }
        }
        let root_comp = root.map(|r| ds.find(r));
        let mut all = Vec::new();
        let mut minus = Vec::new();
        for v in 0..self.n {
            if ds.find(v) == v {
                all.push(ds.size[v] as u32);
                if Some(v) != root_comp {
                    minus.push(ds.size[v] as u32);
                }
            }
        }
        let components = all.len();
        Ok(SubsetStats {
            lambda: Partition::new(all).expect("component sizes are positive"),
            lambda_root: root.map(|r| ds.component_size(r) as u32),
            lambda_minus: root.map(|_| Partition::new(minus).expect("component sizes are positive")),
            rank: self.n - components,
        })
    }
}

/// Multigraph with a positive integer weight on every vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightedGraph {
    graph: Graph,
    weights: Vec<u32>,
}

impl WeightedGraph {
    pub fn new(graph: Graph, weights: Vec<u32>) -> Result<Self, GraphError> {
        if weights.len() != graph.n || weights.contains(&0) {
            return Err(GraphError::InvalidWeights);
        }
        Ok(Self { graph, weights })
    }

    /// All weights equal to one.
    pub fn unit(graph: Graph) -> Self {
        let weights = vec![1; graph.n];
        Self { graph, weights }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn total_weight(&self) -> u64 {
        self.weights.iter().map(|&w| w as u64).sum()
    }

    pub fn delete(&self, e: usize) -> Result<Self, GraphError> {
        if e >= self.graph.edges.len() {
            return Err(GraphError::EdgeOutOfRange(e));
        }
        let mut edges = self.graph.edges.clone();
        edges.remove(e);
        Ok(Self {
            graph: Graph { n: self.graph.n, edges },
            weights: self.weights.clone(),
        })
    }

    /// Deletes `e` and identifies its endpoints; the merged vertex takes the
    /// smaller index and the sum of both weights. Other copies of `e` become loops.
    pub fn contract(&self, e: usize) -> Result<Self, GraphError> {
        let &(u, v) = self.graph.edges.get(e).ok_or(GraphError::EdgeOutOfRange(e))?;
        if u == v {
            return Err(GraphError::LoopContraction(e));
        }
        let (keep, gone) = (u.min(v), u.max(v));
        let relabel = |x: usize| {
            let x = if x == gone { keep } else { x };
            if x > gone {
                x - 1
            } else {
                x
            }
        };
        let edges = self
            .graph
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != e)
            .map(|(_, &(a, b))| (relabel(a), relabel(b)))
            .collect();
        let mut weights = self.weights.clone();
        weights[keep] = weights[keep]
            .checked_add(weights[gone])
            .expect("weight overflow");
        weights.remove(gone);
        Ok(Self {
            graph: Graph { n: self.graph.n - 1, edges },
            weights,
        })
    }
}

/// Graph with a distinguished root vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootedGraph {
    graph: Graph,
    root: usize,
}

impl RootedGraph {
    pub fn new(graph: Graph, root: usize) -> Result<Self, GraphError> {
        if root >= graph.n {
            return Err(GraphError::VertexOutOfRange(root));
        }
        Ok(Self { graph, root })
    }

    /// The one-vertex graph.
    pub fn single() -> Self {
        Self {
            graph: Graph::empty(1),
            root: 0,
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn root(&self) -> usize {
        self.root
    }

    /// Disjoint union with the two roots identified (the root of `self` survives).
    pub fn join(&self, other: &Self) -> Self {
        let n = self.graph.n;
        let map = |v: usize| match v.cmp(&other.root) {
            std::cmp::Ordering::Equal => self.root,
            std::cmp::Ordering::Less => n + v,
            std::cmp::Ordering::Greater => n + v - 1,
        };
        let mut edges = self.graph.edges.clone();
        edges.extend(other.graph.edges.iter().map(|&(a, b)| (map(a), map(b))));
        Self {
            graph: Graph {
                n: n + other.graph.n - 1,
                edges,
            },
            root: self.root,
        }
    }

    /// Disjoint union plus an edge between the roots, rooted at the root of `self`.
    pub fn concat(&self, other: &Self) -> Self {
        let n = self.graph.n;
        let mut edges = self.graph.edges.clone();
        edges.extend(other.graph.edges.iter().map(|&(a, b)| (n + a, n + b)));
        edges.push((self.root, n + other.root));
        Self {
            graph: Graph {
                n: n + other.graph.n,
                edges,
            },
            root: self.root,
        }
    }

    pub fn to_tree(&self) -> Result<RootedTree, GraphError> {
        RootedTree::from_edges(self.graph.n, self.root, &self.graph.edges)
    }
}
