use std::collections::VecDeque;

use super::{Graph, GraphError, RootedGraph};

/// Rooted tree stored as a parent array.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootedTree {
    parent: Vec<Option<usize>>,
    root: usize,
}

impl RootedTree {
    /// The one-vertex tree.
    pub fn single() -> Self {
        Self {
            parent: vec![None],
            root: 0,
        }
    }

    pub fn from_edges(n: usize, root: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::NotATree("no vertices".into()));
        }
        if root >= n {
            return Err(GraphError::VertexOutOfRange(root));
        }
        if edges.len() != n - 1 {
            return Err(GraphError::NotATree(format!(
                "{} edges on {n} vertices",
                edges.len()
            )));
        }
        let mut adj = vec![Vec::new(); n];
        for (index, &(u, v)) in edges.iter().enumerate() {
            for vertex in [u, v] {
                if vertex >= n {
                    return Err(GraphError::EndpointOutOfRange { index, vertex, n });
                }
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    parent[v] = Some(u);
                    queue.push_back(v);
                }
            }
        }
        if seen.contains(&false) {
            return Err(GraphError::NotATree("disconnected".into()));
        }
        Ok(Self { parent, root })
    }

    /// Builds a tree from `parent[v]` (`None` exactly at the root).
    pub fn from_parents(parent: Vec<Option<usize>>) -> Result<Self, GraphError> {
        let roots: Vec<usize> = (0..parent.len()).filter(|&v| parent[v].is_none()).collect();
        let [root] = roots[..] else {
            return Err(GraphError::NotATree(format!("{} roots", roots.len())));
        };
        let edges: Vec<_> = parent
            .iter()
            .enumerate()
            .filter_map(|(v, p)| p.map(|p| (p, v)))
            .collect();
        Self::from_edges(parent.len(), root, &edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.parent.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    /// Children lists, each sorted by vertex index.
    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut ch = vec![Vec::new(); self.parent.len()];
        for (v, p) in self.parent.iter().enumerate() {
            if let Some(p) = p {
                ch[*p].push(v);
            }
        }
        ch
    }

    pub fn root_degree(&self) -> usize {
        self.parent.iter().filter(|p| **p == Some(self.root)).count()
    }

    /// Edges as `(min, max)` pairs in sorted order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut edges: Vec<_> = self
            .parent
            .iter()
            .enumerate()
            .filter_map(|(v, p)| p.map(|p| (p.min(v), p.max(v))))
            .collect();
        edges.sort_unstable();
        edges
    }

    pub fn to_graph(&self) -> Graph {
        Graph::new(self.vertex_count(), self.edges()).expect("tree edges are in range")
    }

    pub fn to_rooted_graph(&self) -> RootedGraph {
        RootedGraph::new(self.to_graph(), self.root).expect("root is in range")
    }

    /// Vertices ordered so that every vertex comes after its parent.
    pub fn preorder(&self) -> Vec<usize> {
        let ch = self.children();
        let mut out = Vec::with_capacity(self.parent.len());
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            out.push(v);
            stack.extend(ch[v].iter().rev());
        }
        out
    }

    /// Subtree sizes indexed by vertex.
    pub fn subtree_sizes(&self) -> Vec<usize> {
        let mut size = vec![1; self.parent.len()];
        for &v in self.preorder().iter().rev() {
            if let Some(p) = self.parent[v] {
                size[p] += size[v];
            }
        }
        size
    }

    /// The same tree with `v` as root.
    pub fn reroot(&self, v: usize) -> Result<Self, GraphError> {
        Self::from_edges(self.vertex_count(), v, &self.edges())
    }

    /// Descendants of `v`, rooted at `v`.
    pub fn subtree(&self, v: usize) -> Self {
        let ch = self.children();
        let mut index = vec![usize::MAX; self.parent.len()];
        let mut order = vec![v];
        index[v] = 0;
        let mut parent = vec![None];
        let mut i = 0;
        while i < order.len() {
            let u = order[i];
            for &c in &ch[u] {
                index[c] = order.len();
                order.push(c);
                parent.push(Some(index[u]));
            }
            i += 1;
        }
        Self { parent, root: 0 }
    }

    /// The root-degree-one pieces whose joining is this tree, one per child of the root.
    pub fn branches(&self) -> Vec<Self> {
        self.children()[self.root]
            .iter()
            .map(|&c| Self::single().concat(&self.subtree(c)))
            .collect()
    }

    /// Disjoint union with the roots identified; the root of `self` survives.
    pub fn join(&self, other: &Self) -> Self {
        let n = self.parent.len();
        let map = |v: usize| match v.cmp(&other.root) {
            std::cmp::Ordering::Equal => self.root,
            std::cmp::Ordering::Less => n + v,
            std::cmp::Ordering::Greater => n + v - 1,
        };
        let mut parent = self.parent.clone();
        for (v, p) in other.parent.iter().enumerate() {
            if v != other.root {
                parent.push(p.map(map));
            }
        }
        Self {
            parent,
            root: self.root,
        }
    }

    /// Disjoint union plus an edge between the roots, rooted at the root of `self`.
    pub fn concat(&self, other: &Self) -> Self {
        let n = self.parent.len();
        let mut parent = self.parent.clone();
        parent.extend(other.parent.iter().map(|p| Some(p.map_or(self.root, |p| p + n))));
        Self {
            parent,
            root: self.root,
        }
    }

    /// Preorder depths with children visited in decreasing order of their own
    /// depth sequences. Equal for rooted-isomorphic trees.
    pub fn level_sequence(&self) -> Vec<usize> {
        let ch = self.children();
        let mut seqs: Vec<Vec<usize>> = vec![Vec::new(); self.parent.len()];
        for &v in self.preorder().iter().rev() {
            let mut kids: Vec<Vec<usize>> = ch[v].iter().map(|&c| std::mem::take(&mut seqs[c])).collect();
            kids.sort_unstable_by(|a, b| b.cmp(a));
            let mut seq = vec![0];
            for k in kids {
                seq.extend(k.into_iter().map(|d| d + 1));
            }
            seqs[v] = seq;
        }
        std::mem::take(&mut seqs[self.root])
    }

    /// Tree whose preorder depth sequence is `depths`; vertex `i` is the
    /// `i`-th vertex in preorder and vertex 0 is the root.
    pub fn from_level_sequence(depths: &[usize]) -> Result<Self, GraphError> {
        let bad = |i: usize, msg: &str| GraphError::Parse {
            position: format!("depth {i}"),
            message: msg.into(),
        };
        match depths.first() {
            None => return Err(bad(0, "empty level sequence")),
            Some(&d) if d != 0 => return Err(bad(0, "root depth must be 0")),
            _ => {}
        }
        let mut parent = vec![None];
        // last vertex seen at each depth
        let mut last = vec![0usize];
        for (i, &d) in depths.iter().enumerate().skip(1) {
            if d == 0 || d > last.len() {
                return Err(bad(i, "depth must lie in 1..=previous depth + 1"));
            }
            last.truncate(d);
            parent.push(Some(last[d - 1]));
            last.push(i);
        }
        Ok(Self { parent, root: 0 })
    }
}
