//! AHU canonical codes for rooted and free trees.

use std::fmt;

use super::{GraphError, RootedGraph, RootedTree};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CodeMode {
    Rooted,
    Free,
}

/// Isomorphism fingerprint: a mode tag (`R` or `F`) followed by a balanced
/// parenthesis encoding. Equal codes of the same mode mean isomorphic trees.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn mode(&self) -> CodeMode {
        if self.0[0] == b'F' {
            CodeMode::Free
        } else {
            CodeMode::Rooted
        }
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(std::str::from_utf8(&self.0).expect("codes are ASCII"))
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCode({self})")
    }
}

fn adjacency(t: &RootedTree) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); t.vertex_count()];
    for (u, v) in t.edges() {
        adj[u].push(v);
        adj[v].push(u);
    }
    adj
}

/// Parenthesis code of the tree hanging from `root`, children sorted.
fn ahu(adj: &[Vec<usize>], root: usize) -> Vec<u8> {
    let n = adj.len();
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut stack = vec![root];
    parent[root] = root;
    while let Some(u) = stack.pop() {
        order.push(u);
        for &v in &adj[u] {
            if parent[v] == usize::MAX {
                parent[v] = u;
                stack.push(v);
            }
        }
    }
    let mut codes: Vec<Vec<Vec<u8>>> = vec![Vec::new(); n];
    let mut done: Vec<Vec<u8>> = vec![Vec::new(); n];
    for &u in order.iter().rev() {
        let mut kids = std::mem::take(&mut codes[u]);
        kids.sort_unstable();
        let mut code = Vec::with_capacity(2 + kids.iter().map(Vec::len).sum::<usize>());
        code.push(b'(');
        for k in kids {
            code.extend(k);
        }
        code.push(b')');
        if u == root {
            done[u] = code;
        } else {
            codes[parent[u]].push(code);
        }
    }
    std::mem::take(&mut done[root])
}

/// Vertices minimising the largest component left after their removal (one or two).
pub(crate) fn centroids(t: &RootedTree) -> Vec<usize> {
    let n = t.vertex_count();
    let size = t.subtree_sizes();
    let ch = t.children();
    let worst: Vec<usize> = (0..n)
        .map(|v| {
            let down = ch[v].iter().map(|&c| size[c]).max().unwrap_or(0);
            down.max(n - size[v])
        })
        .collect();
    let best = *worst.iter().min().expect("tree is non-empty");
    (0..n).filter(|&v| worst[v] == best).collect()
}

impl RootedTree {
    /// Rooted mode encodes the tree from its root; free mode encodes it from
    /// its centroid, taking the smaller code when there are two centroids.
    pub fn canonical_form(&self, mode: CodeMode) -> CanonicalCode {
        let adj = adjacency(self);
        let (tag, body) = match mode {
            CodeMode::Rooted => (b'R', ahu(&adj, self.root())),
            CodeMode::Free => (
                b'F',
                centroids(self)
                    .into_iter()
                    .map(|c| ahu(&adj, c))
                    .min()
                    .expect("at least one centroid"),
            ),
        };
        let mut code = Vec::with_capacity(body.len() + 1);
        code.push(tag);
        code.extend(body);
        CanonicalCode(code)
    }
}

impl RootedGraph {
    pub fn canonical_form(&self, mode: CodeMode) -> Result<CanonicalCode, GraphError> {
        Ok(self.to_tree()?.canonical_form(mode))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    #[test]
    fn relabelled_rooted_trees_share_code() {
        let a = RootedTree::from_edges(5, 0, &[(0, 1), (1, 2), (0, 3), (3, 4)]).unwrap();
        let b = RootedTree::from_edges(5, 4, &[(4, 2), (2, 0), (4, 1), (1, 3)]).unwrap();
        assert_eq!(a.canonical_form(CodeMode::Rooted), b.canonical_form(CodeMode::Rooted));
        assert_eq!(a.canonical_form(CodeMode::Rooted).to_string(), "R((())(()))");
    }

    #[test]
    fn rootings_of_a_path() {
        let center = RootedTree::from_edges(3, 1, &[(0, 1), (1, 2)]).unwrap();
        let leaf = RootedTree::from_edges(3, 0, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(center.canonical_form(CodeMode::Free), leaf.canonical_form(CodeMode::Free));
        assert_ne!(center.canonical_form(CodeMode::Rooted), leaf.canonical_form(CodeMode::Rooted));
        assert_eq!(leaf.canonical_form(CodeMode::Free).mode(), CodeMode::Free);
    }

    #[test]
    fn bicentral_path_uses_smaller_code() {
        let p4 = RootedTree::from_edges(4, 0, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(centroids(&p4), vec![1, 2]);
        assert_eq!(p4.canonical_form(CodeMode::Free).to_string(), "F((())())");
        let rooted_end = p4.canonical_form(CodeMode::Rooted).to_string();
        assert_eq!(rooted_end, "R(((())))");
    }

    #[test]
    fn non_tree_graph_has_no_code() {
        let g = RootedGraph::new(Graph::new(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap(), 0).unwrap();
        assert!(matches!(g.canonical_form(CodeMode::Free), Err(GraphError::NotATree(_))));
    }
}
